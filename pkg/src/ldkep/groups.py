"""Finite groups, endomorphisms and the conjugacy-style LD operations.

Three element kinds are supported: permutations of ``d <= 32`` points,
invertible 2x2 matrices mod a prime ``p < 2**31``, and pairs from a direct
product.  Permutations compose as functions, ``(g * h)(i) = g(h(i))``.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from typing import Any

from .errors import ConfigurationError, DomainError

MAX_DEGREE = 32
MAX_PRIME = 2**31


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]  # 0-based one-line notation

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: Permutation) -> Permutation:
        if not isinstance(other, Permutation) or other.degree != self.degree:
            raise DomainError("permutations of different degrees")
        g = self.images
        return Permutation(tuple(g[i] for i in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, v in enumerate(self.images):
            inv[v] = i
        return Permutation(tuple(inv))

    def __call__(self, i: int) -> int:
        """Image of the 1-based point ``i``."""
        return self.images[i - 1] + 1

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc = []
            i = start
            while i not in seen:
                seen.add(i)
                cyc.append(i + 1)
                i = self.images[i]
            out.append(tuple(cyc))
        return out

    def __str__(self):
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles()) or "()"

    @classmethod
    def from_cycles(cls, degree: int, text: str) -> Permutation:
        images = list(range(degree))
        for body in re.findall(r"\(([^()]*)\)", text):
            pts = [int(s) - 1 for s in body.replace(",", " ").split()]
            if any(not 0 <= p < degree for p in pts) or len(set(pts)) != len(pts):
                raise DomainError(f"bad cycle ({body}) for degree {degree}")
            for a, b in zip(pts, pts[1:] + pts[:1]):
                images[a] = b
        perm = cls(tuple(images))
        if sorted(perm.images) != list(range(degree)):
            raise DomainError(f"cycles {text!r} are not disjoint")
        return perm


@dataclass(frozen=True)
class Mat2:
    """The matrix ``[[a, b], [c, d]]`` over ``Z/pZ``."""

    a: int
    b: int
    c: int
    d: int
    p: int

    def __mul__(self, o: Mat2) -> Mat2:
        if not isinstance(o, Mat2) or o.p != self.p:
            raise DomainError("matrices over different primes")
        p = self.p
        return Mat2(
            (self.a * o.a + self.b * o.c) % p,
            (self.a * o.b + self.b * o.d) % p,
            (self.c * o.a + self.d * o.c) % p,
            (self.c * o.b + self.d * o.d) % p,
            p,
        )

    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.p

    def inverse(self) -> Mat2:
        p = self.p
        det = self.det()
        if det == 0:
            raise DomainError(f"singular matrix {self}")
        di = pow(det, -1, p)
        return Mat2(self.d * di % p, -self.b * di % p, -self.c * di % p, self.a * di % p, p)

    def entries(self) -> list[int]:
        return [self.a, self.b, self.c, self.d]

    def __str__(self):
        return f"[{self.a}, {self.b}; {self.c}, {self.d}] mod {self.p}"


@dataclass(frozen=True)
class Pair:
    first: Any
    second: Any

    def __mul__(self, o: Pair) -> Pair:
        if not isinstance(o, Pair):
            raise DomainError("cannot multiply a pair by a non-pair")
        return Pair(self.first * o.first, self.second * o.second)

    def inverse(self) -> Pair:
        return Pair(self.first.inverse(), self.second.inverse())

    def __str__(self):
        return f"<{self.first}, {self.second}>"


class SymmetricGroup:
    def __init__(self, degree: int):
        if not 1 <= degree <= MAX_DEGREE:
            raise ConfigurationError(f"degree must be in [1, {MAX_DEGREE}]")
        self.degree = degree

    def __repr__(self):
        return f"S{self.degree}"

    def __eq__(self, other):
        return isinstance(other, SymmetricGroup) and other.degree == self.degree

    def identity(self) -> Permutation:
        return Permutation(tuple(range(self.degree)))

    def random(self, rng: random.Random) -> Permutation:
        images = list(range(self.degree))
        rng.shuffle(images)
        return Permutation(tuple(images))

    def contains(self, x) -> bool:
        return isinstance(x, Permutation) and sorted(x.images) == list(range(self.degree))

    def long_cycle(self) -> Permutation:
        return Permutation(tuple((i + 1) % self.degree for i in range(self.degree)))

    def to_json(self, x: Permutation):
        return str(x)

    def from_json(self, obj) -> Permutation:
        return Permutation.from_cycles(self.degree, obj)


class GL2:
    def __init__(self, p: int):
        if not (2 <= p < MAX_PRIME and _is_prime(p)):
            raise ConfigurationError(f"modulus must be a prime below 2**31, got {p}")
        self.p = p

    def __repr__(self):
        return f"GL(2,{self.p})"

    def __eq__(self, other):
        return isinstance(other, GL2) and other.p == self.p

    def identity(self) -> Mat2:
        return Mat2(1, 0, 0, 1, self.p)

    def random(self, rng: random.Random) -> Mat2:
        while True:
            m = Mat2(*(rng.randrange(self.p) for _ in range(4)), self.p)
            if m.det():
                return m

    def contains(self, x) -> bool:
        return (
            isinstance(x, Mat2) and x.p == self.p and all(0 <= v < self.p for v in x.entries()) and x.det() != 0
        )

    def unipotent(self) -> Mat2:
        return Mat2(1, 1, 0, 1, self.p)

    def to_json(self, x: Mat2):
        return x.entries()

    def from_json(self, obj) -> Mat2:
        m = Mat2(*obj, self.p)
        if not self.contains(m):
            raise DomainError(f"{obj} is not an invertible matrix mod {self.p}")
        return m


class DirectProduct:
    def __init__(self, left, right):
        self.left = left
        self.right = right

    def __repr__(self):
        return f"{self.left!r}x{self.right!r}"

    def __eq__(self, other):
        return isinstance(other, DirectProduct) and (other.left, other.right) == (self.left, self.right)

    def identity(self) -> Pair:
        return Pair(self.left.identity(), self.right.identity())

    def random(self, rng: random.Random) -> Pair:
        return Pair(self.left.random(rng), self.right.random(rng))

    def contains(self, x) -> bool:
        return isinstance(x, Pair) and self.left.contains(x.first) and self.right.contains(x.second)

    def to_json(self, x: Pair):
        return [self.left.to_json(x.first), self.right.to_json(x.second)]

    def from_json(self, obj) -> Pair:
        return Pair(self.left.from_json(obj[0]), self.right.from_json(obj[1]))


def encode_element(group, x) -> bytes:
    """Canonical bytes: compact JSON of the element's serialisation."""
    return json.dumps(group.to_json(x), separators=(",", ":")).encode()


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


# Endomorphisms

class Endomorphism:
    kind = "abstract"

    def __call__(self, x):
        raise NotImplementedError

    def known_projector(self) -> bool | None:
        """True/False when decidable without sampling, else None."""
        return None


class IdentityEndo(Endomorphism):
    kind = "identity"

    def __call__(self, x):
        return x

    def known_projector(self):
        return True

    def __repr__(self):
        return "identity"


class InnerEndo(Endomorphism):
    """``x -> g^-1 x g``."""

    kind = "inner"

    def __init__(self, g):
        self.g = g
        self.g_inv = g.inverse()

    def __call__(self, x):
        return self.g_inv * x * self.g

    def __repr__(self):
        return f"inner({self.g})"


class ProjectionEndo(Endomorphism):
    """Projection of a direct product onto one factor, the other set to 1."""

    kind = "projection"

    def __init__(self, group: DirectProduct, factor: int = 1):
        if not isinstance(group, DirectProduct):
            raise ConfigurationError("product projection needs a direct product group")
        if factor not in (1, 2):
            raise ConfigurationError("factor must be 1 or 2")
        self.group = group
        self.factor = factor
        self._e1 = group.left.identity()
        self._e2 = group.right.identity()

    def __call__(self, x: Pair) -> Pair:
        if self.factor == 1:
            return Pair(x.first, self._e2)
        return Pair(self._e1, x.second)

    def known_projector(self):
        return True

    def __repr__(self):
        return f"project({self.factor})"


def is_projector(f: Endomorphism, group, rng: random.Random | None = None, samples: int = 64) -> bool:
    known = f.known_projector()
    if known is not None:
        return known
    rng = rng or random.Random(0)
    for _ in range(samples):
        x = group.random(rng)
        fx = f(x)
        if f(fx) != fx:
            return False
    return True


# LD operations

def conjugation(x, y):
    """``x^-1 y x``."""
    return x.inverse() * y * x


def conjugation_rev(x, y):
    """``x y x^-1``."""
    return x * y * x.inverse()


def symmetric_conjugacy(x, y):
    """``x y^-1 x``."""
    return x * y.inverse() * x


def ld_conjugacy(f: Endomorphism, x, y):
    """``f(x^-1 y) x``."""
    return f(x.inverse() * y) * x


def f_symmetric_conjugacy(f: Endomorphism, x, y):
    """``f(x y^-1) x``; ``f`` must be a projector."""
    return f(x * y.inverse()) * x
