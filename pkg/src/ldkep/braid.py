"""Braid groups: words, Garside left normal forms, shifts and shifted conjugacy.

Words are tuples of nonzero integers, ``+i`` for ``sigma_i`` and ``-i`` for its
inverse.  A word on generators ``1 .. N-1`` is an element of ``B_N``; ``B_inf``
is handled by embedding everything into ``B_N`` for the largest ``N`` involved.

Normal forms use the classical Garside structure: a braid is
``Delta^inf * A_1 * ... * A_r`` where each ``A_j`` is a permutation braid other
than ``1`` and ``Delta`` and every adjacent pair is left-weighted.  Permutation
braids are stored as 0-based one-line permutations, composed as functions, so
the word ``sigma_i sigma_j`` maps to ``s_i o s_j``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DomainError

Word = tuple[int, ...]
Perm = tuple[int, ...]


# Permutation braid primitives

@lru_cache(maxsize=None)
def _identity(n: int) -> Perm:
    return tuple(range(n))


@lru_cache(maxsize=None)
def _delta(n: int) -> Perm:
    return tuple(range(n - 1, -1, -1))


@lru_cache(maxsize=None)
def _gen(n: int, i: int) -> Perm:
    p = list(range(n))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def _compose(a: Perm, b: Perm) -> Perm:
    return tuple(map(a.__getitem__, b))


def _inverse(a: Perm) -> Perm:
    inv = [0] * len(a)
    for i, v in enumerate(a):
        inv[v] = i
    return tuple(inv)


def _tau(a: Perm) -> Perm:
    """Conjugation by Delta: ``sigma_i -> sigma_{n-i}``."""
    n1 = len(a) - 1
    return tuple(n1 - a[n1 - x] for x in range(n1 + 1))


def finishing_set(a: Perm) -> frozenset[int]:
    """Generators ``i`` such that ``a`` ends with ``sigma_i``."""
    return frozenset(i for i in range(1, len(a)) if a[i - 1] > a[i])


def starting_set(a: Perm) -> frozenset[int]:
    """Generators ``i`` such that ``a`` starts with ``sigma_i``."""
    return finishing_set(_inverse(a))


def perm_length(a: Perm) -> int:
    n = len(a)
    return sum(1 for i in range(n) for j in range(i + 1, n) if a[i] > a[j])


def left_gcd(x: Perm, y: Perm) -> Perm:
    """Largest common prefix of two permutation braids.

    Values are inserted in increasing order; a value moves left past an
    earlier one only while both braids cross that pair of strands.
    """
    qx, qy = _inverse(x), _inverse(y)
    order: list[int] = []
    for b in range(len(x)):
        k = len(order)
        xb, yb = qx[b], qy[b]
        while k and qx[order[k - 1]] > xb and qy[order[k - 1]] > yb:
            k -= 1
        order.insert(k, b)
    return tuple(order)


@lru_cache(maxsize=1 << 18)
def _left_weight(a: Perm, b: Perm) -> tuple[Perm, Perm]:
    """Move the largest prefix of ``b`` that fits onto ``a``: the pair becomes left-weighted."""
    n = len(a)
    c = left_gcd(b, _compose(_inverse(a), _delta(n)))
    if c == _identity(n):
        return a, b
    return _compose(a, c), _compose(_inverse(c), b)


def is_left_weighted(a: Perm, b: Perm) -> bool:
    return starting_set(b) <= finishing_set(a)


def perm_word(a: Perm) -> Word:
    """A positive word for the permutation braid ``a``."""
    a = list(a)
    inv = _inverse(tuple(a))
    inv = list(inv)
    out = []
    while True:
        for i in range(1, len(a)):
            if inv[i - 1] > inv[i]:
                # a = s_i o a'
                p, q = inv[i - 1], inv[i]
                a[p], a[q] = i, i - 1
                inv[i - 1], inv[i] = q, p
                out.append(i)
                break
        else:
            return tuple(out)


def _append(out: list[Perm], factors: Iterable[Perm], ident: Perm) -> None:
    """Right-multiply the left-weighted list ``out`` by simple factors in place."""
    for f in factors:
        if f == ident:
            continue
        out.append(f)
        j = len(out) - 2
        while j >= 0:
            a, b = _left_weight(out[j], out[j + 1])
            if a == out[j]:
                break
            out[j], out[j + 1] = a, b
            j -= 1
        while out and out[-1] == ident:
            out.pop()


def _finish(n: int, inf: int, out: list[Perm]) -> BraidNormalForm:
    d = _delta(n)
    k = 0
    while k < len(out) and out[k] == d:
        k += 1
    return BraidNormalForm(n, inf + k, tuple(out[k:]))


def _embed_perm(a: Perm, m: int, offset: int) -> Perm:
    n = len(a)
    return tuple(range(offset)) + tuple(offset + v for v in a) + tuple(range(offset + n, m))


# Normal forms

@dataclass(frozen=True, eq=False)
class BraidNormalForm:
    """``Delta_n^inf * factors[0] * ... * factors[-1]`` in ``B_n``.

    Equality is equality in ``B_inf``: operands on different strand counts are
    compared after embedding into the larger one.
    """

    n: int
    inf: int
    factors: tuple[Perm, ...]
    _canon: list = field(default_factory=list, repr=False, compare=False)

    @classmethod
    def identity(cls, n: int = 2) -> BraidNormalForm:
        return cls(n, 0, ())

    @classmethod
    def from_word(cls, word: Sequence[int], n: int | None = None) -> BraidNormalForm:
        need = implied_strands(word)
        n = need if n is None else n
        if n < need:
            raise DomainError(f"word needs {need} strands, got {n}")
        d = _delta(n)
        rev: list[Perm] = []
        negatives = 0
        for letter in reversed(word):
            i = abs(letter)
            f = _gen(n, i) if letter > 0 else _compose(d, _gen(n, i))
            if negatives % 2:
                f = _tau(f)
            rev.append(f)
            if letter < 0:
                negatives += 1
        out: list[Perm] = []
        _append(out, reversed(rev), _identity(n))
        return _finish(n, -negatives, out)

    @classmethod
    def from_simple(cls, n: int, factors: Sequence[Perm], inf: int = 0) -> BraidNormalForm:
        out: list[Perm] = []
        _append(out, factors, _identity(n))
        return _finish(n, inf, out)

    def is_normal(self) -> bool:
        d, e = _delta(self.n), _identity(self.n)
        if any(f in (d, e) or len(f) != self.n for f in self.factors):
            return False
        return all(is_left_weighted(a, b) for a, b in zip(self.factors, self.factors[1:]))

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    @property
    def sup(self) -> int:
        return self.inf + len(self.factors)

    def embed(self, m: int, offset: int = 0) -> BraidNormalForm:
        """Image under ``sigma_i -> sigma_{i+offset}`` in ``B_m``."""
        n = self.n
        if m < n + offset:
            raise DomainError(f"cannot embed B_{n} at offset {offset} into B_{m}")
        if m == n:
            return self
        blk = _embed_perm(_delta(n), m, offset)
        rest = [_embed_perm(f, m, offset) for f in self.factors]
        if self.inf >= 0:
            # (D, D, .., D, rest) is already left-weighted and D != Delta_m
            return BraidNormalForm(m, 0, (blk,) * self.inf + tuple(rest))
        k = -self.inf
        c = _compose(_delta(m), blk)
        tc = _tau(c)
        head = [tc if (k - 1 - j) % 2 else c for j in range(k)]
        return BraidNormalForm.from_simple(m, head + rest, inf=-k)

    def shift(self, k: int = 1) -> BraidNormalForm:
        if k < 0:
            raise DomainError("shift amount must be non-negative")
        if k == 0:
            return self
        return self.embed(self.n + k, k)

    def inverse(self) -> BraidNormalForm:
        n, a = self.n, self.inf
        d = _delta(n)
        r = len(self.factors)
        seq = []
        for j in range(r, 0, -1):
            f = _compose(_inverse(self.factors[j - 1]), d)
            if (j + a) % 2:
                f = _tau(f)
            seq.append(f)
        return BraidNormalForm.from_simple(n, seq, inf=-a - r)

    def __mul__(self, other: BraidNormalForm) -> BraidNormalForm:
        m = max(self.n, other.n)
        x, y = self.embed(m), other.embed(m)
        out = list(x.factors)
        if y.inf % 2:
            out = [_tau(f) for f in out]
        _append(out, y.factors, _identity(m))
        return _finish(m, x.inf + y.inf, out)

    def __pow__(self, k: int) -> BraidNormalForm:
        base = self if k >= 0 else self.inverse()
        out = BraidNormalForm.identity(self.n)
        for _ in range(abs(k)):
            out = out * base
        return out

    # Canonical representative

    def np_form(self) -> tuple[BraidNormalForm, BraidNormalForm]:
        """``(u, v)`` positive with ``self = u^-1 v`` and no common left divisor."""
        if self.inf >= 0:
            return BraidNormalForm.identity(self.n), self
        k = min(-self.inf, len(self.factors))
        u = BraidNormalForm(self.n, self.inf, self.factors[:k]).inverse()
        return u, BraidNormalForm(self.n, 0, self.factors[k:])

    def support(self) -> int:
        """Smallest ``N >= 2`` with this braid in ``B_N``."""
        top = 1
        for part in self.np_form():
            if part.inf > 0:
                return self.n
            for f in part.factors:
                moved = [i for i, v in enumerate(f) if v != i]
                if moved:
                    top = max(top, moved[-1])
        return max(2, top + 1)

    def canonical(self) -> BraidNormalForm:
        """Normal form on the minimal strand count; equal braids give equal values."""
        if self._canon:
            return self._canon[0]
        m = self.support()
        if m == self.n:
            res = self
        else:
            u, v = self.np_form()
            u = BraidNormalForm.from_simple(m, [f[:m] for f in u.factors])
            v = BraidNormalForm.from_simple(m, [f[:m] for f in v.factors])
            res = u.inverse() * v
            res._canon.append(res)
        self._canon.append(res)
        return res

    def key(self) -> tuple:
        c = self.canonical()
        return (c.n, c.inf, c.factors)

    def __eq__(self, other):
        if not isinstance(other, BraidNormalForm):
            return NotImplemented
        m = max(self.n, other.n)
        x, y = self.embed(m), other.embed(m)
        return x.inf == y.inf and x.factors == y.factors

    def __hash__(self):
        return hash(self.key())

    def is_identity(self) -> bool:
        return self.inf == 0 and not self.factors

    def to_word(self) -> Word:
        """A short word: the negative part of the np-form inverted, then the positive part."""
        u, v = self.np_form()
        return invert(_positive_word(u)) + _positive_word(v)

    def to_record(self) -> dict:
        c = self.canonical()
        return {"n": c.n, "inf": c.inf, "factors": [[v + 1 for v in f] for f in c.factors]}

    @classmethod
    def from_record(cls, rec: dict) -> BraidNormalForm:
        n = rec["n"]
        factors = tuple(tuple(v - 1 for v in f) for f in rec["factors"])
        if any(sorted(f) != list(range(n)) for f in factors):
            raise DomainError("factor is not a permutation of the strands")
        nf = cls(n, rec["inf"], factors)
        if not nf.is_normal():
            raise DomainError("record is not in left normal form")
        return nf

    def __str__(self):
        return " ".join(map(str, self.to_word())) or "e"


def _positive_word(x: BraidNormalForm) -> Word:
    assert x.inf >= 0
    return perm_word(_delta(x.n)) * x.inf + tuple(l for f in x.factors for l in perm_word(f))


# Word-level operations

def implied_strands(*words: Sequence[int]) -> int:
    top = max((abs(l) for w in words for l in w), default=0)
    return max(2, top + 1)


def _check_word(word: Sequence[int]) -> Word:
    word = tuple(word)
    if any(l == 0 for l in word):
        raise DomainError("0 is not a braid generator")
    return word


def multiply(x: Sequence[int], y: Sequence[int]) -> Word:
    return _check_word(x) + _check_word(y)


def invert(x: Sequence[int]) -> Word:
    return tuple(-l for l in reversed(_check_word(x)))


def normal_form(x: Sequence[int], n: int | None = None) -> BraidNormalForm:
    return BraidNormalForm.from_word(_check_word(x), n)


def braid_equal(x: Sequence[int], y: Sequence[int]) -> bool:
    n = implied_strands(x, y)
    return normal_form(x, n) == normal_form(y, n)


def shift(x: Sequence[int], k: int = 1) -> Word:
    if k < 0:
        raise DomainError("shift amount must be non-negative")
    return tuple(l + k if l > 0 else l - k for l in _check_word(x))


def shifted_conjugacy(x: Sequence[int], y: Sequence[int], variant: str = "plain") -> Word:
    """``shift(x)^-1 . sigma_1^(+-1) . shift(y) . x``; ``variant`` is ``plain`` or ``bar``."""
    if variant not in ("plain", "bar"):
        raise DomainError(f"unknown variant {variant!r}")
    mid = (1,) if variant == "plain" else (-1,)
    return invert(shift(x)) + mid + shift(y) + tuple(x)


def delta(n: int) -> Word:
    """``sigma_{n-1} ... sigma_2 sigma_1``."""
    if n < 2:
        raise DomainError("delta(n) needs n >= 2")
    return tuple(range(n - 1, 0, -1))


def tau(p: int, q: int) -> Word:
    """``delta_{p+1} shift(delta_{p+1}) ... shift^{q-1}(delta_{p+1})``."""
    if p < 1 or q < 1:
        raise DomainError("tau(p, q) needs p, q >= 1")
    d = delta(p + 1)
    return tuple(l for k in range(q) for l in shift(d, k))


def random_word(length: int, max_index: int, rng: random.Random) -> Word:
    """Uniform independent letters from ``+-1 .. +-max_index``."""
    if max_index < 1:
        raise DomainError("max_index must be >= 1")
    return tuple(rng.randint(1, max_index) * rng.choice((1, -1)) for _ in range(length))


def commutator(x: Sequence[int], y: Sequence[int]) -> Word:
    """``x^-1 y^-1 x y``."""
    return invert(x) + invert(y) + tuple(x) + tuple(y)


# Generalised shifted conjugacy

@dataclass(frozen=True)
class GenShiftedConjParams:
    p: int
    sign: int = 1
    a1p: Word = ()
    a1pp: Word = ()
    a2p: Word = ()
    a2pp: Word = ()

    def __post_init__(self):
        if self.p < 1:
            raise DomainError("shift amount p must be >= 1")
        if self.sign not in (1, -1):
            raise DomainError("sign must be +1 or -1")
        for name in ("a1p", "a1pp", "a2p", "a2pp"):
            w = _check_word(getattr(self, name))
            object.__setattr__(self, name, w)
            if any(abs(l) > self.p - 1 for l in w):
                raise DomainError(f"{name} = {w} is not in B_{self.p}")

    def a(self, which: int) -> Word:
        t = tau(self.p, self.p)
        t = t if self.sign > 0 else invert(t)
        if which == 1:
            return self.a1p + t + self.a1pp
        if which == 2:
            return self.a2p + t + self.a2pp
        raise DomainError("which must be 1 or 2")

    @property
    def valid(self) -> bool:
        return check_abc_conditions(self).mutual

    def to_record(self) -> dict:
        return {
            "p": self.p,
            "sign": self.sign,
            "a1p": list(self.a1p),
            "a1pp": list(self.a1pp),
            "a2p": list(self.a2p),
            "a2pp": list(self.a2pp),
        }


def gen_shifted_conjugacy(params: GenShiftedConjParams, which: int, x: Sequence[int], y: Sequence[int]) -> Word:
    """``shift^p(x^-1) . a_i . shift^p(y) . x``."""
    p = params.p
    return shift(invert(x), p) + params.a(which) + shift(y, p) + tuple(x)


@dataclass(frozen=True)
class AbcReport:
    a1p_a2pp: bool
    a2p_a1pp: bool
    a1p_a2p: bool
    a1p_a1pp: bool
    a2p_a2pp: bool

    @property
    def mutual(self) -> bool:
        """The three commutators whose triviality makes (*1, *2) mutually LD."""
        return self.a1p_a2pp and self.a2p_a1pp and self.a1p_a2p

    @property
    def bi_ld(self) -> bool:
        return self.mutual and self.a1p_a1pp and self.a2p_a2pp


def check_abc_conditions(params: GenShiftedConjParams) -> AbcReport:
    def trivial(x, y):
        return braid_equal(commutator(x, y), ())

    return AbcReport(
        trivial(params.a1p, params.a2pp),
        trivial(params.a2p, params.a1pp),
        trivial(params.a1p, params.a2p),
        trivial(params.a1p, params.a1pp),
        trivial(params.a2p, params.a2pp),
    )


# Operations on normal forms, used by the protocol platforms

def nf_shifted_conjugacy(x: BraidNormalForm, y: BraidNormalForm, variant: str = "plain") -> BraidNormalForm:
    s1 = BraidNormalForm.from_word((1,) if variant == "plain" else (-1,))
    return x.shift(1).inverse() * s1 * y.shift(1) * x


def nf_gen_shifted_conjugacy(a_i: BraidNormalForm, p: int, x: BraidNormalForm, y: BraidNormalForm) -> BraidNormalForm:
    return x.inverse().shift(p) * a_i * y.shift(p) * x
