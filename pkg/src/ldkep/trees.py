"""Catalan-vector encoding of planar rooted binary trees.

A tree with ``n`` internal nodes is the vector ``T`` of ``n`` integers with
``T[i] <= T[j]`` for ``i < j`` and ``T[i] <= i`` (1-indexed).  Evaluating a
tree over leaves ``e_1 .. e_{n+1}`` runs ``n`` steps, ``j = n`` down to ``1``:
the working sequence entries at ``pos = T[j]`` and ``pos + 1`` are replaced by
their product, using the next operation of the op list read front to back.
"""

from __future__ import annotations

import json
import math
import os
import random
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Any, Sequence

from .errors import SizeLimitError, StructureError
from .magma import OpId, PoolPair

DEFAULT_ENUMERATION_CAP = 12


def enumeration_cap() -> int:
    return int(os.environ.get("LDKEP_TREE_CAP", DEFAULT_ENUMERATION_CAP))


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def is_valid_tree_vector(entries: Sequence[int]) -> bool:
    for i, t in enumerate(entries, start=1):
        if not isinstance(t, int) or t < 1 or t > i:
            return False
        if i > 1 and entries[i - 2] > t:
            return False
    return True


def enumerate_tree_vectors(n: int, cap: int | None = None) -> list[tuple[int, ...]]:
    """All valid tree vectors with ``n`` internal nodes, in lexicographic order."""
    cap = enumeration_cap() if cap is None else cap
    if n < 0:
        raise StructureError("n must be non-negative")
    if n > cap:
        raise SizeLimitError(f"enumeration of size {n} exceeds cap {cap}")
    # nondecreasing sequences over [n] come out of combinations_with_replacement sorted
    return [t for t in combinations_with_replacement(range(1, n + 1), n) if all(v <= i for i, v in enumerate(t, 1))]


def random_dyck_word(n: int, rng: random.Random) -> list[int]:
    """Uniform Dyck word of semilength ``n`` as a list of +1 / -1 steps.

    Cycle lemma: a uniform arrangement of n up-steps and n+1 down-steps has
    exactly one rotation whose proper prefixes all stay non-negative.
    """
    steps = [1] * n + [-1] * (n + 1)
    rng.shuffle(steps)
    height, low, low_at = 0, 0, 0
    for i, s in enumerate(steps):
        height += s
        if height < low:
            low, low_at = height, i + 1
    rotated = steps[low_at:] + steps[:low_at]
    return rotated[:-1]


def dyck_to_tree_vector(word: Sequence[int]) -> tuple[int, ...]:
    """``T[i]`` is one more than the number of down-steps before the i-th up-step."""
    downs = 0
    out = []
    for s in word:
        if s > 0:
            out.append(downs + 1)
        else:
            downs += 1
    return tuple(out)


def tree_vector_to_dyck(entries: Sequence[int]) -> list[int]:
    word: list[int] = []
    downs = 0
    for t in entries:
        word.extend([-1] * (t - 1 - downs))
        downs = t - 1
        word.append(1)
    word.extend([-1] * (len(entries) - downs))
    return word


def random_tree_vector(n: int, rng: random.Random) -> tuple[int, ...]:
    if n < 0:
        raise StructureError("n must be non-negative")
    return dyck_to_tree_vector(random_dyck_word(n, rng))


def evaluate_tree(tree: Sequence[int], ops: Sequence[OpId], leaves: Sequence[Any], pools: PoolPair) -> Any:
    """Evaluate the bracketed product of ``leaves`` shaped by ``tree``.

    ``pos`` is always read from the caller's unmodified ``tree``; ``ops`` are
    consumed in step order.  Only the working leaf sequence shrinks.
    """
    n = len(tree)
    if len(ops) != n:
        raise StructureError(f"tree has {n} internal nodes but {len(ops)} operations were given")
    if len(leaves) != n + 1:
        raise StructureError(f"tree has {n + 1} leaves but {len(leaves)} elements were given")
    if not is_valid_tree_vector(tree):
        raise StructureError(f"invalid tree vector {list(tree)}")
    funcs = [pools.resolve(o) for o in ops]
    seq = list(leaves)
    for step, j in enumerate(range(n, 0, -1)):
        pos = tree[j - 1] - 1
        seq[pos] = funcs[step](seq[pos], seq[pos + 1])
        del seq[pos + 1]
    return seq[0]


@dataclass(frozen=True)
class TreeWord:
    """A tree, its operation labels, and 1-based indices into a generator vector."""

    tree: tuple[int, ...]
    ops: tuple[OpId, ...]
    leaf_indices: tuple[int, ...]

    def __post_init__(self):
        n = len(self.tree)
        if not is_valid_tree_vector(self.tree):
            raise StructureError(f"invalid tree vector {list(self.tree)}")
        if len(self.ops) != n or len(self.leaf_indices) != n + 1:
            raise StructureError("a tree word needs n operations and n+1 leaf indices")
        if len({o.pool for o in self.ops}) > 1:
            raise StructureError("all operations of a tree word come from one pool")
        if any(i < 1 for i in self.leaf_indices):
            raise StructureError("leaf indices are 1-based")

    @property
    def n(self) -> int:
        return len(self.tree)

    def leaves(self, generators: Sequence[Any]) -> list[Any]:
        if max(self.leaf_indices) > len(generators):
            raise StructureError(f"leaf index {max(self.leaf_indices)} exceeds {len(generators)} generators")
        return [generators[i - 1] for i in self.leaf_indices]

    def evaluate(self, generators: Sequence[Any], pools: PoolPair) -> Any:
        return evaluate_tree(self.tree, self.ops, self.leaves(generators), pools)

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "entries": list(self.tree),
            "ops": [str(o) for o in self.ops],
            "leaf_indices": list(self.leaf_indices),
        }

    @classmethod
    def from_record(cls, record: dict) -> TreeWord:
        word = cls(
            tuple(record["entries"]),
            tuple(OpId.parse(s) for s in record["ops"]),
            tuple(record["leaf_indices"]),
        )
        if record.get("n", word.n) != word.n:
            raise StructureError("record field n disagrees with entries")
        return word

    def dumps(self) -> str:
        return json.dumps(self.to_record(), separators=(",", ":"))

    @classmethod
    def loads(cls, text: str) -> TreeWord:
        return cls.from_record(json.loads(text))


def random_tree_word(n: int, pool_size: int, pool: str, n_generators: int, rng: random.Random) -> TreeWord:
    tree = random_tree_vector(n, rng)
    leaf_indices = tuple(rng.randint(1, n_generators) for _ in range(n + 1))
    ops = tuple(OpId(pool, rng.randrange(pool_size)) for _ in range(n))
    return TreeWord(tree, ops, leaf_indices)
