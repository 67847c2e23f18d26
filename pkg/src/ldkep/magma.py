"""Operation pools, iterated left multiplication and distributivity checks.

A carrier ``L`` is never modelled explicitly: elements are arbitrary Python
values and each pool carries the binary operations that act on them.  Two
pools, ``A`` and ``B``, are bundled in a :class:`PoolPair`; operations are
addressed by :class:`OpId` values such as ``OpId("A", 0)``.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

from .errors import DomainError, PoolError, StructureError

BinaryOp = Callable[[Any, Any], Any]
POOL_NAMES = ("A", "B")


@dataclass(frozen=True, order=True)
class OpId:
    pool: str
    index: int

    def __post_init__(self):
        if self.pool not in POOL_NAMES:
            raise DomainError(f"pool must be one of {POOL_NAMES}, got {self.pool!r}")
        if self.index < 0:
            raise DomainError(f"operation index must be >= 0, got {self.index}")

    def __str__(self):
        return f"{self.pool}{self.index}"

    @classmethod
    def parse(cls, text: str) -> OpId:
        """Inverse of ``str``: ``"A0"`` -> ``OpId("A", 0)``."""
        text = text.strip()
        if len(text) < 2 or not text[1:].isdigit():
            raise DomainError(f"malformed operation id {text!r}")
        return cls(text[0], int(text[1:]))


@dataclass(frozen=True)
class OperationPool:
    """An ordered family of named binary operations on one carrier."""

    name: str
    labels: tuple[str, ...]
    ops: tuple[BinaryOp, ...] = field(compare=False)
    equal: Callable[[Any, Any], bool] = field(default=operator.eq, compare=False)

    def __post_init__(self):
        if self.name not in POOL_NAMES:
            raise DomainError(f"pool name must be one of {POOL_NAMES}")
        if len(self.labels) != len(self.ops):
            raise StructureError("one label per operation required")
        if not self.ops:
            raise DomainError(f"pool {self.name} is empty")

    def __len__(self):
        return len(self.ops)

    def op_ids(self) -> list[OpId]:
        return [OpId(self.name, i) for i in range(len(self.ops))]

    def label(self, op_id: OpId) -> str:
        return self.labels[self._index(op_id)]

    def get(self, op_id: OpId) -> BinaryOp:
        return self.ops[self._index(op_id)]

    def _index(self, op_id: OpId) -> int:
        if op_id.pool != self.name:
            raise PoolError(f"{op_id} does not belong to pool {self.name}")
        if op_id.index >= len(self.ops):
            raise PoolError(f"{op_id} out of range for pool {self.name} of size {len(self.ops)}")
        return op_id.index


@dataclass(frozen=True)
class PoolPair:
    a: OperationPool
    b: OperationPool

    def __getitem__(self, name: str) -> OperationPool:
        if name == "A":
            return self.a
        if name == "B":
            return self.b
        raise PoolError(f"unknown pool {name!r}")

    def resolve(self, op_id: OpId) -> BinaryOp:
        if not isinstance(op_id, OpId):
            raise PoolError(f"not an operation id: {op_id!r}")
        return self[op_id.pool].get(op_id)

    def label(self, op_id: OpId) -> str:
        return self[op_id.pool].label(op_id)

    @property
    def equal(self) -> Callable[[Any, Any], bool]:
        return self.a.equal


def single_pool_pair(label: str, op: BinaryOp, equal=operator.eq) -> PoolPair:
    """O_A = O_B = {op}: the pool pair of a plain LD-system."""
    return PoolPair(
        OperationPool("A", (label,), (op,), equal),
        OperationPool("B", (label,), (op,), equal),
    )


def iterated_left_mul(multipliers: Sequence[Any], ops: Sequence[OpId], y: Any, pools: PoolPair) -> Any:
    """Return ``x_k o_k ( ... (x_2 o_2 (x_1 o_1 y)) ... )``.

    The empty chain is the identity map.
    """
    if len(multipliers) != len(ops):
        raise StructureError(f"{len(multipliers)} multipliers but {len(ops)} operations")
    for x, op_id in zip(multipliers, ops):
        y = pools.resolve(op_id)(x, y)
    return y


@dataclass(frozen=True)
class Violation:
    """One failing instance of a left-distributivity law."""

    law: str
    x: Any
    y: Any
    z: Any


def check_mutual_ld(
    op_a: BinaryOp,
    op_b: BinaryOp,
    triples: Iterable[tuple[Any, Any, Any]],
    equal: Callable[[Any, Any], bool] = operator.eq,
    stop_after: int | None = None,
) -> list[Violation]:
    """Check ``x a (y b z) = (x a y) b (x a z)`` and the same with a, b swapped.

    With ``op_a is op_b`` this is the ordinary LD law and only one direction is
    evaluated.  ``stop_after`` ends the scan once that many violations are found.
    """
    same = op_a is op_b
    directions = [("a/b", op_a, op_b)] if same else [("a/b", op_a, op_b), ("b/a", op_b, op_a)]
    found: list[Violation] = []
    for x, y, z in triples:
        for law, outer, inner in directions:
            lhs = outer(x, inner(y, z))
            rhs = inner(outer(x, y), outer(x, z))
            if not equal(lhs, rhs):
                found.append(Violation(law, x, y, z))
                if stop_after is not None and len(found) >= stop_after:
                    return found
    return found


def check_ld(op: BinaryOp, triples, equal=operator.eq, stop_after=None) -> list[Violation]:
    return check_mutual_ld(op, op, triples, equal, stop_after)


def check_pool_pair(pools: PoolPair, triples, stop_after=None) -> dict[tuple[str, str], list[Violation]]:
    """Run :func:`check_mutual_ld` for every (alpha, beta) in O_A x O_B.

    Pairs are keyed by operation labels.  ``triples`` is materialised once so
    that every pair sees the same samples.
    """
    triples = list(triples)
    report = {}
    for ia, fa in enumerate(pools.a.ops):
        for ib, fb in enumerate(pools.b.ops):
            key = (pools.a.labels[ia], pools.b.labels[ib])
            if key in report or key[::-1] in report:
                continue
            report[key] = check_mutual_ld(fa, fb, triples, pools.equal, stop_after)
    return report


# Free magma: a symbolic carrier for golden tests and debugging output.

@dataclass(frozen=True)
class Term:
    """A parenthesised product ``left <label> right`` in a free magma."""

    label: str
    left: Any
    right: Any

    def __str__(self):
        return render(self)


def render(term: Any, top: bool = True) -> str:
    """Fully parenthesised text of a term; the outermost product is bare."""
    if not isinstance(term, Term):
        return str(term)
    text = f"{render(term.left, False)} {term.label} {render(term.right, False)}"
    return text if top else f"({text})"


def free_op(label: str) -> BinaryOp:
    def op(x, y):
        return Term(label, x, y)

    op.__name__ = f"free_{label}"
    return op


def free_pool_pair(labels_a: Sequence[str], labels_b: Sequence[str] | None = None) -> PoolPair:
    """Symbolic pools whose operations just build :class:`Term` nodes."""
    labels_b = labels_a if labels_b is None else labels_b
    return PoolPair(
        OperationPool("A", tuple(labels_a), tuple(free_op(s) for s in labels_a)),
        OperationPool("B", tuple(labels_b), tuple(free_op(s) for s in labels_b)),
    )
