"""Laver tables: the LD-systems on ``{1, ..., 2**n}`` with ``k * 1 = k + 1``.

Rows are filled from ``k = 2**n`` downwards.  Row ``2**n`` is the identity
row, and for smaller ``k`` the recurrence ``k * (l + 1) = (k * l) * (k + 1)``
only needs rows with a larger index, since ``k * l > k`` whenever ``k < 2**n``.
The successor of ``2**n`` is ``1``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product

from .errors import DomainError, SizeLimitError

DEFAULT_LEVEL_CAP = 10


def level_cap() -> int:
    return int(os.environ.get("LDKEP_LAVER_CAP", DEFAULT_LEVEL_CAP))


@dataclass(frozen=True, eq=False)
class LaverTable:
    n: int
    rows: tuple[tuple[int, ...], ...]  # rows[k-1][l-1] == k * l

    @property
    def size(self) -> int:
        return 1 << self.n

    def __call__(self, k: int, l: int) -> int:
        return laver_apply(self, k, l)

    def __eq__(self, other):
        return isinstance(other, LaverTable) and self.n == other.n

    def __hash__(self):
        return hash(("LaverTable", self.n))

    def elements(self) -> range:
        return range(1, self.size + 1)

    def to_text(self) -> str:
        width = len(str(self.size))
        return "\n".join(" ".join(str(v).rjust(width) for v in row) for row in self.rows)


def build_laver_table(n: int, cap: int | None = None) -> LaverTable:
    cap = level_cap() if cap is None else cap
    if n < 0:
        raise DomainError("Laver level must be non-negative")
    if n > cap:
        raise SizeLimitError(f"Laver level {n} exceeds cap {cap}")
    size = 1 << n
    # 1-based scratch table with a dummy row/column 0
    t = [None] * (size + 1)
    t[size] = list(range(size + 1))
    for k in range(size - 1, 0, -1):
        row = [0] * (size + 1)
        row[1] = k + 1
        for l in range(1, size):
            row[l + 1] = t[row[l]][k + 1]
        t[k] = row
    return LaverTable(n, tuple(tuple(t[k][1:]) for k in range(1, size + 1)))


def laver_apply(table: LaverTable, k: int, l: int) -> int:
    size = table.size
    if not (1 <= k <= size and 1 <= l <= size):
        raise DomainError(f"({k}, {l}) outside [1, {size}]")
    return table.rows[k - 1][l - 1]


def successor(table: LaverTable, k: int) -> int:
    return k % table.size + 1


def exhaustive_ld_violations(table: LaverTable) -> list[tuple[int, int, int]]:
    rows = table.rows
    bad = []
    for x, y, z in product(table.elements(), repeat=3):
        rx = rows[x - 1]
        if rx[rows[y - 1][z - 1] - 1] != rows[rx[y - 1] - 1][rx[z - 1] - 1]:
            bad.append((x, y, z))
    return bad
