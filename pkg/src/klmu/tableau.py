"""
Robinson-Schensted insertion, standard Young tableaux, partitions and the
shape-based a-function on S_n.

Insertion is plain row insertion of the word w(1), ..., w(n): a new value
is appended to the first row if it is larger than everything there,
otherwise it bumps the smallest larger entry into the next row.  The
recording tableau Q marks which box was created at each step; it equals
the insertion tableau of the inverse permutation.

Partitions carry an explicit convention flag: "col" means the parts are
column lengths of the Young diagram (so the reversing permutation, whose
insertion tableau is a single column, has shape (n,)), "row" is the
transpose.  The a-function is computed from column lengths:
a(w) = sum of binomial(lambda_i, 2) over the column lengths of P(w).
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .perm import ParabolicBlocks, Perm, sn_index


@dataclass(frozen=True)
class StandardTableau:
    """Rows of a standard Young tableau (rows increase left to right,
    columns increase top to bottom, entries are exactly 1..n)."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = sorted(x for row in self.rows for x in row)
        if seen != list(range(1, len(seen) + 1)):
            raise ValueError("entries must be exactly 1..n")
        for row in self.rows:
            if any(row[i] >= row[i + 1] for i in range(len(row) - 1)):
                raise ValueError(f"row not increasing: {row}")
        for r in range(len(self.rows) - 1):
            lo, hi = self.rows[r], self.rows[r + 1]
            if len(hi) > len(lo):
                raise ValueError("row lengths must weakly decrease")
            if any(hi[c] <= lo[c] for c in range(len(hi))):
                raise ValueError("columns not increasing")

    @property
    def n(self) -> int:
        return sum(len(r) for r in self.rows)

    def row_lengths(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    def column_lengths(self) -> tuple[int, ...]:
        rl = self.row_lengths()
        if not rl:
            return ()
        return tuple(sum(1 for L in rl if L > c) for c in range(rl[0]))

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


@dataclass(frozen=True)
class Partition:
    """A partition with an explicit convention: parts are column lengths
    ("col") or row lengths ("row") of the underlying diagram."""

    parts: tuple[int, ...]
    convention: str = "col"

    def __post_init__(self):
        if self.convention not in ("col", "row"):
            raise ValueError(f"bad convention {self.convention!r}")
        if any(p <= 0 for p in self.parts):
            raise ValueError("parts must be positive")
        if any(self.parts[i] < self.parts[i + 1] for i in range(len(self.parts) - 1)):
            raise ValueError("parts must weakly decrease")

    @property
    def n(self) -> int:
        return sum(self.parts)

    def transpose(self) -> "Partition":
        if not self.parts:
            return Partition((), _other(self.convention))
        parts = tuple(
            sum(1 for p in self.parts if p > c) for c in range(self.parts[0])
        )
        return Partition(parts, _other(self.convention))

    def to_json(self) -> dict:
        return {"parts": list(self.parts), "convention": self.convention}


def _other(conv: str) -> str:
    return "row" if conv == "col" else "col"


def dominance_le(lam: Partition, mu: Partition) -> bool:
    """Prefix-sum comparison, padding with zeros; both partitions must
    have the same total and be in the same convention."""
    if lam.convention != mu.convention:
        raise ValueError(f"convention mismatch: {lam.convention} vs {mu.convention}")
    if lam.n != mu.n:
        raise ValueError(f"partitions of different totals: {lam.n} vs {mu.n}")
    k = max(len(lam.parts), len(mu.parts))
    a = b = 0
    for i in range(k):
        a += lam.parts[i] if i < len(lam.parts) else 0
        b += mu.parts[i] if i < len(mu.parts) else 0
        if a > b:
            return False
    return True


def rs_insert(w: Perm) -> tuple[StandardTableau, StandardTableau]:
    """Row-insert the word of w; return (P, Q).

    >>> P, Q = rs_insert(Perm((2, 3, 1)))
    >>> P.rows, Q.rows
    (((1, 3), (2,)), ((1, 2), (3,)))
    """
    prows: list[list[int]] = []
    qrows: list[list[int]] = []
    for step, x in enumerate(w.images, start=1):
        r = 0
        while True:
            if r == len(prows):
                prows.append([x])
                qrows.append([step])
                break
            row = prows[r]
            pos = bisect_right(row, x)
            if pos == len(row):
                row.append(x)
                qrows[r].append(step)
                break
            row[pos], x = x, row[pos]
            r += 1
    return (
        StandardTableau(tuple(tuple(r) for r in prows)),
        StandardTableau(tuple(tuple(r) for r in qrows)),
    )


def shape_a(w: Perm) -> tuple[Partition, int]:
    """Column-convention shape of P(w) and the a-value
    sum(lambda_i * (lambda_i - 1) / 2) over column lengths."""
    P, _ = rs_insert(w)
    cols = P.column_lengths()
    a = sum(c * (c - 1) // 2 for c in cols)
    return Partition(cols, "col"), a


def cell_relation(y: Perm, w: Perm) -> tuple[bool, bool, bool]:
    """(same_left, same_right, same_two_sided): equal Q, equal P,
    equal shape."""
    if y.n != w.n:
        raise ValueError(f"rank mismatch: S_{y.n} vs S_{w.n}")
    Py, Qy = rs_insert(y)
    Pw, Qw = rs_insert(w)
    return (Qy == Qw, Py == Pw, Py.row_lengths() == Pw.row_lengths())


def parabolic_shape(blocks: ParabolicBlocks) -> Partition:
    """Column shape of P(w_I) for normalized blocks: the window sizes
    padded with 1's up to n."""
    blocks.require_normalized()
    sizes = list(blocks.window_sizes())
    total = sum(sizes)
    sizes += [1] * (blocks.n - total)
    return Partition(tuple(sizes), "col")


class RSData:
    """Per-element RS invariants for all of S_n, as arrays.

    pid/qid are tableau class ids (equal id iff equal tableau), sid is a
    shape class id, a_shape the shape-based a-value.  Ids are assigned in
    lexicographic element order, so they are deterministic.
    """

    def __init__(self, n: int):
        sn = sn_index(n)
        N = sn.size
        self.n = n
        self.pid = np.zeros(N, dtype=np.int32)
        self.qid = np.zeros(N, dtype=np.int32)
        self.sid = np.zeros(N, dtype=np.int32)
        self.a_shape = np.zeros(N, dtype=np.int16)
        p_ids: dict[tuple, int] = {}
        s_ids: dict[tuple, int] = {}
        self.tableaux: list[StandardTableau] = []
        self.shapes: list[Partition] = []
        for idx in range(N):
            w = sn.perm(idx)
            P, Q = rs_insert(w)
            self.pid[idx] = _intern(P.rows, p_ids, self.tableaux, P)
            self.qid[idx] = _intern(Q.rows, p_ids, self.tableaux, Q)
            cols = P.column_lengths()
            self.sid[idx] = _intern(cols, s_ids, self.shapes, Partition(cols, "col"))
            self.a_shape[idx] = sum(c * (c - 1) // 2 for c in cols)


def _intern(key, ids: dict, store: list, value) -> int:
    key = tuple(key)
    if key not in ids:
        ids[key] = len(store)
        store.append(value)
    return ids[key]


@lru_cache(maxsize=None)
def rs_data(n: int) -> RSData:
    return RSData(n)
