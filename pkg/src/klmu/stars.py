"""
Kazhdan-Lusztig star operations on S_n and star-move paths to involutions.

For adjacent generators s = s_i, t = s_{i+1} (so sts = tst), an element w
is in the right star domain when exactly one of i, i+1 is a right descent
of w; the right star image is then the unique element of {ws, wt} back in
the domain.  The left versions use left descents and {sw, tw}.

Under the composition convention fixed in perm.py, right star moves are
position swaps of the one-line word and preserve the insertion tableau
P(w) (the right cell); left star moves preserve Q(w) (the left cell).

`star_path_to_d0(z)` walks star moves from z to an involution by
breadth-first search.  The default side is "left", which keeps Q fixed,
so the terminal element is the distinguished involution of the left cell
of z; side="right" keeps P fixed and lands in the right cell's involution.
Moves are explored smallest pair index first, then smallest image in
lexicographic one-line order, making paths deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .perm import Perm, sn_index


def star(w: Perm, side: str, i: int) -> Perm | None:
    """Star image of w for the pair {s_i, s_{i+1}}, or None outside the
    domain.  Applying the same operation twice returns w."""
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if not 1 <= i <= w.n - 2:
        raise ValueError(f"pair {{s_{i}, s_{i+1}}} out of range for S_{w.n}")
    if not _in_domain(w, side, i):
        return None
    cands = []
    for j in (i, i + 1):
        u = _apply(w, side, j)
        if _in_domain(u, side, i):
            cands.append(u)
    if len(cands) != 1:
        raise RuntimeError(f"star domain broken at w={w.word()} side={side} i={i}")
    return cands[0]


def _in_domain(w: Perm, side: str, i: int) -> bool:
    d = w.right_descents() if side == "right" else w.left_descents()
    return (i in d) != (i + 1 in d)


def _apply(w: Perm, side: str, j: int) -> Perm:
    if side == "right":
        im = list(w.images)
        im[j - 1], im[j] = im[j], im[j - 1]
        return Perm(tuple(im))
    return Perm(tuple(j + 1 if x == j else (j if x == j + 1 else x) for x in w.images))


class StarTables:
    """Arrays image[side][k - 1][w] with the star image index or -1."""

    def __init__(self, n: int):
        sn = sn_index(n)
        self.n = n
        npairs = max(n - 2, 0)
        self.right = np.full((npairs, sn.size), -1, dtype=np.int32)
        self.left = np.full((npairs, sn.size), -1, dtype=np.int32)
        for idx in range(sn.size):
            w = sn.perm(idx)
            for k in range(1, n - 1):
                for side, table in (("right", self.right), ("left", self.left)):
                    img = star(w, side, k)
                    if img is not None:
                        table[k - 1, idx] = sn.index[img.images]


@lru_cache(maxsize=None)
def star_tables(n: int) -> StarTables:
    return StarTables(n)


@dataclass(frozen=True)
class StarPath:
    """A sequence of star moves on one side; steps hold pair indices."""

    side: str
    steps: tuple[int, ...]
    terminal: Perm


class StarPathError(RuntimeError):
    """No star path reached an involution (would falsify the theory)."""


def star_path_to_d0(z: Perm, side: str = "left") -> StarPath:
    """Shortest deterministic star-move path from z to an involution.

    With side="left" every intermediate keeps Q(z), so the terminal is the
    unique involution in the left cell of z; mirror for side="right".
    """
    if z.is_involution():
        return StarPath(side, (), z)
    seen = {z.images}
    queue = deque([(z, ())])
    while queue:
        w, steps = queue.popleft()
        moves = []
        for k in range(1, z.n - 1):
            img = star(w, side, k)
            if img is not None and img.images not in seen:
                moves.append((k, img))
        moves.sort(key=lambda m: (m[0], m[1].images))
        for k, img in moves:
            path = steps + (k,)
            if img.is_involution():
                return StarPath(side, path, img)
            seen.add(img.images)
            queue.append((img, path))
    raise StarPathError(f"no star path from {z.word()} reaches an involution")


def apply_star_path(w: Perm, path: StarPath) -> Perm | None:
    """Apply a recorded move sequence to another element; None if any
    intermediate leaves the star domain."""
    cur = w
    for k in path.steps:
        nxt = star(cur, path.side, k)
        if nxt is None:
            return None
        cur = nxt
    return cur
