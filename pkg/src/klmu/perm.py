"""
Exact permutation arithmetic for the symmetric group S_n.

Permutations are stored in one-line notation as tuples of the values
1..n, position i (1-based) holding w(i).  Composition is function
composition with the right factor applied first: (u * w)(x) = u(w(x)).
Simple reflections s_i (1 <= i <= n-1) swap i and i+1.

The canonical text encoding used by every file format and CLI flag is
space-separated one-line notation, e.g. "3 4 1 2".

>>> w = Perm.parse("3 4 1 2")
>>> w.length()
4
>>> w.inv() == w
True
>>> sorted(w.right_descents())
[2]
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True)
class Perm:
    """An element of S_n in one-line notation (values 1..n)."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.images}")

    @property
    def n(self) -> int:
        return len(self.images)

    @staticmethod
    def identity(n: int) -> "Perm":
        return Perm(tuple(range(1, n + 1)))

    @staticmethod
    def simple(i: int, n: int) -> "Perm":
        """The adjacent transposition s_i swapping i and i+1."""
        if not 1 <= i <= n - 1:
            raise ValueError(f"s_{i} not a generator of S_{n}")
        im = list(range(1, n + 1))
        im[i - 1], im[i] = im[i], im[i - 1]
        return Perm(tuple(im))

    @staticmethod
    def longest(n: int) -> "Perm":
        return Perm(tuple(range(n, 0, -1)))

    @staticmethod
    def parse(text: str) -> "Perm":
        """Parse space-separated one-line notation ("3 4 1 2")."""
        return Perm(tuple(int(t) for t in text.split()))

    def render(self) -> str:
        return " ".join(str(x) for x in self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        if self.n != other.n:
            raise ValueError(f"rank mismatch: S_{self.n} vs S_{other.n}")
        return Perm(tuple(self.images[x - 1] for x in other.images))

    def inv(self) -> "Perm":
        out = [0] * self.n
        for i, x in enumerate(self.images):
            out[x - 1] = i + 1
        return Perm(tuple(out))

    def length(self) -> int:
        """Number of inversions."""
        im = self.images
        return sum(1 for i in range(self.n) for j in range(i + 1, self.n) if im[i] > im[j])

    def right_descents(self) -> frozenset[int]:
        """{i : w(i) > w(i+1)}, i.e. {i : w s_i < w}."""
        im = self.images
        return frozenset(i + 1 for i in range(self.n - 1) if im[i] > im[i + 1])

    def left_descents(self) -> frozenset[int]:
        """{i : s_i w < w}; equals the right descent set of the inverse."""
        return self.inv().right_descents()

    def descents(self) -> tuple[frozenset[int], frozenset[int]]:
        """(left, right) descent sets."""
        return self.left_descents(), self.right_descents()

    def is_involution(self) -> bool:
        im = self.images
        return all(im[im[i] - 1] == i + 1 for i in range(self.n))

    def word(self) -> str:
        """Compact digit form for display (valid only for n <= 9)."""
        if self.n > 9:
            return self.render()
        return "".join(str(x) for x in self.images)

    def __repr__(self):
        return f"Perm({self.word()})"


def rank_matrix(w: Perm) -> list[list[int]]:
    """R[i][j] = #{k <= i : w(k) <= j} for 1-based i, j (stored 0-based)."""
    n = w.n
    R = [[0] * n for _ in range(n)]
    for i in range(n):
        wi = w.images[i]
        for j in range(n):
            R[i][j] = (R[i - 1][j] if i else 0) + (1 if wi <= j + 1 else 0)
    return R


def bruhat_le(y: Perm, w: Perm) -> bool:
    """Bruhat order comparison by the rank-matrix criterion.

    y <= w iff every upper-left box of y's permutation matrix contains at
    least as many dots as the same box of w's.
    """
    if y.n != w.n:
        raise ValueError(f"rank mismatch: S_{y.n} vs S_{w.n}")
    if y == w:
        return True
    Ry, Rw = rank_matrix(y), rank_matrix(w)
    n = y.n
    for i in range(n - 1):
        for j in range(n - 1):
            if Ry[i][j] < Rw[i][j]:
                return False
    return True


def all_perms(n: int):
    """All of S_n in lexicographic one-line order."""
    for im in itertools.permutations(range(1, n + 1)):
        yield Perm(im)


def parabolic_longest(I: frozenset[int] | set[int], n: int) -> Perm:
    """The longest element w_I of the parabolic subgroup generated by
    {s_i : i in I}; reverses each window of positions spanned by a
    maximal consecutive run of I."""
    if any(not 1 <= i <= n - 1 for i in I):
        raise ValueError(f"generators {sorted(I)} out of range for S_{n}")
    im = list(range(1, n + 1))
    for a, b in _runs(sorted(I)):
        im[a - 1 : b + 1] = reversed(im[a - 1 : b + 1])
    return Perm(tuple(im))


def _runs(indices: list[int]):
    """Maximal consecutive runs [a..b] of a sorted index list."""
    runs = []
    for i in indices:
        if runs and i == runs[-1][1] + 1:
            runs[-1][1] = i
        else:
            runs.append([i, i])
    return [(a, b) for a, b in runs]


@dataclass(frozen=True)
class ParabolicBlocks:
    """A subset I of {1..n-1} written as consecutive blocks
    I_1 = {1..k_1}, I_j = {k_{j-1}+2 .. k_j}, separated by single gaps.

    cuts holds (k_1, ..., k_m).  The normalized form additionally has
    weakly decreasing window sizes k_1+1 >= k_2-k_1 >= ... >= 1 and
    nonempty blocks.
    """

    n: int
    cuts: tuple[int, ...]

    def __post_init__(self):
        prev = -1
        for k in self.cuts:
            if k <= prev + 1:
                raise ValueError(f"blocks must be nonempty and gap-separated: cuts {self.cuts}")
            prev = k
        if self.cuts and self.cuts[-1] > self.n - 1:
            raise ValueError(f"cut {self.cuts[-1]} out of range for S_{self.n}")

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        out = []
        prev = -1
        for k in self.cuts:
            out.append(tuple(range(prev + 2, k + 1)))
            prev = k
        return tuple(out)

    @property
    def generators(self) -> frozenset[int]:
        return frozenset(i for b in self.blocks for i in b)

    def window_sizes(self) -> tuple[int, ...]:
        """Sizes of the position windows each block's subgroup permutes."""
        sizes = []
        prev = -1
        for k in self.cuts:
            sizes.append(k - prev)
            prev = k
        return tuple(sizes)

    def is_normalized(self) -> bool:
        sizes = self.window_sizes()
        return all(sizes[i] >= sizes[i + 1] for i in range(len(sizes) - 1))

    def require_normalized(self):
        if not self.is_normalized():
            raise ValueError(f"blocks not normalized (window sizes {self.window_sizes()})")

    def longest_element(self) -> Perm:
        return parabolic_longest(self.generators, self.n)


def normalized_blocks(n: int):
    """All normalized ParabolicBlocks for S_n, one per partition of n.

    Window sizes run over weakly decreasing tuples of integers >= 2
    (trailing 1-windows carry no generators and are left implicit).
    """
    out = [ParabolicBlocks(n, ())]

    def extend(cuts: tuple[int, ...], last_size: int):
        prev = cuts[-1] if cuts else -1
        for size in range(2, last_size + 1):
            k = prev + size
            if k > n - 1:
                continue
            nxt = cuts + (k,)
            out.append(ParabolicBlocks(n, nxt))
            extend(nxt, size)

    extend((), n)
    return sorted(out, key=lambda b: b.cuts)


@dataclass(frozen=True)
class CosetIndex:
    """Decomposition w = s_i ... s_2 s_1 * factor with factor(1) = 1 and
    l(w) = l(factor) + i; w lies in the coset U_i iff w(1) = i + 1."""

    i: int
    factor: Perm


def coset_factor(w: Perm) -> CosetIndex:
    """Peel the prefix s_i ... s_1 off w, where i = w(1) - 1."""
    i = w.images[0] - 1
    # tau = s_1 s_2 ... s_i maps j -> j+1 for j <= i and i+1 -> 1.
    def tau(x: int) -> int:
        if x <= i:
            return x + 1
        if x == i + 1:
            return 1
        return x

    w1 = Perm(tuple(tau(x) for x in w.images))
    return CosetIndex(i, w1)


def coset_recompose(ci: CosetIndex) -> Perm:
    """Inverse of coset_factor."""
    i = ci.i

    def tau_inv(x: int) -> int:
        if x == 1:
            return i + 1
        if 2 <= x <= i + 1:
            return x - 1
        return x

    return Perm(tuple(tau_inv(x) for x in ci.factor.images))


class SnIndex:
    """Precomputed index tables for S_n, the shared currency of the
    array kernels.

    Elements are indexed 0..n!-1 in lexicographic one-line order.
    """

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.n = n
        perms = list(itertools.permutations(range(1, n + 1)))
        self.size = len(perms)
        self.images = np.array(perms, dtype=np.int8)
        self.index = {p: i for i, p in enumerate(perms)}

        N = self.size
        self.length = np.zeros(N, dtype=np.int16)
        self.inverse = np.zeros(N, dtype=np.int32)
        inv_tuples = []
        for idx, p in enumerate(perms):
            self.length[idx] = sum(
                1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j]
            )
            q = [0] * n
            for i, x in enumerate(p):
                q[x - 1] = i + 1
            inv_tuples.append(tuple(q))
        for idx, q in enumerate(inv_tuples):
            self.inverse[idx] = self.index[q]

        # lmul[k, w] = index of s_{k+1} o w; rmul[k, w] = index of w o s_{k+1}
        self.lmul = np.zeros((max(n - 1, 1), N), dtype=np.int32)
        self.rmul = np.zeros((max(n - 1, 1), N), dtype=np.int32)
        for idx, p in enumerate(perms):
            for k in range(n - 1):
                lm = tuple(_swap_values(x, k + 1) for x in p)
                rm = p[:k] + (p[k + 1], p[k]) + p[k + 2 :]
                self.lmul[k, idx] = self.index[lm]
                self.rmul[k, idx] = self.index[rm]

        # first (smallest) left descent, -1 for the identity
        self.first_left_descent = np.full(N, -1, dtype=np.int8)
        for idx in range(N):
            for k in range(n - 1):
                if self.length[self.lmul[k, idx]] < self.length[idx]:
                    self.first_left_descent[idx] = k
                    break

        # element indices sorted by (length, index); used as build order
        self.by_length = np.lexsort((np.arange(N), self.length)).astype(np.int32)
        self._bruhat = None

    def perm(self, idx: int) -> Perm:
        return Perm(tuple(int(x) for x in self.images[idx]))

    def idx(self, w: Perm) -> int:
        return self.index[w.images]

    def bruhat_matrix(self) -> np.ndarray:
        """Boolean matrix B[y, w] = (y <= w), by the rank-matrix criterion."""
        if self._bruhat is None:
            n, N = self.n, self.size
            # ranks[w, i, j] = #{k <= i : w(k) <= j+1}
            ranks = np.cumsum(
                self.images[:, :, None] <= np.arange(1, n + 1)[None, None, :],
                axis=1,
                dtype=np.int8,
            )
            flat = ranks.reshape(N, n * n)
            B = np.ones((N, N), dtype=bool)
            chunk = max(1, 2**24 // (N * n * n))
            for a in range(0, N, chunk):
                b = min(a + chunk, N)
                # y <= w iff rank(y) >= rank(w) entrywise
                B[a:b] = np.all(flat[a:b, None, :] >= flat[None, :, :], axis=2)
            self._bruhat = B
        return self._bruhat


def _swap_values(x: int, k: int) -> int:
    if x == k:
        return k + 1
    if x == k + 1:
        return k
    return x


@lru_cache(maxsize=None)
def sn_index(n: int) -> SnIndex:
    return SnIndex(n)
