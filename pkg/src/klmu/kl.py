"""
Kazhdan-Lusztig polynomials P_{y,w} and mu-coefficients for S_n.

A KLTable is a memoized map (y, w) -> P_{y,w}.  Two construction paths
produce identical values:

- `KLTable.build(n)` fills the whole table at once through the array
  kernels (numba or numpy backend);
- on-demand queries fall back to a dict-memoized recursion: choosing a
  left descent s of w and setting v = sw,

      P_{y,w} = q^(1-c) P_{sy,v} + q^c P_{y,v}
                - sum_{z < v, sz < z, mu(z,v) != 0}
                      mu(z,v) q^((l(w)-l(z))/2) P_{y,z}

  with c = 1 iff sy < y.  Both are checked in the tests against the
  axiomatic bar-invariance solve in hecke.py.

mu(y, w) is the coefficient of q^((l(w)-l(y)-1)/2); it vanishes whenever
l(w) - l(y) is even.  mu_sym extends it symmetrically, with value 0 on
equal or Bruhat-incomparable arguments.
"""

from __future__ import annotations

from .engine import KLData, build_kl
from .laurent import LaurentPoly
from .perm import Perm, bruhat_le, sn_index


class KLTable:
    def __init__(self, n: int, data: KLData | None = None):
        self.n = n
        self.data = data
        self._sn = sn_index(n)
        self._memo: dict[tuple[int, int], tuple[int, ...]] = {}
        self._zcache: dict[int, list[tuple[int, int, int]]] = {}

    @classmethod
    def build(cls, n: int, backend: str | None = None, jobs: int | None = None) -> "KLTable":
        return cls(n, data=build_kl(n, backend=backend, jobs=jobs))

    @classmethod
    def build_python(cls, n: int) -> "KLTable":
        """Fill the memo for every pair with the pure recursion, visiting w
        by increasing length and y by decreasing length within each w."""
        table = cls(n)
        sn = table._sn
        for w in sn.by_length:
            for y in sn.by_length[::-1]:
                table._p(int(y), int(w))
        return table

    # ---- index-level access ---------------------------------------------

    def q_coeffs_idx(self, yi: int, wi: int) -> tuple[int, ...]:
        """Coefficients of P_{y,w} in ascending q-powers (empty if y !<= w)."""
        if self.data is not None:
            row = self.data.P[wi, yi]
            n = len(row)
            while n and row[n - 1] == 0:
                n -= 1
            return tuple(int(c) for c in row[:n])
        return self._p(yi, wi)

    def mu_idx(self, yi: int, wi: int) -> int:
        if self.data is not None:
            return int(self.data.mu[wi, yi])
        d = int(self._sn.length[wi]) - int(self._sn.length[yi])
        if d <= 0 or d % 2 == 0:
            return 0
        p = self._p(yi, wi)
        k = (d - 1) // 2
        return p[k] if k < len(p) else 0

    def _p(self, yi: int, wi: int) -> tuple[int, ...]:
        key = (yi, wi)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        sn = self._sn
        lw = int(sn.length[wi])
        ly = int(sn.length[yi])
        if yi == wi:
            res: tuple[int, ...] = (1,)
        elif ly >= lw:
            res = ()
        else:
            s = int(sn.first_left_descent[wi])
            vi = int(sn.lmul[s, wi])
            syi = int(sn.lmul[s, yi])
            c = 1 if sn.length[syi] < ly else 0
            res = _padd(
                _pshift(self._p(syi, vi), 1 - c),
                _pshift(self._p(yi, vi), c),
            )
            for zi, m, lz in self._zlist(wi):
                pz = self._p(yi, zi)
                if pz:
                    res = _psub(res, _pshift(_pscale(pz, m), (lw - lz) // 2))
        self._memo[key] = res
        return res

    def _zlist(self, wi: int) -> list[tuple[int, int, int]]:
        """(z, mu(z, v), l(z)) for z < v = sw with sz < z and mu != 0."""
        cached = self._zcache.get(wi)
        if cached is not None:
            return cached
        sn = self._sn
        s = int(sn.first_left_descent[wi])
        vi = int(sn.lmul[s, wi])
        lv = int(sn.length[vi])
        out = []
        for zi in range(sn.size):
            lz = int(sn.length[zi])
            if lz >= lv or (lv - lz) % 2 == 0:
                continue
            if sn.length[sn.lmul[s, zi]] >= lz:
                continue
            m = self.mu_idx(zi, vi)
            if m:
                out.append((zi, m, lz))
        self._zcache[wi] = out
        return out

    # ---- Perm-level API ---------------------------------------------------

    def _check_rank(self, *ws: Perm):
        for w in ws:
            if w.n != self.n:
                raise ValueError(f"rank mismatch: S_{w.n} element in S_{self.n} table")

    def kl_poly(self, y: Perm, w: Perm) -> LaurentPoly:
        """P_{y,w} as a polynomial in q; requires y <= w in Bruhat order."""
        self._check_rank(y, w)
        if not bruhat_le(y, w):
            raise ValueError(f"{y.word()} is not Bruhat-below {w.word()}")
        coeffs = self.q_coeffs_idx(self._sn.idx(y), self._sn.idx(w))
        return LaurentPoly.from_q_coeffs(coeffs)

    def mu(self, y: Perm, w: Perm) -> int:
        """Leading coefficient mu(y, w); requires y < w."""
        self._check_rank(y, w)
        if y == w or not bruhat_le(y, w):
            raise ValueError(f"mu requires y < w, got y={y.word()} w={w.word()}")
        return self.mu_idx(self._sn.idx(y), self._sn.idx(w))

    def mu_sym(self, x: Perm, y: Perm) -> int:
        """mu extended symmetrically; 0 for equal or incomparable arguments."""
        self._check_rank(x, y)
        if x == y:
            return 0
        lo, hi = (x, y) if x.length() < y.length() else (y, x)
        if not bruhat_le(lo, hi):
            return 0
        return self.mu_idx(self._sn.idx(lo), self._sn.idx(hi))

    def column(self, w: Perm):
        """Pairs (y, P_{y,w}) over all y <= w, ascending element index."""
        self._check_rank(w)
        sn = self._sn
        wi = sn.idx(w)
        if self.data is not None:
            for yi in range(sn.size):
                coeffs = self.q_coeffs_idx(yi, wi)
                if coeffs:
                    yield sn.perm(yi), LaurentPoly.from_q_coeffs(coeffs)
            return
        for yi in range(sn.size):
            coeffs = self._p(yi, wi)
            if coeffs:
                yield sn.perm(yi), LaurentPoly.from_q_coeffs(coeffs)


def _pshift(p: tuple[int, ...], k: int) -> tuple[int, ...]:
    return p if not p or k == 0 else (0,) * k + p


def _pscale(p: tuple[int, ...], m: int) -> tuple[int, ...]:
    return tuple(c * m for c in p)


def _padd(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _ptrim(out)


def _psub(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return _ptrim(out)


def _ptrim(out: list[int]) -> tuple[int, ...]:
    n = len(out)
    while n and out[n - 1] == 0:
        n -= 1
    return tuple(out[:n])
