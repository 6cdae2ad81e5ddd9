"""
Backend dispatch and batch table builders.

Two interchangeable kernel backends exist: "numba" (default when numba is
importable) and "numpy" (pure vectorized fallback).  Selection order:
explicit argument, the KLMU_BACKEND environment variable ("numba",
"numpy" or "auto"), then auto-detection.  Both backends produce bit-for-bit
identical tables.

All coefficient arithmetic in the kernels is checked fixed-width int64:
guard thresholds abort loudly long before any value could wrap.  The
dict-based LaurentPoly layer on top is arbitrary precision.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .laurent import LaurentPoly
from .perm import SnIndex, sn_index

ENV_BACKEND = "KLMU_BACKEND"

_STATUS_MSG = {
    1: "kernel overflow guard tripped (coefficient beyond checked range)",
    2: "kernel internal residue (triangular solve left a remainder)",
}


class KernelError(ArithmeticError):
    pass


def resolve_backend(name: str | None = None) -> str:
    name = name or os.environ.get(ENV_BACKEND, "auto")
    if name not in ("auto", "numba", "numpy"):
        raise ValueError(f"unknown backend {name!r} (use numba, numpy or auto)")
    if name == "auto":
        try:
            import numba  # noqa: F401

            return "numba"
        except ImportError:
            return "numpy"
    if name == "numba":
        import numba  # noqa: F401  (fail loudly if requested but missing)
    return name


def _kernels(backend: str):
    if backend == "numba":
        from . import _kernels_numba as k
    else:
        from . import _kernels_numpy as k
    return k


def set_jobs(jobs: int | None, backend: str) -> int:
    """Apply a thread budget; returns the effective worker count."""
    if jobs is None or jobs < 1:
        jobs = os.cpu_count() or 1
    if backend == "numba":
        import numba

        numba.set_num_threads(max(1, min(jobs, numba.config.NUMBA_NUM_THREADS)))
    return jobs


@dataclass
class _Tables:
    """Kernel-ready views of an SnIndex."""

    sn: SnIndex
    lengths: np.ndarray  # int64
    order: np.ndarray  # int64, sorted by (length, index)
    level_starts: np.ndarray  # int64
    lmul: np.ndarray
    fld: np.ndarray
    inv: np.ndarray


@lru_cache(maxsize=None)
def _tables(n: int) -> _Tables:
    sn = sn_index(n)
    lengths = sn.length.astype(np.int64)
    order = sn.by_length.astype(np.int64)
    maxlen = n * (n - 1) // 2
    level_starts = np.searchsorted(lengths[order], np.arange(maxlen + 2)).astype(np.int64)
    return _Tables(sn, lengths, order, level_starts, sn.lmul, sn.first_left_descent, sn.inverse)


@dataclass
class KLData:
    """Dense Kazhdan-Lusztig data for S_n.

    P[w, y, k] is the q^k coefficient of P_{y,w} (zero rows mark Bruhat
    incomparability); mu[w, y] = mu(y, w).
    """

    n: int
    P: np.ndarray
    mu: np.ndarray

    @property
    def size(self) -> int:
        return self.P.shape[0]

    def p_poly(self, yi: int, wi: int) -> LaurentPoly:
        return LaurentPoly.from_q_coeffs(int(c) for c in self.P[wi, yi])

    def mu_sym_matrix(self) -> np.ndarray:
        """ms[a, b] = mu(a, b) under the symmetric convention."""
        m = self.mu.astype(np.int32)
        return m + m.T

    def bruhat_from_support(self) -> np.ndarray:
        """B[y, w] = (y <= w), read off from P_{y,w} != 0."""
        return self.P.any(axis=2).T


def build_kl(n: int, backend: str | None = None, jobs: int | None = None) -> KLData:
    backend = resolve_backend(backend)
    set_jobs(jobs, backend)
    k = _kernels(backend)
    t = _tables(n)
    N = t.sn.size
    maxlen = n * (n - 1) // 2
    L = maxlen // 2 + 2
    P = np.zeros((N, N, L), dtype=np.int64)
    mu = np.zeros((N, N), dtype=np.int16)
    status = k.kl_fill(P, mu, t.lmul, t.lengths, t.fld, t.order, t.level_starts)
    if status:
        raise KernelError(_STATUS_MSG[int(status)])
    return KLData(n, P, mu)


@dataclass
class StructureData:
    """Sparse structure constants h_{x,y,z} for all ordered pairs (x, y).

    Triples are stored in ascending (y, x, z) order; coefficients of
    triple t live in coeffs[ptr[t]:ptr[t+1]] starting at v-exponent
    elo[t].  a[z] is the maximal v-degree over all (x, y); gamma/delta
    are the coefficients of v^a(z) and v^(a(z)-1) per triple.
    """

    n: int
    xs: np.ndarray
    ys: np.ndarray
    zs: np.ndarray
    elo: np.ndarray
    ptr: np.ndarray
    coeffs: np.ndarray
    a: np.ndarray
    gamma: np.ndarray
    delta: np.ndarray
    keys: np.ndarray

    @property
    def ntriples(self) -> int:
        return len(self.xs)

    def lookup(self, xi: int, yi: int, zi: int) -> int:
        """Index of the (x, y, z) triple, or -1 when h vanishes."""
        N = self.keys_base
        key = (int(yi) * N + int(xi)) * N + int(zi)
        pos = int(np.searchsorted(self.keys, key))
        if pos < len(self.keys) and self.keys[pos] == key:
            return pos
        return -1

    @property
    def keys_base(self) -> int:
        from math import factorial

        return factorial(self.n)

    def h_poly(self, t: int) -> LaurentPoly:
        lo = int(self.elo[t])
        seg = self.coeffs[self.ptr[t] : self.ptr[t + 1]]
        return LaurentPoly({lo + i: int(c) for i, c in enumerate(seg)})

    def triple_poly(self, xi: int, yi: int, zi: int) -> LaurentPoly:
        t = self.lookup(xi, yi, zi)
        return self.h_poly(t) if t >= 0 else LaurentPoly.zero()

    def gamma_delta_at(self, xi: int, yi: int, zi: int) -> tuple[int, int]:
        t = self.lookup(xi, yi, zi)
        if t < 0:
            return 0, 0
        return int(self.gamma[t]), int(self.delta[t])


def build_structure(
    n: int, kl: KLData, backend: str | None = None, jobs: int | None = None
) -> StructureData:
    backend = resolve_backend(backend)
    jobs = set_jobs(jobs, backend)
    k = _kernels(backend)
    t = _tables(n)
    N = t.sn.size
    maxlen = n * (n - 1) // 2
    e0 = 2 * maxlen
    L2 = 2 * e0 + 1

    a_acc = np.full(N, -1, dtype=np.int64)
    parts: list[dict] = [None] * N  # type: ignore[list-item]

    def run_y(y: int) -> dict:
        out, status = k.structure_for_y(kl.P, t.lmul, t.lengths, t.fld, t.order, y, e0)
        if status:
            raise KernelError(f"y={y}: " + _STATUS_MSG[int(status)])
        return _compress(out, e0, L2)

    if backend == "numba" and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futs = {y: pool.submit(run_y, y) for y in range(N)}
            for y in range(N):
                parts[y] = futs[y].result()
    else:
        for y in range(N):
            parts[y] = run_y(y)

    xs_l, zs_l, elo_l, seg_l, coef_l = [], [], [], [], []
    ys_l = []
    for y in range(N):
        p = parts[y]
        xs_l.append(p["xs"])
        zs_l.append(p["zs"])
        elo_l.append(p["elo"])
        seg_l.append(p["seg"])
        coef_l.append(p["coeffs"])
        ys_l.append(np.full(len(p["xs"]), y, dtype=np.int32))
        np.maximum.at(a_acc, p["zs"], p["ehi"])

    xs = np.concatenate(xs_l)
    ys = np.concatenate(ys_l)
    zs = np.concatenate(zs_l)
    elo = np.concatenate(elo_l)
    seg = np.concatenate(seg_l)
    coeffs = np.concatenate(coef_l) if coef_l else np.zeros(0, np.int64)
    ptr = np.concatenate([[0], np.cumsum(seg)]).astype(np.int64)

    if (a_acc < 0).any():
        raise KernelError("an element received no nonzero structure constant")
    a = a_acc.astype(np.int16)

    keys = (ys.astype(np.int64) * N + xs) * N + zs
    if not np.all(np.diff(keys) > 0):
        raise KernelError("triple keys not strictly increasing")

    gamma, delta = _extract_gamma_delta(a, zs, elo, seg, ptr, coeffs)
    return StructureData(n, xs, ys, zs, elo, ptr, coeffs, a, gamma, delta, keys)


def _compress(out: np.ndarray, e0: int, L2: int) -> dict:
    """Pack one dense (x, z, slot) block into sparse segments."""
    mask = out.any(axis=2)
    xs, zs = np.nonzero(mask)
    sub = out[xs, zs]
    nz = sub != 0
    lo = nz.argmax(axis=1)
    hi = L2 - 1 - nz[:, ::-1].argmax(axis=1)
    seg = (hi - lo + 1).astype(np.int64)
    starts = np.concatenate([[0], np.cumsum(seg)])
    within = np.arange(starts[-1], dtype=np.int64) - np.repeat(starts[:-1], seg)
    rows = np.repeat(np.arange(len(xs)), seg)
    flat = sub[rows, lo[rows] + within]
    return {
        "xs": xs.astype(np.int32),
        "zs": zs.astype(np.int32),
        "elo": (lo - e0).astype(np.int32),
        "ehi": (hi - e0).astype(np.int64),
        "seg": seg,
        "coeffs": flat.astype(np.int64),
    }


def _extract_gamma_delta(a, zs, elo, seg, ptr, coeffs):
    az = a[zs].astype(np.int64)
    gamma = _coeff_at(az, elo, seg, ptr, coeffs)
    delta = _coeff_at(az - 1, elo, seg, ptr, coeffs)
    return gamma, delta


def _coeff_at(exp, elo, seg, ptr, coeffs):
    off = exp - elo
    valid = (off >= 0) & (off < seg)
    pos = np.clip(ptr[:-1] + off, 0, max(len(coeffs) - 1, 0))
    vals = coeffs[pos] if len(coeffs) else np.zeros(len(exp), np.int64)
    return np.where(valid, vals, 0).astype(np.int64)


def bar_invariance_failures(
    kl: KLData, samples: np.ndarray, backend: str | None = None, jobs: int | None = None
) -> np.ndarray:
    """Indices of sampled w with bar(C_w) != C_w (expected: none)."""
    backend = resolve_backend(backend)
    set_jobs(jobs, backend)
    k = _kernels(backend)
    t = _tables(kl.n)
    V, status = k.t_inverse_table(t.lmul, t.lengths, t.fld, t.inv, t.order)
    if status:
        raise KernelError(_STATUS_MSG[int(status)])
    samples = np.unique(np.asarray(samples, dtype=np.int64))
    return k.bar_check(kl.P, V, t.lengths, t.inv, samples)
