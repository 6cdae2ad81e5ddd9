"""
Numba twins of the kernels in _kernels_numpy.

Same inputs, same outputs, same status codes; the module is only imported
when the numba backend is selected, so a missing numba install never
breaks the numpy path.  Columns of the KL table are filled in parallel
within a length level (they only read strictly shorter columns), which
keeps the result identical to the sequential fill.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange

OK = 0
OVERFLOW = 1
RESIDUE = 2

COEFF_LIMIT = 1 << 40
COL_SUM_LIMIT = 1 << 16
MU_LIMIT = 32767


@njit(cache=True, nogil=True)
def _kl_column(P, mu, lmul, lengths, fld, w):
    N = P.shape[0]
    L = P.shape[2]
    s = fld[w]
    v = lmul[s, w]
    lw = lengths[w]
    zcount = 0
    for z in range(N):
        if mu[v, z] != 0 and lengths[lmul[s, z]] < lengths[z]:
            zcount += 1
    zs = np.empty(zcount, np.int64)
    zmu = np.empty(zcount, np.int64)
    zsh = np.empty(zcount, np.int64)
    c = 0
    for z in range(N):
        if mu[v, z] != 0 and lengths[lmul[s, z]] < lengths[z]:
            zs[c] = z
            zmu[c] = mu[v, z]
            zsh[c] = (lw - lengths[z]) >> 1
            c += 1
    maxabs = 0
    total = 0
    for y in range(N):
        ly = lengths[y]
        if ly >= lw:
            if y == w:
                P[w, y, 0] = 1
                total += 1
            continue
        sy = lmul[s, y]
        if lengths[sy] < ly:
            # c = 1: P_{sy,v} + q P_{y,v}
            P[w, y, 0] = P[v, sy, 0]
            for k in range(1, L):
                P[w, y, k] = P[v, sy, k] + P[v, y, k - 1]
        else:
            # c = 0: q P_{sy,v} + P_{y,v}
            P[w, y, 0] = P[v, y, 0]
            for k in range(1, L):
                P[w, y, k] = P[v, y, k] + P[v, sy, k - 1]
        for zi in range(zcount):
            z = zs[zi]
            m = zmu[zi]
            sh = zsh[zi]
            for k in range(L - sh):
                pv = P[z, y, k]
                if pv != 0:
                    P[w, y, k + sh] -= m * pv
        for k in range(L):
            av = P[w, y, k]
            if av < 0:
                av = -av
            if av > maxabs:
                maxabs = av
            total += av
    if maxabs > COEFF_LIMIT or total > COL_SUM_LIMIT:
        return OVERFLOW
    for y in range(N):
        d = lw - lengths[y]
        if d > 0 and d & 1 == 1:
            m = P[w, y, (d - 1) >> 1]
            if m > MU_LIMIT or m < -MU_LIMIT:
                return OVERFLOW
            mu[w, y] = np.int16(m)
    return OK


@njit(cache=True, nogil=True, parallel=True)
def kl_fill(P, mu, lmul, lengths, fld, order, level_starts):
    P[order[0], order[0], 0] = 1
    status = 0
    nlev = level_starts.shape[0] - 1
    for lev in range(1, nlev):
        a = level_starts[lev]
        b = level_starts[lev + 1]
        for t in prange(a, b):
            st = _kl_column(P, mu, lmul, lengths, fld, order[t])
            status = max(status, st)
        if status != OK:
            return status
    return status


@njit(cache=True, nogil=True)
def _left_gen_apply(dst, src, szv, lengths):
    """dst += T_s * src; szv[z] = index of s*z."""
    N = dst.shape[0]
    L2 = dst.shape[1]
    for z in range(N):
        sz = szv[z]
        if lengths[sz] > lengths[z]:
            for k in range(L2):
                cv = src[z, k]
                if cv != 0:
                    dst[sz, k] += cv
        else:
            for k in range(L2 - 2):
                cv = src[z, k]
                if cv != 0:
                    dst[z, k + 2] += cv
                    dst[sz, k + 2] += cv
            for k in range(L2):
                cv = src[z, k]
                if cv != 0:
                    dst[z, k] -= cv


@njit(cache=True, nogil=True)
def structure_for_y(P, lmul, lengths, fld, order, y, e0):
    N = P.shape[0]
    L = P.shape[2]
    L2 = 2 * e0 + 1
    ly = lengths[y]

    R = np.zeros((N, N, L2), np.int64)
    e = order[0]
    for u in range(N):
        for j in range(L):
            cv = P[y, u, j]
            if cv != 0:
                R[e, u, e0 - ly + 2 * j] = cv
    for t in range(1, N):
        u = order[t]
        s = fld[u]
        u2 = lmul[s, u]
        _left_gen_apply(R[u], R[u2], lmul[s], lengths)
        maxabs = 0
        for z in range(N):
            for k in range(L2):
                av = R[u, z, k]
                if av < 0:
                    av = -av
                if av > maxabs:
                    maxabs = av
        if maxabs > COEFF_LIMIT:
            return R[:1, :1, :1], OVERFLOW

    H = np.zeros((N, N, L2), np.int64)
    for x in range(N):
        lx = lengths[x]
        for u in range(N):
            for j in range(L):
                cv = P[x, u, j]
                if cv == 0:
                    continue
                sh = 2 * j - lx
                lo = 0 if sh >= 0 else -sh
                hi = L2 if sh <= 0 else L2 - sh
                for z in range(N):
                    for k in range(lo, hi):
                        rv = R[u, z, k]
                        if rv != 0:
                            H[x, z, k + sh] += cv * rv
    maxabs = 0
    for x in range(N):
        for z in range(N):
            for k in range(L2):
                av = H[x, z, k]
                if av < 0:
                    av = -av
                if av > maxabs:
                    maxabs = av
    if maxabs > COEFF_LIMIT:
        return H[:1, :1, :1], OVERFLOW

    out = np.zeros((N, N, L2), np.int64)
    cz = np.empty(L2, np.int64)
    for t in range(N - 1, -1, -1):
        z = order[t]
        lz = lengths[z]
        for x in range(N):
            nz = False
            for k in range(L2):
                cz[k] = H[x, z, k]
                if cz[k] != 0:
                    nz = True
            if not nz:
                continue
            for k in range(L2 - lz, L2):
                if cz[k] != 0:
                    return out[:1, :1, :1], RESIDUE
            for k in range(L2 - lz):
                out[x, z, k + lz] = cz[k]
            # subtract (residual coefficient of T_z) * C_z from row x
            for u in range(N):
                for j in range(L):
                    pv = P[z, u, j]
                    if pv == 0:
                        continue
                    sh = 2 * j
                    for k in range(L2 - sh):
                        cv = cz[k]
                        if cv != 0:
                            H[x, u, k + sh] -= pv * cv
    for x in range(N):
        for z in range(N):
            for k in range(L2):
                if H[x, z, k] != 0:
                    return out[:1, :1, :1], RESIDUE
    return out, OK


@njit(cache=True, nogil=True)
def t_inverse_table(lmul, lengths, fld, inv, order):
    N = lmul.shape[1]
    maxlen = 0
    for i in range(N):
        if lengths[i] > maxlen:
            maxlen = lengths[i]
    L3 = 2 * maxlen + 1
    V = np.zeros((N, N, L3), np.int64)
    V[order[0], order[0], 2 * maxlen] = 1
    G = np.zeros((N, L3), np.int64)
    for t in range(1, N):
        w = order[t]
        s = fld[inv[w]]
        w2 = inv[lmul[s, inv[w]]]
        X = V[w2]
        G[:, :] = 0
        _left_gen_apply(G, X, lmul[s], lengths)
        for z in range(N):
            if G[z, 0] != 0 or G[z, 1] != 0 or X[z, 0] != 0 or X[z, 1] != 0:
                return V[:1, :1, :1], RESIDUE
        maxabs = 0
        for z in range(N):
            for k in range(L3 - 2):
                V[w, z, k] = G[z, k + 2] + X[z, k + 2]
            for k in range(L3):
                V[w, z, k] -= X[z, k]
                av = V[w, z, k]
                if av < 0:
                    av = -av
                if av > maxabs:
                    maxabs = av
        if maxabs > COEFF_LIMIT:
            return V[:1, :1, :1], OVERFLOW
    return V, OK


@njit(cache=True, nogil=True)
def bar_check(P, V, lengths, inv, samples):
    N = P.shape[0]
    L = P.shape[2]
    maxlen = 0
    for i in range(N):
        if lengths[i] > maxlen:
            maxlen = lengths[i]
    L3v = V.shape[2]
    L3 = 3 * maxlen + 1
    nbad = 0
    bad = np.empty(samples.shape[0], np.int64)
    acc = np.empty((N, L3), np.int64)
    rhs = np.empty((N, L3), np.int64)
    for si in range(samples.shape[0]):
        w = samples[si]
        lw = lengths[w]
        acc[:, :] = 0
        rhs[:, :] = 0
        for y in range(N):
            for j in range(L):
                c = P[w, y, j]
                if c == 0:
                    continue
                sh = lw - 2 * j
                iy = inv[y]
                for z in range(N):
                    for k in range(L3v):
                        vv = V[iy, z, k]
                        if vv != 0:
                            acc[z, k + sh] += c * vv
                rhs[y, 2 * j - lw + 2 * maxlen] += c
        good = True
        for z in range(N):
            for k in range(L3):
                if acc[z, k] != rhs[z, k]:
                    good = False
                    break
            if not good:
                break
        if not good:
            bad[nbad] = w
            nbad += 1
    return np.sort(bad[:nbad])
