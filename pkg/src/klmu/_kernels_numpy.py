"""
Pure-numpy kernels: the fallback backend.

Semantics are identical to the numba twins in _kernels_numba; both operate
on the flat index tables from perm.SnIndex and int64 coefficient arrays.
Kernels return a status code instead of raising so the two backends stay
interchangeable: 0 ok, 1 overflow guard tripped, 2 internal residue
(a nonzero remainder after a triangular solve, which would indicate a bug).

Array conventions:

- P[w, y, k] is the coefficient of q**k in P_{y,w}; columns P[w] are filled
  in increasing length order.
- mu[w, y] = mu(y, w) for comparable y < w, else 0.
- Laurent coefficient vectors use slot k for the exponent k - e0 where
  e0 = 2 * maxlen, wide enough that no kernel step can shift out of range.
"""

from __future__ import annotations

import numpy as np

OK = 0
OVERFLOW = 1
RESIDUE = 2

# Guard thresholds.  Kernel values are checked against COEFF_LIMIT at every
# checkpoint; between checkpoints a value is a short sum of products of
# checked values and column sums, which COL_SUM_LIMIT keeps far below 2**63.
COEFF_LIMIT = np.int64(1) << 40
COL_SUM_LIMIT = np.int64(1) << 16
MU_LIMIT = 32767


def kl_fill(P, mu, lmul, lengths, fld, order, level_starts):
    """Fill the Kazhdan-Lusztig table by the descent recursion.

    For w with first left descent s and v = sw, every row y with
    l(y) < l(w) satisfies

        P_{y,w} = q^(1-c) P_{sy,v} + q^c P_{y,v}
                  - sum_z mu(z,v) q^((l(w)-l(z))/2) P_{y,z}

    where c = 1 iff sy < y and z runs over z < v with mu(z,v) != 0 and
    sz < z.  Rows of length >= l(w) vanish except P_{w,w} = 1.
    """
    N, _, L = P.shape
    P[order[0], order[0], 0] = 1
    lengths = lengths.astype(np.int64)
    for w in order[1:]:
        w = int(w)
        s = fld[w]
        v = lmul[s, w]
        lw = int(lengths[w])
        sy = lmul[s]
        c1 = lengths[sy] < lengths  # s is a left descent of y
        A = P[v][sy]
        B = P[v]
        col = np.zeros((N, L), dtype=P.dtype)
        col[c1] = A[c1]
        col[c1, 1:] += B[c1, :-1]
        col[~c1, 1:] = A[~c1, :-1]
        col[~c1] += B[~c1]
        for z in np.nonzero((mu[v] != 0) & c1)[0]:
            m = int(mu[v, z])
            sh = (lw - int(lengths[z])) >> 1
            col[:, sh:] -= m * P[z][:, : L - sh]
        col[lengths >= lw] = 0
        col[w, 0] = 1
        if np.abs(col).max(initial=0) > COEFF_LIMIT:
            return OVERFLOW
        if np.abs(col).sum() > COL_SUM_LIMIT:
            return OVERFLOW
        P[w] = col
        d = lw - lengths
        rows = np.nonzero((d > 0) & (d & 1 == 1))[0]
        vals = col[rows, (d[rows] - 1) >> 1]
        if vals.size and np.abs(vals).max() > MU_LIMIT:
            return OVERFLOW
        mu[w, rows] = vals.astype(mu.dtype)
    return OK


def _left_gen_apply(dst, src, sz, up):
    """dst += T_s * src for T-basis coefficient blocks (N, L2).

    T_s T_z = T_{sz} if l(sz) > l(z), else (q-1) T_z + q T_{sz};
    q shifts slots by +2.  dst must be zeroed by the caller.
    """
    dst[sz[up]] += src[up]
    dn = ~up
    dst[dn, 2:] += src[dn, :-2]
    dst[dn] -= src[dn]
    dst[sz[dn], 2:] += src[dn, :-2]


def structure_for_y(P, lmul, lengths, fld, order, y, e0):
    """All structure constants h_{x,y,z} for one fixed middle factor y.

    Builds R[u] = T_u * C_y for every u by left generator actions, forms
    C_x * C_y = v^(-l(x)) * sum_u P_{u,x}(q) R[u] in the T-basis, then
    converts to the C-basis by the triangular solve in decreasing length.

    Returns (out, status) with out[x, z, slot] the coefficient of
    v^(slot - e0) in h_{x,y,z}.
    """
    N, _, L = P.shape
    L2 = 2 * e0 + 1
    lengths = lengths.astype(np.int64)
    ly = int(lengths[y])

    R = np.zeros((N, N, L2), dtype=np.int64)
    e = int(order[0])
    for u in np.nonzero(P[y].any(axis=1))[0]:
        for j in np.nonzero(P[y, u])[0]:
            R[e, u, e0 - ly + 2 * int(j)] = P[y, u, j]

    up_all = lengths[lmul] > lengths[None, :]  # up_all[s, z]: l(sz) > l(z)
    for u in order[1:]:
        u = int(u)
        s = fld[u]
        u2 = lmul[s, u]
        _left_gen_apply(R[u], R[u2], lmul[s], up_all[s])
        if np.abs(R[u]).max(initial=0) > COEFF_LIMIT:
            return R[:1, :1, :1], OVERFLOW

    H = np.zeros((N, N, L2), dtype=np.int64)
    Rf = R.reshape(N, N * L2)
    for j in range(L):
        Pj = P[:, :, j]
        rows = np.nonzero(Pj.any(axis=1))[0]
        if rows.size == 0:
            continue
        M = (Pj[rows].astype(np.int64) @ Rf).reshape(rows.size, N, L2)
        if j:
            if M[:, :, L2 - 2 * j :].any():
                return H[:1, :1, :1], RESIDUE
            H[rows, :, 2 * j :] += M[:, :, : L2 - 2 * j]
        else:
            H[rows] += M
    for x in range(N):
        lx = int(lengths[x])
        if lx:
            H[x, :, : L2 - lx] = H[x, :, lx:]
            H[x, :, L2 - lx :] = 0
    if np.abs(H).max(initial=0) > COEFF_LIMIT:
        return H[:1, :1, :1], OVERFLOW

    out = np.zeros((N, N, L2), dtype=np.int64)
    maxlen = int(lengths.max())
    for lev in range(maxlen, -1, -1):
        zs = np.nonzero(lengths == lev)[0]
        CZ = H[:, zs, :].copy()  # equal-length z rows are mutually independent
        if not CZ.any():
            continue
        if lev:
            if CZ[:, :, L2 - lev :].any():
                return out[:1, :1, :1], RESIDUE
            out[:, zs, lev:] = CZ[:, :, : L2 - lev]
        else:
            out[:, zs, :] = CZ
        for j in range(L):
            Pj = P[zs][:, :, j]
            zrows = np.nonzero(Pj.any(axis=1))[0]
            if zrows.size == 0:
                continue
            D = np.tensordot(CZ[:, zrows, :], Pj[zrows].astype(np.int64), axes=([1], [0]))
            D = D.transpose(0, 2, 1)  # (x, u, slot)
            if j:
                if D[:, :, L2 - 2 * j :].any():
                    return out[:1, :1, :1], RESIDUE
                H[:, :, 2 * j :] -= D[:, :, : L2 - 2 * j]
            else:
                H -= D
    if H.any():
        return out[:1, :1, :1], RESIDUE
    return out, OK


def t_inverse_table(lmul, lengths, fld, inv, order):
    """V[w, z, k] = coefficient of v^(k - 2*maxlen) T_z in (T_w)^(-1).

    Built by increasing length: if s is the first right descent of w and
    w = w' s, then T_w^(-1) = T_s^(-1) T_{w'}^(-1)
    = q^(-1) (T_s X) + (q^(-1) - 1) X with X = T_{w'}^(-1).
    """
    N = lmul.shape[1]
    lengths = lengths.astype(np.int64)
    maxlen = int(lengths.max())
    L3 = 2 * maxlen + 1
    V = np.zeros((N, N, L3), dtype=np.int64)
    V[order[0], order[0], 2 * maxlen] = 1
    up_all = lengths[lmul] > lengths[None, :]
    for w in order[1:]:
        w = int(w)
        s = int(fld[inv[w]])  # first right descent of w
        w2 = int(inv[lmul[s, inv[w]]])  # w2 = w * s, shorter
        X = V[w2]
        G = np.zeros((N, L3), dtype=np.int64)
        _left_gen_apply(G, X, lmul[s], up_all[s])
        if G[:, :2].any() or X[:, :2].any():
            return V[:1, :1, :1], RESIDUE  # exponent underflow: impossible
        W = np.zeros((N, L3), dtype=np.int64)
        W[:, :-2] = G[:, 2:] + X[:, 2:]
        W -= X
        if np.abs(W).max(initial=0) > COEFF_LIMIT:
            return V[:1, :1, :1], OVERFLOW
        V[w] = W
    return V, OK


def bar_check(P, V, lengths, inv, samples):
    """Check bar(C_w) = C_w in the T-basis for each sampled w.

    bar(C_w) = v^l(w) sum_y bar(P_{y,w})(q) (T_{y^-1})^(-1); the result is
    compared against v^(-l(w)) sum_y P_{y,w}(q) T_y exactly.
    Returns indices of failing w, ascending.
    """
    N, _, L = P.shape
    lengths = lengths.astype(np.int64)
    maxlen = int(lengths.max())
    L3v = V.shape[2]
    L3 = 3 * maxlen + 1
    bad = []
    for w in samples:
        w = int(w)
        lw = int(lengths[w])
        acc = np.zeros((N, L3), dtype=np.int64)
        rhs = np.zeros((N, L3), dtype=np.int64)
        for yy in np.nonzero(P[w].any(axis=1))[0]:
            for j in np.nonzero(P[w, yy])[0]:
                c = int(P[w, yy, j])
                sh = lw - 2 * int(j)
                acc[:, sh : sh + L3v] += c * V[inv[yy]]
                rhs[yy, 2 * int(j) - lw + 2 * maxlen] += c
        if not np.array_equal(acc, rhs):
            bad.append(w)
    return np.array(sorted(bad), dtype=np.int64)
