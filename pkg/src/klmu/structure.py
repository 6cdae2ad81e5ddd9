"""
Hecke structure constants h_{x,y,z} (from C_x C_y = sum_z h_{x,y,z} C_z),
the a-function, gamma/delta leading coefficients, and the distinguished
element data built from them.

The full table over all ordered pairs (x, y) is produced by the array
kernels and stored sparsely (nonzero triples only).  Per-triple queries
return exact Laurent polynomials.  The per-element summary is:

  a(z)      max v-degree of h_{x,y,z} over all pairs (x, y)
  delta(z)  q-degree of P_{e,z}
  pi(z)     leading q-coefficient of P_{e,z}
  defect    l(z) - a(z) - 2 delta(z)  (always >= 0)
  D_i       elements of defect i; D_0 are the distinguished involutions

and Springer's formula recovers mu from the table:

  mu(y, x) = sum_{d in D_0} delta_{y^-1,x,d}
           + sum_{f in D_1} gamma_{y^-1,x,f} pi(f).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .engine import StructureData, build_structure
from .hecke import HeckeElement, c_expand, c_element, t_mul
from .kl import KLTable
from .laurent import LaurentPoly
from .perm import Perm, sn_index


class StructureTable:
    """Sparse map (x, y, z) -> h_{x,y,z} with per-z aggregates."""

    def __init__(self, n: int, data: StructureData):
        self.n = n
        self.data = data
        self._sn = sn_index(n)

    @classmethod
    def build(
        cls,
        n: int,
        kl: KLTable | None = None,
        backend: str | None = None,
        jobs: int | None = None,
    ) -> "StructureTable":
        kl = kl if kl is not None else KLTable.build(n, backend=backend, jobs=jobs)
        if kl.data is None:
            raise ValueError("structure build needs a fully built KL table")
        return cls(n, build_structure(n, kl.data, backend=backend, jobs=jobs))

    def _idx(self, w: Perm) -> int:
        if w.n != self.n:
            raise ValueError(f"rank mismatch: S_{w.n} element in S_{self.n} table")
        return self._sn.idx(w)

    def h(self, x: Perm, y: Perm, z: Perm) -> LaurentPoly:
        return self.data.triple_poly(self._idx(x), self._idx(y), self._idx(z))

    def a_value(self, z: Perm) -> int:
        return int(self.data.a[self._idx(z)])

    def gamma_delta(self, x: Perm, y: Perm, z: Perm) -> tuple[int, int]:
        """(gamma, delta) of the triple: coefficients of v^a(z), v^(a(z)-1)."""
        return self.data.gamma_delta_at(self._idx(x), self._idx(y), self._idx(z))

    def nonzero_triples(self):
        """(x, y, z) index triples with h != 0, ascending (y, x, z)."""
        d = self.data
        for t in range(d.ntriples):
            yield int(d.xs[t]), int(d.ys[t]), int(d.zs[t])


def structure_h(x: Perm, y: Perm, table: KLTable) -> dict[Perm, LaurentPoly]:
    """h_{x,y,z} for one pair by direct T-basis product and re-expansion.

    This is the slow exact route (t_mul + c_expand); the batch kernels are
    tested against it.
    """
    prod = t_mul(c_element(x, table), c_element(y, table))
    return c_expand(prod, table)


@dataclass(frozen=True)
class SpecialElementData:
    """Per-element distinguished-involution data."""

    e_degree: int  # delta(z) = deg_q P_{e,z}
    pi: int  # leading q-coefficient of P_{e,z}
    defect: int  # l(z) - a(z) - 2 delta(z)
    in_d0: bool
    in_d1: bool


def special_data(z: Perm, kl: KLTable, st: StructureTable) -> SpecialElementData:
    sn = sn_index(z.n)
    coeffs = kl.q_coeffs_idx(0, sn.idx(z))  # e has index 0
    if not coeffs:
        raise ValueError("P_{e,z} vanishes: incomplete table")
    dz = len(coeffs) - 1
    pi = coeffs[-1]
    defect = z.length() - st.a_value(z) - 2 * dz
    return SpecialElementData(dz, pi, defect, defect == 0, defect == 1)


def defect_vector(kl: KLTable, st: StructureTable) -> np.ndarray:
    """defect(z) = l(z) - a(z) - 2 deg P_{e,z} for every element index."""
    if kl.data is None:
        raise ValueError("defect_vector needs a fully built KL table")
    sn = sn_index(kl.n)
    P_e = kl.data.P[:, 0, :]  # row y = e of every column
    nz = P_e != 0
    deg = np.where(nz.any(axis=1), P_e.shape[1] - 1 - nz[:, ::-1].argmax(axis=1), -1)
    if (deg < 0).any():
        raise ValueError("P_{e,z} vanished for some z: incomplete table")
    return sn.length.astype(np.int64) - st.data.a.astype(np.int64) - 2 * deg


def pi_vector(kl: KLTable) -> np.ndarray:
    """pi(z) = leading q-coefficient of P_{e,z} for every element index."""
    P_e = kl.data.P[:, 0, :]
    nz = P_e != 0
    deg = P_e.shape[1] - 1 - nz[:, ::-1].argmax(axis=1)
    return P_e[np.arange(P_e.shape[0]), deg]


def d0_indices(kl: KLTable, st: StructureTable) -> np.ndarray:
    return np.nonzero(defect_vector(kl, st) == 0)[0]


def d1_indices(kl: KLTable, st: StructureTable) -> np.ndarray:
    return np.nonzero(defect_vector(kl, st) == 1)[0]


def springer_mu(y: Perm, x: Perm, kl: KLTable, st: StructureTable) -> int:
    """Evaluate the Springer formula right-hand side for the pair (y, x)."""
    sn = sn_index(y.n)
    yi, xi = sn.idx(y), sn.idx(x)
    d0 = d0_indices(kl, st)
    d1 = d1_indices(kl, st)
    pis = pi_vector(kl)
    iy = int(sn.inverse[yi])
    total = 0
    for d in d0:
        total += st.data.gamma_delta_at(int(iy), int(xi), int(d))[1]
    for f in d1:
        g = st.data.gamma_delta_at(int(iy), int(xi), int(f))[0]
        total += g * int(pis[f])
    return total
