"""
The Hecke algebra of S_n over Z[v, 1/v] (v**2 = q) in the standard basis.

Elements are sparse maps Perm -> LaurentPoly.  Multiplication uses the
quadratic relation T_s T_w = T_{sw} when l(sw) > l(w), else
(q-1) T_w + q T_{sw}, applied along reduced words.  The bar involution
sends v to 1/v and T_w to the inverse of T_{w^{-1}}.

This module is deliberately independent of the array kernels: it is the
slow exact reference used to cross-check them, and it hosts the
from-scratch construction of the canonical basis element by triangular
solving of the bar-invariance equations (`c_element_by_bar_solve`), which
tests use as an oracle against the recursion-based table.
"""

from __future__ import annotations

from functools import lru_cache

from .laurent import LaurentPoly
from .perm import Perm

QM1 = LaurentPoly({2: 1, 0: -1})  # q - 1
Q = LaurentPoly.q()


class HeckeElement:
    """A sparse element of the Hecke algebra in the T-basis."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict[Perm, LaurentPoly] | None = None):
        self.n = n
        self.terms = {}
        if terms:
            for w, p in terms.items():
                if w.n != n:
                    raise ValueError(f"rank mismatch: S_{w.n} term in S_{n} element")
                if p:
                    self.terms[w] = p

    @staticmethod
    def basis(w: Perm, coeff: LaurentPoly | int = 1) -> "HeckeElement":
        if isinstance(coeff, int):
            coeff = LaurentPoly({0: coeff})
        return HeckeElement(w.n, {w: coeff})

    @staticmethod
    def unit(n: int) -> "HeckeElement":
        return HeckeElement.basis(Perm.identity(n))

    def coeff(self, w: Perm) -> LaurentPoly:
        return self.terms.get(w, LaurentPoly.zero())

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        if self.n != other.n:
            raise ValueError(f"rank mismatch: S_{self.n} vs S_{other.n}")
        terms = dict(self.terms)
        for w, p in other.terms.items():
            s = terms.get(w)
            s = p if s is None else s + p
            if s:
                terms[w] = s
            else:
                terms.pop(w, None)
        out = HeckeElement(self.n)
        out.terms = terms
        return out

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + other.scaled(LaurentPoly({0: -1}))

    def scaled(self, p: LaurentPoly) -> "HeckeElement":
        out = HeckeElement(self.n)
        if p:
            out.terms = {w: c * p for w, c in self.terms.items()}
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, HeckeElement)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __repr__(self):
        parts = [f"({p.render()})T[{w.word()}]" for w, p in sorted(
            self.terms.items(), key=lambda t: (t[0].length(), t[0].images))]
        return " + ".join(parts) if parts else "0"


def mul_gen_right(h: HeckeElement, i: int) -> HeckeElement:
    """h * T_{s_i}."""
    out: dict[Perm, LaurentPoly] = {}
    for w, p in h.terms.items():
        ws = _rmul(w, i)
        if ws.length() > w.length():
            _acc(out, ws, p)
        else:
            _acc(out, w, p * QM1)
            _acc(out, ws, p * Q)
    return _from(h.n, out)


def mul_gen_left(h: HeckeElement, i: int) -> HeckeElement:
    """T_{s_i} * h."""
    out: dict[Perm, LaurentPoly] = {}
    for w, p in h.terms.items():
        sw = _lmul(w, i)
        if sw.length() > w.length():
            _acc(out, sw, p)
        else:
            _acc(out, w, p * QM1)
            _acc(out, sw, p * Q)
    return _from(h.n, out)


def _rmul(w: Perm, i: int) -> Perm:
    im = list(w.images)
    im[i - 1], im[i] = im[i], im[i - 1]
    return Perm(tuple(im))


def _lmul(w: Perm, i: int) -> Perm:
    return Perm(tuple(i + 1 if x == i else (i if x == i + 1 else x) for x in w.images))


def _acc(out: dict, w: Perm, p: LaurentPoly):
    s = out.get(w)
    s = p if s is None else s + p
    if s:
        out[w] = s
    else:
        out.pop(w, None)


def _from(n: int, terms: dict) -> HeckeElement:
    out = HeckeElement(n)
    out.terms = terms
    return out


def reduced_word(w: Perm) -> list[int]:
    """A reduced word [i1, ..., ik] with w = s_{i1} s_{i2} ... s_{ik},
    peeling the smallest left descent each step."""
    word = []
    while True:
        ld = w.left_descents()
        if not ld:
            return word
        i = min(ld)
        word.append(i)
        w = _lmul(w, i)


def t_mul(h1: HeckeElement, h2: HeckeElement) -> HeckeElement:
    """Product in the T-basis, expanding the right factor along reduced words."""
    if h1.n != h2.n:
        raise ValueError(f"rank mismatch: S_{h1.n} vs S_{h2.n}")
    total = HeckeElement(h1.n)
    for w2, p2 in h2.terms.items():
        acc = h1.scaled(p2)
        for i in reduced_word(w2):
            acc = mul_gen_right(acc, i)
        total = total + acc
    return total


@lru_cache(maxsize=None)
def t_inverse(w: Perm) -> HeckeElement:
    """(T_w)^{-1} in the T-basis.

    T_s^{-1} = q^{-1} T_s + (q^{-1} - 1) T_e; for w = w' s with l(w') < l(w),
    T_w^{-1} = T_s^{-1} T_{w'}^{-1}.
    """
    if w.length() == 0:
        return HeckeElement.unit(w.n)
    i = min(w.right_descents())
    x = t_inverse(_rmul(w, i))
    qi = LaurentPoly({-2: 1})
    return mul_gen_left(x, i).scaled(qi) + x.scaled(LaurentPoly({-2: 1, 0: -1}))


def bar_element(h: HeckeElement) -> HeckeElement:
    """The bar involution: v -> 1/v semilinearly, T_w -> (T_{w^{-1}})^{-1}."""
    total = HeckeElement(h.n)
    for w, p in h.terms.items():
        total = total + t_inverse(w.inv()).scaled(p.bar())
    return total


def c_element(w: Perm, table) -> HeckeElement:
    """C_w = v^{-l(w)} sum_{y <= w} P_{y,w}(q) T_y from a KL table."""
    n = w.n
    lw = w.length()
    terms: dict[Perm, LaurentPoly] = {}
    for y, p in table.column(w):
        terms[y] = p.shifted(-lw)
    return _from(n, terms)


def c_expand(h: HeckeElement, table) -> dict[Perm, LaurentPoly]:
    """Coefficients c_z with h = sum_z c_z C_z (exact triangular solve)."""
    rem = h
    out: dict[Perm, LaurentPoly] = {}
    while not rem.is_zero():
        z = max(rem.terms, key=lambda u: (u.length(), u.images))
        cz = rem.coeff(z).shifted(z.length())
        out[z] = cz
        rem = rem - c_element(z, table).scaled(cz)
    return out


class BarSolveError(RuntimeError):
    """The triangular bar-invariance solve hit an inconsistency."""


def c_element_by_bar_solve(w: Perm) -> tuple[HeckeElement, dict[Perm, LaurentPoly]]:
    """Construct C_w directly from the defining axioms, with no recursion.

    Solves bar(C) = C for C = sum_y p_y T_y with p_w = v^{-l(w)} and
    deg p_y constrained below v^{-l(y)}.  Writing bar(C) in the T-basis via
    the inverse elements, coefficient y of the equation reads

        p_y - bar(p_y) q^{-l(y)} = sum_{l(x) > l(y)} bar(p_x) B_{y,x}

    whose two sides occupy disjoint v-degree ranges, so p_y is the part of
    the right side in degrees <= -l(y)-1 and the rest must match exactly
    (checked; a mismatch raises).  Returns (C_w, {y: P_{y,w}}).
    """
    from .perm import all_perms

    n, lw = w.n, w.length()
    by_len: dict[int, list[Perm]] = {}
    for u in all_perms(n):
        lu = u.length()
        if lu <= lw:
            by_len.setdefault(lu, []).append(u)

    p: dict[Perm, LaurentPoly] = {w: LaurentPoly({-lw: 1})}
    acc = t_inverse(w.inv()).scaled(p[w].bar())
    for lev in range(lw - 1, -1, -1):
        solved = []
        for y in by_len.get(lev, []):
            ky = acc.coeff(y)
            py = LaurentPoly({k: c for k, c in ky.items() if k <= -lev - 1})
            if ky != py - py.bar().shifted(-2 * lev):
                raise BarSolveError(f"inconsistent bar equation at y={y.word()}")
            if py:
                p[y] = py
                solved.append(y)
        for y in solved:
            acc = acc + t_inverse(y.inv()).scaled(p[y].bar())

    c = _from(n, dict(p))
    polys: dict[Perm, LaurentPoly] = {}
    for y, py in p.items():
        poly = py.shifted(lw)
        if not poly.is_q_poly():
            raise BarSolveError(f"P_({y.word()},{w.word()}) not in Z[q]: {poly.render()}")
        if y != w and 2 * poly.q_degree() > lw - y.length() - 1:
            raise BarSolveError(f"degree bound violated at y={y.word()}")
        polys[y] = poly
    return c, polys
