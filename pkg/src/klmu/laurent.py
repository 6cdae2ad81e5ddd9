"""
Exact integer Laurent polynomials in the variable v, with q = v**2.

Coefficients are plain Python ints (arbitrary precision), stored sparsely as
a map from v-exponent to nonzero coefficient.  The ring involution ``bar``
sends v to 1/v.  Two textual encodings are supported:

- the general form ``"c*v^k"`` joined by ``+`` with exponents descending,
  e.g. ``1*v^2+1*v^0`` for 1 + q;
- a compact comma form ``"c0,c1,c2"`` for polynomials in q only
  (ascending q-powers), used in the KL cache files.

>>> v = LaurentPoly.v()
>>> (v - v.bar()) * (v + v.bar())
LaurentPoly('1*v^2+-1*v^-2')
>>> LaurentPoly.parse("1*v^2+1*v^0").q_coeffs()
[1, 1]
"""

from __future__ import annotations

from typing import Iterable, Mapping

NEG_INF = float("-inf")


class LaurentPoly:
    """Immutable Laurent polynomial in v over the integers."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        if coeffs:
            for k, a in coeffs.items():
                if a:
                    c[int(k)] = int(a)
        self._c = c

    # ---- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly({0: 1})

    @staticmethod
    def v(exp: int = 1, coeff: int = 1) -> "LaurentPoly":
        """The monomial coeff * v**exp."""
        return LaurentPoly({exp: coeff})

    @staticmethod
    def q(exp: int = 1, coeff: int = 1) -> "LaurentPoly":
        """The monomial coeff * q**exp, i.e. coeff * v**(2*exp)."""
        return LaurentPoly({2 * exp: coeff})

    @staticmethod
    def from_q_coeffs(coeffs: Iterable[int]) -> "LaurentPoly":
        """Build a polynomial in q from coefficients in ascending q-power."""
        return LaurentPoly({2 * j: a for j, a in enumerate(coeffs)})

    # ---- basic queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self._c

    def coeff(self, exp: int) -> int:
        """Coefficient of v**exp (0 if absent)."""
        return self._c.get(exp, 0)

    def vdegree(self) -> int | float:
        """Maximal v-exponent with nonzero coefficient; -inf for zero."""
        return max(self._c) if self._c else NEG_INF

    def vmindegree(self) -> int | float:
        return min(self._c) if self._c else NEG_INF

    def items(self):
        return self._c.items()

    def is_q_poly(self) -> bool:
        """True iff the polynomial lies in Z[q]: even, nonnegative exponents."""
        return all(k >= 0 and k % 2 == 0 for k in self._c)

    def q_degree(self) -> int | float:
        """Degree as a polynomial in q; requires is_q_poly()."""
        if not self._c:
            return NEG_INF
        if not self.is_q_poly():
            raise ValueError(f"not a polynomial in q: {self}")
        return max(self._c) // 2

    def q_coeffs(self) -> list[int]:
        """Coefficients in ascending q-power; requires is_q_poly()."""
        if not self._c:
            return []
        if not self.is_q_poly():
            raise ValueError(f"not a polynomial in q: {self}")
        out = [0] * (max(self._c) // 2 + 1)
        for k, a in self._c.items():
            out[k // 2] = a
        return out

    # ---- arithmetic ----------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        c = dict(self._c)
        for k, a in other._c.items():
            b = c.get(k, 0) + a
            if b:
                c[k] = b
            else:
                c.pop(k, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = c
        return out

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        c = dict(self._c)
        for k, a in other._c.items():
            b = c.get(k, 0) - a
            if b:
                c[k] = b
            else:
                c.pop(k, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = c
        return out

    def __neg__(self) -> "LaurentPoly":
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {k: -a for k, a in self._c.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, int):
            out = LaurentPoly.__new__(LaurentPoly)
            out._c = {k: a * other for k, a in self._c.items()} if other else {}
            return out
        c: dict[int, int] = {}
        for k1, a1 in self._c.items():
            for k2, a2 in other._c.items():
                k = k1 + k2
                b = c.get(k, 0) + a1 * a2
                if b:
                    c[k] = b
                else:
                    c.pop(k, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = c
        return out

    __rmul__ = __mul__

    def shifted(self, exp: int) -> "LaurentPoly":
        """Multiply by v**exp."""
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {k + exp: a for k, a in self._c.items()}
        return out

    def bar(self) -> "LaurentPoly":
        """The ring involution v -> 1/v (i.e. q**(1/2) -> q**(-1/2))."""
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {-k: a for k, a in self._c.items()}
        return out

    # ---- encoding -------------------------------------------------------

    def render(self) -> str:
        """Canonical text form: "c*v^k" terms joined by "+", exponents descending."""
        if not self._c:
            return "0"
        return "+".join(f"{self._c[k]}*v^{k}" for k in sorted(self._c, reverse=True))

    @staticmethod
    def parse(text: str) -> "LaurentPoly":
        """Inverse of render()."""
        text = text.strip()
        if text == "0":
            return LaurentPoly.zero()
        c: dict[int, int] = {}
        for term in text.split("+"):
            coeff_s, _, exp_s = term.partition("*v^")
            if not exp_s:
                raise ValueError(f"bad Laurent term: {term!r}")
            k = int(exp_s)
            a = int(coeff_s)
            if k in c:
                raise ValueError(f"duplicate exponent in {text!r}")
            if a:
                c[k] = a
        return LaurentPoly(c)

    def render_q(self) -> str:
        """Compact Z[q] form "c0,c1,..." in ascending q-powers."""
        return ",".join(str(a) for a in self.q_coeffs())

    @staticmethod
    def parse_q(text: str) -> "LaurentPoly":
        text = text.strip()
        if not text:
            return LaurentPoly.zero()
        return LaurentPoly.from_q_coeffs(int(t) for t in text.split(","))

    # ---- dunders ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __bool__(self):
        return bool(self._c)

    def __repr__(self):
        return f"LaurentPoly({self.render()!r})"


ZERO = LaurentPoly.zero()
ONE = LaurentPoly.one()
