"""Univariate polynomials in t over the exact scalar field.

Sparse representation: a map from non-negative exponent to a nonzero
CycloRational coefficient.  The empty map is the zero polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .scalars import CycloRational, UnitScalar, to_cyclo


class Poly:
    __slots__ = ("coeffs",)
    __hash__ = None

    def __init__(self, coeffs: Mapping[int, object] | Iterable[tuple[int, object]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        data: dict[int, CycloRational] = {}
        for exp, c in items:
            if exp < 0:
                raise ValueError("polynomial exponents must be non-negative")
            val = to_cyclo(c)
            if val.is_zero():
                continue
            if exp in data:
                val = data[exp] + val
                if val.is_zero():
                    del data[exp]
                    continue
            data[exp] = val
        self.coeffs = data

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return Poly()

    @staticmethod
    def constant(c) -> "Poly":
        return Poly({0: c})

    @staticmethod
    def monomial(exp: int, c=1) -> "Poly":
        return Poly({exp: c})

    # -- views --------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return max(self.coeffs) if self.coeffs else -1

    def min_exponent(self) -> int:
        """Smallest exponent with nonzero coefficient; 0 for the zero polynomial."""
        return min(self.coeffs) if self.coeffs else 0

    def coefficient(self, exp: int) -> CycloRational:
        return self.coeffs.get(exp, CycloRational.zero())

    def items_sorted(self) -> list[tuple[int, CycloRational]]:
        return sorted(self.coeffs.items())

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        out: list[tuple[int, CycloRational]] = list(self.coeffs.items()) + list(other.coeffs.items())
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        out: list[tuple[int, CycloRational]] = []
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out.append((e1 + e2, c1 * c2))
        return Poly(out)

    def scale(self, c) -> "Poly":
        c = to_cyclo(c)
        if c.is_zero():
            return Poly()
        return Poly({e: v * c for e, v in self.coeffs.items()})

    def shift(self, k: int) -> "Poly":
        """Multiply by t^k (k >= 0), or divide exactly by t^(-k) (k < 0)."""
        if k < 0 and self.min_exponent() < -k and not self.is_zero():
            raise ValueError("polynomial not divisible by the requested power of t")
        return Poly({e + k: c for e, c in self.coeffs.items()})

    def evaluate(self, t0) -> CycloRational:
        t0 = to_cyclo(t0)
        result = CycloRational.zero()
        power_cache: dict[int, CycloRational] = {0: CycloRational.one()}
        for e in sorted(self.coeffs):
            if e not in power_cache:
                power_cache[e] = t0 ** e
            result = result + self.coeffs[e] * power_cache[e]
        return result

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Exact field division with remainder; divisor must be nonzero."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        d = other.degree()
        lead_inv = other.coefficient(d).inverse()
        rem = dict(self.coeffs)
        quo: dict[int, CycloRational] = {}

        def rem_degree() -> int:
            return max(rem) if rem else -1

        while rem_degree() >= d:
            e = rem_degree()
            c = rem[e] * lead_inv
            quo[e - d] = c
            for oe, oc in other.coeffs.items():
                idx = e - d + oe
                val = rem.get(idx, CycloRational.zero()) - c * oc
                if val.is_zero():
                    rem.pop(idx, None)
                else:
                    rem[idx] = val
        return Poly(quo), Poly(rem)

    def divisible_by(self, other: "Poly") -> bool:
        _, rem = self.divmod(other)
        return rem.is_zero()

    def divide_linear(self, a0: UnitScalar) -> "Poly":
        """Exact quotient by (1 - a0*t); requires that 1/a0 is a root."""
        if self.is_zero():
            return Poly()
        a0c = a0.to_cyclo()
        quo: dict[int, CycloRational] = {}
        prev = CycloRational.zero()
        deg = self.degree()
        for e in range(deg + 1):
            val = self.coefficient(e) + a0c * prev
            if not val.is_zero():
                quo[e] = val
            prev = val
        # prev now holds the quotient coefficient at degree deg, which is the
        # remainder slot; it vanishes exactly when (1 - a0*t) divides self.
        if not prev.is_zero():
            raise ValueError("polynomial is not divisible by (1 - a0*t)")
        quo.pop(deg, None)
        return Poly(quo)

    def dense(self, order: int) -> list[CycloRational]:
        """Coefficients of t^0..t^order as a list."""
        out = [CycloRational.zero()] * (order + 1)
        for e, c in self.coeffs.items():
            if e <= order:
                out[e] = c
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        if set(self.coeffs) != set(other.coeffs):
            return False
        return all(other.coeffs[e] == c for e, c in self.coeffs.items())

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.items_sorted():
            cs = str(c)
            if e == 0:
                parts.append(cs)
            else:
                te = "t" if e == 1 else f"t^{e}"
                parts.append(te if cs == "1" else f"{cs}*{te}")
        return " + ".join(parts)


def binom_expand_factor(u: UnitScalar, d: int, e: int) -> Poly:
    """The polynomial (1 - u*t^d)^e for e >= 0."""
    import math as _math

    base_c = u.to_cyclo()
    terms: list[tuple[int, object]] = []
    for i in range(e + 1):
        coeff = CycloRational.from_rational(Fraction((-1) ** i * _math.comb(e, i)))
        terms.append((d * i, coeff * (base_c ** i)))
    return Poly(terms)
