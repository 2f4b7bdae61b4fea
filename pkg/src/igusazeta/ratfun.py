"""Factored rational functions of t = q^(-s) and their exact expansions.

A value is ``t^v * N(t) / prod (1 - u*t^d)^e`` where N is a polynomial over
the cyclotomic-rational scalars and each denominator base u is a unit scalar
``z^j * q^a``.  The factored shape is preserved by arithmetic: products merge
factor multisets, sums merge by factor-wise least common multiple.  Equality
is decided by cross-multiplication, so two values compare equal exactly when
they are equal as rational functions.

Expansions provided:

* Taylor coefficients at t = 0 (``series_coeffs``);
* the exact Laurent window in w = 1 - a0*t at any nonzero center a0
  (``laurent_at``), with a complete principal part;
* pole multiplicity at t = 1/a0 (``pole_order``), accounting for numerator
  vanishing by repeated synthetic division.

Everything is immutable and exact; no floating point is used anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ConfigError, DomainError
from .poly import Poly, binom_expand_factor
from .scalars import CycloRational, UnitScalar, render_unit, to_cyclo


def _gen_binom(k: int, j: int) -> int:
    """Generalized binomial coefficient C(k, j) for any integer k, j >= 0."""
    if j < 0:
        return 0
    if k >= 0:
        return math.comb(k, j)
    return (-1) ** j * math.comb(j - k - 1, j)


# ---------------------------------------------------------------------------
# truncated power-series helpers over CycloRational (dense lists, index = deg)
# ---------------------------------------------------------------------------


def _ws_mul(a: list[CycloRational], b: list[CycloRational], order: int) -> list[CycloRational]:
    out = [CycloRational.zero() for _ in range(order + 1)]
    for i, ai in enumerate(a[: order + 1]):
        if ai.is_zero():
            continue
        for j, bj in enumerate(b[: order + 1 - i]):
            if not bj.is_zero():
                out[i + j] = out[i + j] + ai * bj
    return out


def _ws_inv(a: list[CycloRational], order: int) -> list[CycloRational]:
    if a[0].is_zero():
        raise ZeroDivisionError("series has zero constant term")
    inv0 = a[0].inverse()
    out = [CycloRational.zero() for _ in range(order + 1)]
    out[0] = inv0
    for k in range(1, order + 1):
        acc = CycloRational.zero()
        for j in range(1, min(k, len(a) - 1) + 1):
            if not a[j].is_zero():
                acc = acc + a[j] * out[k - j]
        out[k] = -(inv0 * acc)
    return out


def _one_minus_w_pow(k: int, order: int) -> list[CycloRational]:
    """(1 - w)^k truncated to the given order; k may be negative."""
    return [
        CycloRational.from_rational(Fraction((-1) ** j * _gen_binom(k, j)))
        for j in range(order + 1)
    ]


@dataclass(frozen=True)
class DenomFactor:
    """One factor (1 - u*t^d)^e of a denominator."""

    u: UnitScalar
    d: int
    e: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("denominator t-degree must be positive")
        if self.e < 1:
            raise ValueError("denominator multiplicity must be positive")

    def sort_key(self):
        return (self.d, self.u.exp, self.u.level, self.u.root, self.e)


@dataclass(frozen=True)
class LaurentSeries:
    """A finite Laurent window sum_{i=min..max} coeffs[i] * (1 - a0*t)^i.

    The principal part (indices < 0) is always complete: coefficients below
    ``min_index`` are genuinely zero.  Indices above ``max_index`` are outside
    the computed window and cannot be queried.
    """

    center: UnitScalar
    min_index: int
    max_index: int
    coeffs: tuple[CycloRational, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.max_index - self.min_index + 1:
            raise ValueError("coefficient window has wrong length")

    def coeff(self, i: int) -> CycloRational:
        if i > self.max_index:
            raise DomainError(f"index {i} above the computed window {self.max_index}")
        if i < self.min_index:
            return CycloRational.zero()
        return self.coeffs[i - self.min_index]

    def indices(self) -> range:
        return range(self.min_index, self.max_index + 1)

    def is_zero_window(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __str__(self) -> str:
        parts = [f"{c}*w^{i}" for i, c in zip(self.indices(), self.coeffs) if not c.is_zero()]
        return " + ".join(parts) if parts else "0"


class FactoredRatFun:
    """Exact rational function of t in factored normal form."""

    __slots__ = ("q", "t_power", "numerator", "denom")
    __hash__ = None  # equality is semantic (cross-multiplication)

    def __init__(self, q: int, t_power: int = 0, numerator: Poly | None = None,
                 denom: Iterable[DenomFactor] | Iterable[tuple[UnitScalar, int, int]] = ()):
        if q < 2:
            raise ConfigError("q must be an integer >= 2")
        numerator = numerator if numerator is not None else Poly.zero()
        merged: dict[tuple[UnitScalar, int], int] = {}
        for f in denom:
            if not isinstance(f, DenomFactor):
                f = DenomFactor(*f)
            if f.u.q != q:
                raise ConfigError("denominator base has mismatched q")
            key = (f.u, f.d)
            merged[key] = merged.get(key, 0) + f.e
        if numerator.is_zero():
            t_power = 0
            merged = {}
        else:
            # keep the numerator with nonzero constant term; fold t powers out
            shift = numerator.min_exponent()
            if shift:
                numerator = numerator.shift(-shift)
                t_power += shift
        self.q = q
        self.t_power = t_power
        self.numerator = numerator
        self.denom = tuple(sorted(
            (DenomFactor(u, d, e) for (u, d), e in merged.items()),
            key=DenomFactor.sort_key,
        ))

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(q: int) -> "FactoredRatFun":
        return FactoredRatFun(q)

    @staticmethod
    def constant(q: int, c) -> "FactoredRatFun":
        return FactoredRatFun(q, 0, Poly.constant(c))

    @staticmethod
    def one(q: int) -> "FactoredRatFun":
        return FactoredRatFun.constant(q, 1)

    @staticmethod
    def monomial(q: int, v: int, c=1) -> "FactoredRatFun":
        """c * t^v with v of either sign."""
        return FactoredRatFun(q, v, Poly.constant(c))

    @staticmethod
    def geometric(u: UnitScalar, d: int = 1, e: int = 1) -> "FactoredRatFun":
        """1 / (1 - u*t^d)^e."""
        return FactoredRatFun(u.q, 0, Poly.constant(1), [DenomFactor(u, d, e)])

    # -- basic views -----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def _check_compatible(self, other: "FactoredRatFun") -> None:
        if self.q != other.q:
            raise ConfigError(f"mismatched q: {self.q} vs {other.q}")

    def denom_multiplicity(self, u: UnitScalar, d: int) -> int:
        for f in self.denom:
            if f.u == u and f.d == d:
                return f.e
        return 0

    def denom_poly(self) -> Poly:
        out = Poly.constant(1)
        for f in self.denom:
            out = out * binom_expand_factor(f.u, f.d, f.e)
        return out

    # -- arithmetic --------------------------------------------------------------

    def __neg__(self) -> "FactoredRatFun":
        return FactoredRatFun(self.q, self.t_power, -self.numerator, self.denom)

    def scale(self, c) -> "FactoredRatFun":
        return FactoredRatFun(self.q, self.t_power, self.numerator.scale(c), self.denom)

    def __add__(self, other: "FactoredRatFun") -> "FactoredRatFun":
        self._check_compatible(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        keys = {(f.u, f.d): f.e for f in self.denom}
        for f in other.denom:
            k = (f.u, f.d)
            keys[k] = max(keys.get(k, 0), f.e)
        n1 = self.numerator
        n2 = other.numerator
        for (u, d), e in keys.items():
            e1 = self.denom_multiplicity(u, d)
            e2 = other.denom_multiplicity(u, d)
            if e > e1:
                n1 = n1 * binom_expand_factor(u, d, e - e1)
            if e > e2:
                n2 = n2 * binom_expand_factor(u, d, e - e2)
        v = min(self.t_power, other.t_power)
        num = n1.shift(self.t_power - v) + n2.shift(other.t_power - v)
        denom = [DenomFactor(u, d, e) for (u, d), e in keys.items()]
        return FactoredRatFun(self.q, v, num, denom)

    def __sub__(self, other: "FactoredRatFun") -> "FactoredRatFun":
        return self + (-other)

    def __mul__(self, other: "FactoredRatFun") -> "FactoredRatFun":
        self._check_compatible(other)
        if self.is_zero() or other.is_zero():
            return FactoredRatFun.zero(self.q)
        return FactoredRatFun(
            self.q,
            self.t_power + other.t_power,
            self.numerator * other.numerator,
            list(self.denom) + list(other.denom),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, FactoredRatFun):
            return NotImplemented
        if self.q != other.q:
            return False
        # cross-multiply with common factors cancelled
        n1, n2 = self.numerator, other.numerator
        keys = {(f.u, f.d): f.e for f in self.denom}
        for f in other.denom:
            k = (f.u, f.d)
            e1 = keys.get(k, 0)
            common = min(e1, f.e)
            extra_on_n1 = f.e - common
            if extra_on_n1:
                n1 = n1 * binom_expand_factor(f.u, f.d, extra_on_n1)
            if common:
                keys[k] = e1 - common
        for (u, d), e in keys.items():
            if e:
                n2 = n2 * binom_expand_factor(u, d, e)
        v = min(self.t_power, other.t_power)
        return n1.shift(self.t_power - v) == n2.shift(other.t_power - v)

    # -- normalization and pole structure ------------------------------------------

    def normalize(self) -> "FactoredRatFun":
        """Cancel denominator factors that divide the numerator exactly.

        Factors are processed in decreasing t-degree so composite factors are
        cancelled before the linear ones that divide them.
        """
        if self.is_zero():
            return self
        num = self.numerator
        remaining: list[DenomFactor] = []
        for f in sorted(self.denom, key=lambda g: (-g.d,) + g.sort_key()):
            e = f.e
            factor_poly = binom_expand_factor(f.u, f.d, 1)
            while e > 0:
                quo, rem = num.divmod(factor_poly)
                if not rem.is_zero():
                    break
                num = quo
                e -= 1
            if e:
                remaining.append(DenomFactor(f.u, f.d, e))
        return FactoredRatFun(self.q, self.t_power, num, remaining)

    def pole_order(self, a0: UnitScalar) -> int:
        """Multiplicity of the pole at t = 1/a0 (0 when regular)."""
        if a0.q != self.q:
            raise ConfigError("center has mismatched q")
        if self.is_zero():
            return 0
        total = sum(f.e for f in self.denom if f.u == a0 ** f.d)
        if total == 0:
            return 0
        inv = a0.inverse().to_cyclo()
        num = self.numerator
        vanish = 0
        while vanish < total and num.evaluate(inv).is_zero():
            num = num.divide_linear(a0)
            vanish += 1
        return total - vanish

    # -- expansions ----------------------------------------------------------------

    def series_coeffs(self, order: int) -> list[CycloRational]:
        """Taylor coefficients of t^0..t^order at t = 0."""
        if order < 0:
            raise ValueError("order must be non-negative")
        if self.is_zero():
            return [CycloRational.zero() for _ in range(order + 1)]
        if self.t_power < 0:
            # canonical form keeps the numerator constant term nonzero
            raise DomainError("pole at t = 0: negative t-power is not expandable")
        work_order = order - self.t_power
        if work_order < 0:
            return [CycloRational.zero() for _ in range(order + 1)]
        acc = self.numerator.dense(work_order)
        for f in self.denom:
            expansion = [CycloRational.zero() for _ in range(work_order + 1)]
            upow = CycloRational.one()
            ucy = f.u.to_cyclo()
            for i in range(0, work_order // f.d + 1):
                c = Fraction(math.comb(f.e - 1 + i, f.e - 1))
                expansion[f.d * i] = upow * c
                upow = upow * ucy
            acc = _ws_mul(acc, expansion, work_order)
        prefix = [CycloRational.zero() for _ in range(self.t_power)]
        return (prefix + acc)[: order + 1]

    def laurent_at(self, a0: UnitScalar, max_index: int) -> LaurentSeries:
        """Exact Laurent window at the center w = 1 - a0*t.

        The substitution is t = (1 - w)/a0; denominator factors vanishing at
        w = 0 (those with u = a0^d) contribute the principal part, everything
        else is expanded as a regular power series in w.
        """
        if a0.q != self.q:
            raise ConfigError("center has mismatched q")
        if self.is_zero():
            return LaurentSeries(a0, 0, max_index, tuple(
                CycloRational.zero() for _ in range(max_index + 1)))
        pole_bound = sum(f.e for f in self.denom if f.u == a0 ** f.d)
        work = max_index + pole_bound
        if work < 0:
            return LaurentSeries(a0, max_index, max_index, (CycloRational.zero(),))

        a0_inv_c = a0.inverse().to_cyclo()

        # numerator and monomial prefactor, as a series in w
        series = [CycloRational.zero() for _ in range(work + 1)]
        for e, c in self.numerator.coeffs.items():
            scaled = c * (a0_inv_c ** e)
            for j, b in enumerate(_one_minus_w_pow(e, work)):
                if not b.is_zero():
                    series[j] = series[j] + scaled * b
        if self.t_power:
            pref = [(a0_inv_c ** self.t_power) * b
                    for b in _one_minus_w_pow(self.t_power, work)]
            series = _ws_mul(series, pref, work)

        for f in self.denom:
            if f.u == a0 ** f.d:
                # (1 - u t^d) = w * g(w), g(0) = d != 0
                g = [CycloRational.zero() for _ in range(work + 1)]
                for i in range(1, f.d + 1):
                    if i - 1 <= work:
                        g[i - 1] = CycloRational.from_rational(
                            Fraction((-1) ** (i + 1) * math.comb(f.d, i)))
                block = g
            else:
                # regular factor 1 - u*(1-w)^d/a0^d, nonzero at w = 0
                ua = f.u.to_cyclo() * (a0_inv_c ** f.d)
                block = [CycloRational.zero() for _ in range(work + 1)]
                block[0] = CycloRational.one()
                for j, b in enumerate(_one_minus_w_pow(f.d, work)):
                    if not b.is_zero():
                        block[j] = block[j] - ua * b
            inv_block = _ws_inv(block, work)
            for _ in range(f.e):
                series = _ws_mul(series, inv_block, work)

        valuation = next((i for i, c in enumerate(series) if not c.is_zero()), None)
        if valuation is None:
            # every coefficient up to max_index is genuinely zero
            return LaurentSeries(a0, 0, max_index, tuple(
                CycloRational.zero() for _ in range(max_index + 1)))
        min_index = valuation - pole_bound
        coeffs = tuple(series[valuation:])
        return LaurentSeries(a0, min_index, max_index, coeffs)

    # -- substitutions and evaluation ---------------------------------------------

    def rescale_t(self, c: UnitScalar) -> "FactoredRatFun":
        """Substitute t -> c*t."""
        if c.q != self.q:
            raise ConfigError("rescaling scalar has mismatched q")
        if self.is_zero():
            return self
        ccy = c.to_cyclo()
        num = Poly({e: coeff * (ccy ** e) for e, coeff in self.numerator.coeffs.items()})
        num = num.scale(ccy ** self.t_power)
        denom = [DenomFactor(f.u * (c ** f.d), f.d, f.e) for f in self.denom]
        return FactoredRatFun(self.q, self.t_power, num, denom)

    def evaluate(self, t0) -> CycloRational:
        """Exact value at a scalar point t0 (error on poles)."""
        t0 = to_cyclo(t0)
        if self.is_zero():
            return CycloRational.zero()
        if t0.is_zero() and self.t_power < 0:
            raise DomainError("pole at t = 0")
        value = self.numerator.evaluate(t0)
        value = value * (t0 ** self.t_power)
        for f in self.denom:
            dval = CycloRational.one() - f.u.to_cyclo() * (t0 ** f.d)
            if dval.is_zero():
                raise DomainError("evaluation at a pole")
            value = value * (dval.inverse() ** f.e)
        return value

    # -- rendering ------------------------------------------------------------------

    def render(self, level: int | None = None) -> str:
        """Canonical text form t^v * (num) / (1 - u*t^d)^e ...

        A working cyclotomic level may be given so root-of-unity powers are
        expressed relative to the configured primitive root.
        """
        if self.is_zero():
            return "0"
        parts = []
        if self.t_power:
            parts.append(f"t^{self.t_power} *")
        parts.append(f"({self.numerator})")
        if self.denom:
            factors = []
            for f in self.denom:
                u = render_unit(f.u, level)
                td = "t" if f.d == 1 else f"t^{f.d}"
                base = f"(1 - {td})" if u == "1" else f"(1 - {u}*{td})"
                factors.append(base if f.e == 1 else f"{base}^{f.e}")
            parts.append("/ " + " ".join(factors))
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"FactoredRatFun[q={self.q}]({self.render()})"

    def __str__(self) -> str:
        return self.render()


def product(factors: Sequence[FactoredRatFun], q: int) -> FactoredRatFun:
    out = FactoredRatFun.one(q)
    for f in factors:
        out = out * f
    return out
