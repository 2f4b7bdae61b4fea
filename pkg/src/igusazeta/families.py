"""Zeta families of the square-matrix determinant and their Laurent functionals.

For the action of a pair of general linear groups on square matrices, the
zeta integral against an unramified twist |det|^r and the normalizing factor
|det|^(-n) closes as the product

    Z(1_M, s) = prod_{i=1..n} (1 - q^-i) / (1 - q^(n-r-i) t),

obtained from the untwisted determinant integral by the substitution
t -> q^(n-r) t.  Test functions are restricted to dilation indicators: the
zeta of the indicator of the a-th dilate is t^(a n) times the base (each
dilation generator is normalized so its constant character factor is 1).

The index-i Laurent coefficient of Z at a center a0 is a linear functional of
the test function; the group element whose determinant ratio is a uniformizer
acts on Z by multiplication with c * t, and 1 minus that action shifts the
whole coefficient ladder down by exactly one index.  Both facts are verified
symbolically, coefficient by coefficient, with exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .characters import KCharacter
from .errors import ConfigError, DomainError
from .oracle import det_zeta_product
from .poly import Poly
from .ratfun import FactoredRatFun, LaurentSeries
from .scalars import CycloRational, UnitScalar, to_cyclo


@dataclass(frozen=True)
class TestFunction:
    """Finite linear combination of dilation indicators pi^a * (integral matrices)."""

    dilations: tuple[tuple[int, CycloRational], ...]  # (a, coefficient)

    def __post_init__(self):
        cleaned = []
        for a, c in self.dilations:
            if a < 0:
                raise ValueError("dilation exponents must be non-negative")
            cleaned.append((int(a), to_cyclo(c)))
        object.__setattr__(self, "dilations", tuple(cleaned))

    @staticmethod
    def dilate(a: int) -> "TestFunction":
        return TestFunction(((a, CycloRational.one()),))

    def __str__(self) -> str:
        return " + ".join(f"{c}*Dilate({a})" for a, c in self.dilations) or "0"


@dataclass(frozen=True)
class ZetaFamily:
    """The determinant zeta family for matrices of size n with twist |.|^r."""

    n: int
    chi: KCharacter
    q: int
    base: FactoredRatFun

    def zeta_of(self, phi: TestFunction) -> FactoredRatFun:
        out = FactoredRatFun.zero(self.q)
        for a, c in phi.dilations:
            out = out + (self.base * FactoredRatFun.monomial(self.q, a * self.n)).scale(c)
        return out


def zeta_family_build(n: int, r: int, q: int) -> ZetaFamily:
    """Build the family with base prod_i (1 - q^-i)/(1 - q^(n-r-i) t)."""
    if n < 1:
        raise ValueError("matrix size must be >= 1")
    if q < 2:
        raise ConfigError("q must be >= 2")
    base = det_zeta_product(n, q).rescale_t(UnitScalar.q_power(q, n - r))
    return ZetaFamily(n, KCharacter.unramified(r), q, base)


def laurent_table(family: ZetaFamily, phi: TestFunction, a0: UnitScalar,
                  max_index: int) -> LaurentSeries:
    """Laurent window of Z(phi, s) at the center 1 - a0 t."""
    return family.zeta_of(phi).laurent_at(a0, max_index)


@dataclass(frozen=True)
class GroupElementAction:
    """Effect of one group element on the symbolic zeta: Z -> c * t^v * Z.

    v is the valuation of the determinant ratio of the two factors, c the
    constant character factor.
    """

    v: int
    c: CycloRational

    def __post_init__(self):
        object.__setattr__(self, "c", to_cyclo(self.c))

    def one_minus(self, q: int) -> FactoredRatFun:
        """The operator (1 - g) as multiplication by the polynomial 1 - c t^v."""
        return FactoredRatFun(q, 0, Poly({0: 1, self.v: -self.c}))


@dataclass(frozen=True)
class RecurrenceEntry:
    phi: TestFunction
    index: int
    lhs: CycloRational
    rhs: CycloRational

    @property
    def ok(self) -> bool:
        return (self.lhs - self.rhs).is_zero()


@dataclass(frozen=True)
class RecurrenceReport:
    entries: tuple[RecurrenceEntry, ...]

    @property
    def passed(self) -> bool:
        return all(e.ok for e in self.entries)


def action_recurrence_check(family: ZetaFamily, g: GroupElementAction,
                            a0: UnitScalar, phis: tuple[TestFunction, ...],
                            indices: range | tuple[int, ...],
                            depth: int = 1) -> RecurrenceReport:
    """Verify that applying (1 - g) depth times shifts Laurent indices by depth.

    Preconditions: the normalization c * a0^(-v) = 1, and v = 1 (the
    determinant ratio is a uniformizer).  For v >= 2 the operator 1 - c t^v
    picks up extra factors at the center and the single-index shift fails, so
    such inputs are rejected rather than silently checked against a false
    identity.
    """
    if g.v != 1:
        raise DomainError(
            f"the index shift requires a uniformizer action (v = 1), got v = {g.v}")
    if not (g.c * (a0.inverse() ** g.v).to_cyclo()) == CycloRational.one():
        raise DomainError("normalization violated: need c * a0^(-v) = 1")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    indices = tuple(indices)
    top = max(indices)
    op = g.one_minus(family.q)
    entries = []
    for phi in phis:
        z = family.zeta_of(phi)
        lhs_fun = z
        for _ in range(depth):
            lhs_fun = op * lhs_fun
        lhs_series = lhs_fun.laurent_at(a0, top)
        rhs_series = z.laurent_at(a0, top)
        for i in indices:
            entries.append(RecurrenceEntry(
                phi, i, lhs_series.coeff(i), rhs_series.coeff(i - depth)))
    return RecurrenceReport(tuple(entries))


DEFAULT_TEST_CLASS = (TestFunction.dilate(0), TestFunction.dilate(1),
                      TestFunction.dilate(2))


def invariance_order_check(family: ZetaFamily, a0: UnitScalar, i: int,
                           phis: tuple[TestFunction, ...] = DEFAULT_TEST_CLASS,
                           max_steps: int = 64) -> int:
    """Least j such that j+1 applications of the normalized shift kill index i.

    The normalized operator is 1 - a0*t (uniformizer action with character
    factor a0).  Annihilation is checked symbolically across the test class.
    """
    base_floor = -family.base.normalize().pole_order(a0)
    if i < base_floor:
        raise DomainError(f"index {i} is below the vanishing floor {base_floor}")
    op = FactoredRatFun(family.q, 0, Poly({0: 1, 1: -a0.to_cyclo()}))
    funs = [family.zeta_of(phi) for phi in phis]
    for j in range(max_steps):
        killed = True
        for f in funs:
            acc = f
            for _ in range(j + 1):
                acc = op * acc
            if not acc.laurent_at(a0, i).coeff(i).is_zero():
                killed = False
                break
        if killed:
            return j
    raise DomainError(f"no annihilation within {max_steps} steps")
