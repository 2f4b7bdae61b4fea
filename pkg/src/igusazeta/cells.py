"""Zeta integrals over rectilinear cells with simple measures.

A cell of level m in dimension n is the n-fold product of the set of nonzero
integral elements whose angular component is congruent to 1 mod pi^m; its
valuation-r shell in one coordinate has Haar mass q^(-r-m) when the full
integral lattice is normalized to mass 1.  A simple measure is a lattice
function of the valuation vector times that restricted Haar measure, and an
order monomial has |f(x)| = q^(c - d . val(x)).

Integrating |f|^s against the measure folds the shell masses into the lattice
bases (u_i -> u_i / q), multiplies by the constant q^(-m n), and turns the
factor q^(c s) into the monomial t^(-c).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DivergenceError, DomainError
from .lattice import (LatticeFunction, LatticeTerm, check_summability,
                      convergence_abscissa, zeta_lattice)
from .ratfun import FactoredRatFun
from .scalars import CycloRational, UnitScalar


@dataclass(frozen=True)
class RectilinearCell:
    level: int  # m >= 1
    dim: int    # n >= 1

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("cell level must be >= 1")
        if self.dim < 1:
            raise ValueError("cell dimension must be >= 1")


@dataclass(frozen=True)
class SimpleMeasure:
    cell: RectilinearCell
    density: LatticeFunction  # evaluated at the valuation vector

    def __post_init__(self):
        if self.density.dim != self.cell.dim:
            raise ValueError("density dimension must match the cell")

    @property
    def q(self) -> int:
        for term in self.density.terms:
            if term.coords:
                return term.coords[0][1].q
        raise ValueError("measure density must have at least one term")


@dataclass(frozen=True)
class OrderMonomial:
    """|f(x)| = q^(c - sum_i d_i val(x_i)) on the cell."""

    c: int
    d: tuple[int, ...]

    def __post_init__(self):
        if any(di < 0 for di in self.d):
            raise ValueError("order-monomial exponents must be non-negative")

    def is_bounded(self) -> bool:
        # the maximum of |f| on the cell is attained at val = 0
        return self.c <= 0


def _fold_haar(mu: SimpleMeasure) -> LatticeFunction:
    """Push each coordinate's shell weight q^(-x_i) into the term bases."""
    q = mu.q
    shift = UnitScalar.q_power(q, -1)
    terms = tuple(
        LatticeTerm(t.coeff, tuple((k, u * shift) for k, u in t.coords))
        for t in mu.density.terms
    )
    return LatticeFunction(mu.density.dim, terms)


def zeta_cell(mu: SimpleMeasure, f: OrderMonomial, *,
              require_bounded: bool = False) -> FactoredRatFun:
    """The integral of |f|^s over the cell against the simple measure."""
    if len(f.d) != mu.cell.dim:
        raise ValueError("order monomial dimension must match the cell")
    if require_bounded and not f.is_bounded():
        raise DomainError(f"|f| attains q^{f.c} > 1 on the cell")
    q = mu.q
    folded = _fold_haar(mu)
    z = zeta_lattice(folded, f.d)
    mass_scale = Fraction(1, q ** (mu.cell.level * mu.cell.dim))
    z = z.scale(mass_scale)
    if f.c:
        z = z * FactoredRatFun.monomial(q, -f.c)
    return z


def cell_abscissa(mu: SimpleMeasure, f: OrderMonomial) -> Fraction | None:
    """Convergence abscissa of the cell integral; None means -infinity."""
    return convergence_abscissa(_fold_haar(mu), f.d)


def cell_total_mass(mu: SimpleMeasure) -> CycloRational:
    """Exact total measure of the cell: sum over shells of density times Haar mass.

    Requires every folded base to have magnitude < 1; otherwise the shell sum
    diverges and a divergence error identifies the offending coordinates.  For
    densities with non-negative real values this is the total variation mass.
    """
    folded = _fold_haar(mu)
    d0 = tuple(0 for _ in range(mu.cell.dim))
    report = check_summability(folded, d0)
    if not report.ok:
        detail = ", ".join(f"term {t} coordinate {c}" for t, c in report.violations)
        raise DivergenceError(f"cell mass diverges: {detail}",
                              violations=list(report.violations))
    value = zeta_lattice(folded, d0)
    # a fully weighted sum with d = 0 is a constant rational function
    total = value.evaluate(0)
    q = mu.q
    return total * Fraction(1, q ** (mu.cell.level * mu.cell.dim))
