"""Lattice sums over the orthant N^n with closed rational-function values.

A lattice function is a finite sum of terms

    c * C(x_1, k_1) ... C(x_n, k_n) * u_1^{x_1} ... u_n^{x_n}

with exact coefficient c and unit-scalar bases u_i.  Pairing such a function
with an exponent vector d gives the weighted sum

    Z(phi, d) = sum over x in N^n of phi(x) * t^(d . x),

which closes termwise through the identity

    sum over x of C(x, k) w^x = w^k / (1 - w)^(k+1)

applied with w = u_i * t^{d_i}.  Coordinates with d_i = 0 contribute constant
factors and therefore must have |u_i| < 1; this summability condition is a
hard error, not a formal answer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DivergenceError
from .poly import Poly
from .ratfun import DenomFactor, FactoredRatFun
from .scalars import CycloRational, UnitScalar, to_cyclo


@dataclass(frozen=True)
class LatticeTerm:
    """One product term c * prod_i C(x_i, k_i) u_i^{x_i}."""

    coeff: CycloRational
    coords: tuple[tuple[int, UnitScalar], ...]  # (binomial degree k_i, base u_i)

    def __post_init__(self):
        object.__setattr__(self, "coeff", to_cyclo(self.coeff))
        coords = tuple((int(k), u) for k, u in self.coords)
        for k, _ in coords:
            if k < 0:
                raise ValueError("binomial degrees must be non-negative")
        object.__setattr__(self, "coords", coords)

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def order(self) -> int:
        return sum(k for k, _ in self.coords)

    def value_at(self, x: tuple[int, ...]) -> CycloRational:
        """Exact value of the term at a lattice point."""
        out = self.coeff
        for (k, u), xi in zip(self.coords, x):
            b = math.comb(xi, k)
            if b == 0:
                return CycloRational.zero()
            out = out * ((u ** xi).to_cyclo() * b)
        return out


@dataclass(frozen=True)
class LatticeFunction:
    """A finite sum of lattice terms on N^dim."""

    dim: int
    terms: tuple[LatticeTerm, ...]

    def __post_init__(self):
        for t in self.terms:
            if t.dim != self.dim:
                raise ValueError("all terms must share the lattice dimension")

    @property
    def order(self) -> int:
        return max((t.order for t in self.terms), default=0)

    def value_at(self, x: tuple[int, ...]) -> CycloRational:
        out = CycloRational.zero()
        for t in self.terms:
            out = out + t.value_at(x)
        return out

    def __add__(self, other: "LatticeFunction") -> "LatticeFunction":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return LatticeFunction(self.dim, self.terms + other.terms)

    def scale(self, c) -> "LatticeFunction":
        c = to_cyclo(c)
        return LatticeFunction(
            self.dim,
            tuple(LatticeTerm(t.coeff * c, t.coords) for t in self.terms),
        )

    def tensor(self, other: "LatticeFunction") -> "LatticeFunction":
        """Product function on the concatenated coordinates."""
        terms = tuple(
            LatticeTerm(t1.coeff * t2.coeff, t1.coords + t2.coords)
            for t1 in self.terms
            for t2 in other.terms
        )
        return LatticeFunction(self.dim + other.dim, terms)

    @staticmethod
    def one(dim: int, q: int) -> "LatticeFunction":
        """The constant function 1 (all binomial degrees zero, unit bases)."""
        coords = tuple((0, UnitScalar.one(q)) for _ in range(dim))
        return LatticeFunction(dim, (LatticeTerm(CycloRational.one(), coords),))


@dataclass(frozen=True)
class SummabilityReport:
    ok: bool
    violations: tuple[tuple[int, int], ...]  # (term index, coordinate index)

    def __bool__(self) -> bool:
        return self.ok


def check_summability(phi: LatticeFunction, d: tuple[int, ...]) -> SummabilityReport:
    """Decide absolute summability of phi against the weight t^(d.x).

    Coordinates carrying a positive t-degree always converge for large Re(s);
    the condition bites only where d_i = 0, where the base must satisfy
    |u_i| < 1.
    """
    _check_dims(phi, d)
    bad = []
    for ti, term in enumerate(phi.terms):
        for ci, (_, u) in enumerate(term.coords):
            if d[ci] == 0 and not u.magnitude_lt_one():
                bad.append((ti, ci))
    return SummabilityReport(not bad, tuple(bad))


def _check_dims(phi: LatticeFunction, d: tuple[int, ...]) -> None:
    if len(d) != phi.dim:
        raise ValueError(f"exponent vector has length {len(d)}, expected {phi.dim}")
    if any(di < 0 for di in d):
        raise ValueError("exponent vector entries must be non-negative")


def sum_binom_geom(k: int, u: UnitScalar, d: int) -> FactoredRatFun:
    """Closed form of sum over x in N of C(x, k) (u t^d)^x.

    Returns (u t^d)^k / (1 - u t^d)^(k+1); for d = 0 the value is the constant
    u^k / (1-u)^(k+1), which requires |u| < 1.
    """
    if k < 0:
        raise ValueError("binomial degree must be non-negative")
    q = u.q
    if d == 0:
        if not u.magnitude_lt_one():
            raise DivergenceError(
                f"coordinate with no t-weight needs |u| < 1, got |u| = q^{u.exp}")
        uc = u.to_cyclo()
        value = (uc ** k) * ((CycloRational.one() - uc).inverse() ** (k + 1))
        return FactoredRatFun.constant(q, value)
    num = Poly.constant((u ** k).to_cyclo())
    return FactoredRatFun(q, d * k, num, [DenomFactor(u, d, k + 1)])


def zeta_lattice(phi: LatticeFunction, d: tuple[int, ...]) -> FactoredRatFun:
    """The lattice sum of phi weighted by t^(d.x), as a factored rational function."""
    _check_dims(phi, d)
    report = check_summability(phi, d)
    if not report.ok:
        detail = ", ".join(f"term {t} coordinate {c}" for t, c in report.violations)
        raise DivergenceError(
            f"non-summable coordinates with |u| >= 1 and d = 0: {detail}",
            violations=list(report.violations),
        )
    if not phi.terms:
        raise ValueError("lattice function has no terms; q is undetermined")
    q = phi.terms[0].coords[0][1].q if phi.terms[0].coords else None
    if q is None:
        raise ValueError("zero-dimensional lattice functions are not supported")
    out = FactoredRatFun.zero(q)
    for term in phi.terms:
        piece = FactoredRatFun.one(q)
        for (k, u), di in zip(term.coords, d):
            piece = piece * sum_binom_geom(k, u, di)
        out = out + piece.scale(term.coeff)
    return out.normalize()


def convergence_abscissa(phi: LatticeFunction, d: tuple[int, ...]) -> Fraction | None:
    """Least sigma with absolute convergence for Re(s) > sigma; None means -infinity.

    A coordinate with t-degree d_i > 0 and base magnitude q^{a_i} converges
    exactly when q^{a_i - Re(s) d_i} < 1, i.e. Re(s) > a_i / d_i.
    """
    _check_dims(phi, d)
    report = check_summability(phi, d)
    if not report.ok:
        raise DivergenceError("abscissa undefined for non-summable input",
                              violations=list(report.violations))
    best: Fraction | None = None
    for term in phi.terms:
        for (_, u), di in zip(term.coords, d):
            if di > 0:
                sigma = Fraction(u.exp, di)
                if best is None or sigma > best:
                    best = sigma
    return best


# ---------------------------------------------------------------------------
# monomial input: change of basis x^p = sum_j S(p, j) j! C(x, j)
# ---------------------------------------------------------------------------


def _stirling2_row(p: int) -> list[int]:
    row = [1] + [0] * p  # S(0, j)
    for m in range(1, p + 1):
        new = [0] * (p + 1)
        for j in range(1, m + 1):
            new[j] = row[j - 1] + j * row[j]
        row = new
    return row


def binomial_basis_coeffs(p: int) -> list[tuple[int, int]]:
    """Pairs (j, c) with x^p = sum_j c * C(x, j)."""
    row = _stirling2_row(p)
    return [(j, row[j] * math.factorial(j)) for j in range(p + 1) if row[j]]


def lattice_from_monomial(coeff, powers: tuple[int, ...],
                          bases: tuple[UnitScalar, ...]) -> LatticeFunction:
    """Build c * prod x_i^{p_i} u_i^{x_i} in the binomial basis."""
    if len(powers) != len(bases):
        raise ValueError("powers and bases must have equal length")
    coeff = to_cyclo(coeff)
    expansions = [binomial_basis_coeffs(p) for p in powers]
    terms = []

    def rec(i: int, acc_coords: list[tuple[int, UnitScalar]], acc_scale: int):
        if i == len(powers):
            terms.append(LatticeTerm(coeff * acc_scale, tuple(acc_coords)))
            return
        for j, c in expansions[i]:
            rec(i + 1, acc_coords + [(j, bases[i])], acc_scale * c)

    rec(0, [], 1)
    return LatticeFunction(len(powers), tuple(terms))
