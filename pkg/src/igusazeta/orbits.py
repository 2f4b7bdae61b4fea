"""Rank orbits of the two-sided general linear action on rectangular matrices.

The group GL_m x GL_n acts on m x n matrices by (g1, g2).x = g1 x g2^(-1);
the orbits are the rank strata r = 0..min(m, n).  The stabilizer of the rank-r
pivot matrix is block triangular with an x-block (size r), a w1-block
(size m - r) and a w2-block (size n - r), and the inverse modulus of the
stabilizer is det(x)^(n-m) det(w1)^r det(w2)^(-r) in absolute value.

An orbit carries a nonzero equivariant distribution exactly when the
character matches that modulus on every nonempty block; in solved form, for a
character pair (chi1, chi2):

* if r >= 1:  chi1 * chi2 = |.|^(n-m)
* if r < m:   chi1 = |.|^r
* if r < n:   chi2 = |.|^(-r)

The classification of the full equivariant-distribution space follows: for
m != n only the delta line at the zero matrix (trivial pair) or the Haar line
(pair (|.|^n, |.|^(-m))) survive; for m = n the space vanishes unless
chi1 * chi2 = 1, in which case it is the ladder of Laurent coefficients of
the determinant zeta family, starting at index -1 exactly when chi1 is an
unramified integer power |.|^r with 0 <= r <= n-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .characters import CharacterPair, KCharacter
from .families import zeta_family_build
from .scalars import UnitScalar


@dataclass(frozen=True)
class OrbitDatum:
    m: int
    n: int
    r: int
    codim: int
    x_exp: int | None   # exponent on det(x), present when r >= 1
    w1_exp: int | None  # exponent on det(w1), present when r < m
    w2_exp: int | None  # exponent on det(w2), present when r < n


def _check_rank(m: int, n: int, r: int) -> None:
    if m < 1 or n < 1:
        raise ValueError("matrix sides must be >= 1")
    if not 0 <= r <= min(m, n):
        raise ValueError(f"rank {r} out of range 0..{min(m, n)}")


def stabilizer_modular_data(m: int, n: int, r: int) -> OrbitDatum:
    """Block exponents of the inverse stabilizer modulus on the rank-r orbit."""
    _check_rank(m, n, r)
    return OrbitDatum(
        m=m, n=n, r=r,
        codim=(m - r) * (n - r),
        x_exp=(n - m) if r >= 1 else None,
        w1_exp=r if r < m else None,
        w2_exp=-r if r < n else None,
    )


def orbit_admissible(m: int, n: int, r: int, pair: CharacterPair) -> bool:
    """Whether the rank-r orbit carries a nonzero (chi1, chi2)-equivariant distribution."""
    _check_rank(m, n, r)
    datum = stabilizer_modular_data(m, n, r)
    if datum.x_exp is not None:
        if pair.product() != KCharacter.unramified(datum.x_exp):
            return False
    if datum.w1_exp is not None:
        if pair.chi1 != KCharacter.unramified(datum.w1_exp):
            return False
    if datum.w2_exp is not None:
        if pair.chi2 != KCharacter.unramified(datum.w2_exp):
            return False
    return True


@dataclass(frozen=True)
class ClassificationReport:
    m: int
    n: int
    pair: CharacterPair
    admissible_orbits: tuple[int, ...]
    space_kind: str                 # "zero" | "line" | "zeta_tower"
    generator: str | None = None    # for lines: "delta_at_zero" | "haar"
    tower_start: int | None = None  # for towers: least nonvanishing index
    invariant_dim: int = 0
    notes: str = ""


def classify_distribution_space(m: int, n: int, pair: CharacterPair) -> ClassificationReport:
    """Full description of the equivariant distribution space on m x n matrices."""
    if m < 1 or n < 1:
        raise ValueError("matrix sides must be >= 1")
    admissible = tuple(r for r in range(min(m, n) + 1)
                       if orbit_admissible(m, n, r, pair))
    if m != n:
        if pair.chi1.is_trivial() and pair.chi2.is_trivial():
            return ClassificationReport(
                m, n, pair, admissible, "line", generator="delta_at_zero",
                invariant_dim=1,
                notes="only the zero orbit is admissible")
        if (pair.chi1 == KCharacter.unramified(n)
                and pair.chi2 == KCharacter.unramified(-m)):
            return ClassificationReport(
                m, n, pair, admissible, "line", generator="haar",
                invariant_dim=1,
                notes="only the open orbit is admissible")
        return ClassificationReport(m, n, pair, admissible, "zero",
                                    notes="no admissible orbit")
    # square case
    if not pair.product().is_trivial():
        return ClassificationReport(m, n, pair, admissible, "zero",
                                    notes="chi1 * chi2 is nontrivial")
    chi = pair.chi1
    ladder_pole = (chi.is_unramified_integer()
                   and 0 <= chi.exponent <= n - 1)
    start = -1 if ladder_pole else 0
    return ClassificationReport(
        m, n, pair, admissible, "zeta_tower", tower_start=start,
        invariant_dim=1,
        notes="Laurent coefficients of the determinant zeta family form a basis")


@dataclass(frozen=True)
class PoleAdmissibilityEntry:
    n: int
    r_twist: int
    q: int
    pole_order: int
    lower_admissible: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return (self.pole_order == 1) == bool(self.lower_admissible) and \
            self.pole_order in (0, 1)


def cross_check_pole_vs_admissibility(n: int, r_twist: int, q: int) -> PoleAdmissibilityEntry:
    """Pole at t = 1 of the twisted determinant zeta vs lower-orbit admissibility.

    Both sides are computed from scratch: the pole order from the factored
    rational function, the admissible ranks from the block conditions; the
    two agree exactly when 0 <= r_twist <= n-1.
    """
    family = zeta_family_build(n, r_twist, q)
    po = family.base.normalize().pole_order(UnitScalar.one(q))
    chi = KCharacter.unramified(Fraction(r_twist))
    pair = CharacterPair(chi, chi.inverse())
    lower = tuple(r for r in range(n) if orbit_admissible(n, n, r, pair))
    return PoleAdmissibilityEntry(n, r_twist, q, po, lower)
