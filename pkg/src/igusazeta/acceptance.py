"""The acceptance suite: every exit criterion as an executable check.

Each criterion returns a CriterionResult with a one-line pass/fail summary;
``run_all`` executes them in order.  All comparisons are exact rational
equalities (zero tolerance).  The random criteria use fixed seeds and
documented generation procedures, so reruns are bit-for-bit reproducible.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .cells import OrderMonomial, RectilinearCell, SimpleMeasure, zeta_cell
from .characters import CharacterPair, KCharacter
from .families import (DEFAULT_TEST_CLASS, GroupElementAction, TestFunction,
                       action_recurrence_check, invariance_order_check,
                       laurent_table, zeta_family_build)
from .koszul import (LambdaModule, finite_order_invariance_detail,
                     koszul_ext_dims, vanishing_dichotomy_scan)
from .lattice import (LatticeFunction, LatticeTerm, check_summability,
                      zeta_lattice)
from .oracle import det_zeta_series_check, truncated_sum_coefficients
from .orbits import classify_distribution_space, orbit_admissible
from .poly import Poly
from .ratfun import DenomFactor, FactoredRatFun
from .scalars import CycloRational, UnitScalar


@dataclass
class CriterionResult:
    index: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} criterion {self.index}: {self.name} ({self.seconds:.2f}s) {self.detail}"


def _timed(index: int, name: str, body) -> CriterionResult:
    start = time.perf_counter()
    try:
        passed, detail = body()
    except Exception as exc:  # a crash is a failure, not an excuse
        return CriterionResult(index, name, False,
                               f"raised {type(exc).__name__}: {exc}",
                               time.perf_counter() - start)
    return CriterionResult(index, name, passed, detail, time.perf_counter() - start)


# -- criterion 1: unit-interval zeta and its simple pole --------------------------


def criterion_tate_pole() -> CriterionResult:
    def body():
        q = 2
        mu = SimpleMeasure(RectilinearCell(1, 1), LatticeFunction.one(1, q))
        z = zeta_cell(mu, OrderMonomial(0, (1,)))
        expected = FactoredRatFun(
            q, 0, Poly.constant(Fraction(1, 2)),
            [DenomFactor(UnitScalar.q_power(q, -1), 1, 1)])
        if z != expected:
            return False, f"integral came out as {z.render()}"
        order = z.normalize().pole_order(UnitScalar.q_power(q, -1))
        if order != 1:
            return False, f"pole order at t = q is {order}, expected 1"
        return True, "integral equals (1 - 1/q)/(1 - t/q) with a simple pole"

    return _timed(1, "unit-interval zeta has a simple pole", body)


# -- criterion 2: determinant zeta vs enumeration -----------------------------------


DET_CASES = (
    (1, 2, 6), (1, 3, 6), (1, 5, 6),
    (2, 2, 4), (2, 3, 3),
    (3, 2, 2),
)


def criterion_det_zeta() -> CriterionResult:
    def body():
        sizes = []
        for n, p, k in DET_CASES:
            report = det_zeta_series_check(n, p, k)
            sizes.append(p ** (n * n * k))
            if not report.passed:
                bad = [e for e in report.entries if not e.ok]
                return False, (f"(n={n}, p={p}, k={k}) mismatch at j={bad[0].j}: "
                               f"{bad[0].enumerated} vs {bad[0].predicted}")
        return True, f"{len(DET_CASES)} cases exact; largest enumeration {max(sizes)} matrices"

    return _timed(2, "determinant zeta equals the enumeration histogram", body)


# -- criterion 3: random lattice sums against direct summation -------------------------


def _random_lattice_case(rng: random.Random):
    q = rng.choice((2, 3))
    n = rng.randint(1, 3)
    d = tuple(rng.randint(0, 3) for _ in range(n))
    terms = []
    for _ in range(rng.randint(1, 3)):
        budget = 3
        coords = []
        for i in range(n):
            k = rng.randint(0, budget)
            budget -= k
            if d[i] == 0:
                a = rng.randint(-3, -1)  # summability requires |u| < 1 here
            else:
                a = rng.randint(-3, 2)
            coords.append((k, UnitScalar.q_power(q, a)))
        num = rng.randint(-4, 4) or 1
        den = rng.randint(1, 4)
        terms.append(LatticeTerm(CycloRational.from_rational(Fraction(num, den)),
                                 tuple(coords)))
    return LatticeFunction(n, tuple(terms)), d


def criterion_lattice_oracle(trials: int = 50, seed: int = 2024, max_j: int = 30) -> CriterionResult:
    def body():
        rng = random.Random(seed)
        for trial in range(trials):
            phi, d = _random_lattice_case(rng)
            assert check_summability(phi, d).ok
            symbolic = zeta_lattice(phi, d).series_coeffs(max_j)
            direct = truncated_sum_coefficients(phi, d, max_j)
            for j, (a, b) in enumerate(zip(symbolic, direct)):
                if not (a - b).is_zero():
                    return False, f"trial {trial}: coefficient of t^{j} differs"
            bound = phi.dim + phi.order
            z = zeta_lattice(phi, d)
            if any(f.e > bound for f in z.denom):
                return False, f"trial {trial}: pole multiplicity exceeds {bound}"
        return True, f"{trials} random lattice sums match to t^{max_j}, multiplicities within bound"

    return _timed(3, "lattice sums agree with direct summation", body)


# -- criterion 4: pole of the twisted determinant zeta -----------------------------------


def criterion_pole_classification() -> CriterionResult:
    def body():
        checks = 0
        for n in (1, 2, 3):
            for q in (2, 3):
                for r in range(-1, n + 1):
                    family = zeta_family_build(n, r, q)
                    one = UnitScalar.one(q)
                    order = family.base.normalize().pole_order(one)
                    expect_pole = 1 if 0 <= r <= n - 1 else 0
                    if order != expect_pole:
                        return False, f"(n={n}, q={q}, r={r}): pole order {order}"
                    residue = laurent_table(family, TestFunction.dilate(0), one, 0).coeff(-1)
                    if expect_pole and residue.is_zero():
                        return False, f"(n={n}, q={q}, r={r}): vanishing residue"
                    if not expect_pole and not residue.is_zero():
                        return False, f"(n={n}, q={q}, r={r}): unexpected residue {residue}"
                    checks += 1
        return True, f"{checks} (n, q, r) combinations classified exactly"

    return _timed(4, "pole of the twisted determinant zeta iff 0 <= r <= n-1", body)


# -- criterion 5: index-shift recurrence and invariance order ------------------------------


def criterion_action_recurrence() -> CriterionResult:
    def body():
        for n in (1, 2):
            for q in (2, 3):
                one = UnitScalar.one(q)
                g = GroupElementAction(1, CycloRational.one())
                for r in range(0, n + 1):
                    family = zeta_family_build(n, r, q)
                    report = action_recurrence_check(
                        family, g, one, DEFAULT_TEST_CLASS, range(-1, 4))
                    if not report.passed:
                        bad = next(e for e in report.entries if not e.ok)
                        return False, (f"(n={n}, q={q}, r={r}) phi={bad.phi} index {bad.index}: "
                                       f"{bad.lhs} vs {bad.rhs}")
                    floor = -family.base.normalize().pole_order(one)
                    for i in range(floor, 4):
                        j = invariance_order_check(family, one, i)
                        if j > i - floor:
                            return False, (f"(n={n}, q={q}, r={r}) index {i}: "
                                           f"order {j} exceeds bound {i - floor}")
        return True, "index shift and invariance order bound hold exactly"

    return _timed(5, "group action shifts Laurent indices by one", body)


# -- criterion 6: classification tables over a character grid --------------------------------


def _expected_classification(m: int, n: int, pair: CharacterPair) -> tuple[str, object]:
    """Independent restatement of the classification tables."""
    if m != n:
        if pair.chi1.is_trivial() and pair.chi2.is_trivial():
            return ("line", "delta_at_zero")
        if pair.chi1 == KCharacter.unramified(n) and pair.chi2 == KCharacter.unramified(-m):
            return ("line", "haar")
        return ("zero", None)
    if not pair.product().is_trivial():
        return ("zero", None)
    chi = pair.chi1
    if chi.has_trivial_finite_part() and chi.exponent.denominator == 1 \
            and 0 <= chi.exponent <= n - 1:
        return ("zeta_tower", -1)
    return ("zeta_tower", 0)


def criterion_classification_tables() -> CriterionResult:
    def body():
        characters = []
        for e in range(-5, 6):
            characters.append(KCharacter.unramified(e))
            characters.append(KCharacter.finite(2, 1, e))
        count = 0
        for m in range(1, 5):
            for n in range(1, 5):
                for chi1 in characters:
                    for chi2 in characters:
                        pair = CharacterPair(chi1, chi2)
                        rep = classify_distribution_space(m, n, pair)
                        kind, extra = _expected_classification(m, n, pair)
                        if rep.space_kind != kind:
                            return False, f"(m={m}, n={n}, {pair}): got {rep.space_kind}, want {kind}"
                        if kind == "line" and rep.generator != extra:
                            return False, f"(m={m}, n={n}, {pair}): wrong line generator"
                        if kind == "zeta_tower" and rep.tower_start != extra:
                            return False, f"(m={m}, n={n}, {pair}): tower start {rep.tower_start}"
                        if kind == "zeta_tower" and rep.invariant_dim != 1:
                            return False, f"(m={m}, n={n}, {pair}): invariant_dim"
                        if (rep.space_kind == "zero") != (not rep.admissible_orbits):
                            return False, f"(m={m}, n={n}, {pair}): admissibility inconsistency"
                        count += 1
        return True, f"{count} classifications reproduce the tables"

    return _timed(6, "classification tables over the character grid", body)


# -- criterion 7: Ext vanishing dichotomy ------------------------------------------------------


def criterion_ext_dichotomy(trials: int = 100, seed: int = 11) -> CriterionResult:
    def body():
        for n in (1, 2, 3):
            report = vanishing_dichotomy_scan(n, trials, seed)
            if not report.passed:
                t = report.counterexamples[0]
                return False, f"n={n} counterexample at trial seed {t.seed}"
            for t in report.trials:
                if t.profile.euler_characteristic() != 0:
                    return False, f"n={n}: nonzero Euler characteristic {t.profile.dims}"
            trivial = koszul_ext_dims(
                tuple(UnitScalar.one(2) for _ in range(n)), LambdaModule.trivial(n))
            if trivial.dims != tuple(math.comb(n, i) for i in range(n + 1)):
                return False, f"n={n}: trivial profile {trivial.dims}"
        return True, f"3 ranks x {trials} trials, no counterexamples, binomial trivial profiles"

    return _timed(7, "Ext vanishing dichotomy over the lattice group algebra", body)


# -- criterion 8: generalized invariance equals bounded-degree polynomials ----------------------


def _random_poly_table(rng: random.Random, n: int, k: int, box: int):
    """Table of a random polynomial of total degree <= k on [0, box]^n."""
    monomials = [alpha for alpha in iproduct(range(k + 1), repeat=n)
                 if sum(alpha) <= k]
    coeffs = {alpha: Fraction(rng.randint(-5, 5), rng.randint(1, 3))
              for alpha in monomials}

    def value(pt):
        acc = Fraction(0)
        for alpha, c in coeffs.items():
            term = c
            for x, a in zip(pt, alpha):
                term *= Fraction(x) ** a
            acc += term
        return acc

    def build(prefix):
        if len(prefix) == n:
            return value(prefix)
        return [build(prefix + (i,)) for i in range(box + 1)]

    return build(())


def _random_table(rng: random.Random, n: int, box: int):
    def build(depth):
        if depth == n:
            return Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        return [build(depth + 1) for _ in range(box + 1)]

    return build(0)


def criterion_invariance_polynomials(seed: int = 5, randoms: int = 100,
                                     polys: int = 20) -> CriterionResult:
    def body():
        rng = random.Random(seed)
        agreements = 0
        for n in (1, 2):
            for k in range(0, 4):
                box = k + 2
                for _ in range(randoms):
                    table = _random_table(rng, n, box)
                    diff_ok, newton_ok = finite_order_invariance_detail(table, k)
                    if diff_ok != newton_ok:
                        return False, f"disagreement on a random table (n={n}, k={k})"
                    agreements += 1
                for _ in range(polys):
                    table = _random_poly_table(rng, n, k, box)
                    diff_ok, newton_ok = finite_order_invariance_detail(table, k)
                    if diff_ok != newton_ok:
                        return False, f"disagreement on a polynomial table (n={n}, k={k})"
                    if not diff_ok:
                        return False, f"degree <= {k} polynomial rejected (n={n})"
                    agreements += 1
        return True, f"{agreements} tables, difference and interpolation tests agree"

    return _timed(8, "generalized invariance = bounded-degree polynomials", body)


ALL_CRITERIA = (
    criterion_tate_pole,
    criterion_det_zeta,
    criterion_lattice_oracle,
    criterion_pole_classification,
    criterion_action_recurrence,
    criterion_classification_tables,
    criterion_ext_dichotomy,
    criterion_invariance_polynomials,
)


def run_all() -> list[CriterionResult]:
    return [fn() for fn in ALL_CRITERIA]
