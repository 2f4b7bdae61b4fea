"""Ext groups over the group algebra of Z^n via Koszul complexes.

A finite-dimensional representation of Z^n is a tuple of commuting invertible
matrices.  Ext from a character chi to such a module is the cohomology of the
exterior-algebra complex built from the commuting operators

    A_j = chi(e_j)^(-1) * gens[j] - 1,

computed by exact rank computation (fraction-free Bareiss elimination over
the scalar field; no numerical ranks anywhere).

The same module of translation calculus also decides generalized invariance
of functions on integer boxes: a function is killed by every (k+1)-fold
product of forward differences exactly when it is a polynomial of total
degree at most k.  Both tests (difference annihilation and Newton
interpolation from the corner) are implemented and must agree.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import BoxTooSmallError, ZetaError
from .scalars import CycloRational, UnitScalar, to_cyclo

Matrix = tuple[tuple[CycloRational, ...], ...]


# -- exact matrix helpers ------------------------------------------------------


def matrix(rows) -> Matrix:
    return tuple(tuple(to_cyclo(c) for c in row) for row in rows)


def mat_identity(n: int) -> Matrix:
    return tuple(
        tuple(CycloRational.one() if i == j else CycloRational.zero()
              for j in range(n))
        for i in range(n)
    )


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    rows = len(a)
    inner = len(b)
    cols = len(b[0]) if inner else 0
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = CycloRational.zero()
            for k in range(inner):
                if not a[i][k].is_zero():
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Matrix, c) -> Matrix:
    c = to_cyclo(c)
    return tuple(tuple(x * c for x in row) for row in a)


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return all((x - y).is_zero() for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_rank(m: Matrix) -> int:
    """Exact rank by fraction-free Bareiss elimination with pivot search."""
    if not m or not m[0]:
        return 0
    work = [list(row) for row in m]
    rows, cols = len(work), len(work[0])
    rank = 0
    prev = CycloRational.one()
    r = 0
    for c in range(cols):
        pivot_row = next((i for i in range(r, rows) if not work[i][c].is_zero()), None)
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        pivot = work[r][c]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                # Bareiss update: divisions are exact in any integral domain
                work[i][j] = (pivot * work[i][j] - work[i][c] * work[r][j]) / prev
            work[i][c] = CycloRational.zero()
        prev = pivot
        rank += 1
        r += 1
        if r == rows:
            break
    return rank


# -- modules and Koszul cohomology ----------------------------------------------


@dataclass(frozen=True)
class LambdaModule:
    """A finite-dimensional representation of Z^n: commuting invertible generators."""

    n: int
    dim: int
    gens: tuple[Matrix, ...]

    def __post_init__(self):
        if len(self.gens) != self.n:
            raise ValueError("need one generator matrix per lattice rank")
        gens = tuple(matrix(g) for g in self.gens)
        object.__setattr__(self, "gens", gens)
        for g in gens:
            if len(g) != self.dim or any(len(row) != self.dim for row in g):
                raise ValueError("generator matrices must be square of the module dimension")
            if mat_rank(g) != self.dim:
                raise ValueError("generators must be invertible")
        for a, b in combinations(gens, 2):
            if not mat_eq(mat_mul(a, b), mat_mul(b, a)):
                raise ValueError("generators must pairwise commute")

    @staticmethod
    def trivial(n: int) -> "LambdaModule":
        return LambdaModule(n, 1, tuple(mat_identity(1) for _ in range(n)))


@dataclass(frozen=True)
class ExtProfile:
    dims: tuple[int, ...]

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * d for i, d in enumerate(self.dims))

    def total(self) -> int:
        return sum(self.dims)


def koszul_ext_dims(chi: tuple[UnitScalar, ...], module: LambdaModule) -> ExtProfile:
    """Cohomology dimensions of the Koszul complex of A_j = chi_j^(-1) gens_j - 1."""
    n, dim = module.n, module.dim
    if len(chi) != n:
        raise ValueError("need one character value per generator")
    ident = mat_identity(dim)
    ops = [
        mat_add(mat_scale(module.gens[j], chi[j].inverse().to_cyclo()),
                mat_scale(ident, -1))
        for j in range(n)
    ]

    bases = [list(combinations(range(n), i)) for i in range(n + 1)]
    index_of = [{s: k for k, s in enumerate(level)} for level in bases]

    def differential(i: int) -> Matrix:
        """Matrix of d: level i -> level i+1 acting on subsets tensor module."""
        src, dst = bases[i], bases[i + 1]
        rows = len(dst) * dim
        cols = len(src) * dim
        out = [[CycloRational.zero() for _ in range(cols)] for _ in range(rows)]
        for s_idx, s in enumerate(src):
            sset = set(s)
            for j in range(n):
                if j in sset:
                    continue
                target = tuple(sorted(sset | {j}))
                sign = (-1) ** sum(1 for x in s if x < j)
                t_idx = index_of[i + 1][target]
                op = ops[j]
                for a in range(dim):
                    for b in range(dim):
                        if not op[a][b].is_zero():
                            out[t_idx * dim + a][s_idx * dim + b] = \
                                out[t_idx * dim + a][s_idx * dim + b] + op[a][b] * sign
        return tuple(tuple(row) for row in out)

    ranks = [mat_rank(differential(i)) for i in range(n)]
    dims = []
    for i in range(n + 1):
        size = math.comb(n, i) * dim
        below = ranks[i - 1] if i >= 1 else 0
        above = ranks[i] if i < n else 0
        dims.append(size - below - above)
    profile = ExtProfile(tuple(dims))
    assert all(0 <= d <= math.comb(n, i) * dim for i, d in enumerate(profile.dims))
    return profile


# -- randomized dichotomy scan ------------------------------------------------------


def _trial_seed(master: int, index: int) -> int:
    digest = hashlib.sha256(f"{master}:{index}".encode("ascii")).digest()
    return int.from_bytes(digest[:8], "big")


def _random_unipotent_family(rng: random.Random, n: int, dim: int) -> tuple[Matrix, ...]:
    """Commuting unipotent matrices: identity plus polynomials in one nilpotent."""
    nil = [[Fraction(0)] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i + 1, dim):
            nil[i][j] = Fraction(rng.randint(-2, 2))
    nil_m = matrix(nil)
    powers = [mat_identity(dim), nil_m]
    for _ in range(2, dim):
        powers.append(mat_mul(powers[-1], nil_m))
    gens = []
    for _ in range(n):
        g = mat_identity(dim)
        for p in range(1, dim):
            c = rng.randint(-2, 2)
            if c:
                g = mat_add(g, mat_scale(powers[p], c))
        gens.append(g)
    return tuple(gens)


@dataclass(frozen=True)
class ScanTrial:
    seed: int
    dim: int
    equal_characters: bool
    profile: ExtProfile

    @property
    def ok(self) -> bool:
        if self.equal_characters:
            return self.profile.dims[0] >= 1
        return self.profile.total() == 0


@dataclass(frozen=True)
class ScanReport:
    n: int
    trials: tuple[ScanTrial, ...]

    @property
    def counterexamples(self) -> tuple[ScanTrial, ...]:
        return tuple(t for t in self.trials if not t.ok)

    @property
    def passed(self) -> bool:
        return not self.counterexamples


def vanishing_dichotomy_scan(n: int, trials: int, seed: int, *, q: int = 2,
                             max_dim: int = 5) -> ScanReport:
    """Random unipotent modules twisted by characters: Ext vanishes iff the
    characters differ, and Hom is nonzero when they agree."""
    if trials < 1:
        raise ValueError("need at least one trial")
    results = []
    for idx in range(trials):
        tseed = _trial_seed(seed, idx)
        rng = random.Random(tseed)
        dim = rng.randint(1, max_dim)
        unipotent = _random_unipotent_family(rng, n, dim)

        def rand_char() -> tuple[UnitScalar, ...]:
            return tuple(
                UnitScalar(q, 2, rng.randint(0, 1), rng.randint(-2, 2))
                for _ in range(n)
            )

        chi2 = rand_char()
        force_equal = rng.random() < 0.5
        chi1 = chi2 if force_equal else rand_char()
        equal = all(a == b for a, b in zip(chi1, chi2))
        gens = tuple(mat_scale(g, c.to_cyclo()) for g, c in zip(unipotent, chi2))
        module = LambdaModule(n, dim, gens)
        profile = koszul_ext_dims(chi1, module)
        results.append(ScanTrial(tseed, dim, equal, profile))
    return ScanReport(n, tuple(results))


# -- generalized invariance on boxes ---------------------------------------------


def _table_to_dict(table) -> tuple[dict[tuple[int, ...], CycloRational], tuple[int, ...]]:
    """Flatten a nested-list table into point -> value; returns box sides B_i."""

    def shape(t):
        if isinstance(t, (list, tuple)):
            if not t:
                raise ValueError("empty table axis")
            sub = shape(t[0])
            for other in t[1:]:
                if shape(other) != sub:
                    raise ValueError("ragged table")
            return (len(t),) + sub
        return ()

    dims = shape(table)
    if not dims:
        raise ValueError("table must be a nested list")
    values: dict[tuple[int, ...], CycloRational] = {}

    def walk(t, prefix):
        if len(prefix) == len(dims):
            values[prefix] = to_cyclo(t)
            return
        for i, sub in enumerate(t):
            walk(sub, prefix + (i,))

    walk(table, ())
    box = tuple(d - 1 for d in dims)
    return values, box


def _forward_difference(values, box, axis):
    out = {}
    new_box = list(box)
    new_box[axis] -= 1
    for pt, v in values.items():
        if pt[axis] + 1 <= box[axis]:
            nxt = pt[:axis] + (pt[axis] + 1,) + pt[axis + 1:]
            out[pt] = values[nxt] - v
    return out, tuple(new_box)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def _difference_test(values, box, k: int) -> bool:
    n = len(box)
    for alpha in _compositions(k + 1, n):
        cur, cur_box = values, box
        for axis, times in enumerate(alpha):
            for _ in range(times):
                cur, cur_box = _forward_difference(cur, cur_box, axis)
        if any(not v.is_zero() for v in cur.values()):
            return False
    return True


def _newton_test(values, box, k: int) -> bool:
    n = len(box)
    # corner mixed differences Delta^beta f(0) for all |beta| <= k
    coeffs = {}
    for total in range(k + 1):
        for beta in _compositions(total, n):
            cur, cur_box = values, box
            for axis, times in enumerate(beta):
                for _ in range(times):
                    cur, cur_box = _forward_difference(cur, cur_box, axis)
            coeffs[beta] = cur[tuple(0 for _ in range(n))]

    def interpolant(pt):
        acc = CycloRational.zero()
        for beta, c in coeffs.items():
            if c.is_zero():
                continue
            w = 1
            for b, x in zip(beta, pt):
                w *= math.comb(x, b)
            if w:
                acc = acc + c * w
        return acc

    return all((interpolant(pt) - v).is_zero() for pt, v in values.items())


def finite_order_invariance_detail(table, k: int) -> tuple[bool, bool]:
    """Run both the difference-annihilation and Newton-interpolation tests."""
    if k < 0:
        raise ValueError("order must be non-negative")
    values, box = _table_to_dict(table)
    if any(b < k + 1 for b in box):
        raise BoxTooSmallError(
            f"box sides {box} too small for order {k}: need at least {k + 1} each")
    return _difference_test(values, box, k), _newton_test(values, box, k)


def finite_order_invariance_check(table, k: int) -> bool:
    """True iff the table is a polynomial of total degree <= k on its box.

    Decided twice, by (k+1)-fold difference annihilation and by comparing
    against the Newton interpolant of the corner data; a disagreement would
    indicate a defect in this module and raises.
    """
    diff_ok, newton_ok = finite_order_invariance_detail(table, k)
    if diff_ok != newton_ok:
        raise ZetaError(
            f"internal disagreement: differences say {diff_ok}, interpolation says {newton_ok}")
    return diff_ok
