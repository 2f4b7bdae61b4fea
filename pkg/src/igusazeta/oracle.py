"""Brute-force ground truth over finite residue rings.

Two independent certification tools live here:

* exhaustive (or sampled) histograms of matrices over Z/p^k stratified by the
  valuation of the determinant, with a JSON cache;
* direct truncated evaluation of lattice sums, both coefficient-by-coefficient
  and at integer sample points with an exact geometric tail bound.

These are deliberately low-tech: the histogram is a raw odometer enumeration,
and the coefficient sums touch every lattice point with a positive t-weight.
Their only job is to disagree loudly when the symbolic pipeline is wrong.
"""

from __future__ import annotations

import json
import math
import os
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .errors import BudgetError, DivergenceError, DomainError
from .lattice import LatticeFunction, check_summability, convergence_abscissa
from .poly import Poly
from .ratfun import DenomFactor, FactoredRatFun
from .scalars import CycloRational, UnitScalar

CACHE_FORMAT_VERSION = 1
DEFAULT_BUDGET = 2 ** 30


@dataclass(frozen=True)
class ValHistogram:
    """Counts of n x n matrices over Z/p^k by determinant valuation.

    ``counts[j]`` is the number of matrices with val(det) = j for j < k; all
    matrices with det divisible by p^k land in ``n_geq_k`` (their valuation is
    not determined at level k).  ``total`` is p^(n^2 k).  In sampled mode the
    counts are tallies out of ``sample_size`` trials instead.
    """

    n: int
    p: int
    k: int
    counts: tuple[int, ...]
    n_geq_k: int
    total: int
    mode: str = "exhaustive"
    seed: int | None = None
    sample_size: int | None = None

    def __post_init__(self):
        if len(self.counts) != self.k:
            raise ValueError("need one count per valuation 0..k-1")
        ssum = sum(self.counts) + self.n_geq_k
        if self.mode == "exhaustive":
            if ssum != self.total:
                raise ValueError("counts must add up to the total")
        elif self.mode == "sampled":
            if self.sample_size is None or ssum != self.sample_size:
                raise ValueError("sample tallies must add up to the sample size")
        else:
            raise ValueError(f"unknown mode {self.mode!r}")

    @property
    def denominator(self) -> int:
        return self.total if self.mode == "exhaustive" else self.sample_size

    def mass(self, j: int) -> Fraction:
        """Measure (or sampled frequency) of the valuation-j stratum."""
        return Fraction(self.counts[j], self.denominator)


def _det_int(entries: tuple[int, ...], n: int) -> int:
    if n == 1:
        return entries[0]
    if n == 2:
        a, b, c, d = entries
        return a * d - b * c
    if n == 3:
        a, b, c, d, e, f, g, h, i = entries
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    # general fallback: cofactor expansion along the first row
    det = 0
    sign = 1
    for col in range(n):
        minor = tuple(
            entries[r * n + cc]
            for r in range(1, n)
            for cc in range(n)
            if cc != col
        )
        det += sign * entries[col] * _det_int(minor, n - 1)
        sign = -sign
    return det


def _val_bucket(det: int, p: int, k: int, modulus: int) -> int:
    """Valuation of det reduced mod p^(k+n); k means 'at least k'."""
    det %= modulus
    if det == 0:
        return k
    v = 0
    while det % p == 0:
        det //= p
        v += 1
        if v >= k:
            return k
    return min(v, k)


def enumerate_shard(n: int, p: int, k: int, lead_values: tuple[int, ...]) -> list[int]:
    """Histogram of one shard: matrices whose leading entries equal lead_values.

    Returns k + 1 buckets, the last one for valuation >= k.  The enumeration
    order is the row-major odometer over the remaining entries.
    """
    ring = p ** k
    modulus = p ** (k + n)
    buckets = [0] * (k + 1)
    rest = n * n - len(lead_values)
    for tail in iproduct(range(ring), repeat=rest):
        det = _det_int(lead_values + tail, n)
        buckets[_val_bucket(det, p, k, modulus)] += 1
    return buckets


def merge_shards(shards: list[list[int]]) -> list[int]:
    out = [0] * len(shards[0])
    for s in shards:
        for i, c in enumerate(s):
            out[i] += c
    return out


def det_valuation_histogram(n: int, p: int, k: int, mode: str = "exhaustive", *,
                            seed: int | None = None, trials: int | None = None,
                            budget: int = DEFAULT_BUDGET,
                            cache_dir: str | None = None) -> ValHistogram:
    """Count (or sample) matrices over Z/p^k by determinant valuation."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    if p < 2 or any(p % d == 0 for d in range(2, int(math.isqrt(p)) + 1)):
        raise ValueError("p must be prime")
    total = p ** (n * n * k)

    if cache_dir is not None:
        cached = _cache_load(cache_dir, n, p, k, mode, seed, trials)
        if cached is not None:
            return cached

    if mode == "exhaustive":
        if total > budget:
            raise BudgetError(
                f"exhaustive enumeration needs {total} matrices > budget {budget}; "
                "use sampled mode")
        ring = p ** k
        # shard on the first entry; merge order does not affect the counts
        shards = [enumerate_shard(n, p, k, (lead,)) for lead in range(ring)]
        buckets = merge_shards(shards)
        hist = ValHistogram(n, p, k, tuple(buckets[:k]), buckets[k], total)
    elif mode == "sampled":
        if seed is None or trials is None or trials < 1:
            raise ValueError("sampled mode needs a seed and a positive trial count")
        rng = random.Random(seed)
        ring = p ** k
        modulus = p ** (k + n)
        buckets = [0] * (k + 1)
        cells = n * n
        for _ in range(trials):
            entries = tuple(rng.randrange(ring) for _ in range(cells))
            buckets[_val_bucket(_det_int(entries, n), p, k, modulus)] += 1
        hist = ValHistogram(n, p, k, tuple(buckets[:k]), buckets[k], total,
                            mode="sampled", seed=seed, sample_size=trials)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    if cache_dir is not None:
        _cache_store(cache_dir, hist)
    return hist


# -- cache -------------------------------------------------------------------


def _cache_path(cache_dir: str, n: int, p: int, k: int, mode: str,
                seed: int | None, trials: int | None) -> str:
    tag = f"n{n}_p{p}_k{k}_{mode}"
    if mode == "sampled":
        tag += f"_s{seed}_t{trials}"
    return os.path.join(cache_dir, f"dethist_v{CACHE_FORMAT_VERSION}_{tag}.json")


def histogram_to_json(hist: ValHistogram) -> str:
    doc = {
        "format_version": CACHE_FORMAT_VERSION,
        "n": hist.n,
        "p": hist.p,
        "k": hist.k,
        "mode": hist.mode,
        "counts": [str(c) for c in hist.counts],
        "n_geq_k": str(hist.n_geq_k),
        "total": str(hist.total),
    }
    if hist.mode == "sampled":
        doc["seed"] = hist.seed
        doc["sample_size"] = hist.sample_size
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))

def histogram_from_json(text: str) -> ValHistogram:
    doc = json.loads(text)
    if doc.get("format_version") != CACHE_FORMAT_VERSION:
        raise ValueError("cache format version mismatch")
    return ValHistogram(
        n=doc["n"], p=doc["p"], k=doc["k"],
        counts=tuple(int(c) for c in doc["counts"]),
        n_geq_k=int(doc["n_geq_k"]), total=int(doc["total"]),
        mode=doc["mode"], seed=doc.get("seed"),
        sample_size=doc.get("sample_size"),
    )


def _cache_load(cache_dir, n, p, k, mode, seed, trials) -> ValHistogram | None:
    path = _cache_path(cache_dir, n, p, k, mode, seed, trials)
    if not os.path.exists(path):
        return None
    with open(path, "r", encoding="ascii") as fh:
        try:
            return histogram_from_json(fh.read())
        except ValueError:
            return None  # stale format: force recomputation


def _cache_store(cache_dir: str, hist: ValHistogram) -> None:
    os.makedirs(cache_dir, exist_ok=True)
    path = _cache_path(cache_dir, hist.n, hist.p, hist.k, hist.mode,
                       hist.seed, hist.sample_size)
    with open(path, "w", encoding="ascii") as fh:
        fh.write(histogram_to_json(hist))


# -- determinant zeta cross-check ---------------------------------------------


def det_zeta_product(n: int, q: int) -> FactoredRatFun:
    """prod_{i=1..n} (1 - q^-i) / (1 - q^-i t), the integral-matrix determinant zeta."""
    const = CycloRational.one()
    denom = []
    for i in range(1, n + 1):
        const = const * (CycloRational.one() - Fraction(1, q ** i))
        denom.append(DenomFactor(UnitScalar.q_power(q, -i), 1, 1))
    return FactoredRatFun(q, 0, Poly.constant(const), denom)


@dataclass(frozen=True)
class DetZetaEntry:
    j: int
    enumerated: Fraction
    predicted: Fraction

    @property
    def ok(self) -> bool:
        return self.enumerated == self.predicted


@dataclass(frozen=True)
class DetZetaReport:
    n: int
    p: int
    k: int
    entries: tuple[DetZetaEntry, ...]

    @property
    def passed(self) -> bool:
        return all(e.ok for e in self.entries)


def det_zeta_series_check(n: int, p: int, k: int, *,
                          hist: ValHistogram | None = None,
                          budget: int = DEFAULT_BUDGET,
                          cache_dir: str | None = None) -> DetZetaReport:
    """Compare enumerated valuation masses with the product-formula series.

    Both sides are computed independently: the left from raw counting, the
    right from the factored rational function expanded at t = 0.  Any mismatch
    is reported with both exact values.
    """
    if hist is None:
        hist = det_valuation_histogram(n, p, k, budget=budget, cache_dir=cache_dir)
    if hist.mode != "exhaustive":
        raise ValueError("the series check certifies only exhaustive histograms")
    series = det_zeta_product(n, p).series_coeffs(k - 1)
    entries = tuple(
        DetZetaEntry(j, hist.mass(j), series[j].as_fraction())
        for j in range(k)
    )
    return DetZetaReport(n, p, k, entries)


# -- direct lattice summation ---------------------------------------------------


def _closed_binom_sum(k: int, u: UnitScalar) -> CycloRational:
    """sum over x of C(x, k) u^x for |u| < 1 via the Pascal recurrence.

    Built up from the geometric base case through
    S_k (1 - u) = [k = 0] + u S_{k-1}; no finite enumeration exists for these
    directions, so this is as independent as the closed form can get.
    """
    if not u.magnitude_lt_one():
        raise DivergenceError("closed binomial sum needs |u| < 1")
    uc = u.to_cyclo()
    inv = (CycloRational.one() - uc).inverse()
    s = inv  # k = 0: geometric series
    for _ in range(k):
        s = uc * s * inv
    return s


def truncated_sum_coefficients(phi: LatticeFunction, d: tuple[int, ...],
                               max_j: int) -> list[CycloRational]:
    """Exact coefficients of t^0..t^max_j of the lattice sum, by enumeration.

    Lattice points are enumerated directly over the coordinates with positive
    t-degree (finitely many per coefficient); coordinates with d_i = 0 are
    summed in closed form per term.
    """
    report = check_summability(phi, d)
    if not report.ok:
        raise DivergenceError("non-summable input", violations=list(report.violations))
    free = [i for i, di in enumerate(d) if di > 0]
    out = [CycloRational.zero() for _ in range(max_j + 1)]
    for term in phi.terms:
        fixed = CycloRational.one()
        for i, (k, u) in enumerate(term.coords):
            if d[i] == 0:
                fixed = fixed * _closed_binom_sum(k, u)

        def rec(pos: int, weight: int, acc: CycloRational):
            if pos == len(free):
                out[weight] = out[weight] + acc * fixed
                return
            i = free[pos]
            k, u = term.coords[i]
            x = 0
            while weight + d[i] * x <= max_j:
                b = math.comb(x, k)  # zero for x < k: those points contribute nothing
                if b:
                    rec(pos + 1, weight + d[i] * x, acc * ((u ** x).to_cyclo() * b))
                x += 1

        rec(0, 0, term.coeff)
    return out


@dataclass(frozen=True)
class PartialSum:
    value: CycloRational
    tail_bound: Fraction
    box: int


def truncated_sum_at_point(phi: LatticeFunction, d: tuple[int, ...], s0: int,
                           tol: Fraction = Fraction(1, 10 ** 12)) -> PartialSum:
    """Partial sum at the exact point t = q^(-s0) with a certified tail bound.

    The box side B grows until the geometric tail estimate drops below tol.
    Requires s0 strictly above the convergence abscissa.
    """
    sigma = convergence_abscissa(phi, d)
    if sigma is not None and not s0 > sigma:
        raise DivergenceError(f"sample point s0 = {s0} is not above the abscissa {sigma}")
    if not phi.terms:
        return PartialSum(CycloRational.zero(), Fraction(0), 0)
    q = phi.terms[0].coords[0][1].q

    def rho(u: UnitScalar, di: int) -> Fraction:
        e = u.exp - s0 * di
        return Fraction(q) ** e

    B = 4
    while True:
        bound = Fraction(0)
        feasible = True
        for term in phi.terms:
            rhos = [rho(u, di) for (k, u), di in zip(term.coords, d)]
            ks = [k for k, _ in term.coords]
            # full-sum magnitude bound per coordinate
            fulls = [r ** k / (1 - r) ** (k + 1) for r, k in zip(rhos, ks)]
            cbound = term.coeff.abs_bound()
            for i, (r, k) in enumerate(zip(rhos, ks)):
                g = Fraction(B + 2, B + 2 - k) if B + 2 > k else None
                if g is None or g * r >= 1:
                    feasible = False
                    break
                tail_i = Fraction(math.comb(B + 1, k)) * r ** (B + 1) / (1 - g * r)
                rest = Fraction(1)
                for j, f in enumerate(fulls):
                    if j != i:
                        rest *= f
                bound += cbound * tail_i * rest
            if not feasible:
                break
        if feasible and bound <= tol:
            break
        B *= 2
        if B > 1 << 20:
            raise DomainError("tail bound does not certify at a reasonable box size")

    t0 = Fraction(1, q ** s0) if s0 >= 0 else Fraction(q ** (-s0))
    value = CycloRational.zero()
    ranges = [range(B + 1)] * phi.dim
    for x in iproduct(*ranges):
        fx = phi.value_at(x)
        if not fx.is_zero():
            weight = sum(di * xi for di, xi in zip(d, x))
            value = value + fx * (t0 ** weight)
    return PartialSum(value, bound, B)
