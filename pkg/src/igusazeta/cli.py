"""Command-line interface.

Subcommands:

* ``lattice-zeta``       closed form and abscissa of a lattice sum
* ``cell-zeta``          zeta integral of an order monomial over a cell
* ``laurent``            exact Laurent coefficient table of a determinant zeta family
* ``orbits classify``    equivariant-distribution classification on matrix spaces
* ``oracle det-hist``    determinant-valuation histogram over Z/p^k
* ``oracle check-det-zeta``  enumeration vs product-formula cross-check
* ``ext scan``           randomized Ext vanishing-dichotomy scan
* ``selftest``           run the full acceptance suite

Exit codes: 0 success, 2 precondition/divergence/domain errors (with a
structured error object), 64 usage errors.  The cache directory may also be
set through the environment variable IGUSAZETA_CACHE_DIR.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import acceptance
from .cells import OrderMonomial, RectilinearCell, SimpleMeasure, cell_abscissa, zeta_cell
from .characters import CharacterPair, parse_character
from .errors import ConfigError, ZetaError
from .families import TestFunction, laurent_table, zeta_family_build
from .koszul import vanishing_dichotomy_scan
from .lattice import convergence_abscissa, zeta_lattice
from .oracle import det_valuation_histogram, det_zeta_series_check, histogram_to_json
from .orbits import classify_distribution_space
from .scalars import CycloRational, UnitScalar
from .serialize import (classification_to_json, cyclo_to_json, dumps_canonical,
                        laurent_to_json, lattice_from_json, ratfun_to_json)

EXIT_OK = 0
EXIT_ERROR = 2
EXIT_USAGE = 64


@dataclass
class Config:
    q: int = 2
    p: int = 2
    level: int = 1
    budget: int = 2 ** 30
    cache_dir: str | None = None
    fmt: str = "text"

    def __post_init__(self):
        if self.q < 2:
            raise ConfigError("q must be >= 2")
        if self.budget < 0:
            raise ConfigError("budget must be >= 0")
        if self.fmt not in ("text", "json"):
            raise ConfigError(f"unknown output format {self.fmt!r}")


class _UsageParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _parse_unit(text: str, q: int, level: int) -> UnitScalar:
    """Grammar: '1', 'q^<a>', 'z^<j>', or 'z^<j>*q^<a>'."""
    text = text.strip()
    if text == "1":
        return UnitScalar.one(q)
    m = re.fullmatch(r"(?:z\^(-?\d+))?\*?(?:q\^(-?\d+))?", text)
    if not m or (m.group(1) is None and m.group(2) is None):
        raise ConfigError(f"bad unit scalar {text!r}: expected z^j*q^a")
    j = int(m.group(1) or 0)
    a = int(m.group(2) or 0)
    return UnitScalar(q, level, j, a)


def _parse_phi(text: str) -> TestFunction:
    """Grammar: 'a' or 'a:coeff,a:coeff,...' with rational coefficients."""
    pieces = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        a, sep, coeff = chunk.partition(":")
        try:
            pieces.append((int(a), CycloRational.from_rational(
                Fraction(coeff) if sep else 1)))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad test function chunk {chunk!r}") from exc
    if not pieces:
        raise ConfigError("empty test function")
    return TestFunction(tuple(pieces))


def _read_json_input(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _abscissa_doc(sigma: Fraction | None) -> str:
    return "-inf" if sigma is None else str(sigma)


def _emit(cfg: Config, text_lines: list[str], doc) -> None:
    if cfg.fmt == "json":
        print(dumps_canonical(doc))
    else:
        for line in text_lines:
            print(line)


def build_parser() -> _UsageParser:
    parser = _UsageParser(prog="igusazeta", description=__doc__,
                          formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--q", type=int, default=2, help="residue-field size (default 2)")
    parser.add_argument("--p", type=int, default=2, help="prime for enumeration oracles")
    parser.add_argument("--m", type=int, default=1, dest="level",
                        help="cyclotomic level for root-of-unity scalars")
    parser.add_argument("--budget", type=int, default=2 ** 30,
                        help="max matrices for exhaustive enumeration")
    parser.add_argument("--cache-dir", default=None,
                        help="histogram cache directory (or $IGUSAZETA_CACHE_DIR)")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command")

    lz = sub.add_parser("lattice-zeta", help="closed form of a lattice sum")
    lz.add_argument("--phi", required=True, help="JSON file with the lattice function ('-' = stdin)")
    lz.add_argument("--d", required=True, help="comma-separated exponent vector, e.g. 1,0,2")

    cz = sub.add_parser("cell-zeta", help="zeta integral over a rectilinear cell")
    cz.add_argument("--cell", required=True,
                    help="JSON file {m, n, density, f:{c, d}} ('-' = stdin)")

    la = sub.add_parser("laurent", help="Laurent coefficient table of a zeta family")
    la.add_argument("--n", type=int, required=True)
    la.add_argument("--r", type=int, required=True, help="unramified twist exponent")
    la.add_argument("--center", default="1", help="expansion center a0, e.g. '1' or 'q^-1'")
    la.add_argument("--window", type=int, default=3, help="highest Laurent index")
    la.add_argument("--phi", default="0", help="test function, e.g. '0' or '0:1,1:1/2'")

    orb = sub.add_parser("orbits", help="rank-orbit analysis on matrix spaces")
    orb_sub = orb.add_subparsers(dest="orbits_command")
    cls = orb_sub.add_parser("classify", help="classify equivariant distributions")
    cls.add_argument("--m", type=int, required=True, dest="rows")
    cls.add_argument("--n", type=int, required=True, dest="cols")
    cls.add_argument("--chi1", required=True, help="character, e.g. triv:0 or fin2^1:-1")
    cls.add_argument("--chi2", required=True)

    orc = sub.add_parser("oracle", help="brute-force enumeration oracles")
    orc_sub = orc.add_subparsers(dest="oracle_command")
    dh = orc_sub.add_parser("det-hist", help="determinant valuation histogram")
    dh.add_argument("--n", type=int, required=True)
    dh.add_argument("--k", type=int, required=True)
    dh.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    dh.add_argument("--seed", type=int, default=None)
    dh.add_argument("--trials", type=int, default=None)
    cd = orc_sub.add_parser("check-det-zeta", help="histogram vs product formula")
    cd.add_argument("--n", type=int, required=True)
    cd.add_argument("--k", type=int, required=True)

    ext = sub.add_parser("ext", help="Ext computations over the lattice group algebra")
    ext_sub = ext.add_subparsers(dest="ext_command")
    scan = ext_sub.add_parser("scan", help="vanishing dichotomy scan")
    scan.add_argument("--n", type=int, required=True)
    scan.add_argument("--trials", type=int, default=50)
    scan.add_argument("--seed", type=int, default=0)

    sub.add_parser("selftest", help="run the acceptance suite")
    return parser


# -- subcommand bodies ---------------------------------------------------------------


def _cmd_lattice_zeta(cfg: Config, args) -> int:
    doc = _read_json_input(args.phi)
    phi = lattice_from_json(doc, cfg.q, cfg.level)
    d = tuple(int(x) for x in args.d.split(","))
    z = zeta_lattice(phi, d)
    sigma = convergence_abscissa(phi, d)
    _emit(cfg, [f"zeta: {z.render(cfg.level)}", f"abscissa: {_abscissa_doc(sigma)}"],
          {"zeta": ratfun_to_json(z, cfg.level), "abscissa": _abscissa_doc(sigma)})
    return EXIT_OK


def _cmd_cell_zeta(cfg: Config, args) -> int:
    doc = _read_json_input(args.cell)
    cell = RectilinearCell(int(doc["m"]), int(doc["n"]))
    density = lattice_from_json(doc["density"], cfg.q, cfg.level)
    mu = SimpleMeasure(cell, density)
    f = OrderMonomial(int(doc["f"]["c"]), tuple(int(x) for x in doc["f"]["d"]))
    z = zeta_cell(mu, f)
    sigma = cell_abscissa(mu, f)
    _emit(cfg, [f"zeta: {z.render(cfg.level)}", f"abscissa: {_abscissa_doc(sigma)}"],
          {"zeta": ratfun_to_json(z, cfg.level), "abscissa": _abscissa_doc(sigma)})
    return EXIT_OK


def _cmd_laurent(cfg: Config, args) -> int:
    family = zeta_family_build(args.n, args.r, cfg.q)
    a0 = _parse_unit(args.center, cfg.q, cfg.level)
    phi = _parse_phi(args.phi)
    series = laurent_table(family, phi, a0, args.window)
    lines = [f"family: n={args.n} r={args.r} q={cfg.q}",
             f"base: {family.base.render(cfg.level)}",
             f"center: {args.center}  window: [{series.min_index}..{series.max_index}]"]
    for i in series.indices():
        lines.append(f"  w^{i}: {series.coeff(i)}")
    _emit(cfg, lines, laurent_to_json(series, cfg.level))
    return EXIT_OK


def _cmd_orbits(cfg: Config, args) -> int:
    if args.orbits_command != "classify":
        raise ConfigError("orbits needs a subcommand: classify")
    pair = CharacterPair(parse_character(args.chi1), parse_character(args.chi2))
    rep = classify_distribution_space(args.rows, args.cols, pair)
    lines = [f"space: {rep.space_kind}"
             + (f" ({rep.generator})" if rep.generator else "")
             + (f" tower_start={rep.tower_start}" if rep.tower_start is not None else ""),
             f"invariant_dim: {rep.invariant_dim}",
             f"admissible orbits: {list(rep.admissible_orbits)}",
             "orbit  codim  admissible"]
    from .orbits import orbit_admissible, stabilizer_modular_data
    for r in range(min(args.rows, args.cols) + 1):
        datum = stabilizer_modular_data(args.rows, args.cols, r)
        flag = orbit_admissible(args.rows, args.cols, r, pair)
        lines.append(f"  r={r}    {datum.codim}      {'yes' if flag else 'no'}")
    _emit(cfg, lines, classification_to_json(rep))
    return EXIT_OK


def _cmd_oracle(cfg: Config, args) -> int:
    if args.oracle_command == "det-hist":
        hist = det_valuation_histogram(
            args.n, cfg.p, args.k, args.mode, seed=args.seed, trials=args.trials,
            budget=cfg.budget, cache_dir=cfg.cache_dir)
        lines = [f"n={hist.n} p={hist.p} k={hist.k} mode={hist.mode}"]
        for j, c in enumerate(hist.counts):
            lines.append(f"  val={j}: {c}  ({hist.mass(j)})")
        lines.append(f"  val>={hist.k}: {hist.n_geq_k}")
        _emit(cfg, lines, json.loads(histogram_to_json(hist)))
        return EXIT_OK
    if args.oracle_command == "check-det-zeta":
        rep = det_zeta_series_check(args.n, cfg.p, args.k, budget=cfg.budget,
                                    cache_dir=cfg.cache_dir)
        lines = [f"n={rep.n} p={rep.p} k={rep.k}"]
        for e in rep.entries:
            status = "pass" if e.ok else "FAIL"
            lines.append(f"  j={e.j}: enumerated {e.enumerated} vs predicted {e.predicted}  [{status}]")
        lines.append("result: " + ("pass" if rep.passed else "FAIL"))
        doc = {"n": rep.n, "p": rep.p, "k": rep.k, "passed": rep.passed,
               "entries": [{"j": e.j, "enumerated": str(e.enumerated),
                            "predicted": str(e.predicted), "ok": e.ok}
                           for e in rep.entries]}
        _emit(cfg, lines, doc)
        return EXIT_OK if rep.passed else EXIT_ERROR
    raise ConfigError("oracle needs a subcommand: det-hist or check-det-zeta")


def _cmd_ext(cfg: Config, args) -> int:
    if args.ext_command != "scan":
        raise ConfigError("ext needs a subcommand: scan")
    rep = vanishing_dichotomy_scan(args.n, args.trials, args.seed, q=cfg.q)
    lines = [f"n={rep.n} trials={len(rep.trials)}",
             f"counterexamples: {len(rep.counterexamples)}"]
    for t in rep.trials[:5]:
        lines.append(f"  seed={t.seed} dim={t.dim} equal={t.equal_characters} "
                     f"profile={list(t.profile.dims)}")
    doc = {"n": rep.n, "trials": len(rep.trials), "passed": rep.passed,
           "profiles": [list(t.profile.dims) for t in rep.trials],
           "counterexamples": [t.seed for t in rep.counterexamples]}
    _emit(cfg, lines, doc)
    return EXIT_OK if rep.passed else EXIT_ERROR


def _cmd_selftest(cfg: Config, args) -> int:
    results = acceptance.run_all()
    for res in results:
        print(res.line())
    ok = all(r.passed for r in results)
    print("selftest: " + ("PASS" if ok else "FAIL"))
    return EXIT_OK if ok else EXIT_ERROR


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        cfg = Config(
            q=args.q, p=args.p, level=args.level, budget=args.budget,
            cache_dir=args.cache_dir or os.environ.get("IGUSAZETA_CACHE_DIR"),
            fmt=args.format,
        )
        handler = {
            "lattice-zeta": _cmd_lattice_zeta,
            "cell-zeta": _cmd_cell_zeta,
            "laurent": _cmd_laurent,
            "orbits": _cmd_orbits,
            "oracle": _cmd_oracle,
            "ext": _cmd_ext,
            "selftest": _cmd_selftest,
        }[args.command]
        return handler(cfg, args)
    except ZetaError as exc:
        payload = {"error": exc.payload()}
        print(dumps_canonical(payload))
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
