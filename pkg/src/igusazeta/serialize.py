"""JSON encodings of the public value types.

All rationals are encoded as "p/q" strings (or "p" when integral), so every
document round-trips bit-exactly: encoding is canonical (sorted keys, fixed
separators) and decoding reconstructs structurally identical values.

Schemas:

* scalar: "p/q" or {"m": level, "coeffs": ["p/q", ...]}
* unit scalar (inside a document with known q and level): {"j": int, "a": int}
* rational function: {"q", "level", "t_power", "numerator": [[exp, scalar]...],
  "denom": [{"u": {...}, "d", "e"}...]}
* lattice function: {"dim", "terms": [{"coeff": scalar,
  "coords": [{"k": int, "u": {"j", "a"}}...]}...]}
* Laurent window: {"center": {...}, "min_index", "max_index", "coeffs": [...]}
* characters use the grammar "triv:e" / "fin<m>^<j>:e"
"""

from __future__ import annotations

import json
from fractions import Fraction

from .characters import CharacterPair, KCharacter, parse_character
from .errors import ConfigError
from .lattice import LatticeFunction, LatticeTerm
from .orbits import ClassificationReport
from .poly import Poly
from .ratfun import DenomFactor, FactoredRatFun, LaurentSeries
from .scalars import CycloRational, UnitScalar


def dumps_canonical(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


# -- scalars --------------------------------------------------------------------


def fraction_to_json(x: Fraction) -> str:
    return str(x)


def fraction_from_json(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad rational literal {text!r}") from exc


def cyclo_to_json(x: CycloRational):
    if x.level == 1:
        return fraction_to_json(x.coeffs[0])
    return {"m": x.level, "coeffs": [fraction_to_json(c) for c in x.coeffs]}


def cyclo_from_json(doc) -> CycloRational:
    if isinstance(doc, str):
        return CycloRational.from_rational(fraction_from_json(doc))
    return CycloRational(doc["m"], [fraction_from_json(c) for c in doc["coeffs"]])


def unit_to_json(u: UnitScalar, level: int) -> dict:
    if u.root and level % u.level != 0:
        raise ConfigError(
            f"unit scalar at level {u.level} does not embed in configured level {level}")
    j = u.root * (level // u.level) if u.root else 0
    return {"j": j, "a": u.exp}


def unit_from_json(doc, q: int, level: int) -> UnitScalar:
    return UnitScalar(q, level, int(doc["j"]), int(doc["a"]))


# -- rational functions -------------------------------------------------------------


def ratfun_to_json(r: FactoredRatFun, level: int) -> dict:
    return {
        "q": r.q,
        "level": level,
        "t_power": r.t_power,
        "numerator": [[e, cyclo_to_json(c)] for e, c in r.numerator.items_sorted()],
        "denom": [
            {"u": unit_to_json(f.u, level), "d": f.d, "e": f.e}
            for f in r.denom
        ],
    }


def ratfun_from_json(doc) -> FactoredRatFun:
    q = int(doc["q"])
    level = int(doc["level"])
    num = Poly([(int(e), cyclo_from_json(c)) for e, c in doc["numerator"]])
    denom = [
        DenomFactor(unit_from_json(f["u"], q, level), int(f["d"]), int(f["e"]))
        for f in doc["denom"]
    ]
    return FactoredRatFun(q, int(doc["t_power"]), num, denom)


def laurent_to_json(s: LaurentSeries, level: int) -> dict:
    return {
        "center": unit_to_json(s.center, level),
        "min_index": s.min_index,
        "max_index": s.max_index,
        "coeffs": [cyclo_to_json(c) for c in s.coeffs],
    }


# -- lattice functions ------------------------------------------------------------


def lattice_to_json(phi: LatticeFunction, level: int) -> dict:
    return {
        "dim": phi.dim,
        "terms": [
            {
                "coeff": cyclo_to_json(t.coeff),
                "coords": [
                    {"k": k, "u": unit_to_json(u, level)} for k, u in t.coords
                ],
            }
            for t in phi.terms
        ],
    }


def lattice_from_json(doc, q: int, level: int) -> LatticeFunction:
    dim = int(doc["dim"])
    terms = []
    for t in doc["terms"]:
        coords = tuple(
            (int(c["k"]), unit_from_json(c["u"], q, level)) for c in t["coords"]
        )
        terms.append(LatticeTerm(cyclo_from_json(t["coeff"]), coords))
    return LatticeFunction(dim, tuple(terms))


# -- characters and classification reports -------------------------------------------


def character_to_json(chi: KCharacter) -> str:
    return str(chi)


def character_from_json(text: str) -> KCharacter:
    return parse_character(text)


def classification_to_json(rep: ClassificationReport) -> dict:
    doc = {
        "m": rep.m,
        "n": rep.n,
        "chi1": character_to_json(rep.pair.chi1),
        "chi2": character_to_json(rep.pair.chi2),
        "admissible_orbits": list(rep.admissible_orbits),
        "space_kind": rep.space_kind,
        "invariant_dim": rep.invariant_dim,
        "notes": rep.notes,
    }
    if rep.generator is not None:
        doc["generator"] = rep.generator
    if rep.tower_start is not None:
        doc["tower_start"] = rep.tower_start
    return doc
