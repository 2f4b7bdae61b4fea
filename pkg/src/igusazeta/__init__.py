"""Exact p-adic zeta integrals as rational functions of t = q^(-s).

The package computes Igusa-type zeta integrals over rectilinear cells in
exact arithmetic, extracts Laurent coefficient ladders, classifies
equivariant distributions on matrix spaces, computes Ext over the group
algebra of Z^n via Koszul complexes, and certifies every symbolic result
against brute-force enumeration over finite residue rings.
"""

from .cells import OrderMonomial, RectilinearCell, SimpleMeasure, cell_abscissa, cell_total_mass, zeta_cell
from .characters import CharacterPair, KCharacter, parse_character
from .errors import (BoxTooSmallError, BudgetError, ConfigError,
                     DivergenceError, DomainError, ZetaError)
from .families import (GroupElementAction, TestFunction, ZetaFamily,
                       action_recurrence_check, invariance_order_check,
                       laurent_table, zeta_family_build)
from .koszul import (ExtProfile, LambdaModule, finite_order_invariance_check,
                     koszul_ext_dims, vanishing_dichotomy_scan)
from .lattice import (LatticeFunction, LatticeTerm, check_summability,
                      convergence_abscissa, lattice_from_monomial,
                      sum_binom_geom, zeta_lattice)
from .oracle import (DetZetaReport, ValHistogram, det_valuation_histogram,
                     det_zeta_product, det_zeta_series_check,
                     truncated_sum_at_point, truncated_sum_coefficients)
from .orbits import (ClassificationReport, OrbitDatum,
                     classify_distribution_space,
                     cross_check_pole_vs_admissibility, orbit_admissible,
                     stabilizer_modular_data)
from .poly import Poly
from .ratfun import DenomFactor, FactoredRatFun, LaurentSeries
from .scalars import CycloRational, UnitScalar

__version__ = "0.1.0"

__all__ = [
    "BoxTooSmallError", "BudgetError", "CharacterPair", "ClassificationReport",
    "ConfigError", "CycloRational", "DenomFactor", "DetZetaReport",
    "DivergenceError", "DomainError", "ExtProfile", "FactoredRatFun",
    "GroupElementAction", "KCharacter", "LambdaModule", "LatticeFunction",
    "LatticeTerm", "LaurentSeries", "OrbitDatum", "OrderMonomial", "Poly",
    "RectilinearCell", "SimpleMeasure", "TestFunction", "UnitScalar",
    "ValHistogram", "ZetaError", "ZetaFamily", "action_recurrence_check",
    "cell_abscissa", "cell_total_mass", "check_summability",
    "classify_distribution_space", "convergence_abscissa",
    "cross_check_pole_vs_admissibility", "det_valuation_histogram",
    "det_zeta_product", "det_zeta_series_check",
    "finite_order_invariance_check", "invariance_order_check",
    "koszul_ext_dims", "lattice_from_monomial", "laurent_table",
    "orbit_admissible", "parse_character", "stabilizer_modular_data",
    "sum_binom_geom", "truncated_sum_at_point", "truncated_sum_coefficients",
    "vanishing_dichotomy_scan", "zeta_cell", "zeta_family_build",
    "zeta_lattice",
]
