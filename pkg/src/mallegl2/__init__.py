"""Malle exponents for permutation representations of GL2(F_l) and PGL2(F_l),
and empirical checks of the elliptic-curve family that bounds them from below."""

from .curves import WeierstrassCurve, curve_invariants, is_squarefree, j_valuation, sieve_family
from .finite_linear import (
    Gl2Element,
    conjugacy_class_reps,
    gl2_mul,
    gl2_order,
    inertia_generator,
    invariants_of,
    reflection,
)
from .harness import FamilyConfig, count_below, distinctness_check, fit_exponent, run_family
from .malle import ExponentReport, exponent_report, inertia_exponent, malle_index
from .permrep import Perm, PermAction, act, build_rep, element_index, orbit_count
from .surjectivity import count_points, f13_eval, frobenius_samples, serre_test, thirteen_family_scan

__all__ = [
    "ExponentReport",
    "FamilyConfig",
    "Gl2Element",
    "Perm",
    "PermAction",
    "WeierstrassCurve",
    "act",
    "build_rep",
    "conjugacy_class_reps",
    "count_below",
    "count_points",
    "curve_invariants",
    "distinctness_check",
    "element_index",
    "exponent_report",
    "f13_eval",
    "fit_exponent",
    "frobenius_samples",
    "gl2_mul",
    "gl2_order",
    "inertia_exponent",
    "inertia_generator",
    "invariants_of",
    "is_squarefree",
    "j_valuation",
    "malle_index",
    "orbit_count",
    "reflection",
    "run_family",
    "serre_test",
    "sieve_family",
    "thirteen_family_scan",
]
