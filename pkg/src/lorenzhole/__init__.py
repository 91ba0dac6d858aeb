"""Exact symbolic dynamics for Lorenz maps with a hole at the critical point."""

from .entropy import (
    EntropyResult,
    IntPoly,
    KneadingDeterminant,
    beta_from_kneading,
    dimension,
    kneading_determinant,
    smallest_root,
    survivor_entropy,
    survivor_shift_entropy,
)
from .errors import LorenzHoleError
from .kneading import (
    FULL_SHIFT,
    AdmissibilityClass,
    HoleKind,
    HoleKneading,
    KneadingPair,
    SurvivorShift,
    classify,
    degenerate_check,
    hole_to_boundary,
    normalize_hole,
    self_admissibilize_lower,
    self_admissibilize_upper,
    shift_contains,
    survivor_members_language,
    weak_admissibilize,
)
from .plateau import (
    Plateau,
    PlateauEndpoint,
    in_bifurcation_set,
    plateau_at_critical,
    plateau_interior,
    plateau_interior_a_side,
    verify_plateau,
)
from .symbolic import EpSeq, Order, canonicalize, compare, parse, shift, strictly_between

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityClass",
    "EntropyResult",
    "EpSeq",
    "FULL_SHIFT",
    "HoleKind",
    "HoleKneading",
    "IntPoly",
    "KneadingDeterminant",
    "KneadingPair",
    "LorenzHoleError",
    "Order",
    "Plateau",
    "PlateauEndpoint",
    "SurvivorShift",
    "beta_from_kneading",
    "canonicalize",
    "classify",
    "compare",
    "degenerate_check",
    "dimension",
    "hole_to_boundary",
    "in_bifurcation_set",
    "kneading_determinant",
    "normalize_hole",
    "parse",
    "plateau_at_critical",
    "plateau_interior",
    "plateau_interior_a_side",
    "self_admissibilize_lower",
    "self_admissibilize_upper",
    "shift",
    "shift_contains",
    "smallest_root",
    "strictly_between",
    "survivor_entropy",
    "survivor_shift_entropy",
    "survivor_members_language",
    "verify_plateau",
    "weak_admissibilize",
]
