"""Symbolic dynamics of suspension flows: transition graphs, periodic orbits,
Nielsen and Lefschetz numbers, zeta series and power-map classes."""

from .graph import (
    BalancedPolytope,
    DynamicalCycle,
    Edge,
    FriedConeResult,
    TransitionGraph,
    balanced_polytope,
    cycle_space_dim,
    fried_cone,
    primitive_cycles,
    support_graph,
)
from .omega import OmegaClasses, hit_census, omega_classes, omega_lefschetz
from .orbits import (
    LinearQuotient,
    NielsenResult,
    OrbitRecord,
    OrbitTable,
    StretchEntry,
    find_quotients,
    linear_model,
    nielsen_numbers,
    periodic_index,
    stretch_estimate,
    trivial_character,
    twisted_lefschetz,
)
from .zeta import NO_FIT, ZetaSeries, exp_series, lefschetz_sequence, rational_fit, series_of, zeta_series

__all__ = [
    "BalancedPolytope",
    "DynamicalCycle",
    "Edge",
    "FriedConeResult",
    "LinearQuotient",
    "NO_FIT",
    "NielsenResult",
    "OmegaClasses",
    "OrbitRecord",
    "OrbitTable",
    "StretchEntry",
    "TransitionGraph",
    "ZetaSeries",
    "balanced_polytope",
    "cycle_space_dim",
    "exp_series",
    "find_quotients",
    "fried_cone",
    "hit_census",
    "lefschetz_sequence",
    "linear_model",
    "nielsen_numbers",
    "omega_classes",
    "omega_lefschetz",
    "periodic_index",
    "primitive_cycles",
    "rational_fit",
    "series_of",
    "stretch_estimate",
    "support_graph",
    "trivial_character",
    "twisted_lefschetz",
    "zeta_series",
]
