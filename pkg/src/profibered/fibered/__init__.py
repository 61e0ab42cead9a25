"""Mapping tori: twisted homology, Alexander polynomials and torsion."""

from .homology import (
    Torsion,
    TwistedHomologyResult,
    alexander_polynomials,
    duality_check,
    fiberedness_evidence,
    mapping_torus_orders,
    monodromy_char_poly,
    reidemeister_torsion,
    twisted_alexander,
    twisted_chains,
    twisted_homology,
)
from .presentation import FiberedPresentation, Representation
from .realize import realize_over_z
from .surface import SurfaceSpec, fox_derivative, fox_identity_holds, surface_chain_complex

__all__ = [
    "FiberedPresentation",
    "Representation",
    "SurfaceSpec",
    "Torsion",
    "TwistedHomologyResult",
    "alexander_polynomials",
    "duality_check",
    "fiberedness_evidence",
    "fox_derivative",
    "fox_identity_holds",
    "mapping_torus_orders",
    "monodromy_char_poly",
    "realize_over_z",
    "reidemeister_torsion",
    "surface_chain_complex",
    "twisted_alexander",
    "twisted_chains",
    "twisted_homology",
]
