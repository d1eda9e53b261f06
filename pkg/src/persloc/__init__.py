"""Exact invariants of finitely presented multigraded modules.

Modules over a polynomial ring in m variables, graded by m-tuples of natural
numbers, with coefficients in a prime field (default characteristic 5) or the
rationals.  The package computes slice dimensions and transition ranks,
one-axis interval decompositions after inverting a variable, strip/quadrant
decompositions of two-parameter modules, fiber-product dimensions, section
solvers, support complexes with their combinatorial calculus, and the
three-legged quiver bridge for m = 3.
"""

from .complexes import (
    SimplicialComplex,
    SimpleDescriptor,
    annihilated_by_monomial_power,
    empty_complex,
    enumerate_complexes,
    face_ring,
    full_simplex,
    in_kernel,
    in_kernel_by_nilpotence,
    kdim,
    kernel_complex,
    minimal_missing_faces,
    random_complex,
    serre_chain,
    serre_step,
    simples,
    skeleton,
    supp_complex,
)
from .degrees import axis_unit, box, join, leq, meet, zero
from .errors import (
    AmbientMismatchError,
    DecompositionError,
    DegreeOrderError,
    HomogeneityError,
    NotLocallyEpicError,
    ParseError,
    PreconditionError,
    UnknownNameError,
)
from .examples import named_example, names as example_names
from .fields import DEFAULT_FIELD, Field, Matrix, Subspace, sum_and_intersection
from .localization import (
    Barcode,
    Interval,
    axis_rank_function,
    barcode_by_reduction,
    bars_from_rank_fn,
    intervals_by_reduction,
    localized_barcode,
    localized_dim,
    localized_rank,
    pinned_slice_sequence,
)
from .presentation import (
    GradedPresentation,
    PresentationMap,
    direct_sum,
    free_module,
    random_presentation,
    zero_module,
)
from .quiver import (
    QuiverRep,
    endomorphism_basis,
    in_leq_n,
    is_indecomposable,
    quiver_shape,
    random_rep,
    to_quiver_rep,
    torsion_leg_split,
    try_split,
)
from .twoparam import (
    Bifiltration,
    Decomposition,
    SectionResult,
    SectionWitness,
    bifiltration,
    decompose,
    delocalize_dim,
    equivalent_after_localization,
    intersection_rank,
    intersection_table,
    quadrant_corners,
    reconstruct,
    section_exists,
    torsion_strips,
)

__version__ = "0.1.0"

__all__ = [
    "AmbientMismatchError",
    "Barcode",
    "Bifiltration",
    "DEFAULT_FIELD",
    "Decomposition",
    "DecompositionError",
    "DegreeOrderError",
    "Field",
    "GradedPresentation",
    "HomogeneityError",
    "Interval",
    "Matrix",
    "NotLocallyEpicError",
    "ParseError",
    "PreconditionError",
    "PresentationMap",
    "QuiverRep",
    "SectionResult",
    "SectionWitness",
    "SimpleDescriptor",
    "SimplicialComplex",
    "Subspace",
    "UnknownNameError",
    "annihilated_by_monomial_power",
    "axis_rank_function",
    "axis_unit",
    "barcode_by_reduction",
    "bars_from_rank_fn",
    "bifiltration",
    "box",
    "decompose",
    "delocalize_dim",
    "direct_sum",
    "empty_complex",
    "endomorphism_basis",
    "enumerate_complexes",
    "equivalent_after_localization",
    "example_names",
    "face_ring",
    "free_module",
    "full_simplex",
    "in_kernel",
    "in_kernel_by_nilpotence",
    "in_leq_n",
    "intersection_rank",
    "intersection_table",
    "intervals_by_reduction",
    "is_indecomposable",
    "join",
    "kdim",
    "kernel_complex",
    "leq",
    "localized_barcode",
    "localized_dim",
    "localized_rank",
    "meet",
    "minimal_missing_faces",
    "named_example",
    "pinned_slice_sequence",
    "quadrant_corners",
    "quiver_shape",
    "random_complex",
    "random_presentation",
    "random_rep",
    "reconstruct",
    "section_exists",
    "serre_chain",
    "serre_step",
    "simples",
    "skeleton",
    "sum_and_intersection",
    "supp_complex",
    "to_quiver_rep",
    "torsion_leg_split",
    "torsion_strips",
    "try_split",
    "zero",
    "zero_module",
]
