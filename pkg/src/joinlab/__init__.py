"""Exact computations with joinings of finite measure-preserving systems.

Everything is rational arithmetic end to end: measures, Markov operator
kernels, linear programs over joining polytopes, cocycle statistics.  No
floats enter or leave any public interface.
"""

from .errors import (
    InvalidInputError,
    JoinlabError,
    PreconditionError,
    ResourceLimitError,
)
from .joinings import (
    EquivariantField,
    JoiningTensor,
    ProductMeasure,
    diagonal_invariance_defect,
    disintegrate,
    equivariance_defect,
    face_independence_defect,
    has_standard_projections,
    joining_from_operator,
    marginal,
    operator_from_joining,
    product_convergence_trace,
    product_joining,
    push_by_automorphisms,
    push_joining,
    reassemble,
    sup_distance,
)
from .mixing import (
    OffsetVector,
    correlation,
    fiber_projection,
    mixed_set_correlation,
    mixing_deviation_sweep,
    mixing_deviation_sweep_detail,
    offset_joining,
    relative_mixing_deviation,
)
from .operators import (
    ClosureProbe,
    MarkovOperator,
    affine_combination,
    averaging_operator,
    compose_operators,
    dist_w,
    identity_operator,
    koopman,
    operator_power,
    weak_closure_probe,
)
from .polytope import (
    LpOutcome,
    PolytopeSpec,
    TrivialityCertificate,
    certify_triviality,
    optimize,
)
from .rationals import as_fraction, format_rational, parse_rational
from .simplex import LpSolution, RationalSimplex, solve_lp
from .skew import (
    RigiditySequence,
    SkewProduct,
    as_automorphism,
    coboundary_extension,
    cocycle_product,
    is_ergodic,
    power_skew,
    relative_mixing_fraction,
    relative_product,
    relative_weak_mixing_average,
    rigidity_statistic,
    sample_random_extension,
)
from .spaces import (
    ActionGenerators,
    Automorphism,
    FiniteSpace,
    MeasurableSet,
    compose,
    halmos_distance,
    is_measure_preserving,
    orbit_count,
    product_space,
)
from .torus import (
    Z2kContext,
    character_coefficient,
    fourier_joining,
    full_action,
    permutation_automorphism,
    shift_automorphism,
    triple_sum_joining,
)

__version__ = "0.1.0"

__all__ = [
    "ActionGenerators",
    "Automorphism",
    "ClosureProbe",
    "EquivariantField",
    "FiniteSpace",
    "InvalidInputError",
    "JoiningTensor",
    "JoinlabError",
    "LpOutcome",
    "LpSolution",
    "MarkovOperator",
    "MeasurableSet",
    "OffsetVector",
    "PolytopeSpec",
    "PreconditionError",
    "ProductMeasure",
    "RationalSimplex",
    "ResourceLimitError",
    "RigiditySequence",
    "SkewProduct",
    "TrivialityCertificate",
    "Z2kContext",
    "affine_combination",
    "as_automorphism",
    "as_fraction",
    "averaging_operator",
    "certify_triviality",
    "character_coefficient",
    "coboundary_extension",
    "cocycle_product",
    "compose",
    "compose_operators",
    "correlation",
    "diagonal_invariance_defect",
    "disintegrate",
    "dist_w",
    "equivariance_defect",
    "face_independence_defect",
    "fiber_projection",
    "format_rational",
    "fourier_joining",
    "full_action",
    "halmos_distance",
    "has_standard_projections",
    "identity_operator",
    "is_ergodic",
    "is_measure_preserving",
    "joining_from_operator",
    "koopman",
    "marginal",
    "mixed_set_correlation",
    "mixing_deviation_sweep",
    "mixing_deviation_sweep_detail",
    "offset_joining",
    "operator_from_joining",
    "operator_power",
    "optimize",
    "orbit_count",
    "parse_rational",
    "permutation_automorphism",
    "power_skew",
    "product_convergence_trace",
    "product_joining",
    "product_space",
    "push_by_automorphisms",
    "push_joining",
    "reassemble",
    "relative_mixing_deviation",
    "relative_mixing_fraction",
    "relative_product",
    "relative_weak_mixing_average",
    "rigidity_statistic",
    "sample_random_extension",
    "shift_automorphism",
    "solve_lp",
    "sup_distance",
    "triple_sum_joining",
    "weak_closure_probe",
    "__version__",
]
