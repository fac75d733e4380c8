"""Semidiscreteness and inverse-freeness of real Moebius semigroups.

A library and command-line tool for deciding whether the semigroup
generated by finitely many real Moebius transformations is semidiscrete
(the identity is not an accumulation point) and inverse free, with
machine-checkable certificates for the decidable cases, elementary
semigroup classification, composition-sequence dynamics, limit-set
sampling, and bounded-depth uniform-hyperbolicity checks for tuples of
SL(2, R) matrices.
"""

from .core import (
    Arc,
    ArcUnion,
    BoundaryPoint,
    HalfPlanePoint,
    MapKind,
    Moebius,
    MoebiusClass,
    NotApplicableError,
    SharedFixedPointError,
    IdentityInputError,
    apply_boundary,
    apply_halfplane,
    arc_image,
    arc_strictly_inside,
    boundary_shadow,
    chordal,
    classify,
    commutator_trace,
    compose,
    cross_ratio,
    fixed_points,
    hyperbolic_dist,
    inverse,
    operator_distance,
    tr,
)
from .dynamics import (
    CapExceededError,
    CompositionState,
    ConvergenceOutcome,
    ConvergenceReport,
    EllipticWitness,
    LimitSetSample,
    NearIdentityWitness,
    Side,
    WordTable,
    continued_fraction_check,
    enumerate_words,
    hausdorff_distance,
    initial_state,
    oracle_refute,
    run_sequence,
    sample_limit_set,
    step,
)
from .elementary import (
    AdditiveKind,
    AdditiveVerdict,
    AffineMap,
    ElementaryKind,
    ElementaryVerdict,
    EmptyInputError,
    MJKind,
    MJVerdict,
    NonpositiveInputError,
    NotInvariantError,
    classify_additive,
    classify_elementary,
    classify_multiplicative,
    exceptional_check,
    invariant_interval_scan,
    semidiscrete_in_MJ,
)
from .classify import (
    CommutatorTraceNotAboveTwoError,
    ElementaryPairType,
    JoergensenReport,
    PairStatus,
    PairVerdict,
    ReflectionFactorization,
    SchottkyCertificate,
    TraceCertificate,
    acd_bound,
    antiparallel,
    classify_pair,
    classify_pair_semidiscrete,
    elementary_check,
    geodesics_cross,
    joergensen_semigroup,
    reflection_factorization,
    verify_pair_certificate,
)

from .cocycle import (
    GRID_SAMPLES,
    NO_MULTICONE_MESSAGE,
    PERTURBATION_RADII,
    InvalidSchottkyParamsError,
    Multicone,
    PerturbationRow,
    SchottkyParams,
    YoccozReport,
    find_multicone,
    in_E_bounded,
    near_identity_bounded,
    schottky_group_pair,
    verify_multicone,
    yoccoz_counterexample,
)

__version__ = "0.1.0"

__all__ = [
    "Arc",
    "ArcUnion",
    "BoundaryPoint",
    "HalfPlanePoint",
    "MapKind",
    "Moebius",
    "MoebiusClass",
    "NotApplicableError",
    "SharedFixedPointError",
    "IdentityInputError",
    "apply_boundary",
    "apply_halfplane",
    "arc_image",
    "arc_strictly_inside",
    "boundary_shadow",
    "chordal",
    "classify",
    "commutator_trace",
    "compose",
    "cross_ratio",
    "fixed_points",
    "hyperbolic_dist",
    "inverse",
    "operator_distance",
    "tr",
    "CapExceededError",
    "CompositionState",
    "ConvergenceOutcome",
    "ConvergenceReport",
    "EllipticWitness",
    "LimitSetSample",
    "NearIdentityWitness",
    "Side",
    "WordTable",
    "continued_fraction_check",
    "enumerate_words",
    "hausdorff_distance",
    "initial_state",
    "oracle_refute",
    "run_sequence",
    "sample_limit_set",
    "step",
    "AdditiveKind",
    "AdditiveVerdict",
    "AffineMap",
    "ElementaryKind",
    "ElementaryVerdict",
    "EmptyInputError",
    "MJKind",
    "MJVerdict",
    "NonpositiveInputError",
    "NotInvariantError",
    "classify_additive",
    "classify_elementary",
    "classify_multiplicative",
    "exceptional_check",
    "invariant_interval_scan",
    "semidiscrete_in_MJ",
    "CommutatorTraceNotAboveTwoError",
    "ElementaryPairType",
    "JoergensenReport",
    "PairStatus",
    "PairVerdict",
    "ReflectionFactorization",
    "SchottkyCertificate",
    "TraceCertificate",
    "acd_bound",
    "antiparallel",
    "classify_pair",
    "classify_pair_semidiscrete",
    "elementary_check",
    "geodesics_cross",
    "joergensen_semigroup",
    "reflection_factorization",
    "verify_pair_certificate",
    "GRID_SAMPLES",
    "NO_MULTICONE_MESSAGE",
    "PERTURBATION_RADII",
    "InvalidSchottkyParamsError",
    "Multicone",
    "PerturbationRow",
    "SchottkyParams",
    "YoccozReport",
    "find_multicone",
    "in_E_bounded",
    "near_identity_bounded",
    "schottky_group_pair",
    "verify_multicone",
    "yoccoz_counterexample",
    "__version__",
]
