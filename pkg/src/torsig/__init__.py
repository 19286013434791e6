"""Exact computation of the signature function of torus knots.

The lattice engine (`torsig.lattice`) counts lattice points in a
Manhattan-norm annulus; the profile engine (`torsig.maxsig`) locates the
peak of the signature function through balanced sequences; `torsig.identities`
verifies the recursions and closed forms instance by instance; and
`torsig.oracle` re-derives everything numerically from Seifert matrices of
braid closures as an independent cross-check.
"""

from .core import (
    InvalidParameter,
    NotCoprime,
    OutOfRange,
    RationalAngle,
    SignatureDatum,
    TorsigError,
    TorusKnot,
    new_rational_angle,
    new_torus_knot,
    seifert_rank,
)
from .lattice import (
    AnnulusCount,
    StepFunction,
    annulus_count,
    annulus_count_bruteforce,
    classical_signature,
    lt_signature,
    signature_step_function,
)
from .maxsig import (
    BalancedSequence,
    DistanceProfile,
    RotationReport,
    balanced_sequence,
    distance_profile,
    g4_lower_bound,
    max_cyclic_sum,
    max_signature,
    rotation_relation,
)
from .identities import (
    GapWitness,
    IdentityReport,
    check_closed_forms,
    check_even_periodicity,
    check_glm,
    check_main_recursion,
    check_odd_shift_identity,
    gap_witness,
)
from .oracle import (
    BraidWord,
    NearSingular,
    SeifertMatrix,
    ValidationFailure,
    alexander_from_seifert,
    brute_force_max,
    hermitian_signature,
    seifert_matrix,
    signature_cross_check,
    torus_alexander,
    torus_braid,
    torus_seifert_matrix,
)

__version__ = "0.1.0"
