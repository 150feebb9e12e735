"""Exact quadratic forms over supertropical semifields."""

from .companions import (
    CompanionSet,
    CompanionTable,
    MeanContext,
    NuClass,
    NuLeqDoubled,
    NuLtDoubled,
    PairBranch,
    Singleton,
    build_companion,
    companion_membership_oracle,
    companion_set_pair,
    companion_table,
    contains,
    diagonal_cell,
    diagonal_membership_oracle,
    equality_witness,
    functionally_equal,
    is_companion,
    is_quasilinear,
    is_rigid,
    is_rigid_at_pair,
    mean_context,
    pair_analysis,
    pair_branch,
    quasilinear_pair,
    set_max,
    set_min,
)
from .decomposition import (
    Decomposition,
    RigExtrema,
    decompose,
    min_companion,
    off_diagonal_companion,
    quasilinear_part,
    rig_contains,
    rig_extrema,
    rigid_complement,
)
from .errors import PreconditionError
from .forms import (
    QuadraticForm,
    SymmetricBilinearForm,
    Vector,
    add_forms,
    balanced_companion,
    change_base,
    eval_bilinear,
    eval_quadratic,
    is_balanced_pair,
    pointwise_leq_rigid,
    scale_form,
    zero_bilinear,
    zero_form,
)
from .matrices import (
    GeneralMatrix,
    MonomialMatrix,
    identity_matrix,
    invert,
    is_invertible,
    mat_mul,
    monomial_decomposition,
)
from .semiring import (
    ZERO,
    Element,
    GroupKind,
    HalfElement,
    NuComparison,
    Semifield,
    SquareClassTag,
    format_element,
    leq_minimal,
    nu_compare,
    nu_eq,
    nu_leq,
    nu_lt,
    parse_rational,
    semiring_sum,
    sqrt_ghost,
)
from .stropicalize import (
    AxisReport,
    RationalQuadraticForm,
    SupervaluationSpec,
    apply_supervaluation,
    axis_compatibility_check,
    balanced_companion_of_strop,
    padic_valuation,
    ring_companion_matrix,
    square_class_sequence,
    stropicalize_bilinear,
    stropicalize_form,
)

__version__ = "0.1.0"
