"""Finite-dimensional operational algebra of quantum transformations.

Classify bipartite states by faithfulness, diagonalize the bilinear form
they induce on effects, build the associated transposition, sign and
adjoint maps, and represent transformations on the space of generalized
effects with a C* norm.
"""

from .errors import (
    DegenerateForm,
    GenerationFailed,
    GramRankError,
    InvalidChoi,
    InvalidMap,
    NotFaithful,
    NotPreparationallyFaithful,
    NotSymmetric,
    PoolDimensionMismatch,
    QcstarError,
    StateFormatError,
)
from .faithfulness import (
    BipartiteState,
    FaithfulnessReport,
    classify,
    extract_f,
    is_dynamically_faithful,
    is_preparationally_faithful,
    is_symmetric,
    local_state,
    maximally_entangled,
    pure_faithful_state,
    random_symmetric_faithful,
)
from .gns import (
    GnsSpace,
    adjoint_wrt,
    born_rule,
    cstar_norm,
    default_basis_maps,
    find_preparation,
    gns_vector,
    representation_matrix,
    scalar_product,
    transpose_wrt,
)
from .infocomplete import (
    Observable,
    binary_coarse_grainings,
    build_infocomplete,
    dimension_check,
    is_infocomplete,
    is_minimal,
    span_rank,
)
from .jordan import (
    JordanData,
    abs_form,
    bilinear_form,
    gram_matrix,
    jordan_decompose,
    varsigma,
    z_map,
    z_wrt_basis,
)
from .operators import (
    ChoiMatrix,
    Effect,
    HermitianBasis,
    HermitianOperator,
    QuantumMap,
    SuperOp,
    add,
    adjoint_map,
    apply_map,
    canonical_hs_basis,
    choi_to_map,
    compose,
    conjugate_map,
    cp_map,
    effect_norm,
    effect_of_map,
    heisenberg_apply,
    identity_map,
    inverse_map,
    map_norm_lower,
    map_to_choi,
    scale,
    superop,
    superop_to_map,
    transpose_map,
    unitary_map,
)
from .tolerances import TAU_HERM, TAU_NUM, TAU_ORTH, TAU_PSD, TAU_RANK

__version__ = "0.1.0"
