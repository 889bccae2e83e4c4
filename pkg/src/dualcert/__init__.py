"""Certify when the map from a basis of M_n to its dual basis is a (complete) order isomorphism."""
from .bases import (
    MatrixBasis,
    dual_basis,
    gamma,
    gram,
    pauli_basis,
    scaled_unit_basis,
    standard_basis,
    tensor_power,
    weyl_basis,
)
from .choi import (
    MapSpec,
    apply_map,
    choi_matrix,
    conjugate_choi,
    generalized_choi,
    is_ccp,
    is_cp,
    jamiolkowski,
    pauli_block_condition,
)
from .classify import (
    COMPLETE,
    COPOSITIVE,
    NOT_ORDER_ISO,
    DualityVerdict,
    classify_duality,
    classify_scaled_unit,
    rank_one_psd_factor,
)
from .linalg import herm_eig, hs_inner, is_psd, kron, partial_transpose
from .superop import SuperOp, change_of_basis, m_map
from .witness import build_witness, screen_positive_map, validate_witness

__version__ = "0.1.0"
