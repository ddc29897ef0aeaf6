"""Truncated matrix-product-state compression of classical data, with a
uniform-cost search for the qubit permutation minimizing truncation error."""

from .dct import DctPlan, dct2, idct2
from .encoding import (
    EncodingRecord,
    amplitude_encode,
    amplitude_encode_vector,
    decode_to_image,
    padded_length,
)
from .errors import DegenerateInputError, FormatError, LengthError
from .estimators import Dct2, MpsCompressor
from .linalg import TruncatedSvd, axis_transpose, frobenius_distance, truncated_svd
from .mps import (
    CutRecord,
    Mps,
    MpsCore,
    TruncationLedger,
    mps_svd,
    param_count,
    reconstruct,
    split_cores,
)
from .permutations import (
    apply_permutation,
    check_permutation,
    compose_permutations,
    identity_permutation,
    invert_permutation,
)
from .search import (
    Residual,
    SearchNode,
    SearchResult,
    extend_node,
    node_to_permutation,
    partial_truncation_error,
    prefix_size,
    search_optimal_permutation,
)
from .swaps import apply_swap_network, gate_arity, perm_to_swaps, swaps_to_text

__version__ = "0.1.0"

__all__ = [
    "DctPlan",
    "dct2",
    "idct2",
    "EncodingRecord",
    "amplitude_encode",
    "amplitude_encode_vector",
    "decode_to_image",
    "padded_length",
    "DegenerateInputError",
    "FormatError",
    "LengthError",
    "Dct2",
    "MpsCompressor",
    "TruncatedSvd",
    "axis_transpose",
    "frobenius_distance",
    "truncated_svd",
    "CutRecord",
    "Mps",
    "MpsCore",
    "TruncationLedger",
    "mps_svd",
    "param_count",
    "reconstruct",
    "split_cores",
    "apply_permutation",
    "check_permutation",
    "compose_permutations",
    "identity_permutation",
    "invert_permutation",
    "Residual",
    "SearchNode",
    "SearchResult",
    "extend_node",
    "node_to_permutation",
    "partial_truncation_error",
    "prefix_size",
    "search_optimal_permutation",
    "apply_swap_network",
    "gate_arity",
    "perm_to_swaps",
    "swaps_to_text",
    "__version__",
]
