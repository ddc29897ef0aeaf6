"""Input validation helpers used across the package and the estimator facade."""

from __future__ import annotations

import numpy as np

NORM_ATOL = 1e-12


def num_qubits(length: int) -> int:
    """Number of qubits addressed by a state vector of ``length`` amplitudes.

    ``length`` must be an exact power of two and at least 4 (two qubits).
    """
    if length < 4 or length & (length - 1):
        raise ValueError(
            f"state length must be a power of two >= 4, got {length}"
        )
    return length.bit_length() - 1


def check_state_vector(state, *, normalized: bool = True) -> tuple[np.ndarray, int]:
    """Validate a state vector and return it as a float64 array plus its qubit count.

    Checks: one-dimensional, finite, power-of-two length, and (by default)
    unit L2 norm within ``NORM_ATOL``.
    """
    vec = np.ascontiguousarray(state, dtype=np.float64)
    if vec.ndim != 1:
        raise ValueError(f"state vector must be one-dimensional, got shape {vec.shape}")
    n = num_qubits(vec.size)
    if not np.isfinite(vec).all():
        raise ValueError("state vector contains non-finite entries")
    if normalized:
        norm = np.linalg.norm(vec)
        if abs(norm - 1.0) > NORM_ATOL:
            raise ValueError(f"state vector is not normalized: |v| = {norm!r}")
    return vec, n


def check_bond_dimension(chi) -> int:
    if int(chi) != chi or chi < 1:
        raise ValueError(f"bond dimension must be a positive integer, got {chi!r}")
    return int(chi)


def check_image(img) -> np.ndarray:
    """Validate a 2-D image buffer of nonnegative finite pixels."""
    arr = np.ascontiguousarray(img, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"image must be a 2-D array, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError("image contains non-finite entries")
    if (arr < 0).any():
        raise ValueError("image pixels must be nonnegative")
    return arr
