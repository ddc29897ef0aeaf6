"""Amplitude encoding of classical data into normalized state vectors.

An image is flattened row-major, zero-padded at the tail to the next power of
two (at least 4 entries so there are at least two qubits), and divided by its
L2 norm. With the most-significant-first bit convention, flat index i of the
padded vector corresponds to qubit bits via i = sum_j 2^(n-1-j) q_j, so
row-major pixel order and tail padding keep pixel (r, c) at flat index
r * width + c.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError
from .validation import check_image

__all__ = [
    "EncodingRecord",
    "padded_length",
    "amplitude_encode",
    "amplitude_encode_vector",
    "decode_to_image",
]


@dataclass(frozen=True)
class EncodingRecord:
    """A normalized state plus everything needed to undo the encoding.

    ``state * norm_scale`` reproduces the padded raw data exactly;
    ``orig_shape`` is (height, width) for images or (length,) for vectors.
    """

    state: np.ndarray
    norm_scale: float
    pad_to: int
    orig_shape: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.pad_to.bit_length() - 1


def padded_length(length: int) -> int:
    """Smallest power of two >= max(length, 4)."""
    if length < 1:
        raise ValueError("cannot encode an empty buffer")
    return 1 << max(2, (length - 1).bit_length())


def _encode(values: np.ndarray, orig_shape: tuple[int, ...]) -> EncodingRecord:
    norm = float(np.linalg.norm(values))
    if norm == 0.0:
        raise DegenerateInputError("all-zero input has no amplitude encoding")
    pad_to = padded_length(values.size)
    state = np.zeros(pad_to, dtype=np.float64)
    state[: values.size] = values / norm
    return EncodingRecord(state, norm, pad_to, orig_shape)


def amplitude_encode(img) -> EncodingRecord:
    """Encode a nonnegative 2-D image: flatten row-major, pad, normalize."""
    img = check_image(img)
    return _encode(img.ravel(), img.shape)


def amplitude_encode_vector(values) -> EncodingRecord:
    """Encode a 1-D feature vector; negative entries are allowed here."""
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got shape {values.shape}")
    if values.size == 0:
        raise ValueError("cannot encode an empty vector")
    if not np.isfinite(values).all():
        raise ValueError("vector contains non-finite values")
    return _encode(values.copy(), (values.size,))


def decode_to_image(state, norm_scale: float, orig_shape) -> np.ndarray:
    """Undo the encoding: rescale, drop the padding tail, reshape row-major.

    Values are returned as-is (a truncated reconstruction may dip below zero);
    clamping to a pixel range happens only in 8-bit export code.
    """
    state = np.asarray(state, dtype=np.float64)
    shape = tuple(int(v) for v in orig_shape)
    count = int(np.prod(shape))
    if state.ndim != 1 or count > state.size:
        raise ValueError(f"cannot carve shape {shape} out of a state of size {state.size}")
    return (state[:count] * float(norm_scale)).reshape(shape)
