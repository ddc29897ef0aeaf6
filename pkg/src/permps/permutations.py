"""Qubit permutations acting on state vectors.

Index convention: basis index ``i`` of an ``n``-qubit state decomposes as
``i = sum(2**(n-1-j) * q_j)``, so qubit 0 is the most significant bit and
``state.reshape([2] * n)`` puts qubit ``j`` on axis ``j``. A permutation is a
sequence ``p`` of length ``n`` where output axis ``j`` carries input axis
``p[j]``.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "check_permutation",
    "identity_permutation",
    "invert_permutation",
    "compose_permutations",
    "apply_permutation",
]


def check_permutation(perm, n: int | None = None) -> list[int]:
    """Validate that ``perm`` is a permutation of ``range(len(perm))``.

    Returns it as a list of ints. ``n`` pins the expected length.
    """
    p = [int(v) for v in perm]
    if n is not None and len(p) != n:
        raise ValueError(f"expected a permutation of length {n}, got {len(p)}")
    if sorted(p) != list(range(len(p))):
        raise ValueError(f"{p} is not a permutation of 0..{len(p) - 1}")
    return p


def identity_permutation(n: int) -> list[int]:
    return list(range(n))


def invert_permutation(perm) -> list[int]:
    """Inverse ``q`` with ``q[perm[j]] = j`` for all ``j``."""
    p = check_permutation(perm)
    return np.argsort(np.asarray(p, dtype=np.intp), kind="stable").tolist()


def compose_permutations(p, q) -> list[int]:
    """Permutation equivalent to applying ``q`` first, then ``p``.

    ``apply(s, compose(p, q)) == apply(apply(s, q), p)`` for every state.
    """
    p = check_permutation(p)
    q = check_permutation(q, len(p))
    return [q[p[j]] for j in range(len(p))]


def apply_permutation(state, perm) -> np.ndarray:
    """Reorder the qubits of a state vector.

    Output qubit ``j`` carries input qubit ``perm[j]``. Returns a fresh
    contiguous array of the same length.
    """
    state = np.asarray(state)
    n = state.size.bit_length() - 1
    if state.ndim != 1 or state.size != 1 << n:
        raise ValueError(f"state length {state.size} is not a power of two")
    p = check_permutation(perm, n)
    return state.reshape([2] * n).transpose(p).ravel()
