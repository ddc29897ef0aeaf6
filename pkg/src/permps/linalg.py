"""Dense tensor primitives: truncated SVD, axis transposition, Frobenius distance.

Everything here is a pure function of its arguments and safe to call from
multiple threads. All arithmetic is real float64.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["TruncatedSvd", "truncated_svd", "axis_transpose", "frobenius_distance"]


@dataclass(frozen=True)
class TruncatedSvd:
    """Top singular triplets of a real matrix plus the discarded tail weight.

    ``u`` has orthonormal columns, ``vt`` orthonormal rows and
    ``singular_values`` is sorted descending. ``discarded_sq`` is the sum of
    squared singular values beyond the kept rank, so
    ``discarded_sq + sum(singular_values**2)`` recovers the squared Frobenius
    norm of the input matrix.
    """

    u: np.ndarray
    singular_values: np.ndarray
    vt: np.ndarray
    discarded_sq: float

    @property
    def rank(self) -> int:
        return self.singular_values.size

    def reconstruct(self) -> np.ndarray:
        """Rank-``rank`` matrix ``u @ diag(s) @ vt``."""
        return (self.u * self.singular_values) @ self.vt


def _fix_signs(u: np.ndarray, vt: np.ndarray) -> None:
    """Flip singular-vector pairs so each column of ``u`` starts nonnegative.

    Resolves the sign ambiguity of the factorization in place; the first
    nonzero component of every kept left singular vector becomes positive,
    which makes repeated factorizations of equal inputs bit-reproducible.
    """
    for i in range(u.shape[1]):
        col = u[:, i]
        nz = np.flatnonzero(col)
        if nz.size and col[nz[0]] < 0:
            u[:, i] = -col
            vt[i] = -vt[i]


def truncated_svd(m, chi: int) -> TruncatedSvd:
    """SVD of ``m`` truncated to at most ``chi`` singular triplets.

    Keeps exactly ``min(rows, cols, chi)`` triplets in descending order, zeros
    included; ties at the truncation boundary are kept in the order the
    backend produces. Raises ``ValueError`` for non-finite input or
    ``chi < 1``.
    """
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise ValueError("matrix contains non-finite entries")
    if int(chi) != chi or chi < 1:
        raise ValueError(f"chi must be a positive integer, got {chi!r}")

    u, s, vt = np.linalg.svd(m, full_matrices=False)
    k = min(int(chi), s.size)
    tail = s[k:]
    tail_sq = float(tail @ tail)
    # A tail below the backward error of the factorization itself
    # (max(shape) * eps * sigma_max per value) is indistinguishable from an
    # exact zero; flush it so lossless cuts cost exactly 0.0 and cost ties
    # between equivalent orderings stay exact ties.
    noise = max(m.shape) * np.finfo(np.float64).eps * (s[0] if s.size else 0.0)
    if tail_sq <= noise * noise:
        tail_sq = 0.0
    u = np.ascontiguousarray(u[:, :k])
    vt = np.ascontiguousarray(vt[:k])
    _fix_signs(u, vt)
    return TruncatedSvd(u, s[:k].copy(), vt, tail_sq)


def axis_transpose(t: np.ndarray, order) -> np.ndarray:
    """Reorder tensor axes so output axis ``j`` carries input axis ``order[j]``.

    ``order`` must be a permutation of ``range(t.ndim)``. Returns a view when
    numpy can provide one; element values are preserved either way.
    """
    t = np.asarray(t)
    order = np.asarray(order, dtype=np.intp)
    if order.shape != (t.ndim,) or not np.array_equal(np.sort(order), np.arange(t.ndim)):
        raise ValueError(f"order {order.tolist()} is not a permutation of axes of rank {t.ndim}")
    return np.transpose(t, order)


def frobenius_distance(a, b) -> float:
    """Frobenius distance ``sqrt(sum |a - b|^2)`` between same-shaped tensors."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm((a - b).ravel()))
