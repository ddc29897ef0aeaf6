"""Tensor primitives: truncated SVD, axis transposition, Frobenius distance."""

import numpy as np
import pytest

from permps.linalg import axis_transpose, frobenius_distance, truncated_svd

from oracles import frobenius_by_summation

# ---------------------------------------------------------------- truncated_svd


def test_identity_matrix_keeps_unit_sigmas():
    f = truncated_svd(np.eye(2), 2)
    assert np.allclose(f.singular_values, [1.0, 1.0])
    assert f.discarded_sq == 0.0


def test_rank_one_matrix_at_chi_one_is_lossless():
    f = truncated_svd(np.full((2, 2), 0.5), 1)
    assert np.allclose(f.singular_values, [1.0])
    assert f.discarded_sq == 0.0
    assert np.allclose(f.reconstruct(), np.full((2, 2), 0.5))


def test_diagonal_matrix_discards_squared_tail():
    f = truncated_svd(np.diag([0.8, 0.6]), 1)
    assert np.allclose(f.singular_values, [0.8])
    assert f.discarded_sq == pytest.approx(0.36, abs=1e-15)


@pytest.mark.parametrize("shape,chi", [((4, 8), 2), ((8, 4), 3), ((16, 16), 5)])
def test_eckart_young_consistency(rng, shape, chi):
    m = rng.standard_normal(shape)
    f = truncated_svd(m, chi)
    assert frobenius_distance(m, f.reconstruct()) ** 2 == pytest.approx(
        f.discarded_sq, rel=1e-10
    )


def test_rank_counts_zero_singular_values():
    # A rank-1 matrix still yields min(rows, cols, chi) triplets.
    m = np.outer([1.0, 2.0], [3.0, 4.0, 5.0])
    f = truncated_svd(m, 3)
    assert f.rank == 2
    assert f.singular_values[1] == pytest.approx(0.0, abs=1e-12)


def test_sign_convention_first_nonzero_component_nonnegative(rng):
    for _ in range(10):
        f = truncated_svd(rng.standard_normal((6, 6)), 4)
        for col in f.u.T:
            nz = col[np.flatnonzero(col)[0]]
            assert nz > 0


def test_repeated_factorization_is_bit_identical(rng):
    m = rng.standard_normal((8, 8))
    a = truncated_svd(m, 3)
    b = truncated_svd(m.copy(), 3)
    assert np.array_equal(a.u, b.u)
    assert np.array_equal(a.singular_values, b.singular_values)
    assert np.array_equal(a.vt, b.vt)


def test_reconstruction_norm_never_exceeds_input(rng):
    m = rng.standard_normal((8, 16))
    f = truncated_svd(m, 3)
    assert np.linalg.norm(f.reconstruct()) <= np.linalg.norm(m) + 1e-12


def test_noise_level_tail_is_flushed_to_exact_zero():
    # Discarding components below the factorization's own backward error
    # must report a cost of exactly 0.0, keeping lossless-path ties exact.
    column = np.array([1.0, 2.0, 3.0, 4.0])
    m = np.outer(column, np.array([0.3, 0.1, 0.7, 0.2]))
    f = truncated_svd(m, 1)
    assert f.discarded_sq == 0.0


def test_rejects_bad_inputs():
    with pytest.raises(ValueError):
        truncated_svd(np.array([[np.nan, 0.0], [0.0, 1.0]]), 1)
    with pytest.raises(ValueError):
        truncated_svd(np.eye(2), 0)
    with pytest.raises(ValueError):
        truncated_svd(np.zeros(4), 1)


# -------------------------------------------------------------- axis_transpose


def test_identity_order_is_bitwise_identical(rng):
    t = rng.standard_normal((2, 3, 4))
    assert np.array_equal(axis_transpose(t, [0, 1, 2]), t)


def test_two_axis_order_is_matrix_transpose(rng):
    t = rng.standard_normal((2, 3))
    assert np.array_equal(axis_transpose(t, [1, 0]), t.T)


def test_transpose_then_inverse_restores(rng):
    t = rng.standard_normal((2, 2, 2, 2))
    order = [2, 0, 3, 1]
    inverse = np.argsort(order)
    assert np.array_equal(axis_transpose(axis_transpose(t, order), inverse), t)


def test_transpose_rejects_non_permutation():
    with pytest.raises(ValueError):
        axis_transpose(np.zeros((2, 2)), [0, 0])
    with pytest.raises(ValueError):
        axis_transpose(np.zeros((2, 2)), [0, 1, 2])


# ---------------------------------------------------------- frobenius_distance


def test_distance_of_equal_tensors_is_zero(rng):
    t = rng.standard_normal((4, 4))
    assert frobenius_distance(t, t) == 0.0


def test_distance_between_orthonormal_basis_vectors():
    e0 = np.array([1.0, 0.0, 0.0, 0.0])
    e1 = np.array([0.0, 1.0, 0.0, 0.0])
    assert frobenius_distance(e0, e1) == pytest.approx(np.sqrt(2.0), abs=1e-15)


def test_distance_matches_summation_oracle(rng):
    a = rng.standard_normal((5, 7))
    b = rng.standard_normal((5, 7))
    assert frobenius_distance(a, b) == pytest.approx(
        frobenius_by_summation(a, b), abs=1e-12
    )


def test_distance_rejects_shape_mismatch():
    with pytest.raises(ValueError):
        frobenius_distance(np.zeros(4), np.zeros(8))


# ----------------------------------------------- column-exchange invariance


def test_singular_values_invariant_under_column_shuffle(rng):
    for _ in range(20):
        m = rng.standard_normal((8, 32))
        shuffled = m[:, rng.permutation(32)]
        s1 = np.linalg.svd(m, compute_uv=False)
        s2 = np.linalg.svd(shuffled, compute_uv=False)
        assert np.abs(s1 - s2).max() < 1e-10
