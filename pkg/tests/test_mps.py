"""MPS codec: factorization, ledger accounting, reconstruction, core splitting."""

import numpy as np
import pytest

from permps.linalg import frobenius_distance
from permps.mps import Mps, MpsCore, mps_svd, param_count, reconstruct, split_cores

from conftest import random_product_state, random_state
from oracles import bipartition_sigmas

# ------------------------------------------------------------------- mps_svd


def test_uniform_state_is_exact_at_chi_one():
    state = np.full(16, 0.25)
    mps, ledger = mps_svd(state, 1)
    assert ledger.total_sq == 0.0
    assert np.allclose(reconstruct(mps), state, atol=1e-12)


def test_ghz_is_exact_at_chi_two(ghz4):
    mps, ledger = mps_svd(ghz4, 2)
    assert ledger.total_sq == 0.0
    assert [(c.left_bond, c.phys_dim, c.right_bond) for c in mps.cores] == [
        (1, 4, 2),
        (2, 2, 2),
        (2, 2, 1),
    ]
    assert np.allclose(reconstruct(mps), ghz4, atol=1e-12)


def test_ghz_at_chi_one_loses_half_the_weight(ghz4):
    # First cut sees singular values {1/sqrt2, 1/sqrt2}; one is dropped and
    # the surviving branch is a product state, so later cuts are lossless.
    mps, ledger = mps_svd(ghz4, 1)
    assert ledger.total_sq == pytest.approx(0.5, abs=1e-12)
    assert [c.discarded_sq for c in ledger.per_cut] == pytest.approx(
        [0.5, 0.0, 0.0], abs=1e-12
    )
    expected = np.zeros(16)
    expected[0] = 2.0 ** -0.5
    assert np.allclose(reconstruct(mps), expected, atol=1e-12)
    assert frobenius_distance(ghz4, reconstruct(mps)) == pytest.approx(
        2.0 ** -0.5, abs=1e-12
    )


def test_double_bell_identity_order_costs_half(double_bell):
    # The middle bipartition of the identity order has singular values
    # (1/2, 1/2, 1/2, 1/2); chi=2 discards two of them.
    sigmas = bipartition_sigmas(double_bell, [0, 1])
    assert np.allclose(sigmas, [0.5, 0.5, 0.5, 0.5], atol=1e-12)
    _, ledger = mps_svd(double_bell, 2)
    assert ledger.total_sq == pytest.approx(0.5, abs=1e-12)


def test_single_exact_core_when_state_fits(rng):
    state = random_state(rng, 2)
    mps, ledger = mps_svd(state, 2)
    assert len(mps.cores) == 1
    assert ledger.per_cut == ()
    assert ledger.total_sq == 0.0
    assert np.array_equal(reconstruct(mps), state)


def test_maximal_chi_reconstructs_exactly(rng):
    for n in range(2, 11):
        state = random_state(rng, n)
        mps, _ = mps_svd(state, 1 << (n // 2))
        assert frobenius_distance(state, reconstruct(mps)) < 1e-10


def test_cut_indices_count_qubits_left_of_each_cut(rng):
    # the sweep runs while the working vector is longer than 2 * chi, so the
    # last cut (columns <= chi) is structural and discards exactly nothing
    _, ledger = mps_svd(random_state(rng, 6), 2)
    assert [c.cut for c in ledger.per_cut] == [2, 3, 4, 5]
    assert ledger.per_cut[-1].discarded_sq == 0.0


def test_bonds_never_exceed_chi(rng):
    for n, chi in [(6, 2), (8, 3), (9, 4)]:
        mps, _ = mps_svd(random_state(rng, n), chi)
        assert mps.max_bond <= chi


def test_ledger_total_accumulates_per_cut(rng):
    _, ledger = mps_svd(random_state(rng, 8), 2)
    acc = 0.0
    for cut in ledger.per_cut:
        assert cut.discarded_sq >= 0.0
        acc += cut.discarded_sq
    assert acc == ledger.total_sq


def test_error_additivity_squared_distance_equals_ledger(rng):
    for n in range(4, 9):
        for chi in (2, 4):
            state = random_state(rng, n)
            mps, ledger = mps_svd(state, chi)
            dist_sq = frobenius_distance(state, reconstruct(mps)) ** 2
            assert dist_sq == pytest.approx(ledger.total_sq, rel=1e-9)


def test_total_error_is_monotone_in_chi(rng):
    state = random_state(rng, 8)
    totals = [mps_svd(state, chi)[1].total_sq for chi in range(1, 9)]
    for lo, hi in zip(totals[1:], totals):
        assert lo <= hi + 1e-12


def test_truncated_state_is_exactly_representable(rng):
    state = random_state(rng, 7)
    mps, _ = mps_svd(state, 2)
    approx = reconstruct(mps)
    approx /= np.linalg.norm(approx)
    _, again = mps_svd(approx, 2)
    assert again.total_sq <= 1e-10


def test_reconstruction_norm_is_bounded(rng):
    for chi in (1, 2, 3):
        mps, _ = mps_svd(random_state(rng, 7), chi)
        assert np.linalg.norm(reconstruct(mps)) <= 1.0 + 1e-12


def test_recorded_permutation_defaults_to_identity(rng):
    state = random_state(rng, 4)
    mps, _ = mps_svd(state, 2)
    assert mps.perm == (0, 1, 2, 3)
    mps2, _ = mps_svd(state, 2, perm=[2, 0, 1, 3])
    assert mps2.perm == (2, 0, 1, 3)


def test_rejects_unnormalized_or_malformed_states():
    with pytest.raises(ValueError):
        mps_svd(np.ones(16), 2)
    with pytest.raises(ValueError):
        mps_svd(np.ones(12) / np.sqrt(12.0), 2)
    with pytest.raises(ValueError):
        mps_svd(np.full(16, 0.25), 0)


# --------------------------------------------------------------- reconstruct


def test_reconstruct_rejects_bond_mismatch():
    good = MpsCore(np.zeros((1, 2, 2)))
    bad = MpsCore(np.zeros((3, 2, 1)))
    with pytest.raises(ValueError):
        Mps((good, bad), 2, (0, 1))


# --------------------------------------------------------------- split_cores


def test_split_already_per_qubit_is_unchanged(rng):
    state = random_state(rng, 5)
    mps, _ = mps_svd(state, 1)
    assert all(c.phys_dim == 2 for c in mps.cores)
    assert split_cores(mps) is mps


def test_split_grouped_cores_preserves_reconstruction(rng):
    state = random_state(rng, 4)
    mps, _ = mps_svd(state, 2)
    assert mps.cores[0].phys_dim == 4
    split = split_cores(mps)
    assert [c.phys_dim for c in split.cores] == [2, 2, 2, 2]
    assert all(c.right_bond <= 2 for c in split.cores[:-1])
    assert frobenius_distance(reconstruct(mps), reconstruct(split)) < 1e-12


def test_split_product_state_has_unit_bonds(rng):
    mps, _ = mps_svd(random_product_state(rng, 5), 4)
    split = split_cores(mps)
    assert all(c.phys_dim == 2 for c in split.cores)
    assert split.max_bond == 1


@pytest.mark.parametrize("n,chi", [(6, 2), (7, 3), (8, 5)])
def test_split_bonds_stay_within_chi(rng, n, chi):
    mps, _ = mps_svd(random_state(rng, n), chi)
    split = split_cores(mps)
    assert all(c.phys_dim == 2 for c in split.cores)
    assert split.max_bond <= chi
    assert frobenius_distance(reconstruct(mps), reconstruct(split)) < 1e-12


# --------------------------------------------------------------- param_count


def test_param_count_product_state_per_qubit(rng):
    mps, _ = mps_svd(random_product_state(rng, 4), 1)
    assert param_count(mps) == 8


def test_param_count_against_hand_count_for_fixed_bond_profile():
    # n=10 per-qubit chain with every interior bond equal to 2:
    # 1*2*2 + 8 * (2*2*2) + 2*2*1 = 72.
    cores = [MpsCore(np.zeros((1, 2, 2)))]
    cores += [MpsCore(np.zeros((2, 2, 2))) for _ in range(8)]
    cores.append(MpsCore(np.zeros((2, 2, 1))))
    mps = Mps(tuple(cores), 2, tuple(range(10)))
    assert param_count(mps) == 72


def test_param_count_single_exact_core(rng):
    state = random_state(rng, 3)
    mps, _ = mps_svd(state, 4)
    assert len(mps.cores) == 1
    assert param_count(mps) == 8
