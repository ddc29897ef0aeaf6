"""Matrix-product-state codec: sequential truncated-SVD factorization and contraction.

The factorization sweeps left to right over the qubits of a state vector. The
first SVD groups the leading x = floor(log2(chi)) + 1 qubits into one core
(their joint extent 2^x never exceeds 2*chi); every later SVD peels a single
qubit. Each cut keeps at most chi singular triplets and the squared weight of
the discarded tail is recorded per cut. Squared cut errors add exactly because
every kept factor is an isometry, so the ledger total equals the squared
Frobenius distance between the input and the contracted approximation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import _fix_signs, truncated_svd
from .permutations import check_permutation, identity_permutation
from .validation import check_bond_dimension, check_state_vector

__all__ = [
    "MpsCore",
    "Mps",
    "CutRecord",
    "TruncationLedger",
    "mps_svd",
    "reconstruct",
    "split_cores",
    "param_count",
]


@dataclass(frozen=True)
class MpsCore:
    """One local tensor, stored as an array of shape (left_bond, phys_dim, right_bond)."""

    data: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.data, dtype=np.float64)
        if d.ndim != 3:
            raise ValueError(f"core must have 3 axes, got shape {d.shape}")
        phys = d.shape[1]
        if phys < 2 or phys & (phys - 1):
            raise ValueError(f"physical dimension {phys} is not a power of two >= 2")
        object.__setattr__(self, "data", d)

    @property
    def left_bond(self) -> int:
        return self.data.shape[0]

    @property
    def phys_dim(self) -> int:
        return self.data.shape[1]

    @property
    def right_bond(self) -> int:
        return self.data.shape[2]

    @property
    def num_qubits(self) -> int:
        return self.phys_dim.bit_length() - 1


@dataclass(frozen=True)
class Mps:
    """Chain of cores plus the bond cap and qubit order it was built under.

    ``perm[j]`` names the original qubit carried at position ``j`` of the
    chain; it is the identity when no reordering was applied.
    """

    cores: tuple[MpsCore, ...]
    chi: int
    perm: tuple[int, ...]

    def __post_init__(self):
        cores = tuple(self.cores)
        if not cores:
            raise ValueError("Mps needs at least one core")
        if cores[0].left_bond != 1 or cores[-1].right_bond != 1:
            raise ValueError("boundary bonds must be 1")
        for a, b in zip(cores, cores[1:]):
            if a.right_bond != b.left_bond:
                raise ValueError(
                    f"bond mismatch: {a.right_bond} != {b.left_bond} between adjacent cores"
                )
        object.__setattr__(self, "cores", cores)
        object.__setattr__(self, "chi", check_bond_dimension(self.chi))
        object.__setattr__(self, "perm", tuple(check_permutation(self.perm, self.n)))

    @property
    def n(self) -> int:
        return sum(c.num_qubits for c in self.cores)

    @property
    def max_bond(self) -> int:
        return max(c.right_bond for c in self.cores[:-1]) if len(self.cores) > 1 else 1


@dataclass(frozen=True)
class CutRecord:
    """Outcome of one truncation: ``cut`` qubits sit left of the bipartition."""

    cut: int
    kept_sigma: np.ndarray
    discarded_sq: float


@dataclass(frozen=True)
class TruncationLedger:
    """Per-cut truncation records; ``total_sq`` accumulates them left to right."""

    per_cut: tuple[CutRecord, ...]
    total_sq: float

    @property
    def num_cuts(self) -> int:
        return len(self.per_cut)


def mps_svd(state, chi: int, *, perm=None) -> tuple[Mps, TruncationLedger]:
    """Factor a normalized state vector into an MPS with bonds capped at ``chi``.

    Sweeps left to right: the first reshape has row extent
    2^(floor(log2 chi) + 1) and groups that many qubits into the first core;
    each later reshape has row extent 2 * current_bond and peels one qubit.
    Every SVD keeps min(rows, cols, chi) triplets. The sweep stops once the
    working vector has length <= 2 * chi; the remainder becomes the last core
    and carries the surviving norm. When the whole state fits one core
    (2^n <= 2 * chi) no cut is performed and the ledger is empty.

    ``perm`` only records the qubit order the caller already applied; it does
    not reorder anything here.
    """
    state, n = check_state_vector(state)
    chi = check_bond_dimension(chi)
    perm = identity_permutation(n) if perm is None else check_permutation(perm, n)

    if state.size <= 2 * chi:
        core = MpsCore(state.reshape(1, state.size, 1).copy())
        return Mps((core,), chi, tuple(perm)), TruncationLedger((), 0.0)

    cores: list[MpsCore] = []
    cuts: list[CutRecord] = []
    total = 0.0
    a = state
    left = 1
    fixed = 0
    while a.size > 2 * chi:
        step = chi.bit_length() if fixed == 0 else 1
        f = truncated_svd(a.reshape(left * (1 << step), -1), chi)
        cores.append(MpsCore(f.u.reshape(left, 1 << step, f.rank)))
        fixed += step
        cuts.append(CutRecord(fixed, f.singular_values, f.discarded_sq))
        total += f.discarded_sq
        a = (f.singular_values[:, None] * f.vt).ravel()
        left = f.rank
    cores.append(MpsCore(a.reshape(left, -1, 1)))
    return Mps(tuple(cores), chi, tuple(perm)), TruncationLedger(tuple(cuts), total)


def reconstruct(mps: Mps) -> np.ndarray:
    """Contract the cores left to right into a length-2^n vector.

    The result lives in the qubit order the MPS was built under and is NOT
    renormalized: truncation shortens the vector, and error reports compare
    against this raw contraction. Callers wanting a unit vector divide by the
    norm themselves.
    """
    v = mps.cores[0].data.reshape(mps.cores[0].phys_dim, -1)
    for core in mps.cores[1:]:
        v = v @ core.data.reshape(core.left_bond, -1)
        v = v.reshape(-1, core.right_bond)
    return v.ravel()


def _rank_svd(m: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Exact SVD truncated at numerical rank (floor 1), signs fixed."""
    u, s, vt = np.linalg.svd(m, full_matrices=False)
    tol = s[0] * max(m.shape) * np.finfo(np.float64).eps if s.size else 0.0
    rank = max(int(np.count_nonzero(s > tol)), 1)
    u = np.ascontiguousarray(u[:, :rank])
    vt = np.ascontiguousarray(vt[:rank])
    _fix_signs(u, vt)
    return u, s[:rank], vt


def split_cores(mps: Mps) -> Mps:
    """Rewrite every multi-qubit core as a chain of phys_dim-2 cores.

    A right-to-left exact-SVD sweep first trims every bond to its numerical
    rank; this drops directions the rest of the chain gives zero weight
    (truncation to chi keeps zero singular values, whose basis vectors would
    otherwise read as genuine rank when a grouped core is split in
    isolation). Grouped cores are then split left to right with further
    exact rank-revealing SVDs. Both stages truncate at numerical rank only,
    so the reconstruction is preserved to rounding error and the new internal
    bonds never exceed chi. An already per-qubit MPS is returned unchanged.
    """
    if all(c.phys_dim == 2 for c in mps.cores):
        return mps
    arrays = [c.data for c in mps.cores]
    for i in range(len(arrays) - 1, 0, -1):
        l, p, r = arrays[i].shape
        u, s, vt = _rank_svd(arrays[i].reshape(l, p * r))
        arrays[i] = vt.reshape(-1, p, r)
        arrays[i - 1] = np.tensordot(arrays[i - 1], u * s, axes=(2, 0))
    out: list[MpsCore] = []
    for w3 in arrays:
        left, phys, right = w3.shape
        if phys == 2:
            out.append(MpsCore(w3))
            continue
        w = w3.reshape(left, -1)
        for _ in range(phys.bit_length() - 2):
            u, s, vt = _rank_svd(w.reshape(left * 2, -1))
            out.append(MpsCore(u.reshape(left, 2, u.shape[1])))
            w = s[:, None] * vt
            left = u.shape[1]
        out.append(MpsCore(w.reshape(left, 2, right)))
    return Mps(tuple(out), mps.chi, mps.perm)


def param_count(mps: Mps) -> int:
    """Total stored entries: sum of left_bond * phys_dim * right_bond over cores."""
    return sum(c.data.size for c in mps.cores)
