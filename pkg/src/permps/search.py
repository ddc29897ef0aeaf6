"""Uniform-cost search for the qubit order that minimizes MPS truncation error.

A candidate ordering is evaluated by the same cost model as the factorization
sweep: one grouped cut over the first x = floor(log2 chi) + 1 qubits, then one
cut per additionally fixed qubit. Singular values of a matricization do not
depend on the order of the axes inside the row block or inside the column
block (column exchanges are orthogonal), so only the leading x qubits as a
SET, the order of the middle qubits, and nothing about the trailing x qubits
affect the total cost. The search space is therefore seeded with the C(n, x)
prefix combinations and extended one qubit at a time; a node whose fixed count
reaches n - x is complete because the final x positions are cost-free.

Edge costs are nonnegative, so popping nodes in cost order guarantees the
first terminal pop is globally optimal.
"""

from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .linalg import truncated_svd
from .mps import mps_svd
from .permutations import identity_permutation
from .validation import check_bond_dimension, check_state_vector

__all__ = [
    "Residual",
    "SearchNode",
    "SearchResult",
    "prefix_size",
    "partial_truncation_error",
    "extend_node",
    "node_to_permutation",
    "search_optimal_permutation",
]


class Residual(NamedTuple):
    """What remains after the cuts along a partial ordering.

    ``matrix`` has shape (r, 2^m) with r <= chi: rows index the kept bond,
    columns index the m still-unfixed qubits listed ascending in ``axes``.
    """

    matrix: np.ndarray
    axes: tuple[int, ...]


@dataclass(frozen=True)
class SearchNode:
    """A partial qubit ordering: leading combination, then fixed extensions."""

    prefix: tuple[int, ...]
    extension: tuple[int, ...]
    cost: float
    residual: Residual
    chi: int

    @property
    def remaining_axes(self) -> tuple[int, ...]:
        return self.residual.axes

    @property
    def fixed_count(self) -> int:
        return len(self.prefix) + len(self.extension)

    @property
    def n(self) -> int:
        return self.fixed_count + len(self.residual.axes)

    def is_terminal(self) -> bool:
        return self.fixed_count >= self.n - len(self.prefix)


@dataclass(frozen=True)
class SearchResult:
    permutation: list[int]
    total_sq: float
    visited_nodes: int
    pushed_nodes: int
    frontier_peak: int
    seeded_nodes: int
    wall_time: float


def prefix_size(n: int, chi: int) -> int:
    """Number of qubits grouped into the leading combination."""
    return min(chi.bit_length(), n - 1)


def _prefix_cut(state: np.ndarray, n: int, prefix: tuple[int, ...], chi: int):
    """Cut the state across prefix | rest; rows carry the prefix qubits ascending."""
    rest = tuple(q for q in range(n) if q not in prefix)
    t = state.reshape([2] * n).transpose(prefix + rest)
    f = truncated_svd(t.reshape(1 << len(prefix), -1), chi)
    return f.discarded_sq, Residual(f.singular_values[:, None] * f.vt, rest)


def _peel(residual: Residual, j: int, chi: int):
    """Move remaining qubit ``axes[j]`` from the column block into the rows and cut."""
    matrix, axes = residual
    r = matrix.shape[0]
    view = matrix.reshape((r,) + (2,) * len(axes))
    view = np.moveaxis(view, 1 + j, 1)
    f = truncated_svd(view.reshape(2 * r, -1), chi)
    rest = axes[:j] + axes[j + 1 :]
    return f.discarded_sq, Residual(f.singular_values[:, None] * f.vt, rest)


def partial_truncation_error(state, prefix_set, chi: int) -> tuple[float, Residual]:
    """Cost of the grouped first cut for one prefix combination.

    ``prefix_set`` must hold exactly min(floor(log2 chi) + 1, n - 1) distinct
    qubit indices. The cost and the residual's singular structure depend on
    the set only, not on any internal order.
    """
    state, n = check_state_vector(state)
    chi = check_bond_dimension(chi)
    prefix = tuple(sorted(int(q) for q in prefix_set))
    x = prefix_size(n, chi)
    if len(set(prefix)) != len(prefix) or len(prefix) != x:
        raise ValueError(f"prefix must be {x} distinct qubits, got {prefix}")
    if any(q < 0 or q >= n for q in prefix):
        raise ValueError(f"prefix {prefix} out of range for n={n}")
    return _prefix_cut(state, n, prefix, chi)


def extend_node(node: SearchNode, q: int) -> SearchNode:
    """Fix qubit ``q`` as the next position and add the cut's cost.

    The parent is unmodified; the child's residual has ``q`` merged out of the
    column block.
    """
    q = int(q)
    if q not in node.residual.axes:
        raise ValueError(f"qubit {q} is not free in this node")
    inc, residual = _peel(node.residual, node.residual.axes.index(q), node.chi)
    return SearchNode(node.prefix, node.extension + (q,), node.cost + inc, residual, node.chi)


def node_to_permutation(node: SearchNode) -> list[int]:
    """Complete a terminal node: prefix ascending, extensions, rest ascending.

    The trailing block is cost-neutral in any order; ascending is the fixed
    deterministic choice.
    """
    if not node.is_terminal():
        raise ValueError("node is not terminal")
    return list(node.prefix) + list(node.extension) + sorted(node.residual.axes)


def search_optimal_permutation(
    state,
    chi: int,
    *,
    recompute: bool = False,
    cost_bound: float | None = None,
) -> SearchResult:
    """Best-first search over qubit orderings, minimizing total truncation error.

    Returns the first terminal node popped from the min-heap, which is optimal
    because every edge cost is nonnegative. Ties are broken deterministically:
    lower cost, then deeper node, then lexicographically smallest
    (prefix, extension); on an all-zero-cost state this yields the identity.

    ``recompute=True`` stores no residual matrices in the frontier and replays
    each popped node's cuts from the state instead, trading CPU for memory on
    large n. ``cost_bound`` optionally drops any node whose accumulated cost
    strictly exceeds the bound (e.g. a known ordering's total); the default
    keeps the search exhaustive.

    When chi >= 2^floor(n/2) every bipartition fits within the bond cap, so
    the identity order is returned immediately with nothing expanded.
    """
    state, n = check_state_vector(state)
    chi = check_bond_dimension(chi)
    start = time.perf_counter()

    if chi >= 1 << (n // 2):
        total = mps_svd(state, chi)[1].total_sq
        return SearchResult(
            identity_permutation(n), total, 0, 0, 0, 0, time.perf_counter() - start
        )

    x = prefix_size(n, chi)
    target = n - x
    pushed = 0
    visited = 0
    seeded = 0
    peak = 0

    # Heap entries: (cost, -fixed_count, prefix, extension, residual or None).
    # (prefix, extension) is unique per node, so comparison never reaches the
    # residual payload.
    heap: list = []
    for combo in itertools.combinations(range(n), x):
        cost, residual = _prefix_cut(state, n, combo, chi)
        if cost_bound is not None and cost > cost_bound:
            continue
        heapq.heappush(heap, (cost, -x, combo, (), None if recompute else residual))
        pushed += 1
        seeded += 1
    peak = len(heap)

    while heap:
        cost, neg_fixed, prefix, extension, residual = heapq.heappop(heap)
        visited += 1
        if -neg_fixed >= target:
            perm = list(prefix) + list(extension)
            perm += sorted(q for q in range(n) if q not in set(perm))
            return SearchResult(
                perm, cost, visited, pushed, peak, seeded, time.perf_counter() - start
            )
        if residual is None:
            _, residual = _prefix_cut(state, n, prefix, chi)
            for q in extension:
                _, residual = _peel(residual, residual.axes.index(q), chi)
        for j, q in enumerate(residual.axes):
            inc, child = _peel(residual, j, chi)
            child_cost = cost + inc
            if cost_bound is not None and child_cost > cost_bound:
                continue
            heapq.heappush(
                heap,
                (
                    child_cost,
                    neg_fixed - 1,
                    prefix,
                    extension + (q,),
                    None if recompute else child,
                ),
            )
            pushed += 1
        peak = max(peak, len(heap))
    raise RuntimeError("cost bound pruned every path before a terminal node was reached")
