"""Swap-network synthesis for undoing a qubit permutation on hardware.

A permutation decomposes into disjoint cycles; a cycle of length L needs L - 1
transpositions, so the network size is n minus the number of cycles (fixed
points count as 1-cycles), which is the minimum possible.
"""

from __future__ import annotations

from .permutations import check_permutation

__all__ = ["perm_to_swaps", "apply_swap_network", "gate_arity", "swaps_to_text"]


def perm_to_swaps(perm) -> list[tuple[int, int]]:
    """Transpositions that turn the identity arrangement into ``perm``.

    Deterministic: cycles are walked from their smallest member following
    j -> perm[j], and each cycle (c0 c1 ... c_{L-1}) emits the position swaps
    (c0, c1), (c1, c2), ... in that order.
    """
    p = check_permutation(perm)
    swaps: list[tuple[int, int]] = []
    seen = [False] * len(p)
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cycle = [start]
        seen[start] = True
        j = p[start]
        while j != start:
            cycle.append(j)
            seen[j] = True
            j = p[j]
        swaps.extend(zip(cycle, cycle[1:]))
    return swaps


def apply_swap_network(arrangement, swaps) -> list[int]:
    """Apply position transpositions in order to a copy of ``arrangement``."""
    out = [int(v) for v in arrangement]
    for i, j in swaps:
        i, j = int(i), int(j)
        if not (0 <= i < len(out) and 0 <= j < len(out)):
            raise ValueError(f"swap ({i}, {j}) out of range for {len(out)} positions")
        if i == j:
            raise ValueError(f"swap ({i}, {j}) must name two distinct positions")
        out[i], out[j] = out[j], out[i]
    return out


def gate_arity(chi: int) -> int:
    """Arity of the multi-qubit blocks needed to prepare a bond-``chi`` MPS.

    A core of bond dimension chi acts on floor(log2 chi) + 1 qubits.
    """
    chi = int(chi)
    if chi < 1:
        raise ValueError(f"chi must be >= 1, got {chi}")
    return chi.bit_length()


def swaps_to_text(n: int, swaps) -> str:
    """Export format: header line "QUBITS n", then one "SWAP i j" per line."""
    lines = [f"QUBITS {int(n)}"]
    lines.extend(f"SWAP {int(i)} {int(j)}" for i, j in swaps)
    return "\n".join(lines) + "\n"
