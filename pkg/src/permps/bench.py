"""Benchmark harness: per-image compression error with and without reordering.

Every sampled image is amplitude-encoded once; for each requested bond
dimension the harness runs the plain left-to-right factorization (the
baseline) and the permutation search, then aggregates Frobenius distances,
visited-node counts and wall times per class and overall. Squared cut errors
add exactly, so each distance is the square root of the ledger total. The
baseline follows the identity path of the search's own cost model, which makes
the permuted error never worse than the baseline on every single image.

Results are deterministic for a fixed seed: sampling shuffles indices with a
seeded generator, per-image work is pure, and aggregation always runs in
ascending image-index order regardless of the worker count. Wall times are
recorded only when ``timing`` is set (they are the one nondeterministic
quantity; the default keeps output files byte-reproducible).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import sqrt

import numpy as np

from .dct import dct2
from .encoding import amplitude_encode, amplitude_encode_vector
from .formats import DatasetSlice, write_csv
from .mps import mps_svd
from .search import search_optimal_permutation

__all__ = ["BenchRow", "BENCH_COLUMNS", "run_benchmark", "run_dct_compare", "rows_to_csv"]

BENCH_COLUMNS = [
    "dataset",
    "class",
    "chi",
    "n",
    "samples",
    "mean_std_err",
    "std_std_err",
    "mean_perm_err",
    "std_perm_err",
    "mean_visited",
    "mean_ms",
]


@dataclass(frozen=True)
class BenchRow:
    """Aggregate statistics for one (class, chi) cell; class "all" spans the sample."""

    dataset: str
    class_id: str
    chi: int
    n: int
    samples: int
    mean_std_err: float
    std_std_err: float
    mean_perm_err: float
    std_perm_err: float
    mean_visited: float
    mean_ms: float
    mean_dct_err: float | None = None


@dataclass(frozen=True)
class _ImageMetrics:
    n: int
    std_err: float
    perm_err: float
    visited: int
    ms: float
    dct_err: float | None


def _measure(img: np.ndarray, chis, timing: bool, with_dct: bool) -> dict[int, _ImageMetrics]:
    rec = amplitude_encode(img)
    out = {}
    for chi in chis:
        _, ledger = mps_svd(rec.state, chi)
        result = search_optimal_permutation(rec.state, chi)
        dct_err = None
        if with_dct:
            coeffs = amplitude_encode_vector(dct2(img).ravel())
            dct_err = sqrt(mps_svd(coeffs.state, chi)[1].total_sq)
        out[chi] = _ImageMetrics(
            rec.n,
            sqrt(ledger.total_sq),
            sqrt(result.total_sq),
            result.visited_nodes,
            result.wall_time * 1e3 if timing else 0.0,
            dct_err,
        )
    return out


def _select(slice_: DatasetSlice, sample, seed) -> tuple[dict[str, list[int]], list[int]]:
    """Per-class index groups plus the overall sample, both in ascending order.

    Selection takes the first ``sample`` images of each class along a seeded
    shuffle of the dataset order (all images when ``sample`` is None).
    """
    count = len(slice_.images)
    order = np.random.default_rng(seed).permutation(count).tolist()
    if slice_.labels is None:
        chosen = order if sample is None else order[:sample]
        return {}, sorted(chosen)
    groups = {}
    for label in sorted(set(slice_.labels)):
        along = [i for i in order if slice_.labels[i] == label]
        groups[str(label)] = sorted(along if sample is None else along[:sample])
    overall = sorted(i for idxs in groups.values() for i in idxs)
    return groups, overall


def _mean_std(values: list[float]) -> tuple[float, float]:
    arr = np.asarray(values, dtype=np.float64)
    return float(arr.mean()), float(arr.std())


def _aggregate(dataset, class_id, chi, idxs, metrics, with_dct) -> BenchRow:
    cells = [metrics[i][chi] for i in idxs]
    mean_std, std_std = _mean_std([c.std_err for c in cells])
    mean_perm, std_perm = _mean_std([c.perm_err for c in cells])
    dct_mean = _mean_std([c.dct_err for c in cells])[0] if with_dct else None
    return BenchRow(
        dataset,
        class_id,
        chi,
        cells[0].n,
        len(cells),
        mean_std,
        std_std,
        mean_perm,
        std_perm,
        float(np.mean([c.visited for c in cells])),
        float(np.mean([c.ms for c in cells])),
        dct_mean,
    )


def _run(slice_, chis, sample, seed, workers, timing, dataset_id, with_dct) -> list[BenchRow]:
    if not slice_.images:
        raise ValueError("empty dataset slice")
    chis = [int(c) for c in chis]
    groups, overall = _select(slice_, sample, seed)
    if not overall:
        raise ValueError("sampling selected no images")

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {i: pool.submit(_measure, slice_.images[i], chis, timing, with_dct)
                       for i in overall}
            metrics = {i: f.result() for i, f in futures.items()}
    else:
        metrics = {i: _measure(slice_.images[i], chis, timing, with_dct) for i in overall}

    rows = []
    for chi in chis:
        rows.append(_aggregate(dataset_id, "all", chi, overall, metrics, with_dct))
        for class_id in sorted(groups):
            rows.append(_aggregate(dataset_id, class_id, chi, groups[class_id], metrics, with_dct))
    return rows


def run_benchmark(
    slice_: DatasetSlice,
    chis,
    sample: int | None,
    seed: int,
    *,
    workers: int = 1,
    timing: bool = False,
    dataset_id: str = "dataset",
) -> list[BenchRow]:
    """Baseline-vs-permuted error statistics per class and overall."""
    return _run(slice_, chis, sample, seed, workers, timing, dataset_id, with_dct=False)


def run_dct_compare(
    slice_: DatasetSlice,
    chis,
    sample: int | None = None,
    seed: int = 0,
    *,
    workers: int = 1,
    timing: bool = False,
    dataset_id: str = "dataset",
) -> list[BenchRow]:
    """Benchmark rows extended with the transform-then-encode error column.

    The extra pipeline is dct2, flatten, amplitude-encode, factorize in the
    given order (no search). Coefficient-domain distances equal image-domain
    distances because the transform is an isometry.
    """
    return _run(slice_, chis, sample, seed, workers, timing, dataset_id, with_dct=True)


def rows_to_csv(path, rows: list[BenchRow], *, with_dct: bool = False) -> None:
    """Write rows with the fixed column layout (plus mean_dct_err when asked)."""
    header = BENCH_COLUMNS + (["mean_dct_err"] if with_dct else [])
    body = []
    for row in rows:
        cells = [
            row.dataset,
            row.class_id,
            row.chi,
            row.n,
            row.samples,
            row.mean_std_err,
            row.std_std_err,
            row.mean_perm_err,
            row.std_perm_err,
            row.mean_visited,
            row.mean_ms,
        ]
        if with_dct:
            cells.append(row.mean_dct_err)
        body.append(cells)
    write_csv(path, header, body)
