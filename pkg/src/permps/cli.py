"""Command-line interface.

Subcommands: search (encode with permutation optimization), encode (natural
order only), reconstruct (invert an .mps.json back to an image or vector),
bench (baseline vs permuted statistics over a dataset), dct (adds the
transform-then-encode column), swaps (swap network for a permutation).

Exit codes: 0 success, 2 format error, 3 degenerate input, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from .bench import rows_to_csv, run_benchmark, run_dct_compare
from .encoding import amplitude_encode, amplitude_encode_vector, decode_to_image
from .errors import DegenerateInputError, FormatError
from .formats import (
    DatasetSlice,
    read_idx_images,
    read_idx_labels,
    read_mps,
    read_pgm,
    read_vector,
    sha256_file,
    write_mps,
    write_pgm,
    write_report,
    write_vector,
)
from .linalg import frobenius_distance
from .mps import mps_svd, reconstruct
from .permutations import apply_permutation, invert_permutation
from .search import search_optimal_permutation
from .swaps import perm_to_swaps, swaps_to_text

__all__ = ["main"]


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _chi_range(text: str) -> list[int]:
    """Parse "4" to [4] and "2:5" to [2, 3, 4, 5]."""
    try:
        if ":" in text:
            lo_text, hi_text = text.split(":", 1)
            lo, hi = int(lo_text), int(hi_text)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected CHI or LO:HI, got {text!r}") from None
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"invalid bond range {text!r}")
    return list(range(lo, hi + 1))


def _load_record(path: str, fmt: str, index: int):
    if fmt == "idx":
        images = read_idx_images(path).images
        if not 0 <= index < len(images):
            raise ValueError(f"--index {index} out of range, file holds {len(images)} images")
        return amplitude_encode(images[index])
    if fmt == "pgm":
        return amplitude_encode(read_pgm(path))
    return amplitude_encode_vector(read_vector(path, fmt))


def _cmd_encode(args, do_search: bool) -> int:
    rec = _load_record(args.input, args.format, args.index)
    if do_search:
        result = search_optimal_permutation(rec.state, args.chi, recompute=args.recompute)
        perm = result.permutation
        visited, pushed, peak = (
            result.visited_nodes,
            result.pushed_nodes,
            result.frontier_peak,
        )
        wall = result.wall_time
    else:
        perm = list(range(rec.n))
        visited = pushed = peak = 0
    permuted = apply_permutation(rec.state, perm)
    start = time.perf_counter()
    mps, ledger = mps_svd(permuted, args.chi, perm=perm)
    if not do_search:
        wall = time.perf_counter() - start

    approx = reconstruct(mps)
    distance = frobenius_distance(permuted, approx)
    norm = float(np.linalg.norm(approx))
    distance_renorm = frobenius_distance(permuted, approx / norm) if norm > 0 else distance

    report = {
        "n": rec.n,
        "chi": args.chi,
        "permutation": list(perm),
        "total_sq": ledger.total_sq,
        "frobenius_distance": distance,
        "frobenius_distance_renormalized": distance_renorm,
        "per_cut": [{"cut": c.cut, "discarded_sq": c.discarded_sq} for c in ledger.per_cut],
        "visited_nodes": visited,
        "pushed_nodes": pushed,
        "frontier_peak": peak,
        "wall_ms": wall * 1e3,
        "norm_scale": rec.norm_scale,
        "orig_shape": list(rec.orig_shape),
        "input_sha256": sha256_file(args.input),
    }
    write_report(args.report, report)
    if args.mps:
        write_mps(args.mps, mps, rec.norm_scale, rec.orig_shape)

    shown = distance_renorm if args.renormalize else distance
    print(f"n={rec.n} chi={args.chi} permutation=[{','.join(map(str, perm))}]")
    print(f"total_sq={ledger.total_sq!r} frobenius_distance={shown!r}")
    if do_search:
        print(f"visited={visited} pushed={pushed} frontier_peak={peak}")
    return 0


def _cmd_reconstruct(args) -> int:
    mps, norm_scale, orig_shape = read_mps(args.mps)
    state = apply_permutation(reconstruct(mps), invert_permutation(mps.perm))
    buffer = decode_to_image(state, norm_scale, orig_shape)
    out = str(args.out)
    if out.endswith(".pgm"):
        if buffer.ndim != 2:
            raise FormatError(f"{args.mps} holds a vector; PGM export needs an image")
        write_pgm(out, buffer)
    elif out.endswith(".raw"):
        write_vector(out, buffer.ravel(), "raw")
    else:
        raise FormatError(f"unsupported output extension for {out!r} (use .pgm or .raw)")
    print(f"wrote {out}")
    return 0


def _load_slice(images_path, labels_path) -> DatasetSlice:
    slice_ = read_idx_images(images_path)
    if labels_path:
        labels = read_idx_labels(labels_path)
        slice_ = DatasetSlice(slice_.images, labels, slice_.source + (str(labels_path),))
    return slice_


def _cmd_bench(args, with_dct: bool) -> int:
    slice_ = _load_slice(args.images, args.labels)
    dataset_id = args.dataset or Path(args.images).stem
    runner = run_dct_compare if with_dct else run_benchmark
    rows = runner(
        slice_,
        args.chi,
        args.sample,
        args.seed,
        workers=args.workers,
        timing=args.timing,
        dataset_id=dataset_id,
    )
    rows_to_csv(args.out, rows, with_dct=with_dct)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _cmd_swaps(args) -> int:
    try:
        perm = [int(tok) for tok in args.perm.split(",")]
    except ValueError:
        raise FormatError(f"--perm expects comma-separated integers, got {args.perm!r}") from None
    net = perm_to_swaps(perm)
    with open(args.out, "w", encoding="ascii") as fh:
        fh.write(swaps_to_text(len(perm), net))
    print(f"{len(net)} swaps for n={len(perm)} written to {args.out}")
    return 0


def _add_encode_flags(sub, with_search: bool):
    sub.add_argument("--input", required=True, help="input data file")
    sub.add_argument("--format", required=True, choices=["idx", "pgm", "csv", "raw"])
    sub.add_argument("--index", type=int, default=0, help="image index within an IDX file")
    sub.add_argument("--chi", type=_positive_int, required=True, help="bond dimension cap")
    sub.add_argument("--renormalize", action="store_true",
                     help="print the renormalized distance as the headline number")
    sub.add_argument("--recompute", action="store_true",
                     help="recompute search residuals instead of storing them (less memory)")
    sub.add_argument("--report", required=True, help="output JSON report path")
    sub.add_argument("--mps", default=None, help="optional output .mps.json path")
    sub.set_defaults(func=lambda a: _cmd_encode(a, do_search=with_search))


def _add_bench_flags(sub, with_dct: bool):
    sub.add_argument("--images", required=True, help="IDX image file")
    sub.add_argument("--labels", default=None, help="IDX label file (enables per-class rows)")
    sub.add_argument("--chi", type=_chi_range, required=True, metavar="LO:HI")
    sub.add_argument("--sample", type=_positive_int, default=None,
                     help="images per class (default: all)")
    sub.add_argument("--seed", type=int, default=0, help="sampling shuffle seed")
    sub.add_argument("--out", required=True, help="output CSV path")
    sub.add_argument("--workers", type=_positive_int, default=1,
                     help="parallel image workers (aggregates stay deterministic)")
    sub.add_argument("--timing", action="store_true",
                     help="record wall times (makes mean_ms nondeterministic)")
    sub.add_argument("--dataset", default=None, help="dataset id column (default: file stem)")
    sub.set_defaults(func=lambda a: _cmd_bench(a, with_dct=with_dct))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permps",
        description="Matrix-product-state compression with optimal qubit-permutation search.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    _add_encode_flags(subs.add_parser("search", help="encode with permutation search"), True)
    _add_encode_flags(subs.add_parser("encode", help="encode in the natural qubit order"), False)

    rec = subs.add_parser("reconstruct", help="decode an .mps.json back to data")
    rec.add_argument("--mps", required=True, help="input .mps.json path")
    rec.add_argument("--out", required=True, help="output file (.pgm or .raw)")
    rec.set_defaults(func=_cmd_reconstruct)

    _add_bench_flags(subs.add_parser("bench", help="baseline vs permuted statistics"), False)
    _add_bench_flags(subs.add_parser("dct", help="bench plus transform-then-encode column"), True)

    sw = subs.add_parser("swaps", help="swap network realizing a permutation")
    sw.add_argument("--perm", required=True, help='comma-separated permutation, e.g. "1,0,2"')
    sw.add_argument("--out", required=True, help="output text file")
    sw.set_defaults(func=_cmd_swaps)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DegenerateInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (FormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
