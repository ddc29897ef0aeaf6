"""File formats: IDX datasets, PGM images, vector files, MPS and report JSON.

Readers raise FormatError for wrong magic or malformed structure and
LengthError when a header promises more payload than the file holds. Writers
are deterministic: identical inputs produce byte-identical files.
"""

from __future__ import annotations

import hashlib
import json
import struct
from dataclasses import dataclass

import numpy as np

from .errors import FormatError, LengthError
from .mps import Mps, MpsCore

__all__ = [
    "DatasetSlice",
    "read_idx_images",
    "read_idx_labels",
    "read_vector",
    "write_vector",
    "read_pgm",
    "write_pgm",
    "write_mps",
    "read_mps",
    "write_report",
    "write_csv",
    "sha256_file",
    "REPORT_FIELDS",
]

IDX_IMAGE_MAGIC = b"\x00\x00\x08\x03"
IDX_LABEL_MAGIC = b"\x00\x00\x08\x01"
RAW_VECTOR_MAGIC = b"MPSVEC01"

REPORT_FIELDS = (
    "n",
    "chi",
    "permutation",
    "total_sq",
    "frobenius_distance",
    "frobenius_distance_renormalized",
    "per_cut",
    "visited_nodes",
    "pushed_nodes",
    "frontier_peak",
    "wall_ms",
    "norm_scale",
    "orig_shape",
    "input_sha256",
)


@dataclass
class DatasetSlice:
    """Images plus optional aligned class labels and their source paths."""

    images: list[np.ndarray]
    labels: list[int] | None
    source: tuple[str, ...]

    def __post_init__(self):
        if self.labels is not None and len(self.labels) != len(self.images):
            raise ValueError(
                f"{len(self.labels)} labels do not align with {len(self.images)} images"
            )


def read_idx_images(path) -> DatasetSlice:
    """Parse an IDX image container: magic 00 00 08 03, then big-endian
    count/rows/cols and row-major 8-bit pixels."""
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < 16:
        raise LengthError(f"{path}: {len(data)} bytes is too short for an IDX image header")
    magic = data[:4]
    if magic != IDX_IMAGE_MAGIC:
        raise FormatError(
            f"{path}: bad image magic {magic.hex(' ')}, expected {IDX_IMAGE_MAGIC.hex(' ')}"
        )
    count, rows, cols = struct.unpack(">III", data[4:16])
    need = count * rows * cols
    if len(data) - 16 != need:
        raise LengthError(
            f"{path}: header promises {need} pixel bytes, file holds {len(data) - 16}"
        )
    pixels = np.frombuffer(data, dtype=np.uint8, offset=16)
    block = pixels.reshape(count, rows, cols).astype(np.float64)
    return DatasetSlice([block[i] for i in range(count)], None, (str(path),))


def read_idx_labels(path) -> list[int]:
    """Parse an IDX label container: magic 00 00 08 01, big-endian count, bytes."""
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < 8:
        raise LengthError(f"{path}: {len(data)} bytes is too short for an IDX label header")
    magic = data[:4]
    if magic != IDX_LABEL_MAGIC:
        raise FormatError(
            f"{path}: bad label magic {magic.hex(' ')}, expected {IDX_LABEL_MAGIC.hex(' ')}"
        )
    (count,) = struct.unpack(">I", data[4:8])
    if len(data) - 8 != count:
        raise LengthError(f"{path}: header promises {count} labels, file holds {len(data) - 8}")
    return list(data[8:])


def read_vector(path, format: str) -> np.ndarray:
    """Read a 1-D float vector; ``format`` is "csv" or "raw"."""
    if format == "csv":
        with open(path, "r", encoding="ascii") as fh:
            text = fh.read()
        tokens = [t for chunk in text.split(",") for t in chunk.split()]
        try:
            return np.array([float(t) for t in tokens], dtype=np.float64)
        except ValueError as exc:
            raise FormatError(f"{path}: {exc}") from exc
    if format == "raw":
        with open(path, "rb") as fh:
            data = fh.read()
        if len(data) < 12:
            raise LengthError(f"{path}: {len(data)} bytes is too short for a raw vector header")
        if data[:8] != RAW_VECTOR_MAGIC:
            raise FormatError(
                f"{path}: bad vector magic {data[:8]!r}, expected {RAW_VECTOR_MAGIC!r}"
            )
        (count,) = struct.unpack("<I", data[8:12])
        if len(data) - 12 != count * 8:
            raise LengthError(
                f"{path}: header promises {count} float64 values, file holds "
                f"{len(data) - 12} payload bytes"
            )
        return np.frombuffer(data, dtype="<f8", offset=12).astype(np.float64)
    raise ValueError(f"unknown vector format {format!r}")


def write_vector(path, values, format: str) -> None:
    values = np.asarray(values, dtype=np.float64).ravel()
    if format == "csv":
        with open(path, "w", encoding="ascii") as fh:
            fh.writelines(f"{v!r}\n" for v in values.tolist())
        return
    if format == "raw":
        with open(path, "wb") as fh:
            fh.write(RAW_VECTOR_MAGIC)
            fh.write(struct.pack("<I", values.size))
            fh.write(values.astype("<f8").tobytes())
        return
    raise ValueError(f"unknown vector format {format!r}")


def _pgm_tokens(data: bytes):
    """Yield header tokens, treating '#' to end-of-line as a comment."""
    i = 0
    while i < len(data):
        c = data[i : i + 1]
        if c.isspace():
            i += 1
            continue
        if c == b"#":
            j = data.find(b"\n", i)
            i = len(data) if j < 0 else j + 1
            continue
        j = i
        while j < len(data) and not data[j : j + 1].isspace():
            j += 1
        yield data[i:j], j
        i = j


def read_pgm(path) -> np.ndarray:
    """Read a binary PGM (P5) image with maxval <= 255 into a float array."""
    with open(path, "rb") as fh:
        data = fh.read()
    tokens = _pgm_tokens(data)
    fields = []
    for _ in range(4):
        tok = next(tokens, None)
        if tok is None:
            raise LengthError(f"{path}: incomplete PGM header")
        fields.append(tok)
    (kind, _), (w, _), (h, _), (maxval, end) = fields
    if kind != b"P5":
        raise FormatError(f"{path}: bad PGM magic {kind!r}, expected b'P5'")
    try:
        w, h, maxval = int(w), int(h), int(maxval)
    except ValueError as exc:
        raise FormatError(f"{path}: non-numeric PGM header field: {exc}") from exc
    if w < 1 or h < 1 or not 1 <= maxval <= 255:
        raise FormatError(f"{path}: unsupported PGM geometry {w}x{h} maxval {maxval}")
    start = end + 1
    if len(data) - start < w * h:
        raise LengthError(f"{path}: PGM payload holds {len(data) - start} of {w * h} bytes")
    pixels = np.frombuffer(data, dtype=np.uint8, offset=start, count=w * h)
    return pixels.reshape(h, w).astype(np.float64)


def write_pgm(path, img) -> None:
    """Write a binary PGM (P5, maxval 255); values are clamped to [0, 255]."""
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 2:
        raise ValueError(f"PGM export needs a 2-D image, got shape {img.shape}")
    pixels = np.rint(np.clip(img, 0.0, 255.0)).astype(np.uint8)
    h, w = img.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        fh.write(pixels.tobytes())


def write_mps(path, mps: Mps, norm_scale: float, orig_shape) -> None:
    obj = {
        "n": mps.n,
        "chi": mps.chi,
        "perm": list(mps.perm),
        "norm_scale": float(norm_scale),
        "orig_shape": [int(v) for v in orig_shape],
        "cores": [
            {
                "left": c.left_bond,
                "phys": c.phys_dim,
                "right": c.right_bond,
                "data": c.data.ravel().tolist(),
            }
            for c in mps.cores
        ],
    }
    with open(path, "w", encoding="ascii") as fh:
        json.dump(obj, fh)
        fh.write("\n")


def read_mps(path) -> tuple[Mps, float, tuple[int, ...]]:
    with open(path, "r", encoding="ascii") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON: {exc}") from exc
    try:
        cores = []
        for entry in obj["cores"]:
            data = np.asarray(entry["data"], dtype=np.float64)
            shape = (int(entry["left"]), int(entry["phys"]), int(entry["right"]))
            if data.size != shape[0] * shape[1] * shape[2]:
                raise LengthError(
                    f"{path}: core data holds {data.size} values, shape {shape} "
                    f"needs {shape[0] * shape[1] * shape[2]}"
                )
            cores.append(MpsCore(data.reshape(shape)))
        mps = Mps(tuple(cores), int(obj["chi"]), tuple(obj["perm"]))
        if mps.n != int(obj["n"]):
            raise FormatError(f"{path}: field n={obj['n']} but cores span {mps.n} qubits")
        norm_scale = float(obj["norm_scale"])
        orig_shape = tuple(int(v) for v in obj["orig_shape"])
    except LengthError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"{path}: malformed MPS document: {exc}") from exc
    return mps, norm_scale, orig_shape


def write_report(path, report: dict) -> None:
    """Write the run report with its fixed key order."""
    missing = [k for k in REPORT_FIELDS if k not in report]
    if missing:
        raise ValueError(f"report is missing fields: {missing}")
    ordered = {k: report[k] for k in REPORT_FIELDS}
    with open(path, "w", encoding="ascii") as fh:
        json.dump(ordered, fh, indent=2)
        fh.write("\n")


def format_cell(value) -> str:
    """Deterministic CSV cell: floats via repr (shortest round-trip form)."""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(path, header: list[str], rows: list[list]) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(format_cell(v) for v in row) + "\n")


def sha256_file(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()
