"""Shared fixtures: analytic states, random-state factories, dataset files."""

from __future__ import annotations

import struct

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def ghz4():
    """(e0 + e15)/sqrt(2): Schmidt rank 2 across every cut."""
    state = np.zeros(16)
    state[0] = state[15] = 2.0 ** -0.5
    return state


@pytest.fixture
def double_bell():
    """Pairs (0,2) and (1,3): amplitudes 1/2 at indices 0, 5, 10, 15.

    Identity-order cuts see the maximally mixed middle bipartition
    (singular values 1/2, 1/2, 1/2, 1/2); grouping {0,2} first makes the
    state a product of two Bell pairs and every cut exact.
    """
    state = np.zeros(16)
    state[[0, 5, 10, 15]] = 0.5
    return state


def random_state(rng, n: int) -> np.ndarray:
    state = rng.standard_normal(1 << n)
    return state / np.linalg.norm(state)


def random_product_state(rng, n: int) -> np.ndarray:
    state = np.array([1.0])
    for _ in range(n):
        leg = rng.random(2) + 0.1
        state = np.kron(state, leg / np.linalg.norm(leg))
    return state


@pytest.fixture
def structured_image(rng):
    """A 32x32 low-rank image: smooth gradients plus a bright block."""
    u = np.linspace(0.2, 1.0, 32)[:, None]
    v = np.linspace(1.0, 0.3, 32)[None, :]
    img = 180.0 * u @ v
    img[8:20, 8:20] += 60.0
    return np.rint(img)


def write_idx_images(path, images: np.ndarray) -> None:
    count, rows, cols = images.shape
    with open(path, "wb") as fh:
        fh.write(b"\x00\x00\x08\x03")
        fh.write(struct.pack(">III", count, rows, cols))
        fh.write(images.astype(np.uint8).tobytes())


def write_idx_labels(path, labels) -> None:
    with open(path, "wb") as fh:
        fh.write(b"\x00\x00\x08\x01")
        fh.write(struct.pack(">I", len(labels)))
        fh.write(bytes(int(v) for v in labels))


@pytest.fixture
def idx_dataset(tmp_path):
    """Six low-rank 8x8 images with two classes, as IDX files on disk."""
    gen = np.random.default_rng(99)
    images = np.zeros((6, 8, 8))
    for i in range(6):
        u = gen.random((8, 1))
        v = gen.random((1, 8))
        images[i] = np.clip(200.0 * u @ v + 20.0, 0, 255)
    images = np.rint(images)
    labels = [0, 1, 0, 1, 0, 1]
    img_path = tmp_path / "imgs.idx"
    lbl_path = tmp_path / "labels.idx"
    write_idx_images(img_path, images)
    write_idx_labels(lbl_path, labels)
    return img_path, lbl_path, images, labels
