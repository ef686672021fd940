"""Counter-based random streams for reproducible parallel sampling.

Every random number consumed by the sampler is a pure function of
``(master seed, stream tag, element index)``: each time step (and the
initial draw) owns a Philox stream keyed by ``(seed, tag)``, and the k-th
path reads element k of that stream.  Workers that handle a slice of
paths regenerate the full row and slice it, so the output is bit-identical
for any partitioning of paths over workers.

Normals are produced via the inverse normal CDF applied to uniforms,
which consumes exactly one 64-bit draw per element (the rejection-based
ziggurat would make stream positions data dependent).
"""
from __future__ import annotations

import numpy as np
from numpy.random import Generator, Philox
from scipy.special import ndtri

INIT_TAG = np.uint64(2 ** 63)  # stream tag reserved for initial positions

_UNIFORM_LOW = 2.0 ** -64  # keep uniforms strictly inside (0, 1)


def stream(seed: int, tag: int | np.uint64) -> Generator:
    """Generator for the Philox stream keyed by (seed, tag)."""
    key = np.array([np.uint64(seed), np.uint64(tag)], dtype=np.uint64)
    return Generator(Philox(key=key))


def stream_uniforms(seed: int, tag: int | np.uint64, n: int) -> np.ndarray:
    """n uniforms in (0, 1) from the (seed, tag) stream."""
    u = stream(seed, tag).random(n)
    return np.clip(u, _UNIFORM_LOW, 1.0 - 2 ** -53)


def stream_normals(seed: int, tag: int | np.uint64, n: int) -> np.ndarray:
    """n standard normals, inverse-CDF transform of the uniform stream."""
    return ndtri(stream_uniforms(seed, tag, n))


def step_normals(seed: int, step_index: int, n_paths: int,
                 lo: int = 0, hi: int | None = None) -> np.ndarray:
    """Normals for paths [lo, hi) at one time step.

    The full row for the step is generated and sliced, which is what makes
    the result independent of how paths are partitioned.
    """
    row = stream_normals(seed, step_index, n_paths)
    return row[lo:hi if hi is not None else n_paths]
