"""Binned conditional-moment estimators over path ensembles.

Each estimator conditions on the position at a reference step, bins it,
and averages an increment statistic per bin.  Bins with fewer samples
than the occupancy threshold are flagged unusable, never silently
reported (default 50 for exploration; assertions in the verification
suite require 500).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InputError
from .ensemble import Ensemble

MIN_COUNT_DEFAULT = 50
MIN_COUNT_ASSERT = 500


@dataclass
class ConditionalMomentTable:
    """Per-bin conditional estimate with its standard error."""

    bin_edges: np.ndarray
    counts: np.ndarray
    estimate: np.ndarray
    std_error: np.ndarray
    usable: np.ndarray
    t_index: int
    kind: str

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.bin_edges[:-1] + self.bin_edges[1:])

    def usable_where(self, min_count: int) -> np.ndarray:
        return self.counts >= min_count


def default_bins(e: Ensemble, n_bins: int = 40) -> np.ndarray:
    """Uniform bin edges spanning the generating grid's box."""
    return np.linspace(e.x_min, e.x_max, n_bins + 1)


def _as_edges(e: Ensemble, bins) -> np.ndarray:
    if bins is None:
        return default_bins(e)
    if np.isscalar(bins):
        return default_bins(e, int(bins))
    edges = np.asarray(bins, dtype=float)
    if edges.ndim != 1 or edges.size < 2 or np.any(np.diff(edges) <= 0):
        raise InputError("bins must be increasing edges or a bin count")
    return edges


def _bin_reduce(cond: np.ndarray, values: np.ndarray, edges: np.ndarray,
                min_count: int, t_index: int, kind: str) -> ConditionalMomentTable:
    nb = edges.size - 1
    idx = np.digitize(cond, edges) - 1
    ok = (idx >= 0) & (idx < nb)
    idx = idx[ok]
    vals = values[ok]
    counts = np.bincount(idx, minlength=nb)
    sums = np.bincount(idx, weights=vals, minlength=nb)
    sq = np.bincount(idx, weights=vals * vals, minlength=nb)
    with np.errstate(divide="ignore", invalid="ignore"):
        mean = sums / counts
        var = np.maximum(sq / counts - mean * mean, 0.0)
        sem = np.sqrt(var / np.maximum(counts - 1, 1))
    usable = counts >= max(min_count, 2)
    mean[~usable] = np.nan
    sem[~usable] = np.nan
    return ConditionalMomentTable(bin_edges=edges, counts=counts,
                                  estimate=mean, std_error=sem,
                                  usable=usable, t_index=t_index, kind=kind)


def estimate_forward_drift(e: Ensemble, t_j: int, bins=None,
                           min_count: int = MIN_COUNT_DEFAULT
                           ) -> ConditionalMomentTable:
    """Per-bin mean of (x(t_{j+1}) - x(t_j))/dt conditioned on x(t_j)."""
    if not 0 <= t_j < e.n_steps:
        raise InputError(f"forward drift needs a non-final step, got {t_j}")
    edges = _as_edges(e, bins)
    inc = (e.paths[:, t_j + 1] - e.paths[:, t_j]) / e.dt
    return _bin_reduce(e.paths[:, t_j], inc, edges, min_count, t_j, "forward_drift")


def estimate_backward_drift(e: Ensemble, t_j: int, bins=None,
                            min_count: int = MIN_COUNT_DEFAULT
                            ) -> ConditionalMomentTable:
    """Per-bin mean of (x(t_j) - x(t_{j-1}))/dt conditioned on x(t_j)."""
    if not 0 < t_j <= e.n_steps:
        raise InputError(f"backward drift needs a non-initial step, got {t_j}")
    edges = _as_edges(e, bins)
    inc = (e.paths[:, t_j] - e.paths[:, t_j - 1]) / e.dt
    return _bin_reduce(e.paths[:, t_j], inc, edges, min_count, t_j, "backward_drift")


def estimate_quadratic_variation(e: Ensemble, t_j: int, bins=None,
                                 min_count: int = MIN_COUNT_DEFAULT
                                 ) -> ConditionalMomentTable:
    """Per-bin mean of (x(t_{j+1}) - x(t_j))^2 / dt; tends to 2 nu as dt -> 0.

    In one dimension this is the whole quadratic-variation structure: the
    cross-coordinate matrix of the multi-dimensional theory is diagonal
    (independent noise components), so only the diagonal entry exists here.
    """
    if not 0 <= t_j < e.n_steps:
        raise InputError(f"quadratic variation needs a non-final step, got {t_j}")
    edges = _as_edges(e, bins)
    inc = e.paths[:, t_j + 1] - e.paths[:, t_j]
    return _bin_reduce(e.paths[:, t_j], inc * inc / e.dt, edges, min_count,
                       t_j, "quadratic_variation")


def estimate_mean_acceleration(e: Ensemble, t_j: int, bins=None,
                               min_count: int = MIN_COUNT_DEFAULT
                               ) -> ConditionalMomentTable:
    """Per-bin mean of the symmetric second difference over dt^2.

    This is the naive estimator ``(x(t_{j+1}) - 2 x(t_j) + x(t_{j-1}))/dt^2``
    conditioned at the middle step.  Caution: its conditional expectation
    contains the term ``(b - b*)/dt``, which diverges as dt -> 0 wherever
    the density has a gradient, and its per-sample variance grows like
    ``4 nu / dt^3``.  Only the unconditional (single-bin) average, where
    the osmotic term integrates to zero, tracks the ensemble-mean
    acceleration; see the verification suite for the quantitative story.
    """
    if not 0 < t_j < e.n_steps:
        raise InputError(f"mean acceleration needs an interior step, got {t_j}")
    edges = _as_edges(e, bins)
    sec = (e.paths[:, t_j + 1] - 2.0 * e.paths[:, t_j] + e.paths[:, t_j - 1]) / e.dt ** 2
    return _bin_reduce(e.paths[:, t_j], sec, edges, min_count, t_j,
                       "mean_acceleration")


def density_histogram(e: Ensemble, t_j: int, bins=None
                      ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Normalized position histogram with per-bin standard errors.

    Returns (edges, density, std_error); the density integrates to 1 over
    the binned range.
    """
    if not 0 <= t_j <= e.n_steps:
        raise InputError(f"step index out of range: {t_j}")
    edges = _as_edges(e, bins)
    x = e.paths[:, t_j]
    counts, _ = np.histogram(x, bins=edges)
    n = counts.sum()
    widths = np.diff(edges)
    if n == 0:
        z = np.zeros(edges.size - 1)
        return edges, z, z
    p = counts / n
    dens = p / widths
    se = np.sqrt(p * (1.0 - p) / n) / widths
    return edges, dens, se


def histogram_l1_distance(edges: np.ndarray, density: np.ndarray,
                          ref, grid=None) -> float:
    """L1 distance between a histogram and a reference density.

    ``ref`` may be a callable evaluated at bin centers or a nodal array on
    ``grid`` (bin-averaged by midpoint rule).
    """
    centers = 0.5 * (edges[:-1] + edges[1:])
    if callable(ref):
        ref_vals = ref(centers)
    else:
        if grid is None:
            raise InputError("nodal reference needs its grid")
        ref_vals = np.interp(centers, grid.x, np.asarray(ref, dtype=float))
    return float(np.sum(np.abs(density - ref_vals) * np.diff(edges)))
