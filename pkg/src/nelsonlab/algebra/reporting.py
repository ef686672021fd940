"""Residual reports and matrix export for offline inspection."""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from ..grids import Grid1D
from ..params import DiffusionParams
from .operators import OperatorMatrix


def residual_report(identity_name: str, grid: Grid1D,
                    p: DiffusionParams | None,
                    max_interior_residual: float, tolerance: float,
                    notes: str = "") -> dict:
    """One identity-check record: who was tested, on what, how it went."""
    rec = {
        "identity_name": identity_name,
        "grid_n": grid.n,
        "dx": grid.dx,
        "nu": None if p is None else [p.nu.real, p.nu.imag],
        "max_interior_residual": float(max_interior_residual),
        "tolerance": float(tolerance),
        "pass": bool(max_interior_residual < tolerance),
    }
    if notes:
        rec["notes"] = notes
    return rec


def write_residual_reports(path: str | Path, reports: list[dict]) -> Path:
    path = Path(path)
    path.write_text(json.dumps(reports, indent=2, sort_keys=True) + "\n")
    return path


def export_operator_csv(path: str | Path, op: OperatorMatrix) -> Path:
    """Row-major dump, complex entries as two columns (re, im)."""
    path = Path(path)
    m = np.asarray(op.matrix)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["row", "col", "re", "im"])
        im = m.imag if np.iscomplexobj(m) else np.zeros_like(m, dtype=float)
        re = m.real if np.iscomplexobj(m) else m
        for i in range(m.shape[0]):
            for j in range(m.shape[1]):
                w.writerow([i, j, repr(float(re[i, j])), repr(float(im[i, j]))])
    return path
