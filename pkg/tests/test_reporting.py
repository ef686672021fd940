import json

import numpy as np

from nelsonlab import Grid1D, diffusion_params
from nelsonlab.algebra import (build_space, export_operator_csv,
                               position_operator, residual_report,
                               write_residual_reports)


def test_residual_report_fields(tmp_path):
    g = Grid1D(-8.0, 8.0, 1025)
    p = diffusion_params("nu", 0.5)
    rec = residual_report("commutator_velocity_position_vs_2nuA", g, p,
                          0.0, 1e-12)
    assert rec["pass"] is True
    assert rec["grid_n"] == 1025 and rec["dx"] == g.dx
    assert rec["nu"] == [0.5, 0.0]
    path = write_residual_reports(tmp_path / "residuals.json", [rec])
    back = json.loads(path.read_text())
    assert back[0]["identity_name"] == "commutator_velocity_position_vs_2nuA"
    assert back[0]["max_interior_residual"] == 0.0


def test_operator_csv_roundtrip(tmp_path):
    g = Grid1D(0.0, 1.0, 3)
    sp = build_space(g, "L2")
    X = position_operator(sp)
    path = export_operator_csv(tmp_path / "x.csv", X)
    lines = path.read_text().splitlines()
    assert lines[0] == "row,col,re,im"
    assert len(lines) == 1 + 9
    vals = [line.split(",") for line in lines[1:]]
    diag = [float(v[2]) for v in vals if v[0] == v[1]]
    assert np.allclose(diag, g.x)
    assert all(float(v[3]) == 0.0 for v in vals)
