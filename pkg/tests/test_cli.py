import json

import pytest

from nelsonlab.harness.cli import build_parser, main


def test_parser_subcommands():
    ap = build_parser()
    args = ap.parse_args(["verify", "--level", "fast", "--paths", "100"])
    assert args.level == "fast" and args.paths == 100
    args = ap.parse_args(["correlate", "--mode", "minus", "--s", "0.1,0.2"])
    assert args.mode == "minus"
    with pytest.raises(SystemExit):
        ap.parse_args(["verify", "--level", "medium"])


def test_correlate_writes_curve(tmp_path, capsys):
    rc = main(["correlate", "--mode", "minus", "--s", "0.25,0.5",
               "--grid-n", "401", "--grid-x-max", "8.0",
               "--out", str(tmp_path)])
    assert rc == 0
    out = capsys.readouterr().out
    assert "matrix element" in out
    lines = (tmp_path / "correlation_curve.csv").read_text().splitlines()
    assert lines[0] == "s,matrix_element_re,matrix_element_im"
    assert len(lines) == 3


def test_sample_and_report(tmp_path, capsys):
    rc = main(["sample", "--paths", "500", "--steps", "20",
               "--nu", "0.5", "--out", str(tmp_path)])
    assert rc == 0
    assert (tmp_path / "ensemble.bin").exists()
    assert (tmp_path / "forward_drift.csv").exists()

    cfg = {"checks": ["equal_time_value"], "sde": {"n_paths": 1000}}
    cfgpath = tmp_path / "cfg.json"
    cfgpath.write_text(json.dumps(cfg))
    rc = main(["report", "--config", str(cfgpath), "--out", str(tmp_path)])
    assert rc == 0
    rc = main(["report", "--path", str(tmp_path / "report.json")])
    assert rc == 0
    out = capsys.readouterr().out
    assert "equal_time_value" in out


def test_solve_exports_densities(tmp_path):
    rc = main(["solve", "--state", "ho_coherent", "--x0", "1.0",
               "--grid-n", "401", "--dt", "0.002", "--steps", "100",
               "--snapshots", "4", "--out", str(tmp_path)])
    assert rc == 0
    files = sorted((tmp_path / "density").glob("density_*.csv"))
    assert len(files) >= 4
    sidecars = sorted((tmp_path / "density").glob("density_*.csv.json"))
    assert len(sidecars) == len(files)
    header = files[0].read_text().splitlines()[0]
    assert header == "x,value_real,value_imag"


def test_cli_surfaces_errors(tmp_path, capsys):
    rc = main(["sample", "--paths", "10", "--steps", "20", "--nu", "-1.0",
               "--out", str(tmp_path)])
    assert rc == 2
    assert "error:" in capsys.readouterr().err
