"""Suite runner and configured experiments."""
from __future__ import annotations

import os
import time
from pathlib import Path

from .. import __version__
from ..errors import InputError, NelsonlabError
from .checks import ALL_CHECKS, FAST_CHECKS, FULL_CHECKS, CheckContext
from .config import ExperimentConfig
from .report import FAIL, CheckRecord, Report
from .plots import emit_plots_data

DEFAULT_OUT_ENV = "NELSONLAB_OUT"


def _environment(cfg: ExperimentConfig) -> dict:
    import numpy
    import scipy
    return {
        "version": __version__,
        "numpy": numpy.__version__,
        "scipy": scipy.__version__,
        "seed": cfg.sde.seed,
        "grid": {"x_min": cfg.grid_x_min, "x_max": cfg.grid_x_max,
                 "n": cfg.grid_n},
        "dt": cfg.sde.dt,
        "n_paths": cfg.sde.n_paths,
    }


def _run_checks(cfg: ExperimentConfig, names, registry) -> Report:
    ctx = CheckContext(cfg)
    records = []
    for name in names:
        fn = registry[name]
        t0 = time.perf_counter()
        try:
            recs = fn(ctx)
        except NelsonlabError as exc:
            recs = [CheckRecord(name=name, anchor="runtime", status=FAIL,
                                notes=f"error in stage {name}: {exc}")]
        for r in recs:
            if r.elapsed_s is None:
                r.elapsed_s = round(time.perf_counter() - t0, 3)
        records.extend(recs)
    report = Report(records=records, environment=_environment(cfg))
    report.artifacts = ctx.artifacts
    return report


def verify_suite(level: str = "fast", cfg: ExperimentConfig | None = None
                 ) -> Report:
    """Run the built-in verification suite.

    ``fast`` covers the deterministic identity and solver checks (seconds);
    ``full`` adds the seeded Monte Carlo checks (about a minute at the
    default path count).  Statistical checks at starved path counts come
    back inconclusive rather than failed.
    """
    if level not in ("fast", "full"):
        raise InputError(f"level must be fast or full, got {level!r}")
    cfg = cfg or ExperimentConfig()
    registry = FAST_CHECKS if level == "fast" else FULL_CHECKS
    return _run_checks(cfg, list(registry), registry)


def run_experiment(cfg: ExperimentConfig, out_dir: str | Path | None = None
                   ) -> Report:
    """Validate a config, run its named checks, write report and artifacts.

    The report body is a pure function of the config (timestamps aside).
    Unknown check names fail validation before anything executes.
    """
    cfg.validate(known_checks=set(ALL_CHECKS))
    names = cfg.checks or ["stationary_variance", "equal_time_value",
                           "drift_recovery"]
    report = _run_checks(cfg, names, ALL_CHECKS)
    out = out_dir or cfg.out_dir or os.environ.get(DEFAULT_OUT_ENV)
    if out:
        out = Path(out)
        out.mkdir(parents=True, exist_ok=True)
        report.write(out / "report.json")
        emit_plots_data(report, out)
    return report
