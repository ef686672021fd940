"""Path sampling and conditional-moment estimation."""
from .ensemble import Ensemble, reflect, sample_initial, simulate_ensemble
from .estimators import (MIN_COUNT_ASSERT, MIN_COUNT_DEFAULT,
                         ConditionalMomentTable, default_bins,
                         density_histogram, estimate_backward_drift,
                         estimate_forward_drift, estimate_mean_acceleration,
                         estimate_quadratic_variation, histogram_l1_distance)
from .io import (export_ensemble_binary, export_ensemble_csv,
                 export_table_csv, load_ensemble_binary)
from .rng import step_normals, stream, stream_normals, stream_uniforms

__all__ = [
    "MIN_COUNT_ASSERT",
    "MIN_COUNT_DEFAULT",
    "ConditionalMomentTable",
    "Ensemble",
    "default_bins",
    "density_histogram",
    "estimate_backward_drift",
    "estimate_forward_drift",
    "estimate_mean_acceleration",
    "estimate_quadratic_variation",
    "export_ensemble_binary",
    "export_ensemble_csv",
    "export_table_csv",
    "histogram_l1_distance",
    "load_ensemble_binary",
    "reflect",
    "sample_initial",
    "simulate_ensemble",
    "step_normals",
    "stream",
    "stream_normals",
    "stream_uniforms",
]
