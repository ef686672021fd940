"""Operator algebra on weighted grid spaces and its continuation."""
from ..params import continue_to_imaginary
from .evolution import (correlation, heisenberg_operator, stationary_generator,
                        taylor_heisenberg, time_derivative_recursion,
                        two_time_position_correlation)
from .operators import (AccelerationFields, OperatorMatrix,
                        acceleration_function, averaging_matrix,
                        closed_derivative_matrix, closed_laplacian_matrix,
                        commutator, density_curvature, derivative_operator,
                        gauge_map, hamiltonian, mapped_velocity_operator,
                        momentum_operator, position_operator,
                        rho_term_coefficient, velocity_operator)
from .reporting import (export_operator_csv, residual_report,
                        write_residual_reports)
from .spaces import SPACE_KINDS, WeightedSpace, build_space

__all__ = [
    "AccelerationFields",
    "OperatorMatrix",
    "SPACE_KINDS",
    "WeightedSpace",
    "acceleration_function",
    "averaging_matrix",
    "build_space",
    "closed_derivative_matrix",
    "closed_laplacian_matrix",
    "commutator",
    "continue_to_imaginary",
    "correlation",
    "density_curvature",
    "derivative_operator",
    "export_operator_csv",
    "gauge_map",
    "hamiltonian",
    "heisenberg_operator",
    "mapped_velocity_operator",
    "momentum_operator",
    "position_operator",
    "residual_report",
    "rho_term_coefficient",
    "stationary_generator",
    "write_residual_reports",
    "taylor_heisenberg",
    "time_derivative_recursion",
    "two_time_position_correlation",
    "velocity_operator",
]
