"""nelsonlab: a numerical laboratory for diffusions with a free diffusion
parameter, their operator algebra, and the continuation that recovers the
quantum operator formalism.

Subpackages
-----------
fields   : wave solutions, reference states, drift fields, density evolution
sampler  : reproducible path ensembles and conditional-moment estimators
algebra  : weighted spaces, operator matrices, evolution and correlations
harness  : configured experiments, the verification suite, CLI, reports
"""
from . import algebra, fields, sampler
from .errors import (DomainError, EmptyMaskError, InputError, InstabilityError,
                     NelsonlabError, NumericalBreakdownError,
                     UnsupportedConfigError)
from .grids import Grid1D
from .params import (MODE_MINUS, MODE_PLUS, MODE_REAL, DiffusionParams,
                     continue_to_imaginary, diffusion_params)

__version__ = "0.1.0"

__all__ = [
    "DiffusionParams",
    "DomainError",
    "EmptyMaskError",
    "Grid1D",
    "InputError",
    "InstabilityError",
    "MODE_MINUS",
    "MODE_PLUS",
    "MODE_REAL",
    "NelsonlabError",
    "NumericalBreakdownError",
    "UnsupportedConfigError",
    "algebra",
    "continue_to_imaginary",
    "diffusion_params",
    "fields",
    "sampler",
    "__version__",
]
