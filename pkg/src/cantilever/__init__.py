"""Large-amplitude free vibrations of a uniform cantilever beam.

Exact quadrature solution, convolution (Picard) iterates, the explicit first
and second order approximants, a Dormand-Prince reference integrator and
error analysis tying them together.
"""

from .closed_form import ClosedFormOrder, u0_closed, u1_closed, u2_closed
from .errors import (CantileverError, ConfigError, DegenerateFitError, GridMismatchError,
                     NumericalError, OrbitValidityError, SingularMassError,
                     TargetOutsideOrbitError, ToleranceNotAchievable)
from .metrics import ErrorReport, compare_trajectories, estimate_amplitude_order
from .model import (FirstIntegral, ProblemParams, acceleration, energy_residual,
                    first_integral_c0, g_nonlinear, make_params)
from .picard import IterationConfig, picard_initial, picard_solve, picard_step
from .quadrature import period_quadrature, time_of_displacement
from .reference import PeriodResult, integrate_reference, measure_period
from .trajectory import Trajectory

__all__ = [
    "CantileverError", "ClosedFormOrder", "ConfigError", "DegenerateFitError", "ErrorReport",
    "FirstIntegral", "GridMismatchError", "IterationConfig", "NumericalError",
    "OrbitValidityError", "PeriodResult", "ProblemParams", "SingularMassError",
    "TargetOutsideOrbitError", "ToleranceNotAchievable", "Trajectory", "acceleration",
    "compare_trajectories", "energy_residual", "estimate_amplitude_order",
    "first_integral_c0", "g_nonlinear", "integrate_reference", "make_params",
    "measure_period", "period_quadrature", "picard_initial", "picard_solve", "picard_step",
    "time_of_displacement", "u0_closed", "u1_closed", "u2_closed",
]
