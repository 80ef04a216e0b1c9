"""Error norms between trajectories and amplitude-order estimation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .closed_form import u0_closed, u1_closed, u1_closed_derivatives, u2_closed
from .errors import ConfigError, DegenerateFitError
from .model import ProblemParams
from .reference import integrate_reference
from .trajectory import Trajectory, uniform_grid

# Errors below this cannot be told apart from rounding.
RESOLUTION_FLOOR = 1e-14


@dataclass(frozen=True)
class ErrorReport:
    linf: float
    l2: float
    window: tuple[float, float]
    n_nodes: int
    labels: tuple[str, str] = field(default=("a", "b"))


def compare_trajectories(a: Trajectory, b: Trajectory,
                         labels: tuple[str, str] = ("a", "b")) -> ErrorReport:
    """Max and root-mean-square difference of the displacement channels."""
    a.check_grid(b)
    diff = np.abs(a.u - b.u)
    linf = float(np.max(diff))
    # Scale by the max before squaring so tiny differences do not underflow.
    l2 = linf * math.sqrt(float(np.mean((diff / linf) ** 2))) if linf > 0 else 0.0
    return ErrorReport(linf, min(l2, linf), (a.t0, a.t_end), len(a), tuple(labels))


def approximant_trajectory(params: ProblemParams, order: int | str, t_end: float,
                           n_out: int) -> Trajectory:
    """Sample a closed-form approximant on the uniform output grid.

    Derivative channels are exact for orders 0 and 1; for order 2 they are
    second-order finite differences (only the displacement is compared).
    """
    step, t = uniform_grid(t_end, n_out)
    amp, w = params.amplitude, params.omega
    order = str(order)
    if order == "0":
        u = u0_closed(t, params)
        du, d2u = -amp * w * np.sin(w * t), -w * w * u
    elif order == "1":
        u = u1_closed(t, params)
        du, d2u = u1_closed_derivatives(t, params)
    elif order in ("2", "2c"):
        u = u2_closed(t, params, corrected=order == "2c")
        du = np.gradient(u, step, edge_order=2)
        d2u = np.gradient(du, step, edge_order=2)
    else:
        raise ConfigError(f"unknown approximant order {order!r}")
    return Trajectory(0.0, step, u, du, d2u)


def amplitude_errors(params_base: ProblemParams, amplitudes, window: float,
                     orders=(1,), n_out: int = 801, rel_tol: float = 1e-12) -> np.ndarray:
    """Max-norm error of each approximant against the reference, one row per amplitude."""
    rows = []
    for amp in amplitudes:
        params = params_base.replace(amplitude=amp)
        ref = integrate_reference(params, window, rel_tol, n_out=n_out)
        rows.append([compare_trajectories(ref, approximant_trajectory(params, k, window, n_out)).linf
                     for k in orders])
    return np.array(rows)


def resolution_floor(amplitudes, rel_tol: float) -> np.ndarray:
    """Smallest error distinguishable from the reference solution's own error."""
    return np.maximum(RESOLUTION_FLOOR, 100.0 * rel_tol * np.asarray(amplitudes, dtype=float))


def fit_order(amplitudes, errors, floor=RESOLUTION_FLOOR) -> float:
    """Least-squares slope of log(error) against log(amplitude)."""
    errors = np.asarray(errors, dtype=float)
    if np.any(~np.isfinite(errors)) or np.any(errors < floor):
        raise DegenerateFitError("degenerate fit: error below resolution floor")
    slope, _ = np.polyfit(np.log(np.asarray(amplitudes, dtype=float)), np.log(errors), 1)
    return float(slope)


def _check_amplitudes(amplitudes):
    amps = [float(a) for a in amplitudes]
    if len(amps) < 3:
        raise ConfigError("need at least 3 amplitudes")
    if len(set(amps)) != len(amps):
        raise ConfigError("duplicate amplitudes")
    if any(a <= 0 for a in amps):
        raise ConfigError("amplitudes must be positive")
    return amps


def estimate_amplitude_order(params_base: ProblemParams, amplitudes, window: float,
                             approximant_order: int, n_out: int = 801,
                             rel_tol: float = 1e-12) -> float:
    """Fitted exponent p in error ~ A^p for one approximant over a fixed window."""
    amps = _check_amplitudes(amplitudes)
    if any(b >= a for a, b in zip(amps, amps[1:])):
        raise ConfigError("amplitudes must be strictly decreasing")
    errs = amplitude_errors(params_base, amps, window, (approximant_order,), n_out, rel_tol)
    return fit_order(amps, errs[:, 0], resolution_floor(amps, rel_tol))


def figure_comparison(params: ProblemParams, t_end: float | None = None, n_out: int = 801,
                      rel_tol: float = 1e-12) -> dict[str, ErrorReport]:
    """Errors of u0, u1 and u2 against the reference; default window is one linear period."""
    t_end = params.linear_period if t_end is None else t_end
    ref = integrate_reference(params, t_end, rel_tol, n_out=n_out)
    return {f"u{k}": compare_trajectories(ref, approximant_trajectory(params, k, t_end, n_out),
                                          ("reference", f"u{k}"))
            for k in (0, 1, 2)}
