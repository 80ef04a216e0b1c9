"""Exact time map and period from the first integral.

With C0 - w^2 u^2 (1 + b u^2/2) = w^2 (A^2 - u^2)(1 + b (A^2 + u^2)/2) and the
substitution u = A sin(theta), the inverse-square-root singularity at the
turning point cancels and the time integral becomes

    t(u) = (1/w) * int_{asin(u/A)}^{pi/2} sqrt((1 + a A^2 s^2) / (1 + b A^2 (1 + s^2) / 2)) dtheta,

with s = sin(theta); its integrand is smooth, so plain Gauss-Legendre converges
spectrally.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import ConfigError, OrbitValidityError, TargetOutsideOrbitError
from .model import ProblemParams
from .reference import PeriodResult

DEFAULT_NODES = 64


@lru_cache(maxsize=32)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [-1, 1]; cached and read-only."""
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def turning_point_gap(u, params: ProblemParams):
    """Factored form w^2 (A^2 - u^2)(1 + b (A^2 + u^2)/2) of the velocity-squared numerator."""
    a2 = params.amplitude ** 2
    return params.omega ** 2 * (a2 - u * u) * (1.0 + 0.5 * params.beta * (a2 + u * u))


def _integrand(theta, params: ProblemParams):
    a2 = params.amplitude ** 2
    s2 = np.sin(theta) ** 2
    num = 1.0 + params.alpha * a2 * s2
    den = 1.0 + 0.5 * params.beta * a2 * (1.0 + s2)
    if np.any(num <= 0.0) or np.any(den <= 0.0):
        raise OrbitValidityError("invalid orbit: non-positive radicand in the period integrand")
    return np.sqrt(num / den)


def _theta_integral(params: ProblemParams, lower: float, n_nodes: int) -> float:
    x, w = gauss_legendre(n_nodes)
    half = 0.5 * (0.5 * math.pi - lower)
    theta = lower + half * (x + 1.0)
    return half * float(np.dot(w, _integrand(theta, params)))


def _check_nodes(n_nodes):
    if n_nodes < 8:
        raise ConfigError(f"n_nodes must be at least 8, got {n_nodes}")


def period_quadrature(params: ProblemParams, n_nodes: int = DEFAULT_NODES) -> PeriodResult:
    """Exact oscillation period; the error estimate is the node-doubling difference."""
    _check_nodes(n_nodes)
    if params.amplitude == 0.0:
        raise ConfigError("zero-amplitude orbit has no period")
    scale = 4.0 / params.omega
    period = scale * _theta_integral(params, 0.0, n_nodes)
    finer = scale * _theta_integral(params, 0.0, 2 * n_nodes)
    return PeriodResult(period, "quadrature", abs(finer - period))


def time_of_displacement(params: ProblemParams, u_target: float,
                         n_nodes: int = DEFAULT_NODES) -> float:
    """First time the orbit reaches ``u_target`` on the descending quarter period."""
    _check_nodes(n_nodes)
    amp = params.amplitude
    if not 0.0 <= u_target <= amp:
        raise TargetOutsideOrbitError(f"target outside orbit: u={u_target!r} not in [0, {amp!r}]")
    if u_target == amp:
        return 0.0
    lower = math.asin(u_target / amp)
    return _theta_integral(params, lower, n_nodes) / params.omega
