"""Successive approximations for the convolution form of the beam equation.

Inverting u'' + w^2 u = -g(u, u', u'') with the kernel sin(w (t - x)) / w gives

    u_n(t)   = A cos(wt) - (1/w) int_0^t sin(w (t - x)) g_{n-1}(x) dx
    u_n'(t)  = -A w sin(wt) - int_0^t cos(w (t - x)) g_{n-1}(x) dx
    u_n''(t) = -w^2 u_n(t) - g_{n-1}(t)

where g_{n-1} is the nonlinear term evaluated on the previous iterate.  Both
convolutions split by angle addition into two running integrals
C(t) = int cos(wx) g dx and S(t) = int sin(wx) g dx, so a step costs O(n).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .model import ProblemParams, g_nonlinear
from .trajectory import Trajectory, uniform_grid

RULES = ("trapezoid", "simpson")


@dataclass(frozen=True)
class IterationConfig:
    n_nodes: int = 4097
    t_end: float = 8.0
    max_iter: int = 2
    quadrature_rule: str = "simpson"

    def __post_init__(self):
        if self.n_nodes < 16:
            raise ConfigError(f"n_nodes must be at least 16, got {self.n_nodes}")
        if not (np.isfinite(self.t_end) and self.t_end > 0.0):
            raise ConfigError(f"t_end must be positive and finite, got {self.t_end!r}")
        if self.max_iter < 1:
            raise ConfigError(f"max_iter must be at least 1, got {self.max_iter}")
        if self.quadrature_rule not in RULES:
            raise ConfigError(f"unknown quadrature rule {self.quadrature_rule!r}")
        if self.quadrature_rule == "simpson" and self.n_nodes % 2 == 0:
            raise ConfigError("simpson rule needs an odd number of nodes")

    @property
    def step(self) -> float:
        return self.t_end / (self.n_nodes - 1)

    def grid(self) -> Trajectory:
        """Zero trajectory carrying this config's grid, for grid comparisons."""
        z = np.zeros(self.n_nodes)
        return Trajectory(0.0, self.step, z, z, z)


def interval_integrals(f: np.ndarray, h: float, rule: str = "simpson") -> np.ndarray:
    """Integral of the sampled ``f`` over each grid interval [x_k, x_{k+1}].

    For Simpson, even intervals use the forward three-point formula and odd
    intervals the backward one; each adjacent pair then sums to the composite
    Simpson panel, so prefix sums are Simpson-exact at even nodes.
    """
    if rule == "trapezoid":
        return 0.5 * h * (f[:-1] + f[1:])
    if rule != "simpson":
        raise ConfigError(f"unknown quadrature rule {rule!r}")
    if len(f) % 2 == 0:
        raise ConfigError("simpson rule needs an odd number of nodes")
    out = np.empty(len(f) - 1)
    f0, f1, f2 = f[0:-2:2], f[1:-1:2], f[2::2]
    out[0::2] = (h / 12.0) * (5.0 * f0 + 8.0 * f1 - f2)
    out[1::2] = (h / 12.0) * (-f0 + 8.0 * f1 + 5.0 * f2)
    return out


def compensated_cumsum(x: np.ndarray) -> np.ndarray:
    """Prefix sums with the rounding error of each addition carried forward."""
    s = np.cumsum(x)
    prev = np.concatenate(([0.0], s[:-1]))
    # TwoSum: exact rounding error of prev + x -> s.
    bp = s - prev
    err = (prev - (s - bp)) + (x - bp)
    return s + np.cumsum(err)


def cumulative_integral(f: np.ndarray, h: float, rule: str = "simpson") -> np.ndarray:
    """Running integral int_0^{t_i} f dt at every node, starting with 0."""
    return np.concatenate(([0.0], compensated_cumsum(interval_integrals(f, h, rule))))


def picard_initial(params: ProblemParams, config: IterationConfig) -> Trajectory:
    """Zeroth iterate u0 = A cos(wt) with its exact derivatives."""
    step, t = uniform_grid(config.t_end, config.n_nodes)
    a, w = params.amplitude, params.omega
    c, s = np.cos(w * t), np.sin(w * t)
    return Trajectory(0.0, step, a * c, -a * w * s, -a * w * w * c)


def picard_step(prev: Trajectory, params: ProblemParams,
                config: IterationConfig | None = None) -> Trajectory:
    """Next iterate of the convolution equation, all three channels exact in form."""
    if prev.t0 != 0.0:
        raise ConfigError("iterates must start at t = 0")
    rule = "simpson" if len(prev) % 2 else "trapezoid"
    if config is not None:
        config.grid().check_grid(prev)
        rule = config.quadrature_rule
    a, w = params.amplitude, params.omega
    t = prev.t
    g = g_nonlinear(prev.u, prev.du, prev.d2u, params)
    cwt, swt = np.cos(w * t), np.sin(w * t)
    big_c = cumulative_integral(cwt * g, prev.step, rule)
    big_s = cumulative_integral(swt * g, prev.step, rule)

    u = a * cwt - (swt * big_c - cwt * big_s) / w
    du = -a * w * swt - (cwt * big_c + swt * big_s)
    d2u = -w * w * u - g
    return Trajectory(prev.t0, prev.step, u, du, d2u)


def picard_solve(params: ProblemParams, config: IterationConfig) -> list[Trajectory]:
    """Iterates u_1 .. u_{max_iter}; no stopping criterion is applied."""
    current = picard_initial(params, config)
    iterates = []
    for _ in range(config.max_iter):
        current = picard_step(current, params, config)
        iterates.append(current)
    return iterates


def successive_differences(iterates: list[Trajectory]) -> list[float]:
    """Max-norm distance between consecutive iterates, for judging convergence."""
    return [float(np.max(np.abs(b.u - a.u))) for a, b in zip(iterates, iterates[1:])]
