"""High-accuracy reference solution by adaptive Dormand-Prince 5(4) integration.

The first-order system (u, v = u') is advanced with the embedded 5(4) pair,
a PI step-size controller and Hairer's fourth-order continuous extension.
Output on a uniform grid is taken from the dense output, and the
acceleration channel is recomputed in closed form at every node.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np
from scipy.optimize import brentq

from .errors import ConfigError, OrbitValidityError, ToleranceNotAchievable
from .model import MASS_EPS, ProblemParams, acceleration
from .trajectory import Trajectory, uniform_grid

# Butcher tableau (FSAL: the last stage is the derivative at the new point).
C2, C3, C4, C5 = 1 / 5, 3 / 10, 4 / 5, 8 / 9
A21 = 1 / 5
A31, A32 = 3 / 40, 9 / 40
A41, A42, A43 = 44 / 45, -56 / 15, 32 / 9
A51, A52, A53, A54 = 19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729
A61, A62, A63, A64, A65 = 9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656
B1, B3, B4, B5, B6 = 35 / 384, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84
E1, E3, E4, E5, E6, E7 = (71 / 57600, -71 / 16695, 71 / 1920, -17253 / 339200,
                          22 / 525, -1 / 40)
D1, D3, D4, D5, D6, D7 = (-12715105075 / 11282082432, 87487479700 / 32700410799,
                          -10690763975 / 1880347072, 701980252875 / 199316789632,
                          -1453857185 / 822651844, 69997945 / 29380423)

SAFETY = 0.9
MIN_RATIO, MAX_RATIO = 0.2, 5.0
# PI controller exponents for a fifth-order error estimate.
K_I, K_P = 0.7 / 5, 0.4 / 5


@dataclass(frozen=True)
class PeriodResult:
    period: float
    method: str
    error_estimate: float

    def __post_init__(self):
        if not self.period > 0.0:
            raise ValueError(f"period must be positive, got {self.period!r}")
        if not self.error_estimate >= 0.0:
            raise ValueError(f"error estimate must be non-negative, got {self.error_estimate!r}")


@dataclass(frozen=True)
class Step:
    """One accepted step [t, t + h] with its continuous extension."""

    t: float
    h: float
    y0: tuple
    y1: tuple
    _rcont: tuple

    def __call__(self, t):
        """Dense output (u, v) at time(s) ``t`` inside the step."""
        th = (np.asarray(t, dtype=float) - self.t) / self.h
        th1 = 1.0 - th
        out = []
        for r1, r2, r3, r4, r5 in self._rcont:
            out.append(r1 + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5))))
        return out[0], out[1]


def _check_tolerances(rel_tol, abs_tol):
    if not (0.0 < rel_tol <= 1e-2):
        raise ConfigError(f"rel_tol must lie in (0, 1e-2], got {rel_tol!r}")
    if abs_tol is not None and not (0.0 < abs_tol <= 1e-2):
        raise ConfigError(f"abs_tol must lie in (0, 1e-2], got {abs_tol!r}")


class DormandPrince:
    """Adaptive integrator for the beam equation written as a first-order system."""

    def __init__(self, params: ProblemParams, rel_tol: float = 1e-10,
                 abs_tol: float | None = None, max_steps: int = 1_000_000):
        _check_tolerances(rel_tol, abs_tol)
        self.params = params
        self.rtol = rel_tol
        # Default absolute floor follows the natural displacement and velocity scales.
        scale = params.amplitude * min(1.0, params.omega)
        self.atol = abs_tol if abs_tol is not None else max(rel_tol * scale, 1e-300)
        self.max_steps = max_steps
        self.nfev = 0

    def rhs(self, u, v):
        p = self.params
        mass = 1.0 + p.alpha * u * u
        if mass < MASS_EPS:
            raise OrbitValidityError(f"orbit leaves validity domain: 1 + alpha*u^2 = {mass:.3g}")
        self.nfev += 1
        return v, -(p.alpha * u * v * v + p.omega ** 2 * u * (1.0 + p.beta * u * u)) / mass

    def _norm(self, y0, y1, err):
        total = 0.0
        for a, b, e in zip(y0, y1, err):
            sc = self.atol + self.rtol * max(abs(a), abs(b))
            total += (e / sc) ** 2
        return math.sqrt(total / len(err))

    def _initial_step(self, y0, f0):
        # Hairer & Wanner's starting-step heuristic.
        d0 = self._norm(y0, y0, y0)
        d1 = self._norm(y0, y0, f0)
        h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
        y1 = (y0[0] + h0 * f0[0], y0[1] + h0 * f0[1])
        f1 = self.rhs(*y1)
        d2 = self._norm(y0, y0, (f1[0] - f0[0], f1[1] - f0[1])) / h0
        if max(d1, d2) <= 1e-15:
            h1 = max(1e-6, h0 * 1e-3)
        else:
            h1 = (0.01 / max(d1, d2)) ** 0.2
        return min(100.0 * h0, h1)

    def steps(self, t_stop: float = math.inf, y0: tuple | None = None) -> Iterator[Step]:
        """Yield accepted steps from t = 0, ending exactly at ``t_stop``.

        The state starts at ``y0`` = (u, u'), by default the turning point (A, 0).
        """
        t = 0.0
        y = (self.params.amplitude, 0.0) if y0 is None else (float(y0[0]), float(y0[1]))
        k1 = self.rhs(*y)
        h = self._initial_step(y, k1)
        err_old = 1e-4
        rejected = False
        n = 0
        while t < t_stop:
            n += 1
            if n > self.max_steps:
                raise ToleranceNotAchievable(f"step budget of {self.max_steps} exhausted at t={t:.6g}")
            if h < 1e-14 * max(1.0, abs(t)):
                raise ToleranceNotAchievable(f"tolerance not achievable: step underflow at t={t:.6g}")
            last = t + h >= t_stop
            if last:
                h = t_stop - t
            u, v = y
            k2 = self.rhs(u + h * A21 * k1[0], v + h * A21 * k1[1])
            k3 = self.rhs(u + h * (A31 * k1[0] + A32 * k2[0]),
                          v + h * (A31 * k1[1] + A32 * k2[1]))
            k4 = self.rhs(u + h * (A41 * k1[0] + A42 * k2[0] + A43 * k3[0]),
                          v + h * (A41 * k1[1] + A42 * k2[1] + A43 * k3[1]))
            k5 = self.rhs(u + h * (A51 * k1[0] + A52 * k2[0] + A53 * k3[0] + A54 * k4[0]),
                          v + h * (A51 * k1[1] + A52 * k2[1] + A53 * k3[1] + A54 * k4[1]))
            k6 = self.rhs(u + h * (A61 * k1[0] + A62 * k2[0] + A63 * k3[0] + A64 * k4[0] + A65 * k5[0]),
                          v + h * (A61 * k1[1] + A62 * k2[1] + A63 * k3[1] + A64 * k4[1] + A65 * k5[1]))
            y1 = (u + h * (B1 * k1[0] + B3 * k3[0] + B4 * k4[0] + B5 * k5[0] + B6 * k6[0]),
                  v + h * (B1 * k1[1] + B3 * k3[1] + B4 * k4[1] + B5 * k5[1] + B6 * k6[1]))
            k7 = self.rhs(*y1)
            err = tuple(h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i])
                        for i in range(2))
            err_norm = self._norm(y, y1, err)

            if err_norm <= 1.0:
                rcont = []
                for i in range(2):
                    r2 = y1[i] - y[i]
                    r3 = h * k1[i] - r2
                    r4 = r2 - h * k7[i] - r3
                    r5 = h * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] + D6 * k6[i] + D7 * k7[i])
                    rcont.append((y[i], r2, r3, r4, r5))
                yield Step(t, h, y, y1, tuple(rcont))
                t = t_stop if last else t + h
                y, k1 = y1, k7
                if err_norm == 0.0:
                    ratio = MAX_RATIO
                else:
                    ratio = SAFETY * err_norm ** -K_I * err_old ** K_P
                    ratio = min(MAX_RATIO, max(MIN_RATIO, ratio))
                if rejected:
                    ratio = min(ratio, 1.0)
                err_old = max(err_norm, 1e-4)
                rejected = False
            else:
                ratio = max(MIN_RATIO, SAFETY * err_norm ** -0.2)
                rejected = True
            h *= ratio


def integrate_reference(params: ProblemParams, t_end: float, rel_tol: float = 1e-10,
                        abs_tol: float | None = None, n_out: int = 401) -> Trajectory:
    """Reference solution on the uniform grid of ``n_out`` nodes over [0, t_end]."""
    step, t_nodes = uniform_grid(t_end, n_out)
    _check_tolerances(rel_tol, abs_tol)
    u = np.empty(n_out)
    v = np.empty(n_out)
    u[0], v[0] = params.amplitude, 0.0
    if params.amplitude == 0.0:
        u[:] = 0.0
        v[:] = 0.0
        return Trajectory(0.0, step, u, v, np.zeros(n_out))

    solver = DormandPrince(params, rel_tol, abs_tol)
    i = 1
    for st in solver.steps(t_end):
        end = st.t + st.h
        j = i
        while j < n_out - 1 and t_nodes[j] <= end:
            j += 1
        if j > i:
            u[i:j], v[i:j] = st(t_nodes[i:j])
            i = j
        if end >= t_end:
            u[n_out - 1], v[n_out - 1] = st.y1
    return Trajectory(0.0, step, u, v, acceleration(u, v, params))


def _locate(solver: DormandPrince, crossed, channel: int, level: float, xtol: float) -> float:
    for st in solver.steps():
        if crossed(st.y0, st.y1):
            return brentq(lambda s: st(s)[channel] - level, st.t, st.t + st.h,
                          xtol=xtol, rtol=4 * np.finfo(float).eps)
    raise ToleranceNotAchievable("no crossing found")  # pragma: no cover


def measure_period(params: ProblemParams, rel_tol: float = 1e-12, xtol: float = 1e-14) -> PeriodResult:
    """Time from the initial maximum u(0) = A to the next maximum of u.

    Maxima are the sign changes of u' from positive to non-positive; the
    crossing is polished by Brent's method on the dense output.
    """
    if params.amplitude == 0.0:
        raise ConfigError("zero-amplitude orbit has no period")
    solver = DormandPrince(params, rel_tol)
    t_max = _locate(solver, lambda y0, y1: y0[1] > 0.0 >= y1[1], 1, 0.0, xtol)
    return PeriodResult(t_max, "reference-integration", 2 * xtol + 10 * rel_tol * t_max)


def crossing_time(params: ProblemParams, level: float, rel_tol: float = 1e-12,
                  xtol: float = 1e-14) -> float:
    """First time the displacement falls through ``level`` (0 <= level < A)."""
    if not 0.0 <= level < params.amplitude:
        raise ConfigError(f"level {level!r} is not crossed on the descending branch")
    solver = DormandPrince(params, rel_tol)
    return _locate(solver, lambda y0, y1: y0[0] > level >= y1[0], 0, level, xtol)
