"""Governing equation of the large-amplitude cantilever beam oscillator.

The dimensionless equation of motion is

    u'' + w^2 u + a u^2 u'' + a u u'^2 + b w^2 u^3 = 0,   u(0) = A, u'(0) = 0,

with a = alpha (inertia nonlinearity), b = beta (stiffness nonlinearity) and
w = omega.  Everything here is a pure function of immutable inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, OrbitValidityError, SingularMassError

# |1 + alpha u^2| below this is treated as a singular mass term.
MASS_EPS = 1e-12


@dataclass(frozen=True)
class ProblemParams:
    alpha: float
    beta: float
    omega: float
    amplitude: float

    @property
    def linear_period(self) -> float:
        return 2.0 * math.pi / self.omega

    def replace(self, **changes) -> "ProblemParams":
        fields = dict(alpha=self.alpha, beta=self.beta, omega=self.omega,
                      amplitude=self.amplitude)
        fields.update(changes)
        return make_params(**fields)


@dataclass(frozen=True)
class FirstIntegral:
    """Conserved constant C0 of the motion.

    ``residual_tolerance`` is the relative bound used when checking a
    trajectory against the first integral (see :func:`energy_residual`).
    """

    c0: float
    residual_tolerance: float = 1e-8

    def accepts(self, residual: float) -> bool:
        scale = self.c0 if self.c0 > 0 else 1.0
        return abs(residual) <= self.residual_tolerance * scale


def make_params(alpha: float, beta: float, omega: float, amplitude: float) -> ProblemParams:
    """Validate the coefficients and return a :class:`ProblemParams`.

    Validity is checked over the whole orbit [-A, A] so that downstream
    operations never meet a singular mass term or an imaginary period
    integrand.
    """
    values = dict(alpha=alpha, beta=beta, omega=omega, amplitude=amplitude)
    for name, value in values.items():
        try:
            value = float(value)
        except (TypeError, ValueError):
            raise ConfigError(f"{name} must be a real number, got {value!r}") from None
        if not math.isfinite(value):
            raise ConfigError(f"{name} must be finite, got {value!r}")
        values[name] = value

    alpha, beta, omega, amp = (values[k] for k in ("alpha", "beta", "omega", "amplitude"))
    if omega <= 0.0:
        raise ConfigError(f"omega must be positive, got {omega!r}")
    if amp < 0.0:
        raise ConfigError(f"amplitude must be non-negative, got {amp!r}")

    a2 = amp * amp
    # Both factors are monotone in u^2, so the worst case sits at the turning point.
    if 1.0 + alpha * a2 <= MASS_EPS:
        raise OrbitValidityError(
            f"orbit leaves validity domain: 1 + alpha*A^2 = {1.0 + alpha * a2:.6g} <= 0")
    if 1.0 + beta * a2 <= 0.0:
        raise OrbitValidityError(
            f"orbit leaves validity domain: 1 + beta*A^2 = {1.0 + beta * a2:.6g} <= 0")
    return ProblemParams(alpha, beta, omega, amp)


def g_nonlinear(u, du, d2u, params: ProblemParams):
    """Nonlinear part of the equation: a u^2 u'' + a u u'^2 + b w^2 u^3.

    Works elementwise on scalars or numpy arrays.
    """
    a = params.alpha
    return u * (a * u * d2u + a * du * du + params.beta * params.omega ** 2 * u * u)


def acceleration(u, du, params: ProblemParams):
    """Solve the equation of motion for u''."""
    a, w2 = params.alpha, params.omega ** 2
    mass = 1.0 + a * u * u
    if np.any(np.abs(mass) < MASS_EPS):
        raise SingularMassError(f"singular mass term: 1 + alpha*u^2 = {np.min(np.abs(mass)):.3g}")
    return -(a * u * du * du + w2 * u * (1.0 + params.beta * u * u)) / mass


def equation_residual(u, du, d2u, params: ProblemParams):
    """Left-hand side of the equation of motion for given channels."""
    return d2u + params.omega ** 2 * u + g_nonlinear(u, du, d2u, params)


def first_integral_c0(params: ProblemParams) -> FirstIntegral:
    a2 = params.amplitude ** 2
    return FirstIntegral(params.omega ** 2 * a2 * (1.0 + 0.5 * params.beta * a2))


def energy_residual(u, du, params: ProblemParams):
    """du^2 (1 + a u^2) + w^2 u^2 (1 + b u^2 / 2) - C0; zero on every exact orbit."""
    w2 = params.omega ** 2
    c0 = first_integral_c0(params).c0
    u2 = u * u
    return du * du * (1.0 + params.alpha * u2) + w2 * u2 * (1.0 + 0.5 * params.beta * u2) - c0
