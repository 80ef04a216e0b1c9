"""Explicit zeroth, first and second order approximants.

All three are functions of tau = omega * t only.  The second-order expression
is kept in the published grouping (one coefficient per harmonic, polynomial in
tau) with integer coefficients and a single rational prefactor, so it can be
audited term by term; it is deliberately not re-derived or simplified.
"""

from __future__ import annotations

import enum

import numpy as np

from .model import ProblemParams

SECOND_ORDER_DENOMINATOR = 188743680  # = 180 * 2**20


class ClosedFormOrder(enum.IntEnum):
    ZEROTH = 0
    FIRST = 1
    SECOND = 2


def u0_closed(t, params: ProblemParams):
    return params.amplitude * np.cos(params.omega * t)


def u1_closed(t, params: ProblemParams):
    """A cos(tau) + (A^3/16) sin(tau) [2 tau (2a - 3b) + (2a - b) sin(2 tau)]."""
    a, b, amp = params.alpha, params.beta, params.amplitude
    tau = params.omega * np.asarray(t, dtype=float)
    s = np.sin(tau)
    return amp * np.cos(tau) + amp ** 3 / 16.0 * s * (
        2.0 * tau * (2 * a - 3 * b) + (2 * a - b) * np.sin(2 * tau))


def u1_closed_derivatives(t, params: ProblemParams):
    """Exact first and second time derivatives of :func:`u1_closed`."""
    a, b, amp, w = params.alpha, params.beta, params.amplitude, params.omega
    tau = w * np.asarray(t, dtype=float)
    s, c = np.sin(tau), np.cos(tau)
    s2, c2 = np.sin(2 * tau), np.cos(2 * tau)
    k = amp ** 3 / 16.0
    p, q = 2 * a - 3 * b, 2 * a - b
    f1 = 2 * p * s + 2 * p * tau * c + q * (c * s2 + 2 * s * c2)
    f2 = 4 * p * c - 2 * p * tau * s + q * (4 * c * c2 - 5 * s * s2)
    return w * (-amp * s + k * f1), w * w * (-amp * c + k * f2)


def _second_order_brace(tau, a, b, A):
    """The braced harmonic sum of the second-order approximant."""
    A2, A4, A6 = A ** 2, A ** 4, A ** 6
    tau2 = tau * tau
    p = 2 * a - 3 * b  # secular coefficient of the first order term
    q = 2 * a - b

    cos9 = 18 * q ** 3 * (18 * a - b) * A6

    sin7 = -120 * tau * p * (34 * a - 3 * b) * (b - 2 * a) ** 2 * A6

    cos7 = -5 * (b - 2 * a) ** 2 * (
        500 * A2 * a ** 2 + (6528 - 420 * A2 * b) * a + 9 * b * (9 * A2 * b - 64)) * A4

    sin5 = 240 * tau * (4 * a ** 2 - 8 * b * a + 3 * b ** 2) * (
        39 * A2 * b ** 2 - 12 * (11 * a * A2 + 16) * b + 4 * a * (35 * a * A2 + 288)) * A4

    cos5 = -20 * q * (
        -488 * a ** 3 * A4 + 477 * b ** 3 * A4 - 1422 * a * b ** 2 * A4
        + 144 * tau2 * p ** 2 * (6 * a - b) * A4
        + 1500 * a ** 2 * b * A4 - 4992 * a ** 2 * A2 - 3168 * b ** 2 * A2
        + 7296 * a * b * A2 - 55296 * a + 9216 * b) * A2

    sin3 = 720 * tau * p * (
        -344 * a ** 3 * A4 + 543 * b ** 3 * A4 - 1218 * a * b ** 2 * A4
        + 16 * tau2 * p ** 2 * q * A4
        + 1076 * a ** 2 * b * A4 - 1024 * a ** 2 * A2 - 1920 * b ** 2 * A2
        + 2304 * a * b * A2 - 6144 * a + 3072 * b) * A2

    cos1 = (
        215408 * a ** 4 * A6 + 635787 * b ** 4 * A6 - 11520 * tau2 * tau2 * p ** 4 * A6
        - 1826328 * a * b ** 3 * A6 + 2131000 * a ** 2 * b ** 2 * A6
        - 1136928 * a ** 3 * b * A6 - 299520 * a ** 3 * A4 - 2376000 * b ** 3 * A4
        + 3653760 * a * b ** 2 * A4 - 1340160 * a ** 2 * b * A4
        - 6635520 * a ** 2 * A2 + 4239360 * b ** 2 * A2
        + 1440 * tau2 * p * (
            -705 * b ** 3 * A4 + 2 * (673 * a * A2 + 384) * b ** 2 * A2
            + 8 * a * (A2 * a * (15 * A2 * a - 64) - 256)
            - 4 * (9 * A2 * a - 16) * (23 * a * A2 + 48) * b) * A2
        + 737280 * a * b * A2 + 11796480 * a - 5898240 * b)

    cos3 = 180 * (
        -1264 * a ** 4 * A6 - 3583 * b ** 4 * A6 + 10392 * a * b ** 3 * A6
        - 12264 * a ** 2 * b ** 2 * A6 + 6624 * a ** 3 * b * A6 + 1280 * a ** 3 * A4
        + 13536 * b ** 3 * A4 - 21568 * a * b ** 2 * A4
        + 64 * tau2 * p ** 2 * (A2 * a ** 2 + (48 - 17 * A2 * b) * a + 3 * b * (3 * A2 * b - 8)) * A4
        + 8832 * a ** 2 * b * A4 + 24576 * a ** 2 * A2 - 24576 * b ** 2 * A2
        + 4096 * a * b * A2 - 65536 * a + 32768 * b)

    sin1 = 960 * tau * (
        16 * tau2 * p ** 2 * (2 * A2 * a ** 2 + (16 - 11 * A2 * b) * a + 3 * b * (5 * A2 * b - 8)) * A4
        + 3 * (
            -1056 * b ** 4 * A6 + (2807 * a * A2 + 1080) * b ** 3 * A4
            - 2 * (A2 * a * (1449 * a * A2 + 1336) - 3072) * b ** 2 * A2
            - 8 * a * (3 * A2 * a * (3 * a * (3 * a * A2 + 8) * A2 + 256) - 2048)
            + 4 * (A2 * a * (a * (333 * a * A2 + 584) * A2 + 768) - 6144) * b))

    return (cos9 * np.cos(9 * tau) + sin7 * np.sin(7 * tau) + cos7 * np.cos(7 * tau)
            + sin5 * np.sin(5 * tau) + cos5 * np.cos(5 * tau) + sin3 * np.sin(3 * tau)
            + cos1 * np.cos(tau) + cos3 * np.cos(3 * tau) + sin1 * np.sin(tau))


def second_order_erratum(tau, a, b, A):
    """Braced-sum term missing from the published second-order expression.

    The exact second iterate has 14 A^2 a^2 where the printed cos(3 tau)
    secular bracket has A^2 a^2; the difference is this single monomial.
    Both the convolution engine and a symbolic derivation agree on it.
    """
    return 180 * 64 * 13 * A ** 6 * a ** 2 * tau ** 2 * (2 * a - 3 * b) ** 2 * np.cos(3 * tau)


def u2_closed(t, params: ProblemParams, corrected: bool = False):
    """Second-order approximant as published.

    With ``corrected=True`` the one-coefficient erratum is added back, which
    makes the result equal to the exact second iterate.
    """
    a, b, amp = params.alpha, params.beta, params.amplitude
    tau = params.omega * np.asarray(t, dtype=float)
    brace = _second_order_brace(tau, a, b, amp)
    if corrected:
        brace = brace + second_order_erratum(tau, a, b, amp)
    return amp * np.cos(tau) + amp ** 3 * brace / SECOND_ORDER_DENOMINATOR


def closed_form(order, t, params: ProblemParams):
    """Evaluate the approximant of the given order (0, 1 or 2)."""
    funcs = {ClosedFormOrder.ZEROTH: u0_closed, ClosedFormOrder.FIRST: u1_closed,
             ClosedFormOrder.SECOND: u2_closed}
    return funcs[ClosedFormOrder(order)](t, params)
