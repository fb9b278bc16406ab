"""Shared numerical kernels: adaptive quadrature over the mode angle and
bracketed root finding on temperature axes."""

import math

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

QUAD_REL_TOL = 1e-10
QUAD_ABS_TOL = 1e-14

ROOT_ABS_TOL = 1e-10
ROOT_MAX_ITER = 200
SCAN_POINTS = 64


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class BracketingError(RuntimeError):
    """No sign change found while scanning for a root bracket."""


def mode_integral(f, g, h, rel_tol=QUAD_REL_TOL, abs_tol=QUAD_ABS_TOL):
    """Integrate f(theta) over [0, pi] with an adaptive Gauss-Kronrod rule.

    Close to the critical line (|h - g| small compared to g) the integrands
    develop a kink at theta = 0, so the interval is split there to keep the
    subdivision honest.
    """
    points = None
    if abs(abs(h) - g) < 1e-3 * g:
        points = [1e-3]
    out = quad(f, 0.0, math.pi, epsabs=abs_tol, epsrel=rel_tol,
               limit=200, points=points, full_output=1)
    value, abserr = out[0], out[1]
    if len(out) > 3 and abserr > 10.0 * max(abs_tol, rel_tol * abs(value)):
        raise QuadratureError(f"mode integral did not converge: {out[3]}")
    return value


def scan_bracket(f, lo, hi, n_points=SCAN_POINTS):
    """Find a sign-change bracket of f by coarse scan on a geometric grid.

    Returns (a, b, fa, fb) for the first sign change, or None if f is
    single-signed over the grid.  Exact zeros are skipped rather than taken
    as roots: residuals built from Boltzmann tails underflow to 0.0 far from
    any root, and a genuine on-grid root is still bracketed by its nonzero
    neighbours.
    """
    xs = np.geomspace(lo, hi, n_points)
    x_prev = None
    f_prev = 0.0
    for x in xs:
        f_cur = f(x)
        if f_cur == 0.0:
            continue
        if x_prev is not None and f_prev * f_cur < 0.0:
            return x_prev, x, f_prev, f_cur
        x_prev, f_prev = x, f_cur
    return None


def refine_root(f, a, b, abs_tol=ROOT_ABS_TOL):
    """Refine a bracketed root with Brent's method (bisection plus inverse
    quadratic interpolation)."""
    if a == b:
        return a
    return brentq(f, a, b, xtol=abs_tol, maxiter=ROOT_MAX_ITER)


def bracketed_root(f, lo, hi, abs_tol=ROOT_ABS_TOL, n_points=SCAN_POINTS):
    """Scan [lo, hi] geometrically for a sign change and refine it.

    Raises BracketingError when the scan finds no sign change.
    """
    bracket = scan_bracket(f, lo, hi, n_points)
    if bracket is None:
        raise BracketingError(f"no sign change of residual in [{lo}, {hi}]")
    a, b, _, _ = bracket
    return refine_root(f, a, b, abs_tol)
