"""Root finding for regime boundaries and landmark temperatures.

Landmarks of the magnetization curve m(T) at fixed field: the peak
temperature (below which a fixed hot bath can only drive an accelerator)
and the higher temperature where m returns to its ground-state value
(above which only engine operation survives).  The zero-work curve in the
(h, T_C) plane separates engine from accelerator and collapses onto the
critical point like sqrt(g^2 - h^2).
"""

import math
from dataclasses import dataclass

import numpy as np

from .cycle import CycleSpec, finite_cycle
from .dispersion import ModelParams
from .equilibrium import (
    MagnetizationModel,
    ThermalState,
    dm_dT,
    magnetization,
    zero_temperature_magnetization,
)
from .numerics import (
    BracketingError,
    QUAD_REL_TOL,
    ROOT_ABS_TOL,
    bracketed_root,
    refine_root,
    scan_bracket,
)


class NoPeakError(ValueError):
    """m(T) is monotone for these parameters; there is no peak to find."""


def _sech2(y: float) -> float:
    e = math.exp(-2.0 * abs(y))
    return 4.0 * e / (1.0 + e) ** 2


def _linear_h_shape(x: float) -> float:
    # m(T) in the small-h model is proportional to tanh x + x sech^2 x, x = g/T
    return math.tanh(x) + x * _sech2(x)


def magnetization_peak_temperature(g: float, h: float | None = None,
                                   model: MagnetizationModel = MagnetizationModel.LINEAR_H,
                                   rel_tol=QUAD_REL_TOL) -> float:
    """Temperature where m(T) peaks (dm/dT = 0).

    The small-h model peaks at a field-independent temperature
    (x tanh x = 1 with x = g/T, about 0.83 g).  The exact model needs the
    field; it has no peak for h >= g and raises NoPeakError there.
    """
    if model is MagnetizationModel.LINEAR_H:
        # dm/dT = 0 reduces to x tanh(x) = 1
        x = bracketed_root(lambda x: x * math.tanh(x) - 1.0, 1e-3, 1e3,
                           abs_tol=1e-14)
        return g / x
    if model is not MagnetizationModel.EXACT:
        raise ValueError(f"peak finding supports LINEAR_H and EXACT, got {model}")
    if h is None:
        raise ValueError("the exact model needs the field h")
    if abs(h) >= g:
        raise NoPeakError(f"m(T) is monotone decreasing for |h| >= g (h = {h})")
    params = ModelParams(g, h)

    def residual(t):
        return dm_dT(ThermalState(params, t), rel_tol=rel_tol)

    t_peak = bracketed_root(residual, 1e-3 * g, 10.0 * g,
                            abs_tol=ROOT_ABS_TOL * g)
    if abs(residual(t_peak)) > 1e-10:
        raise BracketingError("peak root failed its residual check")
    return t_peak


def equal_magnetization_temperature(g: float,
                                    model: MagnetizationModel = MagnetizationModel.LINEAR_H,
                                    h: float | None = None,
                                    rel_tol=QUAD_REL_TOL) -> float:
    """Temperature above the peak where m(T) = m(0).

    In the small-h model this is x-independent of the field (about 1.56 g).
    """
    if model is MagnetizationModel.LINEAR_H:
        # m(T) = m(0) reduces to tanh x + x sech^2 x = 1 at finite x
        x = bracketed_root(lambda x: _linear_h_shape(x) - 1.0, 1e-2, 50.0,
                           abs_tol=1e-14)
        return g / x
    if model is not MagnetizationModel.EXACT:
        raise ValueError(f"supported models are LINEAR_H and EXACT, got {model}")
    if h is None:
        raise ValueError("the exact model needs the field h")
    params = ModelParams(g, h)
    m0 = zero_temperature_magnetization(params, rel_tol=rel_tol)
    t_peak = magnetization_peak_temperature(g, h, MagnetizationModel.EXACT,
                                            rel_tol=rel_tol)

    def residual(t):
        return magnetization(ThermalState(params, t), rel_tol=rel_tol) - m0

    t_star = bracketed_root(residual, t_peak, 50.0 * g, abs_tol=ROOT_ABS_TOL * g)
    if abs(residual(t_star)) > 1e-10 * max(abs(m0), 1e-300):
        raise BracketingError("equal-magnetization root failed its residual check")
    return t_star


@dataclass(frozen=True)
class WZeroCurve:
    """Engine/accelerator boundary points and the grid fields where no
    boundary temperature exists below t_hot."""

    points: tuple  # ((h, t_cold), ...) ascending in h
    skipped: tuple  # fields with no root in (0, t_hot)


def _w_zero_residual_infinitesimal(g, h, t_hot, rel_tol):
    params = ModelParams(g, h)
    m_hot = magnetization(ThermalState(params, t_hot), rel_tol=rel_tol)

    def residual(t_cold):
        return magnetization(ThermalState(params, t_cold), rel_tol=rel_tol) - m_hot

    return residual


def _w_zero_residual_finite(g, h, t_hot, delta_h, rel_tol):
    def residual(t_cold):
        spec = CycleSpec(g, h + 0.5 * delta_h, h - 0.5 * delta_h, t_hot, t_cold)
        return finite_cycle(spec, rel_tol=rel_tol).work

    return residual


def w_zero_curve(g: float, t_hot: float, h_grid,
                 delta_h: float | None = None,
                 rel_tol=QUAD_REL_TOL) -> WZeroCurve:
    """Solve for the cold temperature with zero work at each field.

    delta_h None means the infinitesimal stroke, where w = 0 is
    m(T_C) = m(T_H) at the common field; a finite delta_h solves
    finite_cycle work = 0 for the stroke centred on h.  Fields without a
    root below t_hot are skipped and reported.
    """
    points = []
    skipped = []
    for h in sorted(float(x) for x in h_grid):
        if delta_h is None:
            residual = _w_zero_residual_infinitesimal(g, h, t_hot, rel_tol)
        else:
            residual = _w_zero_residual_finite(g, h, t_hot, delta_h, rel_tol)
        lo = 1e-3 * g
        hi = t_hot * (1.0 - 1e-9)
        bracket = scan_bracket(residual, lo, hi)
        if bracket is None:
            skipped.append(h)
            continue
        t_cold = refine_root(residual, bracket[0], bracket[1],
                             abs_tol=1e-13 * g)
        scale = abs(delta_h) if delta_h is not None else 1.0
        if abs(residual(t_cold)) > 1e-10 * g * scale:
            skipped.append(h)
            continue
        points.append((h, t_cold))
    return WZeroCurve(points=tuple(points), skipped=tuple(skipped))


@dataclass(frozen=True)
class ScalingCheck:
    """Boundary temperatures against sqrt(g^2 - h^2) near the critical point."""

    table: tuple  # ((h, t_cold, sqrt(g^2 - h^2)), ...)
    fitted_constant: float
    residuals: tuple
    spearman: float
    skipped: tuple


def near_critical_scaling_check(g: float, t_hot: float, h_samples,
                                rel_tol=QUAD_REL_TOL) -> ScalingCheck:
    """Fit t_cold = c sqrt(g^2 - h^2) over the zero-work boundary and report
    the rank correlation; only the proportionality is a hard claim."""
    from scipy.stats import spearmanr

    curve = w_zero_curve(g, t_hot, h_samples, rel_tol=rel_tol)
    table = tuple((h, t, math.sqrt(g * g - h * h)) for h, t in curve.points)
    xs = np.array([row[2] for row in table])
    ys = np.array([row[1] for row in table])
    if len(xs) < 3:
        raise BracketingError(
            "too few boundary points for a scaling fit; widen h_samples")
    constant = float(xs @ ys / (xs @ xs))  # least squares through the origin
    residuals = tuple(float(y - constant * x) for x, y in zip(xs, ys))
    rho = float(spearmanr(xs, ys).statistic)
    return ScalingCheck(table=table, fitted_constant=constant,
                        residuals=residuals, spearman=rho,
                        skipped=curve.skipped)
