"""Work, heats and regime classification of the adiabatic quantum Otto cycle.

The cycle: thermalize at (T_hot, h_hot), adiabatically ramp the field to
h_cold, thermalize at (T_cold, h_cold), ramp back.  Ramps are quasistatic
and preserve every mode occupation.  Sign convention: negative work or
heat is an output of the working substance.

All energies returned here are per site; the mode sums of the
thermodynamic limit are (1/pi) integrals over theta in [0, pi] with
Fermi-Dirac occupations n_F(omega, T) = 1/(e^(omega/T) + 1) per mode,
which is the unique reading consistent with the free energy and with
m = -df/dh in the infinitesimal-stroke limit.
"""

import math
from dataclasses import dataclass
from enum import Enum

from .dispersion import ModelParams
from .equilibrium import (
    MagnetizationModel,
    ThermalState,
    dm_dT,
    internal_energy,
    magnetization,
)
from .numerics import QUAD_REL_TOL, mode_integral

ZERO_TOLERANCE_SCALE = 1e-10  # default classification tolerance, times g


class Regime(Enum):
    """Operating regime from the signs of (work, q_hot, q_cold)."""

    ENGINE = "engine"            # W < 0, Q_H > 0, Q_C < 0
    ACCELERATOR = "accelerator"  # W > 0, Q_H > 0, Q_C < 0
    REFRIGERATOR = "refrigerator"  # W > 0, Q_H < 0, Q_C > 0
    HEATER = "heater"            # W > 0, Q_H < 0, Q_C < 0
    BOUNDARY = "boundary"        # any energy within the zero tolerance


@dataclass(frozen=True)
class CycleSpec:
    """One adiabatic Otto cycle: coupling, the two fields and temperatures."""

    g: float
    h_hot: float
    h_cold: float
    t_hot: float
    t_cold: float

    def __post_init__(self):
        if not self.g > 0.0:
            raise ValueError(f"coupling g must be strictly positive, got {self.g}")
        if not self.t_cold > 0.0:
            raise ValueError(f"t_cold must be > 0, got {self.t_cold}")
        if self.t_hot < self.t_cold:
            raise ValueError(
                f"t_hot must be >= t_cold, got {self.t_hot} < {self.t_cold}"
            )

    @property
    def delta_h(self) -> float:
        return self.h_hot - self.h_cold

    @property
    def h_av(self) -> float:
        return 0.5 * (self.h_hot + self.h_cold)


@dataclass(frozen=True)
class CycleResult:
    """Per-site energetic outcome of one cycle."""

    work: float
    q_hot: float
    q_cold: float
    regime: Regime
    zero_tolerance: float


def classify(work: float, q_hot: float, q_cold: float,
             zero_tolerance: float) -> Regime:
    """Assign a regime; anything within tolerance of a zero is a boundary
    point, never force-classified."""
    if (abs(work) <= zero_tolerance or abs(q_hot) <= zero_tolerance
            or abs(q_cold) <= zero_tolerance):
        return Regime.BOUNDARY
    if work < 0.0 and q_hot > 0.0 and q_cold < 0.0:
        return Regime.ENGINE
    if work > 0.0 and q_hot > 0.0 and q_cold < 0.0:
        return Regime.ACCELERATOR
    if work > 0.0 and q_hot < 0.0 and q_cold > 0.0:
        return Regime.REFRIGERATOR
    if work > 0.0 and q_hot < 0.0 and q_cold < 0.0:
        return Regime.HEATER
    # Sign patterns outside the table are forbidden by the second law and
    # can only be numerical noise straddling a root curve.
    return Regime.BOUNDARY


def _check_temperatures(t_hot, t_cold):
    if not t_cold > 0.0:
        raise ValueError(f"t_cold must be > 0, got {t_cold}")
    if t_hot < t_cold:
        raise ValueError(f"t_hot must be >= t_cold, got {t_hot} < {t_cold}")


def infinitesimal_work(g: float, h: float, t_hot: float, t_cold: float,
                       delta_h: float, rel_tol=QUAD_REL_TOL) -> float:
    """Per-site work of an infinitesimal stroke, w = delta_h (m(T_H) - m(T_C)).

    delta_h is a formal first-order coefficient; both magnetizations are
    evaluated at the common field h.
    """
    _check_temperatures(t_hot, t_cold)
    if t_hot == t_cold:
        return 0.0
    params = ModelParams(g, h)
    m_hot = magnetization(ThermalState(params, t_hot), rel_tol=rel_tol)
    m_cold = magnetization(ThermalState(params, t_cold), rel_tol=rel_tol)
    return delta_h * (m_hot - m_cold)


def first_order_heats(g: float, h: float, t_hot: float, t_cold: float,
                      delta_h: float, rel_tol=QUAD_REL_TOL):
    """Per-site heats to first order in the stroke size,

        q_hot  = u(T_H) - u(T_C) + delta_h [m(T_C) - m(T_H) + T_H m'(T_H)]
        q_cold = u(T_C) - u(T_H) - delta_h T_H m'(T_H)

    with all equilibrium quantities at the reference field h (the cold-leg
    field; the hot leg sits at h + delta_h).  The m'(T_H) term is the
    connected correlator of energy and its field derivative, reduced via
    <E dE/dh> - <E><dE/dh> = -T^2 dM/dT.  Heats satisfy
    q_hot + q_cold = -w with w from infinitesimal_work.
    """
    _check_temperatures(t_hot, t_cold)
    params = ModelParams(g, h)
    hot = ThermalState(params, t_hot)
    cold = ThermalState(params, t_cold)
    du = internal_energy(hot, rel_tol=rel_tol) - internal_energy(cold, rel_tol=rel_tol)
    if delta_h == 0.0:
        return du, -du
    if t_hot == t_cold:
        slope = t_hot * dm_dT(hot, rel_tol=rel_tol)
        return delta_h * slope, -delta_h * slope
    m_hot = magnetization(hot, rel_tol=rel_tol)
    m_cold = magnetization(cold, rel_tol=rel_tol)
    slope = t_hot * dm_dT(hot, rel_tol=rel_tol)
    q_hot = du + delta_h * (m_cold - m_hot + slope)
    q_cold = -du - delta_h * slope
    return q_hot, q_cold


def _fermi(x: float) -> float:
    e = math.exp(-x)
    return e / (1.0 + e)


def finite_cycle(spec: CycleSpec, zero_tolerance: float | None = None,
                 rel_tol=QUAD_REL_TOL) -> CycleResult:
    """Per-site work and heats of a finite-stroke cycle in the thermodynamic
    limit, from mode-resolved occupations:

        w   = (1/pi) int (omega_C - omega_H) (n_H - n_C)
        q_H = (1/pi) int omega_H (n_H - n_C)
        q_C = (1/pi) int omega_C (n_C - n_H)

    with n_T = n_F(omega_T(theta), T).  The three integrals are evaluated
    independently, so the first-law residual w + q_H + q_C measures
    quadrature consistency.
    """
    g = spec.g
    if zero_tolerance is None:
        zero_tolerance = ZERO_TOLERANCE_SCALE * g
    hh, hc = spec.h_hot, spec.h_cold
    th, tc = spec.t_hot, spec.t_cold
    gg = g * g

    def w_hot(theta):
        return 2.0 * math.sqrt(hh * hh + gg - 2.0 * g * hh * math.cos(theta))

    def w_cold(theta):
        return 2.0 * math.sqrt(hc * hc + gg - 2.0 * g * hc * math.cos(theta))

    def occ_diff(theta):
        return _fermi(w_hot(theta) / th) - _fermi(w_cold(theta) / tc)

    # Near-critical kink splitting keys off whichever field sits closer to g.
    h_split = hh if abs(abs(hh) - g) < abs(abs(hc) - g) else hc
    work = mode_integral(lambda t: (w_cold(t) - w_hot(t)) * occ_diff(t),
                         g, h_split, rel_tol=rel_tol) / math.pi
    q_hot = mode_integral(lambda t: w_hot(t) * occ_diff(t),
                          g, h_split, rel_tol=rel_tol) / math.pi
    q_cold = mode_integral(lambda t: -w_cold(t) * occ_diff(t),
                           g, h_split, rel_tol=rel_tol) / math.pi
    return CycleResult(work, q_hot, q_cold,
                       classify(work, q_hot, q_cold, zero_tolerance),
                       zero_tolerance)


def low_temperature_heats(spec: CycleSpec):
    """Two-level estimate of the heats from the lowest excitation gap
    2|h - g| on each leg:

        q_hot  ~  2|h_H - g| (e^(-|h_H - g|/T_H) - e^(-|h_C - g|/T_C))
        q_cold ~  2|h_C - g| (e^(-|h_C - g|/T_C) - e^(-|h_H - g|/T_H))

    Valid for temperatures well below both gaps.  It reproduces the signs
    and the ratio q_hot/q_cold = -|h_H - g|/|h_C - g| of the full mode sum,
    and hence the refrigeration condition, but not the per-site magnitude,
    which carries an extra thermally-occupied mode fraction.
    """
    gap_h = abs(spec.h_hot - spec.g)
    gap_c = abs(spec.h_cold - spec.g)
    occ_h = math.exp(-gap_h / spec.t_hot)
    occ_c = math.exp(-gap_c / spec.t_cold)
    q_hot = 2.0 * gap_h * (occ_h - occ_c)
    q_cold = 2.0 * gap_c * (occ_c - occ_h)
    return q_hot, q_cold


def refrigerator_window(g: float, delta_h: float, t_hot: float, t_cold: float):
    """Bounds in h_hot of the low-temperature refrigerator band,

        g + delta_h T_H/(T_H + T_C)  <  h_H  <  g + delta_h T_H/(T_H - T_C)

    for delta_h > 0, mirrored for delta_h < 0.  The outer bound diverges as
    the reservoir temperatures approach each other; it is returned as an
    infinity then.
    """
    _check_temperatures(t_hot, t_cold)
    if delta_h == 0.0:
        raise ValueError("refrigerator window needs a finite stroke delta_h != 0")
    inner = g + delta_h * t_hot / (t_hot + t_cold)
    if t_hot == t_cold:
        outer = math.copysign(math.inf, delta_h)
    else:
        outer = g + delta_h * t_hot / (t_hot - t_cold)
    if delta_h > 0.0:
        return inner, outer
    return outer, inner


def carnot_point(g: float, t_hot: float, t_cold: float):
    """Fields (h_cold, h_hot) = (g T_C/T_H, g T_H/T_C) where w = q_hot =
    q_cold = 0 and all four regimes meet.

    At these fields omega_H(theta)/T_H = omega_C(theta)/T_C for every theta,
    so the two thermal occupations coincide mode by mode.  (This requires
    the ratio omega_H/omega_C = T_H/T_C; h_cold h_hot = g^2 makes the ratio
    theta-independent.)
    """
    _check_temperatures(t_hot, t_cold)
    return g * t_cold / t_hot, g * t_hot / t_cold
