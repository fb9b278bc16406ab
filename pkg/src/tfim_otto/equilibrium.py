"""Thermodynamic-limit equilibrium quantities of the chain and the ladder of
analytic approximations to the transverse magnetization.

All extensive quantities are returned per site (free energy f = F/N,
internal energy u = U/N, entropy s = S/N, magnetization m = M/N); for a
finite ``n_sites`` multiply by N, or use ``total_magnetization``.

Sign conventions are fixed by m = -df/dh, which makes m positive for
positive field.  Two printed-formula ambiguities are resolved here by
requiring internal consistency with that identity:

* the exact dm/dT carries prefactor 1/(pi T^2), fixed by matching the
  finite difference of the exact magnetization;
* the Boltzmann-weighted mode expansion is the low-temperature *correction*
  to the magnetization, so the evaluator adds it to the zero-temperature
  value m(0), which reproduces the exact small-T limit.
"""

import math
from dataclasses import dataclass
from enum import Enum

from .dispersion import ModelParams, domega_dh, ground_state_energy
from .numerics import QUAD_ABS_TOL, QUAD_REL_TOL, mode_integral

LN2 = math.log(2.0)


@dataclass(frozen=True)
class ThermalState:
    """A chain in equilibrium at temperature > 0 (zero temperature has
    dedicated closed-form evaluators below)."""

    params: ModelParams
    temperature: float

    def __post_init__(self):
        if not self.temperature > 0.0:
            raise ValueError(
                f"temperature must be > 0, got {self.temperature}; "
                "use the zero-temperature evaluators for T = 0"
            )


class MagnetizationModel(Enum):
    """Selector among the magnetization evaluators."""

    EXACT = "exact"
    HIGH_T = "high-t"
    LINEAR_H = "linear-h"
    THIRD_ORDER = "third-order"
    BOLTZMANN_MODES = "boltzmann-modes"
    QUASIPARTICLE_DW = "quasiparticle"
    NON_INTERACTING = "non-interacting"


def _log2cosh(y: float) -> float:
    # log(2 cosh y), overflow-safe for large |y|
    ay = abs(y)
    return ay + math.log1p(math.exp(-2.0 * ay))


def _sech2(y: float) -> float:
    # sech^2 y, overflow-safe
    e = math.exp(-2.0 * abs(y))
    return 4.0 * e / (1.0 + e) ** 2


def _fermi(x: float) -> float:
    # 1/(e^x + 1) for x >= 0
    e = math.exp(-x)
    return e / (1.0 + e)


def free_energy(state: ThermalState, rel_tol=QUAD_REL_TOL) -> float:
    """Free energy per site, f = -(T/pi) integral of log(2 cosh(omega/2T))."""
    g, h = state.params.g, state.params.h
    t = state.temperature
    gg, hh = g * g, h * h

    def integrand(theta):
        w = 2.0 * math.sqrt(hh + gg - 2.0 * g * h * math.cos(theta))
        return _log2cosh(0.5 * w / t)

    return -(t / math.pi) * mode_integral(integrand, g, h, rel_tol=rel_tol)


def internal_energy(state: ThermalState, rel_tol=QUAD_REL_TOL) -> float:
    """Internal energy per site, u = -(1/2 pi) integral of omega tanh(omega/2T)."""
    g, h = state.params.g, state.params.h
    t = state.temperature
    gg, hh = g * g, h * h

    def integrand(theta):
        w = 2.0 * math.sqrt(hh + gg - 2.0 * g * h * math.cos(theta))
        return w * math.tanh(0.5 * w / t)

    return -mode_integral(integrand, g, h, rel_tol=rel_tol) / (2.0 * math.pi)


def entropy(state: ThermalState, rel_tol=QUAD_REL_TOL) -> float:
    """Entropy per site in units of k_B, s = (u - f)/T."""
    u = internal_energy(state, rel_tol=rel_tol)
    f = free_energy(state, rel_tol=rel_tol)
    return (u - f) / state.temperature


def zero_temperature_magnetization(params: ModelParams, rel_tol=QUAD_REL_TOL) -> float:
    """Ground-state magnetization per site, m(0) = (1/2 pi) integral of
    d(omega)/dh (the tanh factor saturates to 1)."""
    g, h = params.g, params.h
    if h == 0.0:
        return 0.0
    gg, hh = g * g, h * h

    def integrand(theta):
        c = math.cos(theta)
        return (h - g * c) / math.sqrt(hh + gg - 2.0 * g * h * c)

    return mode_integral(integrand, g, h, rel_tol=rel_tol) / math.pi


def _magnetization_exact(params, t, rel_tol):
    g, h = params.g, params.h
    if h == 0.0:
        return 0.0
    gg, hh = g * g, h * h

    def integrand(theta):
        c = math.cos(theta)
        root = math.sqrt(hh + gg - 2.0 * g * h * c)
        return (h - g * c) / root * math.tanh(root / t)

    return mode_integral(integrand, g, h, rel_tol=rel_tol) / math.pi


def _magnetization_high_t(params, t):
    g, h = params.g, params.h
    return (h / t) * (1.0 - (2.0 * g * g + h * h) / (3.0 * t * t))


def _magnetization_linear_h(params, t):
    g, h = params.g, params.h
    x = g / t
    return (h / (2.0 * g)) * (math.tanh(x) + x * _sech2(x))


def _magnetization_third_order(params, t):
    g, h = params.g, params.h
    x = g / t
    tanh_x = math.tanh(x)
    sech2_x = _sech2(x)
    linear = (h / (2.0 * g)) * (tanh_x + x * sech2_x)
    bracket = (6.0 * x ** 3 * sech2_x ** 2 - tanh_x
               + x * sech2_x * (1.0 - 4.0 * x * x + 4.0 * x * tanh_x))
    return linear - (h ** 3 / (16.0 * g ** 3)) * bracket


def _magnetization_boltzmann_modes(params, t, rel_tol):
    g, h = params.g, params.h
    gg, hh = g * g, h * h

    def integrand(theta):
        c = math.cos(theta)
        root = math.sqrt(hh + gg - 2.0 * g * h * c)
        if root == 0.0:
            return 0.0  # integrable: numerator vanishes faster
        return (h - g * c) / (2.0 * root) * math.exp(-2.0 * root / t)

    correction = -(4.0 / math.pi) * mode_integral(integrand, g, h, rel_tol=rel_tol)
    return zero_temperature_magnetization(params, rel_tol=rel_tol) + correction


def _magnetization_quasiparticle(params, t, rel_tol):
    g, h = params.g, params.h

    def integrand(theta):
        mu = 2.0 * (g - h * math.cos(theta))
        return math.cos(theta) * math.exp(-mu / t)

    correction = (2.0 / math.pi) * mode_integral(integrand, g, h, rel_tol=rel_tol)
    return zero_temperature_magnetization(params, rel_tol=rel_tol) + correction


def _magnetization_non_interacting(params, t):
    return math.tanh(params.h / t)


def magnetization(state: ThermalState,
                  model: MagnetizationModel = MagnetizationModel.EXACT,
                  rel_tol=QUAD_REL_TOL) -> float:
    """Transverse magnetization per site, m = -df/dh, under the given model.

    Approximate models are evaluated verbatim inside and outside their
    validity windows (the high-temperature expansion diverges at small T,
    the Boltzmann/quasiparticle forms fail at high T); nothing is clamped.
    """
    params, t = state.params, state.temperature
    if model is MagnetizationModel.EXACT:
        return _magnetization_exact(params, t, rel_tol)
    if model is MagnetizationModel.HIGH_T:
        return _magnetization_high_t(params, t)
    if model is MagnetizationModel.LINEAR_H:
        return _magnetization_linear_h(params, t)
    if model is MagnetizationModel.THIRD_ORDER:
        return _magnetization_third_order(params, t)
    if model is MagnetizationModel.BOLTZMANN_MODES:
        return _magnetization_boltzmann_modes(params, t, rel_tol)
    if model is MagnetizationModel.QUASIPARTICLE_DW:
        return _magnetization_quasiparticle(params, t, rel_tol)
    if model is MagnetizationModel.NON_INTERACTING:
        return _magnetization_non_interacting(params, t)
    raise ValueError(f"unknown magnetization model {model!r}")


def total_magnetization(state: ThermalState,
                        model: MagnetizationModel = MagnetizationModel.EXACT,
                        rel_tol=QUAD_REL_TOL) -> float:
    """Total magnetization M = N m; requires a finite chain."""
    n = state.params.n_sites
    if n is None:
        raise ValueError("total magnetization is extensive; set a finite n_sites")
    return n * magnetization(state, model, rel_tol=rel_tol)


def dm_dT(state: ThermalState, rel_tol=QUAD_REL_TOL) -> float:
    """Temperature derivative of the exact magnetization per site,

        dm/dT = -(1/(pi T^2)) integral of (h - g cos theta) sech^2(omega/2T).

    Strictly negative for h > g; changes sign at low temperature for small
    enough h < g, which is what opens the accelerator regime.
    """
    g, h = state.params.g, state.params.h
    t = state.temperature
    gg, hh = g * g, h * h

    def integrand(theta):
        c = math.cos(theta)
        root = math.sqrt(hh + gg - 2.0 * g * h * c)
        return (h - g * c) * _sech2(root / t)

    return -mode_integral(integrand, g, h, rel_tol=rel_tol) / (math.pi * t * t)


def ground_energy_per_site(params: ModelParams, rel_tol=QUAD_REL_TOL) -> float:
    """Convenience wrapper for the T -> 0 limit of the internal energy."""
    return ground_state_energy(params, rel_tol=rel_tol).per_site
