"""Free-fermion spectral functions of the transverse-field Ising chain.

The chain is H = -g sum_j sx_j sx_{j+1} - h sum_j sz_j with periodic
boundaries.  After the Jordan-Wigner mapping the excitation modes carry
energy omega(theta) = 2 sqrt(h^2 + g^2 - 2 g h cos theta); finite chains
use the antiperiodic-sector angles theta_j = pi (2j - 1) / N.

Units: k_B = hbar = 1 throughout, so temperatures are energies.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .numerics import mode_integral

# Sentinel for ModelParams.n_sites meaning the N -> infinity chain.
THERMODYNAMIC_LIMIT = None


class SingularPointError(ValueError):
    """The mode energy vanishes here and d(omega)/dh is undefined."""


@dataclass(frozen=True)
class ModelParams:
    """Couplings of the chain; n_sites is None in the thermodynamic limit."""

    g: float
    h: float
    n_sites: int | None = THERMODYNAMIC_LIMIT

    def __post_init__(self):
        if not self.g > 0.0:
            raise ValueError(f"coupling g must be strictly positive, got {self.g}")
        if self.n_sites is not None:
            if self.n_sites < 2 or self.n_sites % 2:
                raise ValueError(
                    f"finite chains need an even n_sites >= 2, got {self.n_sites}"
                )


class GroundStateEnergy(NamedTuple):
    per_site: float
    total: float | None  # None in the thermodynamic limit


def mode_angles(n_sites: int) -> np.ndarray:
    """The n angles theta_j = pi (2j - 1) / N, j = 1..N, spanning (0, 2 pi)."""
    return math.pi * (2.0 * np.arange(1, n_sites + 1) - 1.0) / n_sites


def omega(params: ModelParams, theta):
    """Mode energy 2 sqrt(h^2 + g^2 - 2 g h cos theta); scalar or array theta."""
    g, h = params.g, params.h
    return 2.0 * np.sqrt(h * h + g * g - 2.0 * g * h * np.cos(theta))


def domega_dh(params: ModelParams, theta):
    """Field derivative 2 (h - g cos theta) / sqrt(g^2 + h^2 - 2 g h cos theta).

    Undefined where omega vanishes (h = g, theta = 0); that point raises
    SingularPointError instead of returning an infinity.
    """
    g, h = params.g, params.h
    root = np.sqrt(h * h + g * g - 2.0 * g * h * np.cos(theta))
    if np.any(root == 0.0):
        raise SingularPointError(
            f"d(omega)/dh is singular at omega = 0 (g = {g}, h = {h})"
        )
    return 2.0 * (h - g * np.cos(theta)) / root


def ground_state_energy(params: ModelParams,
                        rel_tol=None, abs_tol=None) -> GroundStateEnergy:
    """Ground state energy; -(1/2 pi) integral of omega per site in the
    thermodynamic limit, -(1/2) sum_j omega(theta_j) for finite chains."""
    kwargs = {}
    if rel_tol is not None:
        kwargs["rel_tol"] = rel_tol
    if abs_tol is not None:
        kwargs["abs_tol"] = abs_tol
    if params.n_sites is None:
        integral = mode_integral(lambda t: omega(params, t), params.g, params.h,
                                 **kwargs)
        per_site = -integral / (2.0 * math.pi)
        return GroundStateEnergy(per_site=per_site, total=None)
    total = -0.5 * float(np.sum(omega(params, mode_angles(params.n_sites))))
    return GroundStateEnergy(per_site=total / params.n_sites, total=total)
