"""Quantum Otto cycle thermodynamics of the transverse-field Ising chain.

Closed-form free-fermion thermodynamics in the thermodynamic limit, the
full ladder of magnetization approximations, regime classification of
finite and infinitesimal work strokes, zero-work boundary solvers, and a
dense small-chain diagonalization oracle for validation.
"""

from .boundaries import (
    NoPeakError,
    ScalingCheck,
    WZeroCurve,
    equal_magnetization_temperature,
    magnetization_peak_temperature,
    near_critical_scaling_check,
    w_zero_curve,
)
from .cycle import (
    CycleResult,
    CycleSpec,
    Regime,
    carnot_point,
    classify,
    finite_cycle,
    first_order_heats,
    infinitesimal_work,
    low_temperature_heats,
    refrigerator_window,
)
from .dispersion import (
    THERMODYNAMIC_LIMIT,
    GroundStateEnergy,
    ModelParams,
    SingularPointError,
    domega_dh,
    ground_state_energy,
    mode_angles,
    omega,
)
from .equilibrium import (
    MagnetizationModel,
    ThermalState,
    dm_dT,
    entropy,
    free_energy,
    internal_energy,
    magnetization,
    total_magnetization,
    zero_temperature_magnetization,
)
from .exactdiag import (
    SpectralDecomposition,
    ThermalExpectations,
    brute_force_cycle,
    detect_level_crossings,
    diagonalize,
    discrete_mode_cycle,
    hamiltonian_matrix,
    load_decomposition,
    save_decomposition,
    thermal_expectations,
)
from .numerics import BracketingError, QuadratureError
from .quasiparticle import (
    DomainWallState,
    QpMagnetization,
    mu,
    qp_dm_dT,
    qp_free_energy,
    qp_magnetization,
)
from .sweep import Axis, SweepGrid, SweepRecord, emit, run_sweep

__all__ = [name for name in dir() if not name.startswith("_")]
