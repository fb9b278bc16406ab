"""Small-chain ground truth: dense diagonalization of the spin Hamiltonian,
brute-force cycle thermodynamics, and discrete free-fermion mode sums.

Everything here is independent of the thermodynamic-limit quadratures and
exists to validate them.  Basis states are indexed by bits, bit j = 0
meaning sz_j = +1, so the transverse magnetization operator is diagonal
with entry N - 2 popcount(i).
"""

import math
import struct
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

from .cycle import CycleResult, CycleSpec, ZERO_TOLERANCE_SCALE, classify
from .dispersion import ModelParams, mode_angles

MAX_DENSE_SITES = 12

CACHE_MAGIC = b"TFIMDIAG"
CACHE_VERSION = 1.0


class DimensionCapError(ValueError):
    """Dense diagonalization is capped at MAX_DENSE_SITES sites."""


@dataclass(frozen=True)
class SpectralDecomposition:
    """Ascending eigenvalues of the 2^N-dimensional chain and the
    transverse magnetization moment of each eigenstate."""

    n_sites: int
    g: float
    h: float
    energies: np.ndarray
    transverse_moments: np.ndarray


def _magnetization_diagonal(n: int) -> np.ndarray:
    dim = 1 << n
    idx = np.arange(dim, dtype=np.uint32)
    popcount = np.zeros(dim, dtype=np.int64)
    for j in range(n):
        popcount += (idx >> j) & 1
    return (n - 2 * popcount).astype(np.float64)


def hamiltonian_matrix(params: ModelParams) -> np.ndarray:
    """Dense matrix of H = -g sum sx_j sx_{j+1} - h sum sz_j, periodic.

    For N = 2 the periodic sum traverses the single bond twice, giving
    H = -2 g sx_1 sx_2 - h (sz_1 + sz_2).
    """
    n = params.n_sites
    if n is None:
        raise ValueError("dense diagonalization needs a finite n_sites")
    if n > MAX_DENSE_SITES:
        raise DimensionCapError(
            f"n_sites = {n} exceeds the dense cap of {MAX_DENSE_SITES}"
        )
    dim = 1 << n
    idx = np.arange(dim)
    ham = np.zeros((dim, dim))
    ham[idx, idx] = -params.h * _magnetization_diagonal(n)
    for j in range(n):
        mask = (1 << j) | (1 << ((j + 1) % n))
        ham[idx, idx ^ mask] += -params.g
    return ham


def _parity_sectors(n: int):
    # H commutes with the spin flip prod_j sz_j, diagonal here with entry
    # (-1)^popcount, so the matrix splits into two half-size blocks.
    dim = 1 << n
    idx = np.arange(dim, dtype=np.int64)
    popcount = np.zeros(dim, dtype=np.int64)
    for j in range(n):
        popcount += (idx >> j) & 1
    return idx[popcount % 2 == 0], idx[popcount % 2 == 1]


def _sector_eigensystem(params: ModelParams, sector: np.ndarray):
    n = params.n_sites
    dim = 1 << n
    size = len(sector)
    pos = np.full(dim, -1, dtype=np.int64)
    pos[sector] = np.arange(size)
    diag_m = _magnetization_diagonal(n)
    block = np.zeros((size, size))
    block[np.arange(size), np.arange(size)] = -params.h * diag_m[sector]
    rows = pos[sector]
    for j in range(n):
        mask = (1 << j) | (1 << ((j + 1) % n))
        block[rows, pos[sector ^ mask]] += -params.g
    energies, vectors = scipy.linalg.eigh(block, driver="evd")
    moments = (vectors ** 2).T @ diag_m[sector]
    return energies, vectors, moments


@lru_cache(maxsize=32)
def _diagonalize_cached(n: int, g: float, h: float) -> SpectralDecomposition:
    params = ModelParams(g, h, n)
    if n > MAX_DENSE_SITES:
        raise DimensionCapError(
            f"n_sites = {n} exceeds the dense cap of {MAX_DENSE_SITES}"
        )
    even, odd = _parity_sectors(n)
    e_even, _, m_even = _sector_eigensystem(params, even)
    e_odd, _, m_odd = _sector_eigensystem(params, odd)
    energies = np.concatenate([e_even, e_odd])
    moments = np.concatenate([m_even, m_odd])
    order = np.argsort(energies, kind="stable")  # deterministic within ties
    energies = energies[order]
    moments = moments[order]
    energies.flags.writeable = False
    moments.flags.writeable = False
    return SpectralDecomposition(n, g, h, energies, moments)


def diagonalize(params: ModelParams) -> SpectralDecomposition:
    """Full spectrum and per-eigenstate magnetization moments (memoized)."""
    if params.n_sites is None:
        raise ValueError("dense diagonalization needs a finite n_sites")
    return _diagonalize_cached(params.n_sites, params.g, params.h)


def eigensystem(params: ModelParams):
    """Uncached eigenpairs embedded in the full 2^N space, for validating
    the sector construction against the dense matrix."""
    n = params.n_sites
    dim = 1 << n
    energies_parts, vectors_parts = [], []
    for sector in _parity_sectors(n):
        e, v, _ = _sector_eigensystem(params, sector)
        full = np.zeros((dim, len(sector)))
        full[sector, :] = v
        energies_parts.append(e)
        vectors_parts.append(full)
    energies = np.concatenate(energies_parts)
    vectors = np.concatenate(vectors_parts, axis=1)
    order = np.argsort(energies, kind="stable")
    return energies[order], vectors[:, order]


def _gibbs(energies: np.ndarray, temperature: float) -> np.ndarray:
    shifted = (energies - energies[0]) / temperature
    weights = np.exp(-shifted)
    return weights / weights.sum()


@dataclass(frozen=True)
class ThermalExpectations:
    """Gibbs-ensemble totals at one temperature (divide by N per site)."""

    u: float
    f: float
    s: float
    m: float


def thermal_expectations(dec: SpectralDecomposition,
                         temperature: float) -> ThermalExpectations:
    """Exact U, F, S, M from the full spectrum; S is -sum p ln p, and
    F = U - T S holds to rounding."""
    if not temperature > 0.0:
        raise ValueError(f"temperature must be > 0, got {temperature}")
    p = _gibbs(dec.energies, temperature)
    u = float(p @ dec.energies)
    shifted = (dec.energies - dec.energies[0]) / temperature
    f = float(dec.energies[0]
              - temperature * math.log(np.exp(-shifted).sum()))
    nonzero = p[p > 0.0]
    s = float(-(nonzero * np.log(nonzero)).sum())
    m = float(p @ dec.transverse_moments)
    return ThermalExpectations(u=u, f=f, s=s, m=m)


def brute_force_cycle(params: ModelParams, spec: CycleSpec,
                      zero_tolerance: float | None = None) -> CycleResult:
    """Per-site cycle energetics from the full spectrum at both fields.

    The quasistatic ramp maps level populations by ascending-energy index.
    Gibbs populations are constant within any degenerate multiplet, so the
    pairing ambiguity inside a multiplet does not affect the totals.  Work
    is computed from the two ramp legs, which makes w + q_hot + q_cold = 0
    an algebraic identity.
    """
    n = params.n_sites
    if n is None:
        raise ValueError("brute-force cycle needs a finite n_sites")
    if zero_tolerance is None:
        zero_tolerance = ZERO_TOLERANCE_SCALE * spec.g
    hot = diagonalize(ModelParams(spec.g, spec.h_hot, n))
    cold = diagonalize(ModelParams(spec.g, spec.h_cold, n))
    p_hot = _gibbs(hot.energies, spec.t_hot)
    p_cold = _gibbs(cold.energies, spec.t_cold)
    u_hot = float(p_hot @ hot.energies)
    u_cold = float(p_cold @ cold.energies)
    after_ramp_down = float(p_hot @ cold.energies)
    after_ramp_up = float(p_cold @ hot.energies)
    work = ((after_ramp_down - u_hot) + (after_ramp_up - u_cold)) / n
    q_cold = (u_cold - after_ramp_down) / n
    q_hot = (u_hot - after_ramp_up) / n
    return CycleResult(work, q_hot, q_cold,
                       classify(work, q_hot, q_cold, zero_tolerance),
                       zero_tolerance)


def discrete_mode_cycle(params: ModelParams, spec: CycleSpec,
                        zero_tolerance: float | None = None) -> CycleResult:
    """Per-site cycle energetics from the N discrete free-fermion modes;
    converges to the finite_cycle integrals as N grows (no dense cap)."""
    n = params.n_sites
    if n is None:
        raise ValueError("discrete mode sums need a finite, even n_sites")
    if zero_tolerance is None:
        zero_tolerance = ZERO_TOLERANCE_SCALE * spec.g
    theta = mode_angles(n)
    g = spec.g
    w_hot = 2.0 * np.sqrt(spec.h_hot ** 2 + g * g
                          - 2.0 * g * spec.h_hot * np.cos(theta))
    w_cold = 2.0 * np.sqrt(spec.h_cold ** 2 + g * g
                           - 2.0 * g * spec.h_cold * np.cos(theta))

    def fermi(x):
        e = np.exp(-x)
        return e / (1.0 + e)

    occ_diff = fermi(w_hot / spec.t_hot) - fermi(w_cold / spec.t_cold)
    work = float(np.sum((w_cold - w_hot) * occ_diff)) / n
    q_hot = float(np.sum(w_hot * occ_diff)) / n
    q_cold = float(np.sum(-w_cold * occ_diff)) / n
    return CycleResult(work, q_hot, q_cold,
                       classify(work, q_hot, q_cold, zero_tolerance),
                       zero_tolerance)


def detect_level_crossings(g: float, n_sites: int, h_start: float,
                           h_end: float, steps: int = 9) -> int:
    """Count eigen-branch order changes over a coarse field sweep.

    Branches are continued between neighbouring field values by maximum
    eigenvector overlap; a nonzero count means ascending-index pairing is
    not the true adiabatic continuation somewhere in [h_start, h_end].
    Reported, not resolved.
    """
    if n_sites > MAX_DENSE_SITES:
        raise DimensionCapError(
            f"n_sites = {n_sites} exceeds the dense cap of {MAX_DENSE_SITES}"
        )
    hs = np.linspace(h_start, h_end, steps)
    _, prev_vecs = scipy.linalg.eigh(
        hamiltonian_matrix(ModelParams(g, hs[0], n_sites)), driver="evd")
    crossings = 0
    for h in hs[1:]:
        energies, vecs = scipy.linalg.eigh(
            hamiltonian_matrix(ModelParams(g, h, n_sites)), driver="evd")
        overlap = np.abs(prev_vecs.T @ vecs)
        follow = np.argmax(overlap, axis=1)
        # Permutations within a degenerate multiplet are basis ambiguity,
        # not crossings; only count landings at a different energy.
        scale = max(abs(energies[0]), abs(energies[-1]), 1e-300)
        crossings += int(np.sum(np.abs(energies[follow] - energies)
                                > 1e-6 * scale))
        prev_vecs = vecs
    return crossings


def save_decomposition(path, dec: SpectralDecomposition) -> None:
    """Write a decomposition as: 8-byte magic, then version, N, g, h as
    little-endian float64, then 2^N energies and 2^N moments."""
    header = struct.pack("<8sdddd", CACHE_MAGIC, CACHE_VERSION,
                         float(dec.n_sites), dec.g, dec.h)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(np.asarray(dec.energies, dtype="<f8").tobytes())
        fh.write(np.asarray(dec.transverse_moments, dtype="<f8").tobytes())


def load_decomposition(path) -> SpectralDecomposition:
    with open(path, "rb") as fh:
        header = fh.read(struct.calcsize("<8sdddd"))
        magic, version, n_float, g, h = struct.unpack("<8sdddd", header)
        if magic != CACHE_MAGIC:
            raise ValueError(f"not a decomposition cache file: {path}")
        if version != CACHE_VERSION:
            raise ValueError(f"unsupported cache version {version}")
        n = int(n_float)
        dim = 1 << n
        energies = np.frombuffer(fh.read(8 * dim), dtype="<f8").astype(np.float64)
        moments = np.frombuffer(fh.read(8 * dim), dtype="<f8").astype(np.float64)
    return SpectralDecomposition(n, g, h, energies, moments)
