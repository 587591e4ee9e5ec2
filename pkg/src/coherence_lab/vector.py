"""Two-point coherence of a two-component plane wave.

The coherence Stokes operators ``S_n(x1, x2) = E^dagger(x1) sigma_n E(x2)``
are generally non-Hermitian; their Hermitian parts ``S_n'`` and ``S_n''``
carry the observable real and imaginary components.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List

import numpy as np

from .field import FieldConfig, as_phases, plane_wave, reduce_phase, sandwich
from .fock import _frozen, _variance_unchecked, commutator_block, expectation, hermitian_parts, safe_indices
from .states import QuantumState, require_modes, require_safe
from .stokes import (
    COMMUTATOR_RTOL,
    PAULI,
    RELATION_RTOL,
    CommutatorReport,
    UncertaintyCheck,
    _max_abs,
    _stokes_operators,
    cyclic_partner,
    stokes_params,
    tolerance_scale,
)

PRIME, DPRIME = "'", "''"


class PlaneWaveStokes:
    """Coherence Stokes operators and their Hermitian parts at one pair of points."""

    def __init__(self, C: complex, phase1: float, phase2: float, dim: int):
        cfg = FieldConfig(C)
        left = plane_wave(cfg, phase1, dim, 2)
        right = plane_wave(cfg, phase2, dim, 2)
        self.theta = phase2 - phase1
        self.dim = dim
        self.full = tuple(_frozen(sandwich(left, sigma, right)) for sigma in PAULI)
        parts = [hermitian_parts(op) for op in self.full]
        self.real = tuple(_frozen(p[0]) for p in parts)
        self.imag = tuple(_frozen(p[1]) for p in parts)

    def part(self, n: int, which: str) -> np.ndarray:
        return self.real[n] if which == PRIME else self.imag[n]


@lru_cache(maxsize=2)
def _plane_wave_stokes(C: complex, phase1: float, phase2: float, dim: int) -> PlaneWaveStokes:
    return PlaneWaveStokes(C, phase1, phase2, dim)


def plane_wave_stokes(cfg: FieldConfig, theta, dim: int) -> PlaneWaveStokes:
    phase1, phase2 = as_phases(theta, cfg)
    return _plane_wave_stokes(cfg.C, phase1, phase2, dim)


def coherence_stokes_operator(n: int, cfg: FieldConfig, theta, dim: int) -> np.ndarray:
    if n not in (0, 1, 2, 3):
        raise ValueError(f"Stokes index must be 0..3, got {n}")
    return plane_wave_stokes(cfg, theta, dim).full[n]


def coherence_stokes_closed_form(n: int, cfg: FieldConfig, theta: float, dim: int) -> np.ndarray:
    return _stokes_operators(cfg.C, dim)[n] * complex(math.cos(theta), math.sin(theta))


def stokes_from_matrix(G) -> np.ndarray:
    """Stokes parameters of a 2x2 coherence matrix with ``G[a, b] = <E_a^dagger(x1) E_b(x2)>``.

    With that element order the sandwich ``E^dagger sigma_n E`` equals
    ``Tr[G sigma_n^T]``; the transpose only matters for ``n = 3``.
    """
    G = np.asarray(G)
    return np.array([np.trace(G @ sigma.T) for sigma in PAULI])


def matrix_from_stokes(S) -> np.ndarray:
    """Inverse of :func:`stokes_from_matrix`: ``G = (1/2) sum_n S_n sigma_n^T``."""
    return 0.5 * sum(s * sigma.T for s, sigma in zip(S, PAULI))


@dataclass(frozen=True)
class CoherenceMatrixResult:
    G: np.ndarray
    theta: float

    def stokes(self) -> np.ndarray:
        return stokes_from_matrix(self.G)


def coherence_matrix(state: QuantumState, cfg: FieldConfig, theta) -> CoherenceMatrixResult:
    require_modes(state, 2)
    phase1, phase2 = as_phases(theta, cfg)
    left = plane_wave(cfg, phase1, state.dim_per_mode, 2)
    right = plane_wave(cfg, phase2, state.dim_per_mode, 2)
    G = np.empty((2, 2), dtype=complex)
    for a in range(2):
        for b in range(2):
            unit = np.zeros((2, 2))
            unit[a, b] = 1
            G[a, b] = expectation(state, sandwich(left, unit, right))
    return CoherenceMatrixResult(G, phase2 - phase1)


@dataclass(frozen=True)
class CoherenceStokesRecord:
    theta: float
    S: np.ndarray
    dS_prime: np.ndarray
    dS_dprime: np.ndarray


def coherence_stokes(state: QuantumState, cfg: FieldConfig, theta) -> CoherenceStokesRecord:
    require_modes(state, 2)
    require_safe(state)
    ops = plane_wave_stokes(cfg, theta, state.dim_per_mode)
    F = state.factor
    S = np.array([expectation(state, op) for op in ops.full])
    d_re = np.sqrt([_variance_unchecked(F, op) for op in ops.real])
    d_im = np.sqrt([_variance_unchecked(F, op) for op in ops.imag])
    return CoherenceStokesRecord(reduce_phase(ops.theta), S, d_re, d_im)


def vector_trace(state: QuantumState, cfg: FieldConfig, theta_grid: Iterable[float]) -> List[CoherenceStokesRecord]:
    grid = list(theta_grid)
    if not grid:
        raise ValueError("theta grid is empty")
    return [coherence_stokes(state, cfg, theta) for theta in grid]


def commutator_targets(theta: float):
    """Trigonometric weight of ``2i|C|^2 eps_jkl S_l`` in each two-point family."""
    return {
        (PRIME, PRIME): math.cos(theta) ** 2,
        (DPRIME, DPRIME): math.sin(theta) ** 2,
        (PRIME, DPRIME): math.sin(2 * theta) / 2,
    }


def verify_coherence_commutators(cfg: FieldConfig, theta, dim: int) -> CommutatorReport:
    if dim < 3:
        raise ValueError(f"commutator checks need dim >= 3, got {dim}")
    ops = plane_wave_stokes(cfg, theta, dim)
    one_point = _stokes_operators(cfg.C, dim)
    idx = safe_indices(dim, 2)
    c2 = cfg.intensity_scale
    dev = {}
    dev["[S0',S0'']"] = _max_abs(commutator_block(ops.real[0], ops.imag[0], idx))
    for n in (1, 2, 3):
        for mu in (PRIME, DPRIME):
            for nu in (PRIME, DPRIME):
                key = f"[S0{mu},S{n}{nu}]"
                dev[key] = _max_abs(commutator_block(ops.part(0, mu), ops.part(n, nu), idx))
    for (mu, nu), weight in commutator_targets(ops.theta).items():
        for j in (1, 2, 3):
            for k in (1, 2, 3):
                if j == k:
                    continue
                l, eps = cyclic_partner(j, k)
                expected = 2j * c2 * eps * weight * one_point[l][np.ix_(idx, idx)]
                actual = commutator_block(ops.part(j, mu), ops.part(k, nu), idx)
                dev[f"[S{j}{mu},S{k}{nu}]"] = _max_abs(actual - expected)
    return CommutatorReport(dev, COMMUTATOR_RTOL * c2**2 * dim)


def check_coherence_uncertainty_relations(state: QuantumState, cfg: FieldConfig, theta, j: int, k: int):
    """Real-real, imaginary-imaginary and real-imaginary relations for the pair ``(j, k)``."""
    l, eps = cyclic_partner(j, k)
    record = coherence_stokes(state, cfg, theta)
    one_point = stokes_params(state, cfg)
    th = plane_wave_stokes(cfg, theta, state.dim_per_mode).theta
    base = cfg.intensity_scale * abs(eps) * abs(one_point.S[l])
    slack = RELATION_RTOL * tolerance_scale(state, cfg)
    pairs = (
        (record.dS_prime[j] * record.dS_prime[k], base * math.cos(th) ** 2),
        (record.dS_dprime[j] * record.dS_dprime[k], base * math.sin(th) ** 2),
        (record.dS_prime[j] * record.dS_dprime[k], base * abs(math.sin(2 * th)) / 2),
    )
    return tuple(UncertaintyCheck(float(lhs), float(rhs), bool(lhs >= rhs - slack)) for lhs, rhs in pairs)


@dataclass(frozen=True)
class VarianceSum:
    sums: np.ndarray
    reference: np.ndarray
    residuals: np.ndarray


def variance_sum_check(state: QuantumState, cfg: FieldConfig, theta) -> VarianceSum:
    """Compare ``dS_n'^2 + dS_n''^2`` with the one-point variance ``dS_n^2``."""
    record = coherence_stokes(state, cfg, theta)
    sums = record.dS_prime**2 + record.dS_dprime**2
    reference = stokes_params(state, cfg).dS ** 2
    return VarianceSum(sums, reference, np.abs(sums - reference))
