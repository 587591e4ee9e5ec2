"""One-point polarization Stokes operators of a two-mode plane wave."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, NamedTuple

import numpy as np

from .errors import InvalidIndexPair
from .field import FieldConfig, plane_wave, sandwich
from .fock import (
    _frozen,
    _variance_unchecked,
    adjoint,
    commutator_block,
    expectation,
    mode_annihilators,
    safe_indices,
)
from .states import QuantumState, require_modes, require_safe

# Ordering: S1 ~ h/v difference, S2 ~ +-45 deg, S3 ~ circular.
PAULI = (
    np.eye(2, dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
)
for _s in PAULI:
    _s.flags.writeable = False

LEVI_CIVITA = np.zeros((3, 3, 3))
for (_j, _k, _l), _sign in {
    (0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1,
    (0, 2, 1): -1, (2, 1, 0): -1, (1, 0, 2): -1,
}.items():
    LEVI_CIVITA[_j, _k, _l] = _sign
LEVI_CIVITA.flags.writeable = False

COMMUTATOR_RTOL = 1e-10
RELATION_RTOL = 1e-9


def cyclic_partner(j: int, k: int):
    """For Stokes indices ``j != k`` in 1..3, return ``(l, epsilon_jkl)``."""
    if j not in (1, 2, 3) or k not in (1, 2, 3):
        raise InvalidIndexPair(f"Stokes indices must lie in 1..3, got ({j}, {k})")
    if j == k:
        raise InvalidIndexPair(f"index pair must be distinct, got ({j}, {k})")
    l = 6 - j - k
    return l, int(LEVI_CIVITA[j - 1, k - 1, l - 1])


def _check_n(n):
    if n not in (0, 1, 2, 3):
        raise InvalidIndexPair(f"Stokes index must be 0..3, got {n}")


def tolerance_scale(state: QuantumState, cfg: FieldConfig) -> float:
    """``|C|^4 * max(1, n_max)^2`` with ``n_max`` the largest photon number in the support."""
    return cfg.intensity_scale**2 * max(1, state.max_photons) ** 2


def stokes_operator(n: int, cfg: FieldConfig, dim: int) -> np.ndarray:
    """``E^dagger(x) sigma_n E(x)`` on the h (x) v space of per-mode dimension ``dim``."""
    _check_n(n)
    return _stokes_operators(cfg.C, dim)[n]


@lru_cache(maxsize=8)
def _stokes_operators(C: complex, dim: int) -> tuple:
    cfg = FieldConfig(C)
    E = plane_wave(cfg, 0.0, dim, 2)
    return tuple(_frozen(sandwich(E, sigma, E)) for sigma in PAULI)


def stokes_operator_closed_form(n: int, cfg: FieldConfig, dim: int) -> np.ndarray:
    _check_n(n)
    ah, av = mode_annihilators(dim, 2)
    ahd, avd = adjoint(ah), adjoint(av)
    c2 = cfg.intensity_scale
    if n == 0:
        return c2 * (ahd @ ah + avd @ av)
    if n == 1:
        return c2 * (ahd @ ah - avd @ av)
    if n == 2:
        return c2 * (ahd @ av + avd @ ah)
    return 1j * c2 * (avd @ ah - ahd @ av)


@dataclass(frozen=True)
class StokesResult:
    S: np.ndarray
    dS: np.ndarray

    @property
    def polarization_norm(self) -> float:
        return float(np.linalg.norm(self.S[1:].real))


def stokes_params(state: QuantumState, cfg: FieldConfig) -> StokesResult:
    require_modes(state, 2)
    require_safe(state)
    ops = _stokes_operators(cfg.C, state.dim_per_mode)
    S = np.array([expectation(state, op) for op in ops])
    dS = np.sqrt([_variance_unchecked(state.factor, op) for op in ops])
    return StokesResult(S, dS)


@dataclass(frozen=True)
class CommutatorReport:
    """Largest entrywise deviation of each identity on the safe block."""

    deviations: Dict[str, float] = field(default_factory=dict)
    tolerance: float = 0.0

    @property
    def max_deviation(self) -> float:
        return max(self.deviations.values(), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_deviation < self.tolerance


def _max_abs(block) -> float:
    return float(np.max(np.abs(block))) if block.size else 0.0


def verify_stokes_commutators(cfg: FieldConfig, dim: int) -> CommutatorReport:
    if dim < 3:
        raise InvalidIndexPair(f"commutator checks need dim >= 3, got {dim}")
    ops = _stokes_operators(cfg.C, dim)
    idx = safe_indices(dim, 2)
    c2 = cfg.intensity_scale
    dev = {}
    for n in (1, 2, 3):
        dev[f"[S0,S{n}]"] = _max_abs(commutator_block(ops[0], ops[n], idx))
    for j in (1, 2, 3):
        for k in (1, 2, 3):
            if j == k:
                continue
            l, eps = cyclic_partner(j, k)
            expected = 2j * c2 * eps * ops[l][np.ix_(idx, idx)]
            dev[f"[S{j},S{k}]"] = _max_abs(commutator_block(ops[j], ops[k], idx) - expected)
    return CommutatorReport(dev, COMMUTATOR_RTOL * c2**2 * dim)


class UncertaintyCheck(NamedTuple):
    lhs: float
    rhs: float
    holds: bool


def check_uncertainty_relation(state: QuantumState, cfg: FieldConfig, j: int, k: int) -> UncertaintyCheck:
    """``dS_j dS_k >= |C|^2 |eps_jkl| |S_l|``."""
    l, eps = cyclic_partner(j, k)
    result = stokes_params(state, cfg)
    lhs = float(result.dS[j] * result.dS[k])
    rhs = cfg.intensity_scale * abs(eps) * abs(result.S[l])
    return UncertaintyCheck(lhs, rhs, lhs >= rhs - RELATION_RTOL * tolerance_scale(state, cfg))
