"""First-order coherence of a scalar plane-wave mode."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List

import numpy as np

from .field import FieldConfig, as_phases, plane_wave, reduce_phase, sandwich
from .fock import expectation, hermitian_parts, make_number, std_dev
from .states import QuantumState, require_modes, require_safe


@dataclass(frozen=True)
class CoherenceRecord:
    theta: float
    g: complex
    dg_real: float
    dg_imag: float


def coherence_operator(cfg: FieldConfig, theta, dim: int) -> np.ndarray:
    """``E^dagger(x1) E(x2)`` for the single-mode plane wave.

    ``theta`` is either the phase difference or a :class:`PhasePair`.
    """
    phase1, phase2 = as_phases(theta, cfg)
    return sandwich(plane_wave(cfg, phase1, dim), [[1]], plane_wave(cfg, phase2, dim))


def coherence_operator_closed_form(cfg: FieldConfig, theta: float, dim: int) -> np.ndarray:
    return cfg.intensity_scale * make_number(dim) * complex(math.cos(theta), math.sin(theta))


def coherence_expectation(state: QuantumState, cfg: FieldConfig, theta) -> complex:
    require_modes(state, 1)
    return expectation(state, coherence_operator(cfg, theta, state.dim_per_mode))


def coherence_uncertainty(state: QuantumState, cfg: FieldConfig, theta):
    """Standard deviations of the real and imaginary coherence observables."""
    require_modes(state, 1)
    require_safe(state)
    re_op, im_op = hermitian_parts(coherence_operator(cfg, theta, state.dim_per_mode))
    return std_dev(state, re_op), std_dev(state, im_op)


def scalar_record(state: QuantumState, cfg: FieldConfig, theta: float) -> CoherenceRecord:
    require_modes(state, 1)
    require_safe(state)
    op = coherence_operator(cfg, theta, state.dim_per_mode)
    re_op, im_op = hermitian_parts(op)
    return CoherenceRecord(
        reduce_phase(float(theta)),
        expectation(state, op),
        std_dev(state, re_op),
        std_dev(state, im_op),
    )


def scalar_trace(state: QuantumState, cfg: FieldConfig, theta_grid: Iterable[float]) -> List[CoherenceRecord]:
    grid = list(theta_grid)
    if not grid:
        raise ValueError("theta grid is empty")
    return [scalar_record(state, cfg, theta) for theta in grid]
