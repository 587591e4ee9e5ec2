"""Quantized monochromatic plane-wave field operators.

A field operator at a space-time point is an envelope ``C exp(i phi)`` times
the annihilators of its polarization modes. Bilinears built from two such
fields are assembled by :func:`sandwich` without assuming anything about
the resulting closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidConfig
from .fock import _check_dim, ladder_bilinears, mode_annihilators


@dataclass(frozen=True)
class FieldConfig:
    C: complex = 1 + 0j
    k: tuple = (0.0, 0.0, 0.0)
    omega: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "C", complex(self.C))
        k = tuple(float(x) for x in self.k)
        if len(k) != 3:
            raise InvalidConfig(f"wave vector must have 3 components, got {len(k)}")
        object.__setattr__(self, "k", k)
        if not self.omega > 0:
            raise InvalidConfig(f"angular frequency must be positive, got {self.omega}")
        if abs(self.C) == 0:
            raise InvalidConfig("field amplitude C must be nonzero")

    @property
    def intensity_scale(self) -> float:
        """``|C|^2``."""
        return abs(self.C) ** 2

    def phase(self, r, t) -> float:
        return float(np.dot(self.k, r)) - self.omega * t


@dataclass(frozen=True)
class PhasePair:
    """Two space-time points, or a phase difference given directly."""

    theta: Optional[float] = None
    r1: Sequence[float] = (0.0, 0.0, 0.0)
    t1: float = 0.0
    r2: Sequence[float] = (0.0, 0.0, 0.0)
    t2: float = 0.0

    def phases(self, cfg: FieldConfig):
        """Plane-wave phases ``(k.r1 - w t1, k.r2 - w t2)`` at the two points."""
        if self.theta is not None:
            return 0.0, float(self.theta)
        return cfg.phase(self.r1, self.t1), cfg.phase(self.r2, self.t2)


def resolve_theta(pair: PhasePair, cfg: FieldConfig) -> float:
    if pair.theta is not None:
        theta = float(pair.theta)
    else:
        dr = np.subtract(pair.r2, pair.r1)
        theta = float(np.dot(cfg.k, dr)) - cfg.omega * (pair.t2 - pair.t1)
    if not math.isfinite(theta):
        raise InvalidConfig("resolved phase is not finite")
    return theta


def reduce_phase(theta: float) -> float:
    """Map ``theta`` into ``(-pi, pi]``."""
    two_pi = 2 * math.pi
    reduced = theta - two_pi * math.ceil((theta - math.pi) / two_pi)
    return math.pi if reduced <= -math.pi else reduced


def as_phases(theta, cfg: FieldConfig):
    if isinstance(theta, PhasePair):
        return theta.phases(cfg)
    return 0.0, float(theta)


@dataclass(frozen=True)
class FieldOperator:
    envelope: complex
    dim: int
    n_modes: int

    def matrices(self) -> list:
        """Explicit component matrices ``envelope * a_s``."""
        return [self.envelope * a for a in mode_annihilators(self.dim, self.n_modes)]


def plane_wave(cfg: FieldConfig, phase: float, dim: int, n_modes: int = 1) -> FieldOperator:
    """Positive-frequency field ``C a_s exp(i phase)`` for each mode ``s``."""
    dim = _check_dim(dim)
    return FieldOperator(cfg.C * complex(math.cos(phase), math.sin(phase)), dim, n_modes)


def sandwich(left: FieldOperator, weights, right: FieldOperator) -> np.ndarray:
    """``sum_pq left_p^dagger weights[p, q] right_q`` as a matrix on the mode space."""
    weights = np.asarray(weights, dtype=complex).reshape(left.n_modes, right.n_modes)
    coeff = np.conj(left.envelope) * right.envelope * weights
    bilinears = ladder_bilinears(left.dim, left.n_modes)
    return np.tensordot(coeff, bilinears, axes=([0, 1], [0, 1]))
