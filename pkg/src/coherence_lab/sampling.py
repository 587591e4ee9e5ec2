"""Seeded random states for property sweeps.

All randomness comes from ``numpy.random.default_rng(seed)``, i.e. the
PCG64 bit generator seeded through ``SeedSequence``. Pure states draw
i.i.d. complex Gaussian amplitudes on the safe levels ``0..dim-3`` of each
mode and normalize; mixed states are Dirichlet(1, 1, 1) mixtures of three
such pure states.
"""

from __future__ import annotations

import numpy as np

from .fock import safe_levels
from .states import QuantumState

MIXTURE_SIZE = 3


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.uint64(seed))


def random_pure_vector(rng: np.random.Generator, dim: int, n_modes: int = 1) -> np.ndarray:
    levels = safe_levels(dim)
    shape = (levels,) * n_modes
    amps = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    psi = np.zeros((dim,) * n_modes, dtype=complex)
    psi[(slice(0, levels),) * n_modes] = amps
    psi = psi.ravel()
    return psi / np.linalg.norm(psi)


def random_state(rng: np.random.Generator, dim: int, n_modes: int = 1, mixed: bool = False) -> QuantumState:
    if not mixed:
        return QuantumState.from_vector(random_pure_vector(rng, dim, n_modes), dim, n_modes, "random pure")
    weights = rng.dirichlet(np.ones(MIXTURE_SIZE))
    vectors = np.stack([random_pure_vector(rng, dim, n_modes) for _ in range(MIXTURE_SIZE)], axis=1)
    factor = vectors * np.sqrt(weights)
    rho = factor @ factor.conj().T
    rho = (rho + rho.conj().T) / 2
    return QuantumState(rho, dim, n_modes, "random mixed", factor)


def random_states(seed: int, count: int, dim: int, n_modes: int = 1):
    """``count`` states alternating pure (even index) and mixed (odd index)."""
    rng = make_rng(seed)
    return [random_state(rng, dim, n_modes, mixed=bool(i % 2)) for i in range(count)]
