"""Density-matrix states on one or two truncated bosonic modes."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np
from scipy import stats

from .errors import DimensionMismatch, InvalidState, InvalidStateSpec, TruncationError
from .fock import SAFE_MARGIN, _check_dim, safe_indices

TRUNCATION_EPS = 1e-10
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-10
EIGEN_TOL = 1e-10
_SUPPORT_CUTOFF = 1e-14

STATE_KINDS = ("number", "coherent", "thermal", "superposition", "product", "density")


@dataclass(frozen=True, eq=False)
class QuantumState:
    """Validated density matrix on ``n_modes`` modes of ``dim_per_mode`` levels each.

    ``factor`` is any matrix ``F`` with ``rho = F F^dagger``; pure-state
    constructors supply the state vector directly so downstream variances
    stay exact for eigenstates.
    """

    rho: np.ndarray
    dim_per_mode: int
    n_modes: int = 1
    label: str = ""
    _factor: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        if self.n_modes not in (1, 2):
            raise InvalidState(f"n_modes must be 1 or 2, got {self.n_modes}")
        _check_dim(self.dim_per_mode)
        rho = np.array(self.rho, dtype=complex)
        size = self.dim_per_mode**self.n_modes
        if rho.shape != (size, size):
            raise DimensionMismatch(
                f"rho has shape {rho.shape}, expected {(size, size)} for "
                f"{self.n_modes} mode(s) of dimension {self.dim_per_mode}"
            )
        if not np.all(np.isfinite(rho)):
            raise InvalidState("rho has non-finite entries")
        asym = float(np.max(np.abs(rho - rho.conj().T)))
        if asym > HERMITIAN_TOL:
            raise InvalidState(f"rho is not Hermitian (asymmetry {asym:.3e})")
        trace = np.trace(rho)
        if abs(trace - 1) > TRACE_TOL:
            raise InvalidState(f"tr(rho) = {trace:.12g}, expected 1")
        if self._factor is None:
            evals = np.linalg.eigvalsh(rho)
            if evals[0] < -EIGEN_TOL:
                raise InvalidState(f"rho has negative eigenvalue {evals[0]:.3e}")
        rho.flags.writeable = False
        object.__setattr__(self, "rho", rho)

    @classmethod
    def from_vector(cls, psi, dim_per_mode, n_modes=1, label=""):
        psi = np.asarray(psi, dtype=complex).ravel()
        norm = np.linalg.norm(psi)
        if norm == 0:
            raise InvalidStateSpec("state vector is zero")
        psi = psi / norm
        return cls(np.outer(psi, psi.conj()), dim_per_mode, n_modes, label, psi[:, None])

    @property
    def dim(self) -> int:
        return self.rho.shape[0]

    @cached_property
    def factor(self) -> np.ndarray:
        if self._factor is not None:
            return self._factor
        evals, evecs = np.linalg.eigh(self.rho)
        keep = evals > _SUPPORT_CUTOFF
        return evecs[:, keep] * np.sqrt(evals[keep])

    @property
    def populations(self) -> np.ndarray:
        return self.rho.diagonal().real

    @property
    def purity(self) -> float:
        return float(np.vdot(self.rho, self.rho).real)

    def occupations(self) -> np.ndarray:
        """Occupation numbers of each basis index, shape (dim, n_modes)."""
        grids = np.indices((self.dim_per_mode,) * self.n_modes)
        return grids.reshape(self.n_modes, -1).T

    @property
    def max_photons(self) -> int:
        """Largest total photon number carrying population above 1e-14."""
        totals = self.occupations().sum(axis=1)
        support = totals[self.populations > _SUPPORT_CUTOFF]
        return int(support.max()) if support.size else 0

    @property
    def edge_population(self) -> float:
        """Population outside the safe subspace (any mode above ``dim - 3``)."""
        mask = np.ones(self.dim, dtype=bool)
        mask[safe_indices(self.dim_per_mode, self.n_modes, SAFE_MARGIN)] = False
        return float(self.populations[mask].sum())

    @property
    def in_safe_subspace(self) -> bool:
        return self.edge_population < TRUNCATION_EPS


def require_safe(state: QuantumState) -> QuantumState:
    if not state.in_safe_subspace:
        raise TruncationError(
            f"state {state.label or '<unnamed>'} has population "
            f"{state.edge_population:.3e} above Fock level {state.dim_per_mode - SAFE_MARGIN}"
        )
    return state


def require_modes(state: QuantumState, n_modes: int) -> QuantumState:
    if state.n_modes != n_modes:
        raise DimensionMismatch(f"expected a {n_modes}-mode state, got {state.n_modes}-mode")
    return state


def _check_level(n, dim):
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 0:
        raise InvalidStateSpec(f"occupation must be a nonnegative integer, got {n!r}")
    if n > dim - SAFE_MARGIN:
        raise TruncationError(
            f"occupation {n} exceeds the safe limit {dim - SAFE_MARGIN} for dim {dim}"
        )


def number_state(n: int, dim: int) -> QuantumState:
    dim = _check_dim(dim)
    _check_level(n, dim)
    psi = np.zeros(dim, dtype=complex)
    psi[n] = 1
    return QuantumState.from_vector(psi, dim, 1, f"|{n}>")


def coherent_amplitudes(alpha: complex, dim: int) -> np.ndarray:
    """Fock amplitudes ``exp(-|alpha|^2/2) alpha^n / sqrt(n!)`` for ``n < dim``."""
    amps = np.empty(dim, dtype=complex)
    amps[0] = math.exp(-abs(alpha) ** 2 / 2)
    for n in range(1, dim):
        amps[n] = amps[n - 1] * alpha / math.sqrt(n)
    return amps


def coherent_state(alpha: complex, dim: int) -> QuantumState:
    dim = _check_dim(dim)
    alpha = complex(alpha)
    tail = float(stats.poisson.sf(dim - SAFE_MARGIN, abs(alpha) ** 2))
    if tail >= TRUNCATION_EPS:
        raise TruncationError(
            f"coherent amplitude {alpha} leaves population {tail:.3e} above level "
            f"{dim - SAFE_MARGIN}; increase dim"
        )
    return QuantumState.from_vector(coherent_amplitudes(alpha, dim), dim, 1, f"coherent({alpha})")


def thermal_state(nbar: float, dim: int) -> QuantumState:
    dim = _check_dim(dim)
    nbar = float(nbar)
    if not nbar > 0:
        raise InvalidStateSpec(f"thermal mean photon number must be positive, got {nbar}")
    ratio = nbar / (1 + nbar)
    tail = ratio ** (dim - SAFE_MARGIN + 1)
    if tail >= TRUNCATION_EPS:
        raise TruncationError(
            f"thermal nbar={nbar} leaves population {tail:.3e} above level "
            f"{dim - SAFE_MARGIN}; increase dim"
        )
    probs = ratio ** np.arange(dim)
    probs /= probs.sum()
    rho = np.diag(probs).astype(complex)
    return QuantumState(rho, dim, 1, f"thermal({nbar})", np.diag(np.sqrt(probs)).astype(complex))


def superposition(terms: Sequence, dim: int, n_modes: int = 1) -> QuantumState:
    """Normalized pure state from ``(amplitude, occupations)`` pairs."""
    dim = _check_dim(dim)
    if n_modes not in (1, 2):
        raise InvalidStateSpec(f"n_modes must be 1 or 2, got {n_modes}")
    if not terms:
        raise InvalidStateSpec("superposition needs at least one term")
    psi = np.zeros(dim**n_modes, dtype=complex)
    for amp, fock in terms:
        fock = tuple(fock) if np.ndim(fock) else (fock,)
        if len(fock) != n_modes:
            raise InvalidStateSpec(f"occupation {fock} does not match {n_modes} mode(s)")
        for n in fock:
            _check_level(n, dim)
        psi[np.ravel_multi_index(fock, (dim,) * n_modes)] += complex(amp)
    if np.linalg.norm(psi) == 0:
        raise InvalidStateSpec("superposition amplitudes cancel to the zero vector")
    return QuantumState.from_vector(psi, dim, n_modes, "superposition")


def product_of(state_h: QuantumState, state_v: QuantumState) -> QuantumState:
    require_modes(state_h, 1)
    require_modes(state_v, 1)
    if state_h.dim_per_mode != state_v.dim_per_mode:
        raise DimensionMismatch("h and v modes must share the truncation dimension")
    return QuantumState(
        np.kron(state_h.rho, state_v.rho),
        state_h.dim_per_mode,
        2,
        f"{state_h.label}_h {state_v.label}_v",
        np.kron(state_h.factor, state_v.factor),
    )


def density_state(rho, dim: int, n_modes: int = 1, label="density") -> QuantumState:
    return QuantumState(np.asarray(rho, dtype=complex), dim, n_modes, label)


@dataclass(frozen=True)
class StateSpec:
    """Parsed state description, resolved against a dimension by :func:`build_state`."""

    kind: str
    modes: int = 1
    n: Optional[int] = None
    alpha: complex = 0j
    nbar: Optional[float] = None
    terms: tuple = ()
    h: Optional["StateSpec"] = None
    v: Optional["StateSpec"] = None
    rho: Optional[np.ndarray] = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in STATE_KINDS:
            raise InvalidStateSpec(f"unknown state kind {self.kind!r}")
        if self.modes not in (1, 2):
            raise InvalidStateSpec(f"modes must be 1 or 2, got {self.modes}")
        if self.kind == "superposition":
            if not self.terms or all(complex(a) == 0 for a, _ in self.terms):
                raise InvalidStateSpec("superposition amplitudes are all zero")
        if self.kind == "product":
            if self.modes != 2 or self.h is None or self.v is None:
                raise InvalidStateSpec("product spec needs modes=2 with h and v parts")
            for part in (self.h, self.v):
                if part.modes != 1:
                    raise InvalidStateSpec("product factors must be single-mode specs")
        elif self.kind in ("number", "coherent", "thermal") and self.modes != 1:
            raise InvalidStateSpec(f"{self.kind} spec is single-mode; use h/v for two modes")

    def max_occupation(self) -> int:
        """Largest explicit occupation in the spec (0 for kinds without one)."""
        if self.kind == "number":
            return self.n
        if self.kind == "superposition":
            return max(max(fock) for _, fock in self.terms)
        if self.kind == "product":
            return max(self.h.max_occupation(), self.v.max_occupation())
        return 0


def build_state(spec: StateSpec, dim: int) -> QuantumState:
    if spec.kind == "number":
        return number_state(spec.n, dim)
    if spec.kind == "coherent":
        return coherent_state(spec.alpha, dim)
    if spec.kind == "thermal":
        return thermal_state(spec.nbar, dim)
    if spec.kind == "superposition":
        return superposition(spec.terms, dim, spec.modes)
    if spec.kind == "product":
        return product_state(spec.h, spec.v, dim)
    return density_state(spec.rho, dim, spec.modes)


def product_state(spec_h: StateSpec, spec_v: StateSpec, dim: int) -> QuantumState:
    """``rho_h (x) rho_v`` in the fixed h-then-v ordering."""
    for spec in (spec_h, spec_v):
        if spec.modes != 1:
            raise InvalidStateSpec("product_state takes single-mode specs")
    return product_of(build_state(spec_h, dim), build_state(spec_v, dim))


def vacuum(dim: int, n_modes: int = 1) -> QuantumState:
    psi = np.zeros(dim**n_modes, dtype=complex)
    psi[0] = 1
    return QuantumState.from_vector(psi, dim, n_modes, "vacuum")
