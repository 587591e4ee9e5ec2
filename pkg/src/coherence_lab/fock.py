"""Dense operator algebra on truncated Fock spaces.

Operators are plain ``numpy`` complex arrays. Two-mode operators live on the
product space ``h (x) v`` with the h-mode as the slow index, so the basis
state ``|n_h, n_v>`` sits at flat index ``n_h * dim + n_v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce

import numpy as np

from .errors import DimensionMismatch, InvalidDimension, NotHermitian, NumericalFailure

DEFAULT_DIM = 32
MAX_DIM = 256
SAFE_MARGIN = 3
HERMITIAN_RTOL = 1e-12
NEGATIVE_VARIANCE_TOL = 1e-12


def _check_dim(dim):
    if not isinstance(dim, (int, np.integer)) or isinstance(dim, bool):
        raise InvalidDimension(f"dimension must be an integer, got {dim!r}")
    if dim < 2:
        raise InvalidDimension(f"dimension must be >= 2, got {dim}")
    if dim > MAX_DIM:
        raise InvalidDimension(f"dimension {dim} exceeds the hard cap {MAX_DIM}")
    return int(dim)


def as_operator(op) -> np.ndarray:
    """Validate ``op`` as a square, finite complex matrix of size >= 2."""
    arr = np.asarray(op, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"operator must be square, got shape {arr.shape}")
    if arr.shape[0] < 2:
        raise InvalidDimension("operator dimension must be >= 2")
    if not np.all(np.isfinite(arr)):
        raise NumericalFailure("operator has non-finite entries")
    return arr


def _frozen(arr):
    arr.flags.writeable = False
    return arr


def make_annihilation(dim: int) -> np.ndarray:
    """Annihilation operator with ``a|n> = sqrt(n)|n-1>`` on ``|0>..|dim-1>``."""
    dim = _check_dim(dim)
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(complex)


def make_creation(dim: int) -> np.ndarray:
    return adjoint(make_annihilation(dim))


def make_number(dim: int) -> np.ndarray:
    dim = _check_dim(dim)
    return np.diag(np.arange(dim, dtype=float)).astype(complex)


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex)


def adjoint(op) -> np.ndarray:
    return np.conj(np.transpose(op))


def tensor(a, b) -> np.ndarray:
    """Kronecker product; the first factor is the h-mode (slow index)."""
    return np.kron(as_operator(a), as_operator(b))


def tensor_all(*ops) -> np.ndarray:
    return reduce(tensor, ops)


@lru_cache(maxsize=32)
def mode_annihilators(dim: int, n_modes: int) -> tuple:
    """Annihilators of each mode embedded in the ``n_modes``-fold product space."""
    a = make_annihilation(dim)
    eye = identity(dim)
    ops = []
    for m in range(n_modes):
        factors = [a if i == m else eye for i in range(n_modes)]
        ops.append(_frozen(tensor_all(*factors)))
    return tuple(ops)


@lru_cache(maxsize=32)
def ladder_bilinears(dim: int, n_modes: int) -> np.ndarray:
    """Array ``B`` of shape (m, m, N, N) with ``B[p, q] = a_p^dagger a_q``."""
    ladders = mode_annihilators(dim, n_modes)
    out = np.empty((n_modes, n_modes) + ladders[0].shape, dtype=complex)
    for p, ap in enumerate(ladders):
        for q, aq in enumerate(ladders):
            out[p, q] = adjoint(ap) @ aq
    return _frozen(out)


def safe_levels(dim: int, margin: int = SAFE_MARGIN) -> int:
    """Number of Fock levels per mode that count as safe (``0..dim-margin``)."""
    return max(dim - margin + 1, 0)


def safe_indices(dim: int, n_modes: int = 1, margin: int = SAFE_MARGIN) -> np.ndarray:
    """Flat basis indices whose occupations are all ``<= dim - margin``."""
    keep = np.arange(dim) <= dim - margin
    mask = keep
    for _ in range(n_modes - 1):
        mask = np.logical_and.outer(mask, keep).ravel()
    return np.flatnonzero(mask)


def commutator(a, b) -> np.ndarray:
    a = as_operator(a)
    b = as_operator(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot commute {a.shape} with {b.shape}")
    return a @ b - b @ a


def commutator_block(a, b, idx) -> np.ndarray:
    """``[a, b]`` restricted to rows and columns ``idx``, without forming the full product."""
    return a[idx, :] @ b[:, idx] - b[idx, :] @ a[:, idx]


def hermitian_parts(op):
    """Split ``op`` into Hermitian ``(re, im)`` with ``op = re + 1j * im``."""
    op = as_operator(op)
    dag = adjoint(op)
    return (op + dag) / 2, (op - dag) / 2j


@dataclass(frozen=True)
class HermitianCheck:
    max_asymmetry: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_asymmetry <= self.tolerance


def check_hermitian(op, rtol: float = HERMITIAN_RTOL) -> HermitianCheck:
    op = np.asarray(op)
    scale = float(np.max(np.abs(op))) if op.size else 0.0
    asym = float(np.max(np.abs(op - adjoint(op)))) if op.size else 0.0
    return HermitianCheck(asym, rtol * scale)


def _match(state, op):
    op = np.asarray(op, dtype=complex)
    if op.shape != state.rho.shape:
        raise DimensionMismatch(
            f"operator shape {op.shape} does not match state shape {state.rho.shape}"
        )
    return op


def expectation(state, op) -> complex:
    """``tr(rho op)``."""
    op = _match(state, op)
    # rho is Hermitian, so tr(rho op) = sum_ij conj(rho_ij) op_ij
    return complex(np.vdot(state.rho, op))


def variance(state, op) -> float:
    """Variance of a Hermitian observable.

    Evaluated as ``sum_i p_i ||(op - <op>) v_i||^2`` over the spectral
    decomposition of the state, which equals ``<op^2> - <op>^2`` but keeps
    exact zeros for eigenstates.
    """
    op = _match(state, op)
    check = check_hermitian(op)
    if not check.passed:
        raise NotHermitian(
            f"observable asymmetry {check.max_asymmetry:.3e} exceeds {check.tolerance:.3e}"
        )
    return _variance_unchecked(state.factor, op)


def _variance_unchecked(factor, op) -> float:
    applied = op @ factor
    mean = np.vdot(factor, applied).real
    var = float(np.vdot(applied - mean * factor, applied - mean * factor).real)
    if var < -NEGATIVE_VARIANCE_TOL:
        raise NumericalFailure(f"negative variance {var:.3e}")
    return max(var, 0.0)


def std_dev(state, op) -> float:
    return float(np.sqrt(variance(state, op)))


def commutator_bound(state, a, b) -> float:
    """Robertson bound ``|<[a, b]>| / 2`` from the explicit commutator matrix."""
    return abs(expectation(state, commutator(a, b))) / 2
