"""Quantum uncertainty of first-order optical coherence on truncated Fock spaces."""

from .errors import (
    CoherenceLabError,
    DimensionMismatch,
    InvalidDimension,
    InvalidIndexPair,
    InvalidState,
    InvalidStateSpec,
    IoError,
    NotHermitian,
    NumericalFailure,
    ParseError,
    TruncationError,
)
from .field import FieldConfig, PhasePair, resolve_theta
from .fock import (
    adjoint,
    commutator,
    expectation,
    hermitian_parts,
    make_annihilation,
    make_number,
    std_dev,
    tensor,
)
from .scalar import CoherenceRecord, coherence_expectation, coherence_operator, coherence_uncertainty, scalar_trace
from .states import (
    QuantumState,
    StateSpec,
    build_state,
    coherent_state,
    number_state,
    product_state,
    superposition,
    thermal_state,
    vacuum,
)
from .stokes import StokesResult, check_uncertainty_relation, stokes_operator, stokes_params, verify_stokes_commutators
from .vector import (
    CoherenceMatrixResult,
    CoherenceStokesRecord,
    check_coherence_uncertainty_relations,
    coherence_matrix,
    coherence_stokes,
    coherence_stokes_operator,
    variance_sum_check,
    vector_trace,
    verify_coherence_commutators,
)

__version__ = "0.1.0"
