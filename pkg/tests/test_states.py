import math

import numpy as np
import pytest

from coherence_lab.errors import DimensionMismatch, InvalidState, InvalidStateSpec, TruncationError
from coherence_lab.fock import make_number, std_dev, tensor, identity, expectation
from coherence_lab.states import (
    QuantumState,
    StateSpec,
    build_state,
    coherent_state,
    density_state,
    number_state,
    product_state,
    require_safe,
    superposition,
    thermal_state,
    vacuum,
)
from coherence_lab.sampling import random_state

from oracles import coherent_amplitude, coherent_moments, thermal_moments


def _assert_valid(state):
    rho = state.rho
    assert np.max(np.abs(rho - rho.conj().T)) <= 1e-12
    assert abs(np.trace(rho) - 1) <= 1e-10
    assert np.linalg.eigvalsh(rho)[0] >= -1e-10


def test_number_state():
    s = number_state(0, 8)
    expected = np.zeros((8, 8))
    expected[0, 0] = 1
    np.testing.assert_array_equal(s.rho, expected)
    assert std_dev(number_state(1, 8), make_number(8)) == 0
    assert expectation(number_state(3, 8), make_number(8)) == 3


def test_number_state_margin():
    number_state(5, 8)
    with pytest.raises(TruncationError):
        number_state(6, 8)
    with pytest.raises(InvalidStateSpec):
        number_state(-1, 8)


def test_coherent_state_vacuum_limit():
    np.testing.assert_array_equal(coherent_state(0, 8).rho, vacuum(8).rho)


def test_coherent_state_moments():
    mean, _ = coherent_moments(1, 32)
    assert expectation(coherent_state(1, 32), make_number(32)).real == pytest.approx(mean, abs=1e-10)
    assert mean == pytest.approx(1, abs=1e-10)
    _, sd = coherent_moments(2, 64)
    assert std_dev(coherent_state(2, 64), make_number(64)) == pytest.approx(sd, abs=1e-8)
    assert sd == pytest.approx(2, abs=1e-8)


@pytest.mark.parametrize("alpha", [0.3, 1 + 1j, -2.1j, 2.5])
def test_coherent_amplitudes_match_series(alpha):
    state = coherent_state(alpha, 48)
    psi = state.factor[:, 0]
    expected = np.array([coherent_amplitude(complex(alpha), n) for n in range(48)])
    expected /= np.linalg.norm(expected)
    np.testing.assert_allclose(psi, expected, atol=1e-12)


def test_coherent_state_tail_guard():
    with pytest.raises(TruncationError):
        coherent_state(3, 16)


def test_thermal_state():
    np.testing.assert_allclose(thermal_state(1e-8, 16).rho, vacuum(16).rho, atol=1e-7)
    mean, sd = thermal_moments(1, 64)
    s = thermal_state(1, 64)
    assert expectation(s, make_number(64)).real == pytest.approx(mean, abs=1e-12)
    assert mean == pytest.approx(1, abs=1e-9)
    assert std_dev(s, make_number(64)) == pytest.approx(sd, abs=1e-10)
    assert sd == pytest.approx(math.sqrt(2), abs=1e-8)
    with pytest.raises(TruncationError):
        thermal_state(1, 32)
    with pytest.raises(InvalidStateSpec):
        thermal_state(0, 32)


def test_superposition_examples():
    s = superposition([(1, [0]), (1, [2])], 8)
    assert std_dev(s, make_number(8)) == pytest.approx(1)
    two = superposition([(1, [1, 0])], 8, 2)
    np.testing.assert_allclose(two.rho, np.kron(number_state(1, 8).rho, vacuum(8).rho))
    shared = superposition([(1, [1, 0]), (1, [0, 1])], 8, 2)
    total = tensor(make_number(8), identity(8)) + tensor(identity(8), make_number(8))
    assert np.trace(shared.rho) == pytest.approx(1)
    assert expectation(shared, total) == pytest.approx(1)


def test_superposition_errors():
    with pytest.raises(InvalidStateSpec):
        superposition([(1, [1]), (-1, [1])], 8)
    with pytest.raises(InvalidStateSpec):
        superposition([(1, [1, 0])], 8, 1)
    with pytest.raises(TruncationError):
        superposition([(1, [6])], 8)


def test_product_state_ordering(fig2_state):
    spec = product_state(StateSpec("number", n=1), StateSpec("number", n=0), 8)
    np.testing.assert_array_equal(spec.rho, fig2_state.rho)
    # |1>_h |0>_v sits at flat index 1 * 8 + 0
    assert fig2_state.rho[8, 8] == 1


def test_state_invariants_rejected():
    with pytest.raises(InvalidState):
        density_state(np.diag([0.5, 0.6, 0, 0]), 4)
    with pytest.raises(InvalidState):
        density_state(np.diag([1.5, -0.5, 0, 0]), 4)
    with pytest.raises(InvalidState):
        density_state(np.array([[0.5, 0.1], [0.2, 0.5]]), 2)
    with pytest.raises(DimensionMismatch):
        density_state(np.eye(3) / 3, 4)


def test_purity():
    for s in (number_state(2, 8), coherent_state(1, 24), superposition([(1, [0]), (1j, [3])], 8)):
        assert s.purity == pytest.approx(1, abs=1e-10)
    assert thermal_state(0.5, 48).purity < 1


@pytest.mark.parametrize("mixed", [False, True])
@pytest.mark.parametrize("n_modes", [1, 2])
def test_random_states_valid(mixed, n_modes, rng):
    for _ in range(10):
        s = random_state(rng, 7, n_modes, mixed)
        _assert_valid(s)
        assert s.in_safe_subspace
        np.testing.assert_allclose(s.factor @ s.factor.conj().T, s.rho, atol=1e-14)
        assert (s.purity < 1 - 1e-6) == mixed


def test_require_safe_rejects_edge_population():
    raw = np.zeros((6, 6), dtype=complex)
    raw[5, 5] = 1
    with pytest.raises(TruncationError):
        require_safe(density_state(raw, 6))


def test_build_state_dispatch():
    assert build_state(StateSpec("coherent", alpha=0.5j), 16).label.startswith("coherent")
    st = build_state(StateSpec("product", 2, h=StateSpec("thermal", nbar=0.2), v=StateSpec("number", n=1)), 24)
    assert st.n_modes == 2 and st.dim == 576
    with pytest.raises(InvalidStateSpec):
        StateSpec("squeezed")
    with pytest.raises(InvalidStateSpec):
        StateSpec("number", modes=2, n=1)
