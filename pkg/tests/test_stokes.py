import math

import numpy as np
import pytest

from coherence_lab.errors import DimensionMismatch, InvalidIndexPair
from coherence_lab.field import FieldConfig
from coherence_lab.fock import adjoint, check_hermitian, commutator, mode_annihilators
from coherence_lab.sampling import random_state
from coherence_lab.states import StateSpec, coherent_state, product_state, vacuum, product_of
from coherence_lab.stokes import (
    PAULI,
    check_uncertainty_relation,
    cyclic_partner,
    stokes_operator,
    stokes_operator_closed_form,
    stokes_params,
    tolerance_scale,
    verify_stokes_commutators,
)

PAIRS = [(j, k) for j in (1, 2, 3) for k in (1, 2, 3) if j != k]


def coherent_pair(dim=16):
    return product_state(StateSpec("coherent", alpha=1), StateSpec("coherent", alpha=1), dim)


def test_pauli_convention():
    np.testing.assert_array_equal(PAULI[1], np.diag([1, -1]))
    np.testing.assert_array_equal(PAULI[2], [[0, 1], [1, 0]])
    np.testing.assert_array_equal(PAULI[3], [[0, -1j], [1j, 0]])


def test_cyclic_partner():
    assert cyclic_partner(1, 2) == (3, 1)
    assert cyclic_partner(2, 1) == (3, -1)
    assert cyclic_partner(3, 1) == (2, 1)
    for bad in [(1, 1), (0, 2), (2, 4)]:
        with pytest.raises(InvalidIndexPair):
            cyclic_partner(*bad)


def test_operator_examples(unit_field):
    np.testing.assert_allclose(stokes_operator(0, unit_field, 2), np.diag([0, 1, 1, 2]), atol=1e-15)
    np.testing.assert_allclose(stokes_operator(1, unit_field, 2), np.diag([0, -1, 1, 0]), atol=1e-15)
    ah, av = mode_annihilators(5, 2)
    np.testing.assert_allclose(stokes_operator(3, unit_field, 5), 1j * (adjoint(av) @ ah - adjoint(ah) @ av), atol=1e-14)
    with pytest.raises(InvalidIndexPair):
        stokes_operator(4, unit_field, 3)


@pytest.mark.parametrize("C", [1, 0.5 - 2j, 3j])
@pytest.mark.parametrize("n", range(4))
def test_sandwich_matches_closed_form(n, C):
    cfg = FieldConfig(C)
    op = stokes_operator(n, cfg, 6)
    np.testing.assert_allclose(op, stokes_operator_closed_form(n, cfg, 6), atol=1e-12 * abs(C) ** 2, rtol=0)
    assert check_hermitian(op).passed


def test_params_examples(unit_field, fig2_state):
    res = stokes_params(fig2_state, unit_field)
    np.testing.assert_allclose(res.S, [1, 1, 0, 0], atol=1e-15)
    np.testing.assert_allclose(res.dS, [0, 0, 1, 1], atol=1e-15)
    res = stokes_params(product_of(vacuum(6), vacuum(6)), unit_field)
    assert np.all(res.S == 0) and np.all(res.dS == 0)
    # oracle: <a_h^dag a_h> = |alpha|^2 and <a_h^dag a_v> = conj(alpha_h) alpha_v, both 1
    res = stokes_params(coherent_pair(), unit_field)
    np.testing.assert_allclose(res.S, [2, 0, 2, 0], atol=1e-8)
    with pytest.raises(DimensionMismatch):
        stokes_params(coherent_state(1, 16), unit_field)


def test_commutators(unit_field):
    ops = [stokes_operator(n, unit_field, 6) for n in range(4)]
    # zero up to sqrt(n) sqrt(m) rounding, not bitwise
    assert np.max(np.abs(commutator(ops[0], ops[2]))) < 1e-14 * 6
    for dim in range(3, 17):
        report = verify_stokes_commutators(FieldConfig(0.8 + 0.9j), dim)
        assert report.passed, report.deviations
        assert set(report.deviations) == {"[S0,S1]", "[S0,S2]", "[S0,S3]"} | {f"[S{j},S{k}]" for j, k in PAIRS}


def test_commutator_report_detects_wrong_sign(unit_field):
    ops = [stokes_operator(n, unit_field, 8) for n in range(4)]
    wrong = commutator(ops[1], ops[2]) + 2j * ops[3]
    assert np.max(np.abs(wrong[:25, :25])) > 1


def test_uncertainty_examples(unit_field, fig2_state):
    check = check_uncertainty_relation(fig2_state, unit_field, 2, 3)
    assert check.lhs == pytest.approx(1) and check.rhs == pytest.approx(1) and check.holds
    for j, k in PAIRS:
        assert tuple(check_uncertainty_relation(product_of(vacuum(5), vacuum(5)), unit_field, j, k)) == (0, 0, True)
    with pytest.raises(InvalidIndexPair):
        check_uncertainty_relation(fig2_state, unit_field, 2, 2)


def test_uncertainty_random_pure(rng):
    cfg = FieldConfig(0.9 - 0.4j)
    for _ in range(100):
        state = random_state(rng, 5, 2)
        for j, k in PAIRS:
            assert check_uncertainty_relation(state, cfg, j, k).holds


def test_tolerance_scale(unit_field, fig2_state):
    assert tolerance_scale(fig2_state, unit_field) == 1
    assert tolerance_scale(product_of(vacuum(4), vacuum(4)), FieldConfig(2)) == 16
    state = product_state(StateSpec("number", n=2), StateSpec("number", n=3), 8)
    assert tolerance_scale(state, FieldConfig(1j)) == 25
