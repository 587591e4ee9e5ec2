"""Seeded verification suite over operator identities, commutators and uncertainty relations.

Each check reduces to a single number compared against a fixed threshold, so
reports are stable across runs and regressions show up as drift in the
printed residuals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np

from .field import FieldConfig
from .fock import (
    _variance_unchecked,
    adjoint,
    commutator,
    expectation,
    make_annihilation,
    make_number,
)
from .sampling import make_rng, random_state
from .scalar import coherence_operator, coherence_operator_closed_form, coherence_uncertainty
from .states import number_state, product_of, vacuum
from .stokes import (
    COMMUTATOR_RTOL,
    RELATION_RTOL,
    _stokes_operators,
    cyclic_partner,
    stokes_operator_closed_form,
    stokes_params,
    tolerance_scale,
    verify_stokes_commutators,
)
from .vector import (
    DPRIME,
    PRIME,
    PlaneWaveStokes,
    coherence_matrix,
    coherence_stokes,
    coherence_stokes_closed_form,
    coherence_stokes_operator,
    matrix_from_stokes,
    stokes_from_matrix,
    vector_trace,
    verify_coherence_commutators,
)

ORACLE_TOL = 1e-12
ROUND_TRIP_TOL = 1e-12
REDUCTION_TOL = 1e-10
PHASE_OFFSET_TOL = 1e-10
FIG2_TOL = 1e-10
NUMBER_STATE_TOL = 1e-12
STOKES_NORM_TOL = 1e-10
CANONICAL_RTOL = 1e-14
THETA_COUNT = 8
ORACLE_DRAWS = 32

CYCLIC_PAIRS = ((1, 2), (2, 3), (3, 1))
ORDERED_PAIRS = tuple((j, k) for j in (1, 2, 3) for k in (1, 2, 3) if j != k)
FAMILIES = (
    (PRIME, PRIME, CYCLIC_PAIRS),
    (DPRIME, DPRIME, CYCLIC_PAIRS),
    (PRIME, DPRIME, ORDERED_PAIRS),
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    threshold: float
    relation: str = "<="

    @property
    def passed(self) -> bool:
        if self.relation == ">":
            return self.value > self.threshold
        if self.relation == "<":
            return self.value < self.threshold
        return self.value <= self.threshold

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.name:<34s} {self.value:10.2e} {self.relation:>2s} {self.threshold:8.1e}  {status}"


@dataclass
class VerificationReport:
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> List[str]:
        return [c.line() for c in self.checks]

    def format(self) -> str:
        verdict = "ALL PASS" if self.passed else "FAILURES: " + ", ".join(
            c.name for c in self.checks if not c.passed
        )
        return "\n".join(self.lines() + [verdict]) + "\n"


def random_field(rng) -> FieldConfig:
    magnitude = rng.uniform(0.5, 2.0)
    return FieldConfig(magnitude * np.exp(1j * rng.uniform(0, 2 * np.pi)))


def check_fock(dim: int) -> List[CheckResult]:
    a = make_annihilation(dim)
    block = commutator(a, adjoint(a))[: dim - 1, : dim - 1]
    return [
        CheckResult("fock.canonical_commutator", float(np.max(np.abs(block - np.eye(dim - 1)))), CANONICAL_RTOL * dim),
        CheckResult("fock.number_operator", float(np.max(np.abs(adjoint(a) @ a - make_number(dim)))), CANONICAL_RTOL * dim),
    ]


def oracle_deviations(rng, dim: int, draws: int):
    """Largest generic-vs-closed-form entry deviation for scalar, one-point and two-point operators."""
    dev = {"scalar": 0.0, "stokes": 0.0, "coherence_stokes": 0.0}
    for _ in range(draws):
        cfg = random_field(rng)
        theta = rng.uniform(-2 * np.pi, 2 * np.pi)
        diff = coherence_operator(cfg, theta, dim) - coherence_operator_closed_form(cfg, theta, dim)
        dev["scalar"] = max(dev["scalar"], float(np.max(np.abs(diff))))
        for n in range(4):
            one = _stokes_operators(cfg.C, dim)[n] - stokes_operator_closed_form(n, cfg, dim)
            two = coherence_stokes_operator(n, cfg, theta, dim) - coherence_stokes_closed_form(n, cfg, theta, dim)
            dev["stokes"] = max(dev["stokes"], float(np.max(np.abs(one))))
            dev["coherence_stokes"] = max(dev["coherence_stokes"], float(np.max(np.abs(two))))
    return dev


def check_operator_oracles(rng, dim: int, draws: int = ORACLE_DRAWS) -> List[CheckResult]:
    dev = oracle_deviations(rng, dim, draws)
    return [CheckResult(f"oracle.{k}", v, ORACLE_TOL) for k, v in dev.items()]


def commutator_deviations(dims: Sequence[int], thetas: Sequence[float], cfg: FieldConfig):
    """Worst normalized deviation ``max_dev / tolerance`` of the one- and two-point families."""
    one_point = 0.0
    two_point = 0.0
    for dim in dims:
        rep = verify_stokes_commutators(cfg, dim)
        one_point = max(one_point, rep.max_deviation / rep.tolerance)
        for theta in thetas:
            rep = verify_coherence_commutators(cfg, theta, dim)
            two_point = max(two_point, rep.max_deviation / rep.tolerance)
    return one_point, two_point


def check_commutators(dims, thetas, cfg) -> List[CheckResult]:
    one, two = commutator_deviations(dims, thetas, cfg)
    return [
        CheckResult("commutators.one_point/tol", one, 1.0, "<"),
        CheckResult("commutators.two_point/tol", two, 1.0, "<"),
    ]


def check_number_states(dim: int, thetas, cfg) -> List[CheckResult]:
    worst = 0.0
    for n in range(dim - 2):
        state = number_state(n, dim)
        for theta in thetas:
            worst = max(worst, *coherence_uncertainty(state, cfg, theta))
    return [CheckResult("scalar.number_state_dG", worst, NUMBER_STATE_TOL)]


def scalar_sweep(states, thetas, cfg):
    """Worst scaled residual of the scalar variance sum and of the pi/2 offset."""
    c4 = cfg.intensity_scale**2
    var_sum = 0.0
    offset = 0.0
    for i, state in enumerate(states):
        theta = thetas[i % len(thetas)]
        dre, dim_ = coherence_uncertainty(state, cfg, theta)
        dn2 = _variance_unchecked(state.factor, make_number(state.dim_per_mode))
        scale = tolerance_scale(state, cfg)
        var_sum = max(var_sum, abs(dre**2 + dim_**2 - c4 * dn2) / scale)
        _, shifted = coherence_uncertainty(state, cfg, theta + math.pi / 2)
        offset = max(offset, abs(dre - shifted))
    return var_sum, offset


def check_scalar_sweep(states, thetas, cfg) -> List[CheckResult]:
    var_sum, offset = scalar_sweep(states, thetas, cfg)
    return [
        CheckResult("scalar.variance_sum/scale", var_sum, RELATION_RTOL),
        CheckResult("scalar.phase_offset", offset, PHASE_OFFSET_TOL),
    ]


class _ThetaBundle:
    def __init__(self, C, theta, dim):
        self.ops = PlaneWaveStokes(C, 0.0, theta, dim)
        self.theta = theta
        self.commutators = {}
        for mu, nu, pairs in FAMILIES:
            for j, k in pairs:
                self.commutators[(mu, j, nu, k)] = commutator(self.ops.part(j, mu), self.ops.part(k, nu))


@dataclass
class RelationStats:
    """Worst cases over a sweep; violations are ``max(0, rhs - lhs) / scale``."""

    one_point_violation: float = 0.0
    two_point_violation: float = 0.0
    robertson_violation: float = 0.0
    robertson_vs_closed: float = 0.0
    variance_sum: float = 0.0
    stokes_norm_excess: float = -math.inf
    min_total_fluctuation: float = math.inf
    evaluations: int = 0

    def checks(self) -> List[CheckResult]:
        return [
            CheckResult("stokes.uncertainty_violation", self.one_point_violation, RELATION_RTOL),
            CheckResult("vector.uncertainty_violation", self.two_point_violation, RELATION_RTOL),
            CheckResult("robertson.bound_violation", self.robertson_violation, RELATION_RTOL),
            CheckResult("robertson.vs_closed_form", self.robertson_vs_closed, RELATION_RTOL),
            CheckResult("vector.variance_sum/scale", self.variance_sum, RELATION_RTOL),
            CheckResult("stokes.norm_excess", self.stokes_norm_excess, STOKES_NORM_TOL),
            CheckResult("vector.min_total_fluctuation", self.min_total_fluctuation, 0.0, ">"),
        ]


def relation_sweep(states, thetas, cfg: FieldConfig) -> RelationStats:
    """Evaluate every uncertainty relation for every two-mode state at every phase.

    Relations are checked three ways: measured ``lhs`` against the closed-form
    bound, against the Robertson bound from the explicit commutator matrix,
    and the two bounds against each other.
    """
    stats = RelationStats()
    c2 = cfg.intensity_scale
    by_dim = {}
    for state in states:
        by_dim.setdefault(state.dim_per_mode, []).append(state)
    for dim, group in sorted(by_dim.items()):
        one_ops = _stokes_operators(cfg.C, dim)
        one_comms = {(j, k): commutator(one_ops[j], one_ops[k]) for j, k in CYCLIC_PAIRS}
        one_point = []
        for state in group:
            res = stokes_params(state, cfg)
            scale = tolerance_scale(state, cfg)
            S = res.S.real
            stats.stokes_norm_excess = max(stats.stokes_norm_excess, float(np.linalg.norm(S[1:]) - S[0]))
            for j, k in CYCLIC_PAIRS:
                l, eps = cyclic_partner(j, k)
                lhs = res.dS[j] * res.dS[k]
                rhs = c2 * abs(eps) * abs(res.S[l])
                bound = abs(expectation(state, one_comms[(j, k)])) / 2
                stats.one_point_violation = max(stats.one_point_violation, (rhs - lhs) / scale)
                stats.robertson_violation = max(stats.robertson_violation, (bound - lhs) / scale)
                stats.robertson_vs_closed = max(stats.robertson_vs_closed, abs(bound - rhs) / scale)
            one_point.append((res, scale))
        for theta in thetas:
            bundle = _ThetaBundle(cfg.C, theta, dim)
            for state, (res, scale) in zip(group, one_point):
                _two_point_relations(state, bundle, res, scale, c2, stats)
    return stats


def _two_point_relations(state, bundle, res, scale, c2, stats):
    F = state.factor
    var = {
        PRIME: np.array([_variance_unchecked(F, op) for op in bundle.ops.real]),
        DPRIME: np.array([_variance_unchecked(F, op) for op in bundle.ops.imag]),
    }
    sd = {key: np.sqrt(v) for key, v in var.items()}
    theta = bundle.theta
    weights = {
        (PRIME, PRIME): math.cos(theta) ** 2,
        (DPRIME, DPRIME): math.sin(theta) ** 2,
        (PRIME, DPRIME): abs(math.sin(2 * theta)) / 2,
    }
    for mu, nu, pairs in FAMILIES:
        for j, k in pairs:
            l, eps = cyclic_partner(j, k)
            lhs = sd[mu][j] * sd[nu][k]
            rhs = c2 * abs(eps) * abs(res.S[l]) * weights[(mu, nu)]
            bound = abs(expectation(state, bundle.commutators[(mu, j, nu, k)])) / 2
            stats.two_point_violation = max(stats.two_point_violation, (rhs - lhs) / scale)
            stats.robertson_violation = max(stats.robertson_violation, (bound - lhs) / scale)
            stats.robertson_vs_closed = max(stats.robertson_vs_closed, abs(bound - rhs) / scale)
    sums = var[PRIME] + var[DPRIME]
    stats.variance_sum = max(stats.variance_sum, float(np.max(np.abs(sums - res.dS**2))) / scale)
    stats.min_total_fluctuation = min(stats.min_total_fluctuation, float(sums[1:].sum()))
    stats.evaluations += 1


def round_trip_deviation(states, thetas, cfg) -> float:
    """Worst deviation of ``G -> S -> G`` and of ``S(G)`` against the operator route."""
    worst = 0.0
    for i, state in enumerate(states):
        theta = thetas[i % len(thetas)]
        G = coherence_matrix(state, cfg, theta).G
        S = stokes_from_matrix(G)
        record = coherence_stokes(state, cfg, theta)
        worst = max(
            worst,
            float(np.max(np.abs(matrix_from_stokes(S) - G))),
            float(np.max(np.abs(S - record.S))),
        )
    return worst


def reduction_deviation(states, cfg) -> float:
    """Two-point record at zero separation against the one-point Stokes result."""
    worst = 0.0
    for state in states:
        record = coherence_stokes(state, cfg, 0.0)
        res = stokes_params(state, cfg)
        worst = max(
            worst,
            float(np.max(np.abs(record.S - res.S))),
            float(np.max(np.abs(record.dS_prime - res.dS))),
            float(np.max(record.dS_dprime)),
        )
    return worst


def vector_phase_offset(states, thetas, cfg) -> float:
    worst = 0.0
    for i, state in enumerate(states):
        theta = thetas[i % len(thetas)]
        a = coherence_stokes(state, cfg, theta)
        b = coherence_stokes(state, cfg, theta + math.pi / 2)
        worst = max(worst, float(np.max(np.abs(a.dS_prime - b.dS_dprime))))
    return worst


def theta_grid(count: int = 256, start: float = 0.0, stop: float = 2 * math.pi) -> np.ndarray:
    """``count`` uniform points on ``[start, stop)``."""
    return start + (stop - start) * np.arange(count) / count


def fig2_state(dim: int = 8):
    return product_of(number_state(1, dim), vacuum(dim))


def fig2_deviation(dim: int = 8, count: int = 256, C: complex = 1) -> float:
    """Worst deviation of the ``|1>_h |0>_v`` trace from the closed-form phase-space curves."""
    cfg = FieldConfig(C)
    c2 = cfg.intensity_scale
    worst = 0.0
    for theta in theta_grid(count):
        rec = coherence_stokes(fig2_state(dim), cfg, theta)
        phase = c2 * np.exp(1j * theta)
        expected_S = np.array([phase, phase, 0, 0])
        expected_re = c2 * np.array([0, 0, abs(math.cos(theta)), abs(math.cos(theta))])
        expected_im = c2 * np.array([0, 0, abs(math.sin(theta)), abs(math.sin(theta))])
        worst = max(
            worst,
            float(np.max(np.abs(rec.S - expected_S))),
            float(np.max(np.abs(rec.dS_prime - expected_re))),
            float(np.max(np.abs(rec.dS_dprime - expected_im))),
        )
    return worst


def fig2_records(dim: int = 8, count: int = 256, C: complex = 1):
    return vector_trace(fig2_state(dim), FieldConfig(C), theta_grid(count))


def run_verification(dim: int = 16, trials: int = 500, seed: int = 42, C: complex = 1) -> VerificationReport:
    cfg = FieldConfig(C)
    rng = make_rng(seed)
    thetas = rng.uniform(0, 2 * np.pi, THETA_COUNT)
    report = VerificationReport()
    report.checks += check_fock(dim)
    report.checks += check_operator_oracles(rng, min(dim, 8))
    report.checks += check_commutators(range(4, dim + 1), thetas, cfg)
    report.checks += check_number_states(dim, thetas, cfg)

    scalar_states = [random_state(rng, dim, 1, mixed=bool(i % 2)) for i in range(trials)]
    report.checks += check_scalar_sweep(scalar_states, thetas, cfg)

    vector_states = [random_state(rng, dim, 2, mixed=bool(i % 2)) for i in range(trials)]
    report.checks += relation_sweep(vector_states, thetas, cfg).checks()
    subset = vector_states[: min(trials, 50)]
    report.checks.append(
        CheckResult("vector.round_trip", round_trip_deviation(vector_states[:200], thetas, cfg), ROUND_TRIP_TOL)
    )
    report.checks.append(CheckResult("vector.reduction", reduction_deviation(subset, cfg), REDUCTION_TOL))
    report.checks.append(CheckResult("vector.phase_offset", vector_phase_offset(subset, thetas, cfg), PHASE_OFFSET_TOL))
    report.checks.append(CheckResult("fig2.deviation", fig2_deviation(C=C), FIG2_TOL))
    return report
