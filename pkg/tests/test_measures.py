import itertools
import math

import numpy as np
import pytest

from depolmark.channels import apply_channel, kappa, qubit_kraus
from depolmark.dynmaps import crossover_point, lambda_ratio
from depolmark.matcore import SingularMapError, SingularRateError
from depolmark.measures import (
    MeasureValue,
    blp_measure,
    blp_random_pair_search,
    decay_rate,
    decay_rate_normalized,
    hcla_closed_form,
    hcla_measure,
    memory_witness_closed,
    memory_witness_X,
    plus_minus_distance_derivative,
    plus_minus_states,
    plus_minus_trace_distance,
    qutrit_hcla_log_form,
    trace_distance,
)

ALPHA_GRID = [round(0.1 * k, 1) for k in range(1, 11)]


def random_density(rng):
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def test_decay_rate_memoryless():
    for p in (0.0, 0.3, 0.9):
        assert abs(decay_rate(0.0, p) - 1 / (1 - p)) < 1e-12


def test_decay_rate_value():
    assert abs(decay_rate(0.7, 0.9) + 7.207637231503573) < 1e-10


def test_decay_rate_matches_published_ratio():
    for alpha, p in itertools.product((0.3, 0.7, 1.0), (0.1, 0.5, 0.95)):
        expected = (4 + (4 - 6 * p) * alpha) / (4 + 3 * alpha * p * p - 4 * p * (1 + alpha))
        assert abs(decay_rate(alpha, p) - expected) < 1e-12


def test_decay_rate_sign_change_at_crossover():
    point = crossover_point(0.7)
    assert decay_rate(0.7, point - 1e-3) > 0
    assert decay_rate(0.7, point + 1e-3) < 0
    with pytest.raises(SingularRateError):
        decay_rate(0.7, point)
    with pytest.raises(SingularRateError):
        decay_rate(0.0, 1.0)


def test_normalized_rate_closed_forms():
    for p in (0.2, 0.5, 1.0):
        assert abs(decay_rate_normalized(0.0, p) - 1 / p) < 1e-12
    for alpha, p in itertools.product((0.3, 0.7, 1.0), (0.1, 0.5, 0.95)):
        expected = (4 + 4 * alpha - 6 * alpha * p) / (4 * p + 4 * alpha - 2 * alpha * p - 3 * alpha * p * p)
        assert abs(decay_rate_normalized(alpha, p) - expected) < 1e-12


def test_normalized_rate_is_normalization_of_rate():
    # away from the pole the two routes are algebraically identical
    for alpha, p in itertools.product((0.2, 0.6, 0.9), (0.1, 0.4, 0.6)):
        gamma = decay_rate(alpha, p)
        assert abs(decay_rate_normalized(alpha, p) - (-gamma / (1 - gamma))) < 1e-12


def test_normalized_rate_finite_at_pole():
    # -gamma/(1 - gamma) tends to exactly 1 as gamma diverges
    assert abs(decay_rate_normalized(0.7, crossover_point(0.7)) - 1.0) < 1e-9


def test_normalized_rate_pole():
    with pytest.raises(ValueError):
        decay_rate_normalized(0.0, 0.0)


def test_rate_sample_links_both_views():
    from depolmark.measures import rate_sample

    sample = rate_sample(0.6, 0.4)
    assert sample.p == 0.4
    assert abs(sample.gamma_normalized - (-sample.gamma / (1 - sample.gamma))) < 1e-12
    for p in (0.1, 0.5, 0.9):  # the normalized view is undefined at alpha = 0, p = 0
        assert rate_sample(0.0, p).gamma > 0
    with pytest.raises(SingularRateError):
        rate_sample(0.7, crossover_point(0.7))


def test_hcla_zero_without_memory():
    assert hcla_measure(0.0).value == 0.0
    assert hcla_closed_form(0.0).value == 0.0


def test_hcla_full_memory_value():
    result = hcla_measure(1.0)
    assert isinstance(result, MeasureValue) and result.name == "HCLA"
    assert abs(result.value - 0.2786713773766758) < 1e-9


def test_hcla_numeric_matches_closed_form():
    for alpha in ALPHA_GRID:
        assert abs(hcla_measure(alpha).value - hcla_closed_form(alpha).value) < 1e-6


def test_hcla_monotone_in_alpha():
    values = [hcla_measure(alpha).value for alpha in ALPHA_GRID]
    assert all(a < b for a, b in zip(values, values[1:]))


def test_qutrit_hcla_diverges_from_log_form():
    # the quadrature value is authoritative; the plain-log expression is a
    # reference that disagrees beyond any numerical tolerance
    numeric = hcla_measure(1.0, levels=3).value
    logform = qutrit_hcla_log_form(1.0)
    assert numeric > 0 and math.isfinite(logform)
    assert abs(numeric - logform) > 1e-2


def test_qutrit_hcla_smaller_than_qubit():
    for alpha in (0.4, 0.8, 1.0):
        assert hcla_measure(alpha, levels=3).value < hcla_measure(alpha).value


def test_trace_distance_basics():
    plus, minus = plus_minus_states()
    assert trace_distance(plus, plus) == 0.0
    assert abs(trace_distance(plus, minus) - 1.0) < 1e-14
    with pytest.raises(ValueError):
        trace_distance(plus, np.eye(3) / 3)


def test_evolved_pair_distance_matches_closed_form():
    plus, minus = plus_minus_states()
    for alpha, p in itertools.product((0.0, 0.5, 0.9), (0.0, 0.4, 0.8, 1.0)):
        kraus = qubit_kraus(alpha, p)
        numeric = trace_distance(apply_channel(kraus, plus), apply_channel(kraus, minus))
        closed = plus_minus_trace_distance(alpha, p)
        assert abs(numeric - closed) < 1e-12
        assert abs(closed - abs(4 + 3 * alpha * p * p - 4 * p * (alpha + 1)) / 4) < 1e-15
        assert abs(closed - abs(1 - kappa(alpha, p))) < 1e-15


def test_distance_derivative_single_sign_change():
    for alpha in (0.3, 0.7, 1.0):
        point = crossover_point(alpha)
        grid = np.linspace(0.0, 1.0, 401)
        signs = np.sign([plus_minus_distance_derivative(alpha, p) for p in grid])
        flips = np.nonzero(np.diff(signs[signs != 0]))[0]
        assert len(flips) == 1
        assert plus_minus_distance_derivative(alpha, point - 1e-4) < 0
        assert plus_minus_distance_derivative(alpha, point + 1e-4) > 0


def test_blp_measure_values():
    assert blp_measure(0.0).value == 0.0
    assert abs(blp_measure(0.7).value - 0.175) < 1e-8
    assert abs(blp_measure(1.0).value - 0.25) < 1e-8
    for alpha in ALPHA_GRID:
        assert abs(blp_measure(alpha).value - alpha / 4) < 1e-8


def test_blp_random_pair_search_never_beats_antipodal_pair():
    best = blp_random_pair_search(0.8, pairs=60, grid_points=201, seed=11)
    assert best <= 0.8 / 4 + 1e-9
    assert best > 0.8 / 4 - 5e-3  # grid-resolution slack


def test_memoryless_contraction_for_random_pairs():
    rng = np.random.default_rng(42)
    grid = np.linspace(0.0, 1.0, 21)
    kraus_sets = [qubit_kraus(0.0, p) for p in grid]
    for _ in range(50):
        rho_a, rho_b = random_density(rng), random_density(rng)
        dist = [trace_distance(apply_channel(k, rho_a), apply_channel(k, rho_b)) for k in kraus_sets]
        assert all(b - a <= 1e-12 for a, b in zip(dist, dist[1:]))


def test_memory_witness_at_equal_parameters():
    assert abs(memory_witness_X(0.7, 0.3, 0.3) - 3.0) < 1e-10


def test_memory_witness_value():
    assert abs(memory_witness_X(0.7, 0.3, 1.0) - 0.9772) < 1e-4
    assert abs(memory_witness_closed(0.7, 0.3, 1.0) - 3 * 0.7 / 2.149) < 1e-12


def test_memory_witness_routes_agree():
    for alpha, p in itertools.product((0.0, 0.5, 0.8, 1.0), (0.3, 0.6, 0.9)):
        direct = memory_witness_X(alpha, 0.3, p)
        assert abs(direct - memory_witness_closed(alpha, 0.3, p)) < 1e-10
        assert abs(direct - 3 * abs(lambda_ratio(alpha, 0.3, p).value)) < 1e-10


def test_memory_witness_nonmonotonic_with_memory():
    grid = np.linspace(0.3, 1.0, 71)
    for alpha in (0.8, 0.9, 1.0):
        values = [memory_witness_X(alpha, 0.3, p) for p in grid]
        low = int(np.argmin(values))
        assert 0 < low < len(values) - 1
        assert values[-1] > values[low] + 1e-3  # rises again: backflow
        assert values[0] > values[low]


def test_memory_witness_monotone_without_memory():
    grid = np.linspace(0.3, 1.0, 71)
    values = [memory_witness_X(0.0, 0.3, p) for p in grid]
    assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))


def test_memory_witness_singular_q():
    with pytest.raises(SingularMapError):
        memory_witness_X(0.7, crossover_point(0.7), 0.9)


def test_measure_value_name_validation():
    with pytest.raises(ValueError):
        MeasureValue("bogus", 0.5, 2, 1.0)
