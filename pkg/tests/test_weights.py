import math

import numpy as np
import pytest

from geoksat.weights import (EXPLICIT, POWER_LAW, WeightSequence,
                             explicit_weights, normalize_min_one,
                             power_law_weights, power_law_total_asymptotic,
                             prefix_mass, second_moment, uniform_weights,
                             weights_from_file)


def test_power_law_values():
    ws = power_law_weights(10, 3.0)
    assert ws.kind == POWER_LAW
    assert ws.weights[0] == 1.0
    assert ws.weights[3] == pytest.approx(0.5)  # 4^(-1/2)
    assert np.all(np.diff(ws.weights) < 0)


def test_power_law_rejects_small_beta():
    for beta in (2.0, 1.5, -1.0):
        with pytest.raises(ValueError):
            power_law_weights(10, beta)
    with pytest.raises(ValueError):
        power_law_weights(0, 3.0)


def test_total_matches_asymptotic_leading_term():
    n = 1_000_000
    for beta in (2.5, 3.5):
        ws = power_law_weights(n, beta)
        lead = power_law_total_asymptotic(n, beta)
        assert abs(ws.total / lead - 1.0) < 0.02


def test_total_is_exact_sum():
    ws = explicit_weights([0.1] * 10)
    assert ws.total == pytest.approx(1.0, rel=1e-12)


def test_probabilities_sum_to_one():
    for ws in (power_law_weights(1000, 2.5), uniform_weights(17),
               explicit_weights([3.0, 1.0, 2.5])):
        assert abs(ws.probabilities.sum() - 1.0) < 1e-9


def test_prefix_mass_basics():
    ws = uniform_weights(8)
    for i in range(1, 9):
        assert prefix_mass(ws, i) == pytest.approx(i / 8)
    assert prefix_mass(power_law_weights(100, 3.0), 100) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        prefix_mass(ws, 0)
    with pytest.raises(ValueError):
        prefix_mass(ws, 9)


def test_prefix_mass_sorts_explicit_sequences():
    ws = explicit_weights([1.0, 5.0, 2.0])
    assert prefix_mass(ws, 1) == pytest.approx(5.0 / 8.0)


def test_prefix_mass_monotone_and_concave():
    ws = power_law_weights(500, 2.7)
    vals = np.array([prefix_mass(ws, i) for i in range(1, 501)])
    assert np.all(np.diff(vals) > 0)
    assert np.all(np.diff(vals, 2) <= 1e-15)


def test_prefix_mass_power_law_shape():
    # F(i) tracks (i/n)^((beta-2)/(beta-1)) up to a constant; fit the
    # constant at one index and predict another within 10%
    beta, n = 2.5, 100_000
    ws = power_law_weights(n, beta)
    expo = (beta - 2) / (beta - 1)
    const = prefix_mass(ws, 10_000) / (10_000 / n) ** expo
    predicted = const * (1_000 / n) ** expo
    assert abs(prefix_mass(ws, 1_000) / predicted - 1.0) < 0.10


def test_second_moment_basics():
    assert second_moment(explicit_weights([2.5])) == pytest.approx(1.0)
    assert second_moment(uniform_weights(64)) == pytest.approx(1 / 64)


def test_second_moment_log_regime_beta_3():
    ratios = []
    for n in (10**3, 10**4, 10**5):
        ws = power_law_weights(n, 3.0)
        ratios.append(second_moment(ws) * n / math.log(n))
    assert max(ratios) / min(ratios) < 1.25


def test_second_moment_regimes():
    # beta < 3: sum p^2 ~ n^(-2(beta-2)/(beta-1)); beta > 3: ~ 1/n
    for beta, expo in ((2.5, 2 * (2.5 - 2) / (2.5 - 1)), (3.5, 1.0)):
        vals = []
        for n in (10**3, 10**4, 10**5):
            vals.append(second_moment(power_law_weights(n, beta)) * n**expo)
        assert max(vals) / min(vals) < 2.0


def test_normalize_min_one():
    ws = explicit_weights([2.0, 4.0, 8.0])
    out = normalize_min_one(ws)
    assert np.allclose(out.weights, [1.0, 2.0, 4.0])
    assert out.weights.min() == 1.0
    again = normalize_min_one(out)
    assert np.array_equal(again.weights, out.weights)
    pl = normalize_min_one(power_law_weights(4, 3.0))
    assert np.allclose(pl.weights, [2.0, 2.0 / math.sqrt(2), 2.0 / math.sqrt(3), 1.0])
    assert pl.kind == EXPLICIT


def test_rejects_bad_weights():
    with pytest.raises(ValueError):
        explicit_weights([1.0, 0.0])
    with pytest.raises(ValueError):
        explicit_weights([1.0, -2.0])
    with pytest.raises(ValueError):
        WeightSequence(np.array([]))


def test_weights_file_round_trip(tmp_path):
    path = tmp_path / "w.txt"
    path.write_text("# comment\n1.5\n2.0\n\n0.25\n")
    ws = weights_from_file(path)
    assert ws.kind == EXPLICIT
    assert np.array_equal(ws.weights, [1.5, 2.0, 0.25])
