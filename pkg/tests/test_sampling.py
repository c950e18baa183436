import numpy as np
import pytest

from geoksat.sampling import SumTree, weighted_draw_without_replacement


def test_single_positive_weight():
    rng = np.random.default_rng(0)
    for _ in range(20):
        assert weighted_draw_without_replacement([1.0, 0.0, 0.0], 1, rng) == [0]


def test_insufficient_positive_weights():
    rng = np.random.default_rng(0)
    with pytest.raises(ValueError):
        weighted_draw_without_replacement([1.0, 0.0, 0.0], 2, rng)


def test_two_equal_weights_both_orders():
    rng = np.random.default_rng(1)
    first = 0
    trials = 100_000
    for _ in range(trials):
        order = weighted_draw_without_replacement([1.0, 1.0], 2, rng)
        first += order == [0, 1]
    assert abs(first / trials - 0.5) < 0.01


def test_sequential_pair_probability():
    # ordered pair (0, 1) from weights (2, 1, 1): (2/4) * (1/2) = 0.25
    rng = np.random.default_rng(2)
    hits = 0
    trials = 100_000
    for _ in range(trials):
        order = weighted_draw_without_replacement([2.0, 1.0, 1.0], 2, rng)
        hits += order == [0, 1]
    assert abs(hits / trials - 0.25) < 0.01


def test_tree_prefix_sums_match_cumsum():
    rng = np.random.default_rng(3)
    w = rng.random(137)
    w[rng.random(137) < 0.2] = 0.0
    tree = SumTree(w)
    cum = np.cumsum(w)
    for i in range(1, 138):
        assert tree.prefix_sum(i) == pytest.approx(cum[i - 1])
    tree.update(5, 3.25)
    w[5] = 3.25
    assert tree.total == pytest.approx(w.sum())


def test_draw_index_matches_linear_scan():
    rng = np.random.default_rng(4)
    w = rng.random(50)
    w[::7] = 0.0
    tree = SumTree(w)
    cum = np.cumsum(w)
    for u in rng.random(2000):
        idx = tree.draw_index(u)
        expect = int(np.searchsorted(cum, u * cum[-1], side="right"))
        assert idx == expect
        assert w[idx] > 0


def test_draw_never_returns_zero_weight():
    tree = SumTree([0.0, 1.0, 0.0])
    for u in np.linspace(0, 0.999999, 50):
        assert tree.draw_index(u) == 1


def test_restore_after_draws():
    w = [5.0, 1.0, 2.0, 0.5]
    rng = np.random.default_rng(5)
    before = list(w)
    weighted_draw_without_replacement(w, 3, rng)
    assert w == before  # caller's list untouched


def test_rejects_negative_weights():
    with pytest.raises(ValueError):
        SumTree([1.0, -0.5])
