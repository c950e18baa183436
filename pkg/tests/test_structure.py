import itertools

import numpy as np
import pytest

from geoksat.generate import formula_from_clauses, sample_geometric_formula, sample_nonuniform_formula
from geoksat.geometry import GeometrySpec
from geoksat.structure import (EnumerationBudgetError, brute_force_sat,
                               check_expansion_exact, check_expansion_sampled,
                               find_unsat_core, incidence_graph, is_nice,
                               resolution_width_conditions,
                               unique_variable_boundary)
from geoksat.weights import power_law_weights, uniform_weights

G2 = GeometrySpec(d=2, p_norm=2)


def _random_formula(n, m, k, beta, seed):
    return sample_nonuniform_formula(n, m, k, power_law_weights(n, beta), seed)


# --- independent brute-force oracles (deliberately written the slow,
# --- obvious way; they double-check the vectorized enumeration)

def oracle_expansion(gph, r, c):
    for size in range(1, min(r, gph.m) + 1):
        for sub in itertools.combinations(range(gph.m), size):
            nb = set()
            for ci in sub:
                nb.update(gph.clause_vars[ci])
            if len(nb) < (1 + c) * size:
                return sub
    return None


def oracle_width(gph, w, eps):
    for size in range(1, min(w, gph.m) + 1):
        for sub in itertools.combinations(range(gph.m), size):
            counts = {}
            for ci in sub:
                for v in gph.clause_vars[ci]:
                    counts[v] = counts.get(v, 0) + 1
            if len(counts) < size:
                return (1, sub)
            if 3 * size >= w and 3 * size <= 2 * w:
                unique = sum(1 for cnt in counts.values() if cnt == 1)
                if unique < eps * size:
                    return (2, sub)
    return None


def test_incidence_graph_basics():
    f = formula_from_clauses(6, 3, [[1, -2, 3], [4, 5, -6], [2, 1, -3]])
    gph = incidence_graph(f)
    assert gph.neighborhood([0]) == {1, 2, 3}
    assert len(gph.neighborhood([0, 1])) == 6
    assert len(gph.neighborhood([0, 2])) == 3
    assert gph.var_clauses[1] == (0, 2)
    for c, vs in enumerate(gph.clause_vars):
        for v in vs:
            assert c in gph.var_clauses[v]


def test_expansion_single_clause_passes():
    f = formula_from_clauses(5, 3, [[1, 2, 3]])
    gph = incidence_graph(f)
    assert check_expansion_exact(gph, 1, 2.0) is None  # c = k - 1


def test_expansion_duplicate_pair_witness():
    k = 3
    f = formula_from_clauses(6, k, [[1, 2, 3], [4, 5, 6], [-1, 2, -3]])
    gph = incidence_graph(f)
    witness = check_expansion_exact(gph, 2, k / 2)
    assert witness is not None
    assert witness.clause_indices == (0, 2)
    assert witness.neighborhood_size == 3
    assert witness.threshold == pytest.approx((1 + k / 2) * 2)


def test_expansion_matches_oracle_random():
    f = _random_formula(30, 30, 3, 4.0, seed=77)
    gph = incidence_graph(f)
    lib = check_expansion_exact(gph, 4, 0.5)
    orc = oracle_expansion(gph, 4, 0.5)
    if orc is None:
        assert lib is None
    else:
        assert lib is not None and lib.clause_indices == orc


def test_expansion_budget_error():
    f = _random_formula(30, 30, 3, 4.0, seed=1)
    gph = incidence_graph(f)
    with pytest.raises(EnumerationBudgetError):
        check_expansion_exact(gph, 10, 0.5, cap=1000)


def test_expansion_pass_monotone():
    rng = np.random.default_rng(8)
    for _ in range(20):
        f = _random_formula(25, 12, 3, 3.5, int(rng.integers(1 << 30)))
        gph = incidence_graph(f)
        if check_expansion_exact(gph, 4, 1.0) is None:
            assert check_expansion_exact(gph, 3, 1.0) is None
            assert check_expansion_exact(gph, 4, 0.5) is None


def test_sampled_checker_planted_duplicates():
    rng = np.random.default_rng(11)
    found = 0
    trials = 80
    for _ in range(trials):
        n, m, k = 40, 30, 3
        f = sample_nonuniform_formula(n, m, k, uniform_weights(n),
                                      int(rng.integers(1 << 30)))
        lits = f.literals.copy()
        i, j = rng.choice(m, size=2, replace=False)
        lits[j] = lits[i]
        f2 = formula_from_clauses(n, k, lits)
        gph = incidence_graph(f2)
        w = check_expansion_sampled(gph, 2, k / 2, 10 * m,
                                    int(rng.integers(1 << 30)))
        if w is not None:
            nb = gph.neighborhood(w.clause_indices)
            assert len(nb) < (1 + k / 2) * len(w.clause_indices)
            found += 1
    assert found >= 0.95 * trials


def test_sampled_checker_no_false_witness_on_disjoint():
    f = formula_from_clauses(9, 3, [[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    gph = incidence_graph(f)
    assert check_expansion_sampled(gph, 3, 0.5, 5000, seed=3) is None


def test_unique_variable_boundary():
    f = formula_from_clauses(9, 3, [[1, 2, 3], [3, 4, 5], [1, 2, 3], [7, 8, 9]])
    gph = incidence_graph(f)
    assert unique_variable_boundary(gph, [0]) == (1, 2, 3)
    assert unique_variable_boundary(gph, [0, 1]) == (1, 2, 4, 5)
    assert unique_variable_boundary(gph, [0, 2]) == ()
    with pytest.raises(IndexError):
        unique_variable_boundary(gph, [9])
    with pytest.raises(ValueError):
        unique_variable_boundary(gph, [])


def test_boundary_counting_inequality():
    # |delta C'| >= 2 |N(C')| - k |C'| on enumerated subsets
    f = _random_formula(20, 10, 3, 3.0, seed=5)
    gph = incidence_graph(f)
    for size in (1, 2, 3):
        for sub in itertools.combinations(range(10), size):
            delta = unique_variable_boundary(gph, sub)
            nb = gph.neighborhood(sub)
            assert set(delta) <= nb
            assert len(delta) >= 2 * len(nb) - 3 * size


def test_width_conditions_w1_always_passes():
    f = _random_formula(10, 8, 3, 3.0, seed=2)
    assert resolution_width_conditions(f, 1, 5.0) is None


def test_width_conditions_duplicate_clauses():
    # two identical unit clauses: condition (1) fails at size 2 for k = 1
    f1 = formula_from_clauses(2, 1, [[1], [1]])
    witness = resolution_width_conditions(f1, 2, 0.5)
    assert witness is not None and witness.condition == 1
    assert witness.clause_indices == (0, 1)
    # for k = 3 both conditions hold at w = 2
    f3 = formula_from_clauses(3, 3, [[1, 2, 3], [1, 2, 3]])
    assert resolution_width_conditions(f3, 2, 0.5) is None


def test_width_conditions_match_oracle_frozen():
    # oracle run once over all C(40, <= 6) subsets: PASS
    f = _random_formula(40, 40, 5, 5.0, seed=123)
    assert resolution_width_conditions(f, 6, 0.5) is None


def test_width_conditions_match_oracle_live():
    rng = np.random.default_rng(44)
    for _ in range(25):
        n = int(rng.integers(8, 16))
        m = int(rng.integers(6, 12))
        f = _random_formula(n, m, 3, 3.0, int(rng.integers(1 << 30)))
        gph = incidence_graph(f)
        lib = resolution_width_conditions(f, 4, 0.5)
        orc = oracle_width(gph, 4, 0.5)
        if orc is None:
            assert lib is None
        else:
            assert (lib.condition, lib.clause_indices) == orc


def test_brute_force_sat_basics():
    assert brute_force_sat([]).satisfiable
    assert brute_force_sat([]).assignment == {}
    res = brute_force_sat([[1], [-1]])
    assert not res.satisfiable and res.assignment is None
    full = [list(lits) for lits in
            itertools.product(*[(v, -v) for v in (1, 2, 3)])]
    assert not brute_force_sat(full).satisfiable
    sat = brute_force_sat([[1, 2], [-1, 2], [1, -2]])
    assert sat.satisfiable
    model = sat.assignment
    for clause in ([1, 2], [-1, 2], [1, -2]):
        assert any((l > 0) == model[abs(l)] for l in clause)
    with pytest.raises(ValueError):
        brute_force_sat([[1, 2]], max_vars=1)


def test_core_on_saturated_set():
    clauses = [[(v if (pat >> i) & 1 == 0 else -v) for i, v in enumerate((1, 2, 3))]
               for pat in range(8)]
    f = formula_from_clauses(3, 3, clauses)
    core = find_unsat_core(f)
    assert core is not None
    assert core.variables == (1, 2, 3)
    assert sorted(core.patterns) == list(range(8))
    assert not brute_force_sat([f.literals[c] for c in core.clause_indices]).satisfiable


def test_no_core_when_pattern_missing():
    clauses = [[(v if (pat >> i) & 1 == 0 else -v) for i, v in enumerate((1, 2, 3))]
               for pat in range(7)]  # one pattern missing
    clauses += [[4, 5, 6], [4, 5, -6]]
    f = formula_from_clauses(6, 3, clauses)
    assert find_unsat_core(f) is None


def test_core_planted_in_random_formula():
    rng = np.random.default_rng(15)
    for trial in range(10):
        n, m, k = 30, 400, 2
        f = sample_nonuniform_formula(n, m, k, uniform_weights(n),
                                      int(rng.integers(1 << 30)))
        lits = f.literals.copy()
        vset = np.sort(rng.choice(n, size=k, replace=False) + 1)
        rows = rng.choice(m, size=1 << k, replace=False)
        for pat, row in enumerate(rows):
            lits[row] = [(-v if (pat >> i) & 1 else v) for i, v in enumerate(vset)]
        core = find_unsat_core(formula_from_clauses(n, k, lits))
        assert core is not None
        found = brute_force_sat([lits[c] for c in core.clause_indices])
        assert not found.satisfiable


def test_core_from_threshold_geometric_instance():
    n, k = 200, 2
    m = (1 << k) * 2 * k * (n - k) + 1
    inst = sample_geometric_formula(n, m, k, G2, 0.0, None, seed=400)
    core = find_unsat_core(inst.formula)
    assert core is not None


def test_is_nice_threshold_and_errors():
    inst = sample_geometric_formula(100, 50, 2, G2, 0.0, None, seed=2)
    assert all(is_nice(i, inst) for i in range(50))
    with pytest.raises(IndexError):
        is_nice(50, inst)


def test_is_nice_detects_reordered_draw():
    inst = sample_geometric_formula(100, 20, 2, G2, 0.0, None, seed=3)
    lits = inst.formula.literals.copy()
    lits[0] = lits[0][::-1]  # swap draw order of the first clause
    from geoksat.generate import GeometricInstance
    broken = GeometricInstance(
        formula=formula_from_clauses(100, 2, lits),
        clause_positions=inst.clause_positions, sites=inst.sites,
        g=inst.g, T=inst.T)
    assert not is_nice(0, broken)
    assert is_nice(1, broken)
