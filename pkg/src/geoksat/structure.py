"""Clause-variable structure analysis.

Covers the bipartite incidence graph, exact and sampled expansion checks,
the two sufficient conditions for large resolution width, the sort-based
unsatisfiable-core finder, a brute-force SAT oracle for small variable
counts, and the niceness test for geometric clauses.

Resolution width itself is never computed: only the two checkable
sufficient conditions are exposed, since their failure witnesses are what
the experiments need.
"""

import itertools
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .voronoi import k_nearest_sites

DEFAULT_ENUM_CAP = 10_000_000


class EnumerationBudgetError(RuntimeError):
    """Raised when exhaustive subset enumeration would exceed the cap."""


@dataclass(frozen=True)
class IncidenceGraph:
    """Bipartite clause-variable adjacency; signs are discarded.

    ``clause_vars[c]`` is the sorted variable tuple of clause c (1-based
    variables); ``var_clauses[v]`` the sorted tuple of clauses containing
    v.  Immutable after construction; checkers only read it.
    """

    clause_vars: tuple
    var_clauses: dict

    @property
    def m(self):
        return len(self.clause_vars)

    def neighborhood(self, clause_subset):
        out = set()
        for c in clause_subset:
            out.update(self.clause_vars[c])
        return out


def incidence_graph(f):
    clause_vars = tuple(tuple(int(v) for v in row)
                        for row in f.sorted_variable_sets())
    var_clauses = {}
    for c, vs in enumerate(clause_vars):
        for v in vs:
            var_clauses.setdefault(v, []).append(c)
    var_clauses = {v: tuple(cs) for v, cs in var_clauses.items()}
    return IncidenceGraph(clause_vars=clause_vars, var_clauses=var_clauses)


@dataclass(frozen=True)
class ExpansionWitness:
    """A clause subset violating |N(C')| >= (1 + c) |C'|."""

    clause_indices: tuple
    neighborhood_size: int
    threshold: float


@dataclass(frozen=True)
class WidthConditionWitness:
    """A clause subset violating one of the two width conditions."""

    condition: int  # 1: |N(C')| >= |C'|; 2: unique variables >= eps |C'|
    clause_indices: tuple
    value: int
    threshold: float


def _subset_budget(m, max_size):
    total = 0
    term = 1
    for i in range(1, max_size + 1):
        term = term * (m - i + 1) // i
        total += term
    return total


def _var_bit_masks(gph):
    """uint64 variable-set masks if the variable universe fits, else None."""
    all_vars = sorted(gph.var_clauses)
    if len(all_vars) > 63:
        return None, None
    bit_of = {v: j for j, v in enumerate(all_vars)}
    masks = np.array([sum(1 << bit_of[v] for v in vs) for vs in gph.clause_vars],
                     dtype=np.uint64)
    return masks, bit_of


def _enumerate_levels(gph, max_size, visit):
    """Enumerate clause subsets by size (lexicographic within a size).

    ``visit(size, subsets, nbhd_sizes, unique_sizes)`` is called per size
    with aligned arrays; it returns the index of a violating subset or
    None.  Returns the violating subset as a sorted tuple, or None.
    Vectorized over uint64 masks when the variable universe allows,
    otherwise falls back to Python-integer masks.
    """
    m = gph.m
    masks, _ = _var_bit_masks(gph)
    if masks is not None:
        return _enumerate_levels_u64(masks, m, max_size, visit)
    return _enumerate_levels_py(gph, m, max_size, visit)


def _enumerate_levels_u64(masks, m, max_size, visit):
    last = np.arange(m, dtype=np.int32)
    or_mask = masks.copy()
    once = masks.copy()
    multi = np.zeros(m, dtype=np.uint64)
    # per level: the extension item and the parent row (None for level 1)
    parents = [None]
    last_hist = [last]

    for size in range(1, max_size + 1):
        if size > 1:
            counts = (m - 1 - last).astype(np.int64)
            total = int(counts.sum())
            if total == 0:
                return None
            parent_idx = np.repeat(np.arange(len(last), dtype=np.int64), counts)
            starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
            item = (np.arange(total, dtype=np.int64)
                    - np.repeat(starts, counts)
                    + np.repeat(last + 1, counts)).astype(np.int32)
            item_mask = masks[item]
            new_multi = multi[parent_idx] | (once[parent_idx] & item_mask)
            new_once = (once[parent_idx] | item_mask) & ~new_multi
            or_mask = or_mask[parent_idx] | item_mask
            once, multi, last = new_once, new_multi, item
            parents.append(parent_idx)
            last_hist.append(item)
        nb = np.bitwise_count(or_mask).astype(np.int64)
        uq = np.bitwise_count(once).astype(np.int64)
        hit = visit(size, None, nb, uq)
        if hit is not None:
            subset = []
            level, row = size, hit
            while level >= 1:
                subset.append(int(last_hist[level - 1][row]))
                if level > 1:
                    row = int(parents[level - 1][row])
                level -= 1
            return tuple(sorted(subset))
    return None


def _enumerate_levels_py(gph, m, max_size, visit, batch=1 << 16):
    all_vars = sorted(gph.var_clauses)
    bit_of = {v: j for j, v in enumerate(all_vars)}
    masks = [sum(1 << bit_of[v] for v in vs) for vs in gph.clause_vars]
    full = (1 << len(all_vars)) - 1
    for size in range(1, max_size + 1):
        combos = []
        nb = []
        uq = []

        def flush():
            hit = visit(size, combos, np.asarray(nb), np.asarray(uq))
            return tuple(combos[hit]) if hit is not None else None

        for subset in itertools.combinations(range(m), size):
            om = 0
            once = 0
            multi = 0
            for c in subset:
                mk = masks[c]
                multi |= once & mk
                once = (once | mk) & ~multi
                om |= mk
            combos.append(subset)
            nb.append(om.bit_count())
            uq.append(once.bit_count())
            if len(combos) >= batch:
                found = flush()
                if found is not None:
                    return found
                combos, nb, uq = [], [], []
        if combos:
            found = flush()
            if found is not None:
                return found
    return None


def check_expansion_exact(gph, r, c, cap=DEFAULT_ENUM_CAP):
    """PASS (None) iff every clause subset of size <= r expands by (1 + c).

    On failure returns the minimal-size, lexicographically smallest
    ExpansionWitness.  Raises EnumerationBudgetError when the number of
    subsets exceeds ``cap`` (use check_expansion_sampled instead).
    """
    r = min(r, gph.m)
    budget = _subset_budget(gph.m, r)
    if budget > cap:
        raise EnumerationBudgetError(
            f"{budget} subsets exceed cap {cap}; use check_expansion_sampled")

    state = {}

    def visit(size, combos, nb, uq):
        bad = np.flatnonzero(nb < (1.0 + c) * size)
        if len(bad):
            state["nb"] = int(nb[bad[0]])
            state["size"] = size
            return int(bad[0])
        return None

    subset = _enumerate_levels(gph, r, visit)
    if subset is None:
        return None
    return ExpansionWitness(clause_indices=subset,
                            neighborhood_size=state["nb"],
                            threshold=(1.0 + c) * state["size"])


def check_expansion_sampled(gph, r, c, trials, seed):
    """One-sided randomized expansion check.

    Samples clause subsets grown by a random walk over variable
    co-occurrence (uniform subsets essentially never violate expansion, so
    the walk biases toward overlapping clauses).  Any returned witness is
    sound; ``None`` (PASS_PROBABLE) carries no guarantee.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    m = gph.m
    for _ in range(trials):
        size = int(rng.integers(1, r + 1))
        current = [int(rng.integers(m))]
        chosen = set(current)
        nbhd = set(gph.clause_vars[current[0]])
        attempts = 4 * size
        while len(current) < size and attempts > 0:
            attempts -= 1
            base = current[int(rng.integers(len(current)))]
            vs = gph.clause_vars[base]
            v = vs[int(rng.integers(len(vs)))]
            cands = gph.var_clauses[v]
            nxt = cands[int(rng.integers(len(cands)))]
            if nxt in chosen:
                continue
            chosen.add(nxt)
            current.append(nxt)
            nbhd.update(gph.clause_vars[nxt])
            # violations can appear at any intermediate size
            if len(nbhd) < (1.0 + c) * len(current):
                return ExpansionWitness(clause_indices=tuple(sorted(current)),
                                        neighborhood_size=len(nbhd),
                                        threshold=(1.0 + c) * len(current))
    return None


def unique_variable_boundary(gph, clause_subset):
    """Variables contained in exactly one clause of the subset."""
    subset = list(clause_subset)
    if not subset:
        raise ValueError("clause subset must be nonempty")
    for c in subset:
        if not 0 <= c < gph.m:
            raise IndexError(f"clause index {c} out of range")
    counts = Counter()
    for c in subset:
        counts.update(gph.clause_vars[c])
    return tuple(sorted(v for v, cnt in counts.items() if cnt == 1))


def resolution_width_conditions(f, w, eps, cap=DEFAULT_ENUM_CAP):
    """Check the two subset conditions sufficient for width Omega(w).

    (1) every subset with |C'| <= w contains at least |C'| variables;
    (2) every subset with w/3 <= |C'| <= 2w/3 has at least eps |C'|
    unique variables.  PASS is None; otherwise the minimal-size, lex
    smallest witness naming the violated condition.
    """
    gph = f if isinstance(f, IncidenceGraph) else incidence_graph(f)
    w_eff = min(w, gph.m)
    budget = _subset_budget(gph.m, w_eff)
    if budget > cap:
        raise EnumerationBudgetError(f"{budget} subsets exceed cap {cap}")

    state = {}

    def visit(size, combos, nb, uq):
        bad1 = np.flatnonzero(nb < size)
        in_range = 3 * size >= w and 3 * size <= 2 * w
        bad2 = np.flatnonzero(uq < eps * size) if in_range else np.array([], dtype=int)
        if not len(bad1) and not len(bad2):
            return None
        first1 = int(bad1[0]) if len(bad1) else None
        first2 = int(bad2[0]) if len(bad2) else None
        if first2 is None or (first1 is not None and first1 <= first2):
            state.update(condition=1, value=int(nb[first1]), threshold=float(size))
            return first1
        state.update(condition=2, value=int(uq[first2]), threshold=eps * size)
        return first2

    subset = _enumerate_levels(gph, w_eff, visit)
    if subset is None:
        return None
    return WidthConditionWitness(condition=state["condition"],
                                 clause_indices=subset,
                                 value=state["value"],
                                 threshold=state["threshold"])


@dataclass(frozen=True)
class SatResult:
    satisfiable: bool
    assignment: dict | None


def brute_force_sat(clauses, max_vars=25):
    """Exhaustive truth-table SAT check over the distinct variables.

    ``clauses`` is an iterable of signed 1-based literal sequences.  SAT
    returns a model (dict variable -> bool); UNSAT is exhaustive.
    """
    clause_list = [tuple(int(l) for l in cl) for cl in clauses]
    variables = sorted({abs(l) for cl in clause_list for l in cl})
    if len(variables) > max_vars:
        raise ValueError(f"{len(variables)} variables exceed limit {max_vars}")
    if not clause_list:
        return SatResult(True, {})
    bit_of = {v: j for j, v in enumerate(variables)}

    nbits = len(variables)
    chunk = 1 << min(nbits, 16)
    for start in range(0, 1 << nbits, chunk):
        assign = np.arange(start, start + chunk, dtype=np.uint32)
        alive = np.ones(len(assign), dtype=bool)
        for cl in clause_list:
            sat = np.zeros(len(assign), dtype=bool)
            for lit in cl:
                bit = (assign >> bit_of[abs(lit)]) & 1
                sat |= (bit == 1) if lit > 0 else (bit == 0)
            alive &= sat
            if not alive.any():
                break
        if alive.any():
            model_bits = int(assign[np.flatnonzero(alive)[0]])
            return SatResult(True, {v: bool((model_bits >> bit_of[v]) & 1)
                                    for v in variables})
    return SatResult(False, None)


@dataclass(frozen=True)
class UnsatCore:
    """2^k clauses on one variable set carrying all 2^k sign patterns.

    ``patterns[j]`` is a bitmask over the sorted variable set (bit i set
    means the i-th smallest variable is negated) and belongs to clause
    ``clause_indices[j]``.
    """

    variables: tuple
    clause_indices: tuple
    patterns: tuple


def _sign_patterns(f):
    """Per-clause sign bitmask aligned to the sorted variable order."""
    v = np.abs(f.literals)
    order = np.argsort(v, axis=1, kind="stable")
    neg_sorted = np.take_along_axis(f.literals < 0, order, axis=1)
    return neg_sorted @ (1 << np.arange(f.k, dtype=np.int64))


def find_unsat_core(f):
    """Find a pigeonhole core by sorting clauses by variable set.

    Clauses are sorted lexicographically by their sorted variable sets
    (O(m log m)); the first set carrying all 2^k sign patterns yields the
    core, which is confirmed UNSAT by brute force.  Returns None when no
    set saturates.
    """
    if f.m == 0:
        return None
    var_sets = f.sorted_variable_sets()
    patterns = _sign_patterns(f)
    order = np.lexsort(var_sets.T[::-1])
    sorted_sets = var_sets[order]
    boundary = np.any(sorted_sets[1:] != sorted_sets[:-1], axis=1)
    starts = np.concatenate(([0], np.flatnonzero(boundary) + 1, [f.m]))

    full = 1 << f.k
    for a, b in zip(starts[:-1], starts[1:]):
        if b - a < full:
            continue
        run = np.sort(order[a:b])  # ascending clause index within the set
        seen = {}
        for c in run:
            seen.setdefault(int(patterns[c]), int(c))
            if len(seen) == full:
                break
        if len(seen) == full:
            pats = tuple(sorted(seen))
            clauses = tuple(seen[p] for p in pats)
            core = UnsatCore(
                variables=tuple(int(v) for v in sorted_sets[a]),
                clause_indices=clauses,
                patterns=pats)
            check = brute_force_sat([f.literals[c] for c in clauses])
            if check.satisfiable:
                raise RuntimeError("saturated sign-pattern set was satisfiable")
            return core
    return None


def is_nice(clause_index, inst):
    """True iff the clause's draw sequence equals the connection-weight
    ranking of all variables.

    The j-th drawn variable must be the j-th ranked variable by X(c, .),
    equivalently the j-th smallest weighted distance (the two rankings
    coincide under the strictly monotone map between them); rank ties
    break by smaller index, matching the generator.  For T = 0 instances
    this holds by construction and the check doubles as verification
    against k_nearest_sites.
    """
    f = inst.formula
    if not 0 <= clause_index < f.m:
        raise IndexError(f"clause index {clause_index} out of range")
    _, ranked = k_nearest_sites(inst.clause_positions[clause_index],
                                inst.sites, f.k, inst.g)
    drawn = np.abs(f.literals[clause_index]) - 1
    return bool(np.array_equal(drawn, ranked))
