"""Weighted order-k Voronoi machinery on the torus.

Sites carry multiplicative weights with minimum exactly 1; the weighted
distance of a point to site i is dist/w_i^(1/d).  The order-k region of a
size-k set A is the set of points whose k weighted-nearest sites are
exactly A.  Regions are never constructed explicitly; non-empty regions
are discovered by Monte Carlo sampling of k-nearest queries.

k-nearest queries default to an exact full scan.  For unweighted sites a
cKDTree with periodic boxsize can be enabled (``method="tree"``), which is
an optimization flag only; both paths are exact and tested against each
other.
"""

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.spatial import cKDTree

from .geometry import cross_distances, torus_distance

# Monte Carlo points are drawn from the seeded stream in blocks of this
# fixed size so that results are reproducible and prefix-extensible.
_MC_BLOCK = 1 << 15
# cap on distance-matrix entries processed at once
_SCAN_ENTRIES = 4_000_000


@dataclass(frozen=True)
class WeightedSites:
    """Site positions (n, d) with multiplicative weights, min weight 1."""

    positions: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        pos = np.atleast_2d(np.asarray(self.positions, dtype=float))
        w = np.asarray(self.weights, dtype=float)
        if pos.ndim != 2 or len(pos) != len(w):
            raise ValueError("positions must be (n, d) matching weights")
        if np.any(w <= 0):
            raise ValueError("weights must be positive")
        if abs(w.min() - 1.0) > 1e-12:
            raise ValueError("minimum weight must be exactly 1 (use from_raw)")
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "weights", w)

    @classmethod
    def from_raw(cls, positions, raw_weights):
        """Normalize raw positive weights so the minimum is exactly 1."""
        w = np.asarray(raw_weights, dtype=float)
        if np.any(w <= 0):
            raise ValueError("weights must be positive")
        return cls(positions, w / w.min())

    @property
    def n(self):
        return len(self.weights)

    @property
    def d(self):
        return self.positions.shape[1]

    @cached_property
    def normalized_weights(self):
        """omega_i = w_i^(1/d); weighted distance is dist / omega_i."""
        return self.weights ** (1.0 / self.d)

    @cached_property
    def total(self):
        """Total weight W."""
        return float(math.fsum(self.weights))

    @property
    def unweighted(self):
        return bool(np.all(self.weights == 1.0))


def random_sites(n, g, seed_or_rng, weights=None):
    """Sites with uniform positions on the torus; weights default to 1."""
    rng = np.random.default_rng(seed_or_rng) if not isinstance(
        seed_or_rng, np.random.Generator) else seed_or_rng
    pos = rng.random((n, g.d))
    w = np.ones(n) if weights is None else np.asarray(weights, dtype=float)
    return WeightedSites.from_raw(pos, w)


def _pow_rows(a, e):
    if e == 1.0:
        return a
    if e == 0.5:
        return np.sqrt(a)
    if e == 2.0:
        return a * a
    return a**e


def weighted_score_matrix(points, sites, g):
    """(Q, n) matrix monotone in weighted distance: (sum |delta|^p) / w^(p/d).

    Avoids p-th roots; rankings and region keys are unchanged under the
    strictly increasing map x -> x^p.  Accumulates one dimension at a time
    with in-place updates to keep the memory traffic at (Q, n).
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    pos = sites.positions
    base = None
    scratch = None
    for j in range(sites.d):
        diff = np.abs(pts[:, j, None] - pos[None, :, j])
        if g.wrap:
            if scratch is None:
                scratch = np.empty_like(diff)
            np.subtract(1.0, diff, out=scratch)
            np.minimum(diff, scratch, out=diff)
        if g.is_max_norm:
            base = diff if base is None else np.maximum(base, diff, out=base)
        else:
            p = int(g.p_norm)
            if p == 2:
                np.multiply(diff, diff, out=diff)
            elif p != 1:
                np.power(diff, p, out=diff)
            base = diff if base is None else np.add(base, diff, out=base)
    if not sites.unweighted:
        if g.is_max_norm:
            denom = sites.normalized_weights
        else:
            denom = _pow_rows(sites.weights, int(g.p_norm) / sites.d)
        base /= denom
    return base


def rank_k_smallest(values, k):
    """Row-wise indices of the k smallest entries, ordered ascending with
    ties broken by smaller index.  ``values`` is (rows, n)."""
    rows, n = values.shape
    if k > n:
        raise ValueError(f"k = {k} exceeds number of items {n}")
    if k == n:
        order = np.argsort(values, axis=1, kind="stable")
        return order
    part = np.argpartition(values, k - 1, axis=1)[:, :k]
    part.sort(axis=1)
    pv = np.take_along_axis(values, part, axis=1)
    order = np.argsort(pv, axis=1, kind="stable")
    sel = np.take_along_axis(part, order, axis=1)
    # rows with a tie across the selection boundary need the exact rule
    kth = np.take_along_axis(values, sel[:, -1:], axis=1)
    ambiguous = np.flatnonzero((values <= kth).sum(axis=1) > k)
    for r in ambiguous:
        sel[r] = np.argsort(values[r], kind="stable")[:k]
    return sel


def k_nearest_sites(p, sites, k, g):
    """The k sites of smallest weighted distance to ``p``.

    Returns ``(key, ranked)``: the RegionKey (sorted tuple of site indices)
    and the indices ranked by increasing weighted distance, ties broken by
    smaller index.
    """
    if k > sites.n:
        raise ValueError(f"k = {k} exceeds site count {sites.n}")
    scores = weighted_score_matrix(np.asarray(p, dtype=float)[None, :], sites, g)
    ranked = rank_k_smallest(scores, k)[0]
    return tuple(sorted(int(i) for i in ranked)), ranked


@dataclass
class RegionCountResult:
    """Distinct region keys discovered by Monte Carlo sampling.

    ``count`` is a lower bound on the number of non-empty order-k regions.
    ``witnesses`` maps each key to the first sample point that discovered
    it (usable as a relevance-certificate seed).
    """

    count: int
    keys: set
    witnesses: dict
    samples: int
    seed: object
    method: str

    n: int = 0
    k: int = 0
    # distinct-key counts after the given sample prefixes (undersampling
    # diagnostic: a saturated run has count close to its half-budget count)
    counts_at: dict = field(default_factory=dict)


def _keys_via_scan(points, sites, k, g):
    out = np.empty((len(points), k), dtype=np.int64)
    step = max(1, _SCAN_ENTRIES // max(1, sites.n))
    for a in range(0, len(points), step):
        block = points[a:a + step]
        scores = weighted_score_matrix(block, sites, g)
        out[a:a + len(block)] = rank_k_smallest(scores, k)
    out.sort(axis=1)
    return out


def _keys_via_tree(tree, points, sites, k, g):
    p = np.inf if g.is_max_norm else int(g.p_norm)
    _, idx = tree.query(points, k=k, p=p)
    idx = idx.reshape(len(points), k).astype(np.int64)
    idx.sort(axis=1)
    return idx


def count_regions_monte_carlo(sites, k, samples, seed, g, method="auto",
                              checkpoints=()):
    """Count distinct RegionKeys among k-nearest queries at uniform points.

    Deterministic for a fixed seed, and the discovered key set is
    nondecreasing under prefix-extension of the sample stream.  The count
    is a lower bound on the true number of non-empty regions.
    ``checkpoints`` are sample prefixes at which the running count is
    recorded (see RegionCountResult.counts_at).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if k > sites.n:
        raise ValueError(f"k = {k} exceeds site count {sites.n}")
    if method == "auto":
        method = "tree" if sites.unweighted else "scan"
    tree = None
    if method == "tree":
        if not sites.unweighted:
            raise ValueError("tree method requires unweighted sites")
        tree = cKDTree(sites.positions, boxsize=1.0 if g.wrap else None)
    elif method != "scan":
        raise ValueError(f"unknown method {method!r}")

    marks = sorted(int(c) for c in checkpoints if 0 < c <= samples)
    rng = np.random.default_rng(seed)
    keys = set()
    witnesses = {}
    counts_at = {}
    done = 0
    while done < samples:
        block = min(_MC_BLOCK, samples - done)
        pts = rng.random((block, g.d))
        if method == "tree":
            rows = _keys_via_tree(tree, pts, sites, k, g)
        else:
            rows = _keys_via_scan(pts, sites, k, g)
        # split the block at any checkpoint so running counts are exact
        cuts = [mk - done for mk in marks if done < mk <= done + block]
        for lo, hi in zip([0] + cuts, cuts + [block]):
            if lo == hi:
                counts_at[done + hi] = len(keys)
                continue
            seg = rows[lo:hi]
            uniq, first = np.unique(seg, axis=0, return_index=True)
            # restore discovery order so witnesses are the earliest points
            for j in np.argsort(first):
                key = tuple(int(v) for v in uniq[j])
                if key not in keys:
                    keys.add(key)
                    witnesses[key] = pts[lo + first[j]].copy()
            if hi in cuts:
                counts_at[done + hi] = len(keys)
        done += block
    return RegionCountResult(
        count=len(keys), keys=keys, witnesses=witnesses,
        samples=samples, seed=seed, method=method, n=sites.n, k=k,
        counts_at=counts_at)


def compute_R_A(A, sites, g):
    """max over i in A of dist(s1, s_i) / (omega_1 + omega_i), where s1 is
    the minimum-weight site of A (ties by smaller index)."""
    idx = np.asarray(sorted(A), dtype=int)
    w = sites.weights[idx]
    s1 = int(idx[np.argmin(w)])
    om = sites.normalized_weights
    r = 0.0
    for i in idx:
        dist = torus_distance(sites.positions[s1], sites.positions[int(i)], g)
        r = max(r, dist / (om[s1] + om[int(i)]))
    return r


@dataclass(frozen=True)
class RelevanceCertificate:
    """A point and radius witnessing that a site set is relevant."""

    point: np.ndarray
    radius: float


def _relevant_at(p, r, s1, outside_pos, outside_omega, sites, g):
    if torus_distance(sites.positions[s1], p, g) > sites.normalized_weights[s1] * r:
        return False
    if len(outside_pos) == 0:
        return True
    dists = cross_distances(p[None, :], outside_pos, g)[0]
    return bool(np.all(dists > outside_omega * r))


def relevance_certificate(A, sites, g, grid_resolution=64, radius_steps=16,
                          seed_point=None):
    """Search for a (point, radius >= R_A) pair certifying that A is relevant.

    A is relevant if some point p and radius r >= R_A satisfy
    dist(s1, p) <= omega_1 r while every site outside A is strictly
    farther than omega_i r.  A returned certificate is sound (the
    conditions are recomputed exactly); ``None`` means UNKNOWN, not
    irrelevant.

    ``seed_point`` (e.g. the Monte Carlo sample point that discovered A's
    region) is tried first with the radius induced by the region
    membership; otherwise candidate points come from a regular grid
    around s1 with ``grid_resolution`` points per axis, for radii
    j * R_A, j = 1..radius_steps.
    """
    key = tuple(sorted(int(i) for i in A))
    if grid_resolution < 1:
        raise ValueError("grid_resolution must be >= 1")
    idx = np.asarray(key, dtype=int)
    w = sites.weights[idx]
    s1 = int(idx[np.argmin(w)])
    om = sites.normalized_weights
    outside = np.setdiff1d(np.arange(sites.n), idx)
    out_pos = sites.positions[outside]
    out_om = om[outside]
    R = compute_R_A(key, sites, g)

    if len(outside) == 0:
        return RelevanceCertificate(sites.positions[s1].copy(), R)

    if seed_point is not None:
        p0 = np.asarray(seed_point, dtype=float)
        member_d = np.array([torus_distance(sites.positions[int(i)], p0, g)
                             for i in idx])
        r0 = float((member_d / om[idx]).max())
        if r0 >= R and _relevant_at(p0, r0, s1, out_pos, out_om, sites, g):
            return RelevanceCertificate(p0, r0)

    if R == 0.0:
        if len(key) >= 2:
            raise ValueError("R_A = 0: coincident sites in A")
        # single site: any radius below half the nearest outsider works
        gap = cross_distances(sites.positions[s1][None, :], out_pos, g)[0] / out_om
        r0 = 0.5 * float(gap.min())
        if r0 > 0 and _relevant_at(sites.positions[s1], r0, s1, out_pos,
                                   out_om, sites, g):
            return RelevanceCertificate(sites.positions[s1].copy(), r0)
        return None

    s1_pos = sites.positions[s1]
    for j in range(1, radius_steps + 1):
        r = j * R
        extent = om[s1] * (j + 1) * R
        axis = np.linspace(-extent, extent, grid_resolution)
        grids = np.meshgrid(*([axis] * g.d), indexing="ij")
        cand = np.stack([c.ravel() for c in grids], axis=1) + s1_pos
        cand = np.mod(cand, 1.0) if g.wrap else np.clip(cand, 0.0, 1.0)
        d1 = cross_distances(cand, s1_pos[None, :], g)[:, 0]
        cand = cand[d1 <= om[s1] * r]
        if len(cand) == 0:
            continue
        step = max(1, _SCAN_ENTRIES // max(1, len(outside)))
        for a in range(0, len(cand), step):
            block = cand[a:a + step]
            dco = cross_distances(block, out_pos, g)
            good = np.all(dco > out_om[None, :] * r, axis=1)
            hit = np.flatnonzero(good)
            if len(hit):
                p = block[hit[0]]
                if _relevant_at(p, r, s1, out_pos, out_om, sites, g):
                    return RelevanceCertificate(p.copy(), float(r))
    return None


def generate_worst_case_sites(n, high_weight=None):
    """2D Euclidean configuration whose order-3 diagram grows superlinearly.

    Half the sites are high-weight and collinear on the left (a vertical
    micro-spread line), half are low-weight and collinear extending right.
    Every low site's region of influence is a small disk, vertically
    sliced into ~n/2 bands by which pair of high sites ranks second and
    third; the slices carry distinct order-3 keys, giving ~n^2/4 regions.

    The exact parameters are not dictated by the construction's source;
    they are tuned so the slicing covers every disk (validated by the
    superlinear growth probe in the test suite).
    """
    if n < 4 or n % 2:
        raise ValueError("n must be even and >= 4")
    h = n // 2
    sqrt_h_weight = 3.0 * n if high_weight is None else math.sqrt(high_weight)
    heavy_x = 0.18
    light_x0, light_x1 = 0.40, 0.62
    light_x = (np.linspace(light_x0, light_x1, h) if h > 1
               else np.array([light_x0]))
    # smallest disk of influence among the light sites
    rho_min = (light_x0 - heavy_x) / sqrt_h_weight
    span = 1.8 * rho_min
    heavy_y = 0.5 + (np.arange(h) - (h - 1) / 2.0) * (span / max(1, h - 1))

    pos = np.empty((n, 2))
    pos[:h, 0] = heavy_x
    pos[:h, 1] = heavy_y
    pos[h:, 0] = light_x
    pos[h:, 1] = 0.5
    weights = np.ones(n)
    weights[:h] = sqrt_h_weight**2
    return WeightedSites(pos, weights)
