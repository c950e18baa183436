"""Torus ground space, p-norm metrics, and the basic distance laws.

The ground space is the unit torus [0, 1)^d where opposite borders are
identified; per-coordinate differences are circular.  A hypercube mode
(plain differences) is available through ``GeometrySpec(wrap=False)`` and
reuses all code paths.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

INFINITY = math.inf


@dataclass(frozen=True)
class GeometrySpec:
    """Dimension and p-norm of the ground space.

    ``p_norm`` is a positive integer or ``INFINITY`` (exact max semantics,
    never a large-integer stand-in).  ``wrap=False`` switches from the
    torus to a unit hypercube with non-circular coordinate differences.
    """

    d: int
    p_norm: float = 2
    wrap: bool = True

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.d!r}")
        p = self.p_norm
        if p != INFINITY and (not float(p).is_integer() or p < 1):
            raise ValueError(
                f"p-norm must be a positive integer or INFINITY, got {p!r}"
            )

    @property
    def is_max_norm(self):
        return self.p_norm == INFINITY


def _check_point(x, g, name):
    x = np.asarray(x, dtype=float)
    if x.shape != (g.d,):
        raise ValueError(f"{name} has shape {x.shape}, expected ({g.d},)")
    return x


def coordinate_deltas(a, b, g):
    """Per-coordinate (circular) differences between broadcastable arrays."""
    diff = np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float))
    if g.wrap:
        diff = np.minimum(diff, 1.0 - diff)
    return diff


def torus_distance(a, b, g):
    """Distance between two points under the spec's p-norm."""
    a = _check_point(a, g, "a")
    b = _check_point(b, g, "b")
    diff = coordinate_deltas(a, b, g)
    if g.is_max_norm:
        return float(diff.max())
    p = int(g.p_norm)
    return float((diff**p).sum() ** (1.0 / p))


def cross_distances(points, others, g):
    """(Q, n) distance matrix between rows of ``points`` and ``others``.

    Callers are responsible for chunking ``points`` when Q * n is large.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    others = np.atleast_2d(np.asarray(others, dtype=float))
    if points.shape[1] != g.d or others.shape[1] != g.d:
        raise ValueError("point arrays must have d columns")
    diff = coordinate_deltas(points[:, None, :], others[None, :, :], g)
    if g.is_max_norm:
        return diff.max(axis=2)
    p = int(g.p_norm)
    return (diff**p).sum(axis=2) ** (1.0 / p)


def ball_volume_constant(g):
    """Volume of the unit-radius p-norm ball in d dimensions.

    (2 Gamma(1/p + 1))^d / Gamma(d/p + 1) for finite p; 2^d for the max
    norm.  Evaluated through log-gamma to stay exact to ~1e-12 relative.
    """
    if g.is_max_norm:
        return float(2.0**g.d)
    p = int(g.p_norm)
    log_vol = g.d * (math.log(2.0) + gammaln(1.0 / p + 1.0)) - gammaln(g.d / p + 1.0)
    return float(math.exp(log_vol))


def dist_cdf(x, g):
    """CDF of the distance between two uniformly random points.

    Exact for x <= 0.5; clamped at 1 beyond that (the exact boundary
    correction is intentionally not computed).
    """
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("distance must be nonnegative")
    vol = ball_volume_constant(g) * x**g.d
    out = np.where(x > 0.5, np.minimum(1.0, vol), vol)
    return float(out) if out.ndim == 0 else out


def weighted_distance(s_index, p, sites, g):
    """Distance from point ``p`` to site ``s_index`` divided by its
    normalized weight w^(1/d)."""
    n = len(sites.weights)
    if not 0 <= s_index < n:
        raise IndexError(f"site index {s_index} out of range [0, {n})")
    dist = torus_distance(sites.positions[s_index], p, g)
    return dist / float(sites.normalized_weights[s_index])


def connection_weight(c_pos, v_index, sites, T, g):
    """Sampling propensity (w_v / dist^d)^(1/T) of a variable for a clause.

    Only defined for T > 0; the threshold model (T = 0) never evaluates
    this quantity.  Coincident positions are an error rather than a silent
    infinity: generators draw continuous positions, so hitting this signals
    a seeding bug.
    """
    if T <= 0:
        raise ValueError("connection weight requires T > 0 (use the threshold path for T = 0)")
    n = len(sites.weights)
    if not 0 <= v_index < n:
        raise IndexError(f"variable index {v_index} out of range [0, {n})")
    dist = torus_distance(c_pos, sites.positions[v_index], g)
    if dist == 0.0:
        raise ValueError("coincident clause/variable positions (distance 0)")
    w = float(sites.weights[v_index])
    return (w / dist**g.d) ** (1.0 / T)


def connection_weight_threshold(w_v, T, g):
    """Smallest x for which the connection-weight CDF formula is valid."""
    return (2.0**g.d * w_v) ** (1.0 / T)


def connection_weight_cdf(x, w_v, T, g):
    """CDF of the connection weight: 1 - Pi_{d,p} w_v x^(-T).

    Valid only for x >= (2^d w_v)^(1/T); below that the closed form does
    not hold and a ValueError is raised.
    """
    if T <= 0:
        raise ValueError("connection weight CDF requires T > 0")
    x = np.asarray(x, dtype=float)
    lo = connection_weight_threshold(w_v, T, g)
    if np.any(x < lo * (1.0 - 1e-12)):
        raise ValueError(f"CDF formula invalid below x = {lo}")
    out = 1.0 - ball_volume_constant(g) * w_v * x ** (-T)
    return float(out) if out.ndim == 0 else out
