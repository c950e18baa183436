"""Sequential weighted sampling without replacement.

A Fenwick (binary indexed) tree over the weights supports logarithmic-time
draws and weight updates, so drawing k items and restoring the removed
weights costs O(k log n) per clause.
"""

import numpy as np


class SumTree:
    """Fenwick-backed prefix-sum structure over nonnegative weights."""

    def __init__(self, weights):
        w = np.asarray(weights, dtype=float)
        if w.ndim != 1:
            raise ValueError("weights must be 1-d")
        if np.any(w < 0):
            raise ValueError("weights must be nonnegative")
        self.size = len(w)
        self._weights = w.copy()
        # tree[i] holds the sum over the Fenwick range ending at i (1-based)
        tree = np.zeros(self.size + 1)
        tree[1:] = w
        for i in range(1, self.size + 1):
            parent = i + (i & -i)
            if parent <= self.size:
                tree[parent] += tree[i]
        self._tree = tree
        self._highbit = 1 << max(0, self.size.bit_length() - 1)

    @property
    def total(self):
        return self.prefix_sum(self.size)

    def weight(self, i):
        return self._weights[i]

    def prefix_sum(self, i):
        """Sum of weights[0:i]."""
        s = 0.0
        while i > 0:
            s += self._tree[i]
            i -= i & -i
        return s

    def update(self, i, value):
        """Set weights[i] = value (0-based index)."""
        if value < 0:
            raise ValueError("weights must be nonnegative")
        delta = value - self._weights[i]
        self._weights[i] = value
        j = i + 1
        while j <= self.size:
            self._tree[j] += delta
            j += j & -j

    def draw_index(self, u):
        """Index of the first item whose cumulative weight exceeds u * total.

        ``u`` must lie in [0, 1); zero-weight items are never returned.
        """
        target = u * self.total
        pos = 0
        bit = self._highbit
        while bit > 0:
            nxt = pos + bit
            if nxt <= self.size and self._tree[nxt] <= target:
                target -= self._tree[nxt]
                pos = nxt
            bit >>= 1
        # pos counts the leaves passed, so it is the 0-based result index;
        # floating-point edges can land on a zero-weight leaf, skip forward
        while pos < self.size and self._weights[pos] == 0.0:
            pos += 1
        if pos >= self.size:
            pos = int(np.flatnonzero(self._weights > 0)[-1])
        return pos


def weighted_draw_without_replacement(weights, k, rng):
    """Draw k distinct indices sequentially, each proportional to the
    current weight among the undrawn items; returns them in draw order."""
    tree = SumTree(weights)
    if int((tree._weights > 0).sum()) < k:
        raise ValueError(f"need at least {k} positive-weight items")
    u = rng.random(k)
    out = draw_k_from_tree(tree, u)
    for i in out:
        tree.update(i, weights[i])
    return out


def draw_k_from_tree(tree, uniforms):
    """Draw len(uniforms) items from ``tree``, zeroing each drawn weight.

    Caller restores the weights afterwards; this split lets one tree serve
    many clauses.
    """
    out = []
    for u in uniforms:
        i = tree.draw_index(u)
        out.append(i)
        tree.update(i, 0.0)
    return out
