"""Numeric ground truth: a synthetic SPD system and a counting Cholesky.

The elimination-cost metrics are structural; this module provides the
independent numeric side. `synthesize_system` builds a random symmetric
positive-definite matrix whose scalar sparsity pattern is exactly the
graph's variable adjacency expanded to blocks, and `cholesky_count`
factorizes it while counting every scalar multiplication the algorithm
performs. Column scaling multiplies by the reciprocal of the pivot
square root, so one division is spent per pivot and everything else is a
multiplication; divisions are reported separately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import FactorGraph


class NotPositiveDefiniteError(ValueError):
    pass


@dataclass(frozen=True)
class SparseSystem:
    """Dense-stored sparse SPD system with block layout metadata."""

    values: np.ndarray  # (n, n) float64, zero off-pattern
    pattern: np.ndarray  # (n, n) bool
    var_dims: tuple[int, ...]
    var_offsets: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class CholeskyCount:
    mult_count: int
    div_count: int
    fill_count: int
    factor: np.ndarray  # upper-triangular R in permuted order
    scalar_order: np.ndarray  # permutation applied to the scalar system


def synthesize_system(graph: FactorGraph, seed: int = 0) -> SparseSystem:
    """Random SPD matrix on the graph's block sparsity pattern.

    Off-diagonal blocks exist exactly where variables are adjacent;
    diagonal blocks are dense. Strict diagonal dominance guarantees the
    Cholesky factorization exists without pivoting. Deterministic per
    seed.
    """
    if graph.n_vars == 0:
        raise ValueError("cannot synthesize a system for an empty graph")
    dims = graph.dims
    offsets = [0]
    for d in dims:
        offsets.append(offsets[-1] + d)
    n = offsets[-1]

    pattern = np.zeros((n, n), dtype=bool)
    for v in range(graph.n_vars):
        sl_v = slice(offsets[v], offsets[v + 1])
        pattern[sl_v, sl_v] = True
        for u in graph.neighbors(v):
            sl_u = slice(offsets[u], offsets[u + 1])
            pattern[sl_v, sl_u] = True

    rng = np.random.default_rng(seed)
    raw = rng.uniform(-1.0, 1.0, size=(n, n))
    values = np.where(pattern, (raw + raw.T) / 2.0, 0.0)
    np.fill_diagonal(values, 0.0)
    row_mass = np.abs(values).sum(axis=1)
    np.fill_diagonal(values, row_mass + 1.0)
    return SparseSystem(values, pattern, tuple(dims), tuple(offsets[:-1]))


def scalar_permutation(system: SparseSystem, ordering: Sequence[int]) -> np.ndarray:
    """Expand a block (variable) ordering to scalar indices.

    A scalar ordering (a permutation of all row indices) passes through
    unchanged.
    """
    n_vars = len(system.var_dims)
    order = list(ordering)
    if len(order) == n_vars and sorted(order) == list(range(n_vars)):
        out: list[int] = []
        for v in order:
            start = system.var_offsets[v]
            out.extend(range(start, start + system.var_dims[v]))
        return np.array(out, dtype=np.intp)
    if len(order) == system.n and sorted(order) == list(range(system.n)):
        return np.array(order, dtype=np.intp)
    raise ValueError("ordering is neither a block nor a scalar permutation")


def cholesky_count(system: SparseSystem, ordering: Sequence[int]) -> CholeskyCount:
    """Right-looking sparse Cholesky under `ordering`, counting every
    scalar multiplication and division actually executed.

    The update loop is driven by the structural pattern (including fill
    created along the way), never by numeric zeros, so counts are exact
    and reproducible. Raises NotPositiveDefiniteError naming the pivot if
    a nonpositive pivot appears.
    """
    perm = scalar_permutation(system, ordering)
    val = system.values[np.ix_(perm, perm)].copy()
    pat = system.pattern[np.ix_(perm, perm)].copy()
    n = system.n
    factor = np.zeros((n, n))
    mult = 0
    div = 0
    fill = 0
    for k in range(n):
        pivot = val[k, k]
        if pivot <= 0.0:
            raise NotPositiveDefiniteError(
                f"nonpositive pivot {pivot:.6g} at elimination index {k}"
            )
        root = math.sqrt(pivot)
        inv_root = 1.0 / root
        div += 1
        factor[k, k] = root
        idx = np.flatnonzero(pat[k, k + 1:]) + (k + 1)
        d = idx.size
        if d == 0:
            continue
        col = val[k, idx] * inv_root
        factor[k, idx] = col
        mult += d + d * (d + 1) // 2
        sub = pat[np.ix_(idx, idx)]
        fill += (d * d - int(sub.sum())) // 2
        pat[np.ix_(idx, idx)] = True
        val[np.ix_(idx, idx)] -= np.outer(col, col)
    return CholeskyCount(mult, div, fill, factor, perm)


def solve_with_factor(count: CholeskyCount, rhs: np.ndarray) -> np.ndarray:
    """Solve the original system given a counted factorization of it."""
    perm = count.scalar_order
    r = count.factor
    y = np.linalg.solve(r.T, rhs[perm])
    x_perm = np.linalg.solve(r, y)
    x = np.empty_like(x_perm)
    x[perm] = x_perm
    return x


def pearson_correlation(xs: Sequence[float], ys: Sequence[float]) -> float:
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("series must be one-dimensional and equally long")
    if x.size < 3:
        raise ValueError("need at least 3 points")
    xc = x - x.mean()
    yc = y - y.mean()
    sx = math.sqrt(float(xc @ xc))
    sy = math.sqrt(float(yc @ yc))
    if sx == 0.0 or sy == 0.0:
        raise ValueError("series has zero variance")
    return float(xc @ yc) / (sx * sy)


def system_to_coo_text(system: SparseSystem) -> str:
    """Coordinate text export: one `row col value` line per stored entry."""
    rows, cols = np.nonzero(system.pattern)
    lines = [
        f"{r} {c} {float(system.values[r, c])!r}"
        for r, c in zip(rows.tolist(), cols.tolist())
    ]
    return "\n".join(lines) + ("\n" if lines else "")
