"""Node elimination with fill tracking, elimination cost, and orderings.

Eliminating a variable removes it from the elimination graph and connects
all of its remaining neighbors into a clique; edges created this way are
*fill*. The elimination cost of a full ordering is

    sum_i  d_f(i) * (d_f(i) + d_s(i))^2

where d_f(i) is the scalar dimension of the variable eliminated at step i
and d_s(i) the summed scalar dimension of its neighbors (the separator)
in the elimination graph at that step. This is an ordering-dependent,
values-independent proxy for the FLOPs of the matching sparse
factorization.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from .graph import FactorGraph, Kind, ParseError

BRUTE_FORCE_LIMIT = 10


@dataclass(frozen=True)
class Step:
    """One elimination step: who was eliminated, against which separator."""

    var_id: int
    frontal_dim: int
    separator_dim: int
    separator: frozenset[int]
    fill_added: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class EliminationTrace:
    steps: tuple[Step, ...]

    def total_fill_edges(self) -> int:
        return sum(len(s.fill_added) for s in self.steps)

    def fill_edges(self) -> set[tuple[int, int]]:
        out: set[tuple[int, int]] = set()
        for s in self.steps:
            out.update(s.fill_added)
        return out


def _check_ordering(graph: FactorGraph, ordering: Sequence[int]) -> None:
    if len(ordering) != graph.n_vars or set(ordering) != set(range(graph.n_vars)):
        raise ValueError(
            f"ordering is not a permutation of the {graph.n_vars} variable ids"
        )


def simulate_elimination(
    graph: FactorGraph, ordering: Sequence[int]
) -> EliminationTrace:
    """Run node elimination under `ordering`, recording separators and fill."""
    _check_ordering(graph, ordering)
    adj = graph.adjacency()
    dims = graph.dims
    steps: list[Step] = []
    for v in ordering:
        nbrs = sorted(adj[v])
        d_s = sum(dims[u] for u in nbrs)
        fill: list[tuple[int, int]] = []
        for i, u in enumerate(nbrs):
            au = adj[u]
            for w in nbrs[i + 1:]:
                if w not in au:
                    au.add(w)
                    adj[w].add(u)
                    fill.append((u, w))
        for u in nbrs:
            adj[u].discard(v)
        adj[v].clear()
        steps.append(
            Step(v, dims[v], d_s, frozenset(nbrs), tuple(fill))
        )
    return EliminationTrace(tuple(steps))


def elimination_complexity(graph: FactorGraph, ordering: Sequence[int]) -> int:
    """Total elimination cost sum d_f * (d_f + d_s)^2 under `ordering`."""
    trace = simulate_elimination(graph, ordering)
    return sum(
        s.frontal_dim * (s.frontal_dim + s.separator_dim) ** 2 for s in trace.steps
    )


def scalar_mult_count(graph: FactorGraph, ordering: Sequence[int]) -> int:
    """Exact multiplication count of scalar sparse Cholesky, (1/2) sum d(d+3).

    Only defined for all-scalar graphs (every variable dim 1); d is the
    degree of each eliminated node in its elimination graph. The final
    node has degree zero and contributes nothing.
    """
    if any(d != 1 for d in graph.dims):
        raise ValueError("scalar_mult_count requires all variables to have dim 1")
    trace = simulate_elimination(graph, ordering)
    total = sum(s.separator_dim * (s.separator_dim + 3) for s in trace.steps)
    return total // 2


def min_degree_ordering(graph: FactorGraph) -> list[int]:
    """Greedy minimum-degree ordering, block-aware.

    Degree is the summed scalar dimension of current elimination-graph
    neighbors. Ties break landmark-before-pose (a landmark's elimination
    cost can only stay put while an equal-degree pose defers it), then to
    the lowest variable id; the result is deterministic.
    """
    n = graph.n_vars
    if n == 0:
        raise ValueError("min_degree_ordering requires a nonempty graph")
    adj = graph.adjacency()
    dims = graph.dims
    kind_rank = [0 if v.kind is Kind.LANDMARK else 1 for v in graph.variables]
    deg = [sum(dims[u] for u in adj[v]) for v in range(n)]
    alive = set(range(n))
    order: list[int] = []
    while alive:
        v = min(alive, key=lambda u: (deg[u], kind_rank[u], u))
        nbrs = sorted(adj[v])
        for i, u in enumerate(nbrs):
            au = adj[u]
            for w in nbrs[i + 1:]:
                if w not in au:
                    au.add(w)
                    adj[w].add(u)
                    deg[u] += dims[w]
                    deg[w] += dims[u]
        for u in nbrs:
            adj[u].discard(v)
            deg[u] -= dims[v]
        adj[v].clear()
        alive.remove(v)
        order.append(v)
    return order


def landmark_first_ordering(graph: FactorGraph) -> list[int]:
    """All landmarks (ascending id), then all poses (ascending id)."""
    return graph.ids_of_kind(Kind.LANDMARK) + graph.ids_of_kind(Kind.POSE)


def natural_ordering(graph: FactorGraph) -> list[int]:
    """Insertion (id) order."""
    return list(range(graph.n_vars))


def optimal_ordering_bruteforce(graph: FactorGraph) -> tuple[list[int], int]:
    """Exhaustively minimize elimination cost over every permutation.

    Only feasible for tiny graphs; guarded at 10 variables. Returns the
    first minimizer in lexicographic permutation order together with its
    cost. Uses a bitmask elimination kernel to keep the n! loop tolerable.
    """
    n = graph.n_vars
    if n == 0:
        raise ValueError("graph is empty")
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"brute force limited to {BRUTE_FORCE_LIMIT} variables, got {n}"
        )
    dims = graph.dims
    base_adj = [0] * n
    for v, nbrs in enumerate(graph.adjacency()):
        for u in nbrs:
            base_adj[v] |= 1 << u
    # summed scalar dimension for every subset of variables
    dimsum = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        dimsum[mask] = dimsum[mask & (mask - 1)] + dims[low]

    best_ec: int | None = None
    best_perm: tuple[int, ...] | None = None
    full = (1 << n) - 1
    for perm in itertools.permutations(range(n)):
        adj = list(base_adj)
        alive = full
        ec = 0
        for v in perm:
            nb = adj[v] & alive & ~(1 << v)
            ec += dims[v] * (dims[v] + dimsum[nb]) ** 2
            if best_ec is not None and ec >= best_ec:
                break
            alive &= ~(1 << v)
            m = nb
            while m:
                u = (m & -m).bit_length() - 1
                adj[u] |= nb
                m &= m - 1
        else:
            if best_ec is None or ec < best_ec:
                best_ec = ec
                best_perm = perm
    assert best_perm is not None and best_ec is not None
    return list(best_perm), best_ec


ORDERING_FUNCTIONS: dict[str, Callable[[FactorGraph], list[int]]] = {
    "min_degree": min_degree_ordering,
    "landmark_first": landmark_first_ordering,
    "natural": natural_ordering,
}


# -- file exports ----------------------------------------------------------


def save_ordering(ordering: Sequence[int], path: str | Path) -> None:
    Path(path).write_text(
        "".join(f"{v}\n" for v in ordering), encoding="utf-8", newline="\n"
    )


def load_ordering(path: str | Path) -> list[int]:
    path = Path(path)
    out: list[int] = []
    for line_no, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            out.append(int(line))
        except ValueError:
            raise ParseError(str(path), line_no, f"expected integer, got {line!r}")
    return out


def trace_to_csv(trace: EliminationTrace) -> str:
    lines = ["step,var_id,d_f,d_s,fill_added"]
    for i, s in enumerate(trace.steps):
        lines.append(
            f"{i},{s.var_id},{s.frontal_dim},{s.separator_dim},{len(s.fill_added)}"
        )
    return "\n".join(lines) + "\n"
