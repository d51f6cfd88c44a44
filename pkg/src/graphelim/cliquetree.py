"""Multifrontal clique trees built from an elimination.

Each variable's elimination clique is {var} union its higher-ordered
neighbors in the filled graph. Consecutive variables amalgamate into one
supernode when the later variable's elimination clique equals the earlier
one's minus itself AND the later variable has exactly one child in the
elimination tree (strict / fundamental supernodes, no relaxed
amalgamation). The per-clique cost sum d_f(C) * (d_f(C) + d_s(C))^2 is
the clique-tree analogue of the per-variable elimination cost.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .elimination import simulate_elimination
from .graph import FactorGraph


@dataclass(frozen=True)
class Clique:
    """Frontal variables (in elimination order) plus their separator."""

    frontal: tuple[int, ...]
    separator: frozenset[int]
    frontal_dim: int
    separator_dim: int
    parent: int | None
    children: tuple[int, ...]


@dataclass(frozen=True)
class CliqueTree:
    cliques: tuple[Clique, ...]

    @property
    def roots(self) -> list[int]:
        return [i for i, c in enumerate(self.cliques) if c.parent is None]

    @property
    def root(self) -> Clique:
        roots = self.roots
        if len(roots) != 1:
            raise ValueError(f"expected a single root, found {len(roots)}")
        return self.cliques[roots[0]]

    def n_variables(self) -> int:
        return sum(len(c.frontal) for c in self.cliques)


def build_clique_tree(
    graph: FactorGraph, ordering: Sequence[int], amalgamate: bool = True
) -> CliqueTree:
    """Supernodal clique tree for `graph` eliminated under `ordering`.

    With ``amalgamate=False`` every variable keeps its own singleton
    clique, in which case the clique-tree cost degenerates to the
    per-variable elimination cost exactly.
    """
    trace = simulate_elimination(graph, ordering)
    n = graph.n_vars
    pos = {v: i for i, v in enumerate(ordering)}
    sep = {s.var_id: s.separator for s in trace.steps}
    dims = graph.dims

    # elimination-tree parent: earliest-eliminated separator variable
    etree_children = [0] * n
    for v in ordering:
        if sep[v]:
            parent = min(sep[v], key=pos.__getitem__)
            etree_children[parent] += 1

    # group consecutive positions into supernodes
    runs: list[list[int]] = []
    current = [ordering[0]]
    for i in range(1, n):
        u, w = ordering[i - 1], ordering[i]
        merged = (
            amalgamate
            and etree_children[w] == 1
            and sep[u] == frozenset({w}) | sep[w]
        )
        if merged:
            current.append(w)
        else:
            runs.append(current)
            current = [w]
    runs.append(current)

    clique_of_var = {}
    for ci, run in enumerate(runs):
        for v in run:
            clique_of_var[v] = ci

    parents: list[int | None] = []
    for run in runs:
        separator = sep[run[-1]]
        if separator:
            first_out = min(separator, key=pos.__getitem__)
            parents.append(clique_of_var[first_out])
        else:
            parents.append(None)

    children: list[list[int]] = [[] for _ in runs]
    for ci, p in enumerate(parents):
        if p is not None:
            children[p].append(ci)

    cliques = []
    for ci, run in enumerate(runs):
        separator = sep[run[-1]]
        cliques.append(
            Clique(
                frontal=tuple(run),
                separator=separator,
                frontal_dim=sum(dims[v] for v in run),
                separator_dim=sum(dims[v] for v in separator),
                parent=parents[ci],
                children=tuple(children[ci]),
            )
        )
    return CliqueTree(tuple(cliques))


def ec_of_clique_tree(tree: CliqueTree) -> int:
    """Per-clique elimination cost sum d_f (d_f + d_s)^2 over the tree."""
    return sum(
        c.frontal_dim * (c.frontal_dim + c.separator_dim) ** 2 for c in tree.cliques
    )


def format_clique_tree(tree: CliqueTree) -> str:
    """Indented dump, one clique per line `[frontals | separators]`.

    Children print below their parent, indented two spaces per depth;
    sibling order follows clique construction order (elimination order of
    the first frontal variable).
    """
    lines: list[str] = []

    def emit(ci: int, depth: int) -> None:
        c = tree.cliques[ci]
        front = " ".join(str(v) for v in c.frontal)
        sep = " ".join(str(v) for v in sorted(c.separator))
        lines.append("  " * depth + f"[{front} | {sep}]")
        for child in c.children:
            emit(child, depth + 1)

    for root in tree.roots:
        emit(root, 0)
    return "\n".join(lines) + ("\n" if lines else "")


def running_intersection_holds(tree: CliqueTree) -> bool:
    """Check that each variable's cliques form a connected subtree."""
    occupied: dict[int, list[int]] = {}
    for ci, c in enumerate(tree.cliques):
        for v in list(c.frontal) + list(c.separator):
            occupied.setdefault(v, []).append(ci)
    for cliques in occupied.values():
        members = set(cliques)
        # walk up from an arbitrary member; all others must reach the
        # highest member through members only
        top: set[int] = set()
        for ci in members:
            path = []
            cur: int | None = ci
            while cur is not None and cur in members:
                path.append(cur)
                cur = tree.cliques[cur].parent
            top.add(path[-1])
        if len(top) != 1:
            return False
    return True
