import random

import pytest

from graphelim.elimination import (
    elimination_complexity,
    landmark_first_ordering,
    load_ordering,
    min_degree_ordering,
    natural_ordering,
    optimal_ordering_bruteforce,
    save_ordering,
    scalar_mult_count,
    simulate_elimination,
    trace_to_csv,
)
from graphelim.graph import FactorGraph, Kind
from graphelim.simulate import worst_case_graph

from helpers import (
    complete_graph,
    leaf_first_ordering,
    path_graph,
    random_block_graph,
    random_ordering,
    random_scalar_graph,
    random_tree_graph,
    scalar_graph,
)


# -- simulate_elimination ----------------------------------------------------


def test_path_middle_first_induces_fill():
    g = path_graph(3)
    trace = simulate_elimination(g, [1, 0, 2])
    assert trace.steps[0].fill_added == ((0, 2),)
    assert [s.separator_dim for s in trace.steps] == [2, 1, 0]


def test_path_leaf_first_is_fill_free():
    g = path_graph(3)
    trace = simulate_elimination(g, [0, 1, 2])
    assert trace.total_fill_edges() == 0


def test_worst_case_2x2_landmark_first_trace():
    g = worst_case_graph(2, 2, 1, 1)
    trace = simulate_elimination(g, [2, 3, 0, 1])
    assert [s.separator_dim for s in trace.steps] == [2, 2, 1, 0]
    # the pose-pose edge already exists, so landmark elimination fills nothing
    assert trace.total_fill_edges() == 0


def test_rejects_non_permutation():
    g = path_graph(3)
    with pytest.raises(ValueError):
        simulate_elimination(g, [0, 1])
    with pytest.raises(ValueError):
        simulate_elimination(g, [0, 1, 1])


def test_trace_invariants_random():
    rng = random.Random(11)
    for _ in range(50):
        g = random_block_graph(rng, connected=False)
        order = random_ordering(rng, g.n_vars)
        trace = simulate_elimination(g, order)
        eliminated = set()
        seen_edges = {frozenset((u, v)) for u in range(g.n_vars) for v in g.neighbors(u)}
        for step in trace.steps:
            assert not (step.separator & eliminated)
            assert step.separator_dim == sum(g.dims[u] for u in step.separator)
            for u, v in step.fill_added:
                assert u not in eliminated and v not in eliminated
                assert frozenset((u, v)) not in seen_edges
                seen_edges.add(frozenset((u, v)))
            eliminated.add(step.var_id)


# -- elimination_complexity ----------------------------------------------------


def test_single_variable_cost_is_dim_cubed():
    g = FactorGraph()
    g.add_variable(Kind.POSE, 3)
    assert elimination_complexity(g, [0]) == 27


def test_scalar_path_cost():
    assert elimination_complexity(path_graph(3), [0, 1, 2]) == 9
    assert elimination_complexity(path_graph(3), [1, 0, 2]) == 14


def test_complete_graph_cost_closed_form():
    for n in (2, 3, 4, 6):
        g = complete_graph(n)
        expect = n * (n + 1) * (2 * n + 1) // 6
        for order in ([*range(n)], [*reversed(range(n))]):
            assert elimination_complexity(g, order) == expect


def test_scalar_cost_identity_with_mult_count():
    # exact bookkeeping on scalar graphs: cost = 2*mults + n - (edges + fill)
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randint(2, 30)
        g = random_scalar_graph(rng, n, rng.uniform(0.05, 0.6))
        order = random_ordering(rng, n)
        trace = simulate_elimination(g, order)
        ec = elimination_complexity(g, order)
        smc = scalar_mult_count(g, order)
        assert ec == 2 * smc + n - (g.edge_count() + trace.total_fill_edges())
        assert ec > smc


def test_lemma_edge_addition_never_decreases_cost_small():
    rng = random.Random(21)
    for _ in range(100):
        n = rng.randint(2, 15)
        g = random_scalar_graph(rng, n, rng.uniform(0.0, 0.5))
        order = random_ordering(rng, n)
        u = rng.randrange(n)
        v = (u + rng.randrange(1, n)) % n
        g_plus = FactorGraph()
        for var in g.variables:
            g_plus.add_variable(var.kind, var.dim)
        for f in g.factors:
            g_plus.add_factor(f.vars)
        g_plus.add_factor((u, v))
        assert elimination_complexity(g, order) <= elimination_complexity(g_plus, order)


def test_tree_leaf_first_fill_free():
    rng = random.Random(3)
    for _ in range(50):
        g = random_tree_graph(rng, rng.randint(2, 40))
        order = leaf_first_ordering(g)
        assert simulate_elimination(g, order).total_fill_edges() == 0


# -- scalar_mult_count ---------------------------------------------------------


def test_mult_count_examples():
    assert scalar_mult_count(path_graph(3), [0, 1, 2]) == 4
    assert scalar_mult_count(complete_graph(3), [0, 1, 2]) == 7
    assert scalar_mult_count(scalar_graph(1, []), [0]) == 0


def test_mult_count_rejects_blocks():
    g = FactorGraph()
    g.add_variable(Kind.POSE, 2)
    with pytest.raises(ValueError):
        scalar_mult_count(g, [0])


# -- orderings -------------------------------------------------------------


def test_min_degree_eliminates_landmarks_first_on_worst_case():
    g = worst_case_graph(3, 4, 1, 1)
    order = min_degree_ordering(g)
    assert all(v >= 3 for v in order[:4])


def test_min_degree_star_leaves_first():
    g = FactorGraph()
    for _ in range(4):
        g.add_variable(Kind.POSE, 1)
    for leaf in (0, 1, 2):
        g.add_factor((leaf, 3))
    assert min_degree_ordering(g) == [0, 1, 2, 3]


def test_min_degree_tie_breaks_to_lowest_id():
    assert min_degree_ordering(complete_graph(3)) == [0, 1, 2]


def test_min_degree_requires_nonempty():
    with pytest.raises(ValueError):
        min_degree_ordering(FactorGraph())


def test_landmark_first_ordering():
    g = worst_case_graph(2, 2)
    assert landmark_first_ordering(g) == [2, 3, 0, 1]
    poses_only = path_graph(4)
    assert landmark_first_ordering(poses_only) == [0, 1, 2, 3]
    lms = FactorGraph()
    for _ in range(3):
        lms.add_variable(Kind.LANDMARK, 3)
    assert landmark_first_ordering(lms) == [0, 1, 2]
    assert natural_ordering(g) == [0, 1, 2, 3]


# -- brute force -------------------------------------------------------------


def test_bruteforce_path():
    order, ec = optimal_ordering_bruteforce(path_graph(3))
    assert ec == 9
    assert elimination_complexity(path_graph(3), order) == 9


def test_bruteforce_complete_graph():
    _, ec = optimal_ordering_bruteforce(complete_graph(3))
    assert ec == 14


def test_bruteforce_matches_landmark_first_on_worst_case_2x2():
    g = worst_case_graph(2, 2, 1, 1)
    _, ec = optimal_ordering_bruteforce(g)
    assert ec == elimination_complexity(g, landmark_first_ordering(g))


def test_bruteforce_guard():
    with pytest.raises(ValueError):
        optimal_ordering_bruteforce(complete_graph(11))


def test_bruteforce_dominates_heuristics_and_isomorphism_invariant():
    rng = random.Random(77)
    for _ in range(25):
        n = rng.randint(2, 6)
        g = random_block_graph(rng, n_min=n, n_max=n, dims=(1, 2, 3), connected=False)
        order, best = optimal_ordering_bruteforce(g)
        assert elimination_complexity(g, order) == best
        assert best <= elimination_complexity(g, min_degree_ordering(g))
        assert best <= elimination_complexity(g, landmark_first_ordering(g))
        assert best <= elimination_complexity(g, natural_ordering(g))
        # relabel and re-minimize: optimum is invariant under isomorphism
        perm = random_ordering(rng, n)
        inverse = [0] * n
        for old, new in enumerate(perm):
            inverse[new] = old
        relabeled = FactorGraph()
        for new_id in range(n):
            old = inverse[new_id]
            relabeled.add_variable(g.variables[old].kind, g.variables[old].dim)
        for f in g.factors:
            relabeled.add_factor(tuple(perm[v] for v in f.vars))
        _, best_relabeled = optimal_ordering_bruteforce(relabeled)
        assert best_relabeled == best


# -- file exports --------------------------------------------------------------


def test_ordering_roundtrip(tmp_path):
    path = tmp_path / "ordering.txt"
    save_ordering([2, 0, 1], path)
    assert load_ordering(path) == [2, 0, 1]


def test_trace_csv_shape():
    g = path_graph(3)
    csv_text = trace_to_csv(simulate_elimination(g, [1, 0, 2]))
    lines = csv_text.strip().splitlines()
    assert lines[0] == "step,var_id,d_f,d_s,fill_added"
    assert lines[1] == "0,1,1,2,1"
