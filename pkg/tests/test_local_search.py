"""Iterated local search: moves, invariants, determinism, quality."""

from helpers import path_graph, random_graph
from mwis import LsState, WeightedGraph, brute_force_mwis, ils_run
from mwis.solution import verify_independent_set


def test_edgeless_graph_takes_everything():
    g = WeightedGraph([4, 1, 9])
    res = ils_run(g, iterations=5)
    assert res.solution.vertices == (0, 1, 2)
    assert res.solution.weight == 14


def test_single_edge_picks_heavy_end():
    g = WeightedGraph([5, 1], [(0, 1)])
    res = ils_run(g, iterations=5, seed=99)
    assert res.solution.vertices == (0,) and res.solution.weight == 5


def test_omega_swap_inserts_heavier_vertex():
    # vertex 0 (w9) against two solution neighbors weighing 3+4
    g = WeightedGraph([9, 3, 4], [(0, 1), (0, 2)])
    st = LsState(g)
    assert st.omega_one_swap(1)  # plain insertion; re-maximization adds 2
    assert st.current_vertices() == (1, 2)
    assert st.omega_one_swap(0)
    assert st.current_vertices() == (0,) and st.current_weight == 9


def test_omega_swap_requires_strict_improvement():
    g = WeightedGraph([7, 3, 4], [(0, 1), (0, 2)])
    st = LsState(g)
    st.omega_one_swap(1)
    st.omega_one_swap(2)
    assert not st.omega_one_swap(0)  # 7 == 3+4, plateau move refused
    assert st.current_vertices() == (1, 2)


def test_omega_swap_plain_insert_without_neighbors():
    g = WeightedGraph([2, 2], [])
    st = LsState(g)
    assert st.omega_one_swap(0)
    # greedy re-maximization already pulled in the free vertex 1
    assert st.current_vertices() == (0, 1)


def test_one_two_swap_basic():
    g = WeightedGraph([3, 2, 2], [(0, 1), (0, 2)])
    st = LsState(g)
    st.omega_one_swap(0)
    assert st.current_vertices() == (0,)
    assert st.weighted_one_two_swap(0)
    assert st.current_vertices() == (1, 2) and st.current_weight == 4


def test_one_two_swap_rejects_adjacent_pair():
    g = WeightedGraph([3, 2, 2], [(0, 1), (0, 2), (1, 2)])
    st = LsState(g)
    st.omega_one_swap(0)
    assert not st.weighted_one_two_swap(0)


def test_one_two_swap_picks_best_pair():
    # center 0 (w5); pairs: (1,2)=4+4=8 adjacent, (1,3)=4+3=7, (2,4)=4+2=6...
    g = WeightedGraph([5, 4, 4, 3, 2, 9],
                      [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (5, 4)])
    st = LsState(g)
    # force exactly {0, 5} into the solution
    st.omega_one_swap(5)
    st.omega_one_swap(0)
    assert set(st.current_vertices()) == {0, 5}
    assert st.weighted_one_two_swap(0)
    # best feasible pair among {1,2,3}: (1,3) with weight 7 (1-2 is an edge)
    assert set(st.current_vertices()) == {1, 3, 5}


def test_intermediate_states_stay_independent():
    for seed in range(10):
        g = random_graph(seed, 14, 0.3)
        st = LsState(g, seed=seed)
        best_seen = 0
        for _ in range(5):
            st.run_rounds(10)
            verify_independent_set(g, st.current_vertices())
            verify_independent_set(g, st.best_vertices())
            # at round boundaries the best tracks the current solution and
            # never decays
            assert st.best_weight >= st.current_weight
            assert st.best_weight >= best_seen
            best_seen = st.best_weight
        assert sum(g.weight(v) for v in st.best_vertices()) == st.best_weight


def test_deterministic_given_seed_and_budget():
    g = random_graph(3, 20, 0.25)
    a = ils_run(g, iterations=400, seed=11)
    b = ils_run(g, iterations=400, seed=11)
    assert a.solution == b.solution
    c = ils_run(g, iterations=400, seed=12)
    assert c.solution.weight <= brute_force_mwis(g).weight


def test_chunking_does_not_change_the_trajectory():
    g = random_graph(4, 16, 0.3)
    st1 = LsState(g, seed=5)
    st1.run_rounds(100)
    st2 = LsState(g, seed=5)
    for _ in range(10):
        st2.run_rounds(10)
    assert st1.best_weight == st2.best_weight
    assert st1.best_vertices() == st2.best_vertices()


def test_quality_on_small_random_graphs():
    hits = 0
    for seed in range(100):
        g = random_graph(1000 + seed, 14, 0.3)
        want = brute_force_mwis(g).weight
        res = ils_run(g, iterations=10_000, seed=seed)
        assert res.solution.weight <= want
        hits += res.solution.weight == want
    assert hits >= 95


def test_convergence_entries_strictly_increase():
    g = random_graph(9, 30, 0.2)
    res = ils_run(g, iterations=500, seed=2)
    weights = [w for _, w in res.convergence]
    times = [t for t, _ in res.convergence]
    assert weights == sorted(set(weights))
    assert times == sorted(times)
    assert res.solution.weight == weights[-1]


def test_path_counterexample_needs_perturbation():
    # greedy descent alone plateaus at {5}; perturbation must find 2+2=4? no:
    # the optimum of 2-5-2 is 5, so ILS must simply hold it
    g = path_graph([2, 5, 2])
    res = ils_run(g, iterations=200, seed=0)
    assert res.solution.weight == 5
