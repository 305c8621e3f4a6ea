from hypothesis import given

from negsssp.graph import DirectedGraph, EdgeSet
from negsssp.scc import SccLabelling
from negsssp.utils import INF
from negsssp.verify import (all_pairs, bellman_ford, check_distances, check_labelling, classical_scc,
                            eta_profile, weak_diameter_violations)

from .strategies import cycle_free_graphs, graphs

@given(cycle_free_graphs())
def test_bellman_ford_agrees_with_floyd_warshall(g):
    D = all_pairs(g)
    for s in range(g.n):
        assert bellman_ford(g, s).distances == D[s]

@given(graphs())
def test_witness_is_a_negative_cycle(g):
    ref = bellman_ford(g)
    if ref.negative_cycle:
        edges = ref.witness_edges
        assert edges and g.cycle_weight(edges) < 0
        for a, b in zip(edges, edges[1:] + edges[:1]):
            assert g.heads[a] == g.tails[b]
        assert ref.witness[0] == ref.witness[-1]

def test_dummy_source_distances():
    g = DirectedGraph(3, [(0, 1, -2), (1, 2, -1)])
    assert bellman_ford(g).distances == [0, -2, -3]
    assert bellman_ford(g, 2).distances == [INF, INF, 0]

def test_check_distances():
    g = DirectedGraph(4, [(0, 1, 2), (1, 2, -1), (0, 2, 3)])
    assert check_distances(g, 0, [0, 2, 1, INF])
    assert not check_distances(g, 0, [0, 2, 2, INF])
    assert not check_distances(g, 0, [0, 2, 0, INF])
    assert not check_distances(g, 0, [0, 2, 1, 5])
    assert not check_distances(g, 0, [1, 2, 1, INF])
    assert not check_distances(g, 0, [0, 2, 1])

def test_eta_profile():
    g = DirectedGraph(4, [(0, 1, -1), (1, 2, -1), (0, 2, 5), (2, 3, 4)])
    ref = eta_profile(g, 0)
    assert ref.distances == [0, -1, -2, 2]
    assert ref.eta == [0, 1, 2, 2]
    assert ref.eta_max == 2
    assert eta_profile(DirectedGraph(2, [(0, 1, -1), (1, 0, 0)])).negative_cycle

def test_eta_prefers_fewer_negative_edges():
    # two shortest paths to 2, one with a single negative edge
    g = DirectedGraph(3, [(0, 1, -1), (1, 2, -1), (0, 2, -2)])
    assert eta_profile(g, 0).eta == [0, 1, 1]

def test_classical_scc_order():
    g = DirectedGraph(5, [(0, 1, 0), (1, 0, 0), (1, 2, 0), (3, 2, 0), (2, 4, 0), (4, 2, 0)])
    ref = classical_scc(g)
    assert sorted(ref.components) == [[0, 1], [2, 4], [3]]
    assert ref.membership[0] == ref.membership[1]
    assert ref.membership[2] > ref.membership[0]
    assert ref.membership[2] > ref.membership[3]

def test_check_labelling():
    g = DirectedGraph(3, [(0, 1, 0), (1, 0, 0), (1, 2, 0)])
    assert check_labelling(g, SccLabelling([5, 5, 2]))
    assert not check_labelling(g, SccLabelling([2, 2, 5]))
    assert not check_labelling(g, SccLabelling([5, 4, 2]))
    assert not check_labelling(DirectedGraph(2), [1, 1])

def test_weak_diameter():
    g = DirectedGraph(3, [(0, 1, 5), (1, 0, 5), (1, 2, 1)])
    assert weak_diameter_violations(g, EdgeSet.empty(3), 5) == []
    assert sorted(weak_diameter_violations(g, EdgeSet.empty(3), 4)) == [(0, 1), (1, 0)]
    assert weak_diameter_violations(g, EdgeSet.from_ids(3, [1]), 1) == []
    assert len(weak_diameter_violations(g, EdgeSet.empty(3), 4, limit=1)) == 1
