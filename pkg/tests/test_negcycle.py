import numpy as np
import pytest

from negsssp.conf import settings
from negsssp.errors import RetryBudgetExhausted
from negsssp.graph import DirectedGraph
from negsssp.negcycle import CycleWitness, _any_cycle, find_thresh, probe_repeats, solve
from negsssp.oracle import OracleStats
from negsssp.utils import INF
from negsssp.verify import bellman_ford

# enough EstDist rounds that every sp_main call inside is exact
QUICK = {"iters": 1, "h3": 8}

@pytest.fixture(autouse=True)
def single_probe():
    with settings.override(find_thresh_repeats=1):
        yield

def two_cycle():
    return DirectedGraph(2, [(0, 1, -3), (1, 0, 1)])

def planted():
    # 0 -> 1 -> 2 -> 0 weighs -3, vertices 3 and 4 hang off it
    return DirectedGraph(5, [(0, 1, 1), (1, 2, 1), (2, 0, -5), (3, 0, 2), (2, 4, 3)])

def shifted():
    return DirectedGraph(4, [(0, 1, -2), (1, 2, 3), (2, 3, -4), (0, 3, 1), (3, 1, 6)])

def test_probe_repeats():
    assert probe_repeats(8) == 1
    with settings.override(find_thresh_repeats=0):
        assert probe_repeats(8) == 14
        assert probe_repeats(1) == 5

def test_find_thresh_on_a_negative_cycle(rng):
    assert find_thresh(two_cycle(), 0, rng, OracleStats(), **QUICK) == 2

def test_find_thresh_without_negative_cycle(rng):
    assert find_thresh(shifted(), 0, rng, OracleStats(), **QUICK) == 0
    assert find_thresh(DirectedGraph(2, [(0, 1, 3)]), 0, rng, OracleStats()) == 0

def test_solve_returns_distances(rng):
    stats = OracleStats()
    answer = solve(shifted(), 0, rng, stats, **QUICK)
    assert answer == bellman_ford(shifted(), 0).distances == [0, -2, 1, -3]
    assert stats.per_tag["spmain"] >= 1

def test_solve_keeps_unreachable_vertices(rng):
    g = DirectedGraph(3, [(0, 1, -1), (2, 0, 4)])
    assert solve(g, 0, rng, OracleStats(), **QUICK) == [0, -1, INF]

def test_solve_finds_the_planted_cycle(rng):
    g = planted()
    stats = OracleStats()
    witness = solve(g, 3, rng, stats, **QUICK)
    assert isinstance(witness, CycleWitness)
    assert witness.verify(g)
    assert witness.total_weight == -3
    assert sorted(witness.edges) == [0, 1, 2]
    assert witness.to_json()["weight"] == -3
    assert stats.per_tag["negcycle"] >= 1

def test_solve_finds_a_self_loop(rng):
    g = DirectedGraph(3, [(0, 1, 2), (1, 1, -1), (1, 2, 0)])
    witness = solve(g, 0, rng, OracleStats(), **QUICK)
    assert witness.edges == [1]
    assert witness.vertices == [1, 1]

def test_solve_budget(rng):
    with pytest.raises(RetryBudgetExhausted) as caught:
        solve(planted(), 0, rng, OracleStats(), restarts=0)
    assert caught.value.diagnostics["restarts"] == 0
    assert caught.value.diagnostics["reasons"] == []

def test_witness_verification():
    g = planted()
    good = CycleWitness.from_edges(g, [2, 0, 1])
    assert good.vertices == [2, 0, 1, 2]
    assert good.verify(g)
    assert not CycleWitness([2, 0, 1, 2], [2, 0, 1], -4).verify(g)
    assert not CycleWitness([2, 0, 1, 0], [2, 0, 1], -3).verify(g)
    assert not CycleWitness([2, 0, 2], [2, 1], -4).verify(g)
    assert not CycleWitness([0], [], 0).verify(g)
    assert not CycleWitness.from_edges(g, [4]).verify(g)

def test_non_negative_cycle_is_not_a_witness():
    g = DirectedGraph(2, [(0, 1, 1), (1, 0, -1)])
    assert not CycleWitness.from_edges(g, [0, 1]).verify(g)

def test_any_cycle():
    assert _any_cycle(DirectedGraph(3, [(0, 1, 0), (1, 2, 0), (0, 2, 0)])) is None
    g = DirectedGraph(4, [(0, 1, 0), (1, 2, 0), (2, 3, 0), (3, 1, 0)])
    cycle = _any_cycle(g)
    assert sorted(cycle) == [1, 2, 3]
    assert CycleWitness.from_edges(g, cycle).vertices[0] == CycleWitness.from_edges(g, cycle).vertices[-1]

@pytest.mark.slow
def test_random_instances_against_bellman_ford():
    from negsssp.generate import erdos_renyi
    for seed in range(6):
        g = erdos_renyi(5, 0.4, -4, 6, seed=seed)
        answer = solve(g, 0, np.random.default_rng(seed), OracleStats(), iters=1, h3=8)
        reference = bellman_ford(g)
        if isinstance(answer, CycleWitness):
            assert reference.negative_cycle and answer.verify(g)
        else:
            assert not reference.negative_cycle
            assert answer == bellman_ford(g, 0).distances
