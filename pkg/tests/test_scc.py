import numpy as np
import pytest

from hypothesis import given
from hypothesis import strategies as st

from negsssp.conf import settings
from negsssp.errors import RecursionDepthExceeded
from negsssp.graph import DirectedGraph
from negsssp.generate import dag_of_cliques, erdos_renyi
from negsssp.oracle import OracleStats
from negsssp.scc import SccLabelling, depth_limit, scc_topsort
from negsssp.utils import ceil_log2
from negsssp.verify import check_labelling, classical_scc

from .strategies import graphs

@given(graphs(max_n=10, max_m=25), st.integers(0, 2**32))
def test_labels_match_classical_scc(g, seed):
    stats = OracleStats()
    labels = scc_topsort(g, np.random.default_rng(seed), stats)
    assert len(labels) == g.n
    assert check_labelling(g, labels)
    assert labels.violations(g) == []
    assert all(0 <= r < max(g.n, 1) ** 3 for r in labels)
    assert stats.per_tag["scc"] == stats.calls
    assert stats.max_depth["scc"] <= depth_limit(g.n)

def test_path_labels_decrease(rng):
    g = DirectedGraph(4, [(0, 1, -3), (1, 2, 5), (2, 3, 0)])
    labels = scc_topsort(g, rng, OracleStats())
    assert labels[0] > labels[1] > labels[2] > labels[3]

def test_cycle_gets_one_label(rng):
    g = DirectedGraph(5, [(v, (v + 1) % 5, -1) for v in range(5)])
    labels = scc_topsort(g, rng, OracleStats())
    assert len(set(labels)) == 1
    assert labels.components() == [[0, 1, 2, 3, 4]]

def test_blocks_become_components(rng):
    g = dag_of_cliques([3, 2, 4], 0.5, 5, seed=3)
    labels = scc_topsort(g, rng, OracleStats())
    assert check_labelling(g, labels)
    assert sorted(labels.components()) == sorted(classical_scc(g).components)
    assert sorted(len(c) for c in labels.components()) == [2, 3, 4]
    assert labels.condensation_edges(g) <= 3

def test_condensation_edges():
    g = DirectedGraph(4, [(0, 1, 0), (1, 0, 0), (1, 2, 0), (0, 2, 0), (2, 3, 0)])
    labels = SccLabelling([9, 9, 4, 1])
    assert labels.condensation_edges(g) == 2
    assert labels.violations(g) == []
    assert SccLabelling([1, 1, 4, 1]).violations(g) == [2, 3]

def test_empty_and_single(rng):
    assert scc_topsort(DirectedGraph(0), rng, OracleStats()).tolist() == []
    assert len(scc_topsort(DirectedGraph(1, [(0, 0, 2)]), rng, OracleStats())) == 1

def test_depth_limit():
    assert depth_limit(1) == settings.scc_depth_slack
    with settings.override(scc_depth_slack=0):
        assert depth_limit(8) == 12
        assert depth_limit(9) == 16

def test_depth_limit_is_enforced(rng):
    g = DirectedGraph(4, [(0, 1, 0), (1, 2, 0), (2, 3, 0)])
    with settings.override(scc_depth_slack=-8):
        with pytest.raises(RecursionDepthExceeded):
            scc_topsort(g, rng, OracleStats())

def test_same_seed_same_labels():
    g = DirectedGraph(6, [(0, 1, 0), (1, 0, 0), (1, 2, 0), (2, 3, 0), (3, 4, 0), (4, 2, 0), (4, 5, 0)])
    first = scc_topsort(g, np.random.default_rng(1), OracleStats())
    second = scc_topsort(g, np.random.default_rng(1), OracleStats())
    assert first.tolist() == second.tolist()

def test_depth_is_recorded(rng):
    stats = OracleStats()
    g = DirectedGraph(8, [(v, v + 1, 0) for v in range(7)])
    scc_topsort(g, rng, stats)
    assert 1 <= stats.max_depth["scc"] <= depth_limit(8)

@pytest.mark.slow
def test_larger_graph_against_networkx():
    for seed in range(5):
        g = erdos_renyi(200, 0.01, -5, 5, seed=seed)
        stats = OracleStats()
        labels = scc_topsort(g, np.random.default_rng(seed), stats)
        assert check_labelling(g, labels)
        assert stats.calls < stats.raw_calls

@pytest.mark.slow
def test_distinct_labels_over_many_seeds():
    g = erdos_renyi(60, 0.03, 0, 1, seed=17)
    components = len(classical_scc(g).components)
    for seed in range(100):
        labels = scc_topsort(g, np.random.default_rng(seed), OracleStats())
        assert len(set(labels)) == components
        assert check_labelling(g, labels)

@pytest.mark.parametrize("n, seed", [(16, 0), (16, 1), (40, 2), (64, 3)])
def test_batched_calls_stay_polylogarithmic(n, seed):
    g = erdos_renyi(n, 2.0 / n, 0, 5, seed=seed)
    stats = OracleStats()
    scc_topsort(g, np.random.default_rng(seed), stats)
    log_n = ceil_log2(n)
    # every layer pays at most log n search steps plus three reach queries
    assert stats.calls <= (log_n + 3) * stats.max_depth["scc"]
    assert stats.calls <= 16 * log_n ** 2

def test_same_seed_same_metering():
    g = erdos_renyi(30, 0.08, 0, 5, seed=8)
    first, second = OracleStats(), OracleStats()
    scc_topsort(g, np.random.default_rng(4), first)
    scc_topsort(g, np.random.default_rng(4), second)
    assert first.snapshot() == second.snapshot()

