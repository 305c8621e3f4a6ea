"""
Random instances for the CLI `gen` command and the test suite.
"""

import logging

import networkx as nx
import numpy as np

from .errors import GenerationFailed
from .graph import DirectedGraph
from .verify import bellman_ford

log = logging.getLogger('generate')

def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)

def _topology(n, p, rng):
    topology = nx.gnp_random_graph(n, p, seed=int(rng.integers(2**31)), directed=True)
    return sorted(topology.edges())

def erdos_renyi(n, p, wmin, wmax, seed=None):
    """
    G(n, p) digraph with integer weights uniform in [wmin, wmax].
    """
    if wmin > wmax:
        raise ValueError("empty weight range [%d, %d]" % (wmin, wmax))
    rng = _rng(seed)
    arcs = _topology(n, p, rng)
    weights = rng.integers(wmin, wmax, size=len(arcs), endpoint=True).tolist()
    return DirectedGraph(n, [(u, v, w) for (u, v), w in zip(arcs, weights)])

def plant_negative_cycle(g, length, seed=None, weight=-1, wmax=10):
    """
    Append a simple cycle through `length` distinct vertices whose edges sum
    to `weight`.
    """
    if not 1 <= length <= g.n:
        raise ValueError("cycle length %d outside [1, %d]" % (length, g.n))
    if weight >= 0:
        raise ValueError("a planted cycle must be negative")
    rng = _rng(seed)
    ring = rng.choice(g.n, size=length, replace=False).tolist()
    weights = rng.integers(0, wmax, size=length - 1, endpoint=True).tolist()
    weights.append(weight - sum(weights))
    cycle = [(ring[i], ring[(i + 1) % length], w) for i, w in enumerate(weights)]
    log.debug("Generate::plant_negative_cycle through %s" % ring)
    return DirectedGraph(g.n, g.edges + cycle)

def _repair(g):
    # drop the most negative edge of each witness until none is left
    edges = g.edges
    while True:
        ref = bellman_ford(DirectedGraph(g.n, edges, check=False))
        if not ref.negative_cycle:
            return DirectedGraph(g.n, edges)
        if not ref.witness_edges:
            raise GenerationFailed("Bellman-Ford flagged a cycle without a witness")
        worst = min(ref.witness_edges, key=lambda e: edges[e][2])
        edges = edges[:worst] + edges[worst + 1:]

def cycle_free(n, p, wmin, wmax, seed=None, attempts=20):
    """
    G(n, p) instance without a negative cycle: rejection sampling first,
    then repair of the last sample.
    """
    rng = _rng(seed)
    g = None
    for _ in range(attempts):
        g = erdos_renyi(n, p, wmin, wmax, rng)
        if not bellman_ford(g).negative_cycle:
            return g
    log.info("Generate::cycle_free rejection failed %d times, repairing" % attempts)
    return _repair(g)

def potential_shifted(n, p, wmax, seed=None):
    """
    Non-negative weights pushed through a random potential: plenty of
    negative edges, never a negative cycle.
    """
    rng = _rng(seed)
    arcs = _topology(n, p, rng)
    base = rng.integers(0, wmax, size=len(arcs), endpoint=True).tolist()
    phi = rng.integers(-(wmax // 2), wmax // 2, size=n, endpoint=True).tolist()
    return DirectedGraph(n, [(u, v, w + phi[u] - phi[v]) for (u, v), w in zip(arcs, base)])

def dag_of_cliques(sizes, p_inter, wmax, seed=None):
    """
    Blocks that are strongly connected through a ring with non-negative
    weights, plus negative edges from earlier blocks to later ones.
    """
    rng = _rng(seed)
    edges = []
    blocks = []
    start = 0
    for size in sizes:
        members = list(range(start, start + size))
        blocks.append(members)
        start += size
        if size > 1:
            for i, u in enumerate(members):
                edges.append((u, members[(i + 1) % size], int(rng.integers(0, wmax, endpoint=True))))
        for u in members:
            for v in members:
                if u != v and rng.random() < p_inter:
                    edges.append((u, v, int(rng.integers(0, wmax, endpoint=True))))
    for i, upstream in enumerate(blocks):
        for downstream in blocks[i + 1:]:
            for u in upstream:
                for v in downstream:
                    if rng.random() < p_inter:
                        edges.append((u, v, -int(rng.integers(1, wmax, endpoint=True))))
    return DirectedGraph(start, edges)
