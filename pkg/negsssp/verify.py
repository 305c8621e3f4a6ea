"""
Independent reference answers for small graphs: Bellman-Ford with
negative-cycle witnesses, negative-edge counts on shortest paths, classical
SCCs and brute-force all-pairs distances. None of this goes through the
metered oracle.
"""

import logging

from collections import deque, namedtuple
from dataclasses import dataclass, field

import networkx as nx

from .utils import INF, dist_add

log = logging.getLogger('verify')

@dataclass
class ReferenceAnswer:
    distances:      list = None
    negative_cycle: bool = False
    witness:        list = field(default_factory=list)
    witness_edges:  list = field(default_factory=list)
    eta:            list = None

    @property
    def eta_max(self):
        return max(self.eta) if self.eta else 0

SccReference = namedtuple("SccReference", ["components", "membership"])

def _relax_round(g, dist, pred):
    changed = []
    for eid, (u, v, w) in enumerate(zip(g.tails, g.heads, g.weights)):
        nd = dist_add(dist[u], w)
        if nd < dist[v]:
            dist[v] = nd
            pred[v] = eid
            changed.append(v)
    return changed

def _trace_cycle(g, pred, start):
    x = start
    for _ in range(g.n):
        if pred[x] is None:
            return [], []
        x = g.tails[pred[x]]
    edges = []
    cur = x
    while True:
        eid = pred[cur]
        edges.append(eid)
        cur = g.tails[eid]
        if cur == x:
            break
    edges.reverse()
    vertices = [g.tails[e] for e in edges] + [x]
    return vertices, edges

def bellman_ford(g, source=None):
    """
    Distances from source, or from a dummy source attached to every vertex
    when source is None. A negative cycle reachable from the start comes
    back as a closed walk with its edge ids.
    """
    n = g.n
    if source is None:
        dist = [0] * n
    else:
        dist = [INF] * n
        dist[source] = 0
    pred = [None] * n

    for _ in range(max(n - 1, 0)):
        if not _relax_round(g, dist, pred):
            return ReferenceAnswer(distances=dist)

    changed = _relax_round(g, dist, pred)
    if not changed:
        return ReferenceAnswer(distances=dist)

    vertices, edges = _trace_cycle(g, pred, changed[0])
    if edges and g.cycle_weight(edges) >= 0:
        log.error("BellmanFord::witness walk of weight %d is not negative" % g.cycle_weight(edges))
    return ReferenceAnswer(negative_cycle=True, witness=vertices, witness_edges=edges)

def check_distances(g, source, dist):
    """
    True iff dist is exactly the shortest path distance vector from source:
    nothing relaxes and every finite vertex is reached over tight edges.
    """
    if len(dist) != g.n or dist[source] != 0:
        return False
    tight_out = [[] for _ in range(g.n)]
    for u, v, w in zip(g.tails, g.heads, g.weights):
        if dist[u] == INF:
            continue
        if dist[v] == INF or dist[u] + w < dist[v]:
            return False
        if dist[u] + w == dist[v]:
            tight_out[u].append(v)

    seen = [False] * g.n
    seen[source] = True
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in tight_out[u]:
            if not seen[v]:
                seen[v] = True
                queue.append(v)
    return all(seen[v] or dist[v] == INF for v in range(g.n))

def _close_nonneg(g, dist):
    nonneg = [(u, v, w) for u, v, w in zip(g.tails, g.heads, g.weights) if w >= 0]
    changed = True
    while changed:
        changed = False
        for u, v, w in nonneg:
            if dist[u] != INF and dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
                changed = True
    return dist

def eta_profile(g, source=None):
    """
    eta[v]: the fewest negative edges on any shortest path to v (from the
    dummy source when source is None). Computed by layering distances by
    the number of negative edges used, up to n layers.
    """
    ref = bellman_ford(g, source)
    if ref.negative_cycle:
        return ref

    n = g.n
    if source is None:
        current = [0] * n
    else:
        current = [INF] * n
        current[source] = 0
    current = _close_nonneg(g, current)
    negative = [(u, v, w) for u, v, w in zip(g.tails, g.heads, g.weights) if w < 0]

    eta = [None] * n
    for k in range(n + 1):
        for v in range(n):
            if eta[v] is None and current[v] == ref.distances[v]:
                eta[v] = k
        if all(x is not None for x in eta):
            break
        layered = list(current)
        for u, v, w in negative:
            if current[u] != INF and current[u] + w < layered[v]:
                layered[v] = current[u] + w
        current = _close_nonneg(g, layered)

    ref.eta = eta
    return ref

def _digraph(g, weighted=False):
    G = nx.DiGraph()
    G.add_nodes_from(range(g.n))
    for u, v, w in zip(g.tails, g.heads, g.weights):
        if weighted:
            if not G.has_edge(u, v) or G[u][v]["weight"] > w:
                G.add_edge(u, v, weight=w)
        else:
            G.add_edge(u, v)
    return G

def classical_scc(g):
    """
    SCCs listed in topological order of the condensation (sources first),
    with membership[v] the position of v's component.
    """
    C = nx.condensation(_digraph(g))
    order = list(nx.topological_sort(C))
    position = dict((c, i) for i, c in enumerate(order))
    components = [sorted(C.nodes[c]["members"]) for c in order]
    membership = [None] * g.n
    for v, c in C.graph["mapping"].items():
        membership[v] = position[c]
    return SccReference(components, membership)

def check_labelling(g, labels):
    """
    The labels induce exactly the classical SCC partition and decrease
    along every edge between different components.
    """
    ref = classical_scc(g)
    for component in ref.components:
        if len(set(labels[v] for v in component)) != 1:
            return False
    if len(set(labels[c[0]] for c in ref.components)) != len(ref.components):
        return False
    return all(labels[u] > labels[v] for u, v in zip(g.tails, g.heads) if ref.membership[u] != ref.membership[v])

def weak_diameter_violations(g, erem, d, limit=None):
    """
    Pairs (u, v) in one SCC of g minus erem with dist_g(u, v) > d. g must
    have non-negative weights. With limit set, only the first `limit`
    members of each component act as sources.
    """
    kept = g.remove_edges(erem)
    G = _digraph(g, weighted=True)
    bad = []
    for component in classical_scc(kept).components:
        if len(component) < 2:
            continue
        members = component if limit is None else component[:limit]
        for u in members:
            reach = nx.single_source_dijkstra_path_length(G, u, cutoff=d)
            bad.extend((u, v) for v in component if v not in reach)
    return bad

def all_pairs(g):
    """
    Floyd-Warshall over exact integers; only for graphs without negative
    cycles.
    """
    n = g.n
    D = [[INF] * n for _ in range(n)]
    for v in range(n):
        D[v][v] = 0
    for u, v, w in zip(g.tails, g.heads, g.weights):
        if w < D[u][v]:
            D[u][v] = w
    for k in range(n):
        Dk = D[k]
        for i in range(n):
            dik = D[i][k]
            if dik == INF:
                continue
            Di = D[i]
            for j in range(n):
                if Dk[j] != INF and dik + Dk[j] < Di[j]:
                    Di[j] = dik + Dk[j]
    return D
