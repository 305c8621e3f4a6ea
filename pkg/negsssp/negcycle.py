"""
Las Vegas driver: exact distances from the source, or a negative cycle
whose weight has been re-summed in the input graph.
"""

import logging

from collections import deque
from dataclasses import dataclass

import numpy as np

from .conf import settings
from .errors import RetryBudgetExhausted
from .graph import PriceFunction, add_dummy_source, raise_negative, reweight, scale
from .oracle import OracleQuery, oracle_query
from .solver import sp_main
from .utils import INF, ceil_log2
from .verify import check_distances

log = logging.getLogger('negcycle')

@dataclass
class CycleWitness:
    vertices:     list
    edges:        list
    total_weight: int

    @classmethod
    def from_edges(cls, g, edges):
        edges = [int(e) for e in edges]
        vertices = [g.tails[e] for e in edges] + [g.tails[edges[0]]]
        return cls(vertices=vertices, edges=edges, total_weight=g.cycle_weight(edges))

    def verify(self, g):
        if not self.edges or len(self.vertices) != len(self.edges) + 1:
            return False
        if self.vertices[0] != self.vertices[-1]:
            return False
        for i, eid in enumerate(self.edges):
            if not 0 <= eid < g.m:
                return False
            if (g.tails[eid], g.heads[eid]) != (self.vertices[i], self.vertices[i + 1]):
                return False
        return self.total_weight == g.cycle_weight(self.edges) and self.total_weight < 0

    def to_json(self):
        return {"cycle": list(self.vertices), "edges": list(self.edges), "weight": self.total_weight}

def probe_repeats(n):
    return settings.find_thresh_repeats or 3 * ceil_log2(n) + 5

def find_thresh(g, source, rng, stats, repeats=None, **overrides):
    """
    Smallest B >= 0 for which sp_main(G^B) stops reporting ERROR. ERROR is
    only trusted after `repeats` tries, sp_main may fail by chance.
    """
    W = max(0, -g.min_weight)
    if W == 0:
        return 0
    repeats = repeats or probe_repeats(g.n)

    def clears(B):
        raised = raise_negative(g, B)
        for _ in range(repeats):
            if not sp_main(raised, source, rng, stats, **overrides).error:
                return True
        return False

    lo, hi = 0, W
    while lo < hi:
        mid = (lo + hi) // 2
        if clears(mid):
            hi = mid
        else:
            lo = mid + 1
    log.debug("FindThresh::find_thresh W=%d -> B=%d" % (W, lo))
    return lo

def _tight_path(g, start, goal, stats):
    """
    Edge ids of a lightest start -> goal path in the non-negative graph g.
    """
    if start == goal:
        return []
    dist = oracle_query(OracleQuery(g, source=start), stats, "negcycle")
    if dist[goal] == INF:
        return None

    parent = [None] * g.n
    seen = [False] * g.n
    seen[start] = True
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for eid in g.out_edges[u]:
            v = g.heads[eid]
            if not seen[v] and dist[u] + g.weights[eid] == dist[v]:
                seen[v] = True
                parent[v] = eid
                queue.append(v)

    path = []
    v = goal
    while v != start:
        eid = parent[v]
        path.append(eid)
        v = g.tails[eid]
    path.reverse()
    return path

def _any_cycle(g):
    """
    Edge ids of some cycle found by iterative DFS back-edge detection.
    """
    WHITE, GRAY, BLACK = 0, 1, 2
    colour = [WHITE] * g.n
    via = [None] * g.n
    for root in range(g.n):
        if colour[root] != WHITE:
            continue
        colour[root] = GRAY
        stack = [(root, iter(g.out_edges[root]))]
        while stack:
            u, it = stack[-1]
            eid = next(it, None)
            if eid is None:
                colour[u] = BLACK
                stack.pop()
                continue
            v = g.heads[eid]
            if colour[v] == WHITE:
                colour[v] = GRAY
                via[v] = eid
                stack.append((v, iter(g.out_edges[v])))
            elif colour[v] == GRAY:
                cycle = [eid]
                x = u
                while x != v:
                    cycle.append(via[x])
                    x = g.tails[via[x]]
                cycle.reverse()
                return cycle
    return None

def _extract_cycle(g, gplus, stats):
    n = g.n
    small = np.asarray([w <= n for w in gplus.weights], dtype=bool)
    local_to_global = np.flatnonzero(small)
    gsmall = gplus.keep_edges(small)
    if gsmall.m == 0:
        return None

    # cycles through an edge that is negative in the input first
    candidates = sorted((int(e) for e in local_to_global if g.weights[e] < 0), key=lambda e: (g.weights[e], e))
    for eid in candidates:
        path = _tight_path(gsmall, g.heads[eid], g.tails[eid], stats)
        if path is None:
            continue
        witness = CycleWitness.from_edges(g, [eid] + [local_to_global[e] for e in path])
        if witness.total_weight < 0:
            return witness

    cycle = _any_cycle(gsmall)
    if cycle is not None:
        witness = CycleWitness.from_edges(g, [local_to_global[e] for e in cycle])
        if witness.total_weight < 0:
            return witness
    return None

def _attempt(g, gprime, source, rng, stats, overrides):
    n = g.n
    B = find_thresh(gprime, source, rng, stats, **overrides)

    if B == 0:
        report = sp_main(g, source, rng, stats, **overrides)
        if report.error:
            return None, "sp_main reported ERROR on a graph without threshold"
        if not check_distances(g, source, report.distances):
            return None, "distances failed the certificate check"
        return report.distances, None

    raised = raise_negative(gprime, B)
    with_source, s = add_dummy_source(raised)
    report = sp_main(with_source, s, rng, stats, **overrides)
    if report.error:
        return None, "sp_main reported ERROR on (G')^%d" % B

    gplus = reweight(raised, PriceFunction(report.distances[:n]))
    if gplus.min_weight < 0:
        return None, "potential left an edge at %d" % gplus.min_weight

    witness = _extract_cycle(g, gplus, stats)
    if witness is None:
        return None, "no negative cycle among edges of weight <= n"
    return witness, None

def solve(g, source, rng, stats, restarts=None, **overrides):
    """
    Either the exact distance list from source or a CycleWitness. The
    answer is always checked; only the number of restarts is random.
    """
    if restarts is None:
        restarts = settings.solve_restarts
    gprime = scale(g, g.n ** 3)

    reasons = []
    for attempt in range(restarts):
        result, reason = _attempt(g, gprime, source, rng, stats, overrides)
        if result is not None:
            if isinstance(result, CycleWitness):
                log.info("SP::solve found a cycle of weight %d after %d restarts" % (result.total_weight, attempt))
            return result
        log.info("SP::solve restart %d/%d: %s" % (attempt + 1, restarts, reason))
        reasons.append(reason)

    raise RetryBudgetExhausted("no verified answer after %d restarts" % restarts,
                               diagnostics={"restarts": restarts, "reasons": reasons,
                                            "stats": stats.snapshot()})
