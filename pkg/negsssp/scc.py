"""
Strongly connected components with topologically ordered labels.

scc_topsort follows the prefix-reachability recursion: a random order of
the vertices, a binary search for the shortest prefix whose reach covers
half of the graph, then five regions R1..R5 with no edge into a lower
numbered region. Each region recurses inside its own label interval, so a
single cycle ends up with one label and the labels of different SCCs
decrease along every edge of the condensation.
"""

import logging

import numpy as np

from .conf import settings
from .errors import ContractViolation
from .graph import Remap, induced_subgraph, zero_weights
from .oracle import OracleQuery, run_layers
from .utils import ceil_log2, is_finite

log = logging.getLogger('scc')

class SccLabelling(object):
    def __init__(self, r):
        self.r = [int(x) for x in r]

    def __len__(self):
        return len(self.r)

    def __getitem__(self, v):
        return self.r[v]

    def __iter__(self):
        return iter(self.r)

    def tolist(self):
        return list(self.r)

    def components(self):
        """
        Vertex groups sharing a label, highest label (upstream) first.
        """
        groups = {}
        for v, label in enumerate(self.r):
            groups.setdefault(label, []).append(v)
        return [groups[label] for label in sorted(groups, reverse=True)]

    def condensation_edges(self, g):
        return len(set((self.r[u], self.r[v]) for u, v in zip(g.tails, g.heads) if self.r[u] != self.r[v]))

    def violations(self, g):
        """
        Edges whose endpoints carry labels in the wrong order.
        """
        return [eid for eid, (u, v) in enumerate(zip(g.tails, g.heads)) if self.r[u] < self.r[v]]

    def __repr__(self):
        return "SccLabelling(%s)" % self.r

def depth_limit(n):
    return 4 * ceil_log2(n) + settings.scc_depth_slack

def _draw_order(n, N, rng):
    bound = max(N, 1) ** 3
    while True:
        keys = rng.integers(0, bound, size=n)
        if len(np.unique(keys)) == n:
            return np.argsort(keys).tolist()
        log.debug("SCC::draw_order collision among %d keys, redrawing" % n)

def _reached(dist):
    return np.fromiter((is_finite(x) for x in dist), dtype=bool, count=len(dist))

def _check_partition(g, regions):
    index = np.full(g.n, -1, dtype=np.int64)
    for i, region in enumerate(regions):
        if (index[region] != -1).any():
            raise ContractViolation("SCC regions overlap")
        index[region] = i
    if (index == -1).any():
        raise ContractViolation("SCC regions do not cover the graph")
    if g.m:
        backwards = index[g.tail_array] > index[g.head_array]
        if backwards.any():
            eid = int(np.flatnonzero(backwards)[0])
            log.error("SCC::partition edge %d goes from R%d to R%d"
                      % (eid, index[g.tails[eid]] + 1, index[g.heads[eid]] + 1))
            raise ContractViolation("edge %d enters a lower numbered region" % eid)

def _scc_task(g, remap, ell, N, rng, labels):
    n, m = g.n, g.m
    host = remap.vertices
    order_rng, label_rng, *child_rngs = rng.spawn(7)
    order = _draw_order(n, N, order_rng)
    probed = {0: np.zeros(n, dtype=bool)}

    def reach(i):
        if i not in probed:
            dist = yield OracleQuery(g, attachments=[(v, 0) for v in order[:i]], vertices=host)
            probed[i] = _reached(dist)
        return probed[i]

    def weight(mask):
        inside = int(np.count_nonzero(mask[g.tail_array] & mask[g.head_array])) if m else 0
        return int(np.count_nonzero(mask)) + inside

    lo, hi = 1, n
    while lo < hi:
        mid = (lo + hi) // 2
        mask = yield from reach(mid)
        if 2 * weight(mask) >= n + m:
            hi = mid
        else:
            lo = mid + 1
    p = lo

    A = yield from reach(p - 1)
    pivot = order[p - 1]
    B = _reached((yield OracleQuery(g, source=pivot, vertices=host)))
    C = B & _reached((yield OracleQuery(g, source=pivot, reverse=True, vertices=host)))

    if C.all():
        label = int(label_rng.integers(ell * N * N, (ell + n - 1) * N * N, endpoint=True))
        for v in host.tolist():
            labels[v] = label
        return []

    regions = [~(A | B), A & ~B, C, B & ~(A | C), (A & B) & ~C]
    _check_partition(g, [np.flatnonzero(r) for r in regions])

    sizes = [int(np.count_nonzero(r)) for r in regions]
    children = []
    for i, region in enumerate(regions):
        if not sizes[i]:
            continue
        offset = ell + sum(sizes[i + 1:])
        sub, inner = induced_subgraph(g, region)
        children.append(_scc_task(sub, remap.compose(inner), offset, N, child_rngs[i], labels))
    log.debug("SCC::split n=%d p=%d regions=%s" % (n, p, sizes))
    return children

def scc_topsort(g, rng, stats):
    n = g.n
    if n == 0:
        return SccLabelling([])
    labels = [None] * n
    reach_graph = zero_weights(g)
    root = _scc_task(reach_graph, Remap(np.arange(n), np.arange(g.m)), 0, n, rng, labels)
    run_layers([root], stats, "scc", max_depth=depth_limit(n))
    return SccLabelling(labels)
