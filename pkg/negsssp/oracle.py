"""
Non-negative single source shortest paths oracle.

Every algorithm in the package reaches distances only through this module,
so OracleStats sees each invocation. The reference oracle is a binary-heap
Dijkstra over exact integers. A query either starts at a real vertex or at
a virtual super-source given as (vertex, weight) attachments; the virtual
node is never materialised, its attachments seed the heap directly.

Recursive algorithms are written as generators that yield OracleQuery
objects and receive distance vectors back. run_layers advances all
subproblems of one recursion layer in lockstep and hands their queries to
simulate_disjoint_calls, which is what makes the per-layer accounting work.
"""

import functools
import heapq
import logging
import threading

from dataclasses import dataclass

import numpy as np

from .conf import settings
from .errors import ContractViolation, NegativeWeightRejected, RecursionDepthExceeded
from .utils import INF, synchronous

log = logging.getLogger('oracle')

TAGS = ("ldd", "scc", "estdist", "spmain", "negcycle")

@dataclass(frozen=True, eq=False)
class OracleQuery:
    graph:       object
    source:      object = None
    attachments: tuple  = ()
    reverse:     bool   = False
    vertices:    object = None

    def __post_init__(self):
        attachments = tuple((int(v), w) for v, w in self.attachments)
        object.__setattr__(self, "attachments", attachments)
        if self.source is not None and attachments:
            raise ContractViolation("a query has either a source or attachments, not both")
        if self.source is not None and not 0 <= self.source < self.graph.n:
            raise ContractViolation("source %d outside [0, %d)" % (self.source, self.graph.n))
        for v, _ in attachments:
            if not 0 <= v < self.graph.n:
                raise ContractViolation("attachment vertex %d outside [0, %d)" % (v, self.graph.n))

    @property
    def seeds(self):
        if self.source is not None:
            return ((self.source, 0),)
        return self.attachments

class OracleStats(object):
    def __init__(self):
        self._lock       = threading.RLock()
        self.calls       = 0
        self.raw_calls   = 0
        self.touched     = 0
        self.per_tag     = dict((tag, 0) for tag in TAGS)
        self.raw_per_tag = dict((tag, 0) for tag in TAGS)
        self.max_depth   = {}
        self.erem        = {}

    @synchronous('_lock')
    def record(self, tag, calls=1, parts=1, touched=0):
        if tag not in self.per_tag:
            raise ContractViolation("unknown oracle caller tag %r" % (tag,))
        self.calls += calls
        self.raw_calls += parts
        self.per_tag[tag] += calls
        self.raw_per_tag[tag] += parts
        self.touched += touched

    @synchronous('_lock')
    def note_depth(self, algorithm, depth):
        if depth > self.max_depth.get(algorithm, 0):
            self.max_depth[algorithm] = depth

    @synchronous('_lock')
    def note_erem(self, phase, size):
        self.erem.setdefault(phase, []).append(size)

    @synchronous('_lock')
    def merge(self, other):
        self.calls += other.calls
        self.raw_calls += other.raw_calls
        self.touched += other.touched
        for tag in TAGS:
            self.per_tag[tag] += other.per_tag[tag]
            self.raw_per_tag[tag] += other.raw_per_tag[tag]
        for algorithm, depth in other.max_depth.items():
            if depth > self.max_depth.get(algorithm, 0):
                self.max_depth[algorithm] = depth
        for phase, sizes in other.erem.items():
            self.erem.setdefault(phase, []).extend(sizes)
        return self

    @synchronous('_lock')
    def snapshot(self):
        return {
            "calls":       self.calls,
            "raw_calls":   self.raw_calls,
            "touched":     self.touched,
            "per_tag":     dict(self.per_tag),
            "raw_per_tag": dict(self.raw_per_tag),
            "max_depth":   dict(self.max_depth),
            "erem":        dict((str(phase), list(sizes)) for phase, sizes in sorted(self.erem.items())),
        }

    def __repr__(self):
        return "OracleStats(calls=%d, raw_calls=%d)" % (self.calls, self.raw_calls)

def dijkstra(graph, seeds, reverse=False):
    """
    Exact distances from the seeds over non-negative weights. With reverse
    set, edges are followed head to tail, which gives distances *to* the
    seeds in the original orientation.
    """
    dist = [INF] * graph.n
    heap = []
    for v, d in seeds:
        if d < dist[v]:
            dist[v] = d
            heap.append((d, v))
    heapq.heapify(heap)

    adj     = graph.in_edges if reverse else graph.out_edges
    ends    = graph.tails if reverse else graph.heads
    weights = graph.weights
    done    = [False] * graph.n

    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for eid in adj[u]:
            v = ends[eid]
            nd = d + weights[eid]
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist

@functools.lru_cache(maxsize=64)
def _memo_dijkstra(graph, seeds, reverse):
    return tuple(dijkstra(graph, seeds, reverse))

def verify_certificate(graph, seeds, dist, reverse=False):
    """
    True when dist is a shortest path certificate: no edge can be relaxed
    and every finite value is met by a seed or a tight incoming edge.
    """
    tails, heads = (graph.heads, graph.tails) if reverse else (graph.tails, graph.heads)
    tight = [False] * graph.n
    for v, d in seeds:
        if dist[v] > d:
            return False
        if dist[v] == d:
            tight[v] = True
    for u, v, w in zip(tails, heads, graph.weights):
        if dist[u] == INF:
            continue
        if dist[v] > dist[u] + w:
            return False
        if dist[v] == dist[u] + w:
            tight[v] = True
    return all(tight[v] or dist[v] == INF for v in range(graph.n))

def _answer(q):
    if q.graph.min_weight < 0:
        log.error("Oracle::query rejected a graph with weight %d" % q.graph.min_weight)
        raise NegativeWeightRejected("oracle graph has weight %d < 0" % q.graph.min_weight)
    for v, w in q.attachments:
        if w < 0:
            log.error("Oracle::query rejected attachment (%d, %d)" % (v, w))
            raise NegativeWeightRejected("attachment to %d has weight %d < 0" % (v, w))

    dist = list(_memo_dijkstra(q.graph, q.seeds, q.reverse))

    if settings.check_oracle_certificates and not verify_certificate(q.graph, q.seeds, dist, q.reverse):
        log.error("Oracle::query certificate check failed on %r" % q.graph)
        raise ContractViolation("oracle output failed its certificate check")
    return dist

def oracle_query(q, stats, tag):
    dist = _answer(q)
    stats.record(tag, calls=1, parts=1, touched=q.graph.n + q.graph.m)
    return dist

def _check_disjoint(parts):
    chunks = []
    for q in parts:
        if q.vertices is None:
            raise ContractViolation("batched queries need their host vertex ids")
        chunks.append(np.asarray(q.vertices, dtype=np.int64))
    ids = np.concatenate(chunks)
    if len(np.unique(ids)) != len(ids):
        raise ContractViolation("batched queries overlap in the host graph")

def simulate_disjoint_calls(parts, stats, tag):
    """
    Answer queries over vertex-disjoint parts of one host graph. With
    batching on, the batch is metered as a single oracle call.
    """
    parts = list(parts)
    if not parts:
        return []
    if len(parts) > 1:
        _check_disjoint(parts)

    results = [_answer(q) for q in parts]
    touched = sum(q.graph.n + q.graph.m for q in parts)
    calls = 1 if settings.batch_disjoint_calls else len(parts)
    stats.record(tag, calls=calls, parts=len(parts), touched=touched)
    return results

def drive(task, stats, tag):
    """
    Run one query generator to completion, one oracle call per query.
    """
    try:
        query = next(task)
        while True:
            query = task.send(oracle_query(query, stats, tag))
    except StopIteration as stop:
        return stop.value

def run_layers(tasks, stats, tag, max_depth=None, algorithm=None):
    """
    Breadth-first driver for recursive query generators. Each task yields
    queries and finally returns a list of child tasks for the next layer.
    Queries of sibling tasks are answered together per step.
    """
    algorithm = algorithm or tag
    layer = list(tasks)
    depth = 0
    while layer:
        depth += 1
        if max_depth is not None and depth > max_depth:
            log.info("Oracle::run_layers %s exceeded depth %d" % (algorithm, max_depth))
            raise RecursionDepthExceeded(algorithm, depth, max_depth)
        stats.note_depth(algorithm, depth)

        children = []
        active = []
        for task in layer:
            try:
                active.append((task, next(task)))
            except StopIteration as stop:
                children.extend(stop.value or ())

        while active:
            answers = simulate_disjoint_calls([query for _, query in active], stats, tag)
            waiting = []
            for (task, _), dist in zip(active, answers):
                try:
                    waiting.append((task, task.send(dist)))
                except StopIteration as stop:
                    children.extend(stop.value or ())
            active = waiting

        log.debug("Oracle::run_layers %s layer %d done, %d children" % (algorithm, depth, len(children)))
        layer = children
    return depth
