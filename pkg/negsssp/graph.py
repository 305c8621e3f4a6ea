"""
Graph representation and the price-function transforms every other module
reads through.

A DirectedGraph is immutable: n vertices with dense ids in [0, n) and an
edge list of (tail, head, weight) triples whose position is the edge id.
Weights are exact Python integers. Transforms never mutate; they return new
graphs with the same edge order, so edge ids survive reweight,
raise_negative, clamp_nonneg and scale. add_dummy_source appends its edges
after the original ones. Distance vectors are plain lists holding ints or
utils.INF.
"""

import logging
import math

import numpy as np

from functools import cached_property

from .conf import settings
from .errors import ContractViolation, WeightBoundExceeded

log = logging.getLogger('graph')

IN  = "in"
OUT = "out"

INT64_MAX = 2**63 - 1

def weight_bound(n):
    return max(n, 2) ** settings.weight_exponent

class _Bitmap(object):
    def __init__(self, mask):
        self.mask = np.asarray(mask, dtype=bool)

    @classmethod
    def empty(cls, size):
        return cls(np.zeros(size, dtype=bool))

    @classmethod
    def full(cls, size):
        return cls(np.ones(size, dtype=bool))

    @classmethod
    def from_ids(cls, size, ids):
        mask = np.zeros(size, dtype=bool)
        ids = list(ids)
        if ids:
            ids = np.asarray(ids, dtype=np.int64)
            if ids.min() < 0 or ids.max() >= size:
                raise ContractViolation("%s id out of range [0, %d)" % (cls.__name__, size))
            mask[ids] = True
        return cls(mask)

    @property
    def size(self):
        return len(self.mask)

    def ids(self):
        return np.flatnonzero(self.mask)

    def __len__(self):
        return int(np.count_nonzero(self.mask))

    def __bool__(self):
        return bool(self.mask.any())

    def __contains__(self, item):
        return 0 <= item < len(self.mask) and bool(self.mask[item])

    def __iter__(self):
        return iter(self.ids().tolist())

    def _other(self, other):
        if type(other) is not type(self) or other.size != self.size:
            raise ContractViolation("cannot combine %r with %r" % (self, other))
        return other.mask

    def __or__(self, other):
        return type(self)(self.mask | self._other(other))

    def __and__(self, other):
        return type(self)(self.mask & self._other(other))

    def __sub__(self, other):
        return type(self)(self.mask & ~self._other(other))

    def complement(self):
        return type(self)(~self.mask)

    def issubset(self, other):
        return not (self.mask & ~self._other(other)).any()

    def __eq__(self, other):
        return type(other) is type(self) and np.array_equal(self.mask, other.mask)

    __hash__ = None

    def __repr__(self):
        return "%s(%s of %d)" % (type(self).__name__, self.ids().tolist(), self.size)

class VertexSet(_Bitmap):
    pass

class EdgeSet(_Bitmap):
    pass

class PriceFunction(object):
    def __init__(self, phi):
        values = []
        for x in phi:
            if isinstance(x, float) and not math.isfinite(x):
                raise ContractViolation("price functions must be finite")
            values.append(int(x))
        self.phi = values

    @classmethod
    def zeros(cls, n):
        return cls([0] * n)

    def __len__(self):
        return len(self.phi)

    def __getitem__(self, v):
        return self.phi[v]

    def __iter__(self):
        return iter(self.phi)

    def __add__(self, other):
        if len(other) != len(self):
            raise ContractViolation("price function length mismatch: %d vs %d" % (len(self), len(other)))
        return PriceFunction([a + b for a, b in zip(self.phi, other)])

    def __eq__(self, other):
        return isinstance(other, PriceFunction) and self.phi == other.phi

    __hash__ = None

    def extend(self, value=0):
        return PriceFunction(self.phi + [value])

    def restrict(self, n):
        return PriceFunction(self.phi[:n])

    def tolist(self):
        return list(self.phi)

    def __repr__(self):
        return "PriceFunction(%s)" % self.phi

class Remap(object):
    """
    Identity bookkeeping for an induced subgraph: vertices[i] is the parent
    id of local vertex i, edges[j] the parent id of local edge j.
    """
    def __init__(self, vertices, edges):
        self.vertices = np.asarray(vertices, dtype=np.int64)
        self.edges    = np.asarray(edges, dtype=np.int64)

    def compose(self, inner):
        return Remap(self.vertices[inner.vertices], self.edges[inner.edges])

    def write_back(self, values, target):
        for local, parent in enumerate(self.vertices.tolist()):
            target[parent] = values[local]
        return target

class DirectedGraph(object):
    def __init__(self, n, edges=(), check=True):
        tails, heads, weights = [], [], []
        for u, v, w in edges:
            tails.append(u)
            heads.append(v)
            weights.append(w)
        self._setup(n, tails, heads, weights)
        if check:
            self.validate()

    @classmethod
    def from_arrays(cls, n, tails, heads, weights):
        """
        Build a derived graph without the input checks. Internal transforms
        produce values outside the input bound on purpose (scaling, shifts).
        """
        g = cls.__new__(cls)
        g._setup(n, tails, heads, weights)
        return g

    def _setup(self, n, tails, heads, weights):
        self.n       = int(n)
        self.tails   = [int(u) for u in tails]
        self.heads   = [int(v) for v in heads]
        self.weights = list(weights)
        if not (len(self.tails) == len(self.heads) == len(self.weights)):
            raise ContractViolation("edge arrays differ in length")

    def validate(self):
        if self.n < 0:
            raise ContractViolation("negative vertex count %d" % self.n)
        for eid, (u, v, w) in enumerate(zip(self.tails, self.heads, self.weights)):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ContractViolation("edge %d (%d, %d) leaves [0, %d)" % (eid, u, v, self.n))
            if isinstance(w, bool) or not isinstance(w, (int, np.integer)):
                raise ContractViolation("edge %d has non-integer weight %r" % (eid, w))
        self.weights = [int(w) for w in self.weights]

        if not self.weights:
            return
        largest = max(abs(w) for w in self.weights)
        bound = weight_bound(self.n)
        log.debug("DirectedGraph::validate n=%d m=%d max|w|=%d" % (self.n, self.m, largest))
        if largest > bound:
            raise WeightBoundExceeded("|w| = %d exceeds W_max = %d for n = %d" % (largest, bound, self.n))
        if settings.int64_guard and self.n ** 3 * largest > INT64_MAX:
            raise WeightBoundExceeded("n^3 * max|w| = %d^3 * %d overflows 64-bit weights" % (self.n, largest))

    @property
    def m(self):
        return len(self.tails)

    @property
    def edges(self):
        return list(zip(self.tails, self.heads, self.weights))

    def edge(self, eid):
        return self.tails[eid], self.heads[eid], self.weights[eid]

    @cached_property
    def out_edges(self):
        adj = [[] for _ in range(self.n)]
        for eid, u in enumerate(self.tails):
            adj[u].append(eid)
        return adj

    @cached_property
    def in_edges(self):
        adj = [[] for _ in range(self.n)]
        for eid, v in enumerate(self.heads):
            adj[v].append(eid)
        return adj

    @cached_property
    def tail_array(self):
        return np.asarray(self.tails, dtype=np.int64)

    @cached_property
    def head_array(self):
        return np.asarray(self.heads, dtype=np.int64)

    @cached_property
    def min_weight(self):
        # min over an empty edge set is taken as 0
        return min(self.weights) if self.weights else 0

    def negative_edges(self):
        return EdgeSet(np.asarray([w < 0 for w in self.weights], dtype=bool))

    def with_weights(self, weights):
        return DirectedGraph.from_arrays(self.n, self.tails, self.heads, weights)

    def keep_edges(self, edges):
        keep = edges.mask if isinstance(edges, EdgeSet) else np.asarray(edges, dtype=bool)
        ids = np.flatnonzero(keep).tolist()
        return DirectedGraph.from_arrays(self.n,
                                         [self.tails[i] for i in ids],
                                         [self.heads[i] for i in ids],
                                         [self.weights[i] for i in ids])

    def remove_edges(self, edges):
        return self.keep_edges(edges.complement())

    def cycle_weight(self, eids):
        return sum(self.weights[e] for e in eids)

    def __repr__(self):
        return "DirectedGraph(n=%d, m=%d)" % (self.n, self.m)

def reweight(g, phi):
    if len(phi) != g.n:
        raise ContractViolation("price function has length %d, graph has %d vertices" % (len(phi), g.n))
    p = phi.phi if isinstance(phi, PriceFunction) else list(phi)
    return g.with_weights([w + p[u] - p[v] for u, v, w in zip(g.tails, g.heads, g.weights)])

def raise_negative(g, B):
    if B < 0:
        raise ContractViolation("raise_negative needs B >= 0, got %d" % B)
    if B == 0:
        return g
    return g.with_weights([(w + B if w < 0 else w) for w in g.weights])

def add_dummy_source(g):
    s = g.n
    return DirectedGraph.from_arrays(g.n + 1,
                                     g.tails + [s] * g.n,
                                     g.heads + list(range(g.n)),
                                     g.weights + [0] * g.n), s

def clamp_nonneg(g):
    if g.min_weight >= 0:
        return g
    return g.with_weights([max(0, w) for w in g.weights])

def scale(g, factor):
    return g.with_weights([w * factor for w in g.weights])

def zero_weights(g):
    return g.with_weights([0] * g.m)

def induced_subgraph(g, s):
    """
    G[s] together with the Remap back into g.
    """
    mask = s.mask if isinstance(s, VertexSet) else np.asarray(s, dtype=bool)
    if len(mask) != g.n:
        raise ContractViolation("vertex set over %d ids used on a graph with %d" % (len(mask), g.n))
    vertices = np.flatnonzero(mask)
    index = np.full(g.n, -1, dtype=np.int64)
    index[vertices] = np.arange(len(vertices))

    if g.m:
        keep = mask[g.tail_array] & mask[g.head_array]
        edge_ids = np.flatnonzero(keep)
        tails = index[g.tail_array[edge_ids]].tolist()
        heads = index[g.head_array[edge_ids]].tolist()
        weights = [g.weights[e] for e in edge_ids.tolist()]
    else:
        edge_ids = np.zeros(0, dtype=np.int64)
        tails, heads, weights = [], [], []

    sub = DirectedGraph.from_arrays(len(vertices), tails, heads, weights)
    return sub, Remap(vertices, edge_ids)

def boundary(g, s, direction):
    """
    delta-(S) for IN: edges entering S from outside. delta+(S) for OUT.
    """
    mask = s.mask if isinstance(s, VertexSet) else np.asarray(s, dtype=bool)
    if not g.m:
        return EdgeSet.empty(0)
    tail_in = mask[g.tail_array]
    head_in = mask[g.head_array]
    if direction == IN:
        return EdgeSet(~tail_in & head_in)
    if direction == OUT:
        return EdgeSet(tail_in & ~head_in)
    raise ContractViolation("unknown boundary direction %r" % (direction,))

def edges_within(g, s):
    mask = s.mask if isinstance(s, VertexSet) else np.asarray(s, dtype=bool)
    if not g.m:
        return EdgeSet.empty(0)
    return EdgeSet(mask[g.tail_array] & mask[g.head_array])
