"""
Directed low-diameter decomposition.

low_diameter_decomposition returns an edge set E^rem such that every SCC of
(V, E \\ E^rem) has weak diameter at most d in the input graph. Vertices are
first marked in-light, out-light or heavy from a small sample S, light
vertices then grow truncated-geometric balls (find_balanced_set) and the
recursion continues on the balanced side or on the two small sides.

Subproblems of one recursion layer are vertex-disjoint, so their oracle
queries run through oracle.run_layers and are metered once per step.
"""

import logging
import math

from dataclasses import dataclass, replace

import numpy as np

from .errors import ContractViolation
from .graph import IN, OUT, EdgeSet, Remap, VertexSet, boundary, induced_subgraph
from .conf import settings
from .oracle import OracleQuery, drive, run_layers
from .utils import is_finite

log = logging.getLogger('ldd')

@dataclass(frozen=True)
class LddParams:
    d:        int
    c:        int = None
    n_global: int = None
    rng_seed: int = None

    def __post_init__(self):
        if self.c is None:
            object.__setattr__(self, "c", settings.ldd_c)
        if self.d < 1:
            raise ContractViolation("LDD diameter must be >= 1, got %d" % self.d)
        if self.c < 1:
            raise ContractViolation("LDD constant c must be >= 1, got %d" % self.c)
        if self.n_global is not None and self.n_global < 0:
            raise ContractViolation("n_global must be >= 0")

    @property
    def log_n(self):
        return max(1.0, math.log2(max(self.n_global or 1, 1)))

    @property
    def sample_size(self):
        return max(1, math.ceil(self.c * self.log_n))

    def radius_dist(self):
        return TruncGeomDist(min(self.c * self.log_n / self.d, 1.0), self.d // 4)

@dataclass(frozen=True)
class TruncGeomDist:
    p: float
    t: int

    def __post_init__(self):
        if not 0 < self.p <= 1:
            raise ContractViolation("geometric parameter p must lie in (0, 1], got %r" % self.p)
        if self.t < 0:
            raise ContractViolation("truncation t must be >= 0, got %r" % self.t)

    def pmf(self, k):
        if not 0 <= k <= self.t:
            return 0.0
        q = 1.0 - self.p
        return q ** k * self.p / (1.0 - q ** (self.t + 1))

    def mean(self):
        return sum(k * self.pmf(k) for k in range(self.t + 1))

def sample_trunc_geom(dist, rng):
    """
    Inverse CDF over the closed form: the smallest k with
    1 - q^(k+1) >= u * (1 - q^(t+1)).
    """
    if dist.p >= 1.0 or dist.t == 0:
        return 0
    u = rng.random()
    log_q = math.log1p(-dist.p)
    total = -math.expm1((dist.t + 1) * log_q)
    x = math.log1p(-u * total) / log_q
    return max(0, min(dist.t, int(math.floor(x))))

def _within(dist, numerator, d):
    # numerator * dist <= d, exact for integer radii like d/4 and d/2
    return np.fromiter((is_finite(x) and numerator * x <= d for x in dist), dtype=bool, count=len(dist))

def _mark(g, host, params, rng):
    n = g.n
    sample = rng.integers(0, n, size=params.sample_size).tolist()
    in_count = np.zeros(n, dtype=np.int64)
    out_count = np.zeros(n, dtype=np.int64)

    for s in sample:
        # s reaches v within d/4  <=>  s in Ball^in(v, d/4)
        dist = yield OracleQuery(g, source=s, vertices=host)
        in_count += _within(dist, 4, params.d)
    for s in sample:
        dist = yield OracleQuery(g, source=s, reverse=True, vertices=host)
        out_count += _within(dist, 4, params.d)

    threshold = 6 * len(sample)
    in_light = 10 * in_count <= threshold
    out_light = ~in_light & (10 * out_count <= threshold)
    heavy = ~in_light & ~out_light
    return VertexSet(in_light), VertexSet(out_light), VertexSet(heavy)

def _find_balanced(g, host, vprime, params, direction, rng):
    n = g.n
    centers = [int(v) for v in vprime]
    if not centers:
        return VertexSet.empty(n)

    radius_dist = params.radius_dist()
    radii = [sample_trunc_geom(radius_dist, rng) for _ in centers]
    reverse = direction == IN
    probed = {}

    def probe(i):
        if i not in probed:
            attachments = [(centers[j], params.d - radii[j]) for j in range(i)]
            dist = yield OracleQuery(g, attachments=attachments, reverse=reverse, vertices=host)
            probed[i] = _within(dist, 1, params.d)
        return probed[i]

    def large(mask):
        return 10 * int(np.count_nonzero(mask)) > n

    everything = yield from probe(len(centers))
    k = len(centers)
    if large(everything):
        lo, hi = 1, len(centers)
        while lo < hi:
            mid = (lo + hi) // 2
            mask = yield from probe(mid)
            if large(mask):
                hi = mid
            else:
                lo = mid + 1
        k = lo

    found = VertexSet(probed[k])
    if 10 * len(found) > 9 * n:
        log.debug("FindBalancedSet::%s set of %d exceeds .9|V| = %.1f, a ball broke the .7|V| bound"
                  % (direction, len(found), 0.9 * n))
    return found

def _balanced(size, n):
    return n <= 10 * size <= 9 * n

def _cut(removed, remap, edges):
    if len(edges):
        removed[remap.edges[edges.ids()]] = True

def _ldd_task(g, remap, params, rng, removed):
    n = g.n
    if n <= 1:
        # a lone vertex is its own SCC with diameter 0
        return []

    host = remap.vertices
    mark_rng, in_rng, out_rng, first_rng, second_rng = rng.spawn(5)

    in_light, out_light, heavy = yield from _mark(g, host, params, mark_rng)
    a_in = yield from _find_balanced(g, host, in_light.ids(), params, IN, in_rng)
    a_out = yield from _find_balanced(g, host, out_light.ids(), params, OUT, out_rng)
    everything = VertexSet.full(n)

    def child(part, child_rng):
        if not part:
            return None
        sub, inner = induced_subgraph(g, part)
        return _ldd_task(sub, remap.compose(inner), params, child_rng, removed)

    for found, direction in ((a_in, IN), (a_out, OUT)):
        if _balanced(len(found), n):
            _cut(removed, remap, boundary(g, found, direction))
            log.debug("LDD::case1 n=%d |A_%s|=%d" % (n, direction, len(found)))
            return [t for t in (child(found, first_rng), child(everything - found, second_rng)) if t]

    covered = a_in | a_out
    rest = everything - covered
    clean = bool(rest) and 2 * len(covered) < n
    if clean:
        u = int(rest.ids()[0])
        to_u = yield OracleQuery(g, source=u, reverse=True, vertices=host)
        from_u = yield OracleQuery(g, source=u, vertices=host)
        inside = _within(to_u, 2, params.d) & _within(from_u, 2, params.d)
        clean = not (rest.mask & ~inside).any()

    if not clean:
        log.debug("LDD::cleanup n=%d fell back to removing all %d edges" % (n, g.m))
        removed[remap.edges] = True
        return []

    _cut(removed, remap, boundary(g, a_in, IN) | boundary(g, a_out, OUT))
    log.debug("LDD::case2 n=%d |A_in|=%d |A_out|=%d" % (n, len(a_in), len(a_out)))
    return [t for t in (child(a_in, first_rng), child(a_out - a_in, second_rng)) if t]

def _prepare(g, params, rng):
    if params.n_global is None:
        params = replace(params, n_global=g.n)
    elif params.n_global < g.n:
        raise ContractViolation("n_global %d is smaller than the graph (%d)" % (params.n_global, g.n))
    if rng is None:
        rng = np.random.default_rng(params.rng_seed)
    return params, rng

def mark_vertices(g, params, stats, rng=None):
    params, rng = _prepare(g, params, rng)
    if g.n == 0:
        return VertexSet.empty(0), VertexSet.empty(0), VertexSet.empty(0)
    return drive(_mark(g, np.arange(g.n), params, rng), stats, "ldd")

def find_balanced_set(g, vprime, params, direction, rng, stats):
    params, rng = _prepare(g, params, rng)
    ids = vprime.ids() if isinstance(vprime, VertexSet) else sorted(vprime)
    return drive(_find_balanced(g, np.arange(g.n), ids, params, direction, rng), stats, "ldd")

def low_diameter_decomposition(g, params, rng, stats):
    if g.min_weight < 0:
        raise ContractViolation("low_diameter_decomposition needs non-negative weights")
    params, rng = _prepare(g, params, rng)
    removed = np.zeros(g.m, dtype=bool)
    if g.n > 1:
        root = _ldd_task(g, Remap(np.arange(g.n), np.arange(g.m)), params, rng, removed)
        run_layers([root], stats, "ldd")
    result = EdgeSet(removed)
    log.debug("LDD::low_diameter_decomposition n=%d m=%d d=%d removed %d" % (g.n, g.m, params.d, len(result)))
    return result
