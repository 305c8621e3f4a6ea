"""
ScaleDown and SPMain.

sp_main scales the input weights by 2n, then halves the negative floor
log2(B) times with scale_down. Each scale_down round combines a
low-diameter decomposition, an SCC labelling, a recursive call on the
pieces, FixDAGEdges on the DAG edges and a final EstDist pass, and keeps
the pointwise minimum over `iters` independent tries.

Parameters are keyed to the global vertex count: k = 2^ceil(sqrt(log2 n)),
iters = 10 ceil(log2 n), h3 = c_h ceil(log2 n)^2 k.
"""

import logging
import math

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

from .conf import settings
from .errors import ContractViolation, PreconditionViolated, RecursionDepthExceeded
from .graph import PriceFunction, add_dummy_source, clamp_nonneg, raise_negative, reweight, scale
from .ldd import LddParams, low_diameter_decomposition
from .oracle import OracleQuery, OracleStats, oracle_query
from .potentials import certify_nonneg, est_dist, fix_dag_edges
from .scc import scc_topsort
from .utils import INF, ceil_log2, dist_to_json

log = logging.getLogger('solver')

@dataclass(frozen=True)
class ScaleDownParams:
    delta:    int
    B:        int
    k:        int
    iters:    int
    h3:       int
    n_global: int

    def __post_init__(self):
        if self.delta < 1 or self.delta > max(self.n_global, 1):
            raise ContractViolation("delta must lie in [1, n], got %d for n = %d" % (self.delta, self.n_global))
        if self.B < 0:
            raise ContractViolation("B must be >= 0, got %d" % self.B)
        if self.k < 2 or self.iters < 1 or self.h3 < 1:
            raise ContractViolation("need k >= 2, iters >= 1, h3 >= 1 (got %d, %d, %d)"
                                    % (self.k, self.iters, self.h3))

    @classmethod
    def for_graph(cls, n, delta, B, k=None, iters=None, h3=None):
        log_n = max(1, ceil_log2(n))
        if k is None:
            k = max(2, 2 ** math.ceil(math.sqrt(math.log2(n)))) if n > 1 else 2
        if iters is None:
            iters = 10 * log_n
        if h3 is None:
            h3 = settings.scaledown_c_h * log_n * log_n * k
        return cls(delta=delta, B=B, k=k, iters=iters, h3=h3, n_global=max(n, 1))

    def descend(self):
        return replace(self, delta=self.delta // self.k)

@dataclass
class SpMainReport:
    distances: list
    error:     bool
    phi_final: PriceFunction
    stats:     OracleStats
    retries:   int = 0
    reason:    str = field(default=None)

    def to_json(self):
        return {
            "distances": dist_to_json(self.distances) if self.distances is not None else None,
            "error":     self.error,
            "reason":    self.reason,
            "retries":   self.retries,
            "stats":     self.stats.snapshot(),
        }

def _iteration(g, gB, clamped, params, rng, depth):
    stats = OracleStats()
    ldd_rng, scc_rng, rec_rng = rng.spawn(3)
    n = g.n

    # phase 0: pieces of weak diameter (delta // k) * B
    d = max(1, (params.delta // params.k) * params.B)
    erem = low_diameter_decomposition(clamped, LddParams(d=d, n_global=params.n_global), ldd_rng, stats)
    stats.note_erem(depth, len(erem))
    labels = scc_topsort(g.remove_edges(erem), scc_rng, stats)

    # phase 1: recurse inside the SCCs
    H = g.keep_edges([labels[u] == labels[v] for u, v in zip(g.tails, g.heads)])
    phi1 = scale_down(H, params.descend(), rec_rng, stats, depth + 1)

    # phase 2: DAG edges
    try:
        psi2 = fix_dag_edges(reweight(gB, phi1).remove_edges(erem), labels)
    except PreconditionViolated as e:
        log.debug("ScaleDown::iteration depth %d FixDAGEdges post-check failed on edge %d"
                  % (depth, e.witness.edge))
        psi2 = e.price
    phi2 = phi1 + psi2

    # phase 3
    gBs, s = add_dummy_source(gB)
    result = est_dist(reweight(gBs, phi2.extend(0)), s, params.h3, stats)
    return [result.dtilde[v] + phi2[v] for v in range(n)], stats

def scale_down(g, params, rng, stats, depth=1):
    """
    Price function phi with w_phi(e) >= -B for every edge, with high
    probability, provided w >= -2B and eta(G^B) <= delta.
    """
    stats.note_depth("scaledown", depth)
    n = g.n
    gB = raise_negative(g, params.B)

    if params.delta <= params.k:
        gBs, s = add_dummy_source(gB)
        return PriceFunction(est_dist(gBs, s, params.k, stats).dtilde[:n])

    clamped = clamp_nonneg(gB)
    streams = rng.spawn(params.iters)

    def run(stream):
        return _iteration(g, gB, clamped, params, stream, depth)

    if depth == 1 and settings.threads > 1 and params.iters > 1:
        with ThreadPoolExecutor(max_workers=settings.threads) as pool:
            outcomes = list(pool.map(run, streams))
    else:
        outcomes = [run(stream) for stream in streams]

    phi = [INF] * n
    for estimate, local in outcomes:
        stats.merge(local)
        phi = [min(a, b) for a, b in zip(phi, estimate)]
    log.debug("ScaleDown::scale_down depth %d delta %d B %d done" % (depth, params.delta, params.B))
    return PriceFunction(phi)

def _next_pow2(x):
    return 1 << (x - 1).bit_length()

def _error(phi, stats, reason):
    log.debug("SPMain::sp_main ERROR: %s" % reason)
    return SpMainReport(distances=None, error=True, phi_final=phi, stats=stats, reason=reason)

def sp_main(g, source, rng, stats, k=None, iters=None, h3=None):
    n = g.n
    if not 0 <= source < n:
        raise ContractViolation("source %d outside [0, %d)" % (source, n))

    if g.min_weight >= 0:
        dist = oracle_query(OracleQuery(g, source=source), stats, "spmain")
        return SpMainReport(distances=dist, error=False, phi_final=PriceFunction.zeros(n), stats=stats)

    two_n = 2 * n
    gbar = scale(g, two_n)
    B = _next_pow2(-gbar.min_weight)
    phi = PriceFunction.zeros(n)

    try:
        for i in range(1, B.bit_length()):
            floor = B >> i
            params = ScaleDownParams.for_graph(n, delta=n, B=floor, k=k, iters=iters, h3=h3)
            phi = phi + scale_down(reweight(gbar, phi), params, rng, stats)
            witness = certify_nonneg(gbar, phi, -floor)
            if witness is not None:
                return _error(phi, stats, "round %d left edge %d at %d < -%d"
                              % (i, witness.edge, witness.weight, floor))
    except RecursionDepthExceeded as e:
        return _error(phi, stats, str(e))

    gstar = reweight(gbar, phi)
    gstar = gstar.with_weights([w + 1 for w in gstar.weights])
    if gstar.min_weight < 0:
        return _error(phi, stats, "G* has an edge of weight %d" % gstar.min_weight)

    dstar = oracle_query(OracleQuery(gstar, source=source), stats, "spmain")
    offset = phi[source]
    dist = [(INF if x == INF else (x - offset + phi[v]) // two_n) for v, x in enumerate(dstar)]
    return SpMainReport(distances=dist, error=False, phi_final=phi, stats=stats)

def sp_main_with_retries(g, source, rng, stats, retries=None, **overrides):
    """
    Rerun sp_main with fresh randomness while it reports ERROR. Meant for
    callers that know the input has no negative cycle.
    """
    if retries is None:
        retries = settings.sp_main_retries
    for attempt in range(retries + 1):
        report = sp_main(g, source, rng, stats, **overrides)
        report.retries = attempt
        if not report.error:
            return report
        log.info("SPMain::retry %d/%d after ERROR (%s)" % (attempt + 1, retries, report.reason))
    return report
