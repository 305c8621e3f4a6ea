import logging

from collections import namedtuple
from dataclasses import dataclass, field

from .errors import ContractViolation, PreconditionViolated
from .graph import PriceFunction
from .oracle import OracleQuery, oracle_query
from .utils import INF, dist_add

log = logging.getLogger('potentials')

Witness = namedtuple("Witness", ["edge", "tail", "head", "weight"])

@dataclass
class EstDistResult:
    dtilde:  list
    h_used:  int
    B_shift: int
    calls:   int = field(default=0)

def certify_nonneg(g, phi, floor):
    """
    None when every reweighted edge is >= floor, otherwise the edge with
    the smallest reweighted weight.
    """
    if len(phi) != g.n:
        raise ContractViolation("price function has length %d, graph has %d vertices" % (len(phi), g.n))
    worst = None
    for eid, (u, v, w) in enumerate(zip(g.tails, g.heads, g.weights)):
        reweighted = w + phi[u] - phi[v]
        if reweighted < floor and (worst is None or reweighted < worst.weight):
            worst = Witness(eid, u, v, reweighted)
    return worst

def fix_dag_edges(g, labels):
    if len(labels) != g.n:
        raise ContractViolation("labelling has length %d, graph has %d vertices" % (len(labels), g.n))
    B = -min(0, g.min_weight)
    psi = PriceFunction([B * r for r in labels])

    witness = certify_nonneg(g, psi, 0)
    if witness is not None:
        log.debug("FixDAGEdges::post-check edge %d (%d -> %d) left at %d"
                  % (witness.edge, witness.tail, witness.head, witness.weight))
        raise PreconditionViolated("edge %d stays negative after FixDAGEdges" % witness.edge,
                                   witness=witness, price=psi)
    return psi

def est_dist(g, s, h, stats):
    """
    Distance estimates from s after h rounds of one Bellman-Ford relaxation
    followed by an oracle call. Exact for every v that has a shortest path
    with at most h negative edges, an upper bound elsewhere. Always makes
    exactly h + 1 oracle calls.
    """
    if h < 0:
        raise ContractViolation("est_dist needs h >= 0, got %d" % h)
    if not 0 <= s < g.n:
        raise ContractViolation("source %d outside [0, %d)" % (s, g.n))

    shift = max(0, -(h + 1) * g.min_weight)
    shifted = [(w + shift if u == s else w) for u, w in zip(g.tails, g.weights)]
    H0 = g.with_weights([max(0, w) for w in shifted])
    core = H0.keep_edges([u != s for u in g.tails])
    real = [(u, v, w) for u, v, w in zip(g.tails, g.heads, shifted) if u != s]

    d = oracle_query(OracleQuery(H0, source=s), stats, "estdist")

    previous = None
    attachments = None
    for i in range(h):
        if d != previous:
            relaxed = list(d)
            for u, v, w in real:
                nd = dist_add(d[u], w)
                if nd < relaxed[v]:
                    relaxed[v] = nd
            attachments = [(s, 0)] + [(v, x) for v, x in enumerate(relaxed) if v != s and x != INF]
        previous = d
        d = oracle_query(OracleQuery(core, attachments=attachments), stats, "estdist")

    dtilde = [(x if x == INF else x - shift) for x in d]
    dtilde[s] = 0
    return EstDistResult(dtilde=dtilde, h_used=h, B_shift=shift, calls=h + 1)
