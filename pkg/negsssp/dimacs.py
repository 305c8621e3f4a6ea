"""
Extended DIMACS shortest path files: `p sp <n> <m>`, then `a <u> <v> <w>`
with 1-based vertices and signed integer weights. `c` lines are comments.
Edge ids follow the order of the `a` lines.
"""

import logging

from .errors import ContractViolation, GraphFormatError, WeightBoundExceeded
from .graph import DirectedGraph

log = logging.getLogger('dimacs')

def _ints(fields, line_no, what):
    try:
        return [int(x) for x in fields]
    except ValueError:
        raise GraphFormatError("%s needs integers, got %r" % (what, " ".join(fields)), line_no)

def parse(lines):
    n = m = None
    edges = []
    for line_no, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line[0] == 'c':
            continue
        fields = line.split()
        if fields[0] == 'p':
            if n is not None:
                raise GraphFormatError("second problem line", line_no)
            if len(fields) != 4 or fields[1] != "sp":
                raise GraphFormatError("problem line must read 'p sp <n> <m>'", line_no)
            n, m = _ints(fields[2:], line_no, "problem line")
            if n < 0 or m < 0:
                raise GraphFormatError("negative size in problem line", line_no)
        elif fields[0] == 'a':
            if n is None:
                raise GraphFormatError("arc before the problem line", line_no)
            if len(fields) != 4:
                raise GraphFormatError("arc line must read 'a <u> <v> <w>'", line_no)
            u, v, w = _ints(fields[1:], line_no, "arc line")
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError("arc (%d, %d) outside vertices 1..%d" % (u, v, n), line_no)
            edges.append((u - 1, v - 1, w))
        else:
            raise GraphFormatError("unknown line type %r" % fields[0], line_no)

    if n is None:
        raise GraphFormatError("missing problem line")
    if len(edges) != m:
        raise GraphFormatError("problem line announces %d arcs, found %d" % (m, len(edges)))

    try:
        g = DirectedGraph(n, edges)
    except WeightBoundExceeded:
        raise
    except ContractViolation as e:
        raise GraphFormatError(str(e))
    log.debug("Dimacs::parse read n=%d m=%d" % (g.n, g.m))
    return g

def read(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            return parse(fh)
        except UnicodeDecodeError as e:
            raise GraphFormatError("%s is not UTF-8 text: %s" % (path, e.reason))

def dumps(g, comments=()):
    out = ["c %s" % c for c in comments]
    out.append("p sp %d %d" % (g.n, g.m))
    for u, v, w in g.edges:
        out.append("a %d %d %d" % (u + 1, v + 1, w))
    return "\n".join(out) + "\n"

def write(g, path, comments=()):
    with open(path, "w") as fh:
        fh.write(dumps(g, comments))
