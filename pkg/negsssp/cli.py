#!/usr/bin/env python3

import argparse
import json
import logging
import sys

from dataclasses import asdict, dataclass

import numpy as np

from . import dimacs, generate
from .conf import settings
from .errors import (ContractViolation, GraphFormatError, RecursionDepthExceeded,
                     RetryBudgetExhausted, WeightBoundExceeded)
from .graph import clamp_nonneg
from .ldd import LddParams, low_diameter_decomposition
from .negcycle import CycleWitness, solve
from .oracle import OracleStats
from .scc import scc_topsort
from .solver import sp_main, sp_main_with_retries
from .utils import Timer, dist_to_json
from .verify import bellman_ford, check_distances, check_labelling, weak_diameter_violations

APP_NAME = 'negsssp'

EXIT_OK       = 0
EXIT_IO       = 1
EXIT_ERROR    = 2
EXIT_MISMATCH = 3

# all-pairs weak diameter check up to this size, sampled sources beyond
FULL_CHECK_N = 200
SAMPLED_SOURCES = 8

log = logging.getLogger('cli')

@dataclass
class RunConfig:
    command:         str
    seed:            int = 0
    input:           str = None
    output:          str = None
    format:          str = "json"
    source:          int = 1
    d:               int = None
    c:               int = None
    k:               int = None
    iters:           int = None
    h3:              int = None
    c_h:             int = None
    retries:         int = None
    restarts:        int = None
    threads:         int = None
    check:           bool = False
    expect_no_cycle: bool = False
    n:               int = 20
    p:               float = 0.2
    wmin:            int = -10
    wmax:            int = 20
    plant_negative_cycle: bool = False
    no_negative_cycle:    bool = False
    cycle_length:    int = 3

    @classmethod
    def from_args(cls, args):
        values = dict((key, getattr(args, key)) for key in cls.__dataclass_fields__ if hasattr(args, key))
        config = cls(**values)
        config.validate()
        return config

    def validate(self):
        if not 0 <= self.seed < 2**64:
            raise ContractViolation("--seed must be a 64-bit unsigned integer")
        for name in ("d", "c", "k", "iters", "h3", "c_h", "threads", "restarts"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ContractViolation("--%s must be >= 1" % name.replace("_", "-"))
        if self.k is not None and self.k < 2:
            raise ContractViolation("--k must be >= 2")
        if self.retries is not None and self.retries < 0:
            raise ContractViolation("--retries must be >= 0")
        if self.source < 1:
            raise ContractViolation("--source is 1-based")
        if self.command == "gen":
            if self.n < 1 or not 0 <= self.p <= 1 or self.wmin > self.wmax:
                raise ContractViolation("gen needs n >= 1, 0 <= p <= 1 and wmin <= wmax")
            if self.plant_negative_cycle and not 1 <= self.cycle_length <= self.n:
                raise ContractViolation("--cycle-length must lie in [1, n]")

    def solver_overrides(self):
        return dict((key, getattr(self, key)) for key in ("k", "iters", "h3") if getattr(self, key) is not None)

    def settings_overrides(self):
        mapping = {"c": "ldd_c", "c_h": "scaledown_c_h", "retries": "sp_main_retries",
                   "restarts": "solve_restarts", "threads": "threads"}
        return dict((key, getattr(self, name)) for name, key in mapping.items() if getattr(self, name) is not None)

    def params(self):
        return {"run": asdict(self), "settings": settings.as_dict()}

def _report(config, stats, **fields):
    fields.update({"seed": config.seed, "params": config.params(), "stats": stats.snapshot()})
    return fields

def _load(config):
    g = dimacs.read(config.input)
    if not 1 <= config.source <= max(g.n, 0):
        raise ContractViolation("--source %d outside vertices 1..%d" % (config.source, g.n))
    return g

def cmd_sssp(config):
    g = _load(config)
    rng = np.random.default_rng(config.seed)
    stats = OracleStats()
    source = config.source - 1

    if config.expect_no_cycle:
        result = sp_main_with_retries(g, source, rng, stats, **config.solver_overrides())
    else:
        result = sp_main(g, source, rng, stats, **config.solver_overrides())

    fields = result.to_json()
    # _report adds the stats snapshot itself
    del fields["stats"]
    report = _report(config, stats, **fields)
    status = EXIT_ERROR if result.error else EXIT_OK

    if config.check:
        if result.error:
            agree = bellman_ford(g).negative_cycle
        else:
            agree = bellman_ford(g, source).distances == result.distances
        report["bellman_ford_agrees"] = agree
        if not agree:
            status = EXIT_MISMATCH
    return status, report

def cmd_solve(config):
    g = _load(config)
    rng = np.random.default_rng(config.seed)
    stats = OracleStats()
    source = config.source - 1

    try:
        result = solve(g, source, rng, stats, **config.solver_overrides())
    except RetryBudgetExhausted as e:
        log.error("CLI::solve %s" % e)
        return EXIT_ERROR, _report(config, stats, error=True, reason=str(e), restarts=e.diagnostics.get("reasons"))

    if isinstance(result, CycleWitness):
        witness = result.to_json()
        witness["cycle"] = [v + 1 for v in witness["cycle"]]
        witness["edges"] = [e + 1 for e in witness["edges"]]
        report = _report(config, stats, error=False, **witness)
        verified = result.verify(g)
    else:
        report = _report(config, stats, error=False, distances=dist_to_json(result))
        verified = check_distances(g, source, result)

    status = EXIT_OK
    if config.check:
        report["verified"] = verified
        if not verified:
            status = EXIT_MISMATCH
    return status, report

def cmd_ldd(config):
    g = _load(config)
    if g.min_weight < 0:
        log.warning("CLI::ldd graph has negative weights, decomposing max(0, w) instead")
        g = clamp_nonneg(g)
    rng = np.random.default_rng(config.seed)
    stats = OracleStats()
    d = config.d or max(1, g.n)

    erem = low_diameter_decomposition(g, LddParams(d=d, c=config.c), rng, stats)
    limit = None if g.n <= FULL_CHECK_N else SAMPLED_SOURCES
    violations = weak_diameter_violations(g, erem, d, limit=limit)
    verdict = "ok" if not violations else "violated"
    report = _report(config, stats, d=d, erem=[e + 1 for e in erem], removed=len(erem),
                     verification={"verdict": verdict, "method": "all-pairs" if limit is None else "sampled",
                                   "violations": [[u + 1, v + 1] for u, v in violations[:20]]})
    return (EXIT_OK if not violations else EXIT_MISMATCH), report

def cmd_scc(config):
    g = _load(config)
    rng = np.random.default_rng(config.seed)
    stats = OracleStats()
    try:
        labels = scc_topsort(g, rng, stats)
    except RecursionDepthExceeded as e:
        log.error("CLI::scc %s" % e)
        return EXIT_ERROR, _report(config, stats, error=True, reason=str(e))

    ok = check_labelling(g, labels)
    report = _report(config, stats, error=False,
                     labels=[[v + 1, r] for v, r in enumerate(labels)],
                     components=len(set(labels)),
                     condensation_edges=labels.condensation_edges(g),
                     check="ok" if ok else "mismatch")
    return (EXIT_OK if ok else EXIT_MISMATCH), report

def cmd_check(config):
    g = _load(config)
    source = config.source - 1
    overrides = config.solver_overrides()
    stats = OracleStats()
    reference = bellman_ford(g, source)
    cyclic = bellman_ford(g).negative_cycle
    checks = {}

    rng = np.random.default_rng(config.seed)
    sssp = sp_main_with_retries(g, source, rng, stats, **overrides)
    if cyclic:
        checks["sssp"] = sssp.error
    else:
        checks["sssp"] = not sssp.error and sssp.distances == reference.distances

    try:
        answer = solve(g, source, rng, stats, **overrides)
        if isinstance(answer, CycleWitness):
            checks["solve"] = cyclic and answer.verify(g)
        else:
            checks["solve"] = not cyclic and answer == reference.distances
    except RetryBudgetExhausted as e:
        log.error("CLI::check solve gave up: %s" % e)
        checks["solve"] = False

    try:
        checks["scc"] = check_labelling(g, scc_topsort(g, rng, stats))
    except RecursionDepthExceeded as e:
        log.error("CLI::check %s" % e)
        checks["scc"] = False

    nonneg = clamp_nonneg(g)
    d = config.d or max(1, g.n)
    erem = low_diameter_decomposition(nonneg, LddParams(d=d, c=config.c), rng, stats)
    limit = None if g.n <= FULL_CHECK_N else SAMPLED_SOURCES
    checks["ldd"] = not weak_diameter_violations(nonneg, erem, d, limit=limit)

    report = _report(config, stats, checks=checks, negative_cycle=cyclic)
    return (EXIT_OK if all(checks.values()) else EXIT_MISMATCH), report

def cmd_gen(config):
    rng = np.random.default_rng(config.seed)
    if config.no_negative_cycle:
        g = generate.cycle_free(config.n, config.p, config.wmin, config.wmax, rng)
    else:
        g = generate.erdos_renyi(config.n, config.p, config.wmin, config.wmax, rng)
        if config.plant_negative_cycle:
            g = generate.plant_negative_cycle(g, config.cycle_length, rng, wmax=max(config.wmax, 0))

    comments = ["generated by %s gen --seed %d" % (APP_NAME, config.seed)]
    if config.output:
        dimacs.write(g, config.output, comments)
        return EXIT_OK, {"seed": config.seed, "n": g.n, "m": g.m, "output": config.output,
                         "negative_cycle": bellman_ford(g).negative_cycle, "params": config.params()}
    sys.stdout.write(dimacs.dumps(g, comments))
    return EXIT_OK, None

COMMANDS = {
    "sssp":  cmd_sssp,
    "solve": cmd_solve,
    "ldd":   cmd_ldd,
    "scc":   cmd_scc,
    "check": cmd_check,
    "gen":   cmd_gen,
}

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_IO, "%s: error: %s\n" % (self.prog, message))

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="64-bit seed, echoed in every report")
    common.add_argument("--config", help="JSON file with settings overrides")
    common.add_argument("--threads", type=int, help="workers for ScaleDown iterations")
    common.add_argument("--format", choices=("json", "tsv"), default="json",
                        help="tsv prints distances only")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true")
    verbosity.add_argument("-q", "--quiet", action="store_true")

    graph = argparse.ArgumentParser(add_help=False)
    graph.add_argument("input", help="graph in DIMACS sp format")
    graph.add_argument("--source", type=int, default=1, help="1-based source vertex")

    solver = argparse.ArgumentParser(add_help=False)
    solver.add_argument("--k", type=int, help="ScaleDown branching base")
    solver.add_argument("--iters", type=int, help="ScaleDown iterations per call")
    solver.add_argument("--h3", type=int, help="EstDist rounds in phase 3")
    solver.add_argument("--c-h", dest="c_h", type=int, help="constant in the default h3")
    solver.add_argument("--c", type=int, help="LDD sample constant")
    solver.add_argument("--retries", type=int, help="sp_main retry budget")
    solver.add_argument("--restarts", type=int, help="solve restart budget")

    parser = _Parser(prog=APP_NAME,
                     description="Negative-weight shortest paths through a metered "
                                 "non-negative SSSP oracle.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sssp", parents=[common, graph, solver], help="run SPMain")
    p.add_argument("--expect-no-cycle", action="store_true", help="retry on ERROR")
    p.add_argument("--check", action="store_true", help="compare with Bellman-Ford")

    p = sub.add_parser("solve", parents=[common, graph, solver], help="distances or a negative cycle")
    p.add_argument("--check", action="store_true", help="verify the answer against the input")

    p = sub.add_parser("ldd", parents=[common, graph], help="low-diameter decomposition")
    p.add_argument("--d", type=int, help="target weak diameter (default n)")
    p.add_argument("--c", type=int, help="LDD sample constant")

    sub.add_parser("scc", parents=[common, graph], help="SCC labels in topological order")

    p = sub.add_parser("check", parents=[common, graph, solver], help="cross-validate everything")
    p.add_argument("--d", type=int, help="LDD diameter (default n)")

    p = sub.add_parser("gen", parents=[common], help="write a random instance")
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--p", type=float, default=0.2)
    p.add_argument("--wmin", type=int, default=-10)
    p.add_argument("--wmax", type=int, default=20)
    p.add_argument("-o", "--output", help="write here instead of stdout")
    p.add_argument("--cycle-length", type=int, default=3)
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--plant-negative-cycle", action="store_true")
    kind.add_argument("--no-negative-cycle", action="store_true")
    return parser

def emit(report, config, stream=None):
    stream = stream or sys.stdout
    if report is None:
        return
    if config.format == "tsv" and isinstance(report.get("distances"), list):
        for v, d in enumerate(report["distances"]):
            stream.write("%d\t%s\n" % (v + 1, d))
        return
    stream.write(json.dumps(report, indent=4, sort_keys=True) + "\n")

def _log_change(name, value):
    log.debug("Settings::%s = %r" % (name, value))

def main(argv=None):
    args = build_parser().parse_args(argv)

    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, stream=sys.stderr, force=True,
                        format="%(asctime)s [%(levelname)8s] %(message)s")

    settings.add_listener(_log_change)
    # --config and the flag overrides last for this run only
    with settings.override(**settings.as_dict()):
        return _run(args)

def _run(args):
    if args.config and not settings.load(args.config):
        return EXIT_IO

    try:
        config = RunConfig.from_args(args)
    except ContractViolation as e:
        log.error("CLI::main %s" % e)
        return EXIT_IO

    timer = Timer()
    try:
        with settings.override(**config.settings_overrides()):
            status, report = COMMANDS[config.command](config)
    except (OSError, GraphFormatError, WeightBoundExceeded) as e:
        log.error("CLI::main cannot use %s: %s" % (config.input or config.output, e))
        return EXIT_IO
    except ContractViolation as e:
        log.error("CLI::main %s" % e)
        return EXIT_IO

    emit(report, config)
    log.info("CLI::main %s finished with status %d in %.1f ms" % (config.command, status, timer.elapsedMs()))
    return status

if __name__ == "__main__":
    sys.exit(main())
