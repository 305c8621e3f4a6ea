#!/usr/bin/env python3
"""
Oracle-call scaling of sp_main on cycle-free instances over a doubling
ladder of vertex counts. Prints one TSV row per run on stdout, then the
log-log slope of median batched calls against m. See docs/benchmark.md.
"""

import argparse
import logging
import sys

import numpy as np

from negsssp.generate import cycle_free
from negsssp.oracle import OracleStats
from negsssp.solver import sp_main_with_retries
from negsssp.utils import Timer

log = logging.getLogger('benchmark')

def run(ladder, seeds, degree, wmin, wmax, overrides):
    rows = []
    for n in ladder:
        for seed in range(seeds):
            g = cycle_free(n, min(1.0, degree / n), wmin, wmax, seed=seed)
            stats = OracleStats()
            timer = Timer()
            report = sp_main_with_retries(g, 0, np.random.default_rng(seed), stats, **overrides)
            rows.append((n, g.m, seed, stats.calls, stats.raw_calls, report.retries, int(report.error)))
            log.info("Benchmark::run n=%d seed=%d calls=%d raw=%d in %.1fs"
                     % (n, seed, stats.calls, stats.raw_calls, timer.elapsed()))
    return rows

def summarise(rows, ladder):
    medians = []
    for n in ladder:
        mine = [r for r in rows if r[0] == n]
        medians.append((n, float(np.median([r[1] for r in mine])), float(np.median([r[3] for r in mine]))))
    slope = np.polyfit(np.log([m for _, m, _ in medians]), np.log([c for _, _, c in medians]), 1)[0]
    return medians, float(slope)

def main(argv=None):
    parser = argparse.ArgumentParser(description="sp_main oracle-call scaling ladder")
    parser.add_argument("--ladder", type=int, nargs="+", default=[16, 32, 64, 128])
    parser.add_argument("--seeds", type=int, default=20)
    parser.add_argument("--degree", type=float, default=3.0, help="expected out-degree")
    parser.add_argument("--wmin", type=int, default=-10)
    parser.add_argument("--wmax", type=int, default=20)
    parser.add_argument("--iters", type=int)
    parser.add_argument("--h3", type=int)
    parser.add_argument("-v", "--verbose", action="store_true")
    args = parser.parse_args(argv)

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, stream=sys.stderr,
                        format="%(asctime)s [%(levelname)8s] %(message)s")

    overrides = dict((k, v) for k, v in (("iters", args.iters), ("h3", args.h3)) if v is not None)
    rows = run(args.ladder, args.seeds, args.degree, args.wmin, args.wmax, overrides)

    print("n\tm\tseed\tcalls\traw_calls\tretries\terror")
    for row in rows:
        print("\t".join(str(x) for x in row))

    medians, slope = summarise(rows, args.ladder)
    print("# median calls per n: %s" % ", ".join("%d:%g" % (n, c) for n, _, c in medians))
    print("# log-log slope of calls against m: %.3f" % slope)

    first, last = medians[0][2], medians[-1][2]
    ratio = last / first if first else float("inf")
    print("# calls(n=%d) / calls(n=%d) = %.2f" % (medians[-1][0], medians[0][0], ratio))
    if any(r[6] for r in rows):
        log.error("Benchmark::main some runs still reported ERROR after retries")
        return 2
    if ratio > 64 or slope >= 1.0:
        log.error("Benchmark::main scaling check failed (slope %.3f, ratio %.2f)" % (slope, ratio))
        return 3
    return 0

if __name__ == "__main__":
    sys.exit(main())
