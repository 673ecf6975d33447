#!/usr/bin/env python3
"""Measure how the stationary-phase approximation error falls with the level.

For a chosen manifold and tail order K, evaluates the exact normalized
invariant against dominant + tail over a doubling ladder of levels and
prints the error ratios (expected to approach 2^(K+1)).

Usage:
    python scripts/asymptotic_scaling.py --p 2,3,7 --K 2 --start 32 --doublings 4
"""

import argparse
import time

from mpmath import mp

from brieskorn_wrt import BrieskornTriple, PrecisionContext, asymptotic_approx


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--p", default="2,3,7", help="p1,p2,p3")
    parser.add_argument("--K", type=int, default=2, help="tail truncation order")
    parser.add_argument("--start", type=int, default=32, help="first level")
    parser.add_argument("--doublings", type=int, default=4)
    parser.add_argument("--precision", type=int, default=50)
    args = parser.parse_args()

    p = BrieskornTriple(*(int(t) for t in args.p.split(",")))
    ctx = PrecisionContext(args.precision)
    print(f"# {p}, K={args.K}, target ratio 2^(K+1) = {2 ** (args.K + 1)}")
    print(f"{'N':>6} {'abs_error':>14} {'ratio':>8} {'seconds':>8}")
    previous = None
    with ctx.workdps():
        for i in range(args.doublings + 1):
            level = args.start * 2**i
            started = time.monotonic()
            approx = asymptotic_approx(p, level, args.K, ctx)
            elapsed = time.monotonic() - started
            ratio = "" if previous is None else mp.nstr(previous / approx.abs_error, 4)
            print(
                f"{level:>6} {mp.nstr(approx.abs_error, 6):>14} {ratio:>8} {elapsed:>8.2f}"
            )
            previous = approx.abs_error


if __name__ == "__main__":
    main()
