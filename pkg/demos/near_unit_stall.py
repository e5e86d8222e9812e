#!/usr/bin/env python3
"""Show the construction stalling as the coupling approaches 1.

At s = s*(lam)/2 the greedy caterpillar converges superexponentially.
Push s toward 1 with lam fixed and the contraction window collapses:
theta' - delta and theta' pinch together, leaf counts lose influence,
and the radius freezes far from lam no matter how long the backbone.
"""

import argparse

from deflap import PrecisionContext, convergence_report, s_star


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lam", default="5.4")
    ap.add_argument("--k", type=int, default=150)
    ap.add_argument("--digits", type=int, default=50)
    args = ap.parse_args()

    ctx = PrecisionContext(args.digits)
    lam = ctx.scalar(args.lam)
    half = s_star(lam).halved()
    print("lam = %s, s* = %s" % (args.lam, s_star(lam).to_decimal_string(12)))
    print()
    print("%8s  %s" % ("s", "lam - rho(T_%d)" % args.k))

    for s in [half] + [ctx.scalar(t) for t in ("0.9", "0.99", "0.999", "0.9999")]:
        report = convergence_report(lam, s, [args.k], ctx=ctx)
        row = report.rows[0]
        label = "s*/2" if s is half else s.to_decimal_string(6)
        print("%8s  %s" % (label, row.error.to_decimal_string(6)))

    print()
    print("the last two rows sit above 1e-2 with %d backbone vertices:" % args.k)
    print("near unit coupling the window is too thin for progress, which")
    print("is why the threshold s*(lam) and not s = 1 governs reachability.")


if __name__ == "__main__":
    main()
