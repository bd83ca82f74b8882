"""Ratio of the exact Q_n(x) to the fixed-x limit formulas over doubling n.

    python3 scripts/fixed_x_study.py --x 3.3 --x -1.7 --n 32,64,128,256,512
"""

import argparse
import math
import sys

from hahn_asym.asymptotics import asym_fixed_x
from hahn_asym.oracle import HahnParams, eval_Q_exact


def ratio_error(p, x):
    q = eval_Q_exact(p, x)
    f = asym_fixed_x(p, x)
    if f.zero_leading or q == 0:
        return math.nan
    sign = math.copysign(1, q.real) * f.sign
    return abs(sign * math.exp(math.log(abs(float(q.real))) - f.log_abs) - 1)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha", type=float, default=0.3)
    ap.add_argument("--beta", type=float, default=0.7)
    ap.add_argument("--c", type=float, default=0.5)
    ap.add_argument("--n", default="32,64,128,256")
    ap.add_argument("--x", type=float, action="append")
    args = ap.parse_args(argv)
    ns = [int(s) for s in args.n.split(",")]
    print("x,n,abs_ratio_minus_1")
    for x in args.x or [3.3, -1.7]:
        errs = []
        for n in ns:
            e = ratio_error(HahnParams.from_ratio(args.alpha, args.beta, args.c, n), x)
            errs.append(e)
            print(f"{x:.16e},{n},{e:.16e}")
        mono = all(a > b for a, b in zip(errs, errs[1:]))
        print(f"# x={x}: strictly decreasing={mono}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
