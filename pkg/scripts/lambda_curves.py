"""Normalized second-order correlation lambda_p across the mean occupation.

Prints CSV (p, mean_n, lambda_p, g1, g2) on a log-spaced grid; the dilute
end should sit at 2/p and the dense end at 2.
"""

import argparse
import sys

import numpy as np

from parahbt.cli import fmt
from parahbt.hbt import ThermalState, g_closed, lambda_p


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, nargs="+", default=[1, 2, 3, 4, 5])
    ap.add_argument("--start", type=float, default=-6.0, help="log10 of the smallest mean")
    ap.add_argument("--stop", type=float, default=4.0, help="log10 of the largest mean")
    ap.add_argument("--num", type=int, default=41)
    args = ap.parse_args(argv)
    out = sys.stdout
    out.write("p,mean_n,lambda_p,g1,g2\n")
    for p in args.p:
        for mean in np.logspace(args.start, args.stop, args.num):
            state = ThermalState(float(mean), p)
            g1, g2 = g_closed(1, state).value, g_closed(2, state).value
            out.write(",".join(fmt(v) for v in (p, mean, lambda_p(state), g1, g2)) + "\n")


if __name__ == "__main__":
    main()
