"""Plain vs Stirling-corrected p-Gaussian against the exact p-Poisson law.

For each even n within two standard deviations, prints the absolute error
of the plain density and of both coefficient sets of the corrected one.
"""

import argparse
import math

from parahbt import coherent as co


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--x", type=float, default=100.0)
    ap.add_argument("--p", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--width", type=float, default=2.0, help="half-width in units of sigma")
    args = ap.parse_args(argv)
    print(f"{'p':>2} {'n':>5} {'y':>7} {'exact':>12} {'plain':>10} {'consistent':>10}"
          f" {'printed':>10}")
    for p in args.p:
        m = co.coherent_moments(args.x, p)
        sigma = math.sqrt(m.variance)
        lo = math.ceil(m.mean - args.width * sigma)
        for n in range(lo + lo % 2, math.floor(m.mean + args.width * sigma) + 1, 2):
            exact = co.p_poisson_pmf(n, args.x, p)
            errs = (abs(co.p_gaussian_pdf(n, args.x, p) - exact),
                    abs(co.p_gaussian_correction(n, args.x, p, "consistent") - exact),
                    abs(co.p_gaussian_correction(n, args.x, p, "printed") - exact))
            flag = "" if errs[1] < errs[0] else "  <- plain wins"
            print(f"{p:>2} {n:>5} {(n - m.mean) / sigma:>7.3f} {exact:>12.5e}"
                  + "".join(f" {e:>10.2e}" for e in errs) + flag)


if __name__ == "__main__":
    main()
