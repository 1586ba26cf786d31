"""Closed form, hypergeometric, quadrature and Fock-trace G^(n) side by side."""

import argparse

from parahbt.hbt import ThermalState
from parahbt.verify import four_way


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, nargs="+", default=[1, 2, 3, 4, 5])
    ap.add_argument("--mean", type=float, nargs="+", default=[0.1, 0.5, 1.0, 2.0, 10.0])
    ap.add_argument("--order", type=int, nargs="+", default=[1, 2, 3, 4])
    args = ap.parse_args(argv)
    print(f"{'p':>2} {'mean':>6} {'n':>2} {'closed-form':>22} {'oracle':>22}"
          f" {'analytic':>9} {'quad':>9} {'excess':>9} ok")
    bad = 0
    for p in args.p:
        for mean in args.mean:
            for n in args.order:
                fw = four_way(n, ThermalState(mean, p))
                bad += not fw.passed
                print(f"{p:>2} {mean:>6g} {n:>2} {fw.values['closed-form'].value:>22.16g}"
                      f" {fw.values['fock-oracle'].value:>22.16g} {fw.analytic_spread:>9.1e}"
                      f" {fw.quadrature_spread:>9.1e} {fw.oracle_excess:>9.1e}"
                      f" {'y' if fw.passed else 'N'}")
    print(f"{bad} failing points")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
