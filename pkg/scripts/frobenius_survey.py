"""Frobenius compatibility of single generators Lambda_n(b_-r), with and without
the parameter twist, over a range of n and primes.

    python scripts/frobenius_survey.py --max-n 6 --primes 2,3,5
"""
import argparse

from divops.cli import resolve_curve
from divops.heisenberg import generator
from divops.psi import verify_frobenius


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--curve", default="legendre")
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--scales", default="1,2")
    ap.add_argument("--primes", default="2,3,5")
    ap.add_argument("--prec", type=int, default=30)
    args = ap.parse_args()
    c = resolve_curve(args.curve)
    print(f"{'element':14s} {'p':>2s}  twisted  untwisted")
    for r in (int(s) for s in args.scales.split(",")):
        for n in range(1, args.max_n + 1):
            for p in (int(s) for s in args.primes.split(",")):
                e = generator(n, r)
                tw = verify_frobenius(e, c, p, args.prec).verdict
                lit = verify_frobenius(e, c, p, args.prec, twist=False).verdict
                print(f"L{n}(b_-{r})".ljust(14), f"{p:2d}  {str(tw):7s}  {lit}")


if __name__ == "__main__":
    main()
