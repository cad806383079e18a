"""Print alpha_n for a curve and check the omega * s = 1 duality.

    python scripts/omega_table.py --curve legendre --prec 12
"""
import argparse

from divops.algebra import LaurentSeries
from divops.cli import resolve_curve
from divops.curve import invariant_differential, omega_series, tangent_coefficient_series


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--curve", default="legendre")
    ap.add_argument("--prec", type=int, default=12)
    args = ap.parse_args()
    c = resolve_curve(args.curve)
    for n, a in enumerate(invariant_differential(c, args.prec), 1):
        print(f"alpha_{n:<3d} {a}")
    one = (omega_series(c, args.prec) * tangent_coefficient_series(c, args.prec)).truncate(args.prec)
    print("omega * s == 1 mod z^%d:" % args.prec, one.agrees_with(LaurentSeries.monomial(c.params, 0, args.prec)))


if __name__ == "__main__":
    main()
