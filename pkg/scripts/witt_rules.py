"""Compare the invariant Witt fields with the alternative index rule.

    python scripts/witt_rules.py --N 6
"""
import argparse

from divops.witt import check_commuting, check_invariance, commutator, psi_univ, psi_univ_displayed


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--N", type=int, default=6)
    args = ap.parse_args()
    N = args.N
    for name, rule in (("invariant", psi_univ), ("alternative", psi_univ_displayed)):
        print(f"== {name} rule")
        for i in range(1, N + 1):
            print(f"  D{i} = {rule(i, N)}")
        print("  commute:", bool(check_commuting(N, rule)))
        for i in range(1, N):
            for j in range(i + 1, N):
                c = commutator(rule(i, N), rule(j, N))
                if not c.is_zero():
                    print(f"  [D{i}, D{j}] = {c}")
        print("  non-invariant i:", [i for i in range(1, N + 1) if not check_invariance(i, N, rule(i, N))])


if __name__ == "__main__":
    main()
