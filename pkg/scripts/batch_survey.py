"""Run the batch verifier on several curves and summarize findings.

    python scripts/batch_survey.py --degree 3 --primes 2,3 --out reports/survey
"""
import argparse
import json
import time
from pathlib import Path

from divops.cli import resolve_curve
from divops.psi import batch_verify


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--curves", default="legendre,tate,general")
    ap.add_argument("--degree", type=int, default=3)
    ap.add_argument("--primes", default="2,3")
    ap.add_argument("--prec", type=int, default=24)
    ap.add_argument("--out", default="reports/survey")
    args = ap.parse_args()
    primes = [int(p) for p in args.primes.split(",") if p]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name in args.curves.split(","):
        c = resolve_curve(name)
        t0 = time.perf_counter()
        res = batch_verify(c, args.degree, primes, args.prec)
        dt = time.perf_counter() - t0
        (out / f"{c.name}.json").write_text(res.to_json() + "\n")
        print(f"{c.name:10s} subjects={len(res.reports):3d} findings={len(res.findings()):3d} "
              f"verdict={res.verdict} ({dt:.1f}s)")
        for f in res.findings():
            print("   ", json.dumps(f, sort_keys=True))


if __name__ == "__main__":
    main()
