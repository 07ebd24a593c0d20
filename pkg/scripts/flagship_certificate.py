"""Thresholds and exact verification for the t = 3 shifted-coefficient inequality."""

from __future__ import annotations

import argparse

from hookbias import certify


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--long", action="store_true", help="check every n up to the threshold")
    ap.add_argument("--optimize", action="store_true", help="also search for a better (A, B, C)")
    args = ap.parse_args()
    spec = certify.paper_t3_spec()
    th = certify.thresholds(*certify.PAPER_T3_ABC, float(spec.epsilon), spec.L)
    print(f"eps = {float(spec.epsilon)}  L = {spec.L}  lhs terms = {len(spec.lhs)}")
    print(f"N_A = {th.N_A:.3f}  N_B = {th.N_B:.3f}  N_C = {th.N_C:.3f}  N_D = {th.N_D:.3f}  N = {th.N:.3f}")
    stop = int(th.N) if args.long else 10_000
    bad = certify.violations(spec, 25, stop)
    print(f"violations on [25, {stop}]: {bad or 'none'}")
    print(f"violations on [0, 24]: {certify.violations(spec, 0, 24)}")
    if args.optimize:
        r = certify.optimize_abc(float(spec.epsilon), spec.L)
        print(f"optimised: A = {r.A:.4f}  B = {r.B:.4f}  C = {r.C:.4f}  N = {r.N:.2f}")


if __name__ == "__main__":
    main()
