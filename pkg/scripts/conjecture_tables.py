"""Print last-violation tables for both family pairs and t = 2..10."""

from __future__ import annotations

import argparse

from hookbias import scan


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=120)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    print(f"{'t':>3} {'odd/distinct':>14} {'selfconj/distinct-odd':>22}")
    for t in range(2, 11):
        a = scan.scan_bias("odd_vs_distinct", t, args.n_max, threads=args.threads).last_violation
        b = scan.scan_bias("selfconj_vs_distinctodd", t, args.n_max, threads=args.threads).last_violation
        print(f"{t:>3} {str(a):>14} {str(b):>22}")
    cong = scan.scan_congruence(5, min(args.n_max, 70))
    print("congruences:", "ok" if cong.passed else cong.nonzero)


if __name__ == "__main__":
    main()
