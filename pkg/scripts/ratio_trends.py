"""Ratios a_t(n)/b_t(n) for t = 2, 3 against their limits."""

from __future__ import annotations

import argparse
import math

from hookbias import genfun


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--order", type=int, default=5000)
    args = ap.parse_args()
    s = {k: genfun.build(k, args.order).series for k in ("a2", "b2", "a3", "b3")}
    lim2, lim3 = 1.5, 2 / (3 * (math.log(2) - 0.125))
    n = 250
    while n <= args.order:
        r2, r3 = s["a2"][n] / s["b2"][n], s["a3"][n] / s["b3"][n]
        print(f"{n:>6}  a2/b2 = {r2:.5f} ({r2 - lim2:+.4f})  a3/b3 = {r3:.5f} ({r3 - lim3:+.4f})")
        n *= 2


if __name__ == "__main__":
    main()
