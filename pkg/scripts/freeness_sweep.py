#!/usr/bin/env python3
"""Freeness sweep: limit moments vs free predictions for Wigner-mixing monomials.

Enumerates every monomial of length <= max-length over {W, kind} containing
both letters, compares the combinatorial limit against the free-family
prediction, and prints the worst deviation.
"""

import argparse
import itertools

from patrm.algebra import Monomial
from patrm.freeness import free_moment_prediction
from patrm.limits import alpha
from patrm.linkfns import LinkKind


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kind", default="T", choices=list("THRS"))
    ap.add_argument("--max-length", type=int, default=6)
    ap.add_argument("--samples", type=int, default=200_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    other = LinkKind.from_char(args.kind)
    worst = (0.0, None)
    rows = 0
    print(f"{'monomial':<14} {'alpha':>9} {'free_pred':>9} {'deviation':>9}")
    for length in range(2, args.max_length + 1):
        for colors in itertools.product((LinkKind.WIGNER, other), repeat=length):
            if len(set(colors)) != 2:
                continue
            q = Monomial(tuple((c, 1) for c in colors))
            a = alpha(q, "mc", samples=args.samples, seed=args.seed)
            pred = free_moment_prediction(q, samples=args.samples, seed=args.seed)
            dev = abs(a - pred)
            rows += 1
            if worst[1] is None or dev > worst[0]:
                worst = (dev, q)
            if dev > 1e-3 or abs(a) > 1e-3:
                print(f"{str(q):<14} {a:9.4f} {pred:9.4f} {dev:9.4f}")
    print(f"\n{rows} monomials over {{W,{args.kind}}}; worst |alpha - prediction| = "
          f"{worst[0]:.4f} ({worst[1]})")


if __name__ == "__main__":
    main()
