"""Print emitted formula sizes against the quadratic and product bounds."""

import argparse
import random

from atlsc.formula import size
from atlsc.randgen import GameShape, random_atl0, random_game
from atlsc.reductions import TranslationContext, build_memoryless_reduction, phi_out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=5)
    ap.add_argument("--max-states", type=int, default=6)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    p = 2
    print(f"{'Q':>3} {'r':>3} {'|out|':>7} {'ratio':>7} {'|f|':>4} {'|phi|':>8} {'ratio':>7}")
    for n in range(2, args.max_states + 1):
        for r in (2, 3):
            g = random_game(rng, GameShape(n, n, p, r))
            out = size(phi_out(1, g.agents, TranslationContext(g, lam=1)))
            f = random_atl0(rng, g.agents)
            _, phi = build_memoryless_reduction(g, f)
            unit = size(f) * n * (p * r * r + n * n * r ** p)
            print(f"{n:>3} {r:>3} {out:>7} {out / (n * n * r ** p):>7.3f} {size(f):>4} {size(phi):>8} "
                  f"{size(phi) / unit:>7.3f}")


if __name__ == "__main__":
    main()
