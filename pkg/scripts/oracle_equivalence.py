"""Compare the direct memoryless engine with the reduction to QCTL* on random games."""

import argparse
import random
import time

from atlsc.qctl import check_structure
from atlsc.randgen import GameShape, random_atl0, random_game
from atlsc.reductions import build_memoryless_reduction
from atlsc.strategies import check_memoryless
from atlsc.syntax import to_text


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cases", type=int, default=200)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--max-states", type=int, default=4)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    start = time.perf_counter()
    agree = true = 0
    for i in range(args.cases):
        g = random_game(rng, GameShape(max_states=args.max_states))
        f = random_atl0(rng, g.agents)
        direct = check_memoryless(g, "q0", f).verdict
        k, phi = build_memoryless_reduction(g, f)
        reduced = check_structure(k, "q0", phi)
        agree += direct == reduced
        true += direct
        if direct != reduced:
            print(f"mismatch {i}: direct={direct} reduction={reduced} {to_text(f)}")
    secs = time.perf_counter() - start
    print(f"{agree}/{args.cases} agree, {true} true, {secs:.1f}s")


if __name__ == "__main__":
    main()
