"""Compare the classical and compositional solvers on seeded random Bayesian games."""
import argparse
import random
import sys
import time

from opengames import gen
from opengames.classical import (
    encode_to_open_game,
    enumerate_pure_bayes_nash,
    from_open_profile,
    is_bayes_nash,
    to_open_profile,
)
from opengames.game import enumerate_pure_equilibria, is_equilibrium
from opengames.io import serialize_game


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--games", type=int, default=200)
    ap.add_argument("--profiles", type=int, default=3, help="mixed profiles per game")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    start = time.perf_counter()
    bad = checked = 0
    for k in range(args.games):
        g = gen.bayesian_game(rng)
        og, c = encode_to_open_game(g)
        pure_ok = [from_open_profile(s, g.n) for s in enumerate_pure_equilibria(og, c)] == enumerate_pure_bayes_nash(g)
        mixed_ok = True
        for _ in range(args.profiles):
            s = gen.mixed_profile(rng, g)
            mixed_ok &= is_bayes_nash(g, s) == is_equilibrium(og, c, to_open_profile(s))
            checked += 1
        if not (pure_ok and mixed_ok):
            bad += 1
            print(f"game {k}: disagreement\n{serialize_game(g)}", file=sys.stderr)
    elapsed = time.perf_counter() - start
    print(f"{args.games} games, {checked} mixed profiles, {bad} disagreements ({elapsed:.1f}s)")
    sys.exit(1 if bad else 0)


if __name__ == "__main__":
    main()
