"""Point counts on y^2 = x^3 + x and Hasse deviations of random curves.

    python scripts/curve_census.py --limit 500 --random 200
"""

import argparse
import math
import random

from sympy import primerange

from ckde.curve import WeierstrassCurve, discriminant, enumerate_points
from ckde.field import PrimeField


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--limit", type=int, default=500)
    ap.add_argument("--random", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    primes = [p for p in primerange(3, args.limit) if p % 4 == 3]
    bad = [p for p in primes
           if len(enumerate_points(WeierstrassCurve.short(PrimeField(p), 1, 0))) != p + 1]
    print(f"y^2 = x^3 + x: {len(primes)} primes p = 3 mod 4 below {args.limit}, "
          f"{len(bad)} with #E != p + 1")

    rng = random.Random(args.seed)
    pool = list(primerange(5, args.limit))
    worst, done = 0.0, 0
    while done < args.random:
        F = PrimeField(rng.choice(pool))
        E = WeierstrassCurve.from_ints(F, *(rng.randrange(F.p) for _ in range(5)))
        if not discriminant(E):
            continue
        t = len(enumerate_points(E)) - (F.p + 1)
        worst = max(worst, abs(t) / (2 * math.sqrt(F.p)))
        done += 1
    print(f"{done} random curves: max |#E - (p+1)| / 2 sqrt(p) = {worst:.3f}")


if __name__ == "__main__":
    main()
