"""Compare the combinatorial dual defect with the Hessian oracle on random polytopes.

Random lattice polytopes are drawn as hulls of small point sets; those
meeting the hypotheses are compared. Any strict disagreement is printed.
"""
import argparse
import random
from collections import Counter

from toricdefect.defect import discriminant_verdict
from toricdefect.polytope import LatticePolytope, PointConfiguration


def random_configuration(rng: random.Random, n: int, box: int) -> PointConfiguration | None:
    pts = {tuple(rng.randint(0, box) for _ in range(n)) for _ in range(rng.randint(n + 1, n + 4))}
    P = LatticePolytope(pts)
    if not P.is_full_dimensional:
        return None
    return PointConfiguration(n, P.lattice_points)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--max-dim", type=int, default=3)
    ap.add_argument("--box", type=int, default=2)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    tally: Counter = Counter()
    while sum(tally.values()) < args.samples:
        A = random_configuration(rng, rng.randint(2, args.max_dim), args.box)
        if A is None:
            continue
        r = discriminant_verdict(A, seed=rng.randrange(2**31))
        tally[(r.verdict, r.agreement)] += 1
        if r.agreement not in (None, "certified"):
            print(f"disagreement on {A.points}: def {r.dual_defect}, oracle {r.oracle_defect}")
    for (verdict, agreement), k in sorted(tally.items(), key=str):
        print(f"{verdict:18} {str(agreement):14} {k}")


if __name__ == "__main__":
    main()
