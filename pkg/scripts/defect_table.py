"""Print the dual defect of each catalog variety next to its known value."""
import argparse

from toricdefect.catalog import FIXTURES
from toricdefect.defect import discriminant_verdict

# known dual defects of the varieties in the catalog
KNOWN = {
    "line": 1, "plane": 2, "space": 3, "conic_cone": 1, "veronese_triangle": 0,
    "square": 0, "cube": 0, "cubic_scroll": 0, "plane_x_line": 1, "conic_join": 1,
    "conic_cone_line_vertex": 2, "veronese_cone": 1, "conic_cone_x_line": 0,
    "plane_bundle": 1, "point_blowup": 0, "quadric_cone_x_line": 1,
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print(f"{'fixture':24} {'n':>2} {'|A|':>4} {'def':>4} {'oracle':>6} {'known':>5}  verdict")
    mismatches = 0
    for name, f in FIXTURES.items():
        A = f.configuration()
        r = discriminant_verdict(A, trials=args.trials, seed=args.seed)
        known = KNOWN.get(name)
        ok = known is None or r.dual_defect == known
        mismatches += not ok
        print(f"{name:24} {A.dim:>2} {len(A):>4} {str(r.dual_defect):>4} {str(r.oracle_defect):>6}"
              f" {str(known):>5}  {r.verdict}{'' if ok else '  MISMATCH'}")
    raise SystemExit(1 if mismatches else 0)


if __name__ == "__main__":
    main()
