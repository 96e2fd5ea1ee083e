"""Write one input document per catalog fixture into data/fixtures/."""
import argparse
from pathlib import Path

from toricdefect.catalog import FIXTURES
from toricdefect.cli import InputDocument, Options, serialize_input


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data" / "fixtures"))
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for f in FIXTURES.values():
        doc = InputDocument(f.name, f.dim, f.vertices, Options(use_hull_points=f.hull_points))
        (out / f"{f.name}.json").write_bytes(serialize_input(doc))
    print(f"wrote {len(FIXTURES)} documents to {out}")


if __name__ == "__main__":
    main()
