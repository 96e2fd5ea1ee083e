"""Command-line front end.

    toricdefect analyze FILE [--hull-points] [--no-oracle] [--trials N] [--seed N] [--json]
    toricdefect batch DIR [same flags] [--workers N]

Exit codes: 0 trivial, 1 nontrivial, 2 hypotheses unmet, 3 error.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Any, Sequence

from .cayley import enumerate_cayley_structures
from .defect import DefectReport, discriminant_verdict, lattice_defect, reembed
from .errors import ToricError
from .hessian import DEFAULT_TRIALS
from .polytope import MAX_DIM, LatticePolytope, PointConfiguration, convex_hull

EXIT_CODES = {"trivial": 0, "nontrivial": 1, "hypotheses-unmet": 2}
EXIT_ERROR = 3
SAFE_INT = 2**53


class ParseError(ValueError):
    def __init__(self, message: str, location: str):
        super().__init__(f"{location}: {message}")
        self.message = message
        self.location = location


# -- wire format ---------------------------------------------------------------


def encode_ints(obj: Any) -> Any:
    """Replace integers outside the 53-bit range by decimal strings."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) >= SAFE_INT else obj
    if isinstance(obj, (list, tuple)):
        return [encode_ints(x) for x in obj]
    if isinstance(obj, dict):
        return {k: encode_ints(v) for k, v in obj.items()}
    return obj


def _is_big_decimal(s: str) -> bool:
    body = s[1:] if s.startswith("-") else s
    return body.isdigit() and abs(int(s)) >= SAFE_INT


def decode_ints(obj: Any) -> Any:
    """Inverse of ``encode_ints`` on numeric payloads."""
    if isinstance(obj, str) and _is_big_decimal(obj):
        return int(obj)
    if isinstance(obj, list):
        return [decode_ints(x) for x in obj]
    if isinstance(obj, dict):
        return {k: decode_ints(v) for k, v in obj.items()}
    return obj


_FLAT_LIST = re.compile(r"\[\s*((?:-?\d+|\"-?\d+\")(?:,\s*(?:-?\d+|\"-?\d+\"))*)\s*\]")


def dumps(obj: Any) -> str:
    """Indented JSON with integer vectors kept on one line."""
    text = json.dumps(encode_ints(obj), indent=2)
    return _FLAT_LIST.sub(lambda m: "[" + re.sub(r",\s*", ", ", m.group(1)) + "]", text) + "\n"


# -- input ----------------------------------------------------------------------


@dataclass(frozen=True)
class Options:
    use_hull_points: bool = False
    oracle_trials: int = DEFAULT_TRIALS
    seed: int = 0


@dataclass(frozen=True)
class InputDocument:
    name: str
    dim: int
    points: tuple[tuple[int, ...], ...]
    options: Options = field(default_factory=Options)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "points": [list(p) for p in self.points],
            "options": asdict(self.options),
        }

    def configuration(self) -> PointConfiguration:
        A = PointConfiguration(self.dim, self.points)
        if self.options.use_hull_points:
            A = PointConfiguration(self.dim, convex_hull(A).lattice_points)
        return A


def serialize_input(doc: InputDocument) -> bytes:
    return dumps(doc.to_dict()).encode()


def _reject_duplicate_keys(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise ParseError(f"duplicate key {k!r}", "document")
        out[k] = v
    return out


def _integer(x: Any, where: str) -> int:
    if isinstance(x, bool):
        raise ParseError("expected an integer, got a boolean", where)
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        body = x[1:] if x.startswith("-") else x
        if body.isdigit():
            return int(x)
        raise ParseError(f"string {x!r} is not a decimal integer", where)
    raise ParseError(f"expected an integer, got {type(x).__name__}", where)


def _parse_options(raw: Any) -> Options:
    if raw is None:
        return Options()
    if not isinstance(raw, dict):
        raise ParseError("expected an object", "options")
    unknown = sorted(set(raw) - {"use_hull_points", "oracle_trials", "seed"})
    if unknown:
        raise ParseError(f"unknown option {unknown[0]!r}", "options")
    hull = raw.get("use_hull_points", False)
    if not isinstance(hull, bool):
        raise ParseError("expected a boolean", "options.use_hull_points")
    trials = _integer(raw.get("oracle_trials", DEFAULT_TRIALS), "options.oracle_trials")
    if trials < 1:
        raise ParseError("must be positive", "options.oracle_trials")
    seed = _integer(raw.get("seed", 0), "options.seed")
    return Options(hull, trials, seed)


def parse_input(data: bytes | str) -> InputDocument:
    """Strictly validate an input document."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("input is not UTF-8", f"byte {exc.start}") from None
    try:
        raw = json.loads(data, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(raw, dict):
        raise ParseError("expected an object", "document")
    unknown = sorted(set(raw) - {"name", "dim", "points", "options"})
    if unknown:
        raise ParseError(f"unknown field {unknown[0]!r}", "document")
    for key in ("name", "dim", "points"):
        if key not in raw:
            raise ParseError(f"missing field {key!r}", "document")
    name = raw["name"]
    if not isinstance(name, str):
        raise ParseError("expected a string", "name")
    dim = _integer(raw["dim"], "dim")
    if dim < 1:
        raise ParseError("must be positive", "dim")
    rows = raw["points"]
    if not isinstance(rows, list):
        raise ParseError("expected an array of integer arrays", "points")
    if not rows:
        raise ParseError("point list is empty", "points")
    points = []
    seen: dict[tuple[int, ...], int] = {}
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise ParseError("expected an array", f"points[{i}]")
        if len(row) != dim:
            raise ParseError(f"has {len(row)} coordinates, expected {dim}", f"points[{i}]")
        p = tuple(_integer(x, f"points[{i}][{j}]") for j, x in enumerate(row))
        if p in seen:
            raise ParseError(f"duplicates points[{seen[p]}]", f"points[{i}]")
        seen[p] = i
        points.append(p)
    return InputDocument(name, dim, tuple(points), _parse_options(raw.get("options")))


# -- report -----------------------------------------------------------------------


@dataclass(frozen=True)
class ReportDocument:
    input: InputDocument
    hypotheses: dict
    cayley: list
    defect: dict
    verdict: str
    witnesses: dict
    notes: list
    timing: float | None = None

    def to_dict(self) -> dict:
        out = {
            "input": self.input.to_dict(),
            "hypotheses": self.hypotheses,
            "cayley": self.cayley,
            "defect": self.defect,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "notes": self.notes,
        }
        if self.timing is not None:
            out["timing"] = self.timing
        return out

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "ReportDocument":
        inp = d["input"]
        doc = InputDocument(
            inp["name"],
            int(decode_ints(inp["dim"])),
            tuple(tuple(decode_ints(p)) for p in inp["points"]),
            Options(**inp["options"]),
        )
        return cls(
            doc,
            decode_ints(d["hypotheses"]),
            decode_ints(d["cayley"]),
            decode_ints(d["defect"]),
            d["verdict"],
            decode_ints(d["witnesses"]),
            list(d["notes"]),
            d.get("timing"),
        )

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        return cls.from_dict(json.loads(text))

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]


def _vec(v) -> list[int]:
    return [int(x) for x in v]


def _cayley_section(A: PointConfiguration, P: LatticePolytope, ok: bool) -> list:
    if not ok:
        return []
    out = []
    for s in enumerate_cayley_structures(A, P):
        simplex = s.is_simplex_image()
        out.append({
            "pi": [_vec(r) for r in s.pi.matrix],
            "kernel": [_vec(b) for b in s.kernel.basis],
            "image": [_vec(v) for v in s.image.vertices],
            "blocks": [[_vec(p) for p in b.points.points] for b in s.blocks],
            "simplex": simplex,
            "lattice_defect": lattice_defect(s.image).d if simplex else None,
        })
    return out


def _witnesses(rep: DefectReport) -> dict:
    w: dict[str, Any] = {"covering": None, "join_blocks": None, "two_face": None, "reembedding": None}
    if rep.structure is not None:
        st = rep.structure
        w["covering"] = {
            "kernels": [[_vec(b) for b in e.structure.kernel.basis] for e in st.elementary],
            "fibration_lattice": [_vec(b) for b in st.combined_kernel.basis],
            "fiber_factors": [list(f) for f in st.fiber_factors],
            "base_dim": st.base_dim,
            "reduced_fibers": st.reduced_fibers,
        }
    if rep.simplex_witness is not None:
        w["join_blocks"] = [list(b) for b in rep.simplex_witness.blocks]
        w["unique"] = rep.simplex_witness.unique
    if rep.two_face is not None:
        w["two_face"] = [[_vec(v) for v in f.vertices] for f in rep.two_face]
    if rep.reembedding is not None:
        w["reembedding"] = {
            "origin": _vec(rep.reembedding.origin),
            "basis": [_vec(b) for b in rep.reembedding.basis],
        }
    return w


def analyze_document(doc: InputDocument, oracle: bool = True, timing: bool = False) -> ReportDocument:
    """Run the whole pipeline on one document."""
    start = time.perf_counter()
    A = doc.configuration()
    rep = discriminant_verdict(A, oracle=oracle, trials=doc.options.oracle_trials, seed=doc.options.seed)
    B, _ = reembed(A)
    P = convex_hull(B)
    hyp = {
        "configuration": [_vec(a) for a in A.points],
        "ok": rep.hypotheses_ok,
        "simple": rep.simple,
        "vertices": [
            {"vertex": _vec(c.vertex), "generates": c.generates,
             "witness": None if c.witness is None else _vec(c.witness)}
            for c in (rep.embedding.vertices if rep.embedding else ())
        ],
    }
    return ReportDocument(
        doc,
        hyp,
        _cayley_section(B, P, rep.simple),
        {"combinatorial": rep.dual_defect, "oracle": rep.oracle_defect, "agreement": rep.agreement},
        rep.verdict,
        _witnesses(rep),
        list(rep.notes),
        round(time.perf_counter() - start, 6) if timing else None,
    )


# -- rendering ---------------------------------------------------------------------


def _use_color(stream) -> bool:
    return "NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


_COLORS = {"trivial": "32", "nontrivial": "33", "hypotheses-unmet": "31"}


def _paint(text: str, verdict: str, color: bool) -> str:
    return f"\x1b[{_COLORS[verdict]}m{text}\x1b[0m" if color else text


def _fmt(x) -> str:
    return "-" if x is None else str(x)


def render_text(rep: ReportDocument, color: bool = False) -> str:
    h = rep.hypotheses
    bad = [v for v in h["vertices"] if not v["generates"]]
    lines = [
        f"name          {rep.input.name}",
        f"points        |A| = {len(h['configuration'])} in Z^{rep.input.dim}"
        f" ({len(rep.input.points)} listed)",
        f"simple        {'yes' if h['simple'] else 'no'}",
        f"semigroup     {'ok' if not bad else f'fails at {len(bad)} vertices'}"
        f" ({len(h['vertices'])} checked)",
        f"cayley        {len(rep.cayley)} found",
    ]
    for i, c in enumerate(rep.cayley, 1):
        sizes = " ".join(str(len(b)) for b in c["blocks"])
        shape = f"{len(c['image']) - 1}-simplex, def {c['lattice_defect']}" if c["simplex"] else "not a simplex"
        lines.append(f"  [{i}] ker rank {len(c['kernel'])}, S {shape}, blocks {sizes}")
    d = rep.defect
    agree = f" ({d['agreement']})" if d["agreement"] else ""
    lines += [
        f"dual defect   {_fmt(d['combinatorial'])}",
        f"oracle        {_fmt(d['oracle'])}{agree}",
        f"verdict       {_paint(rep.verdict, rep.verdict, color)}",
    ]
    lines += [f"note          {n}" for n in rep.notes]
    if rep.timing is not None:
        lines.append(f"time          {rep.timing:.3f}s")
    return "\n".join(lines) + "\n"


# -- commands ------------------------------------------------------------------------


@dataclass(frozen=True)
class Flags:
    hull_points: bool = False
    oracle: bool = True
    trials: int | None = None
    seed: int | None = None
    json: bool = False
    max_dim: int = MAX_DIM
    timing: bool = False
    workers: int = 1


def _apply_flags(doc: InputDocument, flags: Flags) -> InputDocument:
    opts = doc.options
    if flags.hull_points:
        opts = replace(opts, use_hull_points=True)
    if flags.trials is not None:
        opts = replace(opts, oracle_trials=flags.trials)
    if flags.seed is not None:
        opts = replace(opts, seed=flags.seed)
    if doc.dim > flags.max_dim:
        raise ParseError(f"dimension {doc.dim} exceeds --max-dim {flags.max_dim}", "dim")
    return replace(doc, options=opts)


def load(path: str | Path, flags: Flags) -> InputDocument:
    return _apply_flags(parse_input(Path(path).read_bytes()), flags)


def cmd_analyze(path: str | Path, flags: Flags, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        rep = analyze_document(load(path, flags), flags.oracle, flags.timing)
    except ParseError as exc:
        print(f"{path}: {exc}", file=err)
        return EXIT_ERROR
    except (OSError, ToricError, ValueError) as exc:
        print(f"{path}: {type(exc).__name__}: {exc}", file=err)
        return EXIT_ERROR
    out.write(rep.to_json() if flags.json else render_text(rep, _use_color(out)))
    return rep.exit_code


def _batch_one(path: str, flags: Flags) -> dict:
    try:
        rep = analyze_document(load(path, flags), flags.oracle, flags.timing)
    except Exception as exc:  # isolate every file
        return {"file": Path(path).name, "error": f"{type(exc).__name__}: {exc}"}
    return {"file": Path(path).name, "report": rep.to_dict()}


def run_batch(directory: str | Path, flags: Flags) -> list[dict]:
    files = sorted(str(p) for p in Path(directory).glob("*.json"))
    if flags.workers > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=flags.workers) as pool:
            return list(pool.map(_batch_one, files, [flags] * len(files)))
    return [_batch_one(f, flags) for f in files]


def render_table(results: Sequence[dict], color: bool = False) -> str:
    head = ("file", "name", "defect", "oracle", "agreement", "verdict")
    rows = []
    for r in results:
        if "error" in r:
            rows.append((r["file"], "-", "-", "-", "-", "error"))
            continue
        rep = r["report"]
        d = rep["defect"]
        rows.append((r["file"], rep["input"]["name"], _fmt(d["combinatorial"]), _fmt(d["oracle"]),
                     _fmt(d["agreement"]), rep["verdict"]))
    widths = [max([len(h)] + [len(row[i]) for row in rows]) for i, h in enumerate(head)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(head, widths)).rstrip()]
    for row in rows:
        cells = [c.ljust(w) for c, w in zip(row, widths)]
        if row[-1] in _COLORS:
            cells[-1] = _paint(cells[-1], row[-1], color)
        lines.append("  ".join(cells).rstrip())
    lines += [f"{r['file']}: {r['error']}" for r in results if "error" in r]
    return "\n".join(lines) + "\n"


def cmd_batch(directory: str | Path, flags: Flags, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    if not Path(directory).is_dir():
        print(f"{directory}: not a directory", file=err)
        return EXIT_ERROR
    results = run_batch(directory, flags)
    for r in results:
        if "error" in r:
            print(f"{r['file']}: {r['error']}", file=err)
    if flags.json:
        out.write(dumps({"files": results}))
    else:
        out.write(render_table(results, _use_color(out)))
    return EXIT_ERROR if any("error" in r for r in results) else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--hull-points", action="store_true", help="use all lattice points of Conv(A) as A")
    common.add_argument("--no-oracle", action="store_true", help="skip the Hessian rank oracle")
    common.add_argument("--trials", type=int, help="oracle trials (overrides the document)")
    common.add_argument("--seed", type=int, help="oracle seed (overrides the document)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--max-dim", type=int, default=MAX_DIM, help="reject inputs of larger dimension")
    common.add_argument("--timing", action="store_true", help="include wall time (breaks byte determinism)")

    parser = argparse.ArgumentParser(prog="toricdefect", description="Dual defect and A-discriminant analysis")
    sub = parser.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", parents=[common], help="analyze one input document")
    a.add_argument("path")
    b = sub.add_parser("batch", parents=[common], help="analyze every *.json file in a directory")
    b.add_argument("directory")
    b.add_argument("--workers", type=int, default=1)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.trials is not None and args.trials < 1:
        print("--trials must be positive", file=sys.stderr)
        return EXIT_ERROR
    flags = Flags(
        hull_points=args.hull_points,
        oracle=not args.no_oracle,
        trials=args.trials,
        seed=args.seed,
        json=args.json,
        max_dim=args.max_dim,
        timing=args.timing,
        workers=getattr(args, "workers", 1),
    )
    if args.command == "analyze":
        return cmd_analyze(args.path, flags)
    return cmd_batch(args.directory, flags)
