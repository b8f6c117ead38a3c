"""Command-line front end: ``stratspine {build,spine,ih,check,export}``.

Structured output is JSON on stdout (or ``--out``); progress and warnings go
to stderr. Exit codes: 0 success, 2 usage error, 3 bad input data, 4 a check
failed under ``--strict``.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .complex import fullness_violation, pseudomanifold_violation
from .errors import StratSpineError
from .ihomology import FilteredComplex, intersection_betti, parse_perversity
from .io import ComplexDocument, dumps, read_complex, to_doc
from .layered import layered_spine, ordinary_spine_logged
from .rips import RipsParams, read_points, read_singular_ids, to_divided, vietoris_rips

log = logging.getLogger("stratspine")

EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_CHECK = 4


@dataclass
class RunReport:
    input: str
    mode: str
    seed: int | None
    counts_before: list[int]
    counts_after: list[int] = field(default_factory=list)
    collapses: dict[str, int] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)
    betti: dict[str, list[int]] = field(default_factory=dict)
    codim: int | None = None
    checks: dict[str, dict] = field(default_factory=dict)

    def arithmetic_ok(self) -> bool:
        """Each collapse removes two simplices."""
        return sum(self.counts_before) - 2 * sum(self.collapses.values()) == sum(self.counts_after)

    def to_json(self) -> dict:
        out = asdict(self)
        out["arithmetic_ok"] = self.arithmetic_ok()
        return out


def _emit(doc, out: Path | None) -> None:
    text = dumps(doc)
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _counts_line(counts: list[int]) -> str:
    return " ".join(f"dim{k}={c}" for k, c in enumerate(counts))


def _resolve_codim(args, doc: ComplexDocument, S) -> int | None:
    if not len(S):
        return None
    if args.codim is not None:
        return args.codim
    codim = doc.meta.get("codim")
    if codim is None:
        codim = FilteredComplex.geometric_codim(doc.K, S)
        log.warning("no --codim given; using geometric codimension %d", codim)
    return codim


def _betti_table(K, S, codim, perversities, force_nonfull: bool) -> tuple[dict[str, list[int]], bool]:
    F = FilteredComplex(K, S, codim=codim, allow_nonfull=force_nonfull)
    if F.approximate:
        log.warning("singular subcomplex is not full; allowability is approximated by vertex counting")
    return {str(p): intersection_betti(F, p) for p in perversities}, F.approximate


# ---------------------------------------------------------------- commands


def cmd_build(args) -> int:
    if args.complex is not None:
        doc = read_complex(args.complex)
        singular = doc.singular_vertices
        coords = doc.coordinates
        K = doc.K
        meta = dict(doc.meta)
    else:
        if args.points is None or args.epsilon is None:
            args.parser.error("build needs --points and --epsilon (or --complex)")
        cloud = read_points(args.points)
        K = vietoris_rips(cloud, RipsParams(args.epsilon, args.max_dim))
        singular = None
        coords = cloud.points.tolist()
        meta = {"epsilon": args.epsilon, "max_dim": args.max_dim}
    if args.singular is not None:
        singular = sorted(to_divided(K, read_singular_ids(args.singular)).S0)
    log.info("counts: %s", _counts_line(K.counts()))
    print(_counts_line(K.counts()), file=sys.stderr)
    _emit(to_doc(K, singular, coords, meta), args.out)
    return 0


def cmd_spine(args) -> int:
    t0 = time.perf_counter()
    doc = read_complex(args.complex_file)
    report = RunReport(str(args.complex_file), "ordinary" if args.ordinary else "layered", args.seed, doc.K.counts())
    report.timings["load"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    if args.ordinary:
        K, clog = ordinary_spine_logged(doc.K, args.seed)
        singular = None if doc.singular_vertices is None else sorted(set(doc.singular_vertices) & K.vertices)
    else:
        if doc.singular_vertices is None:
            log.warning("input has no singular_vertices; treating the singular set as empty")
        L, clog = layered_spine(doc.layered, seed=args.seed)
        K = L.K
        singular = sorted(L.S0 & K.vertices)
    report.timings["spine"] = time.perf_counter() - t0
    report.counts_after = K.counts()
    report.collapses = clog.counts()
    print(f"collapses: {report.collapses}; after: {_counts_line(K.counts())}", file=sys.stderr)

    if args.perversity:
        S = K.spanned_by(singular or ())
        codim = _resolve_codim(args, doc, S)
        t0 = time.perf_counter()
        report.betti, _ = _betti_table(K, S, codim, args.perversity, False)
        report.codim = codim
        report.timings["betti"] = time.perf_counter() - t0
    if args.check:
        w = pseudomanifold_violation(K, K.dim)
        report.checks["pseudomanifold"] = {"n": K.dim, "ok": w is None, "witness": None if w is None else list(w)}

    meta = {"collapses": report.collapses}
    if "codim" in doc.meta:
        meta["codim"] = doc.meta["codim"]
    _emit(to_doc(K, singular, doc.coordinates, meta), args.out)
    if args.log is not None:
        args.log.write_text(clog.to_jsonl(), encoding="utf-8")
    if args.report is not None:
        args.report.write_text(json.dumps(report.to_json(), indent=2) + "\n", encoding="utf-8")
    return 0


def cmd_ih(args) -> int:
    doc = read_complex(args.complex_file)
    S = doc.singular_subcomplex()
    codim = _resolve_codim(args, doc, S)
    perversities = args.perversity or [parse_perversity("zero")]
    table, approx = _betti_table(doc.K, S, codim, perversities, args.force_nonfull)
    out = {
        "codim": codim,
        "approximate": approx,
        "results": [{"perversity": name, "betti": b} for name, b in table.items()],
    }
    _emit(out, args.out)
    return 0


def cmd_check(args) -> int:
    doc = read_complex(args.complex_file)
    out: dict[str, dict] = {}
    run_all = args.pseudomanifold is None and not args.fullness
    if args.pseudomanifold is not None or run_all:
        n = doc.K.dim if args.pseudomanifold in (None, -1) else args.pseudomanifold
        w = pseudomanifold_violation(doc.K, n)
        out["pseudomanifold"] = {"n": n, "ok": w is None, "witness": None if w is None else list(w)}
    if args.fullness or run_all:
        w = fullness_violation(doc.K, doc.singular_subcomplex())
        out["fullness"] = {"ok": w is None, "witness": None if w is None else list(w)}
    _emit(out, args.out)
    if args.strict and not all(v["ok"] for v in out.values()):
        return EXIT_CHECK
    return 0


def cmd_export(args) -> int:
    doc = read_complex(args.complex_file)
    if doc.coordinates is None:
        raise StratSpineError("export needs a complex with coordinates")
    verts = sorted(doc.K.vertices)
    if verts[-1] >= len(doc.coordinates):
        raise StratSpineError("coordinates do not cover every vertex")
    index = {v: i + 1 for i, v in enumerate(verts)}
    lines = [f"# stratspine export: {len(verts)} vertices"]
    singular = set(doc.singular_vertices or ())
    for v in verts:
        xyz = (list(doc.coordinates[v]) + [0.0, 0.0, 0.0])[:3]
        tag = "  # singular" if v in singular else ""
        lines.append("v " + " ".join(f"{x:.6g}" for x in xyz) + tag)
    for s in doc.K.simplices(1):
        lines.append("l " + " ".join(str(index[v]) for v in s))
    for s in doc.K.simplices(2):
        lines.append("f " + " ".join(str(index[v]) for v in s))
    text = "\n".join(lines) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text, encoding="utf-8")
    return 0


# ---------------------------------------------------------------- parser


def _positive_float(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not x > 0 or x == float("inf"):
        raise argparse.ArgumentTypeError(f"must be a positive finite number, got {text}")
    return x


def _nonneg_int(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if k < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {k}")
    return k


def _positive_int(text: str) -> int:
    k = _nonneg_int(text)
    if k == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return k


def _perversity(text: str):
    try:
        return parse_perversity(text)
    except StratSpineError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="stratspine", description="Stratified spines and intersection homology.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a Vietoris-Rips complex from a point cloud")
    b.add_argument("--points", type=Path, help="one point per line, comma or blank separated")
    b.add_argument("--epsilon", type=_positive_float)
    b.add_argument("--max-dim", type=_nonneg_int, default=2)
    b.add_argument("--singular", type=Path, help="file of singular vertex ids, one per line")
    b.add_argument("--complex", type=Path, help="load a complex JSON instead of building one")
    b.add_argument("--out", type=Path)
    b.set_defaults(func=cmd_build)

    s = sub.add_parser("spine", help="collapse to a layered (default) or ordinary spine")
    s.add_argument("complex_file", type=Path)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--layered", action="store_true", help="stratified collapses (default)")
    mode.add_argument("--ordinary", action="store_true", help="unrestricted collapses")
    s.add_argument("--seed", type=int, help="seeded random collapse order")
    s.add_argument("--out", type=Path, help="spine complex JSON (default stdout)")
    s.add_argument("--log", type=Path, help="write the collapse log as JSON lines")
    s.add_argument("--report", type=Path, help="write a run report JSON")
    s.add_argument("--codim", type=_positive_int)
    s.add_argument("--perversity", type=_perversity, action="append", help="add Betti numbers to the report")
    s.add_argument("--check", action="store_true", help="add a pseudomanifold check to the report")
    s.set_defaults(func=cmd_spine)

    h = sub.add_parser("ih", help="intersection Betti numbers over Z/2")
    h.add_argument("complex_file", type=Path)
    h.add_argument("--codim", type=_positive_int, help="formal codimension of the singular set")
    h.add_argument(
        "--perversity",
        type=_perversity,
        action="append",
        help="zero, minus-one, plus-one, gm-lower-middle, gm-upper-middle, top, or 'k:v,...,default=v'",
    )
    h.add_argument("--force-nonfull", action="store_true", help="accept a non-full singular subcomplex")
    h.add_argument("--out", type=Path)
    h.set_defaults(func=cmd_ih)

    c = sub.add_parser("check", help="pseudomanifold and fullness checks")
    c.add_argument("complex_file", type=Path)
    c.add_argument("--pseudomanifold", type=int, nargs="?", const=-1, metavar="N", help="dimension (default dim K)")
    c.add_argument("--fullness", action="store_true")
    c.add_argument("--strict", action="store_true", help=f"exit {EXIT_CHECK} when a check fails")
    c.add_argument("--out", type=Path)
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("export", help="OBJ-like listing of vertices, edges and triangles")
    e.add_argument("complex_file", type=Path)
    e.add_argument("--out", type=Path)
    e.set_defaults(func=cmd_export)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.parser = parser
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (StratSpineError, OSError, json.JSONDecodeError) as exc:
        print(f"stratspine: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
