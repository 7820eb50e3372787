"""Command-line entry point: ``vinglab gen|count|stats|verify|bounds|reduce-demo``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction
from typing import Optional

from . import __version__
from .bounds import bound_report
from .cache import CensusCache, cached_entry
from .census import DEFAULT_BUDGET, CensusFilter, as_catalog
from .errors import BudgetExceeded, PointFileError, RejectedPointSet, VinglabError
from .io import SHAPES, format_points, generate, read_points
from .suites import SUITES, run_suites
from .vings import NotReducible, Ving, is_x_ving, reduce_to_x3, reduce_to_x4, x4_predecessor_count

SCHEMA = "vinglab-report/1"

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_BUDGET = 4
EXIT_VERIFY = 5


def frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def resolve_class(args) -> str:
    cls = args.cls
    if args.k is not None:
        if args.k == 2:
            return "plane"
        if args.k not in (3, 4):
            raise SystemExit("--k must be 2, 3 or 4")
        return f"qp{args.k}"
    if cls == "qp":
        return "qp3"
    return cls


def resolve_filter(args, N: int) -> CensusFilter:
    max_edges = args.max_edges
    if args.c is not None:
        if max_edges is not None:
            raise SystemExit("--c and --max-edges are mutually exclusive")
        return CensusFilter.with_c(args.c, N, args.min_degree)
    return CensusFilter(args.min_degree, max_edges)


def _filter_dict(f: CensusFilter) -> dict:
    return {"min_degree": f.min_degree, "max_edges": f.max_edges}


def _stats_block(entry: dict) -> dict:
    count = entry["count"]
    if "v_sum" not in entry or count == 0:
        return {}
    v = {str(i): Fraction(c, count) for i, c in enumerate(entry["v_sum"])}
    vx = Fraction(entry["vx_sum"], count)
    return {
        "v_hat": {i: {"exact": frac_str(x), "decimal": f"{float(x):.9f}"} for i, x in v.items()},
        "vx_hat": {"exact": frac_str(vx), "decimal": f"{float(vx):.9f}"},
        "mean_edges": {"exact": frac_str(Fraction(entry["edge_sum"], count)),
                       "decimal": f"{entry['edge_sum'] / count:.9f}"},
        "max_edges": entry["max_m"],
    }


def report(args, cls=None, filt=None, count=None, stats=None, suites=None, extra=None) -> dict:
    rep = {
        "schema": SCHEMA,
        "input": getattr(args, "points", None),
        "class": cls,
        "filter": _filter_dict(filt) if filt is not None else None,
        "count": None if count is None else str(count),
        "stats": stats or {},
        "suite_results": suites or [],
    }
    if extra:
        rep.update(extra)
    return rep


def render(rep: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rep, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if rep.get("rows"):
            cols = list(rep["rows"][0].keys())
            w.writerow(cols)
            for row in rep["rows"]:
                w.writerow([row[c] for c in cols])
        elif rep["suite_results"]:
            w.writerow(["suite", "name", "passed", "detail"])
            for r in rep["suite_results"]:
                w.writerow([r["suite"], r["name"], r["passed"], r["detail"]])
        else:
            w.writerow(["quantity", "exact", "decimal"])
            if rep["count"] is not None:
                w.writerow(["count", rep["count"], rep["count"]])
            st = rep["stats"]
            for i, val in st.get("v_hat", {}).items():
                w.writerow([f"v_hat_{i}", val["exact"], val["decimal"]])
            if "vx_hat" in st:
                w.writerow(["vx_hat", st["vx_hat"]["exact"], st["vx_hat"]["decimal"]])
        return buf.getvalue()
    lines = []
    if rep.get("input"):
        lines.append(f"input: {rep['input']}")
    if rep.get("class"):
        lines.append(f"class: {rep['class']}  filter: {rep['filter']}")
    if rep["count"] is not None:
        lines.append(f"count: {rep['count']}")
    st = rep["stats"]
    for i, val in st.get("v_hat", {}).items():
        lines.append(f"v_hat[{i}] = {val['exact']} ({val['decimal']})")
    if "vx_hat" in st:
        lines.append(f"vx_hat = {st['vx_hat']['exact']} ({st['vx_hat']['decimal']})")
    for r in rep["suite_results"]:
        lines.append(f"[{'PASS' if r['passed'] else 'FAIL'}] {r['suite']}: {r['name']} -- {r['detail']}")
    for row in rep.get("rows", []):
        lines.append("  ".join(f"{k}={v}" for k, v in row.items()))
    for line in rep.get("lines", []):
        lines.append(line)
    return "\n".join(lines) + "\n"


def emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def load(args):
    S = read_points(args.points)
    return as_catalog(S)


def cmd_gen(args) -> int:
    S = generate(args.shape, args.n, args.seed)
    emit(format_points(S, f"vinglab gen --shape {args.shape} --n {args.n} --seed {args.seed}"),
         args.out)
    return EXIT_OK


def _census(args):
    cat = load(args)
    cls = resolve_class(args)
    filt = resolve_filter(args, cat.N)
    entry, hit = cached_entry(cat.points, cls, filt, CensusCache.from_env(), args.budget,
                              args.workers)
    return cat, cls, filt, entry, hit


def cmd_count(args) -> int:
    cat, cls, filt, entry, _ = _census(args)
    emit(render(report(args, cls, filt, entry["count"]), args.format), args.out)
    return EXIT_OK


def cmd_stats(args) -> int:
    cat, cls, filt, entry, _ = _census(args)
    if cls == "tri":
        raise SystemExit("stats are defined for plane and quasi-plane classes")
    emit(render(report(args, cls, filt, entry["count"], _stats_block(entry)), args.format), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    suites = args.suite or ["all"]
    needs_points = any(s not in ("seven-sums", "ledger") for s in suites) or "all" in suites
    cat = cls = filt = None
    if args.points:
        cat = load(args)
        cls = resolve_class(args)
        filt = resolve_filter(args, cat.N)
    elif needs_points:
        raise SystemExit("this suite needs a point file")
    mutated = None
    if args.inject_flip and cat is not None:
        i, j = args.inject_flip
        mutated = cat.with_flipped(i, j)
    results = run_suites(suites, cat.points if cat else None, cls or "plane",
                         filt or CensusFilter(), args.budget, args.workers, catalog=mutated)
    rep = report(args, cls, filt, suites=[r.as_dict() for r in results])
    emit(render(rep, args.format), args.out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def cmd_bounds(args) -> int:
    rep = bound_report()
    rows = [{"name": e.name, "published": e.published, "value": e.value, "exact": e.exact or "",
             "deviation": f"{e.deviation:.6g}", "ok": e.ok, "note": e.note} for e in rep.entries]
    emit(render(report(args, extra={"rows": rows}), args.format), args.out)
    return EXIT_OK


def _parse_edges(text: str):
    pairs = []
    for tok in text.replace(" ", "").split(","):
        if not tok:
            continue
        a, b = tok.split("-")
        pairs.append((int(a), int(b)))
    return pairs


def cmd_reduce_demo(args) -> int:
    cat = load(args)
    G = cat.graph(_parse_edges(args.edges))
    if not G.is_plane():
        raise SystemExit("the given edges cross; reduce-demo needs a plane graph")
    v = Ving(args.vertex, G)
    lines = [f"start: vertex {v.vertex}, degree {v.degree}, edges {G.segments()}"]
    if not is_x_ving(v):
        from .vings import x_completion
        v = x_completion(v)
        lines.append(f"x-completion: degree {v.degree}, edges {v.graph.segments()}")
    try:
        x3 = reduce_to_x3(v)
        lines.append(f"x3: neighbours {x3.graph.neighbors(x3.vertex)}, edges {x3.graph.segments()}")
        x4 = reduce_to_x4(x3, v)
        lines.append(f"x4: neighbours {x4.graph.neighbors(x4.vertex)}, edges {x4.graph.segments()}")
        lines.append(f"x3 predecessors of x4: {x4_predecessor_count(x4)}")
    except NotReducible as exc:
        lines.append(f"stop: {exc}")
    emit(render(report(args, "plane", extra={"lines": lines}), args.format), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vinglab", description=__doc__)
    p.add_argument("--version", action="version", version=f"vinglab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, points=True, census=True):
        if points:
            sp.add_argument("points", nargs="?" if not census else None, help="point file")
        if census:
            sp.add_argument("--class", dest="cls", default="plane",
                            choices=["plane", "tri", "qp", "qp3", "qp4"])
            sp.add_argument("--k", type=int, default=None)
            sp.add_argument("--min-degree", type=int, default=0)
            sp.add_argument("--max-edges", type=int, default=None)
            sp.add_argument("--c", type=str, default=None, help="max edges = floor(c N)")
            sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
            sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--format", choices=["json", "csv", "text"], default="text")
        sp.add_argument("--out", default=None)

    g = sub.add_parser("gen", help="generate a point set")
    g.add_argument("--shape", choices=SHAPES, default="random")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("count", help="census counts")
    common(c)
    c.set_defaults(func=cmd_count)

    s = sub.add_parser("stats", help="exact expected ving counts")
    common(s)
    s.set_defaults(func=cmd_stats)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("points", nargs="?", default=None)
    v.add_argument("--suite", action="append", choices=list(SUITES) + ["all"])
    v.add_argument("--inject-flip", nargs=2, type=int, metavar=("I", "J"),
                   help="toggle one crossing bit before the census (fault injection)")
    common(v, points=False)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bounds", help="recomputed constants")
    b.add_argument("--format", choices=["json", "csv", "text"], default="text")
    b.add_argument("--out", default=None)
    b.set_defaults(func=cmd_bounds)

    r = sub.add_parser("reduce-demo", help="print an x3 / x4 reduction chain")
    r.add_argument("points")
    r.add_argument("--edges", required=True, help="comma-separated a-b pairs")
    r.add_argument("--vertex", type=int, required=True)
    r.add_argument("--format", choices=["json", "text"], default="text")
    r.add_argument("--out", default=None)
    r.set_defaults(func=cmd_reduce_demo)
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PointFileError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except RejectedPointSet as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except VinglabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
