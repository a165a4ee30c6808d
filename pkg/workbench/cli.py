# workbench/cli.py
"""
Command-line front end: python -m workbench.cli <command> ...

Exit codes: 0 success, 1 operational error, 2 a checked bound or lemma
margin was violated.
"""
import argparse
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

import structlog

from boundlab.ratios import ratios
from boundlab.worst_case import worst_case_circles
from infrastructure.errors import BoundViolationError, ConfigError, LabError, VertexNotFoundError
from infrastructure.logging_setup import configure_logging
from infrastructure.settings import get_settings
from routing.chew import route_with_decision_log
from triangulation.delaunay import Triangulation, build_delaunay
from triangulation.linf import build_linf_delaunay_bruteforce
from triangulation.point_set import PointSet
from workbench.batch import run_verify
from workbench.config import build_config, load_config
from workbench.formats import dumps, read_point_set, trace_to_dict, triangulation_to_dict, write_json, write_point_set
from workbench.generators import KINDS, generate
from workbench.reports import TARGETS, all_passed, reproduce
from workbench.svg import render_svg, write_svg

logger = structlog.get_logger(__name__)


def resolve_vertex(ps: PointSet, ident: str) -> int:
    """A role name, a point label, or a plain vertex index"""
    if ident in ps.roles:
        return ps.roles[ident]
    if ident in ps.labels:
        return ps.labels.index(ident)
    try:
        idx = int(ident)
    except ValueError:
        raise VertexNotFoundError(f"no role, label or index {ident!r}") from None
    if not 0 <= idx < len(ps):
        raise VertexNotFoundError(f"vertex index {idx} is outside 0..{len(ps) - 1}")
    return idx


def _triangulate(ps: PointSet, metric: str, seed: int) -> Triangulation:
    if metric == "linf":
        return build_linf_delaunay_bruteforce(ps)
    return build_delaunay(ps, seed=seed)


def _emit(obj: Any, path: Optional[Path]) -> None:
    if path is None:
        sys.stdout.write(dumps(obj))
    else:
        write_json(obj, path)


def cmd_generate(args: argparse.Namespace) -> int:
    params: Dict[str, Any] = {}
    if args.kind in ("chew-lower",):
        params.update(j=args.j, k=args.k)
    if args.kind == "random-cluster" and args.clusters:
        params["clusters"] = args.clusters
    if args.kind == "linf-lower":
        params["k"] = args.k if args.k is not None else 3
    if args.density is not None:
        params["density"] = args.density
    if args.epsilon is not None:
        params["epsilon"] = args.epsilon
    if args.mirrored:
        params["mirrored"] = True
    params = {k: v for k, v in params.items() if v is not None}

    sets = generate(args.kind, seed=args.seed, n=args.n, **params)
    out = args.out or get_settings().output_dir / f"{args.kind}.points"
    paths = [write_point_set(sets[0], out)]
    if len(sets) > 1:
        paths.append(write_point_set(sets[1], out.with_name(f"{out.stem}-mirrored{out.suffix}")))
    for p in paths:
        print(f"✅ {p}")
    return 0


def cmd_triangulate(args: argparse.Namespace) -> int:
    ps = read_point_set(args.input)
    tri = _triangulate(ps, args.metric, args.seed)
    tri.check_certificate()
    _emit(triangulation_to_dict(tri), args.json)
    if args.svg:
        write_svg(render_svg(tri, labels=args.labels), args.svg)
    return 0


def cmd_route(args: argparse.Namespace) -> int:
    ps = read_point_set(args.input)
    s, t = resolve_vertex(ps, args.s), resolve_vertex(ps, args.t)
    tri = build_delaunay(ps, seed=args.seed)
    trace, decisions = route_with_decision_log(tri, s, t)
    out = trace_to_dict(trace, decisions if args.decisions else None)
    report = ratios(trace, tri)
    out["ratios"] = {
        "routing_ratio": report.routing_ratio,
        "arc_routing_ratio": report.arc_routing_ratio,
        "competitive_ratio": report.competitive_ratio,
        "shortest_path_length": report.shortest_path_length,
    }
    _emit(out, args.json)
    if args.svg:
        write_svg(render_svg(tri, trace), args.svg)
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    ps = read_point_set(args.input)
    tri = build_delaunay(ps, seed=args.seed)
    trace, worst = None, None
    if args.s is not None and args.t is not None:
        trace, _ = route_with_decision_log(tri, resolve_vertex(ps, args.s), resolve_vertex(ps, args.t))
        if args.worst_case:
            worst = worst_case_circles(trace)
    elif args.worst_case or args.snail:
        raise ConfigError("--worst-case and --snail need a route, pass --s and --t")
    write_svg(render_svg(tri, trace, worst, snail=args.snail, labels=args.labels), args.svg)
    return 0


def _verify_config(args: argparse.Namespace):
    if args.config:
        return load_config(args.config)
    pairs: Dict[str, Any] = {"mode": "all"}
    if args.pairs:
        pairs = {"mode": "sampled", "count": args.pairs}
    if args.input:
        source: Dict[str, Any] = {"kind": "file", "paths": args.input}
    elif args.generator:
        params: Dict[str, Any] = {}
        if args.density is not None:
            params["density"] = args.density
        if args.epsilon is not None:
            params["epsilon"] = args.epsilon
        source = {"kind": "generator", "name": args.generator, "params": params}
    else:
        source = {
            "kind": "random",
            "distribution": args.distribution,
            "n": args.random,
            "n_max": args.n_max,
            "trials": args.trials,
        }
    values: Dict[str, Any] = {"source": source, "pairs": pairs}
    if args.seed is not None:
        values["seed"] = args.seed
    return build_config(**values)


def cmd_verify(args: argparse.Namespace) -> int:
    config = _verify_config(args)
    out = args.json or config.output_dir / "verify-report.json"
    try:
        report = run_verify(config)
    except BoundViolationError as e:
        write_json(e.bundle, out)
        print(f"❌ violations found, report with counterexamples in {out}")
        raise
    write_json(report, out)
    summary = report["summary"]
    worst = summary["worst_arc_ratio"]
    worst_text = f"{worst:.8f}" if worst is not None else "n/a"
    print(f"✅ {summary['instances']} instances, {summary['pairs_checked']} pairs, worst arc ratio {worst_text}")
    print(f"📄 {out}")
    return 0


def cmd_reproduce(args: argparse.Namespace) -> int:
    params: Dict[str, Any] = {}
    if args.target == "upper-bound":
        params.update(seed=args.seed if args.seed is not None else get_settings().seed, trials=args.trials)
        if args.pairs:
            params["pairs"] = args.pairs
    elif args.target == "l2-lower" and args.density is not None:
        params["density"] = args.density
    elif args.target == "linf-lower":
        if args.density is not None:
            params["density"] = args.density
        if args.epsilon is not None:
            params["epsilon"] = args.epsilon
    elif args.target == "chew-lower" and args.epsilon is not None:
        params["epsilon"] = args.epsilon

    frame = reproduce(args.target, **params)
    print(frame.to_string(index=False))
    if args.json:
        write_json(frame.astype(object).where(frame.notna(), None).to_dict(orient="records"), args.json)
    return 0 if all_passed(frame) else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="workbench", description="Chew routing lab")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a point-set file")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("--n", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--density", type=float)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--j", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--clusters", type=int)
    p.add_argument("--mirrored", action="store_true")
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("triangulate", help="triangulate a point-set file")
    p.add_argument("input", type=Path)
    p.add_argument("--metric", choices=("l2", "linf"), default="l2")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", type=Path)
    p.add_argument("--svg", type=Path)
    p.add_argument("--labels", action="store_true")
    p.set_defaults(func=cmd_triangulate)

    p = sub.add_parser("route", help="route with Chew's algorithm")
    p.add_argument("input", type=Path)
    p.add_argument("--s", required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--decisions", action="store_true")
    p.add_argument("--json", type=Path)
    p.add_argument("--svg", type=Path)
    p.set_defaults(func=cmd_route)

    p = sub.add_parser("verify", help="run the lemma suite and the bound audit")
    p.add_argument("input", type=Path, nargs="*")
    p.add_argument("--config", type=Path)
    p.add_argument("--generator", choices=("chew-lower", "l2-lower", "linf-lower"))
    p.add_argument("--random", type=int, default=50)
    p.add_argument("--n-max", type=int, default=0)
    p.add_argument("--distribution", choices=("uniform", "cluster"), default="uniform")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--pairs", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--density", type=float)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--json", type=Path)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reproduce", help="recompute a published bound")
    p.add_argument("target", choices=sorted(TARGETS))
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--pairs", type=int)
    p.add_argument("--density", type=float)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--json", type=Path)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("render", help="draw a triangulation, a route and its worst-case circles")
    p.add_argument("input", type=Path)
    p.add_argument("--svg", type=Path, required=True)
    p.add_argument("--s")
    p.add_argument("--t")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--worst-case", action="store_true")
    p.add_argument("--snail", action="store_true")
    p.add_argument("--labels", action="store_true")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    settings = get_settings()
    configure_logging(settings.log_level, settings.log_json)
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LabError as e:
        logger.error(f"{args.command} failed: {e}")
        return e.exit_code
    except OSError as e:
        logger.error(f"{args.command} failed: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
