"""Command-line frontend: run scripts, replay the built-in figure demos,
and fuzz-verify every construction against the analytic oracles.

    compass run script.compass --points --svg figure.svg --trace trace.json
    compass demo midpoint
    compass fuzz --op all --cases 1000 --seed 42

Exit codes: 0 success, 1 I/O failure, 2 script or construction error
(one-line diagnostic with line:column), 3 fuzz mismatch. COMPASS_TOL
overrides the default coordinate tolerance; --tol wins over it.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import demos, dsl, fuzz, svg, tracedoc
from .errors import CompassError
from .geom import Point, Tolerance


def _diag(message: str) -> None:
    print(f"compass: {message}", file=sys.stderr)


def _tolerance(tol_flag: float | None) -> Tolerance:
    if tol_flag is not None:
        return Tolerance(eps_abs=tol_flag)
    env = os.environ.get("COMPASS_TOL")
    if env is not None:
        return Tolerance(eps_abs=float(env))
    return Tolerance()


def _points_text(result: dsl.ScriptResult) -> str:
    lines = []
    for name, node in result.named_points:
        p = result.trace.resolved[node]
        assert isinstance(p, Point)
        lines.append(f"{name} {p.x:.17g} {p.y:.17g}")
    return "".join(line + "\n" for line in lines)


def _svg_text(result: dsl.ScriptResult) -> str:
    names = {node: name
             for node, name in enumerate(result.seed_names)}
    names.update({node: name for name, node in result.named_points})
    return svg.render_trace(result.trace, names)


def _trace_text(result: dsl.ScriptResult) -> str:
    doc = tracedoc.document_from_trace(
        result.trace, result.seed_names,
        tuple(name for name, _ in result.named_points))
    return tracedoc.dumps(doc)


def _write(path: str, content: str) -> int:
    if path == "-":
        sys.stdout.write(content)
        return 0
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(content)
    except OSError as err:
        _diag(f"cannot write {path}: {err}")
        return 1
    return 0


def _emit_all(result: dsl.ScriptResult, args) -> int:
    renderers = {"points": _points_text, "svg": _svg_text, "trace": _trace_text}
    if args.points:
        sys.stdout.write(_points_text(result))
    if args.svg:
        if _write(args.svg, _svg_text(result)):
            return 1
    if args.trace:
        if _write(args.trace, _trace_text(result)):
            return 1
    for request in result.emits:
        if _write(request.path, renderers[request.target](result)):
            return 1
    return 0


def _run_script(source: str, args, always_points: bool = False) -> int:
    try:
        result = dsl.run_source(source, _tolerance(args.tol))
    except dsl.ScriptError as err:
        _diag(str(err))
        return 2
    except CompassError as err:
        _diag(f"construction failed: {type(err).__name__}: {err}")
        return 2
    if always_points and not args.points:
        sys.stdout.write(_points_text(result))
    return _emit_all(result, args)


def cmd_run(args) -> int:
    try:
        with open(args.script, "r", encoding="utf-8") as handle:
            source = handle.read()
    except OSError as err:
        _diag(f"cannot read {args.script}: {err}")
        return 1
    return _run_script(source, args)


def cmd_demo(args) -> int:
    source = demos.DEMOS.get(args.name)
    if source is None:
        _diag(f"unknown demo {args.name!r}; available: "
              + ", ".join(sorted(demos.DEMOS)))
        return 2
    return _run_script(source, args, always_points=True)


def cmd_fuzz(args) -> int:
    if args.cases < 0:
        _diag("--cases must be nonnegative")
        return 2
    if args.op == "all":
        ops = list(fuzz.OPS)
    elif args.op in fuzz.OPS:
        ops = [args.op]
    else:
        _diag(f"unknown construction {args.op!r}; available: all, "
              + ", ".join(fuzz.OPS))
        return 2
    reports = fuzz.run_fuzz(ops, args.cases, args.seed, _tolerance(args.tol))
    sys.stdout.write(fuzz.format_reports(reports, args.cases, args.seed))
    return 3 if any(r.failures for r in reports) else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="compass",
        description="compass-only construction engine")
    sub = parser.add_subparsers(dest="command", required=True)

    def io_flags(p):
        p.add_argument("--svg", metavar="PATH", help="write an SVG figure")
        p.add_argument("--trace", metavar="PATH", help="write a JSON trace")
        p.add_argument("--points", action="store_true",
                       help="print NAME x y per constructed point")
        p.add_argument("--tol", type=float, metavar="EPS",
                       help="absolute coordinate tolerance (default 1e-9)")

    run_p = sub.add_parser("run", help="run a construction script")
    run_p.add_argument("script", help="path to a .compass script")
    io_flags(run_p)
    run_p.set_defaults(func=cmd_run)

    demo_p = sub.add_parser("demo", help="run a built-in figure demo")
    demo_p.add_argument("name", help="one of: " + ", ".join(sorted(demos.DEMOS)))
    io_flags(demo_p)
    demo_p.set_defaults(func=cmd_demo)

    fuzz_p = sub.add_parser("fuzz", help="verify constructions against oracles")
    fuzz_p.add_argument("--cases", type=int, default=1000, metavar="N")
    fuzz_p.add_argument("--seed", type=int, default=42, metavar="S")
    fuzz_p.add_argument("--op", default="all", metavar="NAME",
                        help="construction name or 'all'")
    fuzz_p.add_argument("--tol", type=float, metavar="EPS")
    fuzz_p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        tol_probe = _tolerance(getattr(args, "tol", None))
    except ValueError:
        _diag("invalid tolerance (flag --tol or COMPASS_TOL)")
        return 2
    del tol_probe
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
