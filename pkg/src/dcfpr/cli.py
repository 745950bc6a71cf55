"""Command-line interface: build, solve, validate, reduce, serve.

Results go to stdout, diagnostics to stderr. Exit codes: 0 success,
1 validation or reduction failure, 2 usage error (argparse's default).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import documents, relations, solver
from .dnumber import NotReducible
from .documents import ParseError, SchemaError

DEFAULT_PORT = 8000


def _read_problem(path: str) -> relations.Problem:
    with open(path, "rb") as fh:
        return documents.parse_problem(fh.read())


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _fail(message: str) -> int:
    print(message, file=sys.stderr)
    return 1


def _cmd_build(args: argparse.Namespace) -> int:
    problem = _read_problem(args.input)
    matrix = relations.build_dcfpr(problem)
    doc = documents.matrix_document(matrix, problem.alternatives)
    _write_output(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.output)
    return 0


def _cmd_solve(args: argparse.Namespace) -> int:
    if args.lam is not None and not args.lam > 0:
        print(f"--lambda must be positive, got {args.lam}", file=sys.stderr)
        return 2
    problem = _read_problem(args.input)
    matrix = relations.build_dcfpr(problem)
    credibility: str | float = args.lam if args.lam is not None else args.credibility
    bundle = solver.solve(
        matrix, credibility, mode=args.mode, alternatives=problem.alternatives
    )
    requested_name = args.credibility if args.lam is None else None
    _write_output(
        documents.emit_report(bundle, args.format, credibility=requested_name),
        args.output,
    )
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    with open(args.input, "rb") as fh:
        text = fh.read()
    try:
        problem = documents.parse_problem(text)
    except SchemaError as exc:
        for diag in exc.diagnostics:
            print(f"{diag.pointer}: {diag.message}", file=sys.stderr)
        return 1
    report = relations.verify(relations.build_dcfpr(problem))
    if not report.ok:
        print(report, file=sys.stderr)
        return 1
    return 0


def _cmd_reduce(args: argparse.Namespace) -> int:
    problem = _read_problem(args.input)
    matrix = relations.build_dcfpr(problem)
    reduced = relations.reduce(matrix)
    doc = documents.cfpr_document(reduced, problem.alternatives)
    _write_output(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.output)
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(session_ttl=args.session_ttl, static_dir=args.static)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dcfpr",
        description=(
            "Build preference matrices from pairwise judgment chains and "
            "derive rankings, priority weights, and inconsistency."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", help="emit the D-number preference matrix")
    build.add_argument("-i", "--input", required=True, help="problem JSON file")
    build.add_argument("-o", "--output", help="write to file instead of stdout")
    build.set_defaults(func=_cmd_build)

    slv = sub.add_parser("solve", help="rank alternatives and derive weights")
    slv.add_argument("-i", "--input", required=True, help="problem JSON file")
    slv.add_argument("-o", "--output", help="write to file instead of stdout")
    slv.add_argument(
        "--credibility",
        choices=sorted(solver.PRESET_LAMBDAS),
        default="medium",
        help="credibility preset for the requested weights (default medium)",
    )
    slv.add_argument(
        "--lambda",
        dest="lam",
        type=float,
        help="explicit credibility parameter (overrides --credibility)",
    )
    slv.add_argument(
        "--format", choices=("json", "table"), default="table", help="output format"
    )
    mode = slv.add_mutually_exclusive_group()
    mode.add_argument(
        "--exact",
        dest="mode",
        action="store_const",
        const="exact",
        help="force exact triangulation (n <= 12)",
    )
    mode.add_argument(
        "--heuristic",
        dest="mode",
        action="store_const",
        const="heuristic",
        help="force heuristic triangulation",
    )
    slv.set_defaults(func=_cmd_solve, mode="auto")

    val = sub.add_parser("validate", help="check a problem file against the schema")
    val.add_argument("-i", "--input", required=True, help="problem JSON file")
    val.set_defaults(func=_cmd_validate)

    red = sub.add_parser(
        "reduce", help="emit the classical relation when every entry is certain"
    )
    red.add_argument("-i", "--input", required=True, help="problem JSON file")
    red.add_argument("-o", "--output", help="write to file instead of stdout")
    red.set_defaults(func=_cmd_reduce)

    srv = sub.add_parser("serve", help="run the HTTP session service")
    srv.add_argument(
        "--port",
        type=int,
        default=int(os.environ.get("DCFPR_PORT", DEFAULT_PORT)),
        help="listen port (env DCFPR_PORT, default %(default)s)",
    )
    srv.add_argument("--host", default="127.0.0.1", help="bind address")
    srv.add_argument("--static", help="directory of UI assets to serve at /")
    srv.add_argument(
        "--session-ttl",
        type=float,
        default=24 * 3600.0,
        help="seconds an idle session is kept (default 24h)",
    )
    srv.set_defaults(func=_cmd_serve)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        return _fail(f"cannot read {exc.filename}")
    except ParseError as exc:
        return _fail(str(exc))
    except SchemaError as exc:
        for diag in exc.diagnostics:
            print(f"{diag.pointer}: {diag.message}", file=sys.stderr)
        return 1
    except NotReducible as exc:
        return _fail(str(exc))
    except solver.LambdaTooSmall as exc:
        return _fail(f"{exc}; pass --lambda >= {exc.lambda_min:.12g}")
    except solver.SizeLimit as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
