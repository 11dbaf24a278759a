"""Command-line front end.

Exit codes: 0 success or member, 1 negative verdict, 2 input error.
Reports go to stdout as JSON; logs go to stderr.
"""

import argparse
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

from . import __version__
from .colouring.solver import colour_class_member, exact_chromatic
from .config import HOLE_PREFERENCE, REPORT_SCHEMA, Settings, load_settings
from .core.graph import Graph
from .core.patterns import find_hole, is_class_member, is_perfect_in_class
from .decomposition.classify import classify, reduction_consistency
from .decomposition.properties import verify_properties
from .documentation.run_records import RunRecorder
from .errors import CaseNotCoveredError, ConfigError, HolewidthError, InfeasibleSpecError, NotInClassError
from .expressions.cwd import evaluate, width
from .generation.planter import PlantSpec, plant, reject_sample
from .synthesis.pipeline import choose_hole, synthesize
from .synthesis.results import PerfectCertificate
from .utils.formats import FORMATS, format_graph, read_expression, read_graph, to_dot
from .utils.helpers import dump_json, dump_json_line, expand_glob, write_text_file

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2

Payload = Union[Dict[str, Any], str]
Outcome = Tuple[int, Payload]
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def _report(kind: str, **fields: Any) -> Dict[str, Any]:
    return {"schema": REPORT_SCHEMA, "kind": kind, **fields}


def _not_member(g: Graph, exc: NotInClassError) -> Outcome:
    return EXIT_NEGATIVE, _report("not-member", witness=exc.occurrence.to_dict(g))


def cmd_check(path: str, args: argparse.Namespace, settings: Settings) -> Outcome:
    g = read_graph(path, args.format)
    membership = is_class_member(g)
    report = _report("membership", n=g.n, m=g.edge_count(), **membership.to_dict(g))
    if membership.member:
        report["perfectness"] = is_perfect_in_class(g).to_dict()
        return EXIT_OK, report
    return EXIT_NEGATIVE, report


def cmd_decompose(path: str, args: argparse.Namespace, settings: Settings) -> Outcome:
    g = read_graph(path, args.format)
    witness = is_class_member(g).first_witness()
    if witness is not None:
        return _not_member(g, NotInClassError(witness))
    if args.hole == "auto":
        hole = choose_hole(g, HOLE_PREFERENCE)
        if hole is None:
            return EXIT_OK, _report("decomposition", hole=None, perfect=True)
    else:
        hole = find_hole(g, int(args.hole))
        if hole is None:
            return EXIT_NEGATIVE, _report("decomposition", hole=None, message=f"no induced C{args.hole}")
    d = classify(g, hole, settings.threshold, settings.fixpoint_reduction)
    properties = verify_properties(g, d)
    if args.pdf:
        from utils.pdf_generator import generate_property_report

        generate_property_report(properties, args.pdf, title=f"C{d.hole_length} property report for {path}")
    if args.table:
        return (EXIT_OK if properties.ok else EXIT_NEGATIVE), properties.table() + "\n"
    report = _report(
        "decomposition",
        decomposition=d.to_dict(g),
        properties=properties.to_dict(g),
        reduction=reduction_consistency(g, d).to_dict(),
    )
    return (EXIT_OK if properties.ok else EXIT_NEGATIVE), report


def cmd_synthesize(path: str, args: argparse.Namespace, settings: Settings) -> Outcome:
    g = read_graph(path, args.format)
    try:
        result = synthesize(g, settings)
    except NotInClassError as exc:
        return _not_member(g, exc)
    except CaseNotCoveredError as exc:
        return EXIT_NEGATIVE, _report("case-not-covered", sets=list(exc.sets), failures=list(exc.failures))
    if isinstance(result, PerfectCertificate):
        return EXIT_OK, result.to_dict(g)
    if args.expr_out:
        write_text_file(args.expr_out, result.expression_text() + "\n")
    return EXIT_OK, result.to_dict(g)


def cmd_eval(path: str, args: argparse.Namespace, settings: Settings) -> Outcome:
    expr = read_expression(path)
    evaluated = evaluate(expr)
    if not args.against:
        return EXIT_OK, format_graph(evaluated.graph, args.to)
    g = read_graph(args.against, args.format)
    equal = evaluated.realizes(g)
    report = _report("evaluation", n=len(evaluated.vertices), m=len(evaluated.edge_set), width=width(expr), equal=equal)
    return (EXIT_OK if equal else EXIT_NEGATIVE), report


def cmd_colour(path: str, args: argparse.Namespace, settings: Settings) -> Outcome:
    g = read_graph(path, args.format)
    try:
        result = colour_class_member(g, settings)
    except NotInClassError as exc:
        return _not_member(g, exc)
    except CaseNotCoveredError:
        logger.warning("no synthesis case applies; colouring without a certificate")
        result = exact_chromatic(g, node_budget=settings.node_budget)
    return EXIT_OK, _report("colouring", **result.to_dict(g))


def cmd_render(path: str, args: argparse.Namespace, settings: Settings) -> Outcome:
    if args.expr:
        g = evaluate(read_expression(path)).graph
    else:
        g = read_graph(path, args.format)
    colours = exact_chromatic(g, node_budget=settings.node_budget).assignment if args.colour else None
    highlight = (choose_hole(g) or ()) if args.hole else ()
    return EXIT_OK, to_dot(g, colours, highlight)


def cmd_generate(args: argparse.Namespace, settings: Settings) -> Outcome:
    if args.sample is not None:
        n, edge_prob = args.sample
        g = reject_sample(int(n), float(edge_prob), args.seed or 0, settings.reject_attempts)
        if g is None:
            return EXIT_NEGATIVE, _report("rejection", n=int(n), edge_prob=float(edge_prob), accepted=False)
        return EXIT_OK, format_graph(g, args.to)
    try:
        if args.preset:
            from utils.plant_profiles import preset_spec

            spec = preset_spec(args.preset)
        elif args.spec:
            spec = PlantSpec.load(args.spec)
        else:
            raise ConfigError("generate needs a spec path, --preset or --sample")
        if args.seed is not None:
            spec.seed = args.seed
        g = plant(spec, settings.plant_attempts)
    except InfeasibleSpecError as exc:
        return EXIT_NEGATIVE, _report("infeasible", attempts=exc.attempts, reason=exc.last_reason)
    return EXIT_OK, format_graph(g, args.to)


FILE_COMMANDS: Dict[str, Callable[[str, argparse.Namespace, Settings], Outcome]] = {
    "check": cmd_check,
    "decompose": cmd_decompose,
    "synthesize": cmd_synthesize,
    "eval": cmd_eval,
    "colour": cmd_colour,
    "render": cmd_render,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="holewidth", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="YAML settings file")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")
    parser.add_argument("--record-dir", help="write a YAML record of the run under this directory")

    inputs = argparse.ArgumentParser(add_help=False)
    inputs.add_argument("path", nargs="?", help="input file")
    inputs.add_argument("--format", choices=("auto",) + FORMATS, default="auto", help="graph file format")
    inputs.add_argument("--glob", help="run on every file matching the pattern, one JSON line each")
    inputs.add_argument("--threshold", type=int, help="minimum size of a retained set")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[inputs], help="test membership in the class")

    decompose = sub.add_parser("decompose", parents=[inputs], help="classify around a hole and check properties")
    decompose.add_argument("--hole", choices=("auto", "5", "6", "7"), default="auto")
    decompose.add_argument("--fixpoint", action="store_true", default=None, help="repeat the small-set reduction")
    decompose.add_argument("--table", action="store_true", help="print the property table instead of JSON")
    decompose.add_argument("--pdf", help="also write the property table as a PDF")

    synth = sub.add_parser("synthesize", parents=[inputs], help="build a bounded-width expression")
    synth.add_argument("--expr-out", help="write the expression text to this file")

    ev = sub.add_parser("eval", parents=[inputs], help="evaluate an expression file")
    ev.add_argument("--against", help="graph to compare the result with")
    ev.add_argument("--to", choices=FORMATS, default="edges", help="output format for the evaluated graph")

    sub.add_parser("colour", parents=[inputs], help="chromatic number with the dichotomy certificate")

    render = sub.add_parser("render", parents=[inputs], help="Graphviz DOT output")
    render.add_argument("--expr", action="store_true", help="the input is an expression file")
    render.add_argument("--colour", action="store_true", help="fill nodes with an optimal colouring")
    render.add_argument("--hole", action="store_true", help="draw the preferred hole in bold")

    generate = sub.add_parser("generate", help="plant or sample a class member")
    generate.add_argument("spec", nargs="?", help="PlantSpec file (JSON or YAML)")
    generate.add_argument("--preset", help="named plant profile")
    generate.add_argument("--sample", nargs=2, metavar=("N", "P"), help="rejection-sample G(N, P) instead")
    generate.add_argument("--seed", type=int)
    generate.add_argument("--to", choices=FORMATS, default="json", help="output graph format")
    return parser


def _settings(args: argparse.Namespace) -> Settings:
    settings = load_settings(args.config)
    return settings.merged(
        threshold=getattr(args, "threshold", None),
        fixpoint_reduction=getattr(args, "fixpoint", None),
        log_level=args.log_level,
        record_dir=args.record_dir,
    )


def _emit(payload: Payload) -> None:
    sys.stdout.write(dump_json(payload) if isinstance(payload, dict) else payload)


def _run_one(handler, path: str, args: argparse.Namespace, settings: Settings) -> Outcome:
    try:
        return handler(path, args, settings)
    except (HolewidthError, OSError) as exc:
        return EXIT_INPUT, _report("error", message=str(exc))


def _dispatch(args: argparse.Namespace, settings: Settings) -> Tuple[int, Optional[Payload]]:
    if args.command == "generate":
        code, payload = cmd_generate(args, settings)
        _emit(payload)
        return code, payload
    handler = FILE_COMMANDS[args.command]
    if args.glob:
        paths = expand_glob(args.glob)
        if not paths:
            raise ConfigError(f"no files match {args.glob!r}")
        worst = EXIT_OK
        for path in paths:
            code, payload = _run_one(handler, path, args, settings)
            result = {"result": payload} if isinstance(payload, dict) else {"text": payload}
            sys.stdout.write(dump_json_line({"path": path, "exit_code": code, **result}) + "\n")
            worst = max(worst, code)
        return worst, None
    if not args.path:
        raise ConfigError(f"{args.command} needs a path or --glob")
    code, payload = handler(args.path, args, settings)
    _emit(payload)
    return code, payload


def _arguments(args: argparse.Namespace) -> Dict[str, Any]:
    return {key: value for key, value in vars(args).items() if key not in ("config", "log_level", "record_dir")}


# Report fields worth keeping in a run record
HIGHLIGHTS = ("kind", "member", "width", "declared_bound", "chi", "exact", "branch")


def _highlights(payload: Optional[Payload]) -> Dict[str, Any]:
    if not isinstance(payload, dict):
        return {}
    return {key: payload[key] for key in HIGHLIGHTS if key in payload}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = _settings(args)
    except HolewidthError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    logging.basicConfig(level=settings.log_level.upper(), format=LOG_FORMAT, stream=sys.stderr)
    payload: Optional[Payload] = None
    try:
        code, payload = _dispatch(args, settings)
    except (HolewidthError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_INPUT
    if settings.record_dir:
        RunRecorder(settings.record_dir).record_run(args.command, _arguments(args), code, _highlights(payload))
    return code


if __name__ == "__main__":
    sys.exit(main())
