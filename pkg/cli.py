#!/usr/bin/env python3
"""
Command-line front end for tailbiter.

Subcommands read a code file (JSON with "p", "n", "generators" and optional
"parity_checks", "spans", "name") or, where noted, a trellis file, and write
JSON, text or DOT to stdout or --output.  Logs go to stderr.

Exit codes: 0 success, 1 failed check or other error, 2 missing support,
3 malformed input.
"""

import argparse
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import config
from algebra.codes import characteristic_pair
from algebra.linalg import FieldMatrix, to_lists
from algebra.spans import Span, format_span_list
from checks import PropertiesCheck, SelectionManager, VerdictCritic, WorkedExamplesCheck
from errors import BudgetError, ParseError, SupportError, TrellisError
from trellises.builders import (
    BcjrTrellis,
    ProductTrellis,
    bcjr_trellis_from_spans,
    is_kv_trellis,
    kv_trellis,
    product_trellis,
)
from trellises.char_duality import (
    dual_characteristic_pair,
    dual_kv_pair,
    dual_selection,
    verify_rank_equivalence,
)
from trellises.dualization import StatePairing, bcjr_dual, check_subtrellis_dual, local_dual
from trellises.isomorphism import is_isomorphic
from trellises.trellis import (
    LinearTrellis,
    complexity,
    is_biproper,
    is_conventional,
    is_one_to_one,
    is_reduced,
)
from utils import ReportGenerator, display_trellis, export_dot, format_matrix
from utils.serialization import (
    CodeInput,
    code_from_dict,
    dumps,
    is_trellis_document,
    read_json,
    trellis_from_dict,
    trellis_to_dict,
)
from workflows import kv_conjecture_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_SUPPORT = 2
EXIT_PARSE = 3

FORMATS = ["json", "text", "dot"]
TRELLIS_KINDS = ["product", "bcjr", "kv"]
DUAL_METHODS = ["local", "bcjr", "both"]
PAIRINGS = ["default", "standard", "transpose"]
KV_DUAL_EMITS = ["Y", "report", "trellises"]


class CliParser(argparse.ArgumentParser):
    """Usage errors exit with the malformed-input code, keeping 2 for missing support."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must be positive")
    return value


def selection_list(text: str) -> List[int]:
    """Parse "0,2" into row indices."""
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Selection must be comma-separated row indices, got {text!r}")


# ---------------------------------------------------------------------------
# Input and output
# ---------------------------------------------------------------------------

def load_code_input(args, data: Optional[Dict[str, Any]] = None) -> CodeInput:
    """Decode the input file as a code, applying the --p override."""
    if data is None:
        if not args.input:
            raise ParseError(f"{args.command} needs a code file")
        data = read_json(args.input)
    if is_trellis_document(data):
        raise ParseError(f"{args.input} holds a trellis, expected a code")
    if not isinstance(data, dict):
        raise ParseError("A code file must hold a JSON object")
    if args.p is not None:
        data = dict(data, p=args.p)
    return code_from_dict(data)


def construction_rows(entry: CodeInput, tie_break: str) -> Tuple[FieldMatrix, List[Span]]:
    """Generator rows and spans from the file, else the characteristic pair."""
    if entry.spans:
        return entry.G, list(entry.spans)
    pair = characteristic_pair(entry.code, tie_break)
    return pair.X, list(pair.spans)


def construct(entry: CodeInput, kind: str, tie_break: str,
              selection: Optional[Sequence[int]] = None) -> Union[ProductTrellis, BcjrTrellis]:
    if kind == "kv":
        if selection is None:
            raise ParseError("--kind kv needs --selection")
        pair = characteristic_pair(entry.code, tie_break)
        return kv_trellis(pair, entry.H, selection)
    G, spans = construction_rows(entry, tie_break)
    if kind == "product":
        return product_trellis(G, spans)
    return bcjr_trellis_from_spans(G, entry.H, spans)


def describe(t: LinearTrellis) -> Dict[str, Any]:
    profile = complexity(t)
    return {
        "scp": list(profile.scp),
        "ecp": list(profile.ecp),
        "reduced": is_reduced(t),
        "biproper": is_biproper(t),
        "one_to_one": is_one_to_one(t),
        "conventional": is_conventional(t),
    }


def describe_text(properties: Dict[str, Any]) -> str:
    flags = ["reduced", "biproper", "one_to_one", "conventional"]
    lines = [
        f"SCP: ({','.join(str(x) for x in properties['scp'])})",
        f"ECP: ({','.join(str(x) for x in properties['ecp'])})",
    ]
    lines.extend(f"{flag}: {'yes' if properties[flag] else 'no'}" for flag in flags)
    return "\n".join(lines)


def pair_text(X: FieldMatrix, spans: Sequence[Span]) -> str:
    rows = format_matrix(X).splitlines()
    return "\n".join(f"{row}  {span}" for row, span in zip(rows, spans))


def emit(args, data: Any, text: Optional[str] = None, dot: Optional[Callable[[], str]] = None):
    """Write the command result in the requested format."""
    if args.format == "dot":
        if dot is None:
            raise TrellisError(f"{args.command} has no trellis to render as DOT")
        output = dot()
    elif args.format == "text" and text is not None:
        output = text if text.endswith("\n") else text + "\n"
    else:
        output = dumps(data) + "\n"

    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(output)
        logger.info("✓ Wrote %s", args.output)
    else:
        sys.stdout.write(output)


def _isomorphic(t1: LinearTrellis, t2: LinearTrellis) -> Optional[bool]:
    try:
        return is_isomorphic(t1, t2) is not None
    except BudgetError as e:
        logger.warning("Isomorphism search abandoned: %s", e)
        return None


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_charmat(args) -> int:
    entry = load_code_input(args)
    entry.code.require_full_support()
    pair = characteristic_pair(entry.code, args.tie_break)

    data = pair.to_dict()
    data["tie_break"] = args.tie_break
    data["clauses"] = pair.clause_report(entry.code)
    emit(args, data, text=pair_text(pair.X, pair.spans))
    return EXIT_OK


def cmd_trellis(args) -> int:
    entry = load_code_input(args)
    built = construct(entry, args.kind, args.tie_break, args.selection)
    properties = describe(built.base)

    data = {"kind": args.kind, "trellis": trellis_to_dict(built.base), "properties": properties}
    if isinstance(built, BcjrTrellis):
        data["D"] = to_lists(built.D)
        data["kv"] = is_kv_trellis(built)
    text = display_trellis(built) + "\n\n" + describe_text(properties)
    emit(args, data, text=text, dot=lambda: export_dot(built.base))
    return EXIT_OK


def _pairing(name: str, t: Union[LinearTrellis, BcjrTrellis]) -> StatePairing:
    if name == "transpose":
        if not isinstance(t, BcjrTrellis):
            raise ParseError("The transpose pairing needs a code file, not a trellis file")
        return StatePairing.bcjr_transpose(t)
    base = t.base if isinstance(t, BcjrTrellis) else t
    if name == "standard":
        return StatePairing.standard(base)
    return StatePairing.default(base)


def cmd_dual(args) -> int:
    document = read_json(args.input)

    if is_trellis_document(document):
        if args.method != "local":
            raise ParseError("A trellis file only supports --method local; BCJR dualization needs a code file")
        primal = trellis_from_dict(document)
        dual = local_dual(primal, _pairing(args.pairing, primal))
        data = {
            "primal_properties": describe(primal),
            "local_dual": trellis_to_dict(dual),
            "local_dual_properties": describe(dual),
        }
        text = "Local dual\n" + describe_text(data["local_dual_properties"])
        emit(args, data, text=text, dot=lambda: export_dot(dual))
        return EXIT_OK

    entry = load_code_input(args, document)
    G, spans = construction_rows(entry, args.tie_break)
    bcjr = bcjr_trellis_from_spans(G, entry.H, spans)
    data: Dict[str, Any] = {"primal": trellis_to_dict(bcjr.base), "primal_properties": describe(bcjr.base)}
    sections = ["Primal\n" + describe_text(data["primal_properties"])]
    rendered: Optional[LinearTrellis] = None

    local = None
    if args.method in ("local", "both"):
        local = local_dual(bcjr.base, _pairing(args.pairing, bcjr))
        data["local_dual"] = trellis_to_dict(local)
        data["local_dual_properties"] = describe(local)
        sections.append("Local dual\n" + describe_text(data["local_dual_properties"]))
        rendered = local

    bcjr_dual_trellis = None
    if args.method in ("bcjr", "both"):
        bcjr_dual_trellis = bcjr_dual(bcjr)
        data["bcjr_dual"] = trellis_to_dict(bcjr_dual_trellis.base)
        data["bcjr_dual_properties"] = describe(bcjr_dual_trellis.base)
        sections.append("BCJR dual\n" + describe_text(data["bcjr_dual_properties"]))
        if rendered is None:
            rendered = bcjr_dual_trellis.base

    if local is not None and bcjr_dual_trellis is not None:
        subtrellis = check_subtrellis_dual(bcjr)
        data["comparison"] = {
            "subtrellis": subtrellis.to_dict(),
            "isomorphic": _isomorphic(local, bcjr_dual_trellis.base),
        }
        sections.append(
            f"BCJR dual inside local dual: {'yes' if subtrellis.holds else 'no'}\n"
            f"Gaps: {subtrellis.gaps}\n"
            f"Isomorphic: {data['comparison']['isomorphic']}"
        )

    emit(args, data, text="\n\n".join(sections), dot=lambda: export_dot(rendered))
    return EXIT_OK


def _checks_text(result: Dict[str, Any]) -> str:
    lines = [f"{'✓' if check['passed'] else '✗'} {check['name']}" for check in result['checks']]
    lines.append(f"Passed: {result['total'] - len(result['failed'])}/{result['total']}")
    return "\n".join(lines)


def _suite_text(result: Dict[str, Any]) -> str:
    return (
        VerdictCritic().generate_critique_summary(result['verdict'])
        + "\n"
        + SelectionManager().generate_delegation_report(result['selection_results'])
    )


def _run_kv_conjecture(args) -> Dict[str, Any]:
    entry = load_code_input(args)
    entry.code.require_full_support()
    return kv_conjecture_suite(entry.code, args.tie_break, entry.H, args.jobs, args.report_dir)


def cmd_verify(args) -> int:
    if args.suite == "kv-conjecture":
        result = _run_kv_conjecture(args)
        passed = bool(result['verdict'].get('passed'))
        emit(args, result, text=_suite_text(result))
        return EXIT_OK if passed else EXIT_FAILED

    if args.suite == "paper-examples":
        result = WorkedExamplesCheck().execute({'fixtures': args.fixtures})
    else:
        result = PropertiesCheck().execute({
            'seed': config.DEFAULT_SEED,
            'count': args.count,
            'max_length': args.max_length,
            'jobs': args.jobs,
        })

    if args.report_dir:
        generator = ReportGenerator(args.report_dir)
        result['reports'] = {'text': generator.generate_check_report(result['checks'], args.suite)}

    emit(args, result, text=_checks_text(result))
    return EXIT_OK if result['passed'] else EXIT_FAILED


def cmd_export(args) -> int:
    document = read_json(args.input)
    if is_trellis_document(document):
        t = trellis_from_dict(document)
    else:
        t = construct(load_code_input(args, document), args.kind, args.tie_break, args.selection).base

    output = export_dot(t)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(output)
        logger.info("✓ Wrote %s", args.output)
    else:
        sys.stdout.write(output)
    return EXIT_OK


def cmd_kv_dual(args) -> int:
    if args.emit == "report":
        result = _run_kv_conjecture(args)
        emit(args, result, text=_suite_text(result))
        return EXIT_OK if result['verdict'].get('passed') else EXIT_FAILED

    entry = load_code_input(args)
    entry.code.require_full_support()
    pair = characteristic_pair(entry.code, args.tie_break)
    dual = dual_characteristic_pair(pair, entry.H)

    if args.emit == "Y":
        data = dual.to_dict()
        data["input_order_pair"] = dual.y_in_input_order().to_dict()
        emit(args, data, text=pair_text(dual.Y, dual.hat_spans))
        return EXIT_OK

    entries = []
    passed = True
    for K in verify_rank_equivalence(pair, dual, entry.H).full_rank_selections:
        selection = dual_selection(pair, dual, K)
        primal, dual_trellis, report = dual_kv_pair(selection, entry.H)
        passed = passed and report.holds
        entries.append({
            **selection.to_dict(),
            "primal": trellis_to_dict(primal.base),
            "dual": trellis_to_dict(dual_trellis),
            "report": report.to_dict(),
        })
        logger.info("%s Selection %s", "✓" if report.holds else "✗", list(K))

    emit(args, {"selections": entries, "passed": passed})
    return EXIT_OK if passed else EXIT_FAILED


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = CliParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="json", help="Output format")
    common.add_argument("--output", "-o", help="Write output to this file instead of stdout")
    common.add_argument("--p", type=positive_int, help="Override the field order of the input code")
    common.add_argument("--enum-budget", type=positive_int, help="Maximum vectors any enumeration may visit")
    common.add_argument("--iso-budget", type=positive_int, help="Maximum candidate maps for isomorphism search")
    common.add_argument("--tie-break", choices=config.TIE_BREAK_POLICIES, default=config.DEFAULT_TIE_BREAK,
                        help="Generator policy for characteristic pairs")
    common.add_argument("--jobs", type=positive_int, help="Worker threads for selection checks")
    common.add_argument("--seed", type=int, help="Seed for random codes")
    common.add_argument("--report-dir", help="Write text and JSON reports here")
    common.add_argument("-v", "--verbose", action="count", default=0, help="More logging")
    common.add_argument("-q", "--quiet", action="count", default=0, help="Less logging")

    parser = CliParser(prog="tailbiter", description="Tail-biting trellises of linear codes over prime fields")
    subparsers = parser.add_subparsers(dest="command", required=True)

    charmat = subparsers.add_parser("charmat", parents=[common], help="Characteristic matrix and spans")
    charmat.add_argument("input", help="Code file")
    charmat.set_defaults(handler=cmd_charmat)

    trellis = subparsers.add_parser("trellis", parents=[common], help="Build a product, BCJR or KV trellis")
    trellis.add_argument("input", help="Code file")
    trellis.add_argument("--kind", choices=TRELLIS_KINDS, default="bcjr")
    trellis.add_argument("--selection", type=selection_list,
                         help="KV rows of the characteristic pair, e.g. 0,2 (row a starts at a)")
    trellis.set_defaults(handler=cmd_trellis)

    dual = subparsers.add_parser("dual", parents=[common], help="Local and BCJR duals of a trellis")
    dual.add_argument("input", help="Code file, or trellis file for --method local")
    dual.add_argument("--method", choices=DUAL_METHODS, default="both")
    dual.add_argument("--pairing", choices=PAIRINGS, default="default", help="State pairing for the local dual")
    dual.set_defaults(handler=cmd_dual)

    verify = subparsers.add_parser("verify", parents=[common], help="Run a verification suite")
    verify.add_argument("input", nargs="?", help="Code file (kv-conjecture only)")
    verify.add_argument("--suite", choices=config.VERIFY_SUITES, default="paper-examples")
    verify.add_argument("--fixtures", nargs="+", help="Fixture names for paper-examples (default: all)")
    verify.add_argument("--count", type=positive_int, default=config.RANDOM_CODE_COUNT,
                        help="Random codes for the properties suite")
    verify.add_argument("--max-length", type=positive_int, default=config.RANDOM_CODE_MAX_LENGTH,
                        help="Longest random code for the properties suite")
    verify.set_defaults(handler=cmd_verify)

    export = subparsers.add_parser("export", parents=[common], help="Graphviz DOT of a trellis")
    export.add_argument("input", help="Code file or trellis file")
    export.add_argument("--kind", choices=TRELLIS_KINDS, default="bcjr")
    export.add_argument("--selection", type=selection_list, help="KV rows of the characteristic pair")
    export.set_defaults(handler=cmd_export)

    kv_dual = subparsers.add_parser("kv-dual", parents=[common], help="Dual characteristic pair and dual KV-trellises")
    kv_dual.add_argument("input", help="Code file")
    kv_dual.add_argument("--emit", choices=KV_DUAL_EMITS, default="Y")
    kv_dual.set_defaults(handler=cmd_kv_dual)

    return parser


def configure_logging(verbose: int, quiet: int):
    level = logging.getLevelName(config.LOG_LEVEL.upper())
    if not isinstance(level, int):
        level = logging.INFO
    level = min(logging.CRITICAL, max(logging.DEBUG, level - 10 * verbose + 10 * quiet))
    logging.basicConfig(
        level=level,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def apply_overrides(args):
    """Copy command-line budgets and defaults onto the config module."""
    if args.enum_budget is not None:
        config.ENUMERATION_BUDGET = args.enum_budget
    if args.iso_budget is not None:
        config.ISO_SEARCH_BUDGET = args.iso_budget
    if args.seed is not None:
        config.DEFAULT_SEED = args.seed
    if args.jobs is None:
        args.jobs = config.DEFAULT_JOBS


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    apply_overrides(args)

    try:
        return args.handler(args)
    except ParseError as e:
        logger.error("Parse error: %s", e)
        return EXIT_PARSE
    except SupportError as e:
        logger.error("Support error: %s", e)
        return EXIT_SUPPORT
    except TrellisError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
