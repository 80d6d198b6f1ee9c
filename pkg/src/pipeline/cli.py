"""
Command-line interface.

    python run.py sharpen --input data/instances/i2_5.json --output trace.json
    python run.py sharpen-no-h3 --input ...
    python run.py analyze --input ...
    python run.py oracle --input ... --group-cap 20000
    python run.py verify trace.json [--input instance.json]

Every subcommand prints a result dict as JSON on stdout and exits with 0 on
success, 2 on input errors, 3 when a cap is exceeded and 4 when the input is
inconsistent with the guarantees of the construction.
"""

import argparse
import json
import sys
from datetime import datetime, timezone
from typing import Any, Callable, Dict, List, Optional

from src.pipeline.drivers import sharpen, sharpen_no_h3
from src.pipeline.problem import ProblemInstance, load
from src.pipeline.reports import analyze, oracle, replay, trace_to_json
from src.utils.config_reader import get_config_bool, get_config_int
from src.utils.errors import EXIT_INCONSISTENT, EXIT_INPUT_ERROR, EXIT_OK, ParseError, SharpeningError
from src.utils.logging import logger


def _instance(args: argparse.Namespace) -> ProblemInstance:
    if not args.input:
        raise ParseError("--input is required")
    return load(args.input).with_caps(args.order_cap, args.group_cap)


def _sharpen(args: argparse.Namespace) -> Dict[str, Any]:
    driver = sharpen_no_h3 if args.command == "sharpen-no-h3" else sharpen
    trace = driver(_instance(args))
    return {"success": True, "step_count": len(trace.steps), **trace_to_json(trace)}


def _analyze(args: argparse.Namespace) -> Dict[str, Any]:
    return {"success": True, **analyze(_instance(args)).to_dict()}


def _oracle(args: argparse.Namespace) -> Dict[str, Any]:
    instance = _instance(args)
    report = oracle(instance, instance.group_cap)
    return {"success": report.ok, **report.to_dict()}


def _verify(args: argparse.Namespace) -> Dict[str, Any]:
    try:
        with open(args.trace, "r", encoding="utf-8") as fp:
            data = json.load(fp)
    except FileNotFoundError as e:
        raise ParseError(f"trace file not found: {args.trace}") from e
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON in {args.trace}: {e}") from e
    if not isinstance(data, dict):
        raise ParseError(f"{args.trace} does not hold a trace object")

    if args.input:
        instance = _instance(args)
    elif data.get("instance"):
        instance = ProblemInstance.from_dict(data["instance"], source=args.trace).with_caps(
            args.order_cap, args.group_cap
        )
    else:
        raise ParseError("trace has no instance; pass --input")
    report = replay(instance, data)
    return {"success": report.ok, **report.to_dict()}


COMMANDS: Dict[str, Callable[[argparse.Namespace], Dict[str, Any]]] = {
    "sharpen": _sharpen,
    "sharpen-no-h3": _sharpen,
    "analyze": _analyze,
    "oracle": _oracle,
    "verify": _verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coxeter-sharpening",
        description="Sharpen reflection generating sets of Coxeter groups by angle-deformations.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="problem instance (JSON)")
    common.add_argument("--output", help="write the result JSON here as well as to stdout")
    common.add_argument("--order-cap", type=int, default=None, help="cap for element orders")
    common.add_argument("--group-cap", type=int, default=None, help="cap for enumerated groups")
    common.add_argument(
        "--deterministic",
        action=argparse.BooleanOptionalAction,
        default=get_config_bool("pipeline.deterministic", True),
        help="omit timestamps and sort keys so reruns give identical output",
    )

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("sharpen", parents=[common], help="sharpen S with theta- and delta-steps")
    sub.add_parser("sharpen-no-h3", parents=[common], help="sharpen S when its diagram has no H3 subset")
    sub.add_parser("analyze", parents=[common], help="per-edge sharpness and classification")
    sub.add_parser("oracle", parents=[common], help="brute-force checks for finite groups")
    verify = sub.add_parser("verify", parents=[common], help="replay a trace exactly")
    verify.add_argument("trace", help="trace JSON written by sharpen")
    return parser


def run(argv: Optional[List[str]] = None) -> tuple:
    """Parse ``argv`` and run one subcommand; returns (result dict, exit code)."""
    args = build_parser().parse_args(argv)
    logger.info("Command started", command=args.command, input=args.input)
    try:
        result = COMMANDS[args.command](args)
        code = EXIT_OK if result.get("success") else EXIT_INCONSISTENT
    except SharpeningError as e:
        logger.error("Command failed", command=args.command, error=str(e), error_type=e.error_type)
        result = {"success": False, **e.to_dict()}
        code = e.exit_code
    except (OSError, ValueError) as e:
        logger.error("Command failed", command=args.command, error=str(e))
        result = {"success": False, "error": str(e), "error_type": type(e).__name__}
        code = EXIT_INPUT_ERROR

    if not args.deterministic or not result.get("success"):
        result["timestamp"] = datetime.now(timezone.utc).isoformat()

    indent = get_config_int("pipeline.output_indent", 2)
    text = json.dumps(result, indent=indent, sort_keys=args.deterministic, default=str)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fp:
            fp.write(text + "\n")
    print(text)
    return result, code


def main(argv: Optional[List[str]] = None) -> int:
    _, code = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
