"""heckelab command line: verification suites, the finite oracle, affine products and classification."""

import argparse
import asyncio
import json
import signal
import sys
from typing import List, Optional

import exact_linalg as la
from errors import HeckelabError, PreconditionError, UnsupportedCaseError
from exact_linalg import CoefficientField
from finite_group import build_group, parse_group
from hecke_affine import AFFINE_TYPES, ProPIwahoriAlgebra, affine_algebra, affine_characters, parse_expression
from hecke_core import UnipotentHeckeAlgebra, oracle_mismatches
from reports import deserialize, jsonable
from settings import log
from suites import SUITES, SuiteConfig, run_suite_async
from supersingular import classify, is_supersingular

EXIT_OK, EXIT_FAILED, EXIT_ERROR, EXIT_INTERRUPTED = 0, 1, 2, 130


def _emit(document: dict, out: Optional[str]) -> None:
    text = json.dumps(document, indent=2, ensure_ascii=False)
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
        log("Main", f"wrote {out}")
    else:
        print(text)


async def _run_with_signals(config: SuiteConfig):
    """Run a suite; SIGINT or SIGTERM cancels the pending checks."""
    loop = asyncio.get_running_loop()
    task = asyncio.current_task()

    def handle_signal(sig):
        log("Main", f"signal {sig.name} received, cancelling")
        task.cancel()

    installed = []
    for sig in (signal.SIGINT, signal.SIGTERM):
        try:
            loop.add_signal_handler(sig, handle_signal, sig)
            installed.append(sig)
        except (NotImplementedError, RuntimeError):
            pass
    try:
        return await run_suite_async(config)
    finally:
        for sig in installed:
            loop.remove_signal_handler(sig)


# ----------------------------------------------------------------------
# Commands
# ----------------------------------------------------------------------

def cmd_suite(args: argparse.Namespace) -> int:
    config = SuiteConfig(args.command, group=args.group, coeff=args.coeff, p=args.p, seed=args.seed,
                         jobs=args.jobs, out=args.out, triples=args.triples, grid_limit=args.grid_limit)
    report = asyncio.run(_run_with_signals(config))
    _emit(report.to_json(), args.out)
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_oracle(args: argparse.Namespace) -> int:
    group = build_group(*parse_group(args.group))
    field = CoefficientField.parse(args.coeff or f"fp:{group.p}")
    algebra = UnipotentHeckeAlgebra.from_convolution(group, field)
    mismatches = oracle_mismatches(group, field)
    _emit({"algebra": algebra.to_json(), "presentation_mismatches": jsonable(mismatches)}, args.out)
    return EXIT_OK if not mismatches else EXIT_FAILED


def _affine(args: argparse.Namespace) -> ProPIwahoriAlgebra:
    field = CoefficientField.parse(args.coeff or f"fp:{args.p}")
    return affine_algebra(args.type, args.p, field)


def cmd_affine(args: argparse.Namespace) -> int:
    algebra = _affine(args)
    F = algebra.field
    if args.action == "mul":
        if not args.expr:
            raise PreconditionError("affine mul needs --expr")
        product = parse_expression(algebra, args.expr)
        terms = sorted(product.terms.items(), key=lambda kv: algebra.sort_key(kv[0]))
        document = {"algebra": algebra.identifier(), "expression": args.expr,
                    "terms": [{"key": algebra.label(k), "length": algebra.length(k), "coefficient": F.encode(c)}
                              for k, c in terms]}
    elif args.action == "characters":
        document = {"algebra": algebra.identifier(),
                    "characters": [chi.to_json() for chi in affine_characters(algebra)]}
    else:
        document = algebra.to_json()
    _emit(document, args.out)
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    with open(args.module, encoding="utf-8") as handle:
        module = deserialize(handle.read())
    if not isinstance(module.algebra, ProPIwahoriAlgebra):
        raise UnsupportedCaseError("classification is implemented for pro-p Iwahori Hecke modules")
    report = is_supersingular(module).to_json()
    report["triples"] = [t.describe() for t in classify(module)]
    report["rank"] = module.rank
    report["invertible_generators"] = [g for g, m in module.generators.items() if la.is_invertible(m)]
    _emit(report, args.out)
    return EXIT_OK


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--coeff", default=None, help="coefficient field: fp:P or q (default fp:p)")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    common.add_argument("--out", default=None, help="write the JSON document here instead of stdout")

    parser = argparse.ArgumentParser(prog="heckelab", description=__doc__)
    commands = parser.add_subparsers(dest="command", required=True)
    for name in SUITES + ("all",):
        sub = commands.add_parser(name, parents=[common], help=f"run the {name} suite")
        sub.add_argument("--group", default="gl:2:2", help="gl:N:Q or sl:N:Q")
        sub.add_argument("--p", type=int, default=None, help="residue characteristic of the affine suites")
        sub.add_argument("--jobs", type=int, default=1, help="checks run concurrently")
        sub.add_argument("--triples", type=int, default=SuiteConfig.triples, help="associativity triples")
        sub.add_argument("--grid-limit", type=int, default=SuiteConfig.grid_limit,
                         help="largest character grid checked exhaustively")
        sub.set_defaults(handler=cmd_suite)
    oracle = commands.add_parser("oracle", parents=[common], help="dump the convolution structure constants")
    oracle.add_argument("--group", default="gl:2:2")
    oracle.set_defaults(handler=cmd_oracle)
    affine = commands.add_parser("affine", parents=[common], help="pro-p Iwahori Hecke algebra tools")
    affine.add_argument("action", choices=("mul", "characters", "describe"))
    affine.add_argument("--type", default="gl2", choices=sorted(AFFINE_TYPES))
    affine.add_argument("--p", type=int, default=2)
    affine.add_argument("--expr", default=None, help="product such as 's0*s1*t1' or 't[1,-1]*s1'")
    affine.set_defaults(handler=cmd_affine)
    classify_cmd = commands.add_parser("classify", parents=[common], help="supersingularity and standard triples")
    classify_cmd.add_argument("--module", required=True, help="module JSON written by heckelab")
    classify_cmd.set_defaults(handler=cmd_classify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except HeckelabError as exc:
        print(f"[Error] {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (asyncio.CancelledError, KeyboardInterrupt):
        print("[Main] interrupted", file=sys.stderr)
        return EXIT_INTERRUPTED
    except OSError as exc:
        print(f"[Error] {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
