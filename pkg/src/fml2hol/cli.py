"""Command-line front end.

Subcommands: ``translate`` (qmf to thf0), ``check`` (bounded countermodel
search), ``eval`` (evaluate a problem over a model fixture), and
``run-prover`` (dispatch a thf file to an external prover and parse its
SZS status line).  The translation target is selected either with
``-f thf:<logic>:<domain>`` or with ``--logic``/``--domain``; tokens are
case-insensitive with canonical lowercase spelling k, k4, d, d4, t, s4,
s5 and const, vary, cumul.

Exit codes: 0 success (including "no countermodel", which is a result,
not a failure); 1 parse or validation error; 2 I/O error; 3 search
timeout under --strict-timeout; 4 model fixture violates the frame or
domain condition; 64 usage error.
"""

from __future__ import annotations

import argparse
import os
import re
import shlex
import subprocess
import sys
from dataclasses import dataclass
from pathlib import Path

from . import embedding, fml, kripke, qmf, thf
from .embedding import TranslationConfig, parse_domain, parse_logic

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_IO = 2
EXIT_TIMEOUT = 3
EXIT_FIXTURE = 4
EXIT_USAGE = 64

SZS_KINDS = (
    "Theorem",
    "CounterSatisfiable",
    "Satisfiable",
    "Unsatisfiable",
    "Unknown",
    "Timeout",
    "Error",
)

_SZS_LINE = re.compile(r"SZS\s+status\s+(\S+)")


@dataclass(frozen=True)
class SzsStatus:
    kind: str
    detail: str | None = None

    def __post_init__(self):
        if self.kind not in SZS_KINDS:
            raise ValueError(f"unknown SZS status kind {self.kind!r}")


def parse_szs(output: str) -> SzsStatus:
    """First SZS status line of prover output; Error if none or unknown."""
    for line in output.splitlines():
        m = _SZS_LINE.search(line)
        if m:
            word = m.group(1)
            if word in SZS_KINDS and word != "Error":
                return SzsStatus(word)
            return SzsStatus("Error", line.strip())
    return SzsStatus("Error", "no SZS status line in prover output")


def run_prover(path: str, command: str, timeout: float | None = None) -> SzsStatus:
    """Run a prover command template on a thf file and parse the verdict.

    The template is split shell-style and every occurrence of ``{file}``
    is replaced by the path.  Spawn failures and missing status lines both
    come back as Error; exceeding the timeout comes back as Timeout.
    """
    cmd = [part.replace("{file}", str(path)) for part in shlex.split(command)]
    try:
        proc = subprocess.run(cmd, capture_output=True, text=True, timeout=timeout)
    except subprocess.TimeoutExpired:
        return SzsStatus("Timeout")
    except OSError as exc:
        return SzsStatus("Error", str(exc))
    return parse_szs(proc.stdout + "\n" + proc.stderr)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_config_flags(parser: argparse.ArgumentParser):
    parser.add_argument(
        "-f",
        "--format",
        metavar="thf:<logic>:<domain>",
        help="combined target selector, e.g. thf:d:const",
    )
    parser.add_argument("--logic", help="one of k, k4, d, d4, t, s4, s5")
    parser.add_argument("--domain", help="one of const, vary, cumul")


def _config_from_args(args, parser: argparse.ArgumentParser) -> TranslationConfig:
    if args.format is not None:
        if args.logic is not None or args.domain is not None:
            raise ValueError("give either -f or --logic/--domain, not both")
        parts = args.format.split(":")
        if len(parts) != 3 or parts[0].lower() != "thf":
            raise ValueError(
                f"unrecognized format {args.format!r} (expected thf:<logic>:<domain>)"
            )
        return TranslationConfig(parse_logic(parts[1]), parse_domain(parts[2]))
    if args.logic is None or args.domain is None:
        parser.error("a target is required: -f thf:<logic>:<domain> or --logic and --domain")
    return TranslationConfig(parse_logic(args.logic), parse_domain(args.domain))


def _read_text(path: str) -> str:
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _parse_input(path: str) -> fml.Problem:
    try:
        text = _read_text(path)
    except OSError as exc:
        print(f"cannot read {path}: {exc.strerror or exc}", file=sys.stderr)
        raise SystemExit(EXIT_IO) from None
    try:
        return qmf.parse_problem(text)
    except (qmf.ParseError, fml.ProblemError) as exc:
        print(f"{path}:{exc}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT) from None


def _run_translate(args, parser) -> int:
    config = _config_from_args(args, parser)
    problem = _parse_input(args.input)
    if args.output is not None:
        output = args.output
    else:
        output = Path(args.input).with_suffix(".thf").name
    if args.include_axioms:
        axiom_dir = os.environ.get("FML2HOL_AXIOM_DIR", "")
        basename = Path(args.input).stem
        mode = thf.Include(axiom_dir, basename)
    else:
        mode = thf.Inline()
    try:
        emitted = thf.emit_problem(embedding.embed_problem(problem, config), mode)
    except embedding.EmbeddingError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT
    out_dir = Path(".") if output == "-" else Path(output).parent
    try:
        for rel_path, text in emitted.axiom_files:
            target = out_dir / rel_path
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(text, encoding="utf-8")
        if output == "-":
            sys.stdout.write(emitted.problem_text)
        else:
            Path(output).write_text(emitted.problem_text, encoding="utf-8")
    except OSError as exc:
        print(f"cannot write output: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _run_check(args, parser) -> int:
    config = _config_from_args(args, parser)
    problem = _parse_input(args.input)
    bounds = kripke.SearchBounds(args.max_worlds, args.max_individuals, args.time_budget)
    try:
        result = kripke.find_countermodel(problem, config, bounds)
    except kripke.NoConjectureError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT
    if isinstance(result, kripke.Countermodel):
        print(f"# conjecture false at {result.world}")
        sys.stdout.write(kripke.print_model(result.model))
        print("% SZS status CounterSatisfiable")
        return EXIT_OK
    if isinstance(result, kripke.Timeout):
        print("search timed out")
        print("% SZS status Unknown")
        return EXIT_TIMEOUT if args.strict_timeout else EXIT_OK
    print(
        f"no countermodel within bounds (worlds ≤ {bounds.max_worlds}, "
        f"individuals ≤ {bounds.max_individuals})"
    )
    print("% SZS status Unknown")
    return EXIT_OK


def _run_eval(args, parser) -> int:
    config = _config_from_args(args, parser)
    problem = _parse_input(args.input)
    try:
        model = kripke.parse_model(_read_text(args.model))
    except OSError as exc:
        print(f"cannot read {args.model}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    except kripke.ModelError as exc:
        print(f"{args.model}:{exc}", file=sys.stderr)
        return EXIT_INPUT
    violations = kripke.frame_violations(model, config.logic) + kripke.domain_violations(
        model, config.domain
    )
    if violations:
        for message in violations:
            print(message, file=sys.stderr)
        return EXIT_FIXTURE
    conjecture = problem.conjecture()
    if conjecture is None:
        print("the problem has no conjecture to evaluate", file=sys.stderr)
        return EXIT_INPUT
    try:
        for w in model.worlds:
            value = kripke.eval_fml(model, w, conjecture.formula)
            print(f"{'true' if value else 'false'} at {w}")
        agrees = kripke.correspondence_check(model, conjecture.formula, config)
    except (kripke.UnknownSymbolError, kripke.UnboundVariableError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT
    print(f"correspondence {'OK' if agrees else 'FAILED'}")
    return EXIT_OK


def _run_prover_cmd(args, parser) -> int:
    if "{file}" not in args.command:
        parser.error("the command template must contain a {file} placeholder")
    if not os.path.exists(args.input):
        print(f"cannot read {args.input}: no such file", file=sys.stderr)
        return EXIT_IO
    status = run_prover(args.input, args.command, args.timeout)
    if status.kind == "Error" and status.detail:
        print(status.detail, file=sys.stderr)
    print(f"% SZS status {status.kind}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fml2hol", description=__doc__.splitlines()[0])
    subparsers = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    p_translate = subparsers.add_parser(
        "translate", help="translate a qmf problem to a thf0 problem"
    )
    p_translate.add_argument("input", help="qmf problem file")
    _add_config_flags(p_translate)
    p_translate.add_argument(
        "-o",
        "--output",
        help="output path, - for stdout (default: input basename with .thf)",
    )
    p_translate.add_argument(
        "--include-axioms",
        action="store_true",
        help="split the semantics into two axiom files referenced by include "
        "lines instead of inlining them (FML2HOL_AXIOM_DIR sets the directory)",
    )

    p_check = subparsers.add_parser("check", help="bounded countermodel search")
    p_check.add_argument("input", help="qmf problem file")
    _add_config_flags(p_check)
    p_check.add_argument("--max-worlds", type=int, default=3, help="world bound (default 3)")
    p_check.add_argument(
        "--max-individuals", type=int, default=3, help="individual bound (default 3)"
    )
    p_check.add_argument("--time-budget", type=float, help="seconds before giving up")
    p_check.add_argument(
        "--strict-timeout",
        action="store_true",
        help="exit with code 3 when the time budget is exhausted",
    )

    p_eval = subparsers.add_parser("eval", help="evaluate a problem over a model fixture")
    p_eval.add_argument("input", help="qmf problem file")
    p_eval.add_argument("--model", required=True, help="model fixture file")
    _add_config_flags(p_eval)

    p_prover = subparsers.add_parser(
        "run-prover", help="run an external prover and parse its SZS status"
    )
    p_prover.add_argument("input", help="thf problem file")
    p_prover.add_argument(
        "--command", required=True, help="command template with a {file} placeholder"
    )
    p_prover.add_argument("--timeout", type=float, help="seconds before killing the prover")

    return parser


_HANDLERS = {
    "translate": _run_translate,
    "check": _run_check,
    "eval": _run_eval,
    "run-prover": _run_prover_cmd,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.subcommand](args, parser)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
