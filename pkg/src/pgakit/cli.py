"""Command-line front end.

Exit codes are stable: 0 success or bisimilar, 1 not-bisimilar or property
failure, 2 parse or configuration error, 3 jump-offset overflow, 4 violated
precondition (shift present, non-#0 jump, alphabet mismatch), 5 state
budget exceeded, 6 uncompilable thread input.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import List, Optional

from .altsem import NotPgajs0Error, behaviour_via_counter, extract_alt, verify_theorem2
from .compiler import CompileError, compile_spec, corollary1_pipeline
from .corpus import random_program, random_spec
from .execmech import AlphabetError, AlphabetMismatchError, run_exec
from .extraction import extract, extract_pgajs
from .services import BudgetExceededError
from .syntax import (
    JumpOverflowError,
    ProgramError,
    ProgramSyntaxError,
    ShiftPresentError,
    normalize_shifts,
    parse_program,
    print_program,
    transform_to_pgajs0,
)
from .threads import (
    ThreadError,
    bisimilar,
    parse_thread,
    print_thread,
    to_dot,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_OVERFLOW = 3
EXIT_PRECONDITION = 4
EXIT_BUDGET = 5
EXIT_COMPILE = 6


def _read_input(value: str) -> str:
    """Input resolution: `-` reads stdin, an existing path reads the file,
    anything else is taken literally."""
    if value == "-":
        return sys.stdin.read()
    if os.path.exists(value):
        with open(value, "r", encoding="utf-8") as fh:
            return fh.read()
    return value


def _program_arg(args) -> str:
    if getattr(args, "in_", None) is not None:
        return _read_input(args.in_)
    if getattr(args, "input", None) is not None:
        return _read_input(args.input)
    raise ConfigError("no input given; pass text, a file, or --in")


class ConfigError(Exception):
    """Configuration problem surfaced as exit code 2."""


def cmd_normalize(args) -> int:
    p = parse_program(_program_arg(args))
    if args.shifts:
        p = normalize_shifts(p)
    print(print_program(p))
    return EXIT_OK


def cmd_extract(args) -> int:
    p = parse_program(_program_arg(args))
    if args.alt:
        spec = extract_alt(p)
    elif args.via_counter:
        spec = behaviour_via_counter(p)
    else:
        spec = extract_pgajs(p)
    print(to_dot(spec) if args.dot else print_thread(spec))
    return EXIT_OK


def cmd_bisim(args) -> int:
    if args.programs:
        a = extract_pgajs(parse_program(_read_input(args.a)))
        b = extract_pgajs(parse_program(_read_input(args.b)))
    else:
        a = parse_thread(_read_input(args.a))
        b = parse_thread(_read_input(args.b))
    if bisimilar(a, b):
        print("bisimilar")
        return EXIT_OK
    print("not-bisimilar")
    return EXIT_FAIL


def cmd_compile(args) -> int:
    spec = parse_thread(_program_arg(args))
    if args.pgajs0:
        out = corollary1_pipeline(spec, auto_abstract=args.abstract)
    else:
        out = compile_spec(spec, auto_abstract=args.abstract)
    print(print_program(out))
    return EXIT_OK


def _verify_case(theorem: str, rng: random.Random, max_len: Optional[int]):
    """One generated case: returns (display text, pass/fail)."""
    if theorem == "1":
        p = random_program(rng, max_len or 12)
        ok = bisimilar(extract(p), extract_pgajs(transform_to_pgajs0(p)))
        return print_program(p), ok
    if theorem == "2":
        p = random_program(rng, max_len or 16, allow_shift=True, pgajs0=True)
        return print_program(p), verify_theorem2(p)
    if theorem == "exec":
        p = random_program(rng, max_len or 16, allow_shift=True, pgajs0=True)
        ok = bisimilar(run_exec(p), extract_pgajs(p))
        return print_program(p), ok
    spec = random_spec(rng, max_len or 8)
    compiled = corollary1_pipeline(spec)
    ok = bisimilar(extract_pgajs(compiled), spec) and bisimilar(
        behaviour_via_counter(compiled), spec
    )
    return print_program(compiled), ok


def _verify_single(theorem: str, text: str) -> bool:
    if theorem == "1":
        p = parse_program(text)
        return bisimilar(extract(p), extract_pgajs(transform_to_pgajs0(p)))
    if theorem == "2":
        return verify_theorem2(parse_program(text))
    if theorem == "exec":
        p = parse_program(text)
        return bisimilar(run_exec(p), extract_pgajs(p))
    spec = parse_thread(text)
    compiled = corollary1_pipeline(spec)
    return bisimilar(extract_pgajs(compiled), spec) and bisimilar(
        behaviour_via_counter(compiled), spec
    )


def cmd_verify(args) -> int:
    if args.in_ is not None:
        text = _read_input(args.in_)
        ok = _verify_single(args.theorem, text)
        if args.json:
            print(
                json.dumps(
                    {
                        "theorem": args.theorem,
                        "cases": [
                            {
                                "case": 0,
                                "verdict": "pass" if ok else "fail",
                                "program": text.strip(),
                                "seed": None,
                            }
                        ],
                        "passed": int(ok),
                        "total": 1,
                    }
                )
            )
        else:
            print("pass" if ok else f"fail: {text.strip()}")
        return EXIT_OK if ok else EXIT_FAIL

    rng = random.Random(args.seed)
    cases = []
    passed = 0
    first_failure = None
    for i in range(args.count):
        program, ok = _verify_case(args.theorem, rng, args.max_len)
        passed += ok
        if not ok and first_failure is None:
            first_failure = program
        cases.append(
            {
                "case": i,
                "verdict": "pass" if ok else "fail",
                "program": program,
                "seed": args.seed,
            }
        )
    if args.json:
        print(
            json.dumps(
                {
                    "theorem": args.theorem,
                    "cases": cases,
                    "passed": passed,
                    "total": args.count,
                }
            )
        )
    else:
        print(f"{passed}/{args.count} pass")
        if first_failure is not None:
            print(f"first failure: {first_failure}")
    return EXIT_OK if passed == args.count else EXIT_FAIL


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="pgakit",
        description="Instruction sequences, thread extraction, and services",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("input", nargs="?", help="program text, file, or -")
        p.add_argument("--in", dest="in_", help="input text, file, or -")

    p = sub.add_parser("normalize", help="print the canonical form")
    add_input(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--shifts", action="store_true", help="fold jump-shifts away")
    mode.add_argument("--canonical", action="store_true", help="default mode")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("extract", help="print the extracted thread")
    add_input(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--alt", action="store_true", help="two-mode counter form")
    mode.add_argument(
        "--via-counter",
        action="store_true",
        help="two-mode form composed with a counter and abstracted",
    )
    p.add_argument("--dot", action="store_true", help="emit GraphViz")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("bisim", help="compare two threads (or programs)")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument(
        "--programs",
        action="store_true",
        help="treat the two inputs as programs and compare extractions",
    )
    p.set_defaults(func=cmd_bisim)

    p = sub.add_parser("compile", help="compile a thread spec to a program")
    add_input(p)
    p.add_argument(
        "--pgajs0", action="store_true", help="expand jumps into shifts plus #0"
    )
    p.add_argument(
        "--abstract",
        action="store_true",
        help="remove silent steps instead of failing on them",
    )
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("--theorem", required=True, choices=["1", "2", "exec", "roundtrip"])
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--max-len",
        type=int,
        default=None,
        help="max program length (or max states for roundtrip)",
    )
    p.add_argument("--in", dest="in_", help="verify one given input instead")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return top


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (JumpOverflowError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except (NotPgajs0Error, ShiftPresentError, AlphabetMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CompileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPILE
    except (ProgramSyntaxError, ThreadError, ConfigError, AlphabetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ProgramError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
