"""Command-line front end.

    nonfree run prog.egi          run a script, printing each expression's value
    nonfree run -                 same, reading standard input
    nonfree -e "(+ 1 2)"          evaluate one expression
    nonfree repl                  interactive loop
    nonfree trace -e "(match-all ...)" --rounds 8
    nonfree bench --k 2 --n 64 --reps 3
"""

import argparse
import sys

from .bench import run_bench
from .core import show
from .errors import LangError
from .interpreter import Interpreter
from .prelude import SECTIONS
from .reader import read_program

PROMPT = "> "
MORE = ". "


def _common(parser, suppress):
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--no-prelude", action="store_true",
                        default=argparse.SUPPRESS if suppress else False,
                        help="start with builtins only")
    parser.add_argument("--prelude-section", action="append", metavar="NAME",
                        choices=sorted(SECTIONS), default=default,
                        help="load only this prelude section (repeatable)")
    parser.add_argument("--max-results", type=int, metavar="N",
                        default=argparse.SUPPRESS if suppress else 1000,
                        help="print at most N elements of a collection (default 1000)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="nonfree", description="Pattern matching for non-free data types.")
    _common(parser, suppress=False)
    parser.add_argument("-e", dest="expr", metavar="EXPR", help="evaluate EXPR and print it")
    sub = parser.add_subparsers(dest="mode")

    p = sub.add_parser("run", help="run a script ('-' reads standard input)")
    p.add_argument("path")
    _common(p, suppress=True)

    p = sub.add_parser("repl", help="read-eval-print loop")
    _common(p, suppress=True)

    p = sub.add_parser("trace", help="print the reduction path of a match-all")
    p.add_argument("-e", dest="expr", required=True, metavar="EXPR")
    p.add_argument("--rounds", type=int, default=8)
    _common(p, suppress=True)

    p = sub.add_parser("bench", help="time the seq-k query over n zeros")
    p.add_argument("--k", type=int, choices=(2, 3, 4), default=2)
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--reps", type=int, default=1)
    _common(p, suppress=True)
    return parser


def _interpreter(args):
    if args.no_prelude:
        return Interpreter(prelude=False)
    return Interpreter(sections=args.prelude_section)


def _emit(values, limit, out):
    for v in values:
        print(show(v, limit), file=out)


def run_source(interp, source, limit, out):
    """Run a script form by form, printing as it goes."""
    for form in read_program(source):
        value = interp.execute(form)
        if value is not None:
            _emit([value], limit, out)


def _incomplete(err):
    return str(err).startswith("unexpected end of input")


def repl(interp, limit, stdin, out, err):
    """Lines accumulate until they form complete expressions.

    Error positions count from the start of the entry being read.
    """
    interactive = stdin.isatty()
    buffer = ""
    while True:
        if interactive:
            out.write(MORE if buffer else PROMPT)
            out.flush()
        line = stdin.readline()
        if not line:
            break
        buffer += line
        if not buffer.strip():
            buffer = ""
            continue
        try:
            forms = read_program(buffer)
        except LangError as e:
            if _incomplete(e):
                continue
            print(f"error: {e}", file=err)
            buffer = ""
            continue
        buffer = ""
        for form in forms:
            try:
                value = interp.execute(form)
            except LangError as e:
                print(f"error: {e}", file=err)
                break
            except RecursionError:
                print("error: recursion too deep", file=err)
                break
            if value is not None:
                _emit([value], limit, out)
    if buffer.strip():
        print("error: unexpected end of input", file=err)
        return 1
    return 0


def main(argv=None, stdin=None, stdout=None, stderr=None):
    stdin = stdin or sys.stdin
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.mode is None and args.expr is None:
        parser.print_usage(err)
        print("nonfree: error: give a command or -e EXPR", file=err)
        return 2
    if args.max_results < 0:
        parser.error("--max-results must be non-negative")
    limit = args.max_results
    try:
        if args.mode == "bench":
            if args.n < 4:
                parser.error("--n must be at least 4")
            r = run_bench(args.k, args.n, args.reps, _interpreter(args))
            print(r.result, file=out)
            # timings vary from run to run, so they stay off standard output
            print(r.line(), file=err)
            return 0
        interp = _interpreter(args)
        if args.mode == "trace":
            if args.rounds < 0:
                parser.error("--rounds must be non-negative")
            out.write(interp.trace(args.expr, args.rounds))
        elif args.mode == "run":
            if args.path == "-":
                source = stdin.read()
            else:
                with open(args.path, encoding="utf-8") as f:
                    source = f.read()
            run_source(interp, source, limit, out)
        elif args.mode == "repl":
            return repl(interp, limit, stdin, out, err)
        else:
            run_source(interp, args.expr, limit, out)
    except LangError as e:
        out.flush()
        print(f"error: {e}", file=err)
        return 1
    except RecursionError:
        print("error: recursion too deep", file=err)
        return 1
    except OSError as e:
        print(f"error: {e.strerror}: {e.filename}", file=err)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
