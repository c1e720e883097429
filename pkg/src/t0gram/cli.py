"""Command line interface.

Exit codes: 0 success, 1 bad input or usage, 2 closure check mismatch,
3 derivation not found within budget.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import closures, oracle
from .cf import CfGrammar, cf_concat, cf_union, general_of_cf
from .core import RESERVED, Grammar, parse_symbols, render_form
from .engine import SearchBudget, derives_within, enumerate_language, generates_within
from .errors import GrammarError
from .fileformat import load_grammar, render_grammar

EXIT_MISMATCH = 2
EXIT_NOT_FOUND = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _general(g) -> Grammar:
    return general_of_cf(g) if isinstance(g, CfGrammar) else g


def _budget(args, n):
    return SearchBudget.for_word_len(n, max_steps=args.max_steps, max_form_len=args.max_form_len)


def _tokens(g: Grammar, text: str, chars: bool):
    if chars:
        text = " ".join(text) if text else RESERVED
    elif not text.strip():
        text = RESERVED
    return parse_symbols(text, g)


def _print_trace(g, trace, as_json):
    if as_json:
        print(json.dumps(trace.to_json()))
    else:
        print(trace.render(g))


def cmd_enum(args):
    g = _general(load_grammar(args.file))
    for w in enumerate_language(g, _budget(args, args.max_word_len)):
        print(render_form(w))
    return 0


def cmd_member(args):
    g = _general(load_grammar(args.file))
    w = _tokens(g, args.word, args.chars)
    trace = generates_within(g, w, _budget(args, len(w)))
    if trace is None:
        print(f"not found within budget: {render_form(w)}", file=sys.stderr)
        return EXIT_NOT_FOUND
    _print_trace(g, trace, args.json)
    return 0


def cmd_derive(args):
    g = _general(load_grammar(args.file))
    src = _tokens(g, getattr(args, "from"), args.chars)
    dst = _tokens(g, args.to, args.chars)
    trace = derives_within(g, src, dst, _budget(args, max(len(src), len(dst))))
    if trace is None:
        print(f"not found within budget: {render_form(src)} =>* {render_form(dst)}", file=sys.stderr)
        return EXIT_NOT_FOUND
    _print_trace(g, trace, args.json)
    return 0


def _operands(args):
    files = [args.file1] + ([args.file2] if args.file2 else [])
    need = oracle.ARITY[args.operation]
    if len(files) != need:
        raise UsageError(f"{args.operation} takes {need} grammar file(s)")
    return [load_grammar(f) for f in files]


def cmd_op(args):
    gs = _operands(args)
    if all(isinstance(g, CfGrammar) for g in gs) and args.operation in ("union", "concat"):
        out = (cf_union if args.operation == "union" else cf_concat)(*gs)
    else:
        out = oracle.build(args.operation, [_general(g) for g in gs])
    text = render_grammar(out)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_check(args):
    gs = [_general(g) for g in _operands(args)]
    base = _budget(args, args.max_word_len)
    report = oracle.check_closure(args.operation, gs, args.max_word_len, base)
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(report.render())
    return 0 if report.equal else EXIT_MISMATCH


def cmd_classify(args):
    g = _general(load_grammar(args.file))
    gs = closures.star_grammar(g)
    form = _tokens(gs, args.form, False)
    items = []
    budget = _budget(args, max(len(form), 1))
    for c in closures.classify_star_form(g, form):
        item = c.to_json()
        if args.verify:
            v = closures.verify_star_classification(g, c, budget)
            item["verified"] = v.verified
            if v.verified and c.case == 3:
                item = dict(v.classification.to_json(), verified=True)
            if v.detail:
                item["detail"] = v.detail
        items.append(item)
    print(json.dumps({"form": render_form(form), "classifications": items}, indent=2))
    return 0


def _add_budget(p):
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--max-form-len", type=int, default=None)


def make_parser():
    parser = _Parser(prog="t0gram", description="Unrestricted grammar engine and closure constructions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enum", help="enumerate short words of a grammar")
    p.add_argument("file")
    p.add_argument("--max-word-len", type=int, required=True)
    _add_budget(p)
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("member", help="search for a derivation of a word")
    p.add_argument("file")
    p.add_argument("--word", required=True, help="space-separated tokens ('eps' for the empty word)")
    p.add_argument("--chars", action="store_true", help="split --word into single characters")
    p.add_argument("--json", action="store_true")
    _add_budget(p)
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("derive", help="search for a derivation between two forms")
    p.add_argument("file")
    p.add_argument("--from", required=True)
    p.add_argument("--to", required=True)
    p.add_argument("--chars", action="store_true")
    p.add_argument("--json", action="store_true")
    _add_budget(p)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("op", help="write a constructed grammar")
    p.add_argument("operation", choices=oracle.OPS)
    p.add_argument("file1")
    p.add_argument("file2", nargs="?")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_op)

    p = sub.add_parser("check", help="compare a construction with the language oracle")
    p.add_argument("operation", choices=oracle.OPS)
    p.add_argument("file1")
    p.add_argument("file2", nargs="?")
    p.add_argument("--max-word-len", type=int, required=True)
    p.add_argument("--json", action="store_true")
    _add_budget(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", help="classify a star-grammar form into its structural cases")
    p.add_argument("file")
    p.add_argument("--form", required=True)
    p.add_argument("--verify", action="store_true")
    _add_budget(p)
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GrammarError, UsageError, ValueError, OSError) as e:
        print(f"t0gram: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
