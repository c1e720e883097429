"""The ``.gram`` text format.

::

    # anbn
    kind: general
    terminals: a b
    nonterminals: S
    start: S
    rules:
    S -> a S b
    S -> eps

``kind: cf`` additionally requires a single nonterminal on every left-hand
side and yields a :class:`~t0gram.cf.CfGrammar`. Structured nonterminal tags
are written with an ``@`` sigil and read back as plain named nonterminals.
"""

from __future__ import annotations

from typing import Union

from .cf import CfGrammar, cf_of_general
from .core import (RESERVED, Grammar, Named, Nonterminal, Terminal, designate, render_form,
                   render_symbol)
from .errors import (GrammarSyntaxError, InitialNotDeclared, NameCollision,
                     NoNonterminalOnLhs, NotContextFree, UndeclaredSymbol)

HEADERS = ("kind", "terminals", "nonterminals", "start")
KINDS = ("general", "cf")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _side(text: str, table, lineno: int):
    tokens = text.split()
    if not tokens:
        raise GrammarSyntaxError("empty rule side (write 'eps' for the empty string)", lineno)
    if RESERVED in tokens:
        if tokens != [RESERVED]:
            raise GrammarSyntaxError(f"{RESERVED!r} must stand alone", lineno)
        return ()
    out = []
    for tok in tokens:
        if tok not in table:
            raise UndeclaredSymbol(tok, lineno)
        out.append(table[tok])
    return tuple(out)


def parse_grammar(text: str) -> Union[Grammar, CfGrammar]:
    headers = {}
    header_lines = {}
    rule_lines = []
    in_rules = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        if in_rules:
            rule_lines.append((lineno, line))
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep:
            raise GrammarSyntaxError(f"expected 'key: value', got {line!r}", lineno)
        if key == "rules":
            if value.strip():
                raise GrammarSyntaxError("rules go on the lines after 'rules:'", lineno)
            in_rules = True
            continue
        if key not in HEADERS:
            raise GrammarSyntaxError(f"unknown header {key!r}", lineno)
        if key in headers:
            raise GrammarSyntaxError(f"duplicate header {key!r}", lineno)
        headers[key] = value.split()
        header_lines[key] = lineno

    kind = headers.get("kind", ["general"])
    if len(kind) != 1 or kind[0] not in KINDS:
        raise GrammarSyntaxError(f"kind must be one of {KINDS}", header_lines.get("kind"))
    kind = kind[0]
    if "start" not in headers or len(headers["start"]) != 1:
        raise GrammarSyntaxError("exactly one start symbol required", header_lines.get("start"))

    terminals = []
    for tok in headers.get("terminals", []):
        try:
            terminals.append(Terminal(tok))
        except ValueError as e:
            raise GrammarSyntaxError(str(e), header_lines["terminals"]) from None
    nonterminals = []
    for tok in headers.get("nonterminals", []):
        try:
            nonterminals.append(Named(tok))
        except ValueError as e:
            raise GrammarSyntaxError(str(e), header_lines["nonterminals"]) from None
    clash = {t.token for t in terminals} & {n.name for n in nonterminals}
    if clash:
        raise NameCollision(f"declared as both terminal and nonterminal: {sorted(clash)}",
                            header_lines["nonterminals"])
    table = {t.token: t for t in terminals}
    table.update({n.name: n for n in nonterminals})
    start = headers["start"][0]
    if start not in table or not isinstance(table[start], Nonterminal):
        raise InitialNotDeclared(f"start symbol {start!r} is not a declared nonterminal", header_lines["start"])

    rules = []
    for lineno, line in rule_lines:
        left, sep, right = line.partition("->")
        if not sep or "->" in right:
            raise GrammarSyntaxError(f"expected exactly one '->' in {line!r}", lineno)
        lhs = _side(left, table, lineno)
        rhs = _side(right, table, lineno)
        if kind == "cf" and (len(lhs) != 1 or not isinstance(lhs[0], Nonterminal)):
            raise NotContextFree("left-hand side must be a single nonterminal", lineno)
        try:
            rules.append(designate(lhs, rhs))
        except NoNonterminalOnLhs as e:
            raise NoNonterminalOnLhs(str(e), lineno) from None

    g = Grammar(frozenset(terminals), frozenset(nonterminals), table[start], rules)
    return cf_of_general(g) if kind == "cf" else g


def render_grammar(g: Union[Grammar, CfGrammar]) -> str:
    """Canonical text; rules in stored order, alphabets sorted by name."""
    if isinstance(g, CfGrammar):
        kind = "cf"
        rules = [f"{render_symbol(r.head)} -> {render_form(r.body)}" for r in g.rules]
    else:
        kind = "general"
        rules = [f"{render_form(r.lhs)} -> {render_form(r.output)}" for r in g.rules]
    ts = " ".join(sorted(render_symbol(t) for t in g.terminals))
    ns = " ".join(sorted(render_symbol(n) for n in g.nonterminals))
    lines = [
        f"kind: {kind}",
        f"terminals: {ts}".rstrip(),
        f"nonterminals: {ns}".rstrip(),
        f"start: {render_symbol(g.initial)}",
        "rules:",
    ] + rules
    return "\n".join(lines) + "\n"


def load_grammar(path) -> Union[Grammar, CfGrammar]:
    with open(path, encoding="utf-8") as f:
        return parse_grammar(f.read())

