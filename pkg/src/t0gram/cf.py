"""Context-free grammars as a special case of unrestricted ones.

CF grammars run through the general engine after :func:`general_of_cf`.
The CF union and concatenation are defined so that converting their result
gives exactly the general construction applied to the converted operands.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .core import Form, Fresh, Grammar, Grule, Lift1, Lift2, Nonterminal, Proxy1, Proxy2, Terminal, render_form, render_symbol
from .closures import wrap_symbol1, wrap_symbol2
from .errors import NotContextFree

FRESH = Fresh()


@dataclass(frozen=True)
class CfRule:
    head: Nonterminal
    body: Form

    def __post_init__(self):
        object.__setattr__(self, "body", tuple(self.body))

    def __str__(self):
        return f"{render_symbol(self.head)} -> {render_form(self.body)}"


@dataclass(frozen=True)
class CfGrammar:
    terminals: frozenset
    nonterminals: frozenset
    initial: Nonterminal
    rules: Tuple[CfRule, ...]

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        # reuse the general validation
        general_of_cf(self)


def general_of_cf(cg: CfGrammar) -> Grammar:
    return Grammar(cg.terminals, cg.nonterminals, cg.initial,
                   [Grule((), r.head, (), r.body) for r in cg.rules])


def is_context_free(g: Grammar) -> bool:
    return all(not r.input_L and not r.input_R for r in g.rules)


def cf_of_general(g: Grammar) -> CfGrammar:
    for r in g.rules:
        if r.input_L or r.input_R:
            raise NotContextFree(f"rule {r} has context on its left-hand side")
    return CfGrammar(g.terminals, g.nonterminals, g.initial, [CfRule(r.input_N, r.output) for r in g.rules])


def _lift(tag):
    def f(s):
        return s if isinstance(s, Terminal) else tag(s)
    return f


def cf_union(cg1: CfGrammar, cg2: CfGrammar) -> CfGrammar:
    l1, l2 = _lift(Lift1), _lift(Lift2)
    rules = [CfRule(Lift1(r.head), tuple(map(l1, r.body))) for r in cg1.rules]
    rules += [CfRule(Lift2(r.head), tuple(map(l2, r.body))) for r in cg2.rules]
    rules += [CfRule(FRESH, (Lift1(cg1.initial),)), CfRule(FRESH, (Lift2(cg2.initial),))]
    nts = {Lift1(n) for n in cg1.nonterminals} | {Lift2(n) for n in cg2.nonterminals} | {FRESH}
    return CfGrammar(cg1.terminals | cg2.terminals, frozenset(nts), FRESH, rules)


def cf_concat(cg1: CfGrammar, cg2: CfGrammar) -> CfGrammar:
    """Proxy-based concatenation; every added rule has a single-symbol head."""
    ts = sorted(cg1.terminals | cg2.terminals, key=render_symbol)
    rules = [CfRule(Lift1(r.head), tuple(map(wrap_symbol1, r.body))) for r in cg1.rules]
    rules += [CfRule(Lift2(r.head), tuple(map(wrap_symbol2, r.body))) for r in cg2.rules]
    rules += [CfRule(Proxy1(t), (t,)) for t in ts]
    rules += [CfRule(Proxy2(t), (t,)) for t in ts]
    rules.append(CfRule(FRESH, (Lift1(cg1.initial), Lift2(cg2.initial))))
    nts = ({Lift1(n) for n in cg1.nonterminals} | {Lift2(n) for n in cg2.nonterminals}
           | {Proxy1(t) for t in ts} | {Proxy2(t) for t in ts} | {FRESH})
    return CfGrammar(frozenset(ts), frozenset(nts), FRESH, rules)
