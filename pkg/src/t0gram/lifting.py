"""Embedding a small grammar into a larger one.

A :class:`LiftedGrammar` pairs a grammar ``g0`` with a grammar ``g`` that
contains a renamed copy of every ``g0`` rule. ``lift_nt`` renames nonterminals
upward, ``sink_nt`` is its partial inverse. When the structural conditions
checked by :func:`validate_lifted` hold, derivations move between the two
grammars step for step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, List, Optional, Tuple

from .core import Form, Grammar, Grule, Nonterminal, Symbol, Terminal, render_symbol
from .engine import DerivationTrace, Match, replay
from .errors import InvalidTrace


@dataclass(frozen=True)
class LiftedGrammar:
    g0: Grammar
    g: Grammar
    lift_nt: Callable[[Nonterminal], Nonterminal]
    sink_nt: Callable[[Nonterminal], Optional[Nonterminal]]


def lift_symbol(lg: LiftedGrammar, s: Symbol) -> Symbol:
    return s if isinstance(s, Terminal) else lg.lift_nt(s)


def lift_string(lg: LiftedGrammar, form) -> Form:
    return tuple(lift_symbol(lg, s) for s in form)


def lift_rule(lg: LiftedGrammar, r: Grule) -> Grule:
    return Grule(lift_string(lg, r.input_L), lg.lift_nt(r.input_N),
                 lift_string(lg, r.input_R), lift_string(lg, r.output))


def sink_string(lg: LiftedGrammar, form) -> Optional[Form]:
    """Map a ``g`` form back to ``g0``; ``None`` if it uses foreign nonterminals."""
    out = []
    for s in form:
        if isinstance(s, Terminal):
            out.append(s)
            continue
        n = lg.sink_nt(s)
        if n is None:
            return None
        out.append(n)
    return tuple(out)


@dataclass
class LiftReport:
    violations: List[Tuple[str, object]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def clauses(self):
        return sorted({name for name, _ in self.violations})

    def __bool__(self):
        return self.ok


def validate_lifted(lg: LiftedGrammar) -> LiftReport:
    """Exhaustively check the embedding conditions over the finite alphabets."""
    report = LiftReport()
    bad = report.violations.append
    g0, g = lg.g0, lg.g
    nts0 = sorted(g0.nonterminals, key=render_symbol)

    for n in nts0:
        if lg.lift_nt(n) not in g.nonterminals:
            bad(("lift_declared", n))
    for a, b in combinations(nts0, 2):
        if lg.lift_nt(a) == lg.lift_nt(b):
            bad(("lift_inj", (a, b)))

    sinkable = [(n, lg.sink_nt(n)) for n in sorted(g.nonterminals, key=render_symbol)]
    sinkable = [(n, m) for n, m in sinkable if m is not None]
    for (a, ma), (b, mb) in combinations(sinkable, 2):
        if ma == mb:
            bad(("sink_inj", (a, b)))

    for n in nts0:
        if lg.sink_nt(lg.lift_nt(n)) != n:
            bad(("lift_nt_sink", n))

    rules = set(g.rules)
    lifted = {lift_rule(lg, r) for r in g0.rules}
    for r in g0.rules:
        if lift_rule(lg, r) not in rules:
            bad(("corresponding_rules", r))
    for r in g.rules:
        if lg.sink_nt(r.input_N) is not None and r not in lifted:
            bad(("preimage_of_rules", r))

    if not g0.terminals <= g.terminals:
        bad(("terminals", sorted(g0.terminals - g.terminals, key=render_symbol)))
    return report


def lift_derivation(lg: LiftedGrammar, trace: DerivationTrace,
                    left: Form = (), right: Form = ()) -> DerivationTrace:
    """Transport a ``g0`` trace into ``g``, optionally inside a context.

    The i-th form of the result is ``left + lift_string(form_i) + right``, so
    the step count is unchanged and positions shift by ``len(left)``.
    """
    if not replay(lg.g0, trace):
        raise InvalidTrace("trace does not replay in the embedded grammar")
    left, right = tuple(left), tuple(right)
    shift = len(left)
    index = {r: i for i, r in reversed(list(enumerate(lg.g.rules)))}
    steps = []
    for m, f in trace.steps:
        lr = lift_rule(lg, lg.g0.rules[m.rule_index])
        if lr not in index:
            raise InvalidTrace(f"lifted rule {lr} is missing from the target grammar")
        steps.append((Match(index[lr], m.position + shift), left + lift_string(lg, f) + right))
    return DerivationTrace(left + lift_string(lg, trace.start) + right, tuple(steps))
