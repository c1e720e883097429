"""Union, reversal, concatenation and Kleene star of unrestricted grammars.

Each construction also has an easy-direction trace builder that turns
derivations in the input grammars into a derivation in the constructed one.
Those builders double as budget estimators in :mod:`t0gram.oracle`.

The star grammar adds a start symbol ``Z``, a compartment delimiter ``#``
(tag :class:`StarH`, rendered ``@H``) and a cleaner ``R`` that walks right
over terminals and removes delimiters:

    Z -> Z S #    Z -> R #    R # -> R    R # -> eps    R t -> t R
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .core import (Form, Fresh, Grammar, Grule, Lift1, Lift2, Nonterminal, Proxy1, Proxy2, StarH,
                   StarR, StarZ, Symbol, Terminal, Word, is_word, render_form, render_symbol)
from .engine import (DerivationTrace, Match, SearchBudget, apply_rule, derives_within,
                     enumerate_language, replay)
from .errors import TraceMismatch
from .lifting import LiftedGrammar, lift_derivation

Z, H, R = StarZ(), StarH(), StarR()
FRESH = Fresh()


def _sorted_terminals(terminals):
    return sorted(terminals, key=render_symbol)


def _rule_index(g: Grammar, r: Grule) -> int:
    return g.rules.index(r)


def _apply(g: Grammar, form: Form, r: Grule, pos: int):
    m = Match(_rule_index(g, r), pos)
    return m, apply_rule(g, form, m)


# union

def _lift_with(tag):
    def lift(n):
        return tag(n)
    return lift


def _sink_with(tag, g0):
    def sink(n):
        if isinstance(n, tag) and n.inner in g0.nonterminals:
            return n.inner
        return None
    return sink


def _map_rule(r: Grule, f) -> Grule:
    return Grule(tuple(map(f, r.input_L)), f(r.input_N), tuple(map(f, r.input_R)), tuple(map(f, r.output)))


def _lifter(tag):
    def f(s):
        return s if isinstance(s, Terminal) else tag(s)
    return f


def union_grammar(g1: Grammar, g2: Grammar) -> Grammar:
    l1, l2 = _lifter(Lift1), _lifter(Lift2)
    rules = [_map_rule(r, l1) for r in g1.rules] + [_map_rule(r, l2) for r in g2.rules]
    rules += [Grule((), FRESH, (), (Lift1(g1.initial),)), Grule((), FRESH, (), (Lift2(g2.initial),))]
    nts = {Lift1(n) for n in g1.nonterminals} | {Lift2(n) for n in g2.nonterminals} | {FRESH}
    return Grammar(g1.terminals | g2.terminals, nts, FRESH, rules)


def union_lifts(g1: Grammar, g2: Grammar) -> Tuple[LiftedGrammar, LiftedGrammar]:
    """The two embeddings of the operands into :func:`union_grammar`."""
    g = union_grammar(g1, g2)
    return (LiftedGrammar(g1, g, _lift_with(Lift1), _sink_with(Lift1, g1)),
            LiftedGrammar(g2, g, _lift_with(Lift2), _sink_with(Lift2, g2)))


def union_trace(g1: Grammar, g2: Grammar, trace: DerivationTrace, side: int = 1) -> DerivationTrace:
    """``Fresh => init_k =>* w`` from a trace of operand ``side``."""
    g = union_grammar(g1, g2)
    lg = union_lifts(g1, g2)[side - 1]
    inner = lift_derivation(lg, trace)
    first = Match(len(g.rules) - 2 + (side - 1), 0)
    return DerivationTrace((FRESH,), ((first, inner.start),) + inner.steps)


# reversal

def reversal_grule(r: Grule) -> Grule:
    return Grule(r.input_R[::-1], r.input_N, r.input_L[::-1], r.output[::-1])


def reversal_grammar(g: Grammar) -> Grammar:
    return Grammar(g.terminals, g.nonterminals, g.initial, [reversal_grule(r) for r in g.rules])


def reverse_trace(g: Grammar, trace: DerivationTrace) -> DerivationTrace:
    """Mirror a trace of ``g`` into a trace of :func:`reversal_grammar` of ``g``."""
    steps = []
    prev = trace.start
    for m, f in trace.steps:
        width = len(g.rules[m.rule_index].lhs)
        steps.append((Match(m.rule_index, len(prev) - m.position - width), tuple(f)[::-1]))
        prev = f
    return DerivationTrace(tuple(trace.start)[::-1], tuple(steps))


# concatenation

def naive_concat_grammar(g1: Grammar, g2: Grammar) -> Grammar:
    """Textbook context-free concatenation; unsound for general grammars."""
    l1, l2 = _lifter(Lift1), _lifter(Lift2)
    rules = [_map_rule(r, l1) for r in g1.rules] + [_map_rule(r, l2) for r in g2.rules]
    rules.append(Grule((), FRESH, (), (Lift1(g1.initial), Lift2(g2.initial))))
    nts = {Lift1(n) for n in g1.nonterminals} | {Lift2(n) for n in g2.nonterminals} | {FRESH}
    return Grammar(g1.terminals | g2.terminals, nts, FRESH, rules)


def wrap_symbol1(s: Symbol) -> Symbol:
    return Proxy1(s) if isinstance(s, Terminal) else Lift1(s)


def wrap_symbol2(s: Symbol) -> Symbol:
    return Proxy2(s) if isinstance(s, Terminal) else Lift2(s)


def concat_grammar(g1: Grammar, g2: Grammar) -> Grammar:
    ts = _sorted_terminals(g1.terminals | g2.terminals)
    rules = [_map_rule(r, wrap_symbol1) for r in g1.rules] + [_map_rule(r, wrap_symbol2) for r in g2.rules]
    rules += [Grule((), Proxy1(t), (), (t,)) for t in ts]
    rules += [Grule((), Proxy2(t), (), (t,)) for t in ts]
    rules.append(Grule((), FRESH, (), (Lift1(g1.initial), Lift2(g2.initial))))
    nts = ({Lift1(n) for n in g1.nonterminals} | {Lift2(n) for n in g2.nonterminals}
           | {Proxy1(t) for t in ts} | {Proxy2(t) for t in ts} | {FRESH})
    return Grammar(frozenset(ts), nts, FRESH, rules)


def _transport(g: Grammar, trace: DerivationTrace, base: Grammar, wrap, left: Form, right: Form):
    """Replay ``trace`` of ``base`` inside ``g`` with symbols mapped by ``wrap``."""
    steps = []
    for m, f in trace.steps:
        r = _map_rule(base.rules[m.rule_index], wrap)
        steps.append((Match(_rule_index(g, r), m.position + len(left)),
                      left + tuple(map(wrap, f)) + right))
    return steps


def concat_trace(g1: Grammar, g2: Grammar, t1: DerivationTrace, t2: DerivationTrace,
                 naive: bool = False) -> DerivationTrace:
    """Derive ``w1 w2`` in the concatenation grammar from traces of ``w1`` and ``w2``.

    Order: start rule, the ``g1`` derivation over proxies, proxy removal,
    the ``g2`` derivation, proxy removal. Length ``1 + k1 + |w1| + k2 + |w2|``
    (without the two removal phases for the naive grammar).
    """
    for g, t in ((g1, t1), (g2, t2)):
        if not replay(g, t) or t.start != (g.initial,) or not is_word(t.final):
            raise TraceMismatch("operand trace must derive a word from the initial symbol")
    w1, w2 = tuple(t1.final), tuple(t2.final)
    if naive:
        g = naive_concat_grammar(g1, g2)
        wrap1, wrap2 = _lifter(Lift1), _lifter(Lift2)
    else:
        g = concat_grammar(g1, g2)
        wrap1, wrap2 = wrap_symbol1, wrap_symbol2
    form: Form = (FRESH,)
    m, nxt = _apply(g, form, Grule((), FRESH, (), (Lift1(g1.initial), Lift2(g2.initial))), 0)
    steps = [(m, nxt)]
    tail = (Lift2(g2.initial),)
    steps += _transport(g, t1, g1, wrap1, (), tail)
    form = steps[-1][1]
    if not naive:
        for i, t in enumerate(w1):
            m, form = _apply(g, form, Grule((), Proxy1(t), (), (t,)), i)
            steps.append((m, form))
    steps += _transport(g, t2, g2, wrap2, w1, ())
    form = steps[-1][1]
    if not naive:
        for i, t in enumerate(w2):
            m, form = _apply(g, form, Grule((), Proxy2(t), (), (t,)), len(w1) + i)
            steps.append((m, form))
    return DerivationTrace((FRESH,), tuple(steps))


# Kleene star

def star_grammar(g: Grammar) -> Grammar:
    ts = _sorted_terminals(g.terminals)
    rules = list(g.rules) + [
        Grule((), Z, (), (Z, g.initial, H)),
        Grule((), Z, (), (R, H)),
        Grule((), R, (H,), (R,)),
        Grule((), R, (H,), ()),
    ]
    rules += [Grule((), R, (t,), (t, R)) for t in ts]
    return Grammar(g.terminals, g.nonterminals | {Z, H, R}, Z, rules)


def star_lift(g: Grammar) -> LiftedGrammar:
    """Base nonterminals keep their own tags inside the star grammar."""
    def sink(n):
        return n if n in g.nonterminals else None
    return LiftedGrammar(g, star_grammar(g), lambda n: n, sink)


def build_compartments(g: Grammar, words: Sequence[Word], traces: Sequence[DerivationTrace]) -> DerivationTrace:
    """``Z =>* Z w1 # ... wn #`` in the star grammar.

    All ``Z -> Z S #`` steps come first, then each compartment is derived
    left to right. Length ``n + sum(len(trace_i))``.
    """
    words = [tuple(w) for w in words]
    if len(words) != len(traces):
        raise TraceMismatch("need exactly one trace per word")
    for w, t in zip(words, traces):
        if not replay(g, t) or t.start != (g.initial,) or tuple(t.final) != w:
            raise TraceMismatch(f"trace does not derive {render_form(w)!r} from the initial symbol")
    gs = star_grammar(g)
    lg = star_lift(g)
    form: Form = (Z,)
    steps = []
    grow = Grule((), Z, (), (Z, g.initial, H))
    for _ in words:
        m, form = _apply(gs, form, grow, 0)
        steps.append((m, form))
    done: Form = (Z,)
    for i, t in enumerate(traces):
        right = tuple(s for _ in words[i + 1:] for s in (g.initial, H))
        lifted = lift_derivation(lg, t, left=done, right=(H,) + right)
        steps += lifted.steps
        done = done + words[i] + (H,)
    return DerivationTrace((Z,), tuple(steps))


def terminal_scan(g: Grammar, words: Sequence[Word]) -> DerivationTrace:
    """``R # w1 # ... wn # =>* w1...wn R #`` using only the cleaner rules."""
    words = [tuple(w) for w in words]
    gs = star_grammar(g)
    form: Form = (R, H) + tuple(s for w in words for s in w + (H,))
    start = form
    steps = []
    pos = 0
    drop = Grule((), R, (H,), (R,))
    for w in words:
        m, form = _apply(gs, form, drop, pos)
        steps.append((m, form))
        for t in w:
            m, form = _apply(gs, form, Grule((), R, (t,), (t, R)), pos)
            steps.append((m, form))
            pos += 1
    return DerivationTrace(start, tuple(steps))


def star_trace(g: Grammar, words: Sequence[Word], traces: Sequence[DerivationTrace]) -> DerivationTrace:
    """Full easy-direction derivation of ``w1...wn`` in the star grammar.

    Length ``n + sum(k_i) + 1 + n + |w1...wn| + 1``.
    """
    gs = star_grammar(g)
    comp = build_compartments(g, words, traces)
    steps = list(comp.steps)
    form = comp.final
    m, form = _apply(gs, form, Grule((), Z, (), (R, H)), 0)
    steps.append((m, form))
    scan = terminal_scan(g, words)
    if scan.start != form:
        raise TraceMismatch("compartment form does not line up with the scan")
    steps += scan.steps
    form = scan.final
    m, form = _apply(gs, form, Grule((), R, (H,), ()), len(form) - 2)
    steps.append((m, form))
    return DerivationTrace((Z,), tuple(steps))


# classification of star sentential forms

CASES = (1, 2, 3, 4, 5, 6)


@dataclass(frozen=True)
class StarClassification:
    """One structural reading of a star-grammar form.

    Fields used per case: 1 and 2 use ``x``; 3 uses ``w``, ``beta``,
    ``gamma`` and ``x``; 4 keeps the terminal ``word``; 5 uses ``sigma``;
    6 uses ``omega``.
    """

    case: int
    x: Tuple[Form, ...] = ()
    w: Tuple[Word, ...] = ()
    beta: Word = ()
    gamma: Form = ()
    word: Word = ()
    sigma: Form = ()
    omega: Form = ()

    @property
    def m(self) -> int:
        return len(self.x)

    def recompose(self) -> Form:
        comps = tuple(s for xi in self.x for s in tuple(xi) + (H,))
        if self.case == 1:
            return (Z,) + comps
        if self.case == 2:
            return (R, H) + comps
        if self.case == 3:
            return tuple(s for wi in self.w for s in wi) + self.beta + (R,) + self.gamma + (H,) + comps
        if self.case == 4:
            return self.word
        if self.case == 5:
            return self.sigma + (R,)
        return self.omega + (H,)

    def to_json(self) -> dict:
        def f(form):
            return [render_symbol(s) for s in form]
        out = {"case": self.case}
        if self.case in (1, 2, 3):
            out["m"] = self.m
            out["x"] = [f(xi) for xi in self.x]
        if self.case == 3:
            out["n"] = len(self.w)
            out["w"] = [f(wi) for wi in self.w]
            out["beta"] = f(self.beta)
            out["gamma"] = f(self.gamma)
        if self.case == 4:
            out["word"] = f(self.word)
        if self.case == 5:
            out["sigma"] = f(self.sigma)
        if self.case == 6:
            out["omega"] = f(self.omega)
        return out


def _is_base(s: Symbol) -> bool:
    return not isinstance(s, (StarZ, StarH, StarR))


def _compartments(rest: Form) -> Optional[Tuple[Form, ...]]:
    """Split ``x1 # x2 # ... xm #`` with every ``xi`` over base symbols."""
    if rest and rest[-1] != H:
        return None
    out = []
    cur: List[Symbol] = []
    for s in rest:
        if s == H:
            out.append(tuple(cur))
            cur = []
        elif _is_base(s):
            cur.append(s)
        else:
            return None
    return tuple(out)


def classify_star_form(g: Grammar, form) -> List[StarClassification]:
    """Every case whose shape and symbol-class constraints ``form`` satisfies.

    Derivability side conditions are left to :func:`verify_star_classification`.
    """
    form = tuple(form)
    out = []
    if form[:1] == (Z,):
        xs = _compartments(form[1:])
        if xs is not None:
            out.append(StarClassification(1, x=xs))
    if form[:2] == (R, H):
        xs = _compartments(form[2:])
        if xs is not None:
            out.append(StarClassification(2, x=xs))
    if form.count(R) == 1 and Z not in form:
        i = form.index(R)
        prefix, after = form[:i], form[i + 1:]
        if is_word(prefix) and H in after:
            j = after.index(H)
            gamma = after[:j]
            xs = _compartments(after[j + 1:])
            if all(_is_base(s) for s in gamma) and xs is not None:
                out.append(StarClassification(3, x=xs, beta=prefix, gamma=gamma))
    if is_word(form):
        out.append(StarClassification(4, word=form))
    if form and form[-1] == R and all(_is_base(s) for s in form[:-1]):
        out.append(StarClassification(5, sigma=form[:-1]))
    if form and form[-1] == H and all(s != Z and s != R for s in form[:-1]):
        out.append(StarClassification(6, omega=form[:-1]))
    return out


@dataclass(frozen=True)
class StarVerification:
    verified: bool
    classification: StarClassification
    detail: Dict[str, object] = field(default_factory=dict, compare=False)

    def __bool__(self):
        return self.verified


@lru_cache(maxsize=4096)
def _derives(g: Grammar, target: Form, budget: SearchBudget) -> bool:
    return derives_within(g, (g.initial,), target, budget) is not None


@lru_cache(maxsize=256)
def _language(g: Grammar, budget: SearchBudget, n: int) -> FrozenSet[Word]:
    b = SearchBudget(budget.max_steps, max(budget.max_form_len, n), n)
    return frozenset(enumerate_language(g, b))


def _segment(word: Word, lang: FrozenSet[Word]) -> Optional[List[Word]]:
    """Split ``word`` into nonempty members of ``lang``; ``None`` if impossible."""
    n = len(word)
    back: List[Optional[int]] = [None] * (n + 1)
    ok = [False] * (n + 1)
    ok[0] = True
    for j in range(1, n + 1):
        for i in range(j):
            if ok[i] and word[i:j] in lang:
                ok[j], back[j] = True, i
                break
    if not ok[n]:
        return None
    parts = []
    j = n
    while j > 0:
        i = back[j]
        parts.append(word[i:j])
        j = i
    return parts[::-1]


def verify_star_classification(g: Grammar, c: StarClassification,
                               budget: Optional[SearchBudget] = None) -> StarVerification:
    """Check the derivability side conditions of ``c`` by bounded search."""
    budget = budget or SearchBudget.for_word_len(8)
    for i, xi in enumerate(c.x):
        if not _derives(g, tuple(xi), budget):
            return StarVerification(False, c, {"failed": f"x{i + 1}"})
    if c.case == 3:
        prefix = tuple(s for wi in c.w for s in wi) + c.beta
        lang = _language(g, budget, len(prefix))
        for j in range(len(prefix), -1, -1):
            if not _derives(g, prefix[j:] + c.gamma, budget):
                continue
            parts = _segment(prefix[:j], lang)
            if parts is not None:
                found = StarClassification(3, x=c.x, w=tuple(parts), beta=prefix[j:], gamma=c.gamma)
                return StarVerification(True, found, {"n": len(parts)})
        return StarVerification(False, c, {"failed": "beta gamma"})
    if c.case == 4:
        parts = _segment(c.word, _language(g, budget, len(c.word)))
        if parts is None:
            return StarVerification(False, c, {"failed": "word"})
        return StarVerification(True, c, {"split": [render_form(p) for p in parts]})
    return StarVerification(True, c)
