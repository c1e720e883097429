"""Finite language algebra and differential checks of the closure constructions.

A :class:`WordSet` remembers the length bound it was enumerated under, and the
set operations refuse to combine sets whose bounds cannot support the result.
:func:`check_closure` compares a construction's bounded enumeration with the
oracle set computed from the operands' enumerations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import closures
from .core import Grammar, Word, render_form, word_key
from .engine import DerivationTrace, SearchBudget, enumerate_traces
from .errors import BoundMismatch, InsufficientInputBound

OPS = ("union", "concat", "concat-naive", "star", "reverse")
ARITY = {"union": 2, "concat": 2, "concat-naive": 2, "star": 1, "reverse": 1}
STEP_SLACK = 2
FORM_SLACK = 2


@dataclass(frozen=True)
class WordSet:
    words: Tuple[Word, ...]
    max_len: int

    def __post_init__(self):
        ws = sorted({tuple(w) for w in self.words}, key=word_key)
        for w in ws:
            if len(w) > self.max_len:
                raise ValueError(f"word {render_form(w)!r} is longer than max_len={self.max_len}")
        object.__setattr__(self, "words", tuple(ws))
        object.__setattr__(self, "_members", frozenset(ws))

    @classmethod
    def of(cls, words: Iterable[Word], max_len: int) -> "WordSet":
        return cls(tuple(words), max_len)

    def __contains__(self, w):
        return tuple(w) in self._members

    def __iter__(self):
        return iter(self.words)

    def __len__(self):
        return len(self.words)

    def as_set(self):
        return set(self._members)

    def truncate(self, n: int) -> "WordSet":
        return WordSet(tuple(w for w in self.words if len(w) <= n), min(n, self.max_len))


def lang_union(a: WordSet, b: WordSet) -> WordSet:
    if a.max_len != b.max_len:
        raise BoundMismatch(f"bounds differ: {a.max_len} vs {b.max_len}")
    return WordSet(a.words + b.words, a.max_len)


def lang_concat_upto(a: WordSet, b: WordSet, n: int) -> WordSet:
    if a.max_len < n or b.max_len < n:
        raise InsufficientInputBound(f"inputs bounded by {a.max_len}/{b.max_len}, need {n}")
    return WordSet(tuple(x + y for x in a.words for y in b.words if len(x) + len(y) <= n), n)


def lang_star_upto(a: WordSet, n: int) -> WordSet:
    if a.max_len < n:
        raise InsufficientInputBound(f"input bounded by {a.max_len}, need {n}")
    parts = [w for w in a.words if w]
    found = {()}
    frontier = [()]
    while frontier:
        nxt = []
        for x in frontier:
            for p in parts:
                y = x + p
                if len(y) <= n and y not in found:
                    found.add(y)
                    nxt.append(y)
        frontier = nxt
    return WordSet(tuple(found), n)


def lang_reverse(a: WordSet) -> WordSet:
    return WordSet(tuple(w[::-1] for w in a.words), a.max_len)


def append_join_append(s: Sequence, lists: Sequence[Sequence]) -> Tuple[tuple, tuple]:
    """Both sides of ``s ++ join(l ++ s for l) == join(s ++ l for l) ++ s``."""
    s = tuple(s)
    left = s + tuple(x for l in lists for x in tuple(l) + s)
    right = tuple(x for l in lists for x in s + tuple(l)) + s
    return left, right


def enumerate_wordset(g: Grammar, budget: SearchBudget) -> WordSet:
    return WordSet(tuple(enumerate_traces(g, budget)), budget.max_word_len)


def build(op: str, grammars: Sequence[Grammar]) -> Grammar:
    if op not in OPS:
        raise ValueError(f"unknown operation {op!r}")
    if len(grammars) != ARITY[op]:
        raise ValueError(f"{op} takes {ARITY[op]} grammar(s), got {len(grammars)}")
    if op == "union":
        return closures.union_grammar(*grammars)
    if op == "concat":
        return closures.concat_grammar(*grammars)
    if op == "concat-naive":
        return closures.naive_concat_grammar(*grammars)
    if op == "star":
        return closures.star_grammar(*grammars)
    return closures.reversal_grammar(*grammars)


def _witnesses(op, grammars, bases: List[Dict[Word, DerivationTrace]], target: WordSet):
    """Easy-direction derivation in the constructed grammar for each oracle word."""
    out = {}
    if op == "union":
        g1, g2 = grammars
        for w in target:
            options = [closures.union_trace(g1, g2, base[w], side)
                       for side, base in ((1, bases[0]), (2, bases[1])) if w in base]
            out[w] = min(options, key=len)
    elif op == "reverse":
        (g,) = grammars
        for w in target:
            out[w] = closures.reverse_trace(g, bases[0][w[::-1]])
    elif op in ("concat", "concat-naive"):
        g1, g2 = grammars
        naive = op == "concat-naive"
        for w in target:
            options = [closures.concat_trace(g1, g2, bases[0][w[:i]], bases[1][w[i:]], naive=naive)
                       for i in range(len(w) + 1) if w[:i] in bases[0] and w[i:] in bases[1]]
            out[w] = min(options, key=len)
    else:
        (g,) = grammars
        base = bases[0]
        for w in target:
            parts = _cheapest_split(w, base)
            out[w] = closures.star_trace(g, parts, [base[p] for p in parts])
    return out


def _cheapest_split(w: Word, base: Dict[Word, DerivationTrace]) -> List[Word]:
    # one compartment costs k + 2 + |piece| steps
    n = len(w)
    best: List[Optional[Tuple[int, int]]] = [None] * (n + 1)
    best[0] = (0, 0)
    for j in range(1, n + 1):
        for i in range(j):
            piece = w[i:j]
            if best[i] is not None and piece in base:
                cost = best[i][0] + len(base[piece]) + 2 + len(piece)
                if best[j] is None or cost < best[j][0]:
                    best[j] = (cost, i)
    parts = []
    j = n
    while j > 0:
        i = best[j][1]
        parts.append(w[i:j])
        j = i
    return parts[::-1]


@dataclass
class ClosureReport:
    op: str
    max_word_len: int
    base_budget: SearchBudget
    budget: SearchBudget
    construction: WordSet
    oracle: WordSet
    construction_only: List[Tuple[Word, Optional[DerivationTrace]]] = field(default_factory=list)
    oracle_only: List[Word] = field(default_factory=list)

    @property
    def equal(self) -> bool:
        return not self.construction_only and not self.oracle_only

    def to_json(self) -> dict:
        def b(x: SearchBudget):
            return {"max_steps": x.max_steps, "max_form_len": x.max_form_len, "max_word_len": x.max_word_len}
        return {
            "op": self.op,
            "max_word_len": self.max_word_len,
            "equal": self.equal,
            "base_budget": b(self.base_budget),
            "budget": b(self.budget),
            "construction": [render_form(w) for w in self.construction],
            "oracle": [render_form(w) for w in self.oracle],
            "construction_only": [
                {"word": render_form(w), "status": "confirmed",
                 "trace": t.to_json() if t is not None else None}
                for w, t in self.construction_only
            ],
            "oracle_only": [{"word": render_form(w), "status": "possibly budget"} for w in self.oracle_only],
        }

    def render(self) -> str:
        lines = [
            f"op: {self.op}",
            f"max word length: {self.max_word_len}",
            f"construction budget: steps={self.budget.max_steps} form_len={self.budget.max_form_len}",
            f"construction words: {len(self.construction)}",
            f"oracle words: {len(self.oracle)}",
            "result: " + ("EQUAL" if self.equal else "MISMATCH"),
        ]
        for w, t in self.construction_only:
            lines.append(f"construction-only (confirmed): {render_form(w)}")
            if t is not None:
                lines += ["    " + x for x in t.render().splitlines()]
        for w in self.oracle_only:
            lines.append(f"oracle-only (possibly budget): {render_form(w)}")
        return "\n".join(lines)


def check_closure(op: str, grammars: Sequence[Grammar], max_word_len: int,
                  base_budget: Optional[SearchBudget] = None) -> ClosureReport:
    """Compare a construction against the oracle at word length ``max_word_len``.

    Operands are enumerated under ``base_budget`` (default: run to fixpoint
    with forms up to ``2n + 4``). The construction is enumerated with budgets
    taken from explicit easy-direction derivations of every oracle word: twice
    the longest such derivation, and its widest form plus two.
    """
    n = max_word_len
    base_budget = base_budget or SearchBudget.for_word_len(n)
    if base_budget.max_word_len < n:
        raise InsufficientInputBound(f"operand budget covers words up to {base_budget.max_word_len}, need {n}")
    g = build(op, grammars)
    bases = [enumerate_traces(x, base_budget) for x in grammars]
    sets = [WordSet(tuple(b), base_budget.max_word_len) for b in bases]
    if op == "union":
        target = lang_union(*sets).truncate(n)
    elif op in ("concat", "concat-naive"):
        target = lang_concat_upto(sets[0], sets[1], n)
    elif op == "star":
        target = lang_star_upto(sets[0], n)
    else:
        target = lang_reverse(sets[0]).truncate(n)

    witnesses = _witnesses(op, grammars, bases, target)
    steps = max((len(t) for t in witnesses.values()), default=1)
    peak = max((len(f) for t in witnesses.values() for f in t.forms), default=1)
    budget = SearchBudget(STEP_SLACK * steps, peak + FORM_SLACK, n)

    found = enumerate_traces(g, budget)
    got = WordSet(tuple(found), n)
    expected = target.as_set()
    report = ClosureReport(op, n, base_budget, budget, got, target)
    report.construction_only = [(w, found[w]) for w in got if w not in expected]
    report.oracle_only = [w for w in target if w not in found]
    return report
