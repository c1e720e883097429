"""One-step rewriting, bounded derivation search and language enumeration.

Membership for unrestricted grammars is undecidable, so every search here is
bounded by a :class:`SearchBudget`. Results are under-approximations: a
``None`` from :func:`derives_within` means "not found within budget".

Internally each grammar is compiled to a one-character-per-symbol string
encoding so that matching is a ``str.find`` and forms hash cheaply.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

from .core import Form, Grammar, Grule, Symbol, Terminal, Word, render_form, render_symbol
from .errors import InvalidMatch, InvalidTrace, UndeclaredSymbol

DEFAULT_MAX_STEPS = 10_000


@dataclass(frozen=True)
class Match:
    rule_index: int
    position: int


@dataclass(frozen=True)
class SearchBudget:
    max_steps: int = DEFAULT_MAX_STEPS
    max_form_len: int = 16
    max_word_len: int = 6

    def __post_init__(self):
        for name in ("max_steps", "max_form_len", "max_word_len"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")

    @classmethod
    def for_word_len(cls, n, max_steps=None, max_form_len=None):
        """Budget with the default form-length allowance of ``2n + 4``."""
        return cls(
            max_steps=DEFAULT_MAX_STEPS if max_steps is None else max_steps,
            max_form_len=2 * n + 4 if max_form_len is None else max_form_len,
            max_word_len=n,
        )

    def __le__(self, other):
        return (self.max_steps <= other.max_steps and self.max_form_len <= other.max_form_len
                and self.max_word_len <= other.max_word_len)


@dataclass(frozen=True)
class DerivationTrace:
    start: Form
    steps: Tuple[Tuple[Match, Form], ...] = ()

    def __len__(self):
        return len(self.steps)

    @property
    def forms(self) -> List[Form]:
        return [self.start] + [f for _, f in self.steps]

    @property
    def final(self) -> Form:
        return self.steps[-1][1] if self.steps else self.start

    def to_json(self) -> dict:
        return {
            "start": [render_symbol(s) for s in self.start],
            "steps": [
                {"rule": m.rule_index, "pos": m.position, "form": [render_symbol(s) for s in f]}
                for m, f in self.steps
            ],
        }

    def render(self, g: Optional[Grammar] = None) -> str:
        lines = [render_form(self.start)]
        for m, f in self.steps:
            note = f"rule {m.rule_index}"
            if g is not None:
                note += f": {g.rules[m.rule_index]}"
            lines.append(f"=> {render_form(f)}    [{note} @ {m.position}]")
        return "\n".join(lines)


class _Compiled:
    def __init__(self, g: Grammar):
        syms = g.symbols()
        self.enc: Dict[Symbol, str] = {s: chr(0xE000 + i) for i, s in enumerate(syms)}
        self.dec: Dict[str, Symbol] = {c: s for s, c in self.enc.items()}
        self.rules = [(self.encode(r.lhs), self.encode(r.output)) for r in g.rules]
        nts = "".join(self.enc[n] for n in g.nonterminals)
        self._nt = re.compile("[" + re.escape(nts) + "]") if nts else None

    def encode(self, form: Iterable[Symbol]) -> str:
        try:
            return "".join(self.enc[s] for s in form)
        except KeyError as e:
            raise UndeclaredSymbol(render_symbol(e.args[0])) from None

    def decode(self, s: str) -> Form:
        return tuple(self.dec[c] for c in s)

    def is_word(self, s: str) -> bool:
        return self._nt is None or self._nt.search(s) is None

    def matches(self, s: str) -> List[Tuple[int, int]]:
        out = []
        for ri, (lhs, _) in enumerate(self.rules):
            i = s.find(lhs)
            while i >= 0:
                out.append((i, ri))
                i = s.find(lhs, i + 1)
        out.sort()
        return out

    def successors(self, s: str, max_len: int):
        """Yield ``(pos, rule_index, child)`` in (position, rule) order."""
        for pos, ri in self.matches(s):
            lhs, out = self.rules[ri]
            child = s[:pos] + out + s[pos + len(lhs):]
            if len(child) <= max_len:
                yield pos, ri, child


@lru_cache(maxsize=256)
def _compile(g: Grammar) -> _Compiled:
    return _Compiled(g)


def find_matches(g: Grammar, form: Iterable[Symbol]) -> List[Match]:
    """Every (position, rule) where a rule's left-hand side occurs in ``form``."""
    c = _compile(g)
    return [Match(ri, pos) for pos, ri in c.matches(c.encode(form))]


def apply_rule(g: Grammar, form: Iterable[Symbol], m: Match) -> Form:
    form = tuple(form)
    if not 0 <= m.rule_index < len(g.rules):
        raise InvalidMatch(f"no rule with index {m.rule_index}")
    r: Grule = g.rules[m.rule_index]
    lhs = r.lhs
    end = m.position + len(lhs)
    if m.position < 0 or form[m.position:end] != lhs:
        raise InvalidMatch(f"rule {r} does not match {render_form(form)!r} at {m.position}")
    return form[:m.position] + r.output + form[end:]


def step_successors(g: Grammar, form: Iterable[Symbol]) -> List[Form]:
    """Distinct one-step successors in canonical order."""
    c = _compile(g)
    s = c.encode(form)
    children = {child for _, _, child in c.successors(s, float("inf"))}
    return [c.decode(x) for x in sorted(children, key=lambda x: (len(x), x))]


def replay(g: Grammar, trace: DerivationTrace) -> bool:
    """True iff re-applying each recorded match reproduces the recorded forms."""
    cur = tuple(trace.start)
    for m, f in trace.steps:
        try:
            cur = apply_rule(g, cur, m)
        except InvalidMatch:
            return False
        if cur != tuple(f):
            return False
    return True


def check_trace(g: Grammar, trace: DerivationTrace):
    if not replay(g, trace):
        raise InvalidTrace("trace does not replay in the given grammar")


def _build_trace(c: _Compiled, parents, start: str, end: str) -> DerivationTrace:
    chain = []
    cur = end
    while cur != start:
        prev, pos, ri = parents[cur]
        chain.append((Match(ri, pos), c.decode(cur)))
        cur = prev
    chain.reverse()
    return DerivationTrace(c.decode(start), tuple(chain))


def _default_budget(*forms) -> SearchBudget:
    n = max((len(f) for f in forms), default=0)
    return SearchBudget.for_word_len(n)


def derives_within(g: Grammar, source: Iterable[Symbol], target: Iterable[Symbol],
                   budget: Optional[SearchBudget] = None) -> Optional[DerivationTrace]:
    """A shortest derivation ``source =>* target`` within budget, or ``None``."""
    c = _compile(g)
    src, dst = c.encode(source), c.encode(target)
    if budget is None:
        budget = _default_budget(src, dst)
    if src == dst:
        return DerivationTrace(c.decode(src))
    parents = {src: None}
    frontier = [src]
    limit = budget.max_form_len
    for _ in range(budget.max_steps):
        nxt = []
        for s in frontier:
            for pos, ri, child in c.successors(s, limit):
                if child in parents:
                    continue
                parents[child] = (s, pos, ri)
                if child == dst:
                    return _build_trace(c, parents, src, dst)
                nxt.append(child)
        if not nxt:
            break
        frontier = nxt
    return None


def generates_within(g: Grammar, w: Iterable[Terminal],
                     budget: Optional[SearchBudget] = None) -> Optional[DerivationTrace]:
    w = tuple(w)
    for t in w:
        if t not in g.terminals:
            raise UndeclaredSymbol(render_symbol(t))
    return derives_within(g, (g.initial,), w, budget)


def _explore(c: _Compiled, start: str, budget: SearchBudget, keep_parents: bool):
    seen = {start: None}
    frontier = [start]
    limit = budget.max_form_len
    for _ in range(budget.max_steps):
        nxt = []
        for s in frontier:
            for pos, ri, child in c.successors(s, limit):
                if child not in seen:
                    seen[child] = (s, pos, ri) if keep_parents else None
                    nxt.append(child)
        if not nxt:
            break
        frontier = nxt
    return seen


def _words(c: _Compiled, seen, max_word_len: int) -> List[str]:
    found = [s for s in seen if len(s) <= max_word_len and c.is_word(s)]
    found.sort(key=lambda x: (len(x), x))
    return found


def enumerate_language(g: Grammar, budget: Optional[SearchBudget] = None) -> List[Word]:
    """Words reachable from the initial symbol within budget, canonically ordered."""
    budget = budget or SearchBudget()
    c = _compile(g)
    start = c.encode((g.initial,))
    if len(start) > budget.max_form_len:
        return []
    seen = _explore(c, start, budget, keep_parents=False)
    return [c.decode(s) for s in _words(c, seen, budget.max_word_len)]


def enumerate_traces(g: Grammar, budget: Optional[SearchBudget] = None) -> Dict[Word, DerivationTrace]:
    """Like :func:`enumerate_language` but with a shortest trace for each word."""
    budget = budget or SearchBudget()
    c = _compile(g)
    start = c.encode((g.initial,))
    if len(start) > budget.max_form_len:
        return {}
    seen = _explore(c, start, budget, keep_parents=True)
    return {c.decode(s): _build_trace(c, seen, start, s) for s in _words(c, seen, budget.max_word_len)}


def reachable_forms(g: Grammar, budget: SearchBudget, start: Optional[Form] = None) -> List[Form]:
    """Every sentential form reachable within budget (including the start)."""
    c = _compile(g)
    s0 = c.encode(start if start is not None else (g.initial,))
    seen = _explore(c, s0, budget, keep_parents=False)
    return [c.decode(s) for s in sorted(seen, key=lambda x: (len(x), x))]
