"""Symbols, rewrite rules and grammars.

Everything here is immutable. A sentential form is a plain tuple of symbols,
where a symbol is either a :class:`Terminal` or one of the nonterminal tags
below. Tags are structured (``Lift1(Named("S"))``) so that constructions can
embed grammars into each other without any renaming tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Tuple, Union

from .errors import InitialNotDeclared, NameCollision, NoNonterminalOnLhs, UndeclaredSymbol

RESERVED = "eps"


def _check_token(token, what):
    if not isinstance(token, str) or not token:
        raise ValueError(f"{what} must be a nonempty string, got {token!r}")
    if any(c.isspace() for c in token) or "#" in token:
        raise ValueError(f"{what} {token!r} contains whitespace or '#'")
    if token == RESERVED:
        raise ValueError(f"{what} may not be the reserved word {RESERVED!r}")


@dataclass(frozen=True)
class Terminal:
    token: str

    def __post_init__(self):
        _check_token(self.token, "terminal")
        if self.token.startswith("@"):
            raise ValueError(f"terminal {self.token!r} may not start with '@'")

    def __str__(self):
        return self.token


class Nonterminal:
    """Marker base class for nonterminal tags."""

    __slots__ = ()

    def __str__(self):
        return render_symbol(self)


@dataclass(frozen=True)
class Named(Nonterminal):
    name: str

    def __post_init__(self):
        _check_token(self.name, "nonterminal")


@dataclass(frozen=True)
class Lift1(Nonterminal):
    inner: Nonterminal


@dataclass(frozen=True)
class Lift2(Nonterminal):
    inner: Nonterminal


@dataclass(frozen=True)
class Fresh(Nonterminal):
    pass


@dataclass(frozen=True)
class Proxy1(Nonterminal):
    t: Terminal


@dataclass(frozen=True)
class Proxy2(Nonterminal):
    t: Terminal


@dataclass(frozen=True)
class StarZ(Nonterminal):
    pass


@dataclass(frozen=True)
class StarH(Nonterminal):
    pass


@dataclass(frozen=True)
class StarR(Nonterminal):
    pass


Symbol = Union[Terminal, Nonterminal]
Form = Tuple[Symbol, ...]
Word = Tuple[Terminal, ...]

_FIXED = {Fresh: "@new", StarZ: "@Z", StarH: "@H", StarR: "@R"}


def render_symbol(s: Symbol) -> str:
    """Canonical text for a symbol; injective over all tag shapes."""
    if isinstance(s, Terminal):
        return s.token
    if isinstance(s, Named):
        return s.name
    if isinstance(s, Lift1):
        return "@1." + render_symbol(s.inner)
    if isinstance(s, Lift2):
        return "@2." + render_symbol(s.inner)
    if isinstance(s, Proxy1):
        return "@p1." + s.t.token
    if isinstance(s, Proxy2):
        return "@p2." + s.t.token
    try:
        return _FIXED[type(s)]
    except KeyError:
        raise TypeError(f"not a symbol: {s!r}") from None


def render_form(form: Iterable[Symbol]) -> str:
    """Space-separated rendering; the empty form renders as ``eps``."""
    parts = [render_symbol(s) for s in form]
    return " ".join(parts) if parts else RESERVED


def is_terminal(s: Symbol) -> bool:
    return isinstance(s, Terminal)


def is_word(form: Iterable[Symbol]) -> bool:
    return all(isinstance(s, Terminal) for s in form)


def word(tokens) -> Word:
    """Build a terminal word from a string of single characters or a token list."""
    if isinstance(tokens, str):
        tokens = list(tokens)
    return tuple(Terminal(t) for t in tokens)


def word_key(w: Iterable[Symbol]):
    """Sort key: length first, then rendered tokens."""
    rendered = tuple(render_symbol(s) for s in w)
    return (len(rendered), rendered)


@dataclass(frozen=True)
class Grule:
    input_L: Form
    input_N: Nonterminal
    input_R: Form
    output: Form

    def __post_init__(self):
        if not isinstance(self.input_N, Nonterminal):
            raise TypeError(f"input_N must be a nonterminal tag, got {self.input_N!r}")
        for name in ("input_L", "input_R", "output"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    @property
    def lhs(self) -> Form:
        return self.input_L + (self.input_N,) + self.input_R

    def symbols(self):
        yield from self.lhs
        yield from self.output

    def __str__(self):
        return f"{render_form(self.lhs)} -> {render_form(self.output)}"


def rule_lhs(r: Grule) -> Form:
    return r.lhs


def designate(lhs: Iterable[Symbol], rhs: Iterable[Symbol]) -> Grule:
    """Split ``lhs`` around its leftmost nonterminal.

    Which nonterminal gets designated does not change the rewrite relation;
    leftmost keeps the split deterministic.
    """
    lhs = tuple(lhs)
    for i, s in enumerate(lhs):
        if isinstance(s, Nonterminal):
            return Grule(lhs[:i], s, lhs[i + 1:], tuple(rhs))
    raise NoNonterminalOnLhs(f"left-hand side {render_form(lhs)!r} has no nonterminal")


@dataclass(frozen=True)
class Grammar:
    terminals: frozenset
    nonterminals: frozenset
    initial: Nonterminal
    rules: Tuple[Grule, ...]

    def __post_init__(self):
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        object.__setattr__(self, "nonterminals", frozenset(self.nonterminals))
        object.__setattr__(self, "rules", tuple(self.rules))
        _validate(self)

    def symbols(self):
        """All declared symbols in canonical order."""
        return sorted(self.terminals | self.nonterminals, key=render_symbol)

    def check_form(self, form: Iterable[Symbol]) -> Form:
        form = tuple(form)
        for s in form:
            if s not in self.terminals and s not in self.nonterminals:
                raise UndeclaredSymbol(render_symbol(s))
        return form

    def __str__(self):
        return "\n".join(str(r) for r in self.rules)


def _validate(g: Grammar):
    for t in g.terminals:
        if not isinstance(t, Terminal):
            raise TypeError(f"terminal set contains non-terminal {t!r}")
    for n in g.nonterminals:
        if not isinstance(n, Nonterminal):
            raise TypeError(f"nonterminal set contains {n!r}")
    if g.initial not in g.nonterminals:
        raise InitialNotDeclared(f"initial {render_symbol(g.initial)!r} is not a declared nonterminal")
    t_names = {t.token for t in g.terminals}
    n_names = {render_symbol(n) for n in g.nonterminals}
    clash = t_names & n_names
    if clash:
        raise NameCollision(f"declared as both terminal and nonterminal: {sorted(clash)}")
    for r in g.rules:
        if not isinstance(r, Grule):
            raise TypeError(f"not a rule: {r!r}")
        for s in r.symbols():
            if s not in g.terminals and s not in g.nonterminals:
                raise UndeclaredSymbol(render_symbol(s))


def make_grammar(terminals, nonterminals, initial, rules) -> Grammar:
    """Validated grammar from raw collections.

    Bare strings are accepted as shorthand: in ``terminals`` they become
    :class:`Terminal`, in ``nonterminals``/``initial`` they become
    :class:`Named`.
    """
    ts = frozenset(Terminal(t) if isinstance(t, str) else t for t in terminals)
    ns = frozenset(Named(n) if isinstance(n, str) else n for n in nonterminals)
    if isinstance(initial, str):
        initial = Named(initial)
    return Grammar(ts, ns, initial, tuple(rules))


def parse_symbols(text: str, g: Optional[Grammar] = None, terminals=(), nonterminals=()) -> Form:
    """Resolve whitespace-separated tokens to symbols by their rendered names.

    The lookup table is taken from ``g`` when given, otherwise from the
    explicit ``terminals``/``nonterminals``. ``eps`` alone means the empty form.
    """
    table = {}
    if g is not None:
        terminals, nonterminals = g.terminals, g.nonterminals
    for s in terminals:
        s = Terminal(s) if isinstance(s, str) else s
        table[render_symbol(s)] = s
    for s in nonterminals:
        s = Named(s) if isinstance(s, str) else s
        table[render_symbol(s)] = s
    tokens = text.split()
    if tokens == [RESERVED]:
        return ()
    out = []
    for tok in tokens:
        try:
            out.append(table[tok])
        except KeyError:
            raise UndeclaredSymbol(tok) from None
    return tuple(out)


def rules_from_text(lines: Iterable[str], terminals, nonterminals):
    """Build rules from ``"a S b -> b"`` style lines over the given alphabets."""
    rules = []
    for line in lines:
        left, sep, right = line.partition("->")
        if not sep:
            raise ValueError(f"missing '->' in {line!r}")
        lhs = parse_symbols(left, terminals=terminals, nonterminals=nonterminals)
        rhs = parse_symbols(right, terminals=terminals, nonterminals=nonterminals)
        rules.append(designate(lhs, rhs))
    return rules


def grammar(terminals: str, nonterminals: str, initial: str, rules: Iterable[str]) -> Grammar:
    """Compact constructor used throughout the tests and examples.

    >>> g = grammar("a b", "S", "S", ["S -> a S b", "S -> eps"])
    >>> len(g.rules)
    2
    """
    ts, ns = terminals.split(), nonterminals.split()
    return make_grammar(ts, ns, initial, rules_from_text(rules, ts, ns))
