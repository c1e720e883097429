import random

import pytest
from hypothesis import given, settings, strategies as st

from t0gram.closures import star_lift, union_lifts
from t0gram.core import Grammar, Grule, Lift1, Named, Terminal
from t0gram.engine import DerivationTrace, SearchBudget, apply_rule, enumerate_traces, find_matches, replay
from t0gram.errors import InvalidTrace
from t0gram.lifting import LiftedGrammar, lift_derivation, lift_string, sink_string, validate_lifted

from grammars import ALL, ANBN
from strategies import forms_over, small_grammars

S = Named("S")


def _lifts(g0):
    yield union_lifts(g0, ANBN)[0]
    yield union_lifts(ANBN, g0)[1]
    yield star_lift(g0)


@pytest.mark.parametrize("name", sorted(ALL))
def test_embeddings_validate(name):
    for lg in _lifts(ALL[name]):
        report = validate_lifted(lg)
        assert report.ok, report.violations


def _broken(g0, rules):
    good = union_lifts(g0, g0)[0]
    g = Grammar(good.g.terminals, good.g.nonterminals, good.g.initial, rules)
    return LiftedGrammar(g0, g, good.lift_nt, good.sink_nt)


def test_missing_rule_is_reported():
    good = union_lifts(ANBN, ANBN)[0]
    lg = _broken(ANBN, good.g.rules[1:])
    assert validate_lifted(lg).clauses() == ["corresponding_rules"]


def test_extra_rule_is_reported():
    good = union_lifts(ANBN, ANBN)[0]
    lg = _broken(ANBN, good.g.rules + (Grule((), Lift1(S), (), (Terminal("a"),)),))
    assert validate_lifted(lg).clauses() == ["preimage_of_rules"]


def test_non_injective_lift_is_reported():
    g0 = Grammar(frozenset(), {S, Named("T")}, S, [])
    g = Grammar(frozenset(), {S}, S, [])
    lg = LiftedGrammar(g0, g, lambda n: S, lambda n: S)
    assert validate_lifted(lg).clauses() == ["lift_inj", "lift_nt_sink"]


def test_lift_derivation_shifts_positions():
    lg = star_lift(ANBN)
    t = enumerate_traces(ANBN, SearchBudget.for_word_len(2))[(Terminal("a"), Terminal("b"))]
    left = (Terminal("b"), Terminal("b"))
    lifted = lift_derivation(lg, t, left=left)
    assert [m.position for m, _ in lifted.steps] == [m.position + 2 for m, _ in t.steps]
    assert replay(lg.g, lifted)


def test_lift_derivation_rejects_foreign_trace():
    lg = star_lift(ANBN)
    bogus = DerivationTrace((S,), ((find_matches(ANBN, (S,))[0], (S, S)),))
    with pytest.raises(InvalidTrace):
        lift_derivation(lg, bogus)


@settings(max_examples=50, deadline=None)
@given(small_grammars())
def test_random_embeddings_validate(g):
    for lg in _lifts(g):
        assert validate_lifted(lg).ok


@settings(max_examples=50, deadline=None)
@given(small_grammars())
def test_lift_derivation_preserves_steps(g):
    for lg in _lifts(g):
        for t in enumerate_traces(g, SearchBudget(6, 6, 3)).values():
            lifted = lift_derivation(lg, t)
            assert len(lifted) == len(t)
            assert replay(lg.g, lifted)
            assert sink_string(lg, lifted.final) == t.final


@settings(max_examples=50, deadline=None)
@given(small_grammars(), st.data())
def test_simulation_one_step(g, data):
    form = data.draw(forms_over(g))
    ms = find_matches(g, form)
    if not ms:
        return
    m = data.draw(st.sampled_from(ms))
    nxt = apply_rule(g, form, m)
    for lg in _lifts(g):
        up = lift_string(lg, form)
        assert lift_string(lg, nxt) in {apply_rule(lg.g, up, m2) for m2 in find_matches(lg.g, up)}


@settings(max_examples=50, deadline=None)
@given(small_grammars(), st.data())
def test_reverse_simulation_on_sinkable_forms(g, data):
    form = data.draw(forms_over(g))
    lg = data.draw(st.sampled_from(list(_lifts(g))))
    up = lift_string(lg, form)
    below = {apply_rule(g, form, m) for m in find_matches(g, form)}
    for m in find_matches(lg.g, up):
        sunk = sink_string(lg, apply_rule(lg.g, up, m))
        if sunk is not None:
            assert sunk in below


def test_sink_lift_roundtrip_randomized():
    rnd = random.Random(2024)
    for name, g in sorted(ALL.items()):
        syms = sorted(g.terminals | g.nonterminals, key=str)
        for lg in _lifts(g):
            for _ in range(100):
                f = tuple(rnd.choice(syms) for _ in range(rnd.randint(0, 8)))
                assert sink_string(lg, lift_string(lg, f)) == f
