import pytest
from hypothesis import given, settings

from t0gram.closures import (build_compartments, classify_star_form, concat_grammar, naive_concat_grammar,
                             reversal_grammar, reversal_grule, star_grammar, star_trace, terminal_scan,
                             union_grammar, verify_star_classification)
from t0gram.core import Grule, Named, StarH, StarR, StarZ, Terminal, render_form, word
from t0gram.engine import SearchBudget, derives_within, enumerate_language, enumerate_traces, replay
from t0gram.errors import TraceMismatch

import oracles
from grammars import ALL, ANBN, EMPTY, G1, G2, REFERENCE_STAR_CHAIN, star_form
from strategies import small_grammars

a, b = Terminal("a"), Terminal("b")
S, S2 = Named("S"), Named("S2")
Z, H, R = StarZ(), StarH(), StarR()
STAR = star_grammar(ANBN)
B6 = SearchBudget.for_word_len(6)


def words(*texts):
    return [word(t) for t in texts]


def trace_of(g, text):
    return enumerate_traces(g, SearchBudget.for_word_len(len(text)))[word(text)]


def test_union_rule_count_and_language():
    u = union_grammar(ANBN, ANBN)
    assert len(u.rules) == 2 * len(ANBN.rules) + 2
    assert enumerate_language(u, B6) == words("", "ab", "aabb", "aaabbb")
    assert enumerate_language(union_grammar(EMPTY, ANBN), B6) == enumerate_language(ANBN, B6)


def test_reversal_examples():
    assert str(reversal_grule(ANBN.rules[0])) == "S -> b S a"
    assert reversal_grule(G2.rules[2]) == Grule((), S2, (a,), (b,))
    assert str(reversal_grule(G2.rules[2])) == "S2 a -> b"


@pytest.mark.parametrize("name", sorted(ALL))
def test_reversal_involution(name):
    g = ALL[name]
    assert reversal_grammar(reversal_grammar(g)) == g


@settings(max_examples=50, deadline=None)
@given(small_grammars())
def test_reversal_exact_with_step_counts(g):
    budget = SearchBudget(8, 7, 4)
    fwd = enumerate_traces(g, budget)
    rev = enumerate_traces(reversal_grammar(g), budget)
    assert {w[::-1]: len(t) for w, t in fwd.items()} == {w: len(t) for w, t in rev.items()}


def test_concat_rule_count():
    c = concat_grammar(G1, G2)
    assert len(c.rules) == len(G1.rules) + len(G2.rules) + 2 * 2 + 1


def test_concat_counterexample_pair():
    assert enumerate_language(concat_grammar(G1, G2), SearchBudget.for_word_len(3)) == words("", "a", "aa", "aaa")
    naive = enumerate_traces(naive_concat_grammar(G1, G2), SearchBudget.for_word_len(1))
    assert word("b") in naive
    assert len(naive[word("b")]) == 4


def test_naive_and_proxy_concat_agree_on_cf_inputs():
    for x in ("anbn", "g1", "eps", "empty"):
        for y in ("anbn", "g1", "eps", "empty"):
            g1, g2 = ALL[x], ALL[y]
            budget = SearchBudget.for_word_len(4)
            assert (enumerate_language(naive_concat_grammar(g1, g2), budget)
                    == enumerate_language(concat_grammar(g1, g2), budget))


def test_star_rules_match_listing():
    assert [str(r) for r in STAR.rules] == [
        "S -> a S b", "S -> eps", "@Z -> @Z S @H", "@Z -> @R @H",
        "@R @H -> @R", "@R @H -> eps", "@R a -> a @R", "@R b -> b @R",
    ]


def test_star_enumeration():
    assert enumerate_language(STAR, SearchBudget.for_word_len(4)) == words("", "ab", "aabb", "abab")


def test_reference_chain_is_a_valid_derivation():
    forms = [star_form(x, ANBN) for x in REFERENCE_STAR_CHAIN]
    assert len(forms) == 27
    for f, h in zip(forms, forms[1:]):
        assert derives_within(STAR, f, h, SearchBudget(1, 16, 0)) is not None, render_form(h)


def test_shortest_derivation_of_reference_word():
    t = derives_within(STAR, (Z,), word("abaaabbbab"), SearchBudget(27, 16, 10))
    assert len(t) == 26


def test_empty_word_via_cleaner():
    t = derives_within(STAR, (Z,), (), SearchBudget(2, 4, 0))
    assert t.forms == [(Z,), (R, H), ()]
    assert enumerate_language(star_grammar(EMPTY), SearchBudget(2, 4, 4)) == [()]


def test_build_compartments():
    t0 = build_compartments(ANBN, [], [])
    assert len(t0) == 0 and t0.final == (Z,)
    t1 = build_compartments(ANBN, words("ab"), [trace_of(ANBN, "ab")])
    assert len(t1) == 3 and t1.final == (Z, a, b, H)
    t2 = build_compartments(ANBN, words("ab", "aabb"), [trace_of(ANBN, "ab"), trace_of(ANBN, "aabb")])
    assert len(t2) == 7 and t2.final == (Z, a, b, H, a, a, b, b, H)
    assert replay(STAR, t1) and replay(STAR, t2)


def test_build_compartments_rejects_mismatch():
    with pytest.raises(TraceMismatch):
        build_compartments(ANBN, words("aabb"), [trace_of(ANBN, "ab")])
    with pytest.raises(TraceMismatch):
        build_compartments(ANBN, words("ab"), [])


def test_terminal_scan():
    t0 = terminal_scan(ANBN, [])
    assert len(t0) == 0 and t0.final == (R, H)
    t1 = terminal_scan(ANBN, words("ab"))
    assert [render_form(f) for f in t1.forms] == [
        "@R @H a b @H", "@R a b @H", "a @R b @H", "a b @R @H"]
    t2 = terminal_scan(ANBN, words("ab", "ab"))
    assert len(t2) == 6 and t2.final == (a, b, a, b, R, H)
    assert replay(STAR, t1) and replay(STAR, t2)


def test_star_trace_length():
    ws = words("ab", "aaabbb", "ab")
    traces = [trace_of(ANBN, render_form(w).replace(" ", "")) for w in ws]
    t = star_trace(ANBN, ws, traces)
    assert replay(STAR, t)
    assert t.final == word("abaaabbbab")
    assert len(t) == sum(map(len, traces)) + 2 * 3 + 10 + 2


def test_classify_case1():
    cs = classify_star_form(ANBN, star_form("ZaaSbb#S#", ANBN))
    assert [c.case for c in cs] == [1]
    c = cs[0]
    assert c.m == 2 and c.x == ((a, a, S, b, b), (S,))
    assert verify_star_classification(ANBN, c)


def test_classify_case2():
    form = star_form("R#aSb#aaabbb#S#", ANBN)
    (c,) = [c for c in classify_star_form(ANBN, form) if c.case == 2]
    assert c.m == 3 and c.x == ((a, S, b), word("aaabbb"), (S,))
    assert c.recompose() == form


def test_classify_case3():
    form = star_form("abaaabRbb#aSb#", ANBN)
    (c,) = [c for c in classify_star_form(ANBN, form) if c.case == 3]
    assert c.beta == word("abaaab") and c.gamma == (b, b) and c.x == ((a, S, b),)
    v = verify_star_classification(ANBN, c)
    assert v.verified
    assert v.classification.w == (word("ab"),)
    assert v.classification.beta == word("aaab")
    assert v.classification.recompose() == form


def test_classify_case4():
    form = word("abaaabbbab")
    (c,) = classify_star_form(ANBN, form)
    assert c.case == 4
    v = verify_star_classification(ANBN, c)
    assert v.verified and v.detail["split"] == ["a b", "a a a b b b", "a b"]


def test_unreachable_compartment_does_not_verify():
    (c,) = classify_star_form(ANBN, star_form("Zba#", ANBN))
    assert c.case == 1
    assert not verify_star_classification(ANBN, c)


def test_unclassifiable_form():
    assert classify_star_form(ANBN, star_form("ZRa", ANBN)) == []


@pytest.mark.parametrize("text", REFERENCE_STAR_CHAIN)
def test_recompose_roundtrip(text):
    form = star_form(text, ANBN)
    cs = classify_star_form(ANBN, form)
    assert cs
    for c in cs:
        assert c.recompose() == form


@settings(max_examples=30, deadline=None)
@given(small_grammars())
def test_union_matches_bruteforce(g):
    # one extra step for the start rule, nothing else changes
    got = {tuple(map(str, w)) for w in enumerate_language(union_grammar(g, ANBN), SearchBudget(9, 7, 3))}
    expected = set(oracles.language(g, 3, 8, 7)) | set(oracles.language(ANBN, 3, 8, 7))
    assert got == expected
