"""Unrestricted (type-0) grammars: bounded derivation search and closure constructions."""

from .cf import CfGrammar, CfRule, cf_concat, cf_union, general_of_cf, is_context_free
from .closures import (StarClassification, build_compartments, classify_star_form, concat_grammar,
                       naive_concat_grammar, reversal_grammar, star_grammar, terminal_scan,
                       union_grammar, verify_star_classification)
from .core import (Fresh, Grammar, Grule, Lift1, Lift2, Named, Nonterminal, Proxy1, Proxy2, StarH,
                   StarR, StarZ, Terminal, designate, grammar, make_grammar, render_form, rule_lhs,
                   word)
from .engine import (DerivationTrace, Match, SearchBudget, apply_rule, derives_within,
                     enumerate_language, find_matches, generates_within, step_successors)
from .fileformat import parse_grammar, render_grammar
from .oracle import WordSet, check_closure

__version__ = "0.1.0"
