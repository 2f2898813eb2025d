"""Diagrammatic syllogistic: chain diagrams, a validity calculus and a rewriting system."""

from .core import (
    Atom, ChainDiagram, Mood, Proposition, TermVariable, Word, alpha_equivalent,
    canonical_key, canonicalize, chain_of_atom, chain_of_word, concat, dualize, mirror,
    parse_atom, parse_chain, parse_proposition, parse_syllogism, parse_word, print_word,
    render_chain, var,
)
from .errors import (
    ChainError, CompositionError, InapplicableError, ParseError, ResourceError,
    SyllogisticError, UnassignedVariableError, WellFormednessError,
)
from .inference import (
    CaseKind, ChainCase, Syllogism, Verdict, check_validity, classify, enumerate_valid,
    family_counts, mood_and_figure, normalize_chain, valid_count,
)
from .polygraph import (
    Derivation, Measure, RuleInstance, applicable_rewrites, critical_pairs,
    instantiate_rules, normalize_word, rewrite_step, termination_audit,
)
from .semantics import Model, audit_soundness, find_countermodel, satisfies

__all__ = [name for name in dir() if not name.startswith("_")]
