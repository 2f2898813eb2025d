"""Finite set models: an independent check on the diagrammatic calculus.

A term-variable denotes a subset of a finite universe.  ``A`` reads as
inclusion, ``E`` as disjointness, ``I`` as overlap and ``O`` as non-inclusion.
Empty sets and the empty universe are allowed, so ``A`` carries no
existential import.

Countermodels are searched by membership type: with the syllogism's n
variables ordered along the premise chain, an element's type is the bit
vector recording which sets contain it.  Truth of every categorical
proposition depends only on which types occur, so the search visits type
sets by size and then in lexicographic order.  The first hit is therefore the
smallest countermodel, and within that size the lexicographically least.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .core import Atom, Mood, Proposition, TermVariable, Word
from .errors import ResourceError, UnassignedVariableError
from .inference import Syllogism, candidates, check_validity
from .polygraph import instantiate_rules

DEFAULT_MAX_N = 5


@dataclass(frozen=True)
class Model:
    universe_size: int
    assignment: dict[TermVariable, frozenset[int]] = field(hash=False)

    def extent(self, v: TermVariable) -> frozenset[int]:
        try:
            return self.assignment[v]
        except KeyError:
            raise UnassignedVariableError(f"{v} has no extent in this model") from None

    def to_json(self) -> dict:
        return {
            "universe_size": self.universe_size,
            "assignment": {str(v): sorted(s) for v, s in self.assignment.items()},
        }

    def describe(self) -> str:
        lines = [f"U = {_set(range(self.universe_size))}"]
        lines += [f"{v} = {_set(s)}" for v, s in self.assignment.items()]
        return "\n".join(lines)


def _set(xs) -> str:
    xs = sorted(xs)
    return "{" + ", ".join(map(str, xs)) + "}" if xs else "{}"


def satisfies(m: Model, p: Proposition | Atom | Word) -> bool:
    if isinstance(p, Word):
        return all(satisfies(m, a) for a in p)
    if isinstance(p, Atom):
        p = p.prop
    s, q = m.extent(p.subject), m.extent(p.predicate)
    if p.mood is Mood.A:
        return s <= q
    if p.mood is Mood.E:
        return not (s & q)
    if p.mood is Mood.I:
        return bool(s & q)
    return bool(s - q)


# ---------------------------------------------------------------------------
# type-vector search


def _masks(p: Proposition, order: dict[TermVariable, int]) -> tuple[int, bool]:
    """Bitmask over the 2^n types plus whether the mask lists witnesses.

    For A/E the mask holds the forbidden types (true iff none occurs); for I/O
    it holds the witness types (true iff one occurs).
    """
    si, pi = order[p.subject], order[p.predicate]
    mask = 0
    for t in range(1 << len(order)):
        ins, inp = bool(t >> si & 1), bool(t >> pi & 1)
        hit = {
            Mood.A: ins and not inp,
            Mood.E: ins and inp,
            Mood.I: ins and inp,
            Mood.O: ins and not inp,
        }[p.mood]
        mask |= hit << t
    return mask, not p.mood.universal


@lru_cache(maxsize=16)
def _supports(nvars: int, max_universe: int) -> tuple[np.ndarray, list[tuple[int, ...]]]:
    ntypes = 1 << nvars
    combos: list[tuple[int, ...]] = []
    for size in range(min(max_universe, ntypes) + 1):
        combos.extend(itertools.combinations(range(ntypes), size))
    dtype = np.uint64 if ntypes <= 64 else object
    masks = np.array([sum(1 << t for t in c) for c in combos], dtype=dtype)
    return masks, combos


def _variable_order(s: Syllogism) -> list[TermVariable]:
    order = s.premises.chain_variables()
    for v in (s.conclusion.subject, s.conclusion.predicate):
        if v not in order:
            order.append(v)
    return order


def find_countermodel(s: Syllogism, max_universe: int | None = None,
                      max_n: int = DEFAULT_MAX_N) -> Model | None:
    """The first model (fewest elements, then least type list) making every
    premise true and the conclusion false, or None within the bound."""
    variables = _variable_order(s)
    n = len(variables)
    if n > max_n:
        raise ResourceError(f"countermodel search over {n} variables exceeds the cap of {max_n}",
                            "max_n")
    if max_universe is None:
        max_universe = n + 1
    if max_universe < 0:
        raise ValueError("max_universe must be non-negative")
    order = {v: k for k, v in enumerate(variables)}
    masks, combos = _supports(n, max_universe)
    ok = np.ones(len(masks), dtype=bool)
    for a in s.premises:
        mask, existential = _masks(a.prop, order)
        m = np.uint64(mask)
        ok &= (masks & m) != 0 if existential else (masks & m) == 0
    mask, existential = _masks(s.conclusion, order)
    m = np.uint64(mask)
    ok &= (masks & m) == 0 if existential else (masks & m) != 0
    hits = np.flatnonzero(ok)
    if not len(hits):
        return None
    types = combos[hits[0]]
    assignment = {
        v: frozenset(e for e, t in enumerate(types) if t >> order[v] & 1) for v in variables
    }
    return Model(len(types), assignment)


def entails(premises: Word, conclusion: Proposition, max_universe: int | None = None) -> bool:
    return find_countermodel(Syllogism(premises, conclusion), max_universe) is None


def oracle_valid(s: Syllogism, max_universe: int | None = None) -> bool:
    """Semantic counterpart of calculus validity.

    A syllogism carrying an assumption of existence counts as valid only when
    the assumption is needed: valid with it and not valid without it.
    """
    if find_countermodel(s, max_universe) is not None:
        return False
    ex = s.existential
    if ex is None or len(s.premises) == 1:
        return True
    rest = tuple(a for a in s.premises if a != ex)
    try:
        base = Syllogism(Word(rest), s.conclusion)
    except Exception:
        return True
    return find_countermodel(base, max_universe) is not None


# ---------------------------------------------------------------------------
# soundness audit


@dataclass
class SoundnessReport:
    n: int
    max_universe: int
    rules_checked: int = 0
    unsound_rules: list[str] = field(default_factory=list)
    accepted: int = 0
    accepted_with_countermodel: list[str] = field(default_factory=list)
    rejected: int = 0
    rejected_with_countermodel: int = 0
    redundant_existential: list[str] = field(default_factory=list)
    divergences: list[dict] = field(default_factory=list)

    @property
    def unexplained(self) -> list[dict]:
        return [d for d in self.divergences if not d["whitelisted"]]

    @property
    def ok(self) -> bool:
        return not self.unsound_rules and not self.accepted_with_countermodel and not self.unexplained

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "max_universe": self.max_universe,
            "rules_checked": self.rules_checked,
            "unsound_rules": self.unsound_rules,
            "accepted": self.accepted,
            "accepted_with_countermodel": self.accepted_with_countermodel,
            "rejected": self.rejected,
            "rejected_with_countermodel": self.rejected_with_countermodel,
            "redundant_existential": len(self.redundant_existential),
            "divergences": self.divergences,
            "ok": self.ok,
        }


def audit_soundness(n: int, max_universe: int | None = None) -> SoundnessReport:
    """Cross-check rules and the whole candidate space against finite models.

    Rejected candidates without a countermodel fall in two documented classes:
    one-term identities other than A and I (whitelisted divergences), and
    candidates whose assumption of existence is redundant because the
    syllogism is already valid without it.
    """
    if max_universe is None:
        max_universe = n + 1
    report = SoundnessReport(n, max_universe)
    for r in instantiate_rules(n):
        report.rules_checked += 1
        if find_countermodel(Syllogism(r.lhs, r.rhs.atoms[0].prop), max_universe) is not None:
            report.unsound_rules.append(r.name)
    for s in candidates(n):
        valid = check_validity(s).valid
        model = find_countermodel(s, max_universe)
        if valid:
            report.accepted += 1
            if model is not None or not oracle_valid(s, max_universe):
                report.accepted_with_countermodel.append(str(s))
            continue
        report.rejected += 1
        if model is not None:
            report.rejected_with_countermodel += 1
            continue
        if not oracle_valid(s, max_universe):
            report.redundant_existential.append(str(s))
            continue
        report.divergences.append({
            "syllogism": str(s),
            "calculus": "invalid",
            "semantics": "valid",
            "whitelisted": n == 1,
            "note": "one-term identity law outside A and I" if n == 1 else "",
        })
    return report
