"""Chain reduction, the seven chain cases, validity and enumeration.

Reduction deletes a term-variable occurrence that sits between two edges
pointing the same way (``x -> v -> y`` or ``x <- v <- y``) and fuses the two
edges.  Whether an occurrence is deletable depends only on its own two
edges, so deletions never enable or disable one another and every order
reaches the same normal form.
"""

from __future__ import annotations

import enum
import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Sequence

from .core import (
    Atom,
    Bullet,
    ChainDiagram,
    Mood,
    Proposition,
    TermVariable,
    Word,
    chain_of_atom,
    chain_of_word,
    render_chain,
    var,
)
from .errors import ResourceError, WellFormednessError

DEFAULT_ENUMERATION_CAP = 8


def reducible_positions(c: ChainDiagram) -> list[int]:
    f = c.forward
    return [
        k
        for k in range(1, len(c.nodes) - 1)
        if not isinstance(c.nodes[k], Bullet) and f[k - 1] == f[k]
    ]


def delete_occurrence(c: ChainDiagram, pos: int) -> ChainDiagram:
    """Compose the two edges through the variable occurrence at ``pos``."""
    f = c.forward
    if isinstance(c.nodes[pos], Bullet) or not 0 < pos < len(c.nodes) - 1 or f[pos - 1] != f[pos]:
        raise ValueError(f"position {pos} is not reducible in {render_chain(c)}")
    return ChainDiagram(c.nodes[:pos] + c.nodes[pos + 1 :], f[:pos] + f[pos + 1 :])


def reduce_once(c: ChainDiagram) -> tuple[ChainDiagram, int] | None:
    positions = reducible_positions(c)
    if not positions:
        return None
    return delete_occurrence(c, positions[0]), positions[0]


def normalize_chain(c: ChainDiagram) -> tuple[ChainDiagram, list[int]]:
    """Reduce to normal form, leftmost occurrence first.

    The derivation lists the deleted occurrences as positions in ``c``.
    """
    origin = list(range(len(c.nodes)))
    derivation = []
    while (step := reduce_once(c)) is not None:
        c, pos = step
        derivation.append(origin.pop(pos))
    return c, derivation


# ---------------------------------------------------------------------------
# the seven cases


class CaseKind(enum.Enum):
    I_all_forward = "i"
    II_peak_E = "ii"
    III_valley_I = "iii"
    IV_valley_I_repeated = "iv"
    V_valley_O = "v"
    VI_valley_peak_O = "vi"
    VII_valley_peak_O_repeated = "vii"


@dataclass(frozen=True)
class ChainCase:
    kind: CaseKind | None
    i: int | None = None
    j: int | None = None

    def __bool__(self):
        return self.kind is not None

    def __str__(self):
        if self.kind is None:
            return "none"
        idx = ", ".join(f"{k}={v}" for k, v in (("i", self.i), ("j", self.j)) if v is not None)
        return f"({self.kind.value})" + (f" {idx}" if idx else "")


NO_CASE = ChainCase(None)


def _ordinals(c: ChainDiagram) -> dict[TermVariable, int]:
    out: dict[TermVariable, int] = {}
    for node in c.nodes:
        if isinstance(node, TermVariable):
            out.setdefault(node, len(out) + 1)
    return out


def _index(v: TermVariable, ords: dict[TermVariable, int]) -> int:
    return v.index if v.index is not None else ords[v]


def classify(c: ChainDiagram) -> ChainCase:
    """Match a premise chain against the seven reducible patterns.

    Works on edge directions and bullet placement only; it never reduces.
    Indices are those of the variables flanking the bullets (canonical index,
    or order of first appearance for named variables).
    """
    nodes, f = c.nodes, c.forward
    bul = [k for k, n in enumerate(nodes) if isinstance(n, Bullet)]
    ords = _ordinals(c)

    def runs(lo: int, hi: int, direction: bool) -> bool:
        return all(f[k] == direction for k in range(lo, hi))

    last = len(f)
    if not bul:
        return ChainCase(CaseKind.I_all_forward) if runs(0, last, True) else NO_CASE
    if len(bul) == 1:
        b = bul[0]
        left, right = nodes[b - 1], nodes[b + 1]
        if f[b - 1] and not f[b]:  # sink
            if runs(0, b, True) and runs(b, last, False):
                return ChainCase(CaseKind.II_peak_E, _index(left, ords))
            return NO_CASE
        if runs(0, b, False) and runs(b, last, True):
            kind = CaseKind.IV_valley_I_repeated if left == right else CaseKind.III_valley_I
            return ChainCase(kind, _index(left, ords))
        return NO_CASE
    if len(bul) == 2:
        b1, b2 = bul
        if f[b1 - 1] or not f[b1]:  # first bullet must be a source
            return NO_CASE
        if not (runs(0, b1, False) and runs(b1, b2, True) and runs(b2, last, False)):
            return NO_CASE
        left = nodes[b1 - 1]
        if b2 == b1 + 1:
            return ChainCase(CaseKind.V_valley_O, _index(left, ords))
        right = nodes[b2 + 1]
        kind = (
            CaseKind.VII_valley_peak_O_repeated
            if nodes[b1 + 1] == left
            else CaseKind.VI_valley_peak_O
        )
        return ChainCase(kind, _index(left, ords), _index(right, ords))
    return NO_CASE


def aristotelian_mood(c: ChainDiagram) -> Mood | None:
    """The mood whose plain diagram has the shape of ``c``, if any."""
    for mood in Mood:
        shape = chain_of_atom(Atom.of(mood, "x", "y"))
        if shape.forward == c.forward and len(shape.nodes) == len(c.nodes):
            if all(isinstance(a, Bullet) == isinstance(b, Bullet) for a, b in zip(shape.nodes, c.nodes)):
                return mood
    return None


# ---------------------------------------------------------------------------
# syllogisms


@dataclass(frozen=True)
class Syllogism:
    premises: Word
    conclusion: Proposition

    def __post_init__(self):
        existential = [a for a in self.premises if a.mood is Mood.I and a.prop.reflexive]
        if len(existential) > 1:
            raise WellFormednessError("at most one assumption of existence I(x,x) is allowed")

    @classmethod
    def parse(cls, text: str) -> "Syllogism":
        from .core import parse_syllogism

        return cls(*parse_syllogism(text))

    def variables(self) -> set[TermVariable]:
        return self.premises.variables() | {self.conclusion.subject, self.conclusion.predicate}

    @property
    def n(self) -> int:
        return len(self.variables())

    @property
    def existential(self) -> Atom | None:
        for a in self.premises:
            if a.mood is Mood.I and a.prop.reflexive:
                return a
        return None

    def __str__(self):
        return f"{self.premises} |= {self.conclusion}"


@dataclass(frozen=True)
class Verdict:
    valid: bool
    normal_form: ChainDiagram
    matched_case: ChainCase
    derivation: tuple[int, ...]
    reason: str = ""
    premise_chain: ChainDiagram | None = None
    conclusion_chain: ChainDiagram | None = None


def check_validity(s: Syllogism | Word, conclusion: Proposition | None = None) -> Verdict:
    """Decide validity by reducing the premise chain to the conclusion diagram."""
    if isinstance(s, Word):
        s = Syllogism(s, conclusion)  # type: ignore[arg-type]
    premise_chain = chain_of_word(s.premises)
    concl_chain = chain_of_atom(Atom(s.conclusion))
    case = classify(premise_chain)

    def verdict(valid, nf, derivation, reason=""):
        return Verdict(valid, nf, case, tuple(derivation), reason, premise_chain, concl_chain)

    if premise_chain.bullets != concl_chain.bullets:
        reason = f"bullet count ({premise_chain.bullets} vs {concl_chain.bullets})"
        return verdict(False, premise_chain, (), reason)
    nf, derivation = normalize_chain(premise_chain)
    if s.n == 1 and s.conclusion.mood not in (Mood.A, Mood.I):
        return verdict(False, nf, derivation, "only the A and I laws of identity hold for one term")
    if nf != concl_chain:
        return verdict(False, nf, derivation, "normal-form mismatch")
    return verdict(True, nf, derivation)


def mood_and_figure(s: Syllogism) -> tuple[str, int] | None:
    """Traditional mood and figure of a three-term syllogism.

    The minor, middle and major terms are the chain's left end, its other
    variable and its right end.  An assumption of existence is ignored.
    """
    if s.n != 3:
        return None
    plain = [a for a in s.premises.printed_atoms if not a.prop.reflexive]
    if len(plain) != 2:
        return None
    minor, major = s.premises.left, s.premises.right
    first, second = plain
    if major not in first.variables() or minor not in second.variables():
        return None
    middle_first = first.prop.subject != major
    middle_second = second.prop.subject != minor
    figure = {(True, False): 1, (False, False): 2, (True, True): 3, (False, True): 4}[
        (middle_first, middle_second)
    ]
    return first.mood.value + second.mood.value + s.conclusion.mood.value, figure


# ---------------------------------------------------------------------------
# counting and enumeration

FAMILY_ROWS = {
    1: "A-chain",
    2: "E(i,i+1)",
    3: "E(i+1,i)~",
    4: "I(i,i+1)",
    5: "I(i+1,i)~",
    6: "I(i,i)",
    7: "O(i,i+1)",
    8: "E(j-1,j) I(i,i+1)",
    9: "E(j-1,j) I(i+1,i)~",
    10: "E(j,j-1)~ I(i,i+1)",
    11: "E(j,j-1)~ I(i+1,i)~",
    12: "E(j-1,j) I(i,i)",
    13: "E(j,j-1)~ I(i,i)",
}


def phi(n: int) -> int:
    return (n - 1) * (n - 2) // 2


def psi(n: int) -> int:
    return n * (n - 1) // 2


def valid_count(n: int) -> int:
    return 3 * n * n - n


def family_counts(n: int) -> dict[int, int]:
    """Expected number of valid syllogisms per family row."""
    m = n - 1
    return {1: 1, 2: m, 3: m, 4: m, 5: m, 6: n, 7: m,
            8: phi(n), 9: phi(n), 10: phi(n), 11: phi(n), 12: psi(n), 13: psi(n)}


def link_atom(k: int, mood: Mood, reverse: bool) -> Atom:
    """The premise joining a_k (left) to a_{k+1} (right) along the chain."""
    if reverse:
        return Atom(Proposition(mood, var(k + 1), var(k)), True)
    return Atom(Proposition(mood, var(k), var(k + 1)))


LINK_CHOICES = [(m, rev) for m in Mood for rev in (False, True)]


def _premise_words(n: int, max_bullets: int | None = None) -> Iterator[tuple[Word, int | None]]:
    """All premise words over a1..an, with the position of the existential."""
    if n == 1:
        for mood in Mood:
            yield Word((Atom(Proposition(mood, var(1), var(1))),)), None
        return
    budget = max_bullets if max_bullets is not None else 10**9
    for links in itertools.product(LINK_CHOICES, repeat=n - 1):
        link_bullets = sum(m.bullets for m, _ in links)
        if link_bullets > budget:
            continue
        atoms = [link_atom(k, m, rev) for k, (m, rev) in enumerate(links, 1)]
        yield Word(tuple(atoms)), None
        if link_bullets + 1 > budget:
            continue
        for i in range(1, n + 1):
            exist = Atom(Proposition(Mood.I, var(i), var(i)))
            yield Word(tuple(atoms[: i - 1] + [exist] + atoms[i - 1 :])), i


def candidates(n: int) -> Iterator[Syllogism]:
    """The full candidate space: links x existential choice x conclusion mood."""
    for premises, _ in _premise_words(n):
        for mood in Mood:
            yield Syllogism(premises, Proposition(mood, var(1), var(n)))


def candidate_count(n: int) -> int:
    if n == 1:
        return 16
    return 8 ** (n - 1) * (n + 1) * 4


@dataclass(frozen=True)
class Enumerated:
    syllogism: Syllogism
    family: int
    existential_index: int | None
    case: ChainCase

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(x for x in (self.case.i, self.case.j) if x is not None)

    def sort_key(self):
        return (self.family, self.indices, str(self.syllogism))

    def to_json(self) -> dict:
        mf = mood_and_figure(self.syllogism)
        return {
            "premises": str(self.syllogism.premises),
            "conclusion": str(self.syllogism.conclusion),
            "family": self.family,
            "existential_index": self.existential_index,
            "mood_figure": {"mood": mf[0], "figure": mf[1]} if mf else None,
        }


def family_of(s: Syllogism, case: ChainCase) -> int:
    def find(mood):
        return next(a for a in s.premises if a.mood is mood and not a.prop.reflexive)

    kind = case.kind
    if kind is CaseKind.I_all_forward:
        return 1
    if kind is CaseKind.II_peak_E:
        return 3 if find(Mood.E).dual else 2
    if kind is CaseKind.III_valley_I:
        return 5 if find(Mood.I).dual else 4
    if kind is CaseKind.IV_valley_I_repeated:
        return 6
    if kind is CaseKind.V_valley_O:
        return 7
    if kind is CaseKind.VI_valley_peak_O:
        return 8 + 2 * find(Mood.E).dual + find(Mood.I).dual
    if kind is CaseKind.VII_valley_peak_O_repeated:
        return 13 if find(Mood.E).dual else 12
    raise ValueError(f"no family for {s}")


def enumerate_valid(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> list[Enumerated]:
    """Every valid n-term syllogism, sorted by family row then indices.

    Premise words whose bullet count exceeds two are skipped outright: no
    conclusion diagram has more than two bullets, so :func:`check_validity`
    would reject them at its bullet pre-check.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > cap:
        raise ResourceError(f"enumeration over n={n} exceeds the cap n<={cap}", "cap")
    found = []
    for premises, exist_at in _premise_words(n, max_bullets=2):
        for mood in Mood:
            s = Syllogism(premises, Proposition(mood, var(1), var(n)))
            v = check_validity(s)
            if v.valid:
                found.append(Enumerated(s, family_of(s, v.matched_case), exist_at, v.matched_case))
    found.sort(key=Enumerated.sort_key)
    return found


def summarize(valid: Sequence[Enumerated], n: int) -> dict:
    per = Counter(e.family for e in valid)
    return {"n": n, "total": len(valid), "per_family": {str(r): per.get(r, 0) for r in FAMILY_ROWS}}


# ---------------------------------------------------------------------------
# case (vi) / (vii) chains


def enumerate_vi_vii(n: int) -> tuple[list[ChainDiagram], list[ChainDiagram]]:
    """Explicit premise chains of cases (vi) and (vii) over a1..an."""
    six, seven = [], []
    for i in range(1, n):
        for j in range(i + 2, n + 1):
            # I on link (i, i+1), E on link (j-1, j)
            atoms = [
                link_atom(k, Mood.I if k == i else Mood.E if k == j - 1 else Mood.A,
                          k < i or k >= j)
                for k in range(1, n)
            ]
            six.append(chain_of_word(Word(tuple(atoms))))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            atoms = [
                link_atom(k, Mood.E if k == j - 1 else Mood.A, k < i or k >= j)
                for k in range(1, n)
            ]
            atoms.insert(i - 1, Atom(Proposition(Mood.I, var(i), var(i))))
            seven.append(chain_of_word(Word(tuple(atoms))))
    return six, seven
