"""Word rewriting with the syllogistic rule set.

Rules are instantiated over the canonical variables a1..an and matched
exactly: a rule applies to a subword only when the subword equals the
instantiated left-hand side, index side conditions included.

Positions handed in and out of this module count printed atoms from the
left, so position 0 is the first premise as written.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .core import Atom, Word, canonical_key, parse_word, var
from .errors import InapplicableError, ResourceError

DEFAULT_CRITICAL_PAIR_CAP = 5

# (family, arity, lhs, rhs, trivial); templates in printed order over i<j<k.
# Arity 1 rows are the laws of identity, instantiated at i for 1 <= i <= n.
SCHEMA: list[tuple[str, int, str, str, bool]] = [
    ("identity-A", 1, "A(i,i)", "A(i,i)", True),
    ("identity-I", 1, "I(i,i)", "I(i,i)", True),
    ("trivial-A", 2, "A(i,j)", "A(i,j)", True),
    ("trivial-I", 2, "I(i,j)", "I(i,j)", True),
    ("trivial-E", 2, "E(i,j)", "E(i,j)", True),
    ("trivial-O", 2, "O(i,j)", "O(i,j)", True),
    ("subalternation-A", 2, "A(i,j) # I(i,i)", "I(i,j)", False),
    ("subalternation-E", 2, "E(i,j) # I(i,i)", "O(i,j)", False),
    ("conversion-E", 2, "E(j,i)~", "E(i,j)", False),
    ("conversion-I", 2, "I(j,i)~", "I(i,j)", False),
    ("per-accidens-A", 2, "I(j,j) # A(j,i)~", "I(i,j)", False),
    ("per-accidens-E", 2, "E(j,i)~ # I(i,i)", "O(i,j)", False),
    ("compose-AA", 3, "A(j,k) # A(i,j)", "A(i,k)", False),
    ("compose-EA", 3, "E(j,k) # A(i,j)", "E(i,k)", False),
    ("compose-AI", 3, "A(j,k) # I(i,j)", "I(i,k)", False),
    ("compose-EI", 3, "E(j,k) # I(i,j)", "O(i,k)", False),
    ("compose-E~A", 3, "E(k,j)~ # A(i,j)", "E(i,k)", False),
    ("compose-A~E", 3, "A(k,j)~ # E(i,j)", "E(i,k)", False),
    ("compose-E~I", 3, "E(k,j)~ # I(i,j)", "O(i,k)", False),
    ("compose-A~O", 3, "A(k,j)~ # O(i,j)", "O(i,k)", False),
    ("compose-IA~", 3, "I(j,k) # A(j,i)~", "I(i,k)", False),
    ("compose-AI~", 3, "A(j,k) # I(j,i)~", "I(i,k)", False),
    ("compose-OA~", 3, "O(j,k) # A(j,i)~", "O(i,k)", False),
    ("compose-EI~", 3, "E(j,k) # I(j,i)~", "O(i,k)", False),
    ("compose-A~E~", 3, "A(k,j)~ # E(j,i)~", "E(i,k)", False),
    ("compose-I~A~", 3, "I(k,j)~ # A(j,i)~", "I(i,k)", False),
    ("compose-E~I~", 3, "E(k,j)~ # I(j,i)~", "O(i,k)", False),
]

FAMILIES = [row[0] for row in SCHEMA]


def _instantiate(template: str, idx: dict[str, int]) -> Word:
    text = template
    for name, value in idx.items():
        text = text.replace(f"({name},", f"(a{value},").replace(f",{name})", f",a{value})")
    return parse_word(text)


@dataclass(frozen=True)
class RuleInstance:
    family: str
    indices: tuple[int, ...]
    lhs: Word
    rhs: Word
    trivial: bool

    def __str__(self):
        return f"{self.lhs} |= {self.rhs}"

    @property
    def name(self) -> str:
        return f"{self.family}{list(self.indices)}"


@lru_cache(maxsize=None)
def _rules(n: int) -> tuple[RuleInstance, ...]:
    out = []
    for family, arity, lhs, rhs, trivial in SCHEMA:
        for combo in itertools.combinations(range(1, n + 1), arity):
            idx = dict(zip("ijk", combo))
            out.append(RuleInstance(family, combo, _instantiate(lhs, idx), _instantiate(rhs, idx), trivial))
    return tuple(out)


def instantiate_rules(n: int) -> list[RuleInstance]:
    """Every schema row at every admissible index tuple over a1..an."""
    if n < 1:
        raise ValueError("n must be positive")
    return list(_rules(n))


def rule_counts(rules: Iterable[RuleInstance]) -> dict[str, int]:
    counts = Counter(r.family for r in rules)
    return {f: counts[f] for f in FAMILIES if counts[f]}


class RuleSet:
    """Non-trivial rules indexed by left-hand side for subword lookup."""

    def __init__(self, rules: Iterable[RuleInstance]):
        self.rules = [r for r in rules if not r.trivial]
        self.by_lhs: dict[tuple[Atom, ...], list[RuleInstance]] = {}
        for r in self.rules:
            self.by_lhs.setdefault(r.lhs.atoms, []).append(r)
        self.lengths = sorted({len(r.lhs) for r in self.rules})

    @classmethod
    def for_word(cls, w: Word) -> "RuleSet":
        return cls.for_n(max((v.index or 0) for v in w.variables()))

    @classmethod
    def for_n(cls, n: int) -> "RuleSet":
        return _ruleset(max(n, 1))


@lru_cache(maxsize=None)
def _ruleset(n: int) -> RuleSet:
    return RuleSet(_rules(n))


def _as_ruleset(w: Word, rules) -> RuleSet:
    if rules is None:
        return RuleSet.for_word(w)
    if isinstance(rules, RuleSet):
        return rules
    return RuleSet(rules)


Step = tuple[RuleInstance, int]


def applicable_rewrites(w: Word, rules=None) -> list[Step]:
    """All (non-trivial rule, printed position) pairs whose lhs matches exactly.

    Sorted by position, shorter redexes first at equal position.
    """
    rs = _as_ruleset(w, rules)
    atoms = w.printed_atoms
    hits = []
    for pos in range(len(atoms)):
        for length in rs.lengths:
            if pos + length > len(atoms):
                break
            # lhs stored in chain order
            key = tuple(reversed(atoms[pos : pos + length]))
            for r in rs.by_lhs.get(key, ()):
                hits.append((r, pos))
    return hits


def rewrite_step(w: Word, rule: RuleInstance, pos: int) -> Word:
    atoms = w.printed_atoms
    span = rule.lhs.printed_atoms
    if rule.trivial or atoms[pos : pos + len(span)] != span or pos < 0:
        raise InapplicableError(f"{rule.name} does not apply to {w} at position {pos}")
    return Word.printed(atoms[:pos] + rule.rhs.printed_atoms + atoms[pos + len(span) :])


@dataclass(frozen=True)
class Measure:
    length: int
    dual_count: int

    @classmethod
    def of(cls, w: Word) -> "Measure":
        return cls(len(w), sum(a.dual for a in w))

    def key(self):
        return (self.length, self.dual_count)

    def __lt__(self, other: "Measure"):
        return self.key() < other.key()

    def __gt__(self, other: "Measure"):
        return self.key() > other.key()


@dataclass(frozen=True)
class Derivation:
    """A rewriting path: ``steps`` lead from ``source`` to ``target``."""

    source: Word
    target: Word
    steps: tuple[Step, ...] = ()

    def words(self) -> list[Word]:
        out = [self.source]
        for rule, pos in self.steps:
            out.append(rewrite_step(out[-1], rule, pos))
        return out

    def check(self) -> None:
        """Replay the steps; raise unless they end at ``target``."""
        if self.words()[-1] != self.target:
            raise InapplicableError("derivation does not end at its target")

    def then(self, other: "Derivation") -> "Derivation":
        if self.target != other.source:
            raise InapplicableError("vertical composition needs matching target and source")
        return Derivation(self.source, other.target, self.steps + other.steps)

    def __len__(self):
        return len(self.steps)

    def trace(self) -> list[dict]:
        words = self.words()
        return [
            {
                "rule_family": rule.family,
                "indices": list(rule.indices),
                "position": pos,
                "before": str(before),
                "after": str(after),
            }
            for (rule, pos), before, after in zip(self.steps, words, words[1:])
        ]

    def render(self, indent: str = "  ") -> str:
        lines = [str(self.source)]
        for entry in self.trace():
            lines.append(f"{indent}|= {entry['after']}    [{entry['rule_family']}"
                         f" {entry['indices']} at {entry['position']}]")
        return "\n".join(lines)


STRATEGIES = ("leftmost", "rightmost", "random")


def normalize_word(w: Word, strategy: str = "leftmost", seed: int | None = None,
                   rules=None) -> tuple[Word, Derivation]:
    """Rewrite to a normal form, picking redexes by ``strategy``.

    ``leftmost`` takes the first printed redex (shortest first at a tie),
    ``rightmost`` the last, ``random`` draws uniformly from a seeded RNG.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    rs = _as_ruleset(w, rules)
    rng = random.Random(seed)
    current, steps = w, []
    while hits := applicable_rewrites(current, rs):
        if strategy == "leftmost":
            rule, pos = hits[0]
        elif strategy == "rightmost":
            rule, pos = hits[-1]
        else:
            rule, pos = rng.choice(hits)
        current = rewrite_step(current, rule, pos)
        steps.append((rule, pos))
    return current, Derivation(w, current, tuple(steps))


def reachable(w: Word, rules=None) -> set[Word]:
    """Every word reachable from ``w``, ``w`` included."""
    rs = _as_ruleset(w, rules)
    seen, todo = {w}, [w]
    while todo:
        cur = todo.pop()
        for rule, pos in applicable_rewrites(cur, rs):
            nxt = rewrite_step(cur, rule, pos)
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return seen


def normal_forms(w: Word, rules=None) -> set[Word]:
    rs = _as_ruleset(w, rules)
    return {x for x in reachable(w, rs) if not applicable_rewrites(x, rs)}


def joinable_up_to_renaming(w1: Word, w2: Word, rules=None) -> bool:
    """True when some reduct of ``w1`` is alpha-equivalent to some reduct of ``w2``."""
    k1 = {canonical_key(x) for x in reachable(w1, rules)}
    return any(canonical_key(x) in k1 for x in reachable(w2, rules))


# ---------------------------------------------------------------------------
# termination


@dataclass
class FamilyWitness:
    family: str
    instances: int = 0
    delta_length: set[int] = field(default_factory=set)
    delta_dual: set[int] = field(default_factory=set)
    violations: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        def one(xs):
            return sorted(xs)[0] if len(xs) == 1 else sorted(xs)

        return {
            "family": self.family,
            "instances": self.instances,
            "delta_length": one(self.delta_length),
            "delta_dual": one(self.delta_dual),
            "violations": self.violations,
        }


def termination_audit(n: int) -> list[FamilyWitness]:
    """Check that every non-trivial instance strictly lowers (length, duals)."""
    report: dict[str, FamilyWitness] = {}
    for r in instantiate_rules(n):
        if r.trivial:
            continue
        wit = report.setdefault(r.family, FamilyWitness(r.family))
        before, after = Measure.of(r.lhs), Measure.of(r.rhs)
        wit.instances += 1
        wit.delta_length.add(after.length - before.length)
        wit.delta_dual.add(after.dual_count - before.dual_count)
        if not after < before:
            wit.violations.append(r.name)
    return list(report.values())


# ---------------------------------------------------------------------------
# critical pairs


@dataclass(frozen=True)
class CriticalPair:
    peak: Word
    left_step: Step
    right_step: Step
    left_reduct: Word
    right_reduct: Word
    left_nf: Word
    right_nf: Word
    joinable: bool

    @property
    def family_key(self) -> tuple:
        """Identifies the pair up to an order-preserving renaming."""
        return (canonical_key(self.peak), self.left_step[0].family, self.left_step[1],
                self.right_step[0].family, self.right_step[1])

    def to_json(self) -> dict:
        return {
            "peak": str(self.peak),
            "left_rule": self.left_step[0].name,
            "left_position": self.left_step[1],
            "right_rule": self.right_step[0].name,
            "right_position": self.right_step[1],
            "left_nf": str(self.left_nf),
            "right_nf": str(self.right_nf),
            "joinable": self.joinable,
        }


def _span(step: Step) -> range:
    rule, pos = step
    return range(pos, pos + len(rule.lhs))


def _overlap(s1: Step, s2: Step) -> bool:
    a, b = _span(s1), _span(s2)
    return a.start < b.stop and b.start < a.stop


def _peaks(rs: RuleSet) -> set[Word]:
    """Words formed by superposing two left-hand sides that share an atom."""
    peaks = set()
    for r1, r2 in itertools.product(rs.rules, repeat=2):
        a, b = r1.lhs.printed_atoms, r2.lhs.printed_atoms
        # offset of b relative to a; overlap needs at least one shared atom
        for off in range(-(len(b) - 1), len(a)):
            lo, hi = min(0, off), max(len(a), off + len(b))
            cells: list[Atom | None] = [None] * (hi - lo)
            ok = True
            for k, atom in enumerate(a):
                cells[k - lo] = atom
            for k, atom in enumerate(b):
                slot = off + k - lo
                if cells[slot] is not None and cells[slot] != atom:
                    ok = False
                    break
                cells[slot] = atom
            if not ok:
                continue
            try:
                peaks.add(Word.printed(cells))  # type: ignore[arg-type]
            except Exception:
                continue
    return peaks


def critical_pairs(n: int, cap: int = DEFAULT_CRITICAL_PAIR_CAP) -> list[CriticalPair]:
    """All overlapping pairs of distinct one-step rewrites on minimal peaks."""
    if n < 2:
        raise ValueError("critical pairs need n >= 2")
    if n > cap:
        raise ResourceError(f"critical pairs for n={n} exceed the cap n<={cap}", "cap")
    rs = RuleSet.for_n(n)
    out = []
    for peak in sorted(_peaks(rs), key=lambda w: (len(w), str(w))):
        hits = applicable_rewrites(peak, rs)
        for s1, s2 in itertools.combinations(hits, 2):
            if not _overlap(s1, s2):
                continue
            # only peaks that are exactly the union of the two redexes
            cover = set(_span(s1)) | set(_span(s2))
            if cover != set(range(len(peak))):
                continue
            left = rewrite_step(peak, *s1)
            right = rewrite_step(peak, *s2)
            lnf, _ = normalize_word(left, rules=rs)
            rnf, _ = normalize_word(right, rules=rs)
            out.append(CriticalPair(peak, s1, s2, left, right, lnf, rnf,
                                    joinable_up_to_renaming(left, right, rs)))
    if n >= 5:
        known = {cp.family_key for cp in critical_pairs(4, cap=max(cap, 4))}
        novel = [cp for cp in out if cp.family_key not in known]
        if novel:
            raise AssertionError(f"{len(novel)} overlap families at n={n} not present at n<=4")
    return out


def overlap_families(pairs: Sequence[CriticalPair]) -> dict[tuple, list[CriticalPair]]:
    """Group critical pairs by their peak up to renaming."""
    groups: dict[tuple, list[CriticalPair]] = {}
    for cp in pairs:
        groups.setdefault(canonical_key(cp.peak), []).append(cp)
    return groups


# ---------------------------------------------------------------------------
# disjoint redexes


def disjoint_commutation(w: Word, s1: Step, s2: Step) -> tuple[Word, Word, bool]:
    """Apply two non-overlapping rewrites in both orders."""
    hits = applicable_rewrites(w, RuleSet([s1[0], s2[0]]))
    if s1 not in hits or s2 not in hits:
        raise InapplicableError("both steps must apply to the word")
    if _overlap(s1, s2):
        raise InapplicableError("the redexes overlap")

    def shifted(step: Step, after: Step) -> Step:
        rule, pos = step
        if pos > after[1]:
            pos -= len(after[0].lhs) - len(after[0].rhs)
        return rule, pos

    first = rewrite_step(rewrite_step(w, *s1), *shifted(s2, s1))
    second = rewrite_step(rewrite_step(w, *s2), *shifted(s1, s2))
    return first, second, first == second
