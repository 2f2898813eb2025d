"""Propositions, atoms, words and chain diagrams.

A *word* is a composable sequence of atoms.  Words are stored in chain order
(the leftmost atom is the leftmost segment of the drawn chain) while their
text form lists the atoms the other way round, first premise first::

    >>> w = parse_word("A(m,p) # A(s,m)")
    >>> [str(a) for a in w.atoms]
    ['A(s,m)', 'A(m,p)']
    >>> render_chain(chain_of_word(w))
    's -> m -> p'
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

from .errors import ChainError, CompositionError, ParseError

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_CANONICAL = re.compile(r"a([1-9][0-9]*)\Z")


@dataclass(frozen=True)
class TermVariable:
    name: str

    def __post_init__(self):
        if not _IDENT.match(self.name):
            raise ValueError(f"not a term-variable name: {self.name!r}")

    @property
    def index(self) -> int | None:
        m = _CANONICAL.match(self.name)
        return int(m.group(1)) if m else None

    @property
    def is_canonical(self) -> bool:
        return self.index is not None

    def sort_key(self):
        idx = self.index
        return (0, idx, "") if idx is not None else (1, 0, self.name)

    def __str__(self):
        return self.name


def var(spec: Union[str, int, TermVariable]) -> TermVariable:
    """Coerce ``'s'``, ``3`` (meaning ``a3``) or a variable to a TermVariable."""
    if isinstance(spec, TermVariable):
        return spec
    if isinstance(spec, int):
        if spec < 1:
            raise ValueError("canonical indices start at 1")
        return TermVariable(f"a{spec}")
    return TermVariable(spec)


class Mood(str, enum.Enum):
    A = "A"
    E = "E"
    I = "I"  # noqa: E741
    O = "O"  # noqa: E741

    def __str__(self):
        return self.value

    @property
    def bullets(self) -> int:
        return _BULLETS[self]

    @property
    def universal(self) -> bool:
        return self in (Mood.A, Mood.E)


_BULLETS = {Mood.A: 0, Mood.E: 1, Mood.I: 1, Mood.O: 2}


@dataclass(frozen=True)
class Proposition:
    mood: Mood
    subject: TermVariable
    predicate: TermVariable

    @classmethod
    def of(cls, mood, subject, predicate) -> "Proposition":
        return cls(Mood(str(mood)), var(subject), var(predicate))

    @property
    def reflexive(self) -> bool:
        return self.subject == self.predicate

    def __str__(self):
        return f"{self.mood}({self.subject},{self.predicate})"


@dataclass(frozen=True)
class Atom:
    """A proposition drawn either as is or mirrored (``dual``)."""

    prop: Proposition
    dual: bool = False

    @classmethod
    def of(cls, mood, subject, predicate, dual=False) -> "Atom":
        return cls(Proposition.of(mood, subject, predicate), dual)

    @property
    def mood(self) -> Mood:
        return self.prop.mood

    @property
    def left(self) -> TermVariable:
        return self.prop.predicate if self.dual else self.prop.subject

    @property
    def right(self) -> TermVariable:
        return self.prop.subject if self.dual else self.prop.predicate

    @property
    def bullets(self) -> int:
        return self.prop.mood.bullets

    def variables(self) -> set[TermVariable]:
        return {self.prop.subject, self.prop.predicate}

    def __str__(self):
        return f"{self.prop}~" if self.dual else str(self.prop)


def dualize(a: Atom) -> Atom:
    return Atom(a.prop, not a.dual)


@dataclass(frozen=True)
class Word:
    """A non-empty composable sequence of atoms in chain order."""

    atoms: tuple[Atom, ...]

    def __post_init__(self):
        atoms = tuple(self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not atoms:
            raise ValueError("a word has at least one atom")
        for k in range(len(atoms) - 1):
            if atoms[k].right != atoms[k + 1].left:
                # report the junction in printed order
                raise CompositionError(len(atoms) - 1 - k, atoms[k + 1], atoms[k])

    @classmethod
    def printed(cls, atoms: Iterable[Atom]) -> "Word":
        """Build a word from atoms listed in printed (first premise first) order."""
        return cls(tuple(reversed(tuple(atoms))))

    @property
    def printed_atoms(self) -> tuple[Atom, ...]:
        return tuple(reversed(self.atoms))

    @property
    def left(self) -> TermVariable:
        return self.atoms[0].left

    @property
    def right(self) -> TermVariable:
        return self.atoms[-1].right

    @property
    def bullets(self) -> int:
        return sum(a.bullets for a in self.atoms)

    def variables(self) -> set[TermVariable]:
        out: set[TermVariable] = set()
        for a in self.atoms:
            out |= a.variables()
        return out

    def chain_variables(self) -> list[TermVariable]:
        """Distinct variables in order of first appearance along the chain."""
        seen: dict[TermVariable, None] = {}
        for a in self.atoms:
            seen.setdefault(a.left)
            seen.setdefault(a.right)
        return list(seen)

    def __len__(self):
        return len(self.atoms)

    def __iter__(self) -> Iterator[Atom]:
        return iter(self.atoms)

    def __str__(self):
        return " # ".join(str(a) for a in self.printed_atoms)


# ---------------------------------------------------------------------------
# chain diagrams


@dataclass(frozen=True)
class Bullet:
    def __str__(self):
        return "*"


BULLET = Bullet()

Node = Union[TermVariable, Bullet]


@dataclass(frozen=True)
class ChainDiagram:
    """A path of nodes; ``forward[k]`` is True when edge k points right.

    Edge k joins positions k and k+1.  Variable occurrences are separate nodes
    even when they carry the same name.
    """

    nodes: tuple[Node, ...]
    forward: tuple[bool, ...]

    def __post_init__(self):
        nodes, fwd = tuple(self.nodes), tuple(self.forward)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "forward", fwd)
        if len(nodes) < 2 or len(fwd) != len(nodes) - 1:
            raise ChainError("a chain needs n >= 2 nodes and n - 1 edges")
        if isinstance(nodes[0], Bullet) or isinstance(nodes[-1], Bullet):
            raise ChainError("chain endpoints must be term-variables")
        for k, node in enumerate(nodes):
            if isinstance(node, Bullet) and fwd[k - 1] == fwd[k]:
                # one edge in and one out: not a source and not a sink
                raise ChainError(f"bullet at position {k} is neither source nor sink")

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(k, k + 1) if f else (k + 1, k) for k, f in enumerate(self.forward)]

    @property
    def left(self) -> TermVariable:
        return self.nodes[0]  # type: ignore[return-value]

    @property
    def right(self) -> TermVariable:
        return self.nodes[-1]  # type: ignore[return-value]

    @cached_property
    def bullets(self) -> int:
        return sum(isinstance(n, Bullet) for n in self.nodes)

    def __str__(self):
        return render_chain(self)


def mirror(c: ChainDiagram) -> ChainDiagram:
    return ChainDiagram(c.nodes[::-1], tuple(not f for f in c.forward[::-1]))


_R, _L = True, False
# shapes for dual=False, as (number of bullets, edge directions)
_SHAPES = {
    Mood.A: (0, (_R,)),
    Mood.E: (1, (_R, _L)),
    Mood.I: (1, (_L, _R)),
    Mood.O: (2, (_L, _R, _L)),
}


def chain_of_atom(a: Atom) -> ChainDiagram:
    nbul, fwd = _SHAPES[a.mood]
    c = ChainDiagram((a.prop.subject,) + (BULLET,) * nbul + (a.prop.predicate,), fwd)
    return mirror(c) if a.dual else c


def concat(c1: ChainDiagram, c2: ChainDiagram) -> ChainDiagram:
    """Glue two chains along the shared endpoint occurrence."""
    if c1.right != c2.left:
        raise ChainError(f"cannot glue {c1.right} to {c2.left}")
    return ChainDiagram(c1.nodes + c2.nodes[1:], c1.forward + c2.forward)


def chain_of_word(w: Word | Sequence[Atom]) -> ChainDiagram:
    atoms = w.atoms if isinstance(w, Word) else tuple(w)
    if not isinstance(w, Word):
        Word(atoms)  # junction check
    nodes: list[Node] = [atoms[0].left]
    fwd: list[bool] = []
    for a in atoms:
        c = chain_of_atom(a)
        nodes.extend(c.nodes[1:])
        fwd.extend(c.forward)
    return ChainDiagram(tuple(nodes), tuple(fwd))


def render_chain(c: ChainDiagram) -> str:
    parts = [str(c.nodes[0])]
    for f, node in zip(c.forward, c.nodes[1:]):
        parts.append("->" if f else "<-")
        parts.append(str(node))
    return " ".join(parts)


def parse_chain(text: str) -> ChainDiagram:
    """Inverse of :func:`render_chain`."""
    tokens = text.split()
    if len(tokens) < 3 or len(tokens) % 2 == 0:
        raise ParseError("chain must alternate nodes and arrows", 0, text)
    nodes: list[Node] = []
    fwd: list[bool] = []
    for k, tok in enumerate(tokens):
        if k % 2:
            if tok not in ("->", "<-"):
                raise ParseError(f"expected arrow, got {tok!r}", text.find(tok), text)
            fwd.append(tok == "->")
        elif tok == "*":
            nodes.append(BULLET)
        elif _IDENT.match(tok):
            nodes.append(TermVariable(tok))
        else:
            raise ParseError(f"bad node {tok!r}", text.find(tok), text)
    return ChainDiagram(tuple(nodes), tuple(fwd))


# ---------------------------------------------------------------------------
# text syntax


_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<sym>\|=|[(),#~]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, int]] = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
            kind = "ident" if m.group("ident") else "sym"
            start = m.start(kind)
            self.tokens.append((m.group(kind), start))
            pos = m.end()
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def offset(self) -> int:
        return self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)

    def expect(self, what: str) -> str:
        tok = self.peek()
        if tok != what:
            found = "end of input" if tok is None else repr(tok)
            raise ParseError(f"expected {what!r}, found {found}", self.offset(), self.text)
        self.i += 1
        return tok

    def ident(self) -> str:
        tok = self.peek()
        if tok is None or not _IDENT.match(tok):
            found = "end of input" if tok is None else repr(tok)
            raise ParseError(f"expected a term-variable, found {found}", self.offset(), self.text)
        self.i += 1
        return tok

    def prop(self) -> Proposition:
        tok = self.peek()
        if tok not in ("A", "E", "I", "O"):
            found = "end of input" if tok is None else repr(tok)
            raise ParseError(f"expected a mood A/E/I/O, found {found}", self.offset(), self.text)
        self.i += 1
        self.expect("(")
        s = self.ident()
        self.expect(",")
        p = self.ident()
        self.expect(")")
        return Proposition(Mood(tok), TermVariable(s), TermVariable(p))

    def atom(self) -> Atom:
        p = self.prop()
        if self.peek() == "~":
            self.i += 1
            return Atom(p, True)
        return Atom(p)

    def printed_atoms(self) -> list[Atom]:
        atoms = [self.atom()]
        while self.peek() == "#":
            self.i += 1
            atoms.append(self.atom())
        return atoms

    def end(self):
        if self.peek() is not None:
            raise ParseError(f"unexpected {self.peek()!r}", self.offset(), self.text)


def parse_proposition(text: str) -> Proposition:
    p = _Parser(text)
    out = p.prop()
    p.end()
    return out


def parse_atom(text: str) -> Atom:
    p = _Parser(text)
    out = p.atom()
    p.end()
    return out


def parse_word(text: str) -> Word:
    p = _Parser(text)
    atoms = p.printed_atoms()
    p.end()
    return Word.printed(atoms)


def parse_syllogism(text: str) -> tuple[Word, Proposition]:
    p = _Parser(text)
    atoms = p.printed_atoms()
    p.expect("|=")
    concl = p.prop()
    p.end()
    return Word.printed(atoms), concl


def print_word(w: Word) -> str:
    return str(w)


# ---------------------------------------------------------------------------
# renaming


def canonical_key(w: Word) -> tuple:
    """Word shape with occurring variables renamed 1..m in their sort order.

    Two words share a key exactly when an order-preserving bijection of their
    occurring variables maps one onto the other.
    """
    rank = {v: k for k, v in enumerate(sorted(w.variables(), key=TermVariable.sort_key), 1)}
    return tuple(
        (a.mood.value, rank[a.prop.subject], rank[a.prop.predicate], a.dual) for a in w.atoms
    )


def alpha_equivalent(w1: Word, w2: Word) -> bool:
    return canonical_key(w1) == canonical_key(w2)


def rename(w: Word, mapping: dict[TermVariable, TermVariable]) -> Word:
    def r(v):
        return mapping.get(v, v)

    return Word(
        tuple(
            Atom(Proposition(a.mood, r(a.prop.subject), r(a.prop.predicate)), a.dual)
            for a in w.atoms
        )
    )


def canonicalize(w: Word) -> tuple[Word, dict[TermVariable, TermVariable]]:
    """Rename variables to a1..an by first appearance along the chain."""
    mapping = {v: var(k) for k, v in enumerate(w.chain_variables(), 1)}
    return rename(w, mapping), mapping
