import random

from hypothesis import strategies as st

from syllogistic.core import Atom, Mood, Proposition, TermVariable, Word, var


def random_word(rng: random.Random, n_max: int = 6, length_max: int = 8,
                canonical: bool = True) -> Word:
    """A composable word walking over a1..an with random moods and duals."""
    n = rng.randint(1, n_max)
    pool = [var(k) for k in range(1, n + 1)] if canonical else [TermVariable(c) for c in "pqrstu"[:n]]
    length = rng.randint(1, length_max)
    left = rng.choice(pool)
    atoms = []
    for _ in range(length):
        right = rng.choice(pool)
        dual = rng.random() < 0.5
        subj, pred = (right, left) if dual else (left, right)
        atoms.append(Atom(Proposition(rng.choice(list(Mood)), subj, pred), dual))
        left = right
    return Word(tuple(atoms))


def chain_words(n: int, length: int) -> list[Word]:
    """Every composable word of the given length over canonical a1..an."""
    pool = [var(k) for k in range(1, n + 1)]
    atoms = [Atom(Proposition(m, x, y), d) for m in Mood for x in pool for y in pool for d in (False, True)]
    words = [(a,) for a in atoms]
    for _ in range(length - 1):
        words = [w + (a,) for w in words for a in atoms if a.left == w[-1].right]
    return [Word(w) for w in words]


@st.composite
def atoms(draw, names=("a1", "a2", "a3", "a4")):
    mood = draw(st.sampled_from(list(Mood)))
    s = draw(st.sampled_from(names))
    p = draw(st.sampled_from(names))
    return Atom(Proposition(mood, TermVariable(s), TermVariable(p)), draw(st.booleans()))


@st.composite
def words(draw, max_len=6, names=("a1", "a2", "a3", "a4", "a5")):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    n = rng.randint(1, len(names))
    pool = [TermVariable(x) for x in names[:n]]
    left = rng.choice(pool)
    out = []
    for _ in range(draw(st.integers(1, max_len))):
        right = rng.choice(pool)
        dual = rng.random() < 0.5
        subj, pred = (right, left) if dual else (left, right)
        out.append(Atom(Proposition(rng.choice(list(Mood)), subj, pred), dual))
        left = right
    return Word(tuple(out))


# lines recorded by test_acceptance.py, printed once at the end of the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
