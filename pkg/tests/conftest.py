import numpy as np
import pytest
from hypothesis import strategies as st

from nativeness.lexicon import Lexicon
from nativeness.models import ScoreVector, uniform

ALPHABET = "abcdef"

words_st = st.lists(
    st.text(alphabet=ALPHABET, min_size=1, max_size=6), min_size=1, max_size=20, unique=True
)


@st.composite
def lexicon_states(draw, n=None, min_len=1):
    """A small lexicon with random scores and random positive distributions."""
    order = draw(st.sampled_from([1, 2, 3])) if n is None else n
    words = draw(
        st.lists(st.text(alphabet=ALPHABET, min_size=max(min_len, order), max_size=6),
                 min_size=1, max_size=12, unique=True)
    )
    lex = Lexicon(words)
    size = lex.ngram_table(order).size
    unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
    w = np.array(draw(st.lists(unit, min_size=len(lex), max_size=len(lex))))
    pos = st.floats(min_value=0.01, max_value=1.0)
    raw_n = np.array(draw(st.lists(pos, min_size=size, max_size=size)))
    raw_t = np.array(draw(st.lists(pos, min_size=size, max_size=size)))
    base = uniform(lex, order)
    native = type(base)(base.table, raw_n / raw_n.sum())
    translit = type(base)(base.table, raw_t / raw_t.sum())
    return lex, ScoreVector.from_scores(w), native, translit


@pytest.fixture
def two_word():
    """Lexicon {"ab" (w=0.9), "cd" (w=0.1)} with uniform unigram models."""
    lex = Lexicon(["ab", "cd"])
    w = ScoreVector.from_scores([0.9, 0.1])
    return lex, w, uniform(lex, 1), uniform(lex, 1)


def random_state(rng, n_words=12, n=2, alphabet=ALPHABET, max_len=6):
    words = set()
    while len(words) < n_words:
        length = int(rng.integers(n, max_len + 1))
        words.add("".join(rng.choice(list(alphabet), size=length)))
    lex = Lexicon(sorted(words))
    table = lex.ngram_table(n)
    w = ScoreVector.from_scores(rng.uniform(0.02, 0.98, size=len(lex)))
    base = uniform(lex, n)
    p = rng.uniform(0.05, 1.0, size=table.size)
    q = rng.uniform(0.05, 1.0, size=table.size)
    native = type(base)(table, p / p.sum())
    translit = type(base)(table, q / q.sum())
    return lex, w, native, translit


# acceptance reporting: one line per criterion in the terminal summary

_ACCEPTANCE = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = {}


@pytest.fixture
def record(request):
    """record(criterion, check, status, detail="") with status True/False/None (skipped)."""
    results = request.config.stash[_ACCEPTANCE]

    def _record(criterion, check, status, detail=""):
        results.setdefault(criterion, {})[check] = (status, detail)

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(_ACCEPTANCE, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(results):
        checks = results[criterion]
        states = [s for s, _ in checks.values()]
        if any(s is False for s in states):
            verdict = "FAIL"
        elif all(s is None for s in states):
            verdict = "SKIP"
        else:
            verdict = "PASS"
        notes = "; ".join(
            f"{name}={'ok' if s else 'skip' if s is None else 'FAILED'}{' (' + d + ')' if d else ''}"
            for name, (s, d) in checks.items()
        )
        terminalreporter.write_line(f"criterion {criterion}: {verdict} - {notes}")
