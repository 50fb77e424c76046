import sys
import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from majlat.balls import DEFAULT_SEED
from majlat.core import ProbVector, make_prob_vector


def vec(*entries) -> ProbVector:
    """Build a sorted vector from decimal or "p/q" strings, ints or Fractions."""
    return make_prob_vector([e if isinstance(e, Fraction) else Fraction(str(e)) for e in entries])


@st.composite
def prob_vectors(draw, d=None, min_d=1, max_d=5, max_den=60):
    d = draw(st.integers(min_d, max_d)) if d is None else d
    n = draw(st.integers(max(d, 2), max_den))
    cuts = sorted(draw(st.lists(st.integers(0, n), min_size=d - 1, max_size=d - 1)))
    parts = sorted((b - a for a, b in zip([0] + cuts, cuts + [n])), reverse=True)
    return ProbVector(tuple(Fraction(p, n) for p in parts))


@st.composite
def vector_pairs(draw, min_d=1, max_d=5, max_den=60):
    d = draw(st.integers(min_d, max_d))
    return draw(prob_vectors(d=d, max_den=max_den)), draw(prob_vectors(d=d, max_den=max_den))


def radii(max_den=60):
    return st.integers(2, max_den).flatmap(lambda n: st.integers(1, n // 2 or 1).map(lambda k: Fraction(k, n)))


@pytest.fixture
def rng():
    return random.Random(DEFAULT_SEED)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
