from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from majlat.core import (
    LorenzCurve,
    ProbVector,
    format_decimal,
    format_scalar,
    from_partial_sums,
    lorenz_curve,
    lorenz_eval,
    make_prob_vector,
    partial_sums,
    to_scalar,
    top,
    uniform,
)
from majlat.errors import EmptyVector, NegativeEntry, NotSorted, OutOfDomain, SumNotOne

from conftest import prob_vectors, vec


def test_scalar_from_float_uses_shortest_repr():
    assert to_scalar(0.7) == Fraction(7, 10)
    assert to_scalar("3/9") == Fraction(1, 3)
    with pytest.raises(TypeError):
        to_scalar(True)


def test_scalar_canonical_form():
    q = to_scalar("-6/4")
    assert (q.numerator, q.denominator) == (-3, 2)
    assert format_scalar(Fraction(4, 2)) == "2"
    assert format_scalar(Fraction(7, 10)) == "7/10"


def test_format_decimal_trims_zeros():
    assert format_decimal(Fraction(1, 4)) == "0.25"
    assert format_decimal(Fraction(1)) == "1.0"
    assert format_decimal(Fraction(1, 3), 4) == "0.3333"


def test_make_sorts_on_request():
    assert make_prob_vector([0.2, 0.7, 0.1], sort=True) == vec("0.7", "0.2", "0.1")


def test_make_rejects_unsorted_by_default():
    with pytest.raises(NotSorted):
        make_prob_vector([0.2, 0.7, 0.1])


def test_singleton():
    assert make_prob_vector([1]).entries == (Fraction(1),)


@pytest.mark.parametrize(
    "raw, err",
    [
        (["1/3"] * 4, SumNotOne),
        ([], EmptyVector),
        (["3/2", "-1/2"], NegativeEntry),
    ],
)
def test_make_errors(raw, err):
    with pytest.raises(err) as info:
        make_prob_vector(raw)
    assert info.value.code == err.code


def test_float_mode_renormalizes_exactly():
    v = make_prob_vector([0.1, 0.2, 0.7000000000000001], sort=True, mode="float")
    assert sum(v.entries) == 1
    with pytest.raises(SumNotOne):
        make_prob_vector([0.5, 0.4], mode="float")


def test_json_round_trip():
    v = vec("7/10", "1/5", "1/10")
    assert v.to_dict() == {"d": 3, "entries": ["7/10", "1/5", "1/10"]}
    assert ProbVector.from_json(v.to_json()) == v


@pytest.mark.parametrize(
    "x, sums",
    [
        (("0.7", "0.2", "0.1"), ("0.7", "0.9", "1")),
        (("1/4",) * 4, ("1/4", "1/2", "3/4", "1")),
        (("4/7", "3/7", 0, 0), ("4/7", "1", "1", "1")),
    ],
)
def test_partial_sums(x, sums):
    assert partial_sums(vec(*x)) == [Fraction(s) for s in sums]


@pytest.mark.parametrize(
    "x, heights",
    [
        (("0.7", "0.2", "0.1"), (0, "0.7", "0.9", 1)),
        ((1, 0, 0), (0, 1, 1, 1)),
        (("1/3", "1/3", "1/3"), (0, "1/3", "2/3", 1)),
    ],
)
def test_lorenz_curve(x, heights):
    curve = lorenz_curve(vec(*x))
    assert curve.points == tuple((k, Fraction(h)) for k, h in enumerate(heights))
    assert curve.is_concave()


def test_lorenz_eval():
    curve = lorenz_curve(vec("0.7", "0.2", "0.1"))
    assert lorenz_eval(curve, Fraction(3, 2)) == Fraction(4, 5)
    assert curve(0) == 0
    assert curve(3) == 1
    with pytest.raises(OutOfDomain):
        curve(Fraction(31, 10))
    with pytest.raises(OutOfDomain):
        curve(-1)


def test_lorenz_csv_columns():
    text = lorenz_curve(vec("0.7", "0.2", "0.1")).to_csv(precision=3)
    lines = text.splitlines()
    assert lines[0] == "k,height_num,height_den,height_decimal"
    assert lines[2] == "1,7,10,0.7"


def test_top_and_uniform():
    assert top(3) == vec(1, 0, 0)
    assert uniform(4) == vec(*["1/4"] * 4)


@given(prob_vectors())
def test_lorenz_round_trip(x):
    assert lorenz_curve(x).to_vector() == x
    assert from_partial_sums(partial_sums(x)) == x


@given(prob_vectors())
def test_partial_sums_order_independent(x):
    backwards = [1 - sum(x.entries[k:], Fraction(0)) for k in range(1, x.d + 1)]
    assert partial_sums(x) == backwards


@given(st.lists(st.integers(0, 20), min_size=2, max_size=6).filter(lambda v: sum(v) > 0))
def test_concavity_iff_sorted(raw):
    total = sum(raw)
    entries = [Fraction(v, total) for v in raw]
    heights = [Fraction(0)]
    for e in entries:
        heights.append(heights[-1] + e)
    curve = LorenzCurve(tuple(enumerate(heights)))
    is_sorted = all(a >= b for a, b in zip(entries, entries[1:]))
    assert curve.is_concave() == is_sorted
