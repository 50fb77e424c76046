import random
from fractions import Fraction

import pytest

from majlat.approx import min_eps_post, min_eps_pre
from majlat.balls import BallSpec, Norm, ball_l1_max, ball_l1_min, ball_max_inf, ball_min_inf, contains, lp_distance
from majlat.core import make_prob_vector, top
from majlat.errors import EmptyPolytope, TooLarge
from majlat.lattice import infimum, majorizes, supremum
from majlat.oracle import (
    GridSpec,
    apply_matrix,
    ball_polytope,
    ball_vertex_set,
    enumerate_grid,
    feasibility_witness,
    random_doubly_stochastic,
    random_prob_vector,
    vertices,
)

from conftest import vec


def test_grid_three_thirds():
    assert enumerate_grid(GridSpec(3, 3)) == [vec(1, 0, 0), vec("2/3", "1/3", 0), vec("1/3", "1/3", "1/3")]


def test_grid_two_halves():
    assert enumerate_grid(GridSpec(2, 2)) == [vec(1, 0), vec("1/2", "1/2")]


def test_grid_with_ball_predicate():
    ball = BallSpec(vec("0.7", "0.2", "0.1"), Fraction(1, 10))
    pts = enumerate_grid(GridSpec(3, 10), lambda z: contains(ball, z))
    assert vec("0.6", "0.3", "0.1") in pts
    assert all(contains(ball, z) for z in pts)


def test_grid_counts_match_partitions():
    # partitions of 12 into at most 4 parts
    assert len(enumerate_grid(GridSpec(4, 12))) == 34


def test_grid_guards():
    with pytest.raises(TooLarge):
        GridSpec(6, 10)
    with pytest.raises(TooLarge):
        GridSpec(3, 241)


def test_ordered_simplex_vertices():
    got = vertices(ball_polytope(vec("1/3", "1/3", "1/3")))
    assert set(got) == {top(3), vec("1/2", "1/2", 0), vec("1/3", "1/3", "1/3")}


@pytest.mark.parametrize("d", [2, 4, 5])
def test_ordered_simplex_vertices_are_flat_tops(d):
    got = set(vertices(ball_polytope(top(d))))
    assert got == {make_prob_vector([Fraction(1, k)] * k + [0] * (d - k)) for k in range(1, d + 1)}


def test_vertices_guard():
    with pytest.raises(TooLarge):
        vertices(ball_polytope(top(7)))


def test_vertices_satisfy_constraints():
    poly = ball_polytope(vec("0.5", "0.3", "0.15", "0.05"), Fraction(1, 10))
    for v in vertices(poly):
        assert poly.contains(v.entries)
        tight = sum(1 for row, b in zip(poly.A, poly.b) if sum(a * x for a, x in zip(row, v.entries)) == b)
        assert tight >= len(v) - 1


def test_empty_polytope():
    x = vec("0.5", "0.3", "0.2")
    poly = ball_polytope(x, Fraction(1, 100), extra=[((1, 0, 0), Fraction(1, 10))])
    with pytest.raises(EmptyPolytope):
        vertices(poly)


def test_admissible_vertex_extremes():
    x, eps = vec("0.5", "0.3", "0.15", "0.05"), Fraction(1, 50)
    s = ball_vertex_set(x, eps)
    assert supremum(s.members) == ball_max_inf(x, eps)[0]
    assert infimum(s.members) == ball_min_inf(x, eps)


def test_l1_vertex_extremes_first_row():
    y, eps = vec("4/9", "5/18", "5/18", 0), Fraction(2, 5)
    verts = vertices(ball_polytope(y, eps, Norm.L1))
    assert infimum(verts) == ball_l1_min(y, eps) == vec("4/15", "4/15", "4/15", "1/5")
    assert supremum(verts) == ball_l1_max(y, eps)


def test_shards_partition_the_vertex_set():
    poly = ball_polytope(vec("0.4", "0.3", "0.2", "0.1"), Fraction(1, 8), Norm.L1)
    whole = set(vertices(poly))
    parts = set()
    for i in range(3):
        try:
            parts |= set(vertices(poly, shard=(i, 3)))
        except EmptyPolytope:
            pass
    assert parts == whole


def test_feasibility_post_example():
    x, y, eps = vec("7/13", "4/13", "2/13", 0), vec("4/7", "3/7", 0, 0), Fraction(1, 10)
    w = feasibility_witness(x, BallSpec(y, eps), "post")
    assert w is not None and majorizes(x, w) and contains(BallSpec(y, eps), w)


def test_feasibility_below_minimal_radius():
    x, y = vec("1/3", "1/3", "1/3"), vec("1/2", "1/4", "1/4")
    e = min_eps_post(x, y)
    assert feasibility_witness(x, BallSpec(y, e), "post") is not None
    assert feasibility_witness(x, BallSpec(y, e - Fraction(1, 1000)), "post") is None


def test_feasibility_at_distance():
    # at radius ||x - y|| the ball around y contains x, which serves for both relations
    rng = random.Random(2)
    for _ in range(20):
        x, y = random_prob_vector(3, rng, 20), random_prob_vector(3, rng, 20)
        eps = lp_distance(x, y, "inf")
        if eps == 0:
            continue
        post = feasibility_witness(x, BallSpec(y, eps), "post")
        pre = feasibility_witness(y, BallSpec(x, eps), "pre")
        assert post is not None and majorizes(x, post)
        assert pre is not None and majorizes(pre, y)
        assert min_eps_post(x, y) <= eps and min_eps_pre(x, y) <= eps


def test_feasibility_rejects_bad_direction():
    with pytest.raises(ValueError):
        feasibility_witness(vec("0.5", "0.5"), BallSpec(vec("0.5", "0.5"), Fraction(1, 10)), "sideways")


def test_doubly_stochastic_identity():
    B = random_doubly_stochastic(4, 0, random.Random(0))
    assert B == [[int(i == j) for j in range(4)] for i in range(4)]


def test_doubly_stochastic_images_are_majorized():
    rng = random.Random(3)
    for _ in range(100):
        d = rng.randint(1, 6)
        B = random_doubly_stochastic(d, rng.randint(1, 6), rng)
        assert all(sum(r) == 1 for r in B) and all(sum(c) == 1 for c in zip(*B))
        assert all(v >= 0 for r in B for v in r)
        x = random_prob_vector(d, rng)
        assert majorizes(x, make_prob_vector(apply_matrix(B, x.entries), sort=True))


def test_random_prob_vector_is_sorted_and_normalized():
    rng = random.Random(4)
    for _ in range(50):
        v = random_prob_vector(rng.randint(1, 6), rng, 30)
        assert sum(v.entries) == 1
        assert all(e.denominator <= 30 for e in v.entries)
