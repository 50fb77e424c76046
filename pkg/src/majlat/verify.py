"""Named cross-validation batches: closed forms against brute-force ground truth."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .approx import min_eps_post, min_eps_pre, post_majorizes, pre_majorizes
from .balls import BallSpec, Norm, ball_max, ball_min, contains, d3_ball_equivalence_check
from .core import ProbVector, make_prob_vector
from .lattice import infimum, majorizes, supremum
from .oracle import (
    GridSpec,
    apply_matrix,
    ball_polytope,
    enumerate_grid,
    feasibility_witness,
    random_doubly_stochastic,
    random_prob_vector,
    vertices,
)

MINIMALITY_PROBE = Fraction(1, 10**6)


@dataclass
class VerifyResult:
    suite: str
    seed: int
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "checked": self.checked,
            "failed": len(self.failures),
            "passed": self.passed,
            "counterexamples": self.failures,
        }


def random_radius(rng: random.Random, max_den: int = 60) -> Fraction:
    den = rng.randint(2, max_den)
    return Fraction(rng.randint(1, max(1, den // 2)), den)


def _vec(v: ProbVector) -> list:
    return v.to_dict()["entries"]


def suite_ball_extremes(rng, count):
    """Vertex-set supremum/infimum against the closed forms, both norms."""
    res = []
    for _ in range(count):
        d = rng.randint(2, 5)
        x = random_prob_vector(d, rng)
        eps = random_radius(rng)
        for norm in (Norm.LINF, Norm.L1):
            verts = vertices(ball_polytope(x, eps, norm))
            got = (supremum(verts), infimum(verts))
            want = (ball_max(x, eps, norm), ball_min(x, eps, norm))
            if got != want:
                res.append({"x": _vec(x), "eps": str(eps), "norm": norm.value,
                            "vertex_sup": _vec(got[0]), "vertex_inf": _vec(got[1]),
                            "closed_max": _vec(want[0]), "closed_min": _vec(want[1])})
    return count * 2, res


def suite_feasibility(rng, count):
    """Ball-extreme verdicts against direct witness search in the ball."""
    res = []
    checked = 0
    for _ in range(count):
        d = rng.randint(2, 5)
        x, y = random_prob_vector(d, rng), random_prob_vector(d, rng)
        eps = random_radius(rng)
        for norm in (Norm.LINF, Norm.L1):
            for name, decide, center, target in (
                ("post", post_majorizes, y, x),
                ("pre", pre_majorizes, x, y),
            ):
                checked += 1
                verdict = decide(x, y, eps, norm).verdict
                w = feasibility_witness(target, BallSpec(center, eps, norm), name)
                if verdict != (w is not None):
                    res.append({"x": _vec(x), "y": _vec(y), "eps": str(eps), "norm": norm.value,
                                "relation": name, "closed_form": verdict, "oracle": w is not None})
    return checked, res


def suite_min_eps(rng, count):
    """Minimal radii admit a witness, and nothing just below them does."""
    res = []
    checked = 0
    for _ in range(count):
        d = rng.randint(2, 5)
        x, y = random_prob_vector(d, rng), random_prob_vector(d, rng)
        for norm in (Norm.LINF, Norm.L1):
            for name, find, center, target in (
                ("post", min_eps_post, y, x),
                ("pre", min_eps_pre, x, y),
            ):
                checked += 1
                e = find(x, y, norm)
                if e == 0:
                    ok = majorizes(x, y)
                else:
                    at = feasibility_witness(target, BallSpec(center, e, norm), name)
                    below = e > MINIMALITY_PROBE and feasibility_witness(
                        target, BallSpec(center, e - MINIMALITY_PROBE, norm), name
                    )
                    ok = at is not None and not below
                if not ok:
                    res.append({"x": _vec(x), "y": _vec(y), "norm": norm.value, "relation": name, "eps": str(e)})
    return checked, res


def suite_doubly_stochastic(rng, count):
    res = []
    for _ in range(count):
        d = rng.randint(1, 6)
        x = random_prob_vector(d, rng)
        B = random_doubly_stochastic(d, rng.randint(0, 8), rng)
        sums_ok = all(sum(row) == 1 for row in B) and all(sum(col) == 1 for col in zip(*B))
        z = make_prob_vector(apply_matrix(B, x.entries), sort=True)
        if not (sums_ok and majorizes(x, z)):
            res.append({"x": _vec(x), "Bx": _vec(z), "doubly_stochastic": sums_ok})
    return count, res


def suite_d3_balls(rng, count):
    res = []
    for _ in range(count):
        x = random_prob_vector(3, rng)
        eps = random_radius(rng)
        if not d3_ball_equivalence_check(x, eps):
            res.append({"x": _vec(x), "eps": str(eps)})
    return count, res


def suite_grid(rng, count):
    """Grid extremes of the ball bracket the closed forms at every resolution."""
    res = []
    checked = 0
    for _ in range(count):
        x = random_prob_vector(3, rng, max_den=12)
        eps = random_radius(rng, 12)
        ball = BallSpec(x, eps, Norm.LINF)
        hi, lo = ball_max(x, eps), ball_min(x, eps)
        for n in (12, 24, 60):
            pts = enumerate_grid(GridSpec(3, n), lambda z: contains(ball, z))
            checked += 1
            if not pts:
                continue
            if not (majorizes(hi, supremum(pts)) and majorizes(infimum(pts), lo)):
                res.append({"x": _vec(x), "eps": str(eps), "n": n})
    return checked, res


SUITES: dict = {
    "ball-extremes": suite_ball_extremes,
    "feasibility": suite_feasibility,
    "min-eps": suite_min_eps,
    "doubly-stochastic": suite_doubly_stochastic,
    "d3-balls": suite_d3_balls,
    "grid": suite_grid,
}

DEFAULT_COUNTS = {
    "ball-extremes": 200,
    "feasibility": 200,
    "min-eps": 50,
    "doubly-stochastic": 500,
    "d3-balls": 100,
    "grid": 10,
}


def verify(suite: str, seed: int, count: int = None) -> VerifyResult:
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    fn: Callable = SUITES[suite]
    rng = random.Random(seed)
    checked, failures = fn(rng, DEFAULT_COUNTS[suite] if count is None else count)
    return VerifyResult(suite, seed, checked, failures)
