"""Brute-force ground truth used to validate the closed-form constructions.

Nothing here is clever on purpose: grid enumeration, exhaustive active-set
vertex enumeration, and random doubly stochastic matrices built from
T-transforms.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Optional, Sequence

import numpy as np

from .balls import BallSpec, Norm, parse_norm
from .core import ProbVector, partial_sums, to_scalar
from .errors import EmptyPolytope, TooLarge
from .lattice import VectorSet

MAX_GRID_DIM = 5
MAX_GRID_DEN = 240
MAX_VERTEX_DIM = 6
_CHUNK = 50_000
_FEAS_TOL = 1e-9


@dataclass(frozen=True)
class GridSpec:
    d: int
    n: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be positive")
        if self.n < self.d:
            raise ValueError(f"grid denominator n={self.n} must be at least d={self.d}")
        if self.d > MAX_GRID_DIM or self.n > MAX_GRID_DEN:
            raise TooLarge(f"grid d={self.d}, n={self.n} exceeds the enumeration guard", d=self.d, n=self.n)


def _partitions(n: int, parts: int, cap: int):
    """Non-increasing tuples of ``parts`` non-negative ints summing to n, each <= cap."""
    if parts == 1:
        if n <= cap:
            yield (n,)
        return
    for first in range(min(n, cap), -1, -1):
        if first * parts < n:
            break
        for rest in _partitions(n - first, parts - 1, first):
            yield (first,) + rest


def enumerate_grid(spec: GridSpec, predicate: Optional[Callable[[ProbVector], bool]] = None) -> list:
    """All sorted probability vectors with entries in ``{0, 1/n, ..., 1}``."""
    out = []
    for parts in _partitions(spec.n, spec.d, spec.n):
        v = ProbVector(tuple(Fraction(p, spec.n) for p in parts))
        if predicate is None or predicate(v):
            out.append(v)
    return out


@dataclass(frozen=True)
class PolytopeH:
    """``{x : A x <= b, sum(x) = 1}``."""

    d: int
    A: tuple
    b: tuple
    labels: tuple = field(default=(), compare=False)

    def contains(self, x: Sequence) -> bool:
        if sum(x, Fraction(0)) != 1:
            return False
        return all(sum((a * v for a, v in zip(row, x)), Fraction(0)) <= bi for row, bi in zip(self.A, self.b))


def _ordered_simplex_rows(d: int):
    rows, rhs, labels = [], [], []
    for i in range(d - 1):
        row = [0] * d
        row[i + 1], row[i] = 1, -1
        rows.append(tuple(row))
        rhs.append(Fraction(0))
        labels.append(f"order{i + 1}")
    row = [0] * d
    row[d - 1] = -1
    rows.append(tuple(row))
    rhs.append(Fraction(0))
    labels.append("nonneg")
    return rows, rhs, labels


def ball_polytope(center: ProbVector, eps=None, norm=Norm.LINF, extra=()) -> PolytopeH:
    """H-description of ``B^p_eps(center)`` intersected with the ordered simplex.

    ``eps=None`` gives the ordered simplex itself. The l1 ball is written with
    one inequality per sign pattern (the two constant patterns are implied by
    the sum constraint and dropped). ``extra`` appends ``(row, rhs)`` pairs.
    """
    d = center.d
    rows, rhs, labels = _ordered_simplex_rows(d)
    if eps is not None:
        eps = to_scalar(eps)
        norm = parse_norm(norm)
        c = center.entries
        if norm is Norm.LINF:
            for i in range(d):
                up = [0] * d
                up[i] = 1
                rows.append(tuple(up))
                rhs.append(c[i] + eps)
                labels.append(f"upper{i + 1}")
                down = [0] * d
                down[i] = -1
                rows.append(tuple(down))
                rhs.append(eps - c[i])
                labels.append(f"lower{i + 1}")
        elif norm is Norm.L1:
            for signs in itertools.product((1, -1), repeat=d):
                if d > 1 and abs(sum(signs)) == d:
                    continue
                rows.append(tuple(signs))
                rhs.append(eps + sum((s * v for s, v in zip(signs, c)), Fraction(0)))
                labels.append("l1" + "".join("+" if s > 0 else "-" for s in signs))
        else:
            raise TooLarge("the l2 ball is not a polytope")
    for row, bound in extra:
        rows.append(tuple(row))
        rhs.append(to_scalar(bound))
        labels.append("extra")
    return PolytopeH(d, tuple(rows), tuple(rhs), tuple(labels))


def _solve_exact(M, rhs):
    """Gauss-Jordan over the rationals; None when singular."""
    n = len(M)
    aug = [[Fraction(v) for v in row] + [Fraction(r)] for row, r in zip(M, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def _combo_chunks(m: int, k: int):
    it = itertools.combinations(range(m), k)
    while True:
        chunk = list(itertools.islice(it, _CHUNK))
        if not chunk:
            return
        yield np.array(chunk, dtype=np.intp).reshape(len(chunk), k)


def vertices(poly: PolytopeH, shard: tuple = (0, 1)) -> list:
    """Exact vertex list of a bounded polytope.

    Every choice of ``d - 1`` inequalities made tight, together with the sum
    constraint, is solved. Candidates are screened in floating point (the
    coefficient rows must be integral, so singularity shows up as a zero
    determinant) and each survivor is re-solved and re-checked exactly.
    ``shard=(index, count)`` keeps only subsets whose enumeration index is
    congruent to ``index`` modulo ``count``.
    """
    d = poly.d
    if d > MAX_VERTEX_DIM:
        raise TooLarge(f"vertex enumeration is limited to d <= {MAX_VERTEX_DIM}", d=d)
    index, count = shard
    m = len(poly.A)
    if d == 1:
        found = [ProbVector((Fraction(1),))] if poly.contains((Fraction(1),)) else []
        if not found:
            raise EmptyPolytope("polytope is empty")
        return found
    if not all(isinstance(v, int) or Fraction(v).denominator == 1 for row in poly.A for v in row):
        return _vertices_exact(poly, shard)

    A = np.array([[float(v) for v in row] for row in poly.A])
    b = np.array([float(v) for v in poly.b])
    seen = {}
    offset = 0
    for combos in _combo_chunks(m, d - 1):
        n = len(combos)
        if count > 1:
            keep = (np.arange(offset, offset + n) % count) == index
            combos = combos[keep]
        offset += n
        if len(combos) == 0:
            continue
        M = np.empty((len(combos), d, d))
        M[:, : d - 1, :] = A[combos]
        M[:, d - 1, :] = 1.0
        det = np.linalg.det(M)
        ok = np.abs(det) > 0.5
        if not ok.any():
            continue
        combos, M = combos[ok], M[ok]
        r = np.empty((len(combos), d))
        r[:, : d - 1] = b[combos]
        r[:, d - 1] = 1.0
        sol = np.linalg.solve(M, r[..., None])[..., 0]
        feasible = (sol @ A.T <= b + _FEAS_TOL).all(axis=1)
        for c, s in zip(combos[feasible], sol[feasible]):
            key = tuple(np.round(s * 1e9).astype(np.int64))
            seen.setdefault(key, c)
    out = set()
    for c in seen.values():
        rows = [poly.A[i] for i in c] + [(1,) * d]
        rhs = [poly.b[i] for i in c] + [Fraction(1)]
        x = _solve_exact(rows, rhs)
        if x is not None and poly.contains(x):
            out.add(tuple(x))
    if not out:
        raise EmptyPolytope("polytope is empty")
    return [ProbVector(v) for v in sorted(out, reverse=True)]


def _vertices_exact(poly: PolytopeH, shard: tuple) -> list:
    d = poly.d
    index, count = shard
    m = len(poly.A)
    if comb(m, d - 1) > 200_000:
        raise TooLarge("too many active sets for exact enumeration")
    out = set()
    for i, c in enumerate(itertools.combinations(range(m), d - 1)):
        if i % count != index:
            continue
        rows = [poly.A[j] for j in c] + [(1,) * d]
        rhs = [poly.b[j] for j in c] + [Fraction(1)]
        x = _solve_exact(rows, rhs)
        if x is not None and poly.contains(x):
            out.add(tuple(x))
    if not out:
        raise EmptyPolytope("polytope is empty")
    return [ProbVector(v) for v in sorted(out, reverse=True)]


def ball_vertex_set(center: ProbVector, eps, norm=Norm.LINF) -> VectorSet:
    return VectorSet(tuple(vertices(ball_polytope(center, eps, norm))))


def feasibility_witness(target: ProbVector, ball: BallSpec, direction: str) -> Optional[ProbVector]:
    """Find a member of ``ball`` comparable to ``target`` in the requested way.

    ``direction="post"``: some z in the ball with ``target`` majorizing z.
    ``direction="pre"``: some z in the ball majorizing ``target``.
    Returns None when no such point exists.
    """
    d = ball.d
    if ball.norm is Norm.L2:
        raise TooLarge("feasibility search needs a polyhedral norm")
    sums = partial_sums(target)
    extra = []
    for k in range(1, d):
        row = (1,) * k + (0,) * (d - k)
        if direction == "post":
            extra.append((row, sums[k - 1]))
        elif direction == "pre":
            extra.append((tuple(-v for v in row), -sums[k - 1]))
        else:
            raise ValueError(f"direction must be 'post' or 'pre', got {direction!r}")
    poly = ball_polytope(ball.center, ball.radius, ball.norm, extra=extra)
    try:
        verts = vertices(poly)
    except EmptyPolytope:
        return None
    return verts[0]


def random_prob_vector(d: int, rng: random.Random, max_den: int = 60) -> ProbVector:
    """Random sorted vector with common denominator at most ``max_den``."""
    n = rng.randint(max(d, 2), max_den)
    cuts = sorted(rng.randint(0, n) for _ in range(d - 1))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [n])]
    parts.sort(reverse=True)
    return ProbVector(tuple(Fraction(p, n) for p in parts))


def random_doubly_stochastic(d: int, steps: int, rng: random.Random, den: int = 12) -> list:
    """Product of ``steps`` random T-transforms ``t I + (1 - t) P_ij``."""
    B = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    if d < 2:
        return B
    for _ in range(steps):
        i, j = rng.sample(range(d), 2)
        t = Fraction(rng.randint(0, den), den)
        T = [[Fraction(int(r == c)) for c in range(d)] for r in range(d)]
        T[i][i] = T[j][j] = t
        T[i][j] = T[j][i] = 1 - t
        B = [[sum((T[r][k] * B[k][c] for k in range(d)), Fraction(0)) for c in range(d)] for r in range(d)]
    return B


def apply_matrix(B, x: Sequence) -> list:
    return [sum((bij * xj for bij, xj in zip(row, x)), Fraction(0)) for row in B]
