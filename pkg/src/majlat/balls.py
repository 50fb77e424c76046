"""lp-norm balls inside the ordered simplex and their majorization extremes.

The l-infinity ball is a complete sublattice, so its maximum and minimum
exist and have closed forms (:func:`ball_max_inf`, :func:`ball_min_inf`).
For l1 the extremes are the "steepest" and "flattest" approximations. For
1 < p < infinity the extremes do not exist; :func:`lp_sup_demo` exhibits the
supremum lying outside the ball.
"""

from __future__ import annotations

import decimal
import enum
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import ProbVector, format_scalar, from_partial_sums, partial_sums, to_scalar
from .errors import (
    BallTouchesBoundary,
    DimensionMismatch,
    InvalidRadius,
    NotAdmissible,
    UnsupportedNorm,
    UnsupportedP,
    WrongDimension,
)
from .lattice import envelope_heights, upper_envelope

DEFAULT_SEED = 0x6D616A


class Norm(str, enum.Enum):
    L1 = "l1"
    L2 = "l2"
    LINF = "inf"


_NORM_ALIASES = {
    "1": Norm.L1, "l1": Norm.L1,
    "2": Norm.L2, "l2": Norm.L2,
    "inf": Norm.LINF, "linf": Norm.LINF, "l_inf": Norm.LINF, "infinity": Norm.LINF, "∞": Norm.LINF,
}


def parse_norm(norm) -> Norm:
    if isinstance(norm, Norm):
        return norm
    if isinstance(norm, (int, float)) and not isinstance(norm, bool):
        if norm == math.inf:
            return Norm.LINF
        key = str(int(norm)) if float(norm).is_integer() else str(norm)
    else:
        key = str(norm).strip().lower()
    try:
        return _NORM_ALIASES[key]
    except KeyError:
        raise UnsupportedNorm(f"unsupported norm {norm!r}", norm=str(norm)) from None


def _check_dims(x, y):
    if len(x) != len(y):
        raise DimensionMismatch(f"dimensions {len(x)} and {len(y)} differ", d_x=len(x), d_y=len(y))


def _check_radius(eps) -> Fraction:
    eps = to_scalar(eps)
    if eps <= 0:
        raise InvalidRadius(f"radius must be positive, got {format_scalar(eps)}", eps=format_scalar(eps))
    return eps


def lp_distance(x, y, p) -> Fraction:
    """Exact lp distance for p in {1, inf}; for p = 2 the *squared* distance."""
    _check_dims(x, y)
    norm = parse_norm(p)
    diffs = [abs(a - b) for a, b in zip(x, y)]
    if norm is Norm.L1:
        return sum(diffs, Fraction(0))
    if norm is Norm.LINF:
        return max(diffs)
    return sum((t * t for t in diffs), Fraction(0))


@dataclass(frozen=True)
class BallSpec:
    center: ProbVector
    radius: Fraction
    norm: Norm = Norm.LINF

    def __post_init__(self):
        object.__setattr__(self, "radius", _check_radius(self.radius))
        object.__setattr__(self, "norm", parse_norm(self.norm))

    @property
    def d(self) -> int:
        return self.center.d


def contains(ball: BallSpec, x: ProbVector) -> bool:
    dist = lp_distance(ball.center, x, ball.norm)
    if ball.norm is Norm.L2:
        return dist <= ball.radius * ball.radius
    return dist <= ball.radius


@dataclass(frozen=True)
class EpsShift:
    """The balanced shift ``(eps,..,eps,[0],-eps,..,-eps)``."""

    nu_eps: tuple

    @classmethod
    def build(cls, d: int, eps) -> "EpsShift":
        eps = to_scalar(eps)
        half = d // 2
        middle = (Fraction(0),) if d % 2 else ()
        return cls((eps,) * half + middle + (-eps,) * half)


def nu_eps(d: int, eps) -> tuple:
    return EpsShift.build(d, eps).nu_eps


@dataclass(frozen=True)
class MaxConstruction:
    """Audit record for :func:`ball_max_inf` (indices are 1-based)."""

    k1: int
    k0: int
    k2: int
    delta: Fraction
    nu: tuple

    def to_dict(self) -> dict:
        return {
            "k1": self.k1,
            "k0": self.k0,
            "k2": self.k2,
            "delta": format_scalar(self.delta),
            "nu": [format_scalar(v) for v in self.nu],
        }


def ball_max_inf(center: ProbVector, eps) -> tuple:
    """Maximum of the l-infinity ball, with its construction record.

    The shift raises the first ``k0 - 1`` entries by eps, entry ``k0`` by
    ``eps - delta``, lowers entries up to ``k2`` by eps and empties the rest.
    """
    eps = _check_radius(eps)
    x = center.entries
    d = len(x)
    s = [Fraction(0)] + partial_sums(x)
    k1 = max([k for k in range(1, d + 1) if x[k - 1] >= eps] + [1])

    def f(k):
        if k >= k1:
            return 1 - s[k]
        return 1 - s[k1] + (k1 - k) * eps

    # f decreases and k*eps increases, and f(d) = 0, so the set is non-empty
    k0 = min(k for k in range(1, d + 1) if f(k) <= k * eps)
    k2 = max(k0, k1)
    delta = k0 * eps - f(k0)
    nu = (
        (eps,) * (k0 - 1)
        + (eps - delta,)
        + (-eps,) * (k2 - k0)
        + tuple(-x[i] for i in range(k2, d))
    )
    result = ProbVector(tuple(a + b for a, b in zip(x, nu)))
    return result, MaxConstruction(k1=k1, k0=k0, k2=k2, delta=delta, nu=nu)


def ball_min_inf(center: ProbVector, eps) -> ProbVector:
    """Minimum of the l-infinity ball: envelope of the sums of ``x - nu_eps``."""
    eps = _check_radius(eps)
    shifted = [a - b for a, b in zip(center, nu_eps(center.d, eps))]
    return upper_envelope(partial_sums(shifted)).to_vector()


def is_admissible(center: ProbVector, eps) -> bool:
    """Strictly decreasing interior center whose gaps (to 1 and 0 included) are >= 2 eps."""
    eps = _check_radius(eps)
    padded = (Fraction(1),) + center.entries + (Fraction(0),)
    return all(padded[i] - padded[i + 1] >= 2 * eps and padded[i] > padded[i + 1] for i in range(len(padded) - 1))


def ball_extremes_admissible(center: ProbVector, eps) -> tuple:
    """``(center + nu_eps, center - nu_eps)`` for an admissible pair."""
    eps = _check_radius(eps)
    if not is_admissible(center, eps):
        raise NotAdmissible(f"({center}, {format_scalar(eps)}) is not an admissible pair")
    nu = nu_eps(center.d, eps)
    hi = ProbVector(tuple(a + b for a, b in zip(center, nu)))
    lo = ProbVector(tuple(a - b for a, b in zip(center, nu)))
    return hi, lo


def _l1_max_closed(center: ProbVector, eps: Fraction) -> ProbVector:
    # move eps/2 onto the top entry, taking it from the bottom of the vector
    sums = partial_sums(center)
    d = center.d
    lifted = [min(Fraction(1), sums[k] + eps / 2) for k in range(d - 1)] + [Fraction(1)]
    return from_partial_sums(lifted)


def _l1_min_closed(center: ProbVector, eps: Fraction) -> ProbVector:
    # lower every interior partial sum by eps/2, then restore concavity
    sums = partial_sums(center)
    d = center.d
    lowered = [sums[k] - eps / 2 for k in range(d - 1)] + [Fraction(1)]
    return upper_envelope(lowered).to_vector()


def _vertex_extreme(center: ProbVector, eps: Fraction, norm: Norm, which: str) -> ProbVector:
    from .lattice import infimum, supremum
    from .oracle import ball_polytope, vertices

    verts = vertices(ball_polytope(center, eps, norm))
    return supremum(verts) if which == "max" else infimum(verts)


def ball_l1_max(center: ProbVector, eps, method: str = "closed") -> ProbVector:
    """Maximum (steepest approximation) of the l1 ball.

    ``method="vertex"`` computes the lattice supremum of the exact vertex set
    instead (d <= 6).
    """
    eps = _check_radius(eps)
    if method == "vertex":
        return _vertex_extreme(center, eps, Norm.L1, "max")
    return _l1_max_closed(center, eps)


def ball_l1_min(center: ProbVector, eps, method: str = "closed") -> ProbVector:
    """Minimum (flattest approximation) of the l1 ball."""
    eps = _check_radius(eps)
    if method == "vertex":
        return _vertex_extreme(center, eps, Norm.L1, "min")
    return _l1_min_closed(center, eps)


def ball_max(center: ProbVector, eps, norm=Norm.LINF) -> ProbVector:
    norm = parse_norm(norm)
    if norm is Norm.LINF:
        return ball_max_inf(center, eps)[0]
    if norm is Norm.L1:
        return ball_l1_max(center, eps)
    raise UnsupportedNorm("the l2 ball has no maximum in general; see lp_sup_demo", norm=norm.value)


def ball_min(center: ProbVector, eps, norm=Norm.LINF) -> ProbVector:
    norm = parse_norm(norm)
    if norm is Norm.LINF:
        return ball_min_inf(center, eps)
    if norm is Norm.L1:
        return ball_l1_min(center, eps)
    raise UnsupportedNorm("the l2 ball has no minimum in general; see lp_sup_demo", norm=norm.value)


def d3_ball_equivalence_check(center: ProbVector, eps) -> bool:
    """For d = 3 the l1 ball of radius eps is the l-infinity ball of radius eps/2."""
    eps = _check_radius(eps)
    if center.d != 3:
        raise WrongDimension(f"expected d=3, got d={center.d}", d=center.d)
    half = eps / 2
    return (
        ball_l1_max(center, eps) == ball_max_inf(center, half)[0]
        and ball_l1_min(center, eps) == ball_min_inf(center, half)
    )


@dataclass(frozen=True)
class SupDemo:
    """Supremum of an interior l2 ball, in floating point."""

    supremum: tuple
    distance: float
    radius: float

    @property
    def margin(self) -> float:
        return self.distance - self.radius


def lp_sup_demo(center: ProbVector, eps, p=2, digits: int = 50) -> SupDemo:
    """Supremum of the interior l2 ball and its distance from the center.

    Each first-k partial sum over the ball peaks at
    ``s_k(x) + eps * sqrt(k (d - k) / d)``. The resulting supremum sits at
    distance strictly greater than eps once d >= 3. Arithmetic is decimal at
    ``digits`` significant digits; this is the only inexact ball operation.
    """
    eps = _check_radius(eps)
    if parse_norm(p) is not Norm.L2:
        raise UnsupportedP(f"only p=2 is implemented, got p={p!r}", p=str(p))
    if not is_admissible(center, eps):
        raise BallTouchesBoundary("ball meets the boundary of the ordered simplex")
    d = center.d
    with decimal.localcontext() as ctx:
        ctx.prec = digits

        def dec(q: Fraction) -> decimal.Decimal:
            return decimal.Decimal(q.numerator) / decimal.Decimal(q.denominator)

        e = dec(eps)
        sums = [decimal.Decimal(0)] + [dec(s) for s in partial_sums(center)]
        sup = [sums[k] + e * (decimal.Decimal(k * (d - k)) / d).sqrt() for k in range(d + 1)]
        env = envelope_heights(sup)
        vec = [env[k] - env[k - 1] for k in range(1, d + 1)]
        dist = sum((v - dec(c)) ** 2 for v, c in zip(vec, center)).sqrt()
        return SupDemo(tuple(float(v) for v in vec), float(dist), float(eps))


def sample_ball(center: ProbVector, eps, rng: Optional[random.Random] = None, grid: int = 256,
                max_tries: int = 100_000, norm=Norm.LINF) -> ProbVector:
    """Draw an exact rational member of an lp ball.

    Sample the box ``[x_i - eps, x_i + eps]`` clipped to ``[0, 1]`` on a
    ``grid``-point lattice, shift onto the sum-one hyperplane, and reject
    unless the result is sorted, non-negative and still inside the ball.
    The box contains every lp ball of the same radius, so any norm works.
    """
    eps = _check_radius(eps)
    norm = parse_norm(norm)
    bound = eps * eps if norm is Norm.L2 else eps
    rng = rng if rng is not None else random.Random(DEFAULT_SEED)
    x = center.entries
    d = len(x)
    lows = [max(v - eps, Fraction(0)) for v in x]
    highs = [min(v + eps, Fraction(1)) for v in x]
    for _ in range(max_tries):
        z = [lo + (hi - lo) * Fraction(rng.randint(0, grid), grid) for lo, hi in zip(lows, highs)]
        shift = (sum(z, Fraction(0)) - 1) / d
        z = [v - shift for v in z]
        if any(v < 0 for v in z):
            continue
        if any(z[i] < z[i + 1] for i in range(d - 1)):
            continue
        if lp_distance(z, x, norm) > bound:
            continue
        return ProbVector(tuple(z))
    raise RuntimeError(f"no ball sample accepted after {max_tries} tries")


__all__ = [
    "DEFAULT_SEED", "Norm", "parse_norm", "lp_distance", "BallSpec", "contains", "EpsShift", "nu_eps",
    "MaxConstruction", "ball_max_inf", "ball_min_inf", "is_admissible", "ball_extremes_admissible",
    "ball_l1_max", "ball_l1_min", "ball_max", "ball_min", "d3_ball_equivalence_check", "SupDemo",
    "lp_sup_demo", "sample_ball",
]
