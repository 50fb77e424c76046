"""Majorization order and the lattice operations on sorted probability vectors."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .core import LorenzCurve, ProbVector, from_partial_sums, partial_sums
from .errors import DimensionMismatch, EmptySet


class Verdict(str, Enum):
    MAJORIZES = "Majorizes"
    MAJORIZED_BY = "MajorizedBy"
    EQUAL = "Equal"
    INCOMPARABLE = "Incomparable"


@dataclass(frozen=True)
class MajOrdering:
    """Outcome of :func:`compare`.

    ``violation_xy`` is the first 1-based index ``k`` with ``s_k(x) < s_k(y)``
    (None when x majorizes y); ``violation_yx`` is the same with roles swapped.
    """

    verdict: Verdict
    violation_xy: Optional[int] = None
    violation_yx: Optional[int] = None


def _check_dims(x, y):
    if len(x) != len(y):
        raise DimensionMismatch(f"dimensions {len(x)} and {len(y)} differ", d_x=len(x), d_y=len(y))


def _first_violation(sx, sy) -> Optional[int]:
    # the k = d condition always holds with equality for probability vectors
    for k in range(len(sx) - 1):
        if sx[k] < sy[k]:
            return k + 1
    return None


def majorizes(x: ProbVector, y: ProbVector) -> bool:
    """True iff ``s_k(x) >= s_k(y)`` for ``k = 1..d-1``."""
    _check_dims(x, y)
    return _first_violation(partial_sums(x), partial_sums(y)) is None


def compare(x: ProbVector, y: ProbVector) -> MajOrdering:
    _check_dims(x, y)
    sx, sy = partial_sums(x), partial_sums(y)
    vxy = _first_violation(sx, sy)
    vyx = _first_violation(sy, sx)
    if tuple(x) == tuple(y):
        verdict = Verdict.EQUAL
    elif vxy is None:
        verdict = Verdict.MAJORIZES
    elif vyx is None:
        verdict = Verdict.MAJORIZED_BY
    else:
        verdict = Verdict.INCOMPARABLE
    return MajOrdering(verdict, vxy, vyx)


def envelope_critical_points(heights: Sequence) -> list:
    """Critical indices of the least concave majorant of ``(k, heights[k])``.

    ``heights`` includes the ``k = 0`` node. At each step the chord with the
    largest slope wins; among equal slopes the farthest index is taken. Works
    for any ordered field (``Fraction`` or ``float``).
    """
    d = len(heights) - 1
    crit = [0]
    i = 0
    while i < d:
        best = None
        best_j = i + 1
        for j in range(i + 1, d + 1):
            slope = (heights[j] - heights[i]) / (j - i)
            if best is None or slope >= best:
                best = slope
                best_j = j
        crit.append(best_j)
        i = best_j
    return crit


def envelope_heights(heights: Sequence) -> list:
    """Heights of the least concave majorant at every integer node."""
    crit = envelope_critical_points(heights)
    out = list(heights)
    for a, b in zip(crit, crit[1:]):
        for k in range(a + 1, b):
            out[k] = heights[a] + (heights[b] - heights[a]) * (k - a) / (b - a)
    return out


def upper_envelope(raw_sums: Sequence) -> LorenzCurve:
    """Least concave majorant of the polygonal through ``(0,0), (k, raw_sums[k-1])``.

    ``raw_sums`` has length d and should end at 1; it need not be monotone
    or concave.
    """
    heights = [Fraction(0)] + [Fraction(s) for s in raw_sums]
    return LorenzCurve(tuple(enumerate(envelope_heights(heights))))


def meet(x: ProbVector, y: ProbVector) -> ProbVector:
    """Greatest lower bound: pointwise minimum of the partial sums."""
    _check_dims(x, y)
    return from_partial_sums([min(a, b) for a, b in zip(partial_sums(x), partial_sums(y))])


def join(x: ProbVector, y: ProbVector) -> ProbVector:
    """Least upper bound: concave envelope of the pointwise maximum."""
    _check_dims(x, y)
    sums = [max(a, b) for a, b in zip(partial_sums(x), partial_sums(y))]
    return upper_envelope(sums).to_vector()


@dataclass(frozen=True)
class VectorSet:
    members: tuple

    def __post_init__(self):
        members = tuple(self.members)
        object.__setattr__(self, "members", members)
        if not members:
            raise EmptySet("vector set is empty")
        d = members[0].d
        for m in members[1:]:
            if m.d != d:
                raise DimensionMismatch(f"member of dimension {m.d} in a set of dimension {d}")

    @property
    def d(self) -> int:
        return self.members[0].d

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)


def _as_set(vectors) -> VectorSet:
    if isinstance(vectors, VectorSet):
        return vectors
    return VectorSet(tuple(vectors))


def infimum(vectors: Iterable[ProbVector]) -> ProbVector:
    vs = _as_set(vectors)
    columns = zip(*(partial_sums(v) for v in vs))
    return from_partial_sums([min(col) for col in columns])


def supremum(vectors: Iterable[ProbVector]) -> ProbVector:
    vs = _as_set(vectors)
    columns = zip(*(partial_sums(v) for v in vs))
    return upper_envelope([max(col) for col in columns]).to_vector()
