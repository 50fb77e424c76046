"""Approximate majorization: eps-post / eps-pre predicates and minimal radii.

``x`` eps-post-majorizes ``y`` when some ``y'`` within eps of ``y`` is
majorized by ``x``; eps-pre-majorization asks for some ``x'`` within eps of
``x`` that majorizes ``y``. For l1 and l-infinity both reduce to a single
comparison against a ball extreme.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .balls import Norm, ball_max, ball_min, lp_distance, parse_norm
from .core import ProbVector, format_scalar, partial_sums, to_scalar
from .errors import DimensionMismatch, NegativeEps, UnsupportedNorm
from .lattice import majorizes

log = logging.getLogger(__name__)

BISECT_MAX_DEN = 10**9


class Relation(str, Enum):
    POST = "post"
    PRE = "pre"


@dataclass(frozen=True)
class ApproxReport:
    relation: Relation
    norm: Norm
    eps: Fraction
    verdict: bool
    witness: Optional[ProbVector] = None
    minimal_eps: Optional[Fraction] = None
    extreme: Optional[ProbVector] = None

    def to_dict(self) -> dict:
        out = {
            "relation": self.relation.value,
            "norm": self.norm.value,
            "eps": format_scalar(self.eps),
            "verdict": self.verdict,
            "witness": None if self.witness is None else self.witness.to_dict()["entries"],
            "extreme": None if self.extreme is None else self.extreme.to_dict()["entries"],
        }
        if self.minimal_eps is not None:
            out["minimal_eps"] = format_scalar(self.minimal_eps)
        return out


def _prepare(x, y, eps, norm):
    if len(x) != len(y):
        raise DimensionMismatch(f"dimensions {len(x)} and {len(y)} differ", d_x=len(x), d_y=len(y))
    norm = parse_norm(norm)
    if norm is Norm.L2:
        raise UnsupportedNorm("approximate majorization is only decided for l1 and l-infinity", norm="l2")
    if eps is None:
        return None, norm
    eps = to_scalar(eps)
    if eps < 0:
        raise NegativeEps(f"eps must be non-negative, got {format_scalar(eps)}", eps=format_scalar(eps))
    return eps, norm


def _post_verdict(x, y, eps, norm):
    if eps == 0:
        return majorizes(x, y), y
    lo = ball_min(y, eps, norm)
    return majorizes(x, lo), lo


def _pre_verdict(x, y, eps, norm):
    if eps == 0:
        return majorizes(x, y), x
    hi = ball_max(x, eps, norm)
    return majorizes(hi, y), hi


def post_majorizes(x: ProbVector, y: ProbVector, eps, norm="inf", with_min_eps: bool = False) -> ApproxReport:
    """Does x majorize the minimum of the eps-ball around y?"""
    eps, norm = _prepare(x, y, eps, norm)
    verdict, extreme = _post_verdict(x, y, eps, norm)
    minimal = min_eps_post(x, y, norm) if with_min_eps else None
    return ApproxReport(Relation.POST, norm, eps, verdict, extreme if verdict else None, minimal, extreme)


def pre_majorizes(x: ProbVector, y: ProbVector, eps, norm="inf", with_min_eps: bool = False) -> ApproxReport:
    """Does the maximum of the eps-ball around x majorize y?"""
    eps, norm = _prepare(x, y, eps, norm)
    verdict, extreme = _pre_verdict(x, y, eps, norm)
    minimal = min_eps_pre(x, y, norm) if with_min_eps else None
    return ApproxReport(Relation.PRE, norm, eps, verdict, extreme if verdict else None, minimal, extreme)


def _post_candidates(x, y, norm):
    # s_k of the ball minimum is the concave envelope of s_i(y) - m_i eps,
    # i.e. a max of affine functions of eps; each crossing with s_k(x) is a
    # candidate radius.
    d = len(y)
    S = [Fraction(0)] + partial_sums(y)
    if norm is Norm.LINF:
        m = [Fraction(min(i, d - i)) for i in range(d + 1)]
    else:
        m = [Fraction(0)] + [Fraction(1, 2)] * (d - 1) + [Fraction(0)]
    t = [Fraction(0)] + partial_sums(x)
    out = set()
    for k in range(1, d):
        for i in range(0, k + 1):
            for j in range(k, d + 1):
                if i == j:
                    a, b = S[k], m[k]
                else:
                    a = ((j - k) * S[i] + (k - i) * S[j]) / (j - i)
                    b = ((j - k) * m[i] + (k - i) * m[j]) / (j - i)
                if b > 0:
                    out.add((a - t[k]) / b)
    return out


def _pre_candidates(x, y, norm):
    # s_k of the ball maximum is s_k(x) + min(k eps, sum_{i>k} min(eps, x_i))
    # for l-infinity and min(1, s_k(x) + eps/2) for l1.
    d = len(x)
    sx, sy = partial_sums(x), partial_sums(y)
    out = set()
    for k in range(1, d):
        need = sy[k - 1] - sx[k - 1]
        if need <= 0:
            continue
        if norm is Norm.L1:
            out.add(2 * need)
            continue
        out.add(need / k)
        tail = sorted(x.entries[k:])
        small = Fraction(0)
        for j, v in enumerate(tail):
            out.add((need - small) / (len(tail) - j))
            small += v
    return out


def _search(verdict, candidates, upper):
    cands = sorted(c for c in candidates if 0 < c < upper)
    cands.append(upper)
    lo, hi = 0, len(cands) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if verdict(cands[mid]):
            hi = mid
        else:
            lo = mid + 1
    found = cands[lo]
    below = cands[lo - 1] if lo > 0 else Fraction(0)
    # a candidate set that missed the true minimum would show up here
    if verdict((below + found) / 2):
        log.warning("breakpoint search missed the minimal radius; falling back to bisection")
        return _bisect(verdict, below, found)
    return found


def _bisect(verdict, lo, hi):
    while hi - lo > Fraction(1, BISECT_MAX_DEN):
        mid = (lo + hi) / 2
        if verdict(mid):
            hi = mid
        else:
            lo = mid
    return Fraction(hi).limit_denominator(BISECT_MAX_DEN)


def min_eps_post(x: ProbVector, y: ProbVector, norm="inf") -> Fraction:
    """Least eps for which x eps-post-majorizes y (0 when x majorizes y)."""
    _, norm = _prepare(x, y, None, norm)
    if majorizes(x, y):
        return Fraction(0)
    # y' = x is always admissible, so the distance bounds the answer
    upper = lp_distance(x, y, norm)
    return _search(lambda e: _post_verdict(x, y, e, norm)[0], _post_candidates(x, y, norm), upper)


def min_eps_pre(x: ProbVector, y: ProbVector, norm="inf") -> Fraction:
    """Least eps for which x eps-pre-majorizes y (0 when x majorizes y)."""
    _, norm = _prepare(x, y, None, norm)
    if majorizes(x, y):
        return Fraction(0)
    upper = lp_distance(x, y, norm)
    return _search(lambda e: _pre_verdict(x, y, e, norm)[0], _pre_candidates(x, y, norm), upper)


def witness_relation(a: ProbVector, b: ProbVector) -> str:
    """How the l-infinity witness ``a`` relates to the l1 witness ``b``."""
    if a == b:
        return "equal"
    ab, ba = majorizes(a, b), majorizes(b, a)
    if ab:
        return "inf_majorizes_l1"
    if ba:
        return "l1_majorizes_inf"
    return "incomparable"


@dataclass(frozen=True)
class NormComparison:
    relation: Relation
    eps_inf: Fraction
    eps_l1: Fraction
    witness_inf: ProbVector
    witness_l1: ProbVector
    comparison: str

    def to_dict(self) -> dict:
        return {
            "relation": self.relation.value,
            "eps_inf": format_scalar(self.eps_inf),
            "eps_l1": format_scalar(self.eps_l1),
            "witness_inf": self.witness_inf.to_dict()["entries"],
            "witness_l1": self.witness_l1.to_dict()["entries"],
            "comparison": self.comparison,
        }


def compare_norms(x: ProbVector, y: ProbVector) -> dict:
    """Minimal radii and witnesses for both relations under l-infinity and l1."""
    _prepare(x, y, None, "inf")
    out = {}
    for rel, find, verdict in (
        (Relation.POST, min_eps_post, _post_verdict),
        (Relation.PRE, min_eps_pre, _pre_verdict),
    ):
        e_inf = find(x, y, Norm.LINF)
        e_l1 = find(x, y, Norm.L1)
        w_inf = verdict(x, y, e_inf, Norm.LINF)[1]
        w_l1 = verdict(x, y, e_l1, Norm.L1)[1]
        out[rel] = NormComparison(rel, e_inf, e_l1, w_inf, w_l1, witness_relation(w_inf, w_l1))
    return out
