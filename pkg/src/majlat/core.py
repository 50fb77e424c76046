"""Exact scalars, sorted probability vectors and Lorenz curves.

All numbers are :class:`fractions.Fraction`. Floats only enter through the
``mode="float"`` ingest path, which checks the sum against a tolerance and
then renormalizes exactly.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import EmptyVector, NegativeEntry, NotSorted, OutOfDomain, SumNotOne

Scalar = Fraction
Number = Union[Fraction, int, float, str]

FLOAT_SUM_TOL = 1e-12


def to_scalar(value: Number) -> Fraction:
    """Convert ``value`` to an exact fraction.

    Floats go through their shortest decimal repr, so ``0.7`` becomes
    ``7/10`` rather than the nearest binary double.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} to a scalar")


def format_scalar(value: Fraction) -> str:
    """Canonical ``"p/q"`` rendering (``"p"`` when the denominator is 1)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_decimal(value: Fraction, precision: int = 12) -> str:
    value = Fraction(value)
    text = f"{float(value):.{precision}f}"
    # strip trailing zeros but keep at least one digit after the point
    if "." in text:
        text = text.rstrip("0")
        if text.endswith("."):
            text += "0"
    return text


@dataclass(frozen=True)
class ProbVector:
    """A probability vector with non-increasing exact entries."""

    entries: tuple

    def __post_init__(self):
        entries = tuple(to_scalar(v) for v in self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise EmptyVector("probability vector must have at least one entry")
        for i, v in enumerate(entries):
            if v < 0:
                raise NegativeEntry(f"entry {i} is negative", index=i, value=format_scalar(v))
        total = sum(entries, Fraction(0))
        if total != 1:
            raise SumNotOne(f"entries sum to {format_scalar(total)}", sum=format_scalar(total))
        for i in range(len(entries) - 1):
            if entries[i] < entries[i + 1]:
                raise NotSorted(f"entries {i} and {i + 1} increase", index=i)

    @property
    def d(self) -> int:
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __str__(self):
        return "(" + ", ".join(format_scalar(v) for v in self.entries) + ")"

    def to_floats(self) -> list:
        return [float(v) for v in self.entries]

    def to_dict(self) -> dict:
        return {"d": self.d, "entries": [format_scalar(v) for v in self.entries]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, payload, sort: bool = False, mode: str = "rational") -> "ProbVector":
        if isinstance(payload, dict):
            raw = payload["entries"]
            d = payload.get("d")
            if d is not None and d != len(raw):
                raise EmptyVector(f"declared d={d} but {len(raw)} entries given")
        else:
            raw = payload
        return make_prob_vector(raw, sort=sort, mode=mode)

    @classmethod
    def from_json(cls, text: str, sort: bool = False, mode: str = "rational") -> "ProbVector":
        return cls.from_dict(json.loads(text), sort=sort, mode=mode)


def make_prob_vector(raw: Iterable[Number], sort: bool = False, mode: str = "rational") -> ProbVector:
    """Build a :class:`ProbVector` from raw entries.

    In ``"rational"`` mode the entries must sum to exactly 1. In ``"float"``
    mode the sum only has to be within ``1e-12`` of 1, and the vector is then
    divided by its exact sum.
    """
    values = [to_scalar(v) for v in raw]
    if not values:
        raise EmptyVector("probability vector must have at least one entry")
    for i, v in enumerate(values):
        if v < 0:
            raise NegativeEntry(f"entry {i} is negative", index=i, value=format_scalar(v))
    total = sum(values, Fraction(0))
    if mode == "float":
        if abs(float(total) - 1.0) > FLOAT_SUM_TOL:
            raise SumNotOne(f"entries sum to {float(total)!r}", sum=format_scalar(total))
        values = [v / total for v in values]
    elif mode != "rational":
        raise ValueError(f"unknown mode {mode!r}")
    elif total != 1:
        raise SumNotOne(f"entries sum to {format_scalar(total)}", sum=format_scalar(total))
    if sort:
        values.sort(reverse=True)
    return ProbVector(tuple(values))


def uniform(d: int) -> ProbVector:
    """The bottom element ``(1/d, ..., 1/d)``."""
    return ProbVector(tuple(Fraction(1, d) for _ in range(d)))


def top(d: int) -> ProbVector:
    """The top element ``(1, 0, ..., 0)``."""
    return ProbVector((Fraction(1),) + tuple(Fraction(0) for _ in range(d - 1)))


def partial_sums(x: Sequence) -> list:
    """Cumulative sums ``(s_1, ..., s_d)``."""
    out = []
    acc = Fraction(0)
    for v in x:
        acc += v
        out.append(acc)
    return out


def from_partial_sums(sums: Sequence) -> ProbVector:
    """Inverse of :func:`partial_sums` (sums without the leading zero)."""
    prev = Fraction(0)
    entries = []
    for s in sums:
        entries.append(s - prev)
        prev = s
    return ProbVector(tuple(entries))


@dataclass(frozen=True)
class LorenzCurve:
    """Polygonal curve through ``(k, s_k)`` for ``k = 0..d``."""

    points: tuple

    def __post_init__(self):
        pts = tuple((int(k), to_scalar(h)) for k, h in self.points)
        object.__setattr__(self, "points", pts)

    @property
    def d(self) -> int:
        return len(self.points) - 1

    @property
    def heights(self) -> list:
        return [h for _, h in self.points]

    def slopes(self) -> list:
        hs = self.heights
        return [hs[k] - hs[k - 1] for k in range(1, len(hs))]

    def is_concave(self) -> bool:
        sl = self.slopes()
        return all(sl[i] >= sl[i + 1] for i in range(len(sl) - 1))

    def to_vector(self) -> ProbVector:
        return ProbVector(tuple(self.slopes()))

    def __call__(self, w) -> Fraction:
        return lorenz_eval(self, w)

    def to_csv(self, precision: int = 12) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k", "height_num", "height_den", "height_decimal"])
        for k, h in self.points:
            writer.writerow([k, h.numerator, h.denominator, format_decimal(h, precision)])
        return buf.getvalue()


def lorenz_curve(x: ProbVector) -> LorenzCurve:
    sums = [Fraction(0)] + partial_sums(x)
    return LorenzCurve(tuple(enumerate(sums)))


def lorenz_eval(curve: LorenzCurve, w: Number) -> Fraction:
    """Evaluate the curve at ``w`` in ``[0, d]`` by linear interpolation."""
    w = to_scalar(w)
    d = curve.d
    if w < 0 or w > d:
        raise OutOfDomain(f"w={format_scalar(w)} outside [0, {d}]", w=format_scalar(w), d=d)
    hs = curve.heights
    k = int(w)  # floor, w >= 0
    if k == d:
        return hs[d]
    frac = w - k
    return hs[k] + frac * (hs[k + 1] - hs[k])
