"""Pinned worked examples, re-derived from scratch and checked item by item.

Each suite returns :class:`Item` records; :func:`reproduce` runs the chosen
suites and :func:`render` prints one PASS/FAIL line per item.
"""

from __future__ import annotations

import csv
import difflib
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Callable, Iterable, Optional

from .approx import Relation, compare_norms, min_eps_post, min_eps_pre, post_majorizes, pre_majorizes
from .balls import Norm, ball_max, ball_max_inf, ball_min, ball_min_inf, lp_distance
from .core import ProbVector, format_scalar, make_prob_vector
from .lattice import join, majorizes, meet

PAIRS_FILE = "tables12.json"
GOLDEN_FILE = "tables12_golden.csv"


@dataclass(frozen=True)
class Item:
    suite: str
    name: str
    passed: bool
    expected: str = ""
    actual: str = ""
    diff: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"{status} [{self.suite}] {self.name}"
        if not self.passed:
            out += f": expected {self.expected}, got {self.actual}"
        return out


def vec(*entries) -> ProbVector:
    return make_prob_vector([Fraction(str(e)) for e in entries])


def _render(value) -> str:
    if isinstance(value, ProbVector):
        return str(value)
    if isinstance(value, Fraction):
        return format_scalar(value)
    if isinstance(value, tuple):
        return "(" + ", ".join(_render(v) for v in value) + ")"
    return str(value)


def _check(suite: str, name: str, expected, compute: Callable) -> Item:
    try:
        actual = compute()
    except Exception as exc:  # a crash is a failed item, not a crashed run
        return Item(suite, name, False, _render(expected), f"error: {exc}")
    return Item(suite, name, actual == expected, _render(expected), _render(actual))


def _expect_vector(suite, name, entries, compute) -> Item:
    # expected values may not even be probability vectors; compare raw tuples
    exp = tuple(Fraction(str(e)) for e in entries)
    return _check(suite, name, exp, lambda: tuple(compute().entries))


def suite_lattice_pair() -> list:
    x, y = vec("0.7", "0.2", "0.1"), vec("0.6", "0.35", "0.05")
    return [
        _expect_vector("lattice-pair", "meet", ("0.6", "0.3", "0.1"), lambda: meet(x, y)),
        _expect_vector("lattice-pair", "join", ("0.7", "0.25", "0.05"), lambda: join(x, y)),
        _check("lattice-pair", "incomparable", (False, False), lambda: (majorizes(x, y), majorizes(y, x))),
    ]


def suite_closed_forms() -> list:
    s = "closed-forms"
    return [
        _expect_vector(s, "max (7/13,4/13,2/13,0) eps=1/10", ("83/130", "40/130", "7/130", "0"),
                       lambda: ball_max_inf(vec("7/13", "4/13", "2/13", 0), Fraction(1, 10))[0]),
        _expect_vector(s, "min (4/7,3/7,0,0) eps=1/10", ("33/70", "23/70", "1/10", "1/10"),
                       lambda: ball_min_inf(vec("4/7", "3/7", 0, 0), Fraction(1, 10))),
        _expect_vector(s, "max (1/3,1/3,1/3) eps=3/10", ("19/30", "10/30", "10/30"),
                       lambda: ball_max_inf(vec("1/3", "1/3", "1/3"), Fraction(3, 10))[0]),
        _expect_vector(s, "min (3/5,2/5,0) eps=3/10", ("7/20", "7/20", "3/10"),
                       lambda: ball_min_inf(vec("3/5", "2/5", 0), Fraction(3, 10))),
        _expect_vector(s, "min (1/2,1/4,1/4) eps=1/6", ("1/3", "1/3", "1/3"),
                       lambda: ball_min_inf(vec("1/2", "1/4", "1/4"), Fraction(1, 6))),
    ]


def suite_counterexamples() -> list:
    s = "counterexamples"
    x1, y1, e = vec("0.5", "0.3", "0.2", 0), vec("0.5", "0.3", "0.1", "0.1"), Fraction(1, 10)
    x2 = vec("0.5", "0.2", "0.15", "0.1", "0.05")
    e1, e2 = Fraction(1, 10), Fraction(1, 20)
    step = lambda: ball_max_inf(x2, e2)[0]  # noqa: E731
    return [
        _check(s, "order: x majorizes y", True, lambda: majorizes(x1, y1)),
        _expect_vector(s, "order: max of x", ("0.6", "0.3", "0.1", "0"), lambda: ball_max_inf(x1, e)[0]),
        _expect_vector(s, "order: max of y", ("0.6", "0.4", "0", "0"), lambda: ball_max_inf(y1, e)[0]),
        _check(s, "order: max(x) fails to majorize max(y)", False,
               lambda: majorizes(ball_max_inf(x1, e)[0], ball_max_inf(y1, e)[0])),
        _expect_vector(s, "semigroup: one step eps=0.05", ("0.55", "0.25", "0.15", "0.05", "0"), step),
        _expect_vector(s, "semigroup: direct eps=0.15", ("0.65", "0.35", "0", "0", "0"),
                       lambda: ball_max_inf(x2, e1 + e2)[0]),
        _expect_vector(s, "semigroup: iterated", ("0.65", "0.3", "0.05", "0", "0"),
                       lambda: ball_max_inf(step(), e1)[0]),
        _check(s, "semigroup: direct differs from iterated", True,
               lambda: ball_max_inf(x2, e1 + e2)[0] != ball_max_inf(step(), e1)[0]),
    ]


def suite_approx_examples() -> list:
    s = "approx-examples"
    xa, ya = vec("7/13", "4/13", "2/13", 0), vec("4/7", "3/7", 0, 0)
    xb, yb = vec("1/3", "1/3", "1/3"), vec("3/5", "2/5", 0)
    return [
        _check(s, "first pair: post holds", True, lambda: post_majorizes(xa, ya, Fraction(1, 10)).verdict),
        _check(s, "first pair: pre fails", False, lambda: pre_majorizes(xa, ya, Fraction(1, 10)).verdict),
        _check(s, "second pair: pre holds", True, lambda: pre_majorizes(xb, yb, Fraction(3, 10)).verdict),
        _check(s, "second pair: post fails", False, lambda: post_majorizes(xb, yb, Fraction(3, 10)).verdict),
    ]


def suite_sharp() -> list:
    s = "sharp"
    xp, yp = vec("1/3", "1/3", "1/3"), vec("1/2", "1/4", "1/4")
    xq, yq = vec("1/2", "1/4", "1/4"), vec(1, 0, 0)
    return [
        _check(s, "post minimal eps", Fraction(1, 6), lambda: min_eps_post(xp, yp, Norm.LINF)),
        _check(s, "post bound attained", True,
               lambda: min_eps_post(xp, yp, Norm.LINF) == lp_distance(xp, yp, Norm.LINF)),
        _check(s, "pre minimal eps", Fraction(1, 2), lambda: min_eps_pre(xq, yq, Norm.LINF)),
        _check(s, "pre bound attained", True,
               lambda: min_eps_pre(xq, yq, Norm.LINF) == lp_distance(xq, yq, Norm.LINF)),
    ]


def load_pairs(path: Optional[str] = None) -> list:
    if path is None:
        text = resources.files("majlat.data").joinpath(PAIRS_FILE).read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    payload = json.loads(text)
    return payload["rows"] if isinstance(payload, dict) else payload


def table_csv(rows: Iterable[dict]) -> str:
    """Minimal radii, witnesses and their comparison for each (x, y) row."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", "relation", "x", "y", "eps_inf", "eps_l1", "witness_inf", "witness_l1", "comparison"])
    for row in rows:
        x, y = make_prob_vector(row["x"]), make_prob_vector(row["y"])
        rel = Relation(row.get("relation", "post"))
        c = compare_norms(x, y)[rel]
        writer.writerow([
            row["id"], rel.value, str(x), str(y), format_scalar(c.eps_inf), format_scalar(c.eps_l1),
            str(c.witness_inf), str(c.witness_l1), c.comparison,
        ])
    return buf.getvalue()


def _table_row_items(row: dict) -> list:
    s = "tables"
    rid = row["id"]
    exp = row["expected"]
    x, y = make_prob_vector(row["x"]), make_prob_vector(row["y"])
    rel = Relation(row["relation"])
    e_inf, e_l1 = Fraction(exp["eps_inf"]), Fraction(exp["eps_l1"])
    if rel is Relation.POST:
        extreme, find = ball_min, min_eps_post
        holds = lambda w: majorizes(x, w)  # noqa: E731
        center = y
    else:
        extreme, find = ball_max, min_eps_pre
        holds = lambda w: majorizes(w, y)  # noqa: E731
        center = x
    w_inf = lambda: extreme(center, e_inf, Norm.LINF)  # noqa: E731
    w_l1 = lambda: extreme(center, e_l1, Norm.L1)  # noqa: E731
    return [
        _check(s, f"{rid} minimal eps inf", e_inf, lambda: find(x, y, Norm.LINF)),
        _check(s, f"{rid} minimal eps l1", e_l1, lambda: find(x, y, Norm.L1)),
        _expect_vector(s, f"{rid} witness inf", exp["witness_inf"], w_inf),
        _expect_vector(s, f"{rid} witness l1", exp["witness_l1"], w_l1),
        _check(s, f"{rid} relation holds at both radii", (True, True), lambda: (holds(w_inf()), holds(w_l1()))),
        _check(s, f"{rid} witness comparison", (exp["inf_majorizes_l1"], exp["l1_majorizes_inf"]),
               lambda: (majorizes(w_inf(), w_l1()), majorizes(w_l1(), w_inf()))),
    ]


def golden_item(golden_text: Optional[str] = None, rows: Optional[list] = None) -> Item:
    rows = load_pairs() if rows is None else rows
    if golden_text is None:
        golden_text = resources.files("majlat.data").joinpath(GOLDEN_FILE).read_text()
    fresh = table_csv(rows)
    if fresh == golden_text:
        return Item("tables", "golden table CSV", True)
    diff = "".join(difflib.unified_diff(golden_text.splitlines(True), fresh.splitlines(True), "golden", "computed"))
    return Item("tables", "golden table CSV", False, "golden file contents", "different output", diff)


def suite_tables(rows: Optional[list] = None) -> list:
    rows = load_pairs() if rows is None else rows
    items = []
    for row in rows:
        items.extend(_table_row_items(row))
    items.append(golden_item(rows=rows))
    return items


SUITES = {
    "lattice-pair": suite_lattice_pair,
    "closed-forms": suite_closed_forms,
    "counterexamples": suite_counterexamples,
    "approx-examples": suite_approx_examples,
    "sharp": suite_sharp,
    "tables": suite_tables,
}


def reproduce(only: Optional[Iterable[str]] = None) -> list:
    names = list(SUITES) if not only else list(only)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(SUITES)}")
    items = []
    for name in names:
        items.extend(SUITES[name]())
    return items


def render(items: list) -> str:
    lines = [item.line() for item in items]
    for item in items:
        if item.diff:
            lines.append(item.diff.rstrip("\n"))
    passed = sum(item.passed for item in items)
    lines.append(f"{passed}/{len(items)} items passed")
    return "\n".join(lines) + "\n"
