"""Command-line front end.

Exit codes: 0 on success, 1 on a domain error (a JSON error object is
written to stderr), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .approx import Relation, compare_norms, min_eps_post, min_eps_pre, post_majorizes, pre_majorizes
from .balls import (
    DEFAULT_SEED,
    BallSpec,
    Norm,
    ball_max,
    ball_max_inf,
    ball_min,
    contains,
    lp_distance,
    lp_sup_demo,
    parse_norm,
)
from .core import ProbVector, format_decimal, format_scalar, lorenz_curve, make_prob_vector, to_scalar
from .errors import MajlatError
from .lattice import compare, infimum, join, meet, supremum

SEED_ENV = "MAJLAT_SEED"


class BadInput(MajlatError, ValueError):
    code = "BAD_INPUT"


@dataclass(frozen=True)
class RunConfig:
    mode: str = "rational"
    seed: int = DEFAULT_SEED
    output: str = "pretty"
    precision: int = 12
    sort: bool = False


# ---------------------------------------------------------------- input


def _read_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    stripped = source.lstrip()
    if stripped.startswith("[") or stripped.startswith("{"):
        return source
    try:
        with open(source) as fh:
            return fh.read()
    except OSError as exc:
        raise BadInput(f"cannot read {source}: {exc.strerror}", path=source) from None


def _read_json(source: str):
    text = _read_text(source)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadInput(f"invalid JSON in {source}: {exc.msg}", line=exc.lineno) from None


def _parse_entries(raw: list) -> list:
    try:
        return [to_scalar(v) for v in raw]
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise BadInput(f"bad vector entry: {exc}") from None


def _vector(source: str, cfg: RunConfig) -> ProbVector:
    payload = _read_json(source)
    if isinstance(payload, dict) and "entries" not in payload:
        raise BadInput("vector object needs an 'entries' field")
    raw = payload["entries"] if isinstance(payload, dict) else payload
    if not isinstance(raw, list):
        raise BadInput("vector must be a JSON list or an object with 'entries'")
    if isinstance(payload, dict) and payload.get("d") not in (None, len(raw)):
        raise BadInput(f"declared d={payload['d']} but {len(raw)} entries given")
    return make_prob_vector(_parse_entries(raw), sort=cfg.sort, mode=cfg.mode)


def _vector_set(source: str, cfg: RunConfig) -> list:
    payload = _read_json(source)
    members = payload.get("members") if isinstance(payload, dict) else payload
    if not isinstance(members, list):
        raise BadInput("vector set must be a JSON list or an object with 'members'")
    return [_vector(json.dumps(m), cfg) for m in members]


def _scalar(text: str) -> Fraction:
    try:
        return to_scalar(text)
    except (ValueError, ZeroDivisionError):
        raise BadInput(f"not a rational number: {text!r}") from None


def _matrix(source: str):
    from .quantum import HermitianMatrix

    payload = _read_json(source)
    if not isinstance(payload, dict) or "re" not in payload:
        raise BadInput("matrix file needs 're' (and optionally 'im') 2-D arrays")
    try:
        return HermitianMatrix.from_dict(payload)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        if isinstance(exc, MajlatError):
            raise
        raise BadInput(f"bad matrix entry: {exc}") from None


# ---------------------------------------------------------------- output


def _emit(payload, cfg: RunConfig, out, pretty: Optional[str] = None, csv_text: Optional[str] = None):
    if cfg.output == "json":
        out.write(json.dumps(payload, sort_keys=False) + "\n")
    elif cfg.output == "csv":
        out.write(csv_text if csv_text is not None else _flat_csv(payload))
    else:
        out.write(pretty if pretty is not None else _pretty(payload, cfg) + "\n")


def _flat_csv(payload) -> str:
    rows = ["key,value"]
    for k, v in payload.items():
        if isinstance(v, (dict, list)):
            v = json.dumps(v)
        text = str(v)
        if "," in text or '"' in text:
            text = '"' + text.replace('"', '""') + '"'
        rows.append(f"{k},{text}")
    return "\n".join(rows) + "\n"


def _pretty_value(v, cfg: RunConfig):
    if isinstance(v, str) and "/" in v:
        try:
            return format_decimal(Fraction(v), cfg.precision)
        except ValueError:
            return v
    if isinstance(v, list):
        return "(" + ", ".join(str(_pretty_value(e, cfg)) for e in v) + ")"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_pretty_value(e, cfg)}" for k, e in v.items()) + "}"
    return v


def _pretty(payload: dict, cfg: RunConfig) -> str:
    width = max(len(k) for k in payload) if payload else 0
    return "\n".join(f"{k.ljust(width)}  {_pretty_value(v, cfg)}" for k, v in payload.items())


def _vector_csv(v: ProbVector, cfg: RunConfig) -> str:
    lines = ["index,num,den,decimal"]
    for i, e in enumerate(v.entries, 1):
        lines.append(f"{i},{e.numerator},{e.denominator},{format_decimal(e, cfg.precision)}")
    return "\n".join(lines) + "\n"


def _emit_vector(v: ProbVector, cfg: RunConfig, out, extra: Optional[dict] = None):
    payload = v.to_dict()
    if extra:
        payload.update(extra)
    _emit(payload, cfg, out, csv_text=_vector_csv(v, cfg))


def _write_lorenz(path: Optional[str], v: ProbVector, cfg: RunConfig):
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(lorenz_curve(v).to_csv(cfg.precision))


# ---------------------------------------------------------------- commands


def cmd_maj(args, cfg, out):
    op = args.op
    if op in ("inf", "sup"):
        members = _vector_set(args.set, cfg)
        result = infimum(members) if op == "inf" else supremum(members)
    else:
        x, y = _vector(args.x, cfg), _vector(args.y, cfg)
        if op == "compare":
            r = compare(x, y)
            _emit({"verdict": r.verdict.value, "violation_xy": r.violation_xy, "violation_yx": r.violation_yx},
                  cfg, out)
            return 0
        result = meet(x, y) if op == "meet" else join(x, y)
    _write_lorenz(args.lorenz_csv, result, cfg)
    _emit_vector(result, cfg, out)
    return 0


def cmd_ball(args, cfg, out):
    center = _vector(args.center, cfg)
    eps = _scalar(args.eps)
    if args.op == "demo-p2":
        demo = lp_sup_demo(center, eps)
        payload = {
            "supremum": [repr(v) for v in demo.supremum],
            "distance": repr(demo.distance),
            "radius": format_scalar(eps),
            "margin": repr(demo.margin),
            "outside_ball": demo.margin > 0,
        }
        _emit(payload, cfg, out)
        return 0
    norm = parse_norm(args.norm)
    if args.op == "check":
        query = _vector(args.query, cfg)
        ball = BallSpec(center, eps, norm)
        dist = lp_distance(query, center, norm)
        key = "distance_squared" if norm is Norm.L2 else "distance"
        _emit({"contains": contains(ball, query), key: format_scalar(dist)}, cfg, out)
        return 0
    extra = {"norm": norm.value, "eps": format_scalar(eps)}
    if args.op == "max":
        if norm is Norm.LINF:
            result, construction = ball_max_inf(center, eps)
            extra["construction"] = construction.to_dict()
        else:
            result = ball_max(center, eps, norm)
    else:
        result = ball_min(center, eps, norm)
    _emit_vector(result, cfg, out, extra)
    return 0


def cmd_approx(args, cfg, out):
    if args.op == "table":
        from .reproduce import load_pairs, table_csv

        rows = load_pairs(args.pairs)
        text = table_csv(rows)
        if cfg.output == "json":
            import csv
            import io

            out.write(json.dumps(list(csv.DictReader(io.StringIO(text)))) + "\n")
        else:
            out.write(text)
        return 0
    x, y = _vector(args.x, cfg), _vector(args.y, cfg)
    if args.op == "min-eps":
        if args.norm == "both":
            payload = {rel.value: c.to_dict() for rel, c in compare_norms(x, y).items()}
            _emit(payload, cfg, out)
            return 0
        norm = parse_norm(args.norm)
        find = min_eps_post if args.relation == "post" else min_eps_pre
        _emit({"relation": args.relation, "norm": norm.value, "minimal_eps": format_scalar(find(x, y, norm))},
              cfg, out)
        return 0
    decide = post_majorizes if args.op == "post" else pre_majorizes
    report = decide(x, y, _scalar(args.eps), args.norm, with_min_eps=args.min_eps)
    _emit(report.to_dict(), cfg, out)
    return 0


def cmd_quantum(args, cfg, out):
    from .quantum import approx_convertible, schatten_distance, spectrum

    rho = _matrix(args.rho)
    if args.op == "spectrum":
        _emit(spectrum(rho).to_dict(), cfg, out)
        return 0
    sigma = _matrix(args.sigma)
    if args.op == "distance":
        _emit({"p": args.p, "distance": repr(schatten_distance(rho, sigma, args.p))}, cfg, out)
        return 0
    report = approx_convertible(rho, sigma, _scalar(args.eps), Relation(args.direction), args.norm)
    _emit(report.to_dict(), cfg, out)
    return 0


def cmd_oracle(args, cfg, out):
    from .verify import verify

    result = verify(args.suite, cfg.seed, args.count)
    if cfg.output == "json":
        out.write(json.dumps(result.to_dict()) + "\n")
    else:
        status = "PASS" if result.passed else "FAIL"
        out.write(f"{status} {result.suite}: {result.checked} checks, {len(result.failures)} failures "
                  f"(seed {result.seed})\n")
        for failure in result.failures:
            out.write(json.dumps(failure) + "\n")
    return 0 if result.passed else 1


def cmd_reproduce(args, cfg, out):
    from .reproduce import render, reproduce

    items = reproduce(args.only)
    if cfg.output == "json":
        out.write(json.dumps([item.__dict__ for item in items]) + "\n")
    else:
        out.write(render(items))
    return 0 if all(item.passed for item in items) else 1


# ---------------------------------------------------------------- parser


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--mode", choices=["rational", "float"], default=argparse.SUPPRESS)
    p.add_argument("--seed", type=lambda s: int(s, 0), default=argparse.SUPPRESS)
    p.add_argument("--output", choices=["json", "csv", "pretty"], default=argparse.SUPPRESS)
    p.add_argument("--precision", type=int, default=argparse.SUPPRESS)
    p.add_argument("--sort", action="store_true", default=argparse.SUPPRESS,
                   help="sort unsorted input vectors instead of rejecting them")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="majlat", parents=[common],
                                     description="Majorization lattice and approximate majorization toolkit.")
    groups = parser.add_subparsers(dest="group", required=True)

    maj = groups.add_parser("maj", help="order and lattice operations").add_subparsers(dest="op", required=True)
    for op in ("compare", "meet", "join"):
        sp = maj.add_parser(op, parents=[common])
        sp.add_argument("--x", required=True, help="vector JSON file, '-' for stdin, or inline JSON")
        sp.add_argument("--y", required=True)
        if op != "compare":
            sp.add_argument("--lorenz-csv", metavar="PATH")
    for op in ("inf", "sup"):
        sp = maj.add_parser(op, parents=[common])
        sp.add_argument("--set", required=True, help="JSON list of vectors (or {'members': [...]})")
        sp.add_argument("--lorenz-csv", metavar="PATH")

    ball = groups.add_parser("ball", help="lp balls and their extremes").add_subparsers(dest="op", required=True)
    for op in ("max", "min", "check", "demo-p2"):
        sp = ball.add_parser(op, parents=[common])
        sp.add_argument("--center", required=True)
        sp.add_argument("--eps", required=True)
        if op != "demo-p2":
            sp.add_argument("--norm", choices=["inf", "l1"] + (["l2"] if op == "check" else []), default="inf")
        if op == "check":
            sp.add_argument("--query", required=True)

    approx = groups.add_parser("approx", help="approximate majorization").add_subparsers(dest="op", required=True)
    for op in ("post", "pre"):
        sp = approx.add_parser(op, parents=[common])
        sp.add_argument("--x", required=True)
        sp.add_argument("--y", required=True)
        sp.add_argument("--eps", required=True)
        sp.add_argument("--norm", choices=["inf", "l1"], default="inf")
        sp.add_argument("--min-eps", action="store_true", help="also report the minimal radius")
    sp = approx.add_parser("min-eps", parents=[common])
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)
    sp.add_argument("--relation", choices=["post", "pre"], default="post")
    sp.add_argument("--norm", choices=["inf", "l1", "both"], default="inf")
    sp = approx.add_parser("table", parents=[common])
    sp.add_argument("--pairs", default=None, help="pairs JSON file (default: the bundled table pairs)")

    quantum = groups.add_parser("quantum", help="density-matrix conversion").add_subparsers(dest="op", required=True)
    sp = quantum.add_parser("spectrum", parents=[common])
    sp.add_argument("--rho", required=True)
    sp = quantum.add_parser("distance", parents=[common])
    sp.add_argument("--rho", required=True)
    sp.add_argument("--sigma", required=True)
    sp.add_argument("--p", choices=["1", "2", "inf"], default="1")
    sp = quantum.add_parser("convert", parents=[common])
    sp.add_argument("--rho", required=True)
    sp.add_argument("--sigma", required=True)
    sp.add_argument("--eps", required=True)
    sp.add_argument("--direction", choices=["post", "pre"], default="post")
    sp.add_argument("--norm", choices=["inf", "l1"], default="inf")

    oracle = groups.add_parser("oracle", help="brute-force cross-validation").add_subparsers(dest="op", required=True)
    sp = oracle.add_parser("verify", parents=[common])
    from .verify import SUITES as VERIFY_SUITES

    sp.add_argument("--suite", required=True, choices=sorted(VERIFY_SUITES))
    sp.add_argument("--count", type=int, default=None)

    from .reproduce import SUITES as REPRO_SUITES

    sp = groups.add_parser("reproduce", parents=[common], help="check the pinned worked examples")
    sp.add_argument("--only", nargs="+", choices=list(REPRO_SUITES), default=None)
    return parser


def _config(ns: argparse.Namespace) -> RunConfig:
    seed = DEFAULT_SEED
    env = os.environ.get(SEED_ENV)
    if env:
        seed = int(env, 0)
    if hasattr(ns, "seed"):
        seed = ns.seed
    return RunConfig(
        mode=getattr(ns, "mode", "rational"),
        seed=seed,
        output=getattr(ns, "output", "pretty"),
        precision=getattr(ns, "precision", 12),
        sort=getattr(ns, "sort", False),
    )


HANDLERS = {
    "maj": cmd_maj,
    "ball": cmd_ball,
    "approx": cmd_approx,
    "quantum": cmd_quantum,
    "oracle": cmd_oracle,
    "reproduce": cmd_reproduce,
}


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        cfg = _config(ns)
    except ValueError:
        err.write(f"majlat: error: {SEED_ENV} must be an integer\n")
        return 2
    try:
        return HANDLERS[ns.group](ns, cfg, out)
    except MajlatError as exc:
        err.write(json.dumps(exc.to_dict(), default=str) + "\n")
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
