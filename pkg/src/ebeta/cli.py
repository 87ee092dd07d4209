"""Command line front end: JSON reports on stdout, SVG for the level figure.

Exit codes: 0 success, 1 a verification check failed, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import random
import sys
from datetime import datetime, timezone
from enum import Enum
from fractions import Fraction

from . import __version__
from .codings import (
    CodingParseError,
    EPCoding,
    count_all_codings,
    count_codings,
    enumerate_codings,
    eval_coding,
    parse_coding,
)
from .core import (
    Beta,
    Interval,
    IntervalSet,
    ValueBelowThree,
    decide_membership,
    delta_level,
    format_rational,
    gamma,
    holes,
    level_offsets,
    parse_beta,
    parse_rational,
)
from .embedding import (
    CandidateMap,
    InvalidMu,
    VerificationFailure,
    check_asymmetry,
    classify_generating,
    not_totally_self_similar_witness,
    overlap_identity_report,
)
from .figure import MAX_LEVEL, render_levels
from .spectrum import spectrum_search
from .symbolic import (
    Enclosure,
    char_poly,
    count_words,
    dimension,
    matrix_A,
    matrix_B,
    measure_upper_bound,
    spectral_radius,
)

MAX_SPECTRUM_LEN = 14
VERIFY_SAMPLE = 200
VERIFY_SEED = 20240601


class UsageError(Exception):
    pass


def to_json(obj):
    """Rationals become "p/q", enclosures {"value", "err"}, intervals [lo, hi]."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, Enclosure):
        return obj.to_json()
    if isinstance(obj, Interval):
        return [format_rational(obj.lo), format_rational(obj.hi)]
    if isinstance(obj, IntervalSet):
        return [to_json(p) for p in obj.parts]
    if isinstance(obj, (EPCoding, Beta)):
        return str(obj)
    if isinstance(obj, Enum):
        return obj.value
    if dataclasses.is_dataclass(obj):
        return {f.name: to_json(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_json(v) for v in items]
    return str(obj)


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _beta(text: str) -> Beta:
    try:
        return parse_beta(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _coding(text: str) -> EPCoding:
    try:
        return parse_coding(text)
    except (CodingParseError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


# -- commands ----------------------------------------------------------------


def cmd_dims(args) -> tuple[dict, str | None]:
    tol = args.tol if args.tol is not None else Fraction(1, 10**12)
    if tol <= 0:
        raise UsageError("--tol must be positive")
    out = {}
    for name, m in (("A", matrix_A()), ("B", matrix_B())):
        p = char_poly(m)
        r = spectral_radius(p, tol)
        out[name] = {
            "char_poly": str(p),
            "radius": r,
            "radius_bracket": [r.lo, r.hi],
            "dimension": dimension(r, args.beta),
        }
    res = {
        "matrices": out,
        "s": out["A"]["dimension"],
        "t": out["B"]["dimension"],
        "measure_upper_bound": {str(n): measure_upper_bound(args.beta, n, tol) for n in (1, 5, 10)},
    }
    return res, None


def cmd_codings(args) -> tuple[dict, str | None]:
    c = args.coding
    res: dict = {"coding": c}
    if args.action == "count":
        cnt = count_codings(c)
        res["count"] = str(cnt)
        res["m"] = cnt.m
        exact = count_all_codings(c, args.beta)
        res["exact_count"] = exact
    elif args.action == "enumerate":
        depth = args.depth if args.depth is not None else len(c.preperiod) + 2 * len(c.period) + 4
        if depth < 1:
            raise UsageError("--depth must be >= 1")
        prefixes = enumerate_codings(c, depth, args.beta)
        res["depth"] = depth
        res["prefixes"] = sorted(prefixes)
        res["n_prefixes"] = len(prefixes)
    else:
        if args.beta is None:
            raise UsageError("eval needs --beta")
        res["value"] = eval_coding(args.beta, c)
    return res, None


def cmd_geometry(args) -> tuple[dict, str | None]:
    n = args.level
    if not 0 <= n <= MAX_LEVEL:
        raise UsageError(f"--level must be in 0..{MAX_LEVEL}")
    if args.action == "levels":
        return {"level": n, "intervals": delta_level(args.beta, n)}, None
    if args.action == "holes":
        if n < 1:
            raise UsageError("holes need --level >= 1")
        return {"level": n, "holes": holes(args.beta, n)}, None
    svg = render_levels(args.beta, n)
    res = {"level": n, "rows": n + 1, "overlaps": svg.count('class="bar overlap"')}
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(svg)
        res["out"] = args.out
    else:
        res["svg"] = svg
    return res, None


def cmd_embed(args) -> tuple[dict, str | None]:
    if args.depth is not None and args.depth < 1:
        raise UsageError("--depth must be >= 1")
    try:
        g = CandidateMap(args.mu, args.b)
    except InvalidMu as exc:
        raise UsageError(str(exc)) from None
    result = classify_generating(args.beta, g, args.depth or 8)
    return {"mu": g.mu, "b": g.b, "classification": result}, None


def cmd_spectrum(args) -> tuple[dict, str | None]:
    if not 1 <= args.max_len <= MAX_SPECTRUM_LEN:
        raise UsageError(f"--max-len must be in 1..{MAX_SPECTRUM_LEN}")
    r = spectrum_search(args.beta, args.max_len)
    return {
        "max_len": args.max_len,
        "min_value": r.min_value,
        "witness": str(r.witness),
        "witness_length": r.length,
        "per_length": list(r.per_length),
    }, None


def _check_overlap(beta: Beta, levels: int) -> dict:
    rep = overlap_identity_report(beta, levels)
    first = None
    if not all(rep.contained):
        first = f"contained[{rep.contained.index(False)}]"
    elif not rep.monotone:
        first = "monotone"
    elif not rep.within_bound:
        first = f"gaps[{levels}]"
    return {
        "pass": rep.ok,
        "failed_assertion": first,
        "contained": rep.contained,
        "gaps": rep.gaps,
        "same_level_gaps": rep.same_level_gaps,
        "bound": rep.bound,
        "monotone": rep.monotone,
        "within_bound": rep.within_bound,
    }


def _check_asymmetry(beta: Beta) -> dict:
    top = gamma(beta)
    cs = [2 * top * Fraction(k, 19) for k in range(20)] + [top]
    failures = []
    for c in cs:
        try:
            check_asymmetry(beta, c)
        except VerificationFailure:
            failures.append(c)
    return {
        "pass": not failures,
        "failed_assertion": "failures[0]" if failures else None,
        "tested": len(cs),
        "failures": failures,
    }


def _check_self_similarity(beta: Beta) -> dict:
    try:
        w = not_totally_self_similar_witness(beta)
    except VerificationFailure as exc:
        return {"pass": False, "failed_assertion": "witness", "error": str(exc)}
    member = decide_membership(beta, w.point)
    # Unknown is acceptable at non-integer beta: the point is in E by its coding
    ok = member.verdict.value != "out"
    return {"pass": ok, "failed_assertion": None if ok else "membership", "point": w.point, "coding": w.coding, "hole_image": w.hole_image, "membership": member.verdict}


def random_coding(rng: random.Random, max_pre: int = 8, max_per: int = 6) -> EPCoding:
    pre = "".join(rng.choice("01B") for _ in range(rng.randint(0, max_pre)))
    per = "".join(rng.choice("01B") for _ in range(rng.randint(1, max_per)))
    return EPCoding(pre, per)


def power_of_two_depth(c: EPCoding, m: int) -> int:
    return len(c.preperiod) + 2 * m * len(c.period) + 4


def _check_power_of_two(beta: Beta, sample: int = VERIFY_SAMPLE) -> dict:
    rng = random.Random(VERIFY_SEED)
    checked, counterexamples = 0, []
    for _ in range(sample):
        c = random_coding(rng)
        cnt = count_codings(c)
        if not cnt.is_finite or cnt.count > 16:
            continue
        checked += 1
        found = len(enumerate_codings(c, power_of_two_depth(c, cnt.m), beta))
        if found != cnt.count:
            counterexamples.append({"coding": c, "predicted": cnt.count, "prefixes": found})
    return {
        "pass": not counterexamples,
        "failed_assertion": "first_counterexamples[0]" if counterexamples else None,
        "sampled": sample,
        "checked": checked,
        "n_counterexamples": len(counterexamples),
        "first_counterexamples": counterexamples[:5],
    }


def _check_map_collisions(beta: Beta, max_n: int = 7) -> dict:
    rows = {}
    ok = True
    for n in range(1, max_n + 1):
        got, want = len(level_offsets(beta, n)), count_words(matrix_A(), n)
        rows[str(n)] = {"distinct_maps": got, "count_words_A": want}
        ok = ok and got == want
    bad = [n for n, r in rows.items() if r["distinct_maps"] != r["count_words_A"]]
    return {"pass": ok, "failed_assertion": f"levels.{bad[0]}" if bad else None, "levels": rows}


def cmd_verify(args) -> tuple[dict, str | None]:
    levels = args.level if args.level is not None else 8
    if not 1 <= levels <= MAX_LEVEL:
        raise UsageError(f"--level must be in 1..{MAX_LEVEL}")
    checks = {
        "overlap_identity": _check_overlap(args.beta, levels),
        "asymmetry": _check_asymmetry(args.beta),
        "not_totally_self_similar": _check_self_similarity(args.beta),
        "power_of_two_law": _check_power_of_two(args.beta),
        "map_collision_law": _check_map_collisions(args.beta),
    }
    failed = None
    for name in checks:
        if not checks[name]["pass"]:
            failed = f"results.checks.{name}.{checks[name]['failed_assertion']}"
            break
    return {"checks": checks, "level": levels}, failed


# -- parser ------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ebeta", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--timestamp", action="store_true", help="add a UTC timestamp to the report")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("dims", help="characteristic polynomials, Perron roots, dimensions")
    d.add_argument("--beta", type=_beta, required=True)
    d.add_argument("--tol", type=_rational, help="root bracket width (default 1/10^12)")
    d.set_defaults(func=cmd_dims)

    c = sub.add_parser("codings", help="count, enumerate or evaluate an eventually periodic coding")
    c.add_argument("action", choices=("count", "enumerate", "eval"))
    c.add_argument("--coding", type=_coding, required=True, help='e.g. "11|B"')
    c.add_argument("--beta", type=_beta)
    c.add_argument("--depth", type=int)
    c.set_defaults(func=cmd_codings)

    g = sub.add_parser("geometry", help="basic intervals, holes, SVG of the first levels")
    g.add_argument("action", choices=("levels", "holes", "svg"))
    g.add_argument("--beta", type=_beta, required=True)
    g.add_argument("--level", type=int, required=True)
    g.add_argument("--out", help="SVG output file (svg only)")
    g.set_defaults(func=cmd_geometry)

    e = sub.add_parser("embed", help="classify g(x) = mu*x + b")
    e.add_argument("action", choices=("classify",))
    e.add_argument("--beta", type=_beta, required=True)
    e.add_argument("--mu", type=_rational, required=True)
    e.add_argument("--b", type=_rational, required=True)
    e.add_argument("--depth", type=int)
    e.set_defaults(func=cmd_embed)

    s = sub.add_parser("spectrum", help="minimum nonzero |sum d_i beta^i|")
    s.add_argument("--beta", type=_beta, required=True)
    s.add_argument("--max-len", type=int, required=True)
    s.set_defaults(func=cmd_spectrum)

    v = sub.add_parser("verify", help="run the invariant suite for one beta")
    v.add_argument("action", choices=("all",))
    v.add_argument("--beta", type=_beta, required=True)
    v.add_argument("--level", type=int, help="overlap identity depth (default 8)")
    v.set_defaults(func=cmd_verify)
    return p


def run(argv: list[str] | None = None) -> tuple[int, dict | None]:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        results, failed = args.func(args)
    except UsageError as exc:
        print(f"ebeta: error: {exc}", file=sys.stderr)
        return 2, None
    report = {
        "tool_version": __version__,
        "beta": format_rational(args.beta.value) if getattr(args, "beta", None) else None,
        "command": " ".join([args.command] + ([args.action] if hasattr(args, "action") else [])),
        "results": to_json(results),
        "status": "pass" if failed is None else "fail",
    }
    if failed is not None:
        report["failed"] = failed
    if args.timestamp:
        report["timestamp"] = datetime.now(timezone.utc).isoformat()
    return (0 if failed is None else 1), report


def main(argv: list[str] | None = None) -> int:
    try:
        code, report = run(argv)
    except ValueBelowThree as exc:
        print(f"ebeta: error: {exc}", file=sys.stderr)
        return 2
    if report is not None:
        json.dump(report, sys.stdout, sort_keys=True, indent=2)
        sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
