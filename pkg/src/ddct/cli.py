"""Command-line surface.

Subcommands: validate, delta, f-test, b-rep, g-level, member, census, dim,
construct, dense, oracle.  Reports go to stdout as compact JSON (default)
or CSV; validation failures print the error name on stderr and exit 2,
internal invariant failures exit 1.  Identical argv yields byte-identical
output.

Rationals are read and written as "p/q" strings (decimals rejected);
translation digit strings follow the expansion grammar, e.g. "0.202",
"0.(20)", "0.[10,0](7,3)".
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from math import log

from . import automaton, constructor, fgeometry, oracle
from .digits import DigitSet, common_divisor, difference_set, is_separated
from .errors import DdctError, OutOfRange
from .expansion import (
    NAryExpansion,
    is_terminating,
    parse_expansion,
    to_rational,
    truncate,
)

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def _parse_rational(s: str) -> Fraction:
    s = s.strip()
    if not _RATIONAL.match(s):
        raise OutOfRange(f"rationals must be given as p/q, got {s!r}")
    return Fraction(s)


def _fmt_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _fmt_decimal(x: float) -> str:
    return f"{x:.12f}"


def _digit_set(args) -> DigitSet:
    digits = tuple(int(t) for t in args.digits.split(","))
    return DigitSet(args.base, digits)


def _expansion(args, attr: str = "t") -> NAryExpansion:
    return parse_expansion(getattr(args, attr), args.base)


def _emit(args, report: dict, rows: list[dict] | None = None) -> None:
    """JSON object by default; CSV renders the row table when one exists,
    else key,value pairs."""
    if args.format == "csv":
        if rows is not None:
            cols = list(rows[0].keys()) if rows else []
            print(",".join(cols))
            for r in rows:
                print(",".join(str(r[c]) for c in cols))
        else:
            print("key,value")
            for key, val in report.items():
                print(f"{key},{json.dumps(val) if isinstance(val, (dict, list)) else val}")
        return
    if rows is not None:
        report = dict(report)
        report["rows"] = rows
    print(json.dumps(report, separators=(",", ":")))


# -- subcommand handlers -----------------------------------------------------


def _cmd_validate(args) -> int:
    D = _digit_set(args)
    _emit(args, {
        "base": D.base,
        "digits": list(D.digits),
        "m": D.m,
        "separated": is_separated(D),
        "common_divisor": common_divisor(D),
    })
    return 0


def _cmd_delta(args) -> int:
    D = _digit_set(args)
    ds = difference_set(D)
    _emit(args, {
        "base": D.base,
        "digits": list(D.digits),
        "deltas": list(ds.deltas),
        "size": ds.size,
    })
    return 0


def _cmd_f_test(args) -> int:
    D = _digit_set(args)
    rep = fgeometry.f_report(D)
    out = {
        "is_interval": rep.is_interval,
        "right_endpoint": _fmt_rational(rep.right_endpoint),
        "gap_witness": list(rep.gap_witness) if rep.gap_witness else None,
        "osc_holds": rep.osc_holds,
    }
    if rep.osc_holds:
        out["f_dimension"] = {
            "exact": f"log({rep.f_dimension_count})/log({rep.base})",
            "delta_count": rep.f_dimension_count,
            "decimal": _fmt_decimal(rep.f_dimension),
            "precision": "1e-12",
        }
    else:
        out["f_dimension"] = None
    _emit(args, out)
    return 0


def _cmd_b_rep(args) -> int:
    D = _digit_set(args)
    rep = fgeometry.b_representation(D, verify_depth=args.depth)
    out = {
        "h": rep.h,
        "kind": rep.kind,
        "shift": _fmt_rational(rep.shift),
        "verified_depth": args.depth,
    }
    if rep.b is not None:
        out["b_base"] = rep.b.base
        out["b_digits"] = list(rep.b.digits)
    _emit(args, out)
    return 0


def _cmd_g_level(args) -> int:
    D = _digit_set(args)
    ls = fgeometry.g_ifs_level(D, args.level, budget=args.budget)
    report = {
        "level": ls.level,
        "window": "[-1,1]",
        "cell_shift": ls.shift,
        "count": ls.size,
        "positions": list(ls.positions),
    }
    rows = [{"position": p} for p in ls.positions]
    _emit(args, report, rows if args.format == "csv" else None)
    return 0


def _cmd_member(args) -> int:
    D = _digit_set(args)
    t = _expansion(args)
    member = automaton.is_member(D, t)
    out = {
        "member": member,
        "t": args.t.strip(),
        "value": _fmt_rational(to_rational(t)),
        "terminating": is_terminating(t),
    }
    _emit(args, out)
    return 0


def _cmd_census(args) -> int:
    D = _digit_set(args)
    t = _expansion(args)
    seq = automaton.census_sequence(D, t, args.depth)
    rows = []
    refined = (
        automaton.refined_census_sequence(D, t, args.depth)
        if args.refined
        else None
    )
    for k, st in enumerate(seq.states):
        row = {
            "level": k,
            "digit": seq.digits[k - 1] if k else "",
            "potential": st.potential,
            "interval": st.interval,
            "potentially_empty": st.potentially_empty,
        }
        if refined is not None:
            row["joint_both"] = automaton.joint_interval_potential_counts(refined)[k]
            row["interval_only"] = automaton.interval_only_counts(refined)[k]
        rows.append(row)
    _emit(args, {"base": D.base, "t": args.t.strip(), "depth": args.depth}, rows)
    return 0


def _dimension_report(res: automaton.DimensionResult) -> dict:
    lo, hi = res.rho_enclosure
    out: dict = {
        "kind": res.kind,
        "base": res.base,
        "period": res.period,
        "decimal": _fmt_decimal(res.value),
        "precision": "1e-12",
    }
    if res.rho is not None:
        out["rho"] = {"kind": "rational", "value": _fmt_rational(res.rho)}
        out["exact"] = f"log({_fmt_rational(res.rho)})/({res.period}*log({res.base}))"
    else:
        out["rho"] = {
            "kind": "quadratic",
            "trace": res.rho_trace,
            "det": res.rho_det,
            "enclosure": [_fmt_rational(lo), _fmt_rational(hi)],
        }
        out["exact"] = (
            f"log(largest root of x^2-{res.rho_trace}x+{res.rho_det})"
            f"/({res.period}*log({res.base}))"
        )
    return out


def _cmd_dim(args) -> int:
    D = _digit_set(args)
    t = _expansion(args)
    res = automaton.box_dimension_periodic(D, t)
    out = _dimension_report(res)
    if args.estimate_depth:
        slopes = automaton.count_slope(D, t, args.estimate_depth)
        out["estimate"] = {
            "depth": args.estimate_depth,
            "slope": _fmt_decimal(slopes[-1]),
        }
    _emit(args, out)
    return 0


def _cmd_construct(args) -> int:
    D = _digit_set(args)
    alpha = _parse_rational(args.alpha)
    x = constructor.construct_translation(D, alpha)
    seq = automaton.census_sequence(D, x, args.depth)
    slopes = automaton.count_slope(D, x, args.depth)
    rows = [{"level": 0, "digit": "", "census0": 1, "slope": ""}]
    for k in range(1, args.depth + 1):
        rows.append({
            "level": k,
            "digit": seq.digits[k - 1],
            "census0": seq.states[k].interval,
            "slope": _fmt_decimal(slopes[k - 1]),
        })
    _emit(args, {
        "base": D.base,
        "alpha": _fmt_rational(alpha),
        "target_dimension": _fmt_decimal(float(alpha) * log(D.m) / log(D.base)),
    }, rows)
    return 0


def _cmd_dense(args) -> int:
    D = _digit_set(args)
    y = _expansion(args, "y")
    eps = _parse_rational(args.eps)
    alpha = _parse_rational(args.alpha)
    x, rep = constructor.dense_translation_detailed(D, y, eps, alpha)
    depth = args.depth
    trunc = truncate(x, depth)
    lo = to_rational(trunc)
    hi = lo + Fraction(1, D.base**depth)
    slopes = automaton.count_slope(D, x, depth)
    gap = abs(to_rational(y) - lo)
    gap = max(gap, abs(to_rational(y) - hi))
    out = {
        "y": args.y.strip(),
        "eps": _fmt_rational(eps),
        "alpha": _fmt_rational(alpha),
        "copy_depth": rep.copy_depth,
        "branch": rep.branch,
        "graft_level": rep.graft_level,
        "graft_count": rep.graft_count,
        "digits": list(x.digits_upto(min(depth, 40))),
        "value_enclosure": [_fmt_rational(lo), _fmt_rational(hi)],
        "distance_bound": _fmt_rational(gap),
        "within_eps": gap < eps,
        "slope_at_depth": _fmt_decimal(slopes[-1]),
        "depth": depth,
    }
    _emit(args, out)
    return 0


def _cmd_oracle(args) -> int:
    D = _digit_set(args)
    k = args.level
    budget = args.budget
    if args.op == "levels":
        ls = oracle.level_intervals(D, k, budget)
        _emit(args, {"level": k, "count": ls.size, "positions": list(ls.positions)},
              [{"position": p} for p in ls.positions] if args.format == "csv" else None)
        return 0
    if args.op == "difference":
        ls = oracle.difference_level(D, k, budget)
        _emit(args, {
            "level": k, "window": "[-1,1]", "cell_shift": ls.shift,
            "count": ls.size, "positions": list(ls.positions),
        })
        return 0
    t = _expansion(args)
    if args.op == "census":
        st = oracle.pair_census(D, t, k, budget)
        out = {
            "level": k,
            "potential": st.potential,
            "interval": st.interval,
            "potentially_empty": st.potentially_empty,
        }
        if args.verify:
            auto = automaton.census_sequence(D, t, k).states[-1]
            out["automaton"] = list(auto.counts)
            out["match"] = auto.counts == st.counts
            if not out["match"]:
                _emit(args, out)
                print("oracle/automaton census mismatch", file=sys.stderr)
                return 1
        _emit(args, out)
        return 0
    if args.op == "intersect":
        ls = oracle.intersect_levels(D, t, k, budget)
        _emit(args, {"level": k, "count": ls.size, "positions": list(ls.positions)})
        return 0
    if args.op == "profile":
        prof = oracle.offset_profile(D, t, k, budget)
        out = {
            "level": k,
            "profile": {str(mask): c for mask, c in sorted(prof.items())},
            "joint_both": oracle.joint_interval_potential(prof),
            "interval_only": oracle.interval_only(prof),
        }
        if args.verify:
            ref = automaton.refined_census_sequence(D, t, k)[-1]
            out["automaton_profile"] = {str(m): c for m, c in sorted(ref.items())}
            out["match"] = ref == prof
            if not out["match"]:
                _emit(args, out)
                print("oracle/automaton profile mismatch", file=sys.stderr)
                return 1
        _emit(args, out)
        return 0
    raise OutOfRange(f"unknown oracle op {args.op!r}")


# -- parser -------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="ddct",
        description="deleted-digits Cantor sets: translate intersections, "
        "constructed dimensions, and the geometry of F",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, t=False, y=False):
        p.add_argument("--base", type=int, required=True)
        p.add_argument("--digits", type=str, required=True,
                       help="comma-separated digit list, e.g. 0,2,6")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--budget", type=int, default=None,
                       help="enumeration budget override (env DDCT_BUDGET)")
        if t:
            p.add_argument("--t", type=str, required=True,
                           help='digit string, e.g. "0.(20)"')
        if y:
            p.add_argument("--y", type=str, required=True,
                           help="digit string of the target member")

    common(sub.add_parser("validate", help="validate a digit set"))
    common(sub.add_parser("delta", help="difference set D - D"))
    common(sub.add_parser("f-test", help="interval criterion and open-set "
                                         "condition for F"))
    p = sub.add_parser("b-rep", help="scaled digit-set representation of G")
    common(p)
    p.add_argument("--depth", type=int, default=4)
    p = sub.add_parser("g-level", help="IFS iterate cells of the window")
    common(p)
    p.add_argument("--level", type=int, required=True)
    p = sub.add_parser("member", help="decide membership of t in F")
    common(p, t=True)
    p = sub.add_parser("census", help="pair census along t")
    common(p, t=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--refined", action="store_true",
                   help="track joint offset profiles too")
    p = sub.add_parser("dim", help="exact intersection dimension for "
                                   "terminating or periodic t")
    common(p, t=True)
    p.add_argument("--estimate-depth", type=int, default=None)
    p = sub.add_parser("construct", help="digit stream with prescribed "
                                         "dimension alpha*log_n(m)")
    common(p)
    p.add_argument("--alpha", type=str, required=True, help='rational "p/q"')
    p.add_argument("--depth", type=int, required=True)
    p = sub.add_parser("dense", help="member-approximating stream with "
                                     "prescribed dimension")
    common(p, y=True)
    p.add_argument("--eps", type=str, required=True, help='rational "p/q"')
    p.add_argument("--alpha", type=str, required=True, help='rational "p/q"')
    p.add_argument("--depth", type=int, default=60,
                   help="report depth for digits and slope")
    p = sub.add_parser("oracle", help="brute-force enumeration queries")
    common(p)
    p.add_argument("--op", required=True,
                   choices=("levels", "census", "intersect", "difference",
                            "profile"))
    p.add_argument("--t", type=str, default="0")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--verify", action="store_true",
                   help="cross-check against the automaton")
    return top


_HANDLERS = {
    "validate": _cmd_validate,
    "delta": _cmd_delta,
    "f-test": _cmd_f_test,
    "b-rep": _cmd_b_rep,
    "g-level": _cmd_g_level,
    "member": _cmd_member,
    "census": _cmd_census,
    "dim": _cmd_dim,
    "construct": _cmd_construct,
    "dense": _cmd_dense,
    "oracle": _cmd_oracle,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except DdctError as err:
        print(f"{err.name}: {err}", file=sys.stderr)
        return err.exit_code
    except AssertionError as err:
        print(f"internal invariant failure: {err}", file=sys.stderr)
        return 1


def entry() -> None:  # console script
    sys.exit(main())
