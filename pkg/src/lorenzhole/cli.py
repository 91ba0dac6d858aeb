"""Command-line interface: ``lorenzhole <command> [options]``.

Output is deterministic (sorted JSON keys, fixed float formatting) and every
JSON document carries ``"schema": 1``.  Exit status: 0 success, 2 invalid
input, 3 computation failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import oracle as oracle_mod
from .entropy import (
    EntropyResult,
    beta_from_kneading,
    dimension,
    determinant_of,
    shift_entropy,
    survivor_shift_entropy,
)
from .errors import LorenzHoleError
from .kneading import (
    FULL_SHIFT,
    HoleKind,
    HoleKneading,
    KneadingPair,
    classify,
    hole_bounds,
    survivor_of,
    weak_admissibilize,
)
from .plateau import (
    in_bifurcation_set,
    plateau_at_critical,
    plateau_interior,
    plateau_interior_a_side,
    verify_plateau,
)
from .symbolic import parse

SCHEMA = 1


class UsageError(LorenzHoleError):
    code = "usage"
    validation = True


def _pair(args) -> KneadingPair:
    if args.kplus or args.kminus:
        if not (args.kplus and args.kminus):
            raise UsageError("--kplus and --kminus must be given together")
        return KneadingPair(parse(args.kplus), parse(args.kminus))
    if getattr(args, "beta", None):
        from .numeric import MapParams, kneading_pair

        p = MapParams.make(args.beta, args.alpha or "0", args.precision)
        return kneading_pair(p, depth=max(args.depth, 200))
    return FULL_SHIFT


def _hole(args) -> HoleKneading:
    kind = HoleKind(args.hole)
    a = None if args.a in (None, "c") else parse(args.a)
    b = None if args.b in (None, "c") else parse(args.b)
    if kind is HoleKind.ZERO:
        if b is None:
            raise UsageError("--hole zero needs --b")
        return HoleKneading(None, b, kind=kind)
    if kind is HoleKind.ONE:
        if a is None:
            raise UsageError("--hole one needs --a")
        return HoleKneading(a, None, kind=kind)
    if args.a is None and args.b is None:
        raise UsageError("give --a and/or --b (a literal or 'c')")
    return HoleKneading(a, b, a_is_critical=args.a in (None, "c"), b_is_critical=args.b in (None, "c"))


def _frac(x: Fraction) -> str:
    return f"{float(x):.15g}"


def _entropy_json(res: EntropyResult) -> dict:
    return {
        "t0_lo": None if res.t0 is None else _frac(res.t0[0]),
        "t0_hi": None if res.t0 is None else _frac(res.t0[1]),
        "entropy_nats": float(f"{res.entropy:.15g}"),
        "entropy_bits": float(f"{res.entropy_bits:.15g}"),
        "flags": list(res.flags),
    }


# ---------------------------------------------------------------- commands


def cmd_seq(args) -> dict:
    x = parse(args.literal)
    return {"canonical": str(x), "preperiod": x.pre, "period": x.per}


def cmd_admissible(args) -> dict:
    pair = _pair(args)
    return {
        "kplus": str(pair.kplus),
        "kminus": str(pair.kminus),
        "k0": str(pair.k0),
        "k1": str(pair.k1),
        "class": classify(pair).value,
    }


def cmd_survivor(args) -> dict:
    pair = _pair(args)
    sh = weak_admissibilize(_hole(args), pair)
    out = sh.to_json()
    out["entropy"] = _entropy_json(survivor_shift_entropy(sh))
    return out


def cmd_plateau(args) -> dict:
    pair = _pair(args)
    h = _hole(args)
    if h.kind is not HoleKind.INTERIOR:
        raise UsageError("plateau needs an interior hole")
    if args.side == "a":
        if h.a_is_critical or h.b_is_critical:
            raise UsageError("the a-side plateau needs both endpoints off c")
        pl = plateau_interior_a_side(pair, h.a_lower, h.b_upper)
    elif h.a_is_critical:
        pl = plateau_at_critical(pair, h.b_upper)
    else:
        pl = plateau_interior(pair, h.a_lower, h.b_upper)
    rep = verify_plateau(pair, h, pl, n_samples=args.samples)
    out = pl.to_json()
    out["verified"] = rep.ok
    out["report"] = rep.to_json()
    return out


def cmd_bifurcation(args) -> dict:
    pair = _pair(args)
    if args.b in (None, "c"):
        raise UsageError("bifurcation needs --b as a literal")
    a = None if args.a in (None, "c") else parse(args.a)
    return {"in_bifurcation_set": in_bifurcation_set(pair, a, parse(args.b))}


def cmd_entropy(args) -> dict:
    pair = _pair(args)
    if args.a is None and args.b is None and args.hole == "interior":
        res = shift_entropy(pair.kplus, pair.kminus)
        det = determinant_of(pair)
        out = _entropy_json(res)
        out["numerator"] = list(det.numerator.coeffs)
        out["denominator_periods"] = list(det.denominator_periods)
        if res.t0 is not None:
            out["beta"] = float(f"{beta_from_kneading(pair):.15g}")
            out["dimension"] = float(f"{dimension(beta_from_kneading(pair), res):.15g}")
        return out
    sh = survivor_of(_hole(args), pair)
    res = survivor_shift_entropy(sh)
    out = _entropy_json(res)
    out["survivor"] = sh.to_json()
    amb = shift_entropy(pair.kplus, pair.kminus)
    if amb.t0 is not None:
        beta = beta_from_kneading(pair)
        out["dimension"] = float(f"{dimension(beta, res):.15g}")
    return out


def cmd_oracle(args):
    pair = _pair(args)
    lo, hi = hole_bounds(_hole(args), pair) if (args.a or args.b) else (pair.k0, pair.k1)
    aut = oracle_mod.build_bounds(lo, hi)
    if args.dot:
        return oracle_mod.to_dot(aut)
    out = {
        "lower": str(lo),
        "upper": str(hi),
        "states": aut.n_states,
        "live": aut.n_live,
        "entropy_estimate": float(f"{oracle_mod.entropy_estimate(aut):.12g}"),
    }
    if aut.live:
        out["min"] = str(oracle_mod.extremal(aut, "min"))
        out["max"] = str(oracle_mod.extremal(aut, "max"))
    return out


def cmd_staircase(args):
    from .staircase import staircase

    if not args.beta:
        raise UsageError("staircase needs --beta")
    pair = KneadingPair(parse(args.kplus), parse(args.kminus)) if args.kplus else None
    st = staircase(
        args.beta,
        args.alpha or "0",
        fixed_bound=args.fixed,
        grid=args.grid,
        depth=args.depth,
        precision=args.precision,
        pair=pair,
    )
    if args.format == "json":
        return {
            "beta": st.beta,
            "alpha": st.alpha,
            "kplus": str(st.pair.kplus),
            "kminus": str(st.pair.kminus),
            "rows": [dict(zip(_csv_header(), r.csv_fields())) for r in st.rows],
        }
    return st.to_csv()


def _csv_header():
    from .staircase import CSV_HEADER

    return CSV_HEADER


def cmd_simulate(args) -> dict:
    from .numeric import MapParams, escape_survivors

    if not args.beta:
        raise UsageError("simulate needs --beta")
    p = MapParams.make(args.beta, args.alpha or "0", args.precision)
    a = p.c if args.a in (None, "c") else p.real(args.a)
    b = p.c if args.b in (None, "c") else p.real(args.b)
    rep = escape_survivors(p, a, b, args.points, args.iters)
    return rep.to_json()


COMMANDS = {
    "seq": cmd_seq,
    "admissible": cmd_admissible,
    "survivor": cmd_survivor,
    "plateau": cmd_plateau,
    "bifurcation": cmd_bifurcation,
    "entropy": cmd_entropy,
    "oracle": cmd_oracle,
    "staircase": cmd_staircase,
    "simulate": cmd_simulate,
}


def _common(p: argparse.ArgumentParser, hole: bool = True) -> None:
    p.add_argument("--kplus", help="k+ literal, e.g. 1(0)")
    p.add_argument("--kminus", help="k- literal, e.g. 0(1)")
    if hole:
        p.add_argument("--a", help="bold-a literal (left-limit itinerary of a), or 'c'")
        p.add_argument("--b", help="bold-b literal (right-limit itinerary of b), or 'c'")
        p.add_argument("--hole", choices=[k.value for k in HoleKind], default="interior")
    p.add_argument("--beta", help="decimal, 'golden' or 'tribonacci'")
    p.add_argument("--alpha", help="decimal or 'sym' (= 1 - beta/2)")
    p.add_argument("--precision", type=int, default=50, help="working decimal digits")
    p.add_argument("--depth", type=int, default=32)
    p.add_argument("--out", help="write output to this file instead of stdout")
    p.add_argument("--format", choices=["json", "text", "csv"], default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lorenzhole", description="Survivor shifts of Lorenz maps with a hole.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seq", help="sequence utilities")
    p.add_argument("action", choices=["canon"])
    p.add_argument("literal")
    p.add_argument("--format", choices=["json", "text"], default=None)
    p.add_argument("--out")

    p = sub.add_parser("admissible", help="classify a kneading pair")
    _common(p, hole=False)
    p = sub.add_parser("survivor", help="extremal pair (s, t) of the survivor shift")
    _common(p)
    p = sub.add_parser("plateau", help="maximal constancy interval of the moving endpoint")
    _common(p)
    p.add_argument("--side", choices=["a", "b"], default="b")
    p.add_argument("--samples", type=int, default=8)
    p = sub.add_parser("bifurcation", help="bifurcation-set membership of b")
    _common(p)
    p = sub.add_parser("entropy", help="entropy of a Lorenz shift or survivor shift")
    _common(p)
    p = sub.add_parser("oracle", help="automaton cross-check")
    _common(p)
    p.add_argument("--dot", action="store_true", help="print the automaton in DOT format")
    p = sub.add_parser("staircase", help="dimension table over a grid of hole endpoints")
    _common(p, hole=False)
    p.add_argument("--fixed", default="zero", help="'zero' for holes (0,t), or a decimal a <= c")
    p.add_argument("--grid", type=int, default=256)
    p = sub.add_parser("simulate", help="escape-time simulation")
    _common(p)
    p.add_argument("--points", type=int, default=10000)
    p.add_argument("--iters", type=int, default=1000)
    return ap


def _render(result, fmt: str) -> str:
    if isinstance(result, str):
        return result if result.endswith("\n") else result + "\n"
    if fmt == "text":
        if set(result) == {"canonical", "preperiod", "period"}:
            return result["canonical"] + "\n"
        return "\n".join(f"{k}: {result[k]}" for k in sorted(result)) + "\n"
    doc = dict(result)
    doc["schema"] = SCHEMA
    return json.dumps(doc, sort_keys=True) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    fmt = args.format or ("csv" if args.command == "staircase" else "json")
    try:
        result = COMMANDS[args.command](args)
    except LorenzHoleError as exc:
        doc = {"error": {"code": exc.code, "message": str(exc)}, "schema": SCHEMA}
        if fmt == "json":
            sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")
        else:
            sys.stderr.write(f"error [{exc.code}]: {exc}\n")
        return 2 if exc.validation else 3
    _emit(_render(result, fmt), args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
