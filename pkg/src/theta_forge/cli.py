"""Command-line front end; every number in the output is an exact string."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Optional

from .curve import (
    CurveParams,
    Point,
    ThetaSlope,
    TorsionReport,
    WeierstrassK,
    build_curve,
    quadratic_twist,
    torsion_subgroup,
)
from .engine import (
    RankEvidence,
    SearchConfig,
    Status,
    Verdict,
    classify,
    oracle_triangle_search,
    twist_rank_evidence,
)
from .field import QQ, FieldDesc, QuadElem, is_squarefree
from .poly import (
    PolyQ,
    QuarticReport,
    build_f_quartic,
    cubic_field_obstruction,
    mod_s_root_analysis,
    quartic_analyze,
    rational_roots,
)
from .replay import verify_paper
from .triangle import TriangleK, phi_triangle_to_point, psi_point_to_triangle

EXIT_OK, EXIT_INPUT, EXIT_UNKNOWN = 0, 1, 2


class InputError(ValueError):
    pass


# -- serialisation ---------------------------------------------------------


def enc_q(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def enc(x) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, QuadElem):
        return enc_q(x.a) if x.field.is_rational else [enc_q(x.a), enc_q(x.b)]
    if isinstance(x, (int, Fraction)):
        return enc_q(x)
    if isinstance(x, Point):
        return "infinity" if x.is_infinity else {"x": enc(x.x), "y": enc(x.y)}
    if isinstance(x, PolyQ):
        return [enc_q(c) for c in x.coeffs]
    if isinstance(x, TriangleK):
        return {"u": enc(x.u), "v": enc(x.v), "w": enc(x.w)}
    if isinstance(x, WeierstrassK):
        return {
            "A": enc(x.A),
            "B": enc(x.B),
            "coefficients": [enc(c) for c in x.coefficients()],
            "field": str(x.field),
        }
    if isinstance(x, TorsionReport):
        return {
            "group": x.group.value,
            "witnesses": [enc(P) for P in x.witnesses],
            "complete": x.complete,
            "notes": list(x.notes),
        }
    if isinstance(x, Verdict):
        return {
            "status": x.status.value,
            "witness_point": None if x.witness_point is None else enc(x.witness_point),
            "witness_triangle": None if x.witness_triangle is None else enc(x.witness_triangle),
            "evidence": list(x.evidence),
        }
    if isinstance(x, RankEvidence):
        return {
            "base_points": [enc(P) for P in x.base_points],
            "twist_points": [enc(P) for P in x.twist_points],
            "transported": [enc(P) for P in x.transported],
            "lower_bound_hint": x.lower_bound_hint,
            "base_generators": [enc(P) for P in x.base_generators],
            "twist_generators": [enc(P) for P in x.twist_generators],
        }
    if isinstance(x, QuarticReport):
        return {
            "irreducible_over_Q": x.irreducible_over_Q,
            "rational_roots": [enc_q(q) for q in x.rational_roots],
            "quadratic_split": None if x.quadratic_split is None else [enc(f) for f in x.quadratic_split],
            "resolvent": enc(x.resolvent),
            "discriminant": enc_q(x.discriminant),
            "galois_type": x.galois_type.value,
        }
    if isinstance(x, dict):
        return {k: enc(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [enc(v) for v in x]
    return x


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)


# -- parsing ---------------------------------------------------------------


def parse_field(d: Optional[int]) -> FieldDesc:
    if d is None:
        return QQ
    try:
        return FieldDesc.real_quadratic(d)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def parse_elem(text: str, K: FieldDesc) -> QuadElem:
    """``"a"`` or ``"a,b"`` for a + b*sqrt(d), each part an exact fraction."""
    parts = [t.strip() for t in text.split(",")]
    try:
        if len(parts) == 1:
            return QuadElem(Fraction(parts[0]), 0, K)
        if len(parts) == 2:
            if K.is_rational:
                raise InputError(f"{text!r} has a sqrt(d) part but no --d was given")
            return QuadElem(Fraction(parts[0]), Fraction(parts[1]), K)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse number {text!r}") from exc
    raise InputError(f"cannot parse number {text!r}")


def parse_params(args) -> CurveParams:
    if args.n is None or args.theta is None:
        raise InputError("--n and --theta are required")
    try:
        theta = ThetaSlope.parse(args.theta)
    except ValueError as exc:
        raise InputError(f"malformed --theta {args.theta!r}: expected s/r with |s| < r") from exc
    if args.n < 1 or not is_squarefree(args.n):
        raise InputError(
            f"n = {args.n} is not a positive square-free integer; pass its square-free part explicitly"
        )
    return CurveParams(args.n, theta)


def search_config(args) -> SearchConfig:
    return SearchConfig(denom_bound=args.e_max, numer_bound=args.numer_bound)


# -- commands --------------------------------------------------------------


def cmd_curve(args, warnings):
    p = parse_params(args)
    K = parse_field(args.d)
    E = build_curve(p)
    out = {"curve": E.base_change(K), "exceptional": p.exceptional}
    if args.twist is not None:
        out["twist"] = quadratic_twist(E, args.twist)
    return out, EXIT_OK


def cmd_torsion(args, warnings):
    return {"torsion": torsion_subgroup(parse_params(args), parse_field(args.d))}, EXIT_OK


def cmd_classify(args, warnings):
    verdict = classify(parse_params(args), parse_field(args.d), search_config(args))
    code = EXIT_UNKNOWN if verdict.status is Status.UNKNOWN else EXIT_OK
    return {"verdict": verdict}, code


def cmd_triangle_from_point(args, warnings):
    p = parse_params(args)
    K = parse_field(args.d)
    if args.x is None or args.y is None:
        raise InputError("--x and --y are required")
    P = Point(parse_elem(args.x, K), parse_elem(args.y, K))
    try:
        T = psi_point_to_triangle(P, p, K)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return {"point": P, "triangle": T}, EXIT_OK


def cmd_point_from_triangle(args, warnings):
    p = parse_params(args)
    K = parse_field(args.d)
    if args.u is None or args.v is None or args.w is None:
        raise InputError("--u, --v and --w are required")
    T = TriangleK.make(parse_elem(args.u, K), parse_elem(args.v, K), parse_elem(args.w, K), p, K)
    try:
        P = phi_triangle_to_point(T)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return {"triangle": T, "point": P}, EXIT_OK


def cmd_quartic(args, warnings):
    if args.coeffs is not None:
        try:
            poly = PolyQ([Fraction(c) for c in args.coeffs.split(",")])
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"malformed --coeffs {args.coeffs!r}") from exc
        out = {"polynomial": poly, "rational_roots": [enc_q(q) for q in rational_roots(poly)]}
        if poly.degree == 4:
            try:
                out["report"] = quartic_analyze(poly)
            except ValueError as exc:
                raise InputError(str(exc)) from exc
        return out, EXIT_OK
    if args.r is None or args.s is None:
        raise InputError("quartic needs --r and --s, or --coeffs")
    try:
        poly = build_f_quartic(args.r, args.s)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    out = {
        "polynomial": poly,
        "report": quartic_analyze(poly),
        "obstruction": cubic_field_obstruction(args.r, args.s).value,
    }
    if args.s != 0:
        mod = mod_s_root_analysis(args.r, args.s)
        out["mod_s"] = {"qr3_holds": mod.qr3_holds, "residue_roots_exist": mod.residue_roots_exist}
    return out, EXIT_OK


def cmd_oracle(args, warnings):
    T = oracle_triangle_search(parse_params(args), parse_field(args.d), args.height)
    return {"triangle": T}, EXIT_OK if T is not None else EXIT_UNKNOWN


def cmd_twist_evidence(args, warnings):
    if args.d is None:
        raise InputError("twist-evidence needs --d")
    K = parse_field(args.d)
    return {"evidence": twist_rank_evidence(parse_params(args), K.d, search_config(args))}, EXIT_OK


def cmd_verify_paper(args, warnings):
    items = verify_paper()
    result = {}
    for it in items:
        warnings.extend(f"item ({it.item}): {w}" for w in it.warnings)
        result[it.item] = {
            "status": it.status,
            "checks": dict(it.checks),
            "warnings": list(it.warnings),
            "details": it.details,
        }
    code = EXIT_OK if all(it.passed for it in items) else EXIT_INPUT
    return {"items": result}, code


COMMANDS = {
    "curve": cmd_curve,
    "torsion": cmd_torsion,
    "classify": cmd_classify,
    "triangle-from-point": cmd_triangle_from_point,
    "point-from-triangle": cmd_point_from_triangle,
    "quartic": cmd_quartic,
    "oracle": cmd_oracle,
    "twist-evidence": cmd_twist_evidence,
    "verify-paper": cmd_verify_paper,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="theta-forge", description=__doc__)
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--n", type=int)
    parser.add_argument("--theta", help="cos(theta) as s/r, e.g. 1/2 or -1/2")
    parser.add_argument("--d", type=int, help="work over Q(sqrt d)")
    parser.add_argument("--twist", type=int, help="also print the twist by this d (curve)")
    parser.add_argument("--r", type=int)
    parser.add_argument("--s", type=int)
    parser.add_argument("--coeffs", help="ascending coefficients, comma separated")
    parser.add_argument("--x")
    parser.add_argument("--y")
    parser.add_argument("--u")
    parser.add_argument("--v")
    parser.add_argument("--w")
    parser.add_argument("--height", type=int, default=10)
    parser.add_argument("--e-max", type=int, default=SearchConfig.denom_bound)
    parser.add_argument("--numer-bound", type=int, default=SearchConfig.numer_bound)
    parser.add_argument("--output", choices=("json", "text"), default="json")
    return parser


def _glue_negative_values(argv: list[str], parser: argparse.ArgumentParser) -> list[str]:
    # argparse reads "--theta -1/2" as two options; rewrite to "--theta=-1/2"
    known = set(parser._option_string_actions)
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in known and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1] not in known:
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def run_cli(argv: list[str]) -> dict:
    """Parse ``argv`` and return the report dict (never raises on bad input)."""
    warnings: list[str] = []
    request: dict = {"argv": list(argv)}
    try:
        parser = build_parser()
        args = parser.parse_args(_glue_negative_values(list(argv), parser))
        request = dict(sorted(vars(args).items()))
        result, code = COMMANDS[args.command](args, warnings)
        result = enc(result)
    except InputError as exc:
        result, code = {"error": str(exc)}, EXIT_INPUT
    return {"request": request, "result": result, "warnings": warnings, "exit_code": code}


def _render_text(report: dict) -> str:
    lines = []

    def walk(obj, prefix=""):
        if isinstance(obj, dict):
            for k, v in obj.items():
                walk(v, f"{prefix}{k}.")
        elif isinstance(obj, list) and obj and all(isinstance(v, (dict, list)) for v in obj):
            for i, v in enumerate(obj):
                walk(v, f"{prefix}{i}.")
        else:
            lines.append(f"{prefix.rstrip('.')}: {obj}")

    walk(report["result"])
    for w in report["warnings"]:
        lines.append(f"warning: {w}")
    lines.append(f"exit_code: {report['exit_code']}")
    return "\n".join(lines)


def main(argv: Optional[list[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    report = run_cli(argv)
    text_mode = report["request"].get("output") == "text"
    print(_render_text(report) if text_mode else dumps(report))
    return report["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
