"""Command line entry point.

Every subcommand reads JSON from a file (``-`` for stdin) and prints a JSON
report.  Exit status: 0 when every check passes, 1 when a check fails,
2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Dict, List, Optional, Sequence, Tuple

from ..cones import NormBall, norm_cones
from ..dynamics import (
    TransitionGraph,
    fried_cone,
    nielsen_numbers,
    omega_classes,
    stretch_estimate,
    zeta_series,
)
from ..exact.laurent import LaurentPoly
from ..fibered import FiberedPresentation, alexander_polynomials, twisted_homology
from ..fibered.homology import torsion_from_deltas
from ..profinite import SymbolicProfiniteMap, fried_compare
from .battery import CHECKS, FAIL, BatteryReport, battery_mc, battery_nielsen, battery_norm_values, run_battery
from .pairs import PairSpec, load_orbit_table


class InputError(Exception):
    pass


def _read_json(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
            where = "<stdin>"
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
            where = path
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{where}: malformed JSON at line {exc.lineno} column {exc.colno} (char {exc.pos}): {exc.msg}") from exc


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise InputError(f"expected comma separated integers, got {text!r}") from exc


def _emit(payload: Dict, out) -> None:
    out.write(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))
    out.write("\n")


# -- subcommands -------------------------------------------------------------------


def cmd_alexander(args) -> Tuple[Dict, int]:
    fp = FiberedPresentation.from_json(_read_json(args.presentation))
    h = twisted_homology(fp)
    deltas = alexander_polynomials(fp)
    return {"deltas": [str(d) for d in deltas], "homology": h.to_json()}, 0


def cmd_torsion(args) -> Tuple[Dict, int]:
    fp = FiberedPresentation.from_json(_read_json(args.presentation))
    deltas = alexander_polynomials(fp)
    tau = torsion_from_deltas(deltas)
    return {"deltas": [str(d) for d in deltas], "torsion": tau.to_json()}, 0


def cmd_nielsen(args) -> Tuple[Dict, int]:
    table = load_orbit_table(_read_json(args.table))
    rows = [nielsen_numbers(table, m).to_json() for m in range(1, args.mmax + 1)]
    return {"nielsen": rows, "stretch": [e.to_json() for e in stretch_estimate(table, args.mmax)]}, 0


def cmd_zeta(args) -> Tuple[Dict, int]:
    data = _read_json(args.model)
    xi = None
    extra = {}
    if isinstance(data, dict) and "matrix" in data and data.get("type") == "transition":
        source = data["matrix"]
    elif isinstance(data, dict) and "edges" in data:
        source = TransitionGraph.from_json(data)
    else:
        source = load_orbit_table(data)
        if args.omega is not None:
            om = omega_classes(source.group)
            if not 0 <= args.omega < len(om):
                raise InputError(f"omega index {args.omega} out of range (group has {len(om)} classes)")
            xi = om.chi(args.omega)
            extra["omega"] = om.to_json()["omega"][args.omega]
    z = zeta_series(source, args.depth, xi)
    return {**z.to_json(), **extra}, 0 if z.fit is not None else 1


def cmd_fried_cone(args) -> Tuple[Dict, int]:
    g = TransitionGraph.from_json(_read_json(args.graph))
    return fried_cone(g, args.max_len).to_json(), 0


def cmd_norm_ball(args) -> Tuple[Dict, int]:
    ball = NormBall.from_json(_read_json(args.ball))
    out: Dict = {"ball": ball.to_json()}
    if ball.is_norm():
        out["cones"] = [
            {"index": nc.index, "vertex": [str(x) for x in nc.vertex], "fibered": nc.fibered, "cone": nc.cone.to_json()}
            for nc in norm_cones(ball)
        ]
    else:
        out["kernel_dim"] = ball.kernel_dim()
    if args.phi is not None:
        phi = _int_list(args.phi)
        out["phi"] = [str(x) for x in phi]
        out["norm"] = str(ball.norm(phi))
    return out, 0


def cmd_mc_rank(args) -> Tuple[Dict, int]:
    psi = SymbolicProfiniteMap.from_json(_read_json(args.map))
    r = battery_mc(psi)
    return r.to_json(), 1 if r.verdict == FAIL else 0


def cmd_compare(args) -> Tuple[Dict, int]:
    try:
        a, b = LaurentPoly.parse(args.a), LaurentPoly.parse(args.b)
    except Exception as exc:
        raise InputError(f"cannot parse polynomial: {exc}") from exc
    v = fried_compare(a, b, args.mmax)
    return v.to_json(), 1 if v.verdict == "distinguished" else 0


def cmd_battery(args) -> Tuple[Dict, int]:
    p = PairSpec.from_json(_read_json(args.pair))
    checks = args.check or None
    if args.phi is not None or args.mmax is not None:
        results = []
        for name in sorted(checks or CHECKS):
            if name == "norm_values" and args.phi is not None:
                results.append(battery_norm_values(p, args.seed, [_int_list(x) for x in args.phi]))
            elif name == "nielsen" and args.mmax is not None:
                results.append(battery_nielsen(p, args.mmax))
            else:
                results.append(run_battery(p, args.seed, [name]).results[0])
        report = BatteryReport(p.name, results)
    else:
        report = run_battery(p, args.seed, checks)
    return report.to_json(), 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="profibered", description="Exact invariants of fibered 3-manifolds and pair checks.")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized sampling and searches")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("alexander", help="twisted Alexander polynomials of a mapping torus")
    s.add_argument("--presentation", default="-")
    s.set_defaults(func=cmd_alexander)

    s = sub.add_parser("torsion", help="Reidemeister torsion of a mapping torus")
    s.add_argument("--presentation", default="-")
    s.set_defaults(func=cmd_torsion)

    s = sub.add_parser("nielsen", help="indexed Nielsen numbers of an orbit table")
    s.add_argument("--table", default="-")
    s.add_argument("--mmax", type=int, default=6)
    s.set_defaults(func=cmd_nielsen)

    s = sub.add_parser("zeta", help="zeta series and rational reconstruction")
    s.add_argument("--model", default="-")
    s.add_argument("--depth", type=int, default=8)
    s.add_argument("--omega", type=int, default=None, help="twist by the indicator of this power-map class")
    s.set_defaults(func=cmd_zeta)

    s = sub.add_parser("fried-cone", help="cone spanned by cycle classes of a transition graph")
    s.add_argument("--graph", default="-")
    s.add_argument("--max-len", type=int, default=6)
    s.set_defaults(func=cmd_fried_cone)

    s = sub.add_parser("norm-ball", help="cones and values of a norm ball")
    s.add_argument("--ball", default="-")
    s.add_argument("--phi", default=None, help="covector, comma separated")
    s.set_defaults(func=cmd_norm_ball)

    s = sub.add_parser("mc-rank", help="matrix coefficient module of a symbolic map")
    s.add_argument("--map", default="-")
    s.set_defaults(func=cmd_mc_rank)

    s = sub.add_parser("compare-reciprocal", help="compare reciprocal polynomials by cyclic resultants")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--mmax", type=int, default=10)
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("battery", help="run the correspondence checks on a pair")
    s.add_argument("--pair", default="-")
    s.add_argument("--check", action="append", choices=sorted(CHECKS), help="run only this check (repeatable)")
    s.add_argument("--phi", action="append", default=None, help="covector for norm_values, comma separated (repeatable)")
    s.add_argument("--mmax", type=int, default=None, help="period bound for nielsen")
    s.set_defaults(func=cmd_battery)
    return ap


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        payload, code = args.func(args)
    except InputError as exc:
        _emit({"error": str(exc)}, out)
        return 2
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        _emit({"error": f"invalid input: {exc}"}, out)
        return 2
    _emit(payload, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
