"""Pass/fail checks of the profinite invariance statements on a candidate pair.

A pass means the pair is consistent with a correspondence at the working
precision; it never certifies that the two manifolds are profinitely
isomorphic.
"""

from __future__ import annotations

import os
import random
from math import gcd
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..cones import DegenerateSpecialization, cone_correspondence, norm_cones
from ..dynamics import fried_cone, nielsen_numbers, stretch_estimate
from ..exact.linalg import is_unimodular
from ..fibered import alexander_polynomials, fiberedness_evidence
from ..fibered.homology import torsion_from_deltas
from ..profinite import NotRankOne, PrecisionError, dual_specialize, generator_residue, ideal_equal, mc_module, rank_one_factor
from .pairs import PairSpec, Side

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"

DEFAULT_LADDER = [(2, 2), (3, 3), (5, 4), (7, 6), (4, 12)]
LADDER_ENV = "PROFIBERED_LADDER"


@dataclass
class CheckResult:
    check: str
    verdict: str
    reason: str = ""
    witness: Optional[Dict] = None
    details: Dict = field(default_factory=dict)

    def to_json(self) -> Dict:
        out = {"check": self.check, "verdict": self.verdict}
        if self.reason:
            out["reason"] = self.reason
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        return out


@dataclass
class BatteryReport:
    pair: str
    results: List[CheckResult]

    @property
    def failed(self) -> List[str]:
        return [r.check for r in self.results if r.verdict == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failed

    def verdict(self, check: str) -> str:
        return next(r.verdict for r in self.results if r.check == check)

    def result(self, check: str) -> CheckResult:
        return next(r for r in self.results if r.check == check)

    def to_json(self) -> Dict:
        return {
            "pair": self.pair,
            "summary": PASS if self.ok else FAIL,
            "checks": [r.to_json() for r in self.results],
            "note": "a pass is consistent with a correspondence at this precision, not a proof of one",
        }


def _ints(v) -> List[str]:
    return [str(x) for x in v]


def ladder_from_env(default: Sequence[Tuple[int, int]] = DEFAULT_LADDER) -> List[Tuple[int, int]]:
    """``PROFIBERED_LADDER="l:d,l:d"`` overrides the default ladder."""
    raw = os.environ.get(LADDER_ENV)
    if not raw:
        return list(default)
    out = []
    for part in raw.split(","):
        l, d = part.split(":")
        out.append((int(l), int(d)))
    return out


# -- cone and norm checks -----------------------------------------------------------


def _seminorm(p: PairSpec) -> Optional[str]:
    for side, label in ((p.A, "A"), (p.B, "B")):
        if not side.ball.is_norm():
            return f"side {label} ball is a seminorm; correspondences are only checked for norms"
    return None


def _pullback(p: PairSpec):
    psi = p.homology_map()
    if psi is None:
        return None, "no homology map and the two sides have different dimensions"
    return dual_specialize(psi, p.specialization(psi)), ""


def battery_norm_cones(p: PairSpec) -> CheckResult:
    name = "norm_cones"
    if p.A.ball is None or p.B.ball is None:
        return CheckResult(name, SKIPPED, "norm ball missing")
    why = _seminorm(p)
    if why:
        return CheckResult(name, SKIPPED, why)
    T, why = _pullback(p)
    if T is None:
        return CheckResult(name, SKIPPED, why)
    first = None
    for sign in (1, -1):
        Ts = [[sign * x for x in r] for r in T]
        try:
            res = cone_correspondence(p.A.ball, p.B.ball, Ts)
        except DegenerateSpecialization:
            return CheckResult(name, SKIPPED, "degenerate specialization")
        if res.ok:
            return CheckResult(name, PASS, details={"sign": sign, "matching": [list(m) for m in res.matching]})
        if first is None:
            first = res
    return CheckResult(name, FAIL, "no cone correspondence for either sign", witness=first.witness)


def _sample(n: int, seed: int) -> List[Tuple[int, ...]]:
    if n <= 3:
        pts = [v for v in product(range(-2, 3), repeat=n) if any(v)]
    else:
        pts = []
        for i in range(n):
            for j in range(i, n):
                for s in (1, -1):
                    v = [0] * n
                    v[i] += 1
                    v[j] += s
                    if any(v):
                        pts.append(tuple(v))
    rng = random.Random(seed)
    pts += [tuple(rng.randint(-5, 5) for _ in range(n)) for _ in range(10)]
    return sorted({v for v in pts if any(v)}, key=lambda v: (sum(abs(x) for x in v), v))


def _apply(T, phi) -> List[Fraction]:
    return [sum((Fraction(T[i][j]) * phi[j] for j in range(len(phi))), Fraction(0)) for i in range(len(T))]


def _primitive(v) -> bool:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g == 1


def _fibered_value(side: Side, label: str) -> Optional[Dict]:
    """Mismatch between the norm of the fibered class and ``-chi(fiber)``."""
    if side.fibered_class is None or side.ball is None or side.presentation is None:
        return None
    phi = side.fibered_class
    cones = [nc for nc in norm_cones(side.ball) if nc.fibered and nc.cone.interior_contains(phi)]
    if not cones or not _primitive(phi):
        return {"side": label, "phi": _ints(phi), "problem": "fibered class is not a primitive class in a fibered cone"}
    value = side.ball.norm(phi)
    chi = side.presentation.surface.euler_characteristic
    if value != -chi:
        return {"side": label, "phi": _ints(phi), "norm": str(value), "minus_chi": str(-chi)}
    return None


def battery_norm_values(p: PairSpec, seed: int = 0, phis: Optional[Sequence[Sequence[int]]] = None) -> CheckResult:
    name = "norm_values"
    if p.A.ball is None or p.B.ball is None:
        return CheckResult(name, SKIPPED, "norm ball missing")
    why = _seminorm(p)
    if why:
        return CheckResult(name, SKIPPED, why)
    T, why = _pullback(p)
    if T is None:
        return CheckResult(name, SKIPPED, why)
    sample = [tuple(int(x) for x in v) for v in phis] if phis is not None else _sample(p.B.ball.n, seed)
    first = None
    ok_sign = None
    for sign in (1, -1):
        bad = None
        for phi in sample:
            pulled = [sign * x for x in _apply(T, phi)]
            a, b = p.A.ball.norm(pulled), p.B.ball.norm(phi)
            if a != b:
                bad = {"phi": _ints(phi), "pullback": _ints(pulled), "norm_A": str(a), "norm_B": str(b)}
                break
        if bad is None:
            ok_sign = sign
            break
        if first is None:
            first = bad
    if ok_sign is None:
        return CheckResult(name, FAIL, "norms differ for both signs", witness=first)
    for side, label in ((p.A, "A"), (p.B, "B")):
        w = _fibered_value(side, label)
        if w is not None:
            return CheckResult(name, FAIL, "fibered class norm differs from minus the Euler characteristic", witness=w)
    return CheckResult(name, PASS, details={"sign": ok_sign, "sample_size": len(sample)})


# -- torsion ------------------------------------------------------------------------


def _deltas(p: PairSpec, side: Side, label: str):
    fp = side.presentation
    if p.quotient is not None:
        fp = fp.with_rep(p.quotient.representation(fp, label))
    return fp, alexander_polynomials(fp)


def battery_torsion(p: PairSpec) -> CheckResult:
    name = "torsion"
    if p.A.presentation is None or p.B.presentation is None:
        return CheckResult(name, SKIPPED, "presentation missing")
    (fa, da), (fb, db) = _deltas(p, p.A, "A"), _deltas(p, p.B, "B")
    for fp, d, label in ((fa, da, "A"), (fb, db, "B")):
        if d[1].is_zero() or not fiberedness_evidence(fp, 2) and not fiberedness_evidence(fp, 3):
            return CheckResult(name, SKIPPED, f"side {label} is not fibered at the twisted level")
    ta, tb = torsion_from_deltas(da), torsion_from_deltas(db)
    details = {"tau_A": str(ta), "tau_B": str(tb)}
    if not ta.doteq(tb, "Q"):
        w = {
            "tau_A": str(ta),
            "tau_B": str(tb),
            "delta1_A": str(da[1]),
            "delta1_B": str(db[1]),
            "delta1_A_at_1": str(da[1](1)),
            "delta1_B_at_1": str(db[1](1)),
        }
        return CheckResult(name, FAIL, "torsions differ up to units", witness=w, details=details)
    ladder = p.ladder if p.ladder is not None else ladder_from_env()
    rungs = []
    for l, d in ladder:
        if p.mu.modulus % d:
            rungs.append({"l": l, "d": d, "status": "skipped: d does not divide the precision"})
            continue
        for n in range(3):
            a = da[n].normalized()
            b = db[n].normalized()
            try:
                same = ideal_equal(a, b, p.mu, l, d)
            except PrecisionError as exc:
                rungs.append({"l": l, "d": d, "status": f"skipped: {exc}"})
                break
            if not same:
                w = {"n": n, "l": l, "d": d, "P_A": str(a), "P_B": str(b), "mu": p.mu.to_json()}
                return CheckResult(name, FAIL, "principal ideals differ", witness=w, details=details)
        else:
            rungs.append({"l": l, "d": d, "status": "equal"})
    details["ladder"] = rungs
    return CheckResult(name, PASS, details=details)


# -- Nielsen numbers ------------------------------------------------------------------


def battery_nielsen(p: PairSpec, m_max: Optional[int] = None) -> CheckResult:
    name = "nielsen"
    if p.A.orbits is None or p.B.orbits is None:
        return CheckResult(name, SKIPPED, "orbit table missing")
    m_max = m_max or p.m_max
    for m in range(1, m_max + 1):
        na, nb = nielsen_numbers(p.A.orbits, m), nielsen_numbers(p.B.orbits, m)
        if na.nu != nb.nu:
            i = min(set(na.nu) ^ set(nb.nu) | {k for k in na.nu if na.nu.get(k) != nb.nu.get(k)})
            w = {"m": m, "i": i, "nu_A": str(na.nu.get(i, 0)), "nu_B": str(nb.nu.get(i, 0))}
            return CheckResult(name, FAIL, "indexed Nielsen numbers differ", witness=w)
    details = {
        "N_A": [str(e.N) for e in stretch_estimate(p.A.orbits, m_max)],
        "N_B": [str(e.N) for e in stretch_estimate(p.B.orbits, m_max)],
        "stretch_lower_A": [str(e.lower) for e in stretch_estimate(p.A.orbits, m_max)],
        "stretch_lower_B": [str(e.lower) for e in stretch_estimate(p.B.orbits, m_max)],
    }
    return CheckResult(name, PASS, details=details)


# -- matrix coefficients ----------------------------------------------------------------


def battery_mc(psi) -> CheckResult:
    name = "mc"
    if psi is None:
        return CheckResult(name, SKIPPED, "no homology map")
    mc = mc_module(psi)
    details = {"rank": mc.rank}
    try:
        z, F = rank_one_factor(psi)
    except NotRankOne:
        return CheckResult(name, FAIL, "not rank one", witness={"rank": mc.rank, "basis": [_ints(b) for b in mc.basis]}, details=details)
    details.update({"generator": {k: str(v) for k, v in z.items()}, "F": [_ints(r) for r in F]})
    details["F_unimodular"] = len(F) == len(F[0]) and is_unimodular(F) if F and F[0] else False
    res = generator_residue(psi, z)
    if res is None:
        return CheckResult(name, FAIL, "generator residue unknown", witness={"generator": details["generator"]}, details=details)
    details["generator_residue"] = res.to_json()
    if not res.is_unit:
        return CheckResult(name, FAIL, "generator not a unit", witness={"residue": res.to_json()}, details=details)
    details["shape"] = "unit-regular"
    return CheckResult(name, PASS, details=details)


# -- Fried cone versus fibered cone ---------------------------------------------------------


def battery_fried(p: PairSpec) -> CheckResult:
    """Cycle classes of the flow are nonnegative on the fibered cone containing
    the fibration class."""
    name = "fried_dual"
    ran = False
    details = {}
    for side, label in ((p.A, "A"), (p.B, "B")):
        if side.graph is None or side.ball is None or side.fibered_class is None:
            continue
        ran = True
        fc = fried_cone(side.graph, p.fried_len)
        cones = [nc for nc in norm_cones(side.ball) if nc.cone.interior_contains(side.fibered_class)]
        if not cones:
            return CheckResult(name, FAIL, "fibration class is not interior to a norm cone", witness={"side": label, "phi": _ints(side.fibered_class)})
        nc = cones[0]
        for phi in list(nc.cone.rays) + [tuple(-x for x in l) for l in nc.cone.lines] + list(nc.cone.lines):
            for h in fc.cone.rays:
                if sum(a * b for a, b in zip(phi, h)) < 0:
                    w = {"side": label, "covector": _ints(phi), "cycle_class": _ints(h)}
                    return CheckResult(name, FAIL, "a cycle class pairs negatively with the fibered cone", witness=w)
        details[label] = {"fried_rays": [_ints(r) for r in fc.cone.rays], "stabilized": fc.stabilized, "norm_cone": nc.index}
    if not ran:
        return CheckResult(name, SKIPPED, "graph, ball or fibration class missing")
    return CheckResult(name, PASS, details=details)


CHECKS: Dict[str, Callable] = {
    "fried_dual": lambda p, seed: battery_fried(p),
    "mc": lambda p, seed: battery_mc(p.homology_map()),
    "nielsen": lambda p, seed: battery_nielsen(p),
    "norm_cones": lambda p, seed: battery_norm_cones(p),
    "norm_values": lambda p, seed: battery_norm_values(p, seed),
    "torsion": lambda p, seed: battery_torsion(p),
}


def run_battery(p: PairSpec, seed: int = 0, checks: Optional[Sequence[str]] = None) -> BatteryReport:
    """Run the requested checks (all by default); results sorted by name."""
    names = sorted(checks) if checks else sorted(CHECKS)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks {unknown}")
    return BatteryReport(p.name, [CHECKS[n](p, seed) for n in names])
