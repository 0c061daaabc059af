"""Command-line harness: named verification suites plus ad-hoc search,
construct, and analyze commands with machine-readable reports.

Exit codes: 0 pass, 1 fail, 2 inconclusive (a budget was hit), 64 usage
errors.  All numeric output is serialized exactly; reports for fixed
inputs and budgets are byte-identical across runs and worker counts
(suite wall times are reported but are not part of that guarantee).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import analysis, constructions, search
from .errors import HellylatError, WindowBudgetError
from .geometry import VPolytope
from .lattices import (
    CongruenceProduct,
    ExponentialLattice,
    IntegerLattice,
    LatticeSpec,
    Window,
    lattice_from_json_dict,
    points_in_polytope,
)
from .scalars import (
    QuadExt,
    ceil_log,
    compare,
    floor_sqrt,
    format_scalar,
    parse_scalar,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64

#: node budget unless HELLY_BUDGET_NODES or --budget-nodes says otherwise
DEFAULT_NODE_BUDGET = search.DEFAULT_NODE_BUDGET

#: effective defaults for every verification suite, printed by `list`
SUITE_DEFAULTS = {
    "thm1-bound": {},
    "thm2-hyperbola": {"cases": [["101/100", 2, 10], ["2", 2, 2], ["5/4", 3, 2]]},
    "fib-syndetic": {"identity_terms": 20, "prefix": 6},
    "thm3-pigeonhole": {"max_modulus": 7, "max_dimension": 3},
    "prop-mod3": {"window": [-1, 8], "workers": 1},
    "hol-cross": {"dmax": 6},
    "hol-reduction": {"count": 200, "bound": 4, "seed": 20260810},
    "seg-box": {"kmax": 5, "dmax": 3},
    "seg-ball": {"segment_ks": [5, 9, 17, 33, 65], "slope_ks": [17, 33, 65, 129],
                 "slope_range": ["0.47", "0.87"]},
    "width-simplex": {"radius": 2, "dims": [2, 3, 4]},
    "explat-window": {"alpha2_exponent": 6, "phi_exponent": 7, "size_cap": 12,
                      "workers": 1},
}

CONSTRUCTION_NAMES = [
    "hyperbola",
    "fibonacci-polygon",
    "fibonacci-syndetic",
    "mod3-octagon",
    "hollow-cross",
    "box",
    "ball",
    "dilated-simplex",
]


@dataclass
class VerifySuiteResult:
    """Per-claim pass/fail evidence for one named suite."""

    suite_id: str
    params: dict
    checks: list  # {"name", "status": pass|fail|inconclusive, "evidence"}
    wall_time_s: float

    @property
    def status(self) -> str:
        statuses = {c["status"] for c in self.checks}
        if "fail" in statuses:
            return "fail"
        if "inconclusive" in statuses:
            return "inconclusive"
        return "pass"

    @property
    def exit_code(self) -> int:
        return {"pass": EXIT_PASS, "fail": EXIT_FAIL,
                "inconclusive": EXIT_INCONCLUSIVE}[self.status]

    def to_json_dict(self) -> dict:
        return {
            "suite_id": self.suite_id,
            "params": self.params,
            "status": self.status,
            "checks": self.checks,
            "wall_time_s": round(self.wall_time_s, 3),
        }


def _check(name: str, ok: bool, evidence: dict) -> dict:
    return {"name": name, "status": "pass" if ok else "fail", "evidence": evidence}


def _inconclusive(name: str, evidence: dict) -> dict:
    return {"name": name, "status": "inconclusive", "evidence": evidence}


# -- suites -------------------------------------------------------------------


def _suite_thm1_bound(params: dict) -> list:
    phi = QuadExt(Fraction(1, 2), Fraction(1, 2), 5)
    cases = [
        ("2", Fraction(2), 5),
        ("3", Fraction(3), 5),
        ("phi", phi, 7),
        ("3/2", Fraction(3, 2), 9),
    ]
    checks = []
    for label, alpha, expected in cases:
        bound = 2 * ceil_log(alpha, alpha / (alpha - 1)) + 3
        checks.append(
            _check(
                f"bound(alpha={label})",
                bound == expected,
                {"alpha": format_scalar(alpha), "bound": bound, "expected": expected},
            )
        )
    return checks


def _suite_thm2_hyperbola(params: dict) -> list:
    checks = []
    for alpha_str, d, k in params["cases"]:
        alpha = parse_scalar(str(alpha_str))
        poly = constructions.hyperbola_polytope(alpha, int(d), int(k))
        expected = math.comb(int(k) + int(d) - 1, int(d) - 1)
        lattice = ExponentialLattice(alpha, int(d))
        verdict = analysis.is_empty_in(poly.vertices, lattice)
        evidence = {
            "alpha": format_scalar(alpha),
            "d": int(d),
            "k": int(k),
            "vertices": len(poly.vertices),
            "expected_vertices": expected,
            "empty": verdict.empty,
            "points_checked": verdict.points_checked,
            "sufficient_condition": constructions.hyperbola_emptiness_condition(
                alpha, int(d), int(k)
            ),
        }
        ok = len(poly.vertices) == expected and verdict.empty
        if isinstance(alpha, Fraction) and alpha != 2:
            k_formula = floor_sqrt(1 / (alpha - 1))
            evidence["floor_sqrt_rule"] = k_formula
        checks.append(_check(f"hyperbola({format_scalar(alpha)},{d},{k})", ok, evidence))
    return checks


def _suite_fib_syndetic(params: dict) -> list:
    checks = []
    ctx = constructions.fibonacci_context()
    terms = int(params["identity_terms"])
    identity_ok = True
    for i in range(1, terms + 1):
        gap = 2 * ctx.phi * ctx.fib(2 * i) - (2 * ctx.fib(2 * i + 1) - 1)
        expected = 1 - 2 * ctx.psi ** (2 * i)
        if gap != expected or not (
            compare(expected, 0) > 0 and compare(expected, 1) < 0
        ):
            identity_ok = False
            break
    checks.append(
        _check("distance-identity", identity_ok, {"terms": terms})
    )
    pts = constructions.fibonacci_polygon(terms + 1)
    slopes = [
        Fraction(pts[i + 1][1] - pts[i][1], pts[i + 1][0] - pts[i][0])
        for i in range(len(pts) - 1)
    ]
    decreasing = all(slopes[i + 1] < slopes[i] for i in range(len(slopes) - 1))
    checks.append(
        _check(
            "slopes-strictly-decreasing",
            decreasing,
            {"count": len(slopes), "first": str(slopes[0]), "last": str(slopes[-1])},
        )
    )
    n = int(params["prefix"])
    syn = constructions.fibonacci_syndetic(n)
    lo, hi = syn.window
    removed = set(syn.excluded)
    syndetic = all(not (m in removed and (m + 1) in removed) for m in range(lo, hi))
    checks.append(
        _check(
            "two-syndetic-on-window",
            syndetic,
            {"window": [lo, hi], "removed": len(syn.excluded)},
        )
    )
    verdict = analysis.is_empty_in(syn.polygon.vertices, syn.product)
    checks.append(
        _check(
            "prefix-hull-empty",
            verdict.empty,
            {"prefix": n, "points_checked": verdict.points_checked},
        )
    )
    return checks


def _suite_thm3_pigeonhole(params: dict) -> list:
    import itertools

    checks = []
    mmax = int(params["max_modulus"])
    dmax = int(params["max_dimension"])
    primes = [m for m in range(2, mmax + 1) if search.least_prime_factor(m) == m]
    scanned = 0
    first_failure = None
    for m in primes:
        for size in range(1, m + 1):
            for S in itertools.combinations(range(m), size):
                for d in range(1, dmax + 1):
                    if not search.pigeonhole_condition(size, m, d):
                        continue
                    scanned += 1
                    report = search.residue_pigeonhole_check(S, m, d)
                    if not report.verified and first_failure is None:
                        first_failure = report.to_json_dict()
    checks.append(
        _check(
            "condition-implies-verified",
            first_failure is None,
            {"primes": primes, "dmax": dmax, "instances": scanned,
             "first_failure": first_failure},
        )
    )
    neg = search.residue_pigeonhole_check([0, 1], 3, 2)
    checks.append(
        _check(
            "mod3-d2-counterexample",
            (not neg.condition_holds)
            and (not neg.verified)
            and neg.counterexample is not None,
            neg.to_json_dict(),
        )
    )
    return checks


def _suite_prop_mod3(params: dict) -> list:
    checks = []
    lattice = CongruenceProduct(frozenset({0, 1}), 3, 2)
    lo, hi = params["window"]
    window = Window.cube(int(lo), int(hi), 2)
    workers = int(params.get("workers", 1))
    octagon = constructions.mod3_octagon()
    verdict = analysis.is_empty_in(octagon.vertices, lattice)
    checks.append(
        _check(
            "octagon-empty",
            len(octagon.vertices) == 8 and verdict.empty,
            {"vertices": len(octagon.vertices),
             "points_checked": verdict.points_checked},
        )
    )
    budget = _node_budget(params)
    m3 = search.residue_multiplicity_search(
        lattice, window, (0, 0), 3, workers=workers, node_budget=budget
    )
    if m3.exhaustive:
        checks.append(
            _check(
                "multiplicity-3-refuted",
                m3.witness is None,
                m3.to_json_dict(),
            )
        )
    else:
        checks.append(_inconclusive("multiplicity-3-refuted", m3.to_json_dict()))
    m2 = search.residue_multiplicity_search(
        lattice, window, (0, 0), 2, workers=workers, node_budget=budget
    )
    ok = m2.witness is not None and analysis.is_empty_in(m2.witness, lattice).empty
    checks.append(_check("multiplicity-2-witness", ok, m2.to_json_dict()))
    return checks


def _suite_hol_cross(params: dict) -> list:
    checks = []
    for d in range(2, int(params["dmax"]) + 1):
        poly = constructions.hollow_cross(d)
        hollow = analysis.is_hollow(poly, IntegerLattice(d))
        from .geometry import is_simplicial

        ok = (
            len(poly.vertices) == 2 * d
            and hollow.empty
            and is_simplicial(poly)
        )
        checks.append(
            _check(
                f"cross-d{d}",
                ok,
                {"vertices": len(poly.vertices), "hollow": hollow.empty,
                 "simplicial": is_simplicial(poly)},
            )
        )
    return checks


def _suite_hol_reduction(params: dict) -> list:
    count = int(params["count"])
    bound = int(params["bound"])
    seed = int(params["seed"])
    per_dim = count // 2
    checks = []
    for d in (2, 3):
        polys = analysis.sample_hollow_simplicial_polytopes(
            per_dim, d, bound, seed=seed + d
        )
        lattice = IntegerLattice(d)
        failures = []
        for poly in polys:
            try:
                reduced = analysis.hollow_to_empty(poly)
            except HellylatError as err:
                failures.append({"input": poly.to_json_dict(), "error": str(err)})
                continue
            if len(reduced.vertices) != len(poly.vertices):
                failures.append({"input": poly.to_json_dict(),
                                 "error": "vertex count changed"})
            elif not analysis.is_empty_in(reduced.vertices, lattice).empty:
                failures.append({"input": poly.to_json_dict(),
                                 "error": "output not empty"})
            elif len(reduced.vertices) > 2**d:
                failures.append({"input": poly.to_json_dict(),
                                 "error": "more than 2^d vertices"})
        checks.append(
            _check(
                f"reduction-d{d}",
                not failures,
                {"samples": per_dim, "seed": seed + d, "failures": failures[:3]},
            )
        )
    return checks


def _suite_seg_box(params: dict) -> list:
    checks = []
    for d in range(1, int(params["dmax"]) + 1):
        for k in range(1, int(params["kmax"]) + 1):
            poly = constructions.box_polytope(k, d)
            pts = points_in_polytope(IntegerLattice(d), poly)
            length, _ = analysis.longest_segment(poly)
            ok = len(pts) == k**d and length == k - 1
            checks.append(
                _check(
                    f"box-k{k}-d{d}",
                    ok,
                    {"lattice_points": len(pts), "expected": k**d,
                     "longest_segment": length},
                )
            )
    return checks


def _suite_seg_ball(params: dict) -> list:
    checks = []
    for k in params["segment_ks"]:
        k = int(k)
        poly = constructions.ball_polytope(k, 2)
        length, _ = analysis.longest_segment(poly)
        checks.append(
            _check(
                f"ball-k{k}-segment",
                length <= k - 1,
                {"longest_segment": length, "bound": k - 1,
                 "vertices": len(poly.vertices)},
            )
        )
    ks = [int(k) for k in params["slope_ks"]]
    counts = [len(constructions.ball_polytope(k, 2).vertices) for k in ks]
    xs = [math.log(k) for k in ks]
    ys = [math.log(c) for c in counts]
    n = len(ks)
    xbar = sum(xs) / n
    ybar = sum(ys) / n
    slope = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys)) / sum(
        (x - xbar) ** 2 for x in xs
    )
    lo, hi = (float(Fraction(s)) for s in params["slope_range"])
    checks.append(
        _check(
            "vertex-growth-slope",
            lo <= slope <= hi,
            {"ks": ks, "vertex_counts": counts, "slope": round(slope, 4),
             "range": [lo, hi]},
        )
    )
    return checks


def _suite_width_simplex(params: dict) -> list:
    checks = []
    radius = int(params["radius"])
    for d in params["dims"]:
        d = int(d)
        result = analysis.lattice_width_search(
            constructions.dilated_simplex(d), radius
        )
        checks.append(
            _check(
                f"width-d{d}",
                compare(result.width, d) == 0,
                result.to_json_dict(),
            )
        )
    return checks


def _suite_explat_window(params: dict) -> list:
    checks = []
    workers = int(params.get("workers", 1))
    budget = _node_budget(params)
    cap = int(params["size_cap"])

    lattice2 = ExponentialLattice(Fraction(2), 2)
    w2 = Window.cube(0, int(params["alpha2_exponent"]), 2, exponents=True)
    report2 = search.max_empty_subset(
        lattice2, w2, size_cap=cap, node_budget=budget, workers=workers
    )
    if report2.wall_budget_hit:
        checks.append(_inconclusive("alpha2-max-5", report2.to_json_dict()))
    else:
        checks.append(
            _check(
                "alpha2-max-5",
                report2.max_empty_size == 5 and report2.exhaustive,
                report2.to_json_dict(),
            )
        )
    pentagons = search.empty_subsets_of_size(
        lattice2, w2, 5, node_budget=budget, workers=workers
    )
    matches = search.classify_pentagons(lattice2, pentagons)
    offenders = []
    for witness in pentagons:
        exps = frozenset(
            (lattice2.exponent_of(x), lattice2.exponent_of(y)) for x, y in witness
        )
        if search.pentagon_template_match(exps) is None:
            offenders.append(sorted(exps))
    checks.append(
        _check(
            "alpha2-pentagon-template",
            matches,
            {"pentagons": len(pentagons), "off_template": len(offenders),
             "off_template_exponents": offenders[:5]},
        )
    )

    phi = QuadExt(Fraction(1, 2), Fraction(1, 2), 5)
    lattice_phi = ExponentialLattice(phi, 2)
    wphi = Window.cube(0, int(params["phi_exponent"]), 2, exponents=True)
    report_phi = search.max_empty_subset(
        lattice_phi, wphi, size_cap=cap, node_budget=budget, workers=workers
    )
    if report_phi.wall_budget_hit:
        ok = report_phi.max_empty_size >= 7
        checks.append(
            _inconclusive("phi-max-7", report_phi.to_json_dict())
            if ok
            else _check("phi-max-7", False, report_phi.to_json_dict())
        )
    else:
        checks.append(
            _check(
                "phi-max-7",
                report_phi.max_empty_size == 7 and report_phi.exhaustive,
                report_phi.to_json_dict(),
            )
        )
    return checks


SUITES = {
    "thm1-bound": _suite_thm1_bound,
    "thm2-hyperbola": _suite_thm2_hyperbola,
    "fib-syndetic": _suite_fib_syndetic,
    "thm3-pigeonhole": _suite_thm3_pigeonhole,
    "prop-mod3": _suite_prop_mod3,
    "hol-cross": _suite_hol_cross,
    "hol-reduction": _suite_hol_reduction,
    "seg-box": _suite_seg_box,
    "seg-ball": _suite_seg_ball,
    "width-simplex": _suite_width_simplex,
    "explat-window": _suite_explat_window,
}


def _node_budget(params: dict) -> int:
    if "budget_nodes" in params and params["budget_nodes"] is not None:
        return int(params["budget_nodes"])
    env = os.environ.get("HELLY_BUDGET_NODES")
    if env:
        return int(env)
    return DEFAULT_NODE_BUDGET


def run_verify(suite_id: str, overrides: Optional[dict] = None) -> VerifySuiteResult:
    """Run one named suite with defaults or overrides."""
    if suite_id not in SUITES:
        raise HellylatError(f"unknown suite {suite_id!r}; see `list`")
    params = dict(SUITE_DEFAULTS[suite_id])
    if overrides:
        params.update({k: v for k, v in overrides.items() if v is not None})
    start = time.monotonic()
    checks = SUITES[suite_id](params)
    serializable = {
        k: (v if not isinstance(v, Fraction) else format_scalar(v))
        for k, v in params.items()
    }
    return VerifySuiteResult(
        suite_id, serializable, checks, time.monotonic() - start
    )


# -- argument plumbing --------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _load_lattice(spec: str) -> LatticeSpec:
    if spec.startswith("@"):
        with open(spec[1:], "r", encoding="utf-8") as fh:
            data = json.load(fh)
    else:
        data = json.loads(spec)
    return lattice_from_json_dict(data)


def _load_polytope(spec: str) -> VPolytope:
    if spec.startswith("@"):
        with open(spec[1:], "r", encoding="utf-8") as fh:
            data = json.load(fh)
    else:
        data = json.loads(spec)
    return VPolytope.from_json_dict(data)


def _parse_window(text: str, dim: int, exponents: bool) -> Window:
    parts = text.split(",")
    if len(parts) == 1:
        parts = parts * dim
    if len(parts) != dim:
        raise HellylatError(
            f"window has {len(parts)} axes, lattice has dimension {dim}"
        )
    axes = []
    for part in parts:
        lo_text, sep, hi_text = part.partition("..")
        if not sep:
            raise HellylatError(f"window axis {part!r} is not lo..hi")
        axes.append((parse_scalar(lo_text), parse_scalar(hi_text)))
    return Window(tuple(axes), exponents)


def _emit(data: dict):
    print(json.dumps(data, sort_keys=True, indent=2))


def _emit_csv(result: VerifySuiteResult):
    print("suite,check,status")
    for check in result.checks:
        print(f"{result.suite_id},{check['name']},{check['status']}")


def _cmd_verify(args) -> int:
    overrides = {}
    if args.override:
        for item in args.override:
            key, sep, value = item.partition("=")
            if not sep:
                raise HellylatError(f"override {item!r} is not key=value")
            overrides[key.replace("-", "_")] = json.loads(value)
    if args.alpha is not None or args.d is not None or args.k is not None:
        if args.suite != "thm2-hyperbola":
            raise HellylatError("--alpha/--d/--k apply to thm2-hyperbola only")
        overrides["cases"] = [[args.alpha or "2", args.d or 2, args.k or 2]]
    if args.dmax is not None:
        overrides["dmax"] = args.dmax
    if args.workers is not None:
        overrides["workers"] = args.workers
    if args.budget_nodes is not None:
        overrides["budget_nodes"] = args.budget_nodes
    result = run_verify(args.suite, overrides)
    if args.format == "csv":
        _emit_csv(result)
    else:
        _emit(result.to_json_dict())
    return result.exit_code


def _cmd_search(args) -> int:
    lattice = _load_lattice(args.lattice)
    if args.expwindow:
        window = _parse_window(args.expwindow, lattice.dim, exponents=True)
    elif args.window:
        window = _parse_window(args.window, lattice.dim, exponents=False)
    else:
        raise HellylatError("search needs --window or --expwindow")
    budget = args.budget_nodes
    if budget is None:
        env = os.environ.get("HELLY_BUDGET_NODES")
        budget = int(env) if env else DEFAULT_NODE_BUDGET
    report = search.max_empty_subset(
        lattice,
        window,
        size_cap=args.cap,
        target=args.target,
        node_budget=budget,
        workers=args.workers,
        checkpoint_path=args.checkpoint,
    )
    _emit(report.to_json_dict())
    return EXIT_INCONCLUSIVE if report.wall_budget_hit else EXIT_PASS


def _cmd_construct(args) -> int:
    name = args.name
    extra: dict = {}
    if name == "hyperbola":
        alpha = parse_scalar(args.alpha or "2")
        poly = constructions.hyperbola_polytope(alpha, args.d or 2, args.k or 2)
        extra["sufficient_condition"] = constructions.hyperbola_emptiness_condition(
            alpha, args.d or 2, args.k or 2
        )
    elif name == "fibonacci-polygon":
        pts = constructions.fibonacci_polygon(args.n or 6)
        _emit({"points": [[format_scalar(c) for c in p] for p in pts]})
        return EXIT_PASS
    elif name == "fibonacci-syndetic":
        syn = constructions.fibonacci_syndetic(args.n or 6)
        payload = {
            "polygon": syn.polygon.to_json_dict(),
            "product": syn.product.to_json_dict(),
            "excluded": list(syn.excluded),
            "window": list(syn.window),
        }
        if args.verify:
            verdict = analysis.is_empty_in(syn.polygon.vertices, syn.product)
            payload["empty"] = verdict.empty
            if not verdict.empty:
                _emit(payload)
                return EXIT_FAIL
        _emit(payload)
        return EXIT_PASS
    elif name == "mod3-octagon":
        poly = constructions.mod3_octagon()
        if args.verify:
            lattice = CongruenceProduct(frozenset({0, 1}), 3, 2)
            extra["empty"] = analysis.is_empty_in(poly.vertices, lattice).empty
            if not extra["empty"]:
                return EXIT_FAIL
    elif name == "hollow-cross":
        d = args.d or 3
        poly = constructions.hollow_cross(d)
        if args.verify:
            from .geometry import is_simplicial

            extra["hollow"] = analysis.is_hollow(poly, IntegerLattice(d)).empty
            extra["simplicial"] = is_simplicial(poly)
            if not (extra["hollow"] and extra["simplicial"]):
                return EXIT_FAIL
    elif name == "box":
        poly = constructions.box_polytope(args.k or 3, args.d or 2)
    elif name == "ball":
        poly = constructions.ball_polytope(args.k or 5, args.d or 2)
    elif name == "dilated-simplex":
        d = args.d or 2
        poly = constructions.dilated_simplex(d)
        if args.verify:
            extra["hollow"] = analysis.is_hollow(poly, IntegerLattice(d)).empty
            if not extra["hollow"]:
                return EXIT_FAIL
    else:
        raise HellylatError(f"unknown construction {name!r}")
    payload = poly.to_json_dict()
    payload.update(extra)
    _emit(payload)
    return EXIT_PASS


def _cmd_analyze(args) -> int:
    op = args.op
    if op == "width":
        poly = _load_polytope(args.polytope)
        result = analysis.lattice_width_search(poly, args.radius or 5)
        _emit(result.to_json_dict())
        return EXIT_PASS
    if op == "directional-width":
        poly = _load_polytope(args.polytope)
        direction = tuple(int(c) for c in args.direction.split(","))
        width = analysis.directional_width(poly, direction)
        _emit({"direction": list(direction), "width": format_scalar(width)})
        return EXIT_PASS
    if op == "segment":
        poly = _load_polytope(args.polytope)
        length, witness = analysis.longest_segment(poly)
        _emit(
            {
                "length": length,
                "witness": None
                if witness is None
                else [[format_scalar(c) for c in p] for p in witness],
            }
        )
        return EXIT_PASS
    if op == "hollow":
        poly = _load_polytope(args.polytope)
        lattice = _load_lattice(args.lattice) if args.lattice else IntegerLattice(
            poly.dim
        )
        verdict = analysis.is_hollow(poly, lattice)
        _emit(verdict.to_json_dict())
        return EXIT_PASS if verdict.empty else EXIT_FAIL
    if op == "empty":
        if args.points:
            data = (
                json.load(open(args.points[1:], encoding="utf-8"))
                if args.points.startswith("@")
                else json.loads(args.points)
            )
            pts = [tuple(parse_scalar(str(c)) for c in row) for row in data]
        else:
            pts = list(_load_polytope(args.polytope).vertices)
        lattice = _load_lattice(args.lattice) if args.lattice else IntegerLattice(
            len(pts[0])
        )
        verdict = analysis.is_empty_in(pts, lattice)
        _emit(verdict.to_json_dict())
        return EXIT_PASS if verdict.empty else EXIT_FAIL
    if op == "reduce":
        poly = _load_polytope(args.polytope)
        reduced = analysis.hollow_to_empty(poly)
        _emit(reduced.to_json_dict())
        return EXIT_PASS
    raise HellylatError(f"unknown analyze op {op!r}")


def _cmd_list(_args) -> int:
    _emit(
        {
            "suites": SUITE_DEFAULTS,
            "constructions": CONSTRUCTION_NAMES,
            "default_node_budget": DEFAULT_NODE_BUDGET,
            "env": {"HELLY_BUDGET_NODES": "overrides the default node budget"},
        }
    )
    return EXIT_PASS


def build_parser() -> _Parser:
    parser = _Parser(prog="hellylat", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run a named verification suite")
    p_verify.add_argument("suite", choices=sorted(SUITES))
    p_verify.add_argument("--format", choices=["json", "csv"], default="json")
    p_verify.add_argument("--alpha")
    p_verify.add_argument("--d", type=int)
    p_verify.add_argument("--k", type=int)
    p_verify.add_argument("--dmax", type=int)
    p_verify.add_argument("--workers", type=int)
    p_verify.add_argument("--budget-nodes", type=int, dest="budget_nodes")
    p_verify.add_argument(
        "--override", action="append", metavar="KEY=JSON",
        help="set any suite parameter"
    )

    p_search = sub.add_parser("search", help="maximum empty subset in a window")
    p_search.add_argument("--lattice", required=True, help="inline JSON or @file")
    p_search.add_argument("--window", help="per-axis lo..hi, comma separated")
    p_search.add_argument("--expwindow", help="exponent window lo..hi")
    p_search.add_argument("--cap", type=int, default=search.DEFAULT_SIZE_CAP)
    p_search.add_argument("--target", type=int)
    p_search.add_argument("--budget-nodes", type=int, dest="budget_nodes")
    p_search.add_argument("--workers", type=int, default=1)
    p_search.add_argument(
        "--checkpoint", help="JSON checkpoint file for resuming partitions"
    )

    p_construct = sub.add_parser("construct", help="emit a named construction")
    p_construct.add_argument("name", choices=CONSTRUCTION_NAMES)
    p_construct.add_argument("--alpha")
    p_construct.add_argument("--d", type=int)
    p_construct.add_argument("--k", type=int)
    p_construct.add_argument("--n", type=int)
    p_construct.add_argument("--verify", action="store_true")

    p_analyze = sub.add_parser("analyze", help="run one analysis operation")
    p_analyze.add_argument(
        "op",
        choices=["width", "directional-width", "segment", "hollow", "empty", "reduce"],
    )
    p_analyze.add_argument("polytope", nargs="?", help="polytope JSON or @file")
    p_analyze.add_argument("--lattice", help="lattice JSON or @file")
    p_analyze.add_argument("--points", help="point list JSON or @file")
    p_analyze.add_argument("--radius", type=int)
    p_analyze.add_argument("--direction", help="integer vector, comma separated")

    sub.add_parser("list", help="print suites, defaults, and constructions")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args, extra = parser.parse_known_args(argv)
        # argparse cannot place a positional after option flags, so accept
        # `analyze width --radius 2 @file` by claiming the leftover token
        if extra:
            if (
                args.command == "analyze"
                and len(extra) == 1
                and getattr(args, "polytope", None) is None
            ):
                args.polytope = extra[0]
            else:
                parser.error(f"unrecognized arguments: {' '.join(extra)}")
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    handlers = {
        "verify": _cmd_verify,
        "search": _cmd_search,
        "construct": _cmd_construct,
        "analyze": _cmd_analyze,
        "list": _cmd_list,
    }
    try:
        return handlers[args.command](args)
    except WindowBudgetError as err:
        print(f"budget exhausted: {err}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except HellylatError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (json.JSONDecodeError, OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
