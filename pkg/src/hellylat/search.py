"""Exhaustive pruned search for maximum empty subsets in finite windows,
plus the residue-arithmetic checks for congruence-set bounds.

The planar engine precomputes every orientation sign among the window's
lattice points into a flat table and turns half-planes and open segments
into bitmasks, so the depth-first search extends hulls with a handful of
integer bit operations per candidate.  Emptiness is hereditary (every
subset of an empty set is empty), which makes the canonical-order DFS with
dead-branch pruning exhaustive.  Searches partition by first point; the
partitions share nothing, so serial and parallel runs explore the same
tree and produce identical reports.
"""

from __future__ import annotations

import json
import multiprocessing
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .analysis import is_empty_in
from .errors import (
    InvariantViolationError,
    PreconditionError,
    WindowBudgetError,
)
from .geometry import Point
from .lattices import (
    CongruenceProduct,
    ExponentialLattice,
    IntegerLattice,
    LatticeSpec,
    Window,
    enumerate_window,
)
from .scalars import QuadExt, compare, format_scalar

#: defaults shared with the CLI
DEFAULT_SIZE_CAP = 12
DEFAULT_NODE_BUDGET = 10**9
#: the planar engine precomputes an n^3 orientation table; cap the window
SEARCH_WINDOW_CAP = 128
#: progress note to stderr every this many nodes
PROGRESS_INTERVAL = 10**7


@dataclass(frozen=True)
class SearchReport:
    """Window-restricted maximum-empty-subset search outcome.

    `exhaustive` is True only when the pruned enumeration covered the whole
    window: no node budget hit, no early target stop, and the maximum came
    in under the size cap.
    """

    lattice: LatticeSpec
    window: Window
    size_cap: int
    target: Optional[int]
    max_empty_size: int
    witness: tuple
    exhaustive: bool
    nodes_explored: int
    wall_budget_hit: bool

    def to_json_dict(self) -> dict:
        return {
            "lattice": self.lattice.to_json_dict(),
            "window": self.window.to_json_dict(),
            "size_cap": self.size_cap,
            "target": self.target,
            "max_empty_size": self.max_empty_size,
            "witness": [[format_scalar(c) for c in p] for p in self.witness],
            "exhaustive": self.exhaustive,
            "nodes_explored": self.nodes_explored,
            "wall_budget_hit": self.wall_budget_hit,
        }


@dataclass(frozen=True)
class MultiplicityResult:
    """Outcome of searching for an empty subset with many vertices in one
    residue class; `witness` is None after an exhaustive refutation."""

    witness: Optional[tuple]
    exhaustive: bool
    nodes_explored: int

    def to_json_dict(self) -> dict:
        return {
            "witness": None
            if self.witness is None
            else [[format_scalar(c) for c in p] for p in self.witness],
            "exhaustive": self.exhaustive,
            "nodes_explored": self.nodes_explored,
        }


@dataclass(frozen=True)
class PigeonholeReport:
    """Exhaustive verification of the congruence pigeonhole invariant."""

    residues: tuple
    modulus: int
    dimension: int
    condition_holds: bool
    verified: bool
    counterexample: Optional[tuple]  # (start residue vector, step vector)

    def to_json_dict(self) -> dict:
        return {
            "residues": list(self.residues),
            "modulus": self.modulus,
            "dimension": self.dimension,
            "condition_holds": self.condition_holds,
            "verified": self.verified,
            "counterexample": None
            if self.counterexample is None
            else [list(self.counterexample[0]), list(self.counterexample[1])],
        }


# -- planar fast table -------------------------------------------------------


def _quad_sign(a: int, b: int, d: int) -> int:
    """Sign of a + b*sqrt(d) for integers a, b."""
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return 1 if b > 0 else -1
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    lhs = a * a
    rhs = d * b * b
    if a > 0:
        return 1 if lhs > rhs else -1
    return 1 if rhs > lhs else -1


def _scaled_coords(points: Sequence[Point]):
    """Clear denominators: returns ('int', [(x, y)]) or ('quad', d, flat)."""
    quad_d = None
    dens = []
    for p in points:
        for c in p:
            if isinstance(c, QuadExt):
                if quad_d is not None and quad_d != c.d:
                    raise PreconditionError("mixed quadratic fields in one window")
                quad_d = c.d
                dens.append(c.a.denominator)
                dens.append(c.b.denominator)
            else:
                dens.append(Fraction(c).denominator)
    den = 1
    for q in dens:
        den = den * q // _gcd(den, q)
    if quad_d is None:
        coords = [
            (int(Fraction(p[0]) * den), int(Fraction(p[1]) * den)) for p in points
        ]
        return "int", None, coords
    flat = []
    for p in points:
        entry = []
        for c in p:
            if isinstance(c, QuadExt):
                entry.extend((int(c.a * den), int(c.b * den)))
            else:
                entry.extend((int(Fraction(c) * den), 0))
        flat.append(tuple(entry))
    return "quad", quad_d, flat


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@dataclass
class _FastTable:
    """Orientation table plus half-plane / open-segment bitmasks; contains
    nothing but integers, so it ships to worker processes cheaply."""

    n: int
    orient: bytearray  # sign + 1 at index (i*n + j)*n + k
    left: list  # left[i][j]: bitmask of k strictly left of i->j
    between: list  # between[i][j]: bitmask of k strictly inside segment (i, j)


def _build_table(points: Sequence[Point]) -> _FastTable:
    n = len(points)
    if n > SEARCH_WINDOW_CAP:
        raise WindowBudgetError(
            f"window holds {n} points, above the search cap of {SEARCH_WINDOW_CAP}"
        )
    kind, quad_d, coords = _scaled_coords(points)
    orient = bytearray(n * n * n)
    if kind == "int":

        def cross(i: int, j: int, k: int) -> int:
            xi, yi = coords[i]
            xj, yj = coords[j]
            xk, yk = coords[k]
            v = (xj - xi) * (yk - yi) - (yj - yi) * (xk - xi)
            return (v > 0) - (v < 0)

    else:

        def cross(i: int, j: int, k: int) -> int:
            xa_i, xb_i, ya_i, yb_i = coords[i]
            xa_j, xb_j, ya_j, yb_j = coords[j]
            xa_k, xb_k, ya_k, yb_k = coords[k]
            ua, ub = xa_j - xa_i, xb_j - xb_i
            va, vb = ya_k - ya_i, yb_k - yb_i
            pa = ua * va + quad_d * ub * vb
            pb = ua * vb + ub * va
            ua2, ub2 = ya_j - ya_i, yb_j - yb_i
            va2, vb2 = xa_k - xa_i, xb_k - xb_i
            qa = ua2 * va2 + quad_d * ub2 * vb2
            qb = ua2 * vb2 + ub2 * va2
            return _quad_sign(pa - qa, pb - qb, quad_d)

    nn = n * n
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                s = cross(i, j, k)
                b_pos = s + 1
                b_neg = 1 - s
                orient[(i * n + j) * n + k] = b_pos
                orient[(j * n + k) * n + i] = b_pos
                orient[(k * n + i) * n + j] = b_pos
                orient[(j * n + i) * n + k] = b_neg
                orient[(i * n + k) * n + j] = b_neg
                orient[(k * n + j) * n + i] = b_neg
    left = [[0] * n for _ in range(n)]
    between = [[0] * n for _ in range(n)]
    for i in range(n):
        row_i = i * nn
        for j in range(n):
            if i == j:
                continue
            base = row_i + j * n
            lm = 0
            bm = 0
            lo, hi = (i, j) if i < j else (j, i)
            for k in range(n):
                if k == i or k == j:
                    continue
                s = orient[base + k]
                if s == 2:
                    lm |= 1 << k
                elif s == 1 and lo < k < hi:
                    bm |= 1 << k
            left[i][j] = lm
            between[i][j] = bm
    return _FastTable(n, orient, left, between)


def _extend_hull(table: _FastTable, hull: list, k: int) -> Optional[list]:
    """Add point k to a strictly convex, empty hull; None when the result
    would lose a vertex or swallow a lattice point."""
    n_hull = len(hull)
    left = table.left
    between = table.between
    if n_hull == 1:
        a = hull[0]
        if between[a][k]:
            return None
        return [a, k]
    if n_hull == 2:
        a, b = hull
        s = table.orient[(a * table.n + b) * table.n + k] - 1
        if s == 0:
            return None
        u, v, w = (a, b, k) if s > 0 else (a, k, b)
        occupied = (
            (left[u][v] & left[v][w] & left[w][u])
            | between[u][v]
            | between[v][w]
            | between[w][u]
        )
        if occupied:
            return None
        return [u, v, w]
    orient = table.orient
    n = table.n
    visible = -1
    for t in range(n_hull):
        u = hull[t]
        w = hull[(t + 1) % n_hull]
        s = orient[(u * n + w) * n + k]
        if s == 1:  # collinear: k would erase a vertex or sit on an edge
            return None
        if s == 0:  # strictly outside this edge
            if visible >= 0:
                return None
            visible = t
    if visible < 0:
        return None
    u = hull[visible]
    w = hull[(visible + 1) % n_hull]
    occupied = (
        (left[u][k] & left[k][w] & left[w][u]) | between[u][k] | between[k][w]
    )
    if occupied:
        return None
    return hull[: visible + 1] + [k] + hull[visible + 1 :]


class _Stop(Exception):
    pass


@dataclass
class _PartitionOutcome:
    first: int
    best_size: int
    best_witness: Optional[tuple]
    nodes: int
    budget_hit: bool
    target_hit: bool
    collected: list = field(default_factory=list)
    qualifying: Optional[tuple] = None  # multiplicity mode


def _run_partition(
    table: _FastTable,
    first: int,
    size_cap: int,
    target: Optional[int],
    node_budget: int,
    collect_size: Optional[int] = None,
    res_mask: int = 0,
    multiplicity: Optional[int] = None,
    suffix_res: Optional[list] = None,
) -> _PartitionOutcome:
    out = _PartitionOutcome(first, 0, None, 0, False, False)
    n = table.n
    popcount = int.bit_count

    def record(t_tuple, size):
        if size > out.best_size:
            out.best_size = size
            out.best_witness = t_tuple
        if collect_size is not None and size == collect_size:
            out.collected.append(t_tuple)
        if multiplicity is not None and out.qualifying is None:
            mask = 0
            for idx in t_tuple:
                mask |= 1 << idx
            if popcount(mask & res_mask) >= multiplicity:
                out.qualifying = t_tuple
        if target is not None and size >= target:
            out.target_hit = True
            raise _Stop

    def bump():
        out.nodes += 1
        if out.nodes % PROGRESS_INTERVAL == 0:
            print(
                f"search partition {first}: {out.nodes} nodes",
                file=sys.stderr,
                flush=True,
            )
        if out.nodes >= node_budget:
            out.budget_hit = True
            raise _Stop

    depth_cap = size_cap if collect_size is None else min(size_cap, collect_size)

    def rec(hull: list, t_tuple: tuple, last: int, size: int):
        if size >= depth_cap:
            return
        if multiplicity is not None:
            have = popcount(_mask_of(t_tuple) & res_mask)
            if have + suffix_res[last + 1] < multiplicity:
                return
        for k in range(last + 1, n):
            new_hull = _extend_hull(table, hull, k)
            if new_hull is None:
                continue
            bump()
            new_t = t_tuple + (k,)
            record(new_t, size + 1)
            rec(new_hull, new_t, k, size + 1)

    def _mask_of(t_tuple):
        m = 0
        for idx in t_tuple:
            m |= 1 << idx
        return m

    try:
        bump()
        record((first,), 1)
        rec([first], (first,), first, 1)
    except _Stop:
        pass
    return out


def _partition_worker(args):
    return _run_partition(*args)


def _merge_outcomes(outcomes: list, size_cap: int, target: Optional[int]):
    nodes = sum(o.nodes for o in outcomes)
    budget_hit = any(o.budget_hit for o in outcomes)
    target_hit = any(o.target_hit for o in outcomes)
    best_size = max((o.best_size for o in outcomes), default=0)
    witness = None
    for o in outcomes:  # partition order = global lexicographic order
        if o.best_size == best_size and o.best_witness is not None:
            witness = o.best_witness
            break
    exhaustive = (not budget_hit) and (not target_hit) and best_size < size_cap
    return best_size, witness, nodes, budget_hit, target_hit, exhaustive


def _window_points(lattice: LatticeSpec, window: Window) -> list:
    return list(enumerate_window(lattice, window))


def _run_search(
    lattice,
    window,
    size_cap,
    target,
    node_budget,
    workers,
    collect_size=None,
    res_mask_bits=None,
    multiplicity=None,
):
    points = _window_points(lattice, window)
    n = len(points)
    if n == 0:
        return points, []
    table = _build_table(points)
    res_mask = 0
    suffix_res = None
    if multiplicity is not None:
        for i in res_mask_bits:
            res_mask |= 1 << i
        suffix_res = [0] * (n + 2)
        for i in range(n - 1, -1, -1):
            suffix_res[i] = suffix_res[i + 1] + (1 if (res_mask >> i) & 1 else 0)
    tasks = [
        (table, first, size_cap, target, node_budget, collect_size, res_mask,
         multiplicity, suffix_res)
        for first in range(n)
    ]
    if workers <= 1:
        outcomes = [_run_partition(*t) for t in tasks]
    else:
        with multiprocessing.get_context("fork").Pool(workers) as pool:
            outcomes = pool.map(_partition_worker, tasks)
    return points, outcomes


def _checkpoint_header(lattice, window, size_cap, target) -> dict:
    return {
        "kind": "hellylat-search-checkpoint",
        "lattice": lattice.to_json_dict(),
        "window": window.to_json_dict(),
        "size_cap": size_cap,
        "target": target,
    }


def _load_checkpoint(path, header):
    done = {}
    if not os.path.exists(path):
        return done, False
    with open(path, "r", encoding="utf-8") as fh:
        lines = [line for line in fh if line.strip()]
    if not lines:
        return done, False
    stored = json.loads(lines[0])
    if stored != header:
        raise PreconditionError(
            f"checkpoint {path} belongs to a different search configuration"
        )
    for line in lines[1:]:
        rec = json.loads(line)
        done[rec["partition"]] = _PartitionOutcome(
            rec["partition"],
            rec["best_size"],
            tuple(rec["witness_indices"]) if rec["witness_indices"] else None,
            rec["nodes"],
            rec["budget_hit"],
            rec["target_hit"],
        )
    return done, True


def _append_checkpoint(path, header, outcomes, wrote_header: bool):
    with open(path, "a", encoding="utf-8") as fh:
        if not wrote_header:
            fh.write(json.dumps(header, sort_keys=True) + "\n")
        for o in outcomes:
            fh.write(
                json.dumps(
                    {
                        "partition": o.first,
                        "best_size": o.best_size,
                        "witness_indices": list(o.best_witness)
                        if o.best_witness
                        else None,
                        "nodes": o.nodes,
                        "budget_hit": o.budget_hit,
                        "target_hit": o.target_hit,
                    },
                    sort_keys=True,
                )
                + "\n"
            )


def max_empty_subset(
    lattice: LatticeSpec,
    window: Window,
    *,
    size_cap: int = DEFAULT_SIZE_CAP,
    target: Optional[int] = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
    workers: int = 1,
    checkpoint_path: Optional[str] = None,
) -> SearchReport:
    """Find a maximum-cardinality empty subset of the lattice within the
    window, by canonical depth-first enumeration of empty subsets.

    The witness is the lexicographically least maximum subset; reports are
    identical for serial and parallel runs.  With `target` set the search
    may stop early once a subset of that size appears (exhaustive=False).
    A checkpoint file records finished first-point partitions so an
    interrupted run resumes where it left off.  The returned witness is
    re-verified through the independent emptiness path before the report
    is produced.
    """
    if lattice.dim != 2:
        return _generic_max_empty_subset(
            lattice, window, size_cap=size_cap, target=target, node_budget=node_budget
        )
    points = _window_points(lattice, window)
    n = len(points)
    header = _checkpoint_header(lattice, window, size_cap, target)
    done: dict = {}
    have_header = False
    if checkpoint_path:
        done, have_header = _load_checkpoint(checkpoint_path, header)
    missing = [first for first in range(n) if first not in done]
    if missing:
        table = _build_table(points)
        tasks = [
            (table, first, size_cap, target, node_budget, None, 0, None, None)
            for first in missing
        ]
        if workers <= 1:
            fresh = [_run_partition(*t) for t in tasks]
        else:
            with multiprocessing.get_context("fork").Pool(workers) as pool:
                fresh = pool.map(_partition_worker, tasks)
        if checkpoint_path:
            _append_checkpoint(checkpoint_path, header, fresh, wrote_header=have_header)
        done.update({o.first: o for o in fresh})
    outcomes = [done[first] for first in range(n)]
    best_size, witness_idx, nodes, budget_hit, target_hit, exhaustive = (
        _merge_outcomes(outcomes, size_cap, target)
    )
    witness = tuple(points[i] for i in witness_idx) if witness_idx else ()
    _verify_witness(witness, lattice)
    return SearchReport(
        lattice,
        window,
        size_cap,
        target,
        best_size,
        witness,
        exhaustive,
        nodes,
        budget_hit,
    )


def empty_subsets_of_size(
    lattice: LatticeSpec,
    window: Window,
    size: int,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    workers: int = 1,
) -> list:
    """Every empty subset of exactly the given size within the window, in
    canonical order (planar lattices only)."""
    if lattice.dim != 2:
        raise PreconditionError("subset enumeration is implemented for dimension 2")
    points, outcomes = _run_search(
        lattice, window, size, None, node_budget, workers, collect_size=size
    )
    if any(o.budget_hit for o in outcomes):
        raise WindowBudgetError("node budget exhausted during subset enumeration")
    result = []
    for o in outcomes:
        for t in o.collected:
            result.append(tuple(points[i] for i in t))
    return result


def residue_multiplicity_search(
    lattice: LatticeSpec,
    window: Window,
    residue: Sequence[int],
    multiplicity: int,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    workers: int = 1,
) -> MultiplicityResult:
    """Search the window for an empty subset having at least `multiplicity`
    vertices congruent to `residue` modulo the lattice modulus.

    Runs the full pruned enumeration either way, so a None witness is an
    exhaustive refutation for the window (unless the budget was hit) and
    reports do not depend on the worker count.
    """
    if isinstance(lattice, CongruenceProduct):
        m = lattice.modulus
        if any(r % m not in lattice.residues for r in residue):
            raise PreconditionError("residue vector must be drawn from the residue set")
    elif isinstance(lattice, IntegerLattice):
        m = 1
    else:
        raise PreconditionError("multiplicity search needs a congruence or integer lattice")
    if len(residue) != lattice.dim:
        raise PreconditionError("residue vector dimension mismatch")
    if multiplicity < 1:
        raise PreconditionError("multiplicity must be >= 1")
    if lattice.dim == 1:
        points = _window_points(lattice, window)
        matching = [
            p for p in points if int(p[0]) % m == residue[0] % m
        ]
        if multiplicity == 1 and matching:
            return MultiplicityResult((matching[0],), True, len(points))
        if multiplicity == 1:
            return MultiplicityResult(None, True, len(points))
        raise PreconditionError("dimension-1 search supports multiplicity 1 only")
    if lattice.dim != 2:
        raise PreconditionError("multiplicity search is implemented for dimension <= 2")

    points = _window_points(lattice, window)
    bits = [
        i
        for i, p in enumerate(points)
        if all(int(c) % m == r % m for c, r in zip(p, residue))
    ]
    points, outcomes = _run_search(
        lattice,
        window,
        DEFAULT_SIZE_CAP,
        None,
        node_budget,
        workers,
        res_mask_bits=bits,
        multiplicity=multiplicity,
    )
    nodes = sum(o.nodes for o in outcomes)
    budget_hit = any(o.budget_hit for o in outcomes)
    witness = None
    for o in outcomes:
        if o.qualifying is not None:
            witness = tuple(points[i] for i in o.qualifying)
            break
    if witness is not None:
        _verify_witness(witness, lattice)
    return MultiplicityResult(witness, not budget_hit, nodes)


def _verify_witness(witness: tuple, lattice: LatticeSpec):
    if not witness:
        return
    verdict = is_empty_in(witness, lattice)
    if not verdict.empty:
        raise InvariantViolationError(
            f"search produced a non-empty witness {witness}: {verdict.witness}"
        )


def _generic_max_empty_subset(
    lattice, window, *, size_cap, target, node_budget
) -> SearchReport:
    """Slow reference search for dimensions other than 2: extends subsets
    in canonical order, re-checking emptiness from scratch each step."""
    points = _window_points(lattice, window)
    n = len(points)
    state = {"nodes": 0, "best": 0, "witness": (), "budget": False, "target": False}

    def rec(t_list, last, size):
        if size >= size_cap:
            return
        for k in range(last + 1, n):
            cand = t_list + [points[k]]
            if not is_empty_in(cand, lattice).empty:
                continue
            state["nodes"] += 1
            if state["nodes"] >= node_budget:
                state["budget"] = True
                raise _Stop
            if size + 1 > state["best"]:
                state["best"] = size + 1
                state["witness"] = tuple(cand)
            if target is not None and size + 1 >= target:
                state["target"] = True
                raise _Stop
            rec(cand, k, size + 1)

    try:
        for first in range(n):
            state["nodes"] += 1
            if state["nodes"] >= node_budget:
                state["budget"] = True
                raise _Stop
            if state["best"] < 1:
                state["best"] = 1
                state["witness"] = (points[first],)
            if target is not None and 1 >= target:
                state["target"] = True
                raise _Stop
            rec([points[first]], first, 1)
    except _Stop:
        pass
    exhaustive = (
        not state["budget"] and not state["target"] and state["best"] < size_cap
    )
    _verify_witness(state["witness"], lattice)
    return SearchReport(
        lattice,
        window,
        size_cap,
        target,
        state["best"],
        state["witness"],
        exhaustive,
        state["nodes"],
        state["budget"],
    )


# -- pentagon template -------------------------------------------------------


def pentagon_template_match(exponents: frozenset) -> Optional[tuple]:
    """Match five exponent pairs against the maximal-pentagon template
    {(p,q), (r,s), (r-1,q-1), (p+1,q), (r,s+1)} with p < r and q > s;
    returns (p, q, r, s) or None."""
    for p, q in exponents:
        for r, s in exponents:
            if p < r and q > s:
                if exponents == {
                    (p, q),
                    (r, s),
                    (r - 1, q - 1),
                    (p + 1, q),
                    (r, s + 1),
                }:
                    return (p, q, r, s)
    return None


def classify_pentagons(lattice: ExponentialLattice, witnesses: Sequence) -> bool:
    """Do all the given size-5 empty witnesses match the pentagon template?

    Accepts bare point lists or whole SearchReports.  Inputs are validated:
    the lattice must be planar with alpha >= 2, and every witness must be a
    five-point empty subset of it.
    """
    if not isinstance(lattice, ExponentialLattice) or lattice.dim != 2:
        raise PreconditionError("pentagon classification needs a planar exponential lattice")
    if compare(lattice.alpha, 2) < 0:
        raise PreconditionError("pentagon classification requires alpha >= 2")
    for witness in witnesses:
        if isinstance(witness, SearchReport):
            witness = witness.witness
        pts = [tuple(p) for p in witness]
        if len(set(pts)) != 5:
            raise PreconditionError(f"witness is not a pentagon: {witness}")
        if not is_empty_in(pts, lattice).empty:
            raise PreconditionError(f"witness is not empty in the lattice: {witness}")
        exps = set()
        for x, y in pts:
            ex = lattice.exponent_of(x)
            ey = lattice.exponent_of(y)
            if ex is None or ey is None:
                raise PreconditionError(f"witness point {(x, y)} is not a lattice point")
            exps.add((ex, ey))
        if pentagon_template_match(frozenset(exps)) is None:
            return False
    return True


# -- congruence pigeonhole ---------------------------------------------------


def least_prime_factor(m: int) -> int:
    if m < 2:
        raise PreconditionError("need m >= 2")
    f = 2
    while f * f <= m:
        if m % f == 0:
            return f
        f += 1
    return m


def pigeonhole_condition(residue_count: int, modulus: int, dimension: int) -> bool:
    """Exact test of d < p(m-1) / (m(m-k)) with p the least prime factor.

    A full residue set (k == m) makes the bound vacuous, so it holds.
    """
    if residue_count >= modulus:
        return True
    p = least_prime_factor(modulus)
    bound = Fraction(p * (modulus - 1), modulus * (modulus - residue_count))
    return Fraction(dimension) < bound


def residue_pigeonhole_check(
    residues: Sequence[int], modulus: int, dimension: int
) -> PigeonholeReport:
    """Exhaustively test that every congruent vertex pair forces an
    intermediate point with all coordinates in the residue set.

    For every start vector u in S^d and every step vector w mod m, some
    i in 1..m-1 must put all coordinates of u + i*w into S.  Per-coordinate
    bitmasks over i make the product check a d-fold AND.
    """
    if modulus < 2:
        raise PreconditionError("modulus must be >= 2")
    if dimension < 1:
        raise PreconditionError("dimension must be >= 1")
    S = sorted(set(r % modulus for r in residues))
    if not S:
        raise PreconditionError("residue set must be nonempty")
    in_S = [False] * modulus
    for r in S:
        in_S[r] = True
    # mask[u][w]: bits i-1 for i in 1..m-1 with (u + i*w) % m in S
    mask = [[0] * modulus for _ in range(modulus)]
    for u in range(modulus):
        for w in range(modulus):
            bits = 0
            for i in range(1, modulus):
                if in_S[(u + i * w) % modulus]:
                    bits |= 1 << (i - 1)
            mask[u][w] = bits

    import itertools

    counterexample = None
    for u_vec in itertools.product(S, repeat=dimension):
        for w_vec in itertools.product(range(modulus), repeat=dimension):
            bits = (1 << (modulus - 1)) - 1
            for u, w in zip(u_vec, w_vec):
                bits &= mask[u][w]
                if not bits:
                    break
            if not bits:
                counterexample = (u_vec, w_vec)
                break
        if counterexample is not None:
            break
    return PigeonholeReport(
        tuple(S),
        modulus,
        dimension,
        pigeonhole_condition(len(S), modulus, dimension),
        counterexample is None,
        counterexample,
    )
