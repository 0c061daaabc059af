"""Core predicates on lattice polytopes: emptiness, hollowness, the
hollow-to-empty vertex-preserving reduction, widths, and lattice segments.

Everything is decided by exact enumeration inside bounding boxes, so every
verdict carries a witness that can be re-checked independently.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .errors import (
    InvariantViolationError,
    LowerDimensionalHullError,
    PreconditionError,
)
from .geometry import (
    Point,
    VPolytope,
    classify_point,
    convex_hull,
    is_simplicial,
    vdot,
    vsub,
)
from .lattices import (
    ENUM_BUDGET,
    IntegerLattice,
    LatticeSpec,
    Window,
    enumerate_window,
    membership,
    points_in_polytope,
)
from .scalars import (
    Scalar,
    as_integer,
    compare,
    format_scalar,
    is_integer,
    scalar_sign,
)

#: default direction radius for lattice-width certification
DEFAULT_WIDTH_RADIUS = 5


@dataclass(frozen=True)
class EmptinessVerdict:
    """Outcome of an emptiness or hollowness check.

    `witness` is the lexicographically least violating point when the check
    fails; `points_checked` counts the lattice points found in the polytope.
    """

    empty: bool
    witness: Optional[Point]
    points_checked: int

    def to_json_dict(self) -> dict:
        return {
            "empty": self.empty,
            "witness": None
            if self.witness is None
            else [format_scalar(c) for c in self.witness],
            "points_checked": self.points_checked,
        }


@dataclass(frozen=True)
class WidthResult:
    """Minimal directional width over primitive directions up to a radius."""

    direction: tuple
    width: Scalar
    certified_radius: int

    def to_json_dict(self) -> dict:
        return {
            "direction": list(self.direction),
            "width": format_scalar(self.width),
            "certified_radius": self.certified_radius,
        }


def _collinear_with(a: Point, b: Point, q: Point) -> bool:
    u = vsub(b, a)
    w = vsub(q, a)
    d = len(a)
    for i in range(d):
        for j in range(i + 1, d):
            if scalar_sign(u[i] * w[j] - u[j] * w[i]) != 0:
                return False
    return True


def integer_kernel(rows: list) -> list:
    """Basis of {x in Z^n : A x = 0} for an integer matrix given as rows.

    Column reduction by exact Euclidean elimination with the transform
    tracked; kernels computed this way are saturated, which is what the
    affine-flat projection below relies on.
    """
    if not rows:
        raise PreconditionError("kernel of an empty matrix is ambiguous")
    m, n = len(rows), len(rows[0])
    h = [list(r) for r in rows]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_cols(a, b):
        for r in range(m):
            h[r][a], h[r][b] = h[r][b], h[r][a]
        for r in range(n):
            u[r][a], u[r][b] = u[r][b], u[r][a]

    def addmul_col(dst, src, q):
        for r in range(m):
            h[r][dst] -= q * h[r][src]
        for r in range(n):
            u[r][dst] -= q * u[r][src]

    col = 0
    for row in range(m):
        while True:
            nonzero = [c for c in range(col, n) if h[row][c] != 0]
            if not nonzero:
                break
            pivot = min(nonzero, key=lambda c: abs(h[row][c]))
            if pivot != col:
                swap_cols(pivot, col)
            done = True
            for c in range(col + 1, n):
                if h[row][c] != 0:
                    q = h[row][c] // h[row][col]
                    addmul_col(c, col, q)
                    if h[row][c] != 0:
                        done = False
            if done:
                col += 1
                break
    basis = [[u[r][c] for r in range(n)] for c in range(col, n)]
    for vec in basis:
        for r in range(m):
            if sum(a * b for a, b in zip(rows[r], vec)) != 0:
                raise InvariantViolationError("kernel vector fails A x = 0")
    return basis


def _solve_integer_coords(basis: list, vector: tuple) -> tuple:
    """Coordinates of an integer vector in a saturated lattice basis."""
    k = len(basis)
    d = len(vector)
    # pick k independent columns to get an invertible k x k system
    cols: list = []
    echelon: list = []
    for c in range(d):
        cand = echelon + [[Fraction(basis[r][c]) for r in range(k)]]
        reduced = cand[-1][:]
        for row in echelon:
            piv = next(i for i, x in enumerate(row) if x != 0)
            if reduced[piv] != 0:
                f = reduced[piv] / row[piv]
                reduced = [a - f * b for a, b in zip(reduced, row)]
        if any(x != 0 for x in reduced):
            echelon.append(reduced)
            cols.append(c)
        if len(cols) == k:
            break
    if len(cols) < k:
        raise InvariantViolationError("projection basis is rank deficient")
    # gaussian solve of sum(x_i * basis_i[c]) = vector[c] over the chosen cols
    aug = [
        [Fraction(basis[r][c]) for r in range(k)] + [Fraction(vector[c])]
        for c in cols
    ]
    for i in range(k):
        piv = next(r for r in range(i, k) if aug[r][i] != 0)
        aug[i], aug[piv] = aug[piv], aug[i]
        pivval = aug[i][i]
        aug[i] = [x / pivval for x in aug[i]]
        for r in range(k):
            if r != i and aug[r][i] != 0:
                f = aug[r][i]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[i])]
    coords = [aug[i][k] for i in range(k)]
    if any(c.denominator != 1 for c in coords):
        raise PreconditionError("point is not in the affine lattice of the flat")
    result = tuple(int(c) for c in coords)
    # verify against every ambient coordinate, not just the solved ones
    for c in range(d):
        if sum(x * basis[r][c] for r, x in enumerate(result)) != vector[c]:
            raise PreconditionError("point is not in the affine lattice of the flat")
    return result


def _flat_verdict(
    pts: list, lattice: LatticeSpec, budget: int, affine_dim: int
) -> EmptinessVerdict:
    """Emptiness for point sets spanning a 2..(d-1)-dimensional flat.

    Works for integer-coordinate lattices: the flat's integer points form a
    translated saturated sublattice, so the hull is tested in projected
    coordinates and candidates are filtered by ambient membership.
    """
    for p in pts:
        for c in p:
            if not is_integer(c):
                raise PreconditionError(
                    "flat projection requires integer coordinates; project "
                    "explicitly for other lattices"
                )
    base = pts[0]
    diffs = [tuple(int(a - b) for a, b in zip(p, base)) for p in pts[1:]]
    complement = integer_kernel(diffs)
    if not complement:
        raise InvariantViolationError("flat claimed but complement is trivial")
    basis = integer_kernel(complement)
    if len(basis) != affine_dim:
        raise InvariantViolationError(
            f"saturated basis rank {len(basis)} != affine dimension {affine_dim}"
        )
    projected = [
        _solve_integer_coords(basis, tuple(int(a - b) for a, b in zip(p, base)))
        for p in pts
    ]
    hull = convex_hull(projected)
    hull_vertices = set(hull.vertices)
    proj_set = set(projected)
    window = Window(tuple(hull.bounding_box()))
    checked = 0
    witness = None
    for x in enumerate_window(IntegerLattice(affine_dim), window, budget=budget):
        loc = classify_point(hull, x)
        if loc.kind == "exterior":
            continue
        ambient = tuple(
            b + sum(xi * basis[r][c] for r, xi in enumerate(x))
            for c, b in enumerate(base)
        )
        if not membership(lattice, ambient):
            continue
        checked += 1
        if x not in hull_vertices or x not in proj_set:
            if witness is None:
                witness = ambient
    if witness is not None:
        return EmptinessVerdict(False, witness, checked)
    return EmptinessVerdict(True, None, checked)


def _segment_verdict(pts: list, lattice: LatticeSpec, budget: int) -> EmptinessVerdict:
    """Emptiness for a point set spanning a 1-dimensional flat."""
    a, b = pts[0], pts[-1]  # lex extremes are the segment endpoints
    axes = []
    for i in range(len(a)):
        if compare(a[i], b[i]) <= 0:
            axes.append((a[i], b[i]))
        else:
            axes.append((b[i], a[i]))
    window = Window(tuple(axes))
    on_segment = []
    for q in enumerate_window(lattice, window, budget=budget):
        if _collinear_with(a, b, q):
            on_segment.append(q)
    violations = [q for q in on_segment if q != a and q != b]
    if violations:
        return EmptinessVerdict(False, violations[0], len(on_segment))
    return EmptinessVerdict(True, None, len(on_segment))


def is_empty_in(
    points: Sequence[Point], lattice: LatticeSpec, *, budget: int = ENUM_BUDGET
) -> EmptinessVerdict:
    """Is the point set empty in the lattice, i.e. does its hull contain no
    lattice point besides its own vertices?

    Degenerate inputs spanning a point or a segment are checked directly;
    flats of intermediate dimension must be projected by the caller.
    """
    pts = sorted(set(tuple(p) for p in points))
    if not pts:
        raise PreconditionError("empty point set")
    for p in pts:
        if not membership(lattice, p):
            raise PreconditionError(f"point {p} is not in the lattice")
    if len(pts) == 1:
        return EmptinessVerdict(True, None, 1)
    try:
        hull = convex_hull(pts)
    except LowerDimensionalHullError as err:
        if err.affine_dim == 1:
            return _segment_verdict(pts, lattice, budget)
        return _flat_verdict(pts, lattice, budget, err.affine_dim)
    classified = points_in_polytope(lattice, hull, budget=budget)
    hull_vertices = set(hull.vertices)
    member_nonvertices = [p for p in pts if p not in hull_vertices]
    witness = None
    for p, label in classified:
        if label != "vertex":
            witness = p
            break
    if witness is None and member_nonvertices:
        # members that are not hull vertices violate emptiness even if the
        # lattice scan somehow missed them (it cannot, but stay defensive)
        witness = member_nonvertices[0]
    if witness is not None:
        return EmptinessVerdict(False, witness, len(classified))
    return EmptinessVerdict(True, None, len(classified))


def is_hollow(
    poly: VPolytope, lattice: LatticeSpec, *, budget: int = ENUM_BUDGET
) -> EmptinessVerdict:
    """Does the polytope contain no lattice point strictly inside it?"""
    if not poly.is_full_dimensional:
        raise PreconditionError("is_hollow requires a full-dimensional polytope")
    classified = points_in_polytope(lattice, poly, budget=budget)
    for p, label in classified:
        if label == "interior":
            return EmptinessVerdict(False, p, len(classified))
    return EmptinessVerdict(True, None, len(classified))


def _boundary_nonvertices(poly: VPolytope, lattice: IntegerLattice, budget: int):
    interior = []
    boundary = []
    for p, label in points_in_polytope(lattice, poly, budget=budget):
        if label == "interior":
            interior.append(p)
        elif label == "boundary":
            boundary.append(p)
    return interior, boundary


def _try_swap(current: VPolytope, x: Point, y: Point, context, require_simplicial):
    """Apply one swap and check the round invariants; returns the swapped
    polytope with its boundary data, or a failure reason string."""
    vertex_count, prev_count, lattice, budget = context
    new_vertex_set = set(current.vertices) - {y} | {x}
    try:
        swapped = convex_hull(new_vertex_set)
    except LowerDimensionalHullError as err:
        return None, f"collapsed to dimension {err.affine_dim}"
    if len(swapped.vertices) != vertex_count:
        return None, f"vertex count {vertex_count} -> {len(swapped.vertices)}"
    if require_simplicial and not is_simplicial(swapped):
        return None, "result not simplicial"
    interior, boundary = _boundary_nonvertices(swapped, lattice, budget)
    if interior:
        return None, f"interior lattice point {interior[0]} exposed"
    if len(boundary) >= prev_count:
        return None, f"boundary count {prev_count} -> {len(boundary)}"
    return (swapped, boundary), None


def hollow_to_empty(poly: VPolytope, *, budget: int = ENUM_BUDGET) -> VPolytope:
    """Turn a hollow simplicial lattice polytope into an empty one with the
    same number of vertices, by repeatedly swapping a non-vertex boundary
    lattice point x for a vertex y of the minimal face containing x.

    Every round must keep the vertex count, keep the polytope hollow, and
    strictly shrink the non-vertex boundary count; these are asserted at
    runtime.  Candidate swaps are tried in lexicographic (x, y) order and
    the first one that also keeps the polytope simplicial is taken, so runs
    are deterministic.  Rarely every candidate swap creates a coplanar
    facet quadruple; the scan then repeats accepting non-simplicial
    intermediates, which still yields an empty polytope with the required
    vertex count.  If no candidate preserves even the core invariants the
    reduction aborts with diagnostics rather than guessing a repair.
    """
    if not poly.is_full_dimensional:
        raise PreconditionError("hollow_to_empty requires a full-dimensional polytope")
    d = poly.dim
    for v in poly.vertices:
        for c in v:
            as_integer(c)
    lattice = IntegerLattice(d)
    if not is_simplicial(poly):
        raise PreconditionError("input polytope is not simplicial")
    interior, boundary = _boundary_nonvertices(poly, lattice, budget)
    if interior:
        raise PreconditionError(f"input polytope is not hollow: {interior[0]}")

    current = poly
    vertex_count = len(poly.vertices)
    prev_count = len(boundary)
    max_rounds = prev_count  # the count strictly decreases, so this suffices
    rounds = 0
    while boundary:
        if rounds > max_rounds:
            raise InvariantViolationError("swap loop failed to terminate")
        context = (vertex_count, prev_count, lattice, budget)
        accepted = None
        failures = []
        for require_simplicial in (True, False):
            for x in boundary:
                loc = classify_point(current, x)
                face_vertices = sorted(current.vertices[i] for i in loc.minimal_face)
                if not face_vertices:
                    raise InvariantViolationError(
                        f"boundary point {x} has an empty minimal face on "
                        f"{current.vertices}"
                    )
                for y in face_vertices:
                    result, reason = _try_swap(
                        current, x, y, context, require_simplicial
                    )
                    if result is not None:
                        accepted = result
                        break
                    if require_simplicial:
                        failures.append(f"swap ({x} for {y}): {reason}")
                if accepted is not None:
                    break
            if accepted is not None:
                break
        if accepted is None:
            detail = "; ".join(failures)
            raise InvariantViolationError(
                f"no invariant-preserving swap exists on {current.vertices}: {detail}"
            )
        current, boundary = accepted
        prev_count = len(boundary)
        rounds += 1

    if len(current.vertices) > 2**d:
        raise InvariantViolationError(
            f"empty polytope with {len(current.vertices)} > 2^{d} vertices"
        )
    return current


def directional_width(poly: VPolytope, direction: Sequence[int]) -> Scalar:
    """Exact max-minus-min of <x, direction> over the vertices."""
    v = tuple(direction)
    if all(c == 0 for c in v):
        raise PreconditionError("direction must be nonzero")
    values = [vdot(p, v) for p in poly.vertices]
    lo = hi = values[0]
    for x in values[1:]:
        if compare(x, lo) < 0:
            lo = x
        if compare(x, hi) > 0:
            hi = x
    return hi - lo


def primitive_directions(dim: int, radius: int):
    """Primitive integer vectors with max-norm <= radius and positive first
    nonzero entry, ordered colexicographically (last coordinate varies
    slowest), so axis direction e_1 precedes e_2 and wins width ties."""
    if radius < 1:
        raise PreconditionError("radius must be >= 1")
    import itertools as _it

    for rev in _it.product(range(-radius, radius + 1), repeat=dim):
        v = rev[::-1]
        first = next((c for c in v if c != 0), 0)
        if first <= 0:
            continue
        if gcd(*(abs(c) for c in v)) != 1:
            continue
        yield v


def lattice_width_search(poly: VPolytope, radius: int) -> WidthResult:
    """Minimize directional width over primitive directions with max-norm
    <= radius; ties break lexicographically.

    The result is an upper bound on the true lattice width, certified
    minimal among directions within the given radius.
    """
    best_v = None
    best_w: Optional[Scalar] = None
    for v in primitive_directions(poly.dim, radius):
        w = directional_width(poly, v)
        if best_w is None or compare(w, best_w) < 0:
            best_v, best_w = v, w
    assert best_v is not None and best_w is not None
    return WidthResult(best_v, best_w, radius)


def longest_segment(poly: VPolytope, *, budget: int = ENUM_BUDGET) -> tuple:
    """Longest lattice segment inside the polytope.

    Returns (length, witness) where the length of a segment between lattice
    points is the gcd of the coordinate differences and the witness is the
    first maximal pair in scan order; (0, None) when the polytope holds at
    most one lattice point.
    """
    lattice = IntegerLattice(poly.dim)
    pts = [
        tuple(as_integer(c) for c in p)
        for p, _ in points_in_polytope(lattice, poly, budget=budget)
    ]
    if len(pts) < 2:
        return 0, None
    best = 0
    witness = None
    n = len(pts)
    for i in range(n):
        xi = pts[i]
        for j in range(i + 1, n):
            xj = pts[j]
            g = 0
            for a, b in zip(xi, xj):
                g = gcd(g, a - b)
            if g > best:
                best = g
                witness = (xi, xj)
    return best, witness


def sample_hollow_simplicial_polytopes(
    count: int, dim: int, bound: int, seed: int, *, budget: int = ENUM_BUDGET
) -> list:
    """Deterministically sample hollow simplicial lattice polytopes with
    vertices in [-bound, bound]^dim (rejection sampling)."""
    rng = random.Random(seed)
    lattice = IntegerLattice(dim)
    out = []
    while len(out) < count:
        npts = rng.randint(dim + 1, dim + 5)
        pts = [
            tuple(rng.randint(-bound, bound) for _ in range(dim))
            for _ in range(npts)
        ]
        try:
            hull = convex_hull(pts)
        except LowerDimensionalHullError:
            continue
        if not is_simplicial(hull):
            continue
        if not is_hollow(hull, lattice, budget=budget).empty:
            continue
        out.append(hull)
    return out
