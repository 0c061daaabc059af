"""The named point sets and polytopes studied by the package, generated
exactly and self-verified on construction."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    InvariantViolationError,
    LowerDimensionalHullError,
    PreconditionError,
)
from .geometry import Point, VPolytope, convex_hull, point_polytope
from .lattices import ExplicitProduct, IntegerLattice, points_in_polytope
from .scalars import QuadExt, Scalar, binomial, compare, scalar_sign


class FibonacciContext:
    """Golden-ratio arithmetic over Q(sqrt(5)) plus memoized Fibonacci
    integers, with the defining identities checked once at construction."""

    def __init__(self):
        self.phi = QuadExt(Fraction(1, 2), Fraction(1, 2), 5)
        self.psi = QuadExt(Fraction(1, 2), Fraction(-1, 2), 5)
        self._fib = [0, 1]
        if self.phi * self.psi != Fraction(-1):
            raise InvariantViolationError("phi * psi != -1")
        if self.phi + self.psi != Fraction(1):
            raise InvariantViolationError("phi + psi != 1")

    def fib(self, n: int) -> int:
        if n < 0:
            raise PreconditionError("Fibonacci index must be >= 0")
        while len(self._fib) <= n:
            self._fib.append(self._fib[-1] + self._fib[-2])
        return self._fib[n]

    def binet_holds(self, n: int) -> bool:
        """F_n == (phi^n - psi^n) / (phi - psi), exactly in Q(sqrt(5))."""
        lhs = (self.phi**n - self.psi**n) / (self.phi - self.psi)
        return lhs == Fraction(self.fib(n))


@lru_cache(maxsize=1)
def fibonacci_context() -> FibonacciContext:
    return FibonacciContext()


def hyperbola_polytope(alpha: Scalar, d: int, k: int) -> VPolytope:
    """Hull of the lattice points on the product curve x_1*...*x_d = alpha^k.

    Vertices are all points (alpha^n_1, ..., alpha^n_d) with the exponents
    summing to k; their number is C(k+d-1, d-1), asserted on construction.
    """
    if compare(alpha, 1) <= 0:
        raise PreconditionError("alpha must exceed 1")
    if d < 2 or k < 1:
        raise PreconditionError("need dimension >= 2 and exponent sum >= 1")
    powers = [alpha**n for n in range(k + 1)]
    pts = []
    for bars in itertools.combinations(range(k + d - 1), d - 1):
        cuts = (-1,) + bars + (k + d - 1,)
        exponents = [cuts[i + 1] - cuts[i] - 1 for i in range(d)]
        pts.append(tuple(powers[n] for n in exponents))
    expected = binomial(k + d - 1, d - 1)
    try:
        poly = convex_hull(pts)
    except LowerDimensionalHullError as err:
        # k == 1 puts all d points on one hyperplane; keep the vertex list
        # as a degenerate polytope (no facet structure)
        poly = VPolytope(d, tuple(sorted(pts)), (), err.affine_dim)
    if len(poly.vertices) != expected:
        raise InvariantViolationError(
            f"curve points are not all extreme: {len(poly.vertices)} != {expected}"
        )
    return poly


def hyperbola_emptiness_condition(alpha: Scalar, d: int, k: int) -> bool:
    """Exact check of the sufficient condition d*alpha^((k+1)/d) >= alpha^k + d - 1.

    Both sides are positive, so the fractional power is eliminated by
    raising to the d-th power.  Failure is reported, not fatal: emptiness
    is always established downstream by enumeration.
    """
    lhs = (alpha ** (k + 1)) * (Fraction(d) ** d)
    rhs = (alpha**k + (d - 1)) ** d
    return compare(lhs, rhs) >= 0


def fibonacci_polygon(n_points: int) -> list:
    """First points of the infinite convex chain (-F_2i, 2*F_2i+1 - 1).

    Construction self-checks, all exact: the slope between consecutive
    points is -2*F_2i+2 / F_2i+1, the slopes strictly decrease, and each
    point sits below the line y = -2*phi*x by exactly 1 - 2*psi^(2i).
    """
    if n_points < 1:
        raise PreconditionError("need at least one point")
    ctx = fibonacci_context()
    pts = [
        (-ctx.fib(2 * i), 2 * ctx.fib(2 * i + 1) - 1)
        for i in range(1, n_points + 1)
    ]
    prev_slope = None
    for i in range(1, n_points):
        (x1, y1), (x2, y2) = pts[i - 1], pts[i]
        slope = Fraction(y2 - y1, x2 - x1)
        expected = Fraction(-2 * ctx.fib(2 * i + 2), ctx.fib(2 * i + 1))
        if slope != expected:
            raise InvariantViolationError(f"slope {slope} != {expected} at i={i}")
        if prev_slope is not None and not slope < prev_slope:
            raise InvariantViolationError(f"slopes not strictly decreasing at i={i}")
        prev_slope = slope
    for i in range(1, n_points + 1):
        gap = 2 * ctx.phi * ctx.fib(2 * i) - (2 * ctx.fib(2 * i + 1) - 1)
        if gap != 1 - 2 * ctx.psi ** (2 * i):
            raise InvariantViolationError(f"distance identity fails at i={i}")
    return pts


@dataclass(frozen=True)
class SyndeticConstruction:
    """A 2-syndetic integer set (windowed) whose square contains the
    Fibonacci polygon prefix as an empty polygon."""

    product: ExplicitProduct
    polygon: VPolytope
    excluded: tuple  # removed integers (the set Y)
    window: tuple  # (lo, hi)


def fibonacci_syndetic(n_points: int) -> SyndeticConstruction:
    """Materialize the 2-syndetic set on the prefix polygon's range.

    Removes the y-coordinates of all non-vertex lattice points of the
    prefix hull, then asserts the 2-syndetic property on the window and
    emptiness of the prefix in the resulting product set.
    """
    if n_points < 3:
        raise PreconditionError("need at least three points for a full-dim hull")
    pts = fibonacci_polygon(n_points)
    hull = convex_hull(pts)
    if len(hull.vertices) != n_points:
        raise InvariantViolationError("prefix points are not in convex position")
    inside = points_in_polytope(IntegerLattice(2), hull)
    excluded = sorted({int(p[1]) for p, label in inside if label != "vertex"})
    vertex_ys = {int(p[1]) for p in hull.vertices}
    if vertex_ys & set(excluded):
        raise InvariantViolationError(
            "a vertex shares its y-coordinate with a non-vertex lattice point"
        )
    lo = min(int(p[0]) for p in pts)
    hi = max(int(p[1]) for p in pts)
    removed = set(excluded)
    base = tuple(n for n in range(lo, hi + 1) if n not in removed)
    for n in range(lo, hi):
        if n in removed and (n + 1) in removed:
            raise InvariantViolationError(
                f"2-syndetic property fails on the window at {n}"
            )
    product = ExplicitProduct(base, lo, hi, 2)
    from .analysis import is_empty_in  # local import to avoid a cycle

    verdict = is_empty_in(pts, product)
    if not verdict.empty:
        raise InvariantViolationError(
            f"prefix polygon is not empty in the product set: {verdict.witness}"
        )
    return SyndeticConstruction(product, hull, tuple(excluded), (lo, hi))


MOD3_OCTAGON_VERTICES = (
    (0, 0),
    (1, 0),
    (3, 1),
    (6, 3),
    (7, 4),
    (6, 4),
    (4, 3),
    (1, 1),
)


def mod3_octagon() -> VPolytope:
    """The eight-vertex polygon with all coordinates in {0,1} + 3Z."""
    poly = convex_hull(MOD3_OCTAGON_VERTICES)
    if len(poly.vertices) != 8:
        raise InvariantViolationError("octagon vertices are not in convex position")
    return poly


def hollow_cross(d: int) -> VPolytope:
    """Hull of {e_i} and {e_1 - e_i}: 2d vertices on two adjacent lattice
    hyperplanes, hollow and simplicial."""
    if d < 2:
        raise PreconditionError("need dimension >= 2")
    pts = set()
    for i in range(d):
        e = [0] * d
        e[i] = 1
        pts.add(tuple(e))
        f = [0] * d
        f[0] += 1
        f[i] -= 1
        pts.add(tuple(f))
    poly = convex_hull(pts)
    if len(poly.vertices) != 2 * d:
        raise InvariantViolationError(
            f"cross should have {2 * d} vertices, got {len(poly.vertices)}"
        )
    return poly


def box_polytope(k: int, d: int) -> VPolytope:
    """The box [1, k]^d as a polytope (a single point when k == 1)."""
    if k < 1 or d < 1:
        raise PreconditionError("need k >= 1 and d >= 1")
    if k == 1:
        return point_polytope(tuple(1 for _ in range(d)))
    return convex_hull(itertools.product((1, k), repeat=d))


def ball_polytope(k: int, d: int) -> VPolytope:
    """Hull of the integer points in the ball of radius (k-1)/2.

    The radius comparison 4*|x|^2 <= (k-1)^2 is pure integer arithmetic.
    Degenerates to the origin when the radius drops below 1.
    """
    if k < 2 or d < 2:
        raise PreconditionError("need k >= 2 and d >= 2")
    rr4 = (k - 1) * (k - 1)
    reach = (k - 1) // 2
    pts = [
        p
        for p in itertools.product(range(-reach, reach + 1), repeat=d)
        if 4 * sum(c * c for c in p) <= rr4
    ]
    if len(pts) == 1:
        return point_polytope(pts[0])
    return convex_hull(pts)


def dilated_simplex(d: int) -> VPolytope:
    """conv(0, d*e_1, ..., d*e_d): hollow, with lattice width d."""
    if d < 1:
        raise PreconditionError("need dimension >= 1")
    pts = [tuple(0 for _ in range(d))]
    for i in range(d):
        e = [0] * d
        e[i] = d
        pts.append(tuple(e))
    return convex_hull(pts)
