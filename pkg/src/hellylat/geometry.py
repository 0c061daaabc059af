"""Exact convex geometry: orientation, hulls, point classification.

Points are plain tuples of exact scalars (int / Fraction / QuadExt).  Hulls
are vertex polytopes with an explicit facet list; everything is decided by
exact sign computations, so results are bit-reproducible.  The hull code
targets desk scale: monotone chain in the plane, supporting-hyperplane
enumeration over point subsets for 3 <= d <= 6.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, lcm
from typing import Iterable, Optional, Sequence

from .errors import (
    DimensionMismatchError,
    LowerDimensionalHullError,
    PreconditionError,
)
from .scalars import QuadExt, Scalar, compare, format_scalar, parse_scalar, scalar_sign

Point = tuple  # tuple of Scalar, length = ambient dimension

#: hulls above this dimension are refused (configurable per call)
MAX_HULL_DIM = 6
#: cap on candidate facet subsets enumerated by the d >= 3 hull
HULL_SUBSET_BUDGET = 5_000_000


def as_point(coords: Iterable) -> Point:
    return tuple(coords)


def vsub(p: Point, q: Point) -> tuple:
    return tuple(a - b for a, b in zip(p, q))


def vdot(u, v) -> Scalar:
    total = 0
    for a, b in zip(u, v):
        total = total + a * b
    return total


def _check_same_dim(pts: Sequence[Point]) -> int:
    dims = {len(p) for p in pts}
    if len(dims) != 1:
        raise DimensionMismatchError(f"mixed point dimensions {sorted(dims)}")
    return dims.pop()


def determinant(rows: Sequence[Sequence[Scalar]]) -> Scalar:
    """Exact determinant by Gaussian elimination with field division."""
    n = len(rows)
    # plain ints must become Fractions so the elimination divides exactly
    m = [[Fraction(x) if isinstance(x, int) else x for x in r] for r in rows]
    sign = 1
    result: Scalar = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if scalar_sign(m[r][col]) != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        pivval = m[col][col]
        result = result * pivval
        for r in range(col + 1, n):
            if scalar_sign(m[r][col]) == 0:
                continue
            f = m[r][col] / pivval
            for c in range(col + 1, n):
                m[r][c] = m[r][c] - f * m[col][c]
            m[r][col] = Fraction(0)
    return result if sign > 0 else -result


def orientation(pts: Sequence[Point]) -> int:
    """Sign of det(pts[1]-pts[0], ..., pts[d]-pts[0]) for d+1 points in R^d."""
    d = _check_same_dim(pts)
    if len(pts) != d + 1:
        raise DimensionMismatchError(
            f"orientation needs {d + 1} points in dimension {d}, got {len(pts)}"
        )
    rows = [vsub(p, pts[0]) for p in pts[1:]]
    return scalar_sign(determinant(rows))


def _rank(vectors: Sequence[Sequence[Scalar]]) -> int:
    """Rank of a list of vectors, exact elimination."""
    echelon: list[list[Scalar]] = []
    for vec in vectors:
        v = [Fraction(x) if isinstance(x, int) else x for x in vec]
        for row in echelon:
            piv = next(i for i, x in enumerate(row) if scalar_sign(x) != 0)
            if scalar_sign(v[piv]) != 0:
                f = v[piv] / row[piv]
                v = [a - f * b for a, b in zip(v, row)]
        if any(scalar_sign(x) != 0 for x in v):
            echelon.append(v)
    return len(echelon)


@dataclass(frozen=True)
class Facet:
    """Supporting inequality <normal, x> <= offset, tight on incident vertices."""

    normal: tuple
    offset: Scalar
    incident: tuple  # sorted indices into the owning polytope's vertex list


@dataclass(frozen=True)
class VPolytope:
    """Polytope given by its canonical (lex-sorted) vertex list plus facets.

    `dim` is the ambient dimension; `affine_dim` equals `dim` for every hull
    built by :func:`convex_hull`.  Degenerate single-point polytopes (used by
    a couple of constructions) carry `affine_dim` 0 and no facets.
    """

    dim: int
    vertices: tuple
    facets: tuple
    affine_dim: int

    @property
    def is_full_dimensional(self) -> bool:
        return self.affine_dim == self.dim

    def bounding_box(self) -> list:
        lows = []
        highs = []
        for axis in range(self.dim):
            vals = [v[axis] for v in self.vertices]
            lo = vals[0]
            hi = vals[0]
            for x in vals[1:]:
                if compare(x, lo) < 0:
                    lo = x
                if compare(x, hi) > 0:
                    hi = x
            lows.append(lo)
            highs.append(hi)
        return list(zip(lows, highs))

    def to_json_dict(self) -> dict:
        kind = "rational"
        for v in self.vertices:
            for c in v:
                if isinstance(c, QuadExt):
                    kind = f"quad:{c.d}"
                    break
        return {
            "dim": self.dim,
            "scalar": kind,
            "vertices": [[format_scalar(c) for c in v] for v in self.vertices],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "VPolytope":
        pts = [tuple(parse_scalar(s) for s in row) for row in data["vertices"]]
        if len(pts) == 1:
            return point_polytope(pts[0])
        return convex_hull(pts)


def point_polytope(p: Point) -> VPolytope:
    """The degenerate polytope consisting of a single point."""
    return VPolytope(dim=len(p), vertices=(tuple(p),), facets=(), affine_dim=0)


def _canonical_normal_int(normal: Sequence[Scalar], offset: Scalar):
    """Scale an all-rational facet inequality to primitive integers."""
    fracs = [Fraction(x) for x in normal]
    den = lcm(*(f.denominator for f in fracs), Fraction(offset).denominator)
    ints = [int(f * den) for f in fracs]
    off = Fraction(offset) * den
    g = gcd(*(abs(i) for i in ints))
    if g > 1:
        ints = [i // g for i in ints]
        off = off / g
    return tuple(ints), off if off.denominator != 1 else off.numerator


def _canonical_facet(normal, offset, incident) -> Facet:
    if all(isinstance(x, (int, Fraction)) for x in normal) and isinstance(
        offset, (int, Fraction)
    ):
        n, c = _canonical_normal_int(normal, offset)
        return Facet(n, c, tuple(sorted(incident)))
    # quadratic entries: scale so the leading nonzero has absolute value 1,
    # keeping the outward direction
    lead = next(x for x in normal if scalar_sign(x) != 0)
    s = lead if scalar_sign(lead) > 0 else -lead
    return Facet(
        tuple(x / s for x in normal),
        offset / s,
        tuple(sorted(incident)),
    )


def _hull_1d(pts: list) -> VPolytope:
    lo, hi = pts[0], pts[-1]
    verts = (lo, hi)
    facets = (
        _canonical_facet((Fraction(1),), hi[0], (1,)),
        _canonical_facet((Fraction(-1),), -lo[0], (0,)),
    )
    return VPolytope(1, verts, tuple(sorted(facets, key=_facet_key)), 1)


def _cross2(o: Point, a: Point, b: Point) -> int:
    return scalar_sign((a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]))


def _hull_2d(pts: list) -> VPolytope:
    # monotone chain with strict turns; pts is lex-sorted and deduplicated
    def chain(seq):
        out: list = []
        for p in seq:
            while len(out) > 1 and _cross2(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    cycle = lower[:-1] + upper[:-1]  # ccw
    verts = tuple(sorted(cycle))
    index = {v: i for i, v in enumerate(verts)}
    facets = []
    h = len(cycle)
    for i in range(h):
        v1, v2 = cycle[i], cycle[(i + 1) % h]
        n = (v2[1] - v1[1], v1[0] - v2[0])
        facets.append(_canonical_facet(n, vdot(n, v1), (index[v1], index[v2])))
    facets.sort(key=_facet_key)
    return VPolytope(2, verts, tuple(facets), 2)


def _facet_key(f: Facet):
    return ([format_scalar(x) for x in f.normal], format_scalar(f.offset))


def _normal_from_subset(base: Point, others: Sequence[Point], d: int):
    """Generalized cross product of the d-1 difference vectors, or None."""
    rows = [vsub(p, base) for p in others]
    normal = []
    for j in range(d):
        minor = [[row[c] for c in range(d) if c != j] for row in rows]
        cof = determinant(minor)
        normal.append(cof if j % 2 == 0 else -cof)
    if all(scalar_sign(x) == 0 for x in normal):
        return None
    return tuple(normal)


def _hull_nd(pts: list, d: int) -> VPolytope:
    n = len(pts)
    if comb(n, d) > HULL_SUBSET_BUDGET:
        raise PreconditionError(
            f"hull of {n} points in dimension {d} exceeds the subset budget"
        )
    seen: set = set()
    supporting = []  # (normal, offset) outward
    for subset in itertools.combinations(range(n), d):
        normal = _normal_from_subset(pts[subset[0]], [pts[i] for i in subset[1:]], d)
        if normal is None:
            continue
        lead = next(x for x in normal if scalar_sign(x) != 0)
        canon = tuple(x / lead for x in normal)
        offset = vdot(canon, pts[subset[0]])
        key = (canon, offset)
        if key in seen:
            continue
        seen.add(key)
        below = above = False
        for p in pts:
            s = scalar_sign(vdot(canon, p) - offset)
            if s > 0:
                above = True
            elif s < 0:
                below = True
            if above and below:
                break
        if above and below:
            continue
        if above:  # flip outward
            canon = tuple(-x for x in canon)
            offset = -offset
        supporting.append((canon, offset))

    # classify input points against the supporting hyperplanes
    active = [[] for _ in range(n)]
    for fi, (normal, offset) in enumerate(supporting):
        for pi, p in enumerate(pts):
            if scalar_sign(vdot(normal, p) - offset) == 0:
                active[pi].append(fi)
    vertex_ids = [
        pi
        for pi in range(n)
        if len(active[pi]) >= d
        and _rank([supporting[fi][0] for fi in active[pi]]) == d
    ]
    verts = tuple(sorted(pts[pi] for pi in vertex_ids))
    index = {v: i for i, v in enumerate(verts)}
    facets = []
    for fi, (normal, offset) in enumerate(supporting):
        incident = [index[pts[pi]] for pi in vertex_ids if fi in active[pi]]
        facets.append(_canonical_facet(normal, offset, incident))
    facets.sort(key=_facet_key)
    return VPolytope(d, verts, tuple(facets), d)


def convex_hull(points: Iterable[Point], *, max_dim: int = MAX_HULL_DIM) -> VPolytope:
    """Exact convex hull with merged (non-simplicial) facets.

    Raises LowerDimensionalHullError when the input is not full-dimensional;
    callers that can live with flats must project explicitly.
    """
    pts = sorted(set(tuple(p) for p in points))
    if not pts:
        raise PreconditionError("empty point set")
    d = _check_same_dim(pts)
    if d > max_dim:
        raise PreconditionError(f"dimension {d} above hull cap {max_dim}")
    base = pts[0]
    rank_basis: list = []
    for p in pts[1:]:
        cand = rank_basis + [vsub(p, base)]
        if _rank(cand) > len(rank_basis):
            rank_basis = cand
        if len(rank_basis) == d:
            break
    if len(rank_basis) < d:
        raise LowerDimensionalHullError(len(rank_basis), d)
    if d == 1:
        return _hull_1d(pts)
    if d == 2:
        return _hull_2d(pts)
    return _hull_nd(pts, d)


@dataclass(frozen=True)
class PointLocation:
    """Result of classifying a point against a full-dimensional polytope."""

    kind: str  # "interior" | "boundary" | "exterior"
    minimal_face: Optional[tuple] = None  # vertex indices, boundary only

    @property
    def inside(self) -> bool:
        return self.kind != "exterior"


def classify_point(poly: VPolytope, x: Point) -> PointLocation:
    """Locate x relative to poly; boundary results carry the minimal face.

    The minimal face is the intersection of all facets through x, reported
    as the sorted indices of the vertices spanning it.
    """
    if len(x) != poly.dim:
        raise DimensionMismatchError(
            f"point dimension {len(x)} != polytope dimension {poly.dim}"
        )
    if not poly.is_full_dimensional:
        raise PreconditionError("classify_point requires a full-dimensional polytope")
    tight: list = []
    for f in poly.facets:
        s = scalar_sign(vdot(f.normal, x) - f.offset)
        if s > 0:
            return PointLocation("exterior")
        if s == 0:
            tight.append(f)
    if not tight:
        return PointLocation("interior")
    face = set(tight[0].incident)
    for f in tight[1:]:
        face &= set(f.incident)
    return PointLocation("boundary", tuple(sorted(face)))


def is_simplicial(poly: VPolytope) -> bool:
    """True iff every facet has exactly d incident vertices."""
    if not poly.is_full_dimensional:
        raise PreconditionError("is_simplicial requires a full-dimensional polytope")
    return all(len(f.incident) == poly.dim for f in poly.facets)


def is_general_position(pts: Sequence[Point]) -> bool:
    """True iff no d+1 of the points lie on a common hyperplane."""
    pts = [tuple(p) for p in pts]
    d = _check_same_dim(pts)
    if len(pts) <= d:
        return True
    return all(
        orientation(sub) != 0 for sub in itertools.combinations(pts, d + 1)
    )
