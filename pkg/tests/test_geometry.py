"""Exact hulls, orientation, and point classification."""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hellylat.errors import DimensionMismatchError, LowerDimensionalHullError
from hellylat.geometry import (
    VPolytope,
    classify_point,
    convex_hull,
    is_general_position,
    is_simplicial,
    orientation,
    point_polytope,
    vdot,
)


def solve_barycentric(simplex, point):
    """Fraction Gaussian solve of sum(l_i v_i) = p, sum(l_i) = 1, or None."""
    d = len(point)
    size = d + 1
    rows = []
    for r in range(size):
        row = []
        for v in simplex:
            row.append(Fraction(1) if r == 0 else Fraction(v[r - 1]))
        row.append(Fraction(1) if r == 0 else Fraction(point[r - 1]))
        rows.append(row)
    for col in range(size):
        piv = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if piv is None:
            return None
        rows[col], rows[piv] = rows[piv], rows[col]
        pivval = rows[col][col]
        rows[col] = [x / pivval for x in rows[col]]
        for r in range(size):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return [rows[r][size] for r in range(size)]


def in_hull_oracle(point, pts):
    """Caratheodory brute force: inside iff some (d+1)-simplex captures it."""
    d = len(point)
    for sub in itertools.combinations(pts, d + 1):
        coords = solve_barycentric(sub, point)
        if coords is not None and all(c >= 0 for c in coords):
            return True
    return False


def test_orientation_examples():
    assert orientation([(0, 0), (1, 0), (0, 1)]) == 1
    assert orientation([(0, 0), (1, 1), (2, 2)]) == 0
    assert orientation([(0, 0), (0, 1), (1, 0)]) == -1


def test_orientation_dimension_check():
    with pytest.raises(DimensionMismatchError):
        orientation([(0, 0), (1, 0)])


def test_hull_drops_interior_point():
    poly = convex_hull(
        [(0, 0), (1, 0), (0, 1), (1, 1), (Fraction(1, 2), Fraction(1, 2))]
    )
    assert poly.vertices == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert len(poly.facets) == 4


def test_hull_cube():
    poly = convex_hull(itertools.product((0, 1), repeat=3))
    assert len(poly.vertices) == 8
    assert len(poly.facets) == 6
    assert all(len(f.incident) == 4 for f in poly.facets)
    assert not is_simplicial(poly)


def test_hull_octagon_figure():
    pts = [(0, 0), (1, 0), (3, 1), (6, 3), (7, 4), (6, 4), (4, 3), (1, 1)]
    poly = convex_hull(pts)
    assert len(poly.vertices) == 8
    assert set(poly.vertices) == set(pts)


def test_hull_degenerate_input():
    with pytest.raises(LowerDimensionalHullError) as exc:
        convex_hull([(0, 0), (1, 1), (2, 2)])
    assert exc.value.affine_dim == 1


def test_facet_inequalities_hold():
    poly = convex_hull([(0, 0, 0), (2, 0, 0), (0, 3, 0), (0, 0, 1), (1, 1, 1)])
    for f in poly.facets:
        assert len(f.incident) >= 3
        for i, v in enumerate(poly.vertices):
            s = vdot(f.normal, v) - f.offset
            if i in f.incident:
                assert s == 0
            else:
                assert s < 0 or s == 0  # tightness only on incident vertices
        tight = [i for i, v in enumerate(poly.vertices)
                 if vdot(f.normal, v) == f.offset]
        assert tuple(sorted(tight)) == f.incident


def test_classify_point_examples():
    square = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert classify_point(square, (Fraction(1, 2), Fraction(1, 2))).kind == "interior"
    assert classify_point(square, (2, 0)).kind == "exterior"
    tri = convex_hull([(0, 0), (2, 0), (0, 1)])
    loc = classify_point(tri, (1, 0))
    assert loc.kind == "boundary"
    assert {tri.vertices[i] for i in loc.minimal_face} == {(0, 0), (2, 0)}


def test_classify_vertices_minimal_face_is_singleton():
    poly = convex_hull(itertools.product((0, 1), repeat=3))
    for i, v in enumerate(poly.vertices):
        loc = classify_point(poly, v)
        assert loc.kind == "boundary"
        assert loc.minimal_face == (i,)


def test_is_simplicial_examples():
    assert is_simplicial(convex_hull([(0, 0), (1, 0), (0, 1)]))
    assert not is_simplicial(convex_hull(itertools.product((0, 1), repeat=3)))


def test_general_position_examples():
    assert is_general_position([(0, 0), (1, 0), (0, 1)])
    assert not is_general_position([(0, 0), (1, 1), (2, 2)])
    assert not is_general_position(list(itertools.product((0, 1), repeat=3)))


def test_point_polytope_guard():
    poly = point_polytope((2, 3))
    assert poly.affine_dim == 0
    assert poly.vertices == ((2, 3),)


@given(data=st.data())
@settings(max_examples=25, deadline=None)
def test_hull_vertices_match_bruteforce_extremality(data):
    d = data.draw(st.integers(min_value=2, max_value=3))
    count = data.draw(st.integers(min_value=d + 1, max_value=d + 5))
    pts = data.draw(
        st.lists(
            st.tuples(*[st.integers(min_value=-5, max_value=5) for _ in range(d)]),
            min_size=count,
            max_size=count,
            unique=True,
        )
    )
    try:
        poly = convex_hull(pts)
    except LowerDimensionalHullError:
        return
    hull_vertices = set(poly.vertices)
    for p in pts:
        others = [q for q in pts if q != p]
        extreme = not in_hull_oracle(p, others)
        assert (p in hull_vertices) == extreme
    # every input point classifies as inside-or-on
    for p in pts:
        assert classify_point(poly, p).kind in {"interior", "boundary"}


@given(data=st.data())
@settings(max_examples=20, deadline=None)
def test_general_position_implies_simplicial(data):
    d = data.draw(st.integers(min_value=2, max_value=3))
    count = data.draw(st.integers(min_value=d + 1, max_value=d + 4))
    pts = data.draw(
        st.lists(
            st.tuples(*[st.integers(min_value=-6, max_value=6) for _ in range(d)]),
            min_size=count,
            max_size=count,
            unique=True,
        )
    )
    if not is_general_position(pts):
        return
    poly = convex_hull(pts)
    assert is_simplicial(poly)


def test_json_round_trip():
    poly = convex_hull([(0, 0), (3, 0), (0, 2), (3, 2)])
    data = poly.to_json_dict()
    assert data["scalar"] == "rational"
    again = VPolytope.from_json_dict(data)
    assert again.vertices == poly.vertices
    assert [f.normal for f in again.facets] == [f.normal for f in poly.facets]


def test_random_hull_2d_against_independent_chain():
    rng = random.Random(5)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def chain_hull(points):
        points = sorted(set(points))
        def half(seq):
            out = []
            for p in seq:
                while len(out) > 1 and cross(out[-2], out[-1], p) <= 0:
                    out.pop()
                out.append(p)
            return out
        lower = half(points)
        upper = half(reversed(points))
        return set(lower[:-1] + upper[:-1])

    for _ in range(30):
        pts = [(rng.randint(-8, 8), rng.randint(-8, 8)) for _ in range(12)]
        expected = chain_hull(pts)
        if len(expected) < 3:
            continue
        poly = convex_hull(pts)
        assert set(poly.vertices) == expected
