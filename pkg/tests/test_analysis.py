"""Emptiness, hollowness, the hollow-to-empty reduction, widths, segments."""

import itertools
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hellylat.analysis import (
    directional_width,
    hollow_to_empty,
    is_empty_in,
    is_hollow,
    lattice_width_search,
    longest_segment,
    primitive_directions,
    sample_hollow_simplicial_polytopes,
)
from hellylat.errors import PreconditionError
from hellylat.geometry import convex_hull, is_simplicial, point_polytope
from hellylat.lattices import (
    CongruenceProduct,
    ExponentialLattice,
    IntegerLattice,
    points_in_polytope,
)


def test_hypercube_empty_in_integer_lattice():
    for d in (1, 2, 3, 4):
        verdict = is_empty_in(list(itertools.product((0, 1), repeat=d)), IntegerLattice(d))
        assert verdict.empty
        assert verdict.points_checked == 2**d


def test_flat_triangle_not_empty():
    verdict = is_empty_in([(0, 0), (2, 0), (0, 1)], IntegerLattice(2))
    assert not verdict.empty
    assert verdict.witness == (1, 0)


def test_hyperbola_triple_empty_in_exponential_lattice():
    # independent oracle: enumerate L_2(2) inside the bounding box [1,4]^2
    # and test each against the triangle (1,4), (2,2), (4,1) by cross products
    tri = [(1, 4), (2, 2), (4, 1)]

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def inside_or_on(q):
        signs = [cross(tri[i], tri[(i + 1) % 3], q) for i in range(3)]
        return all(s >= 0 for s in signs) or all(s <= 0 for s in signs)

    candidates = [(2**a, 2**b) for a in range(3) for b in range(3)]
    violators = [q for q in candidates if inside_or_on(q) and q not in tri]
    assert violators == []  # oracle agrees the triple is empty

    verdict = is_empty_in(tri, ExponentialLattice(Fraction(2), 2))
    assert verdict.empty


def test_is_empty_requires_lattice_membership():
    with pytest.raises(PreconditionError):
        is_empty_in([(0, 0), (3, 1)], ExponentialLattice(Fraction(2), 2))


def test_segment_emptiness_degenerate_hull():
    assert is_empty_in([(0, 0), (1, 2)], IntegerLattice(2)).empty
    verdict = is_empty_in([(0, 0), (2, 2)], IntegerLattice(2))
    assert not verdict.empty and verdict.witness == (1, 1)
    assert is_empty_in([(5, 5)], IntegerLattice(2)).empty


def test_hollow_rectangle():
    rect = convex_hull([(0, 0), (1, 0), (0, 5), (1, 5)])
    assert is_hollow(rect, IntegerLattice(2)).empty


def test_hollow_fails_with_witness():
    tri = convex_hull([(0, 0), (3, 0), (0, 3)])
    verdict = is_hollow(tri, IntegerLattice(2))
    assert not verdict.empty
    assert verdict.witness == (1, 1)


def test_hollow_to_empty_single_swap():
    tri = convex_hull([(0, 0), (2, 0), (0, 1)])
    out = hollow_to_empty(tri)
    assert set(out.vertices) == {(1, 0), (2, 0), (0, 1)}
    assert is_empty_in(out.vertices, IntegerLattice(2)).empty


def test_hollow_to_empty_identity_on_empty_input():
    tri = convex_hull([(0, 0), (1, 0), (0, 1)])
    out = hollow_to_empty(tri)
    assert out.vertices == tri.vertices


def test_hollow_to_empty_two_swaps():
    tri = convex_hull([(0, 0), (3, 0), (0, 1)])
    out = hollow_to_empty(tri)
    assert len(out.vertices) == 3
    assert is_empty_in(out.vertices, IntegerLattice(2)).empty


def test_hollow_to_empty_rejects_bad_inputs():
    fat = convex_hull([(0, 0), (3, 0), (0, 3)])
    with pytest.raises(PreconditionError):
        hollow_to_empty(fat)  # not hollow
    cube = convex_hull(itertools.product((0, 2), repeat=3))
    with pytest.raises(PreconditionError):
        hollow_to_empty(cube)  # not simplicial


def test_hollow_to_empty_random_samples():
    for d, seed in ((2, 101), (3, 202)):
        lattice = IntegerLattice(d)
        for poly in sample_hollow_simplicial_polytopes(25, d, 4, seed=seed):
            out = hollow_to_empty(poly)
            assert len(out.vertices) == len(poly.vertices)
            assert is_empty_in(out.vertices, lattice).empty
            assert len(out.vertices) <= 2**d


def test_directional_width_examples():
    simplex = convex_hull([(0, 0), (2, 0), (0, 2)])
    assert directional_width(simplex, (1, 0)) == 2
    assert directional_width(simplex, (1, 1)) == 2
    cube = convex_hull(itertools.product((0, 1), repeat=3))
    assert directional_width(cube, (1, 1, 1)) == 3
    with pytest.raises(PreconditionError):
        directional_width(cube, (0, 0, 0))


def test_lattice_width_search_examples():
    simplex2 = convex_hull([(0, 0), (2, 0), (0, 2)])
    result = lattice_width_search(simplex2, 2)
    assert result.width == 2
    square = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    result = lattice_width_search(square, 1)
    assert result.width == 1
    assert result.direction == (1, 0)


def test_lattice_width_simplex3_matches_bruteforce():
    simplex3 = convex_hull([(0, 0, 0), (3, 0, 0), (0, 3, 0), (0, 0, 3)])

    # independent oracle over all primitive directions with max-norm <= 2
    best = None
    for v in itertools.product(range(-2, 3), repeat=3):
        if v == (0, 0, 0) or gcd(*(abs(c) for c in v)) != 1:
            continue
        values = [sum(a * b for a, b in zip(v, p)) for p in simplex3.vertices]
        width = max(values) - min(values)
        best = width if best is None else min(best, width)
    assert best == 3

    assert lattice_width_search(simplex3, 2).width == 3


def test_width_monotone_in_radius():
    poly = convex_hull([(0, 0), (5, 1), (1, 5), (6, 6)])
    widths = [lattice_width_search(poly, r).width for r in (1, 2, 3, 4)]
    assert all(widths[i + 1] <= widths[i] for i in range(len(widths) - 1))


def test_primitive_directions_canonical():
    dirs = list(primitive_directions(2, 1))
    assert set(dirs) == {(1, -1), (1, 0), (0, 1), (1, 1)}
    assert dirs.index((1, 0)) < dirs.index((0, 1))  # axis e_1 wins ties
    assert all(next(c for c in v if c != 0) > 0 for v in dirs)
    assert all(gcd(*(abs(c) for c in v)) == 1 for v in dirs)


def test_longest_segment_examples():
    box = convex_hull([(1, 1), (3, 1), (1, 3), (3, 3)])
    length, witness = longest_segment(box)
    assert length == 2
    assert witness is not None
    square = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert longest_segment(square)[0] == 1
    assert longest_segment(point_polytope((4, 4))) == (0, None)


def test_longest_segment_implies_point_count():
    # a segment of length k means k+1 collinear lattice points inside
    poly = convex_hull([(0, 0), (4, 0), (0, 3), (4, 3)])
    length, _ = longest_segment(poly)
    count = len(points_in_polytope(IntegerLattice(2), poly))
    assert count >= length + 1


def test_box_segment_tightness():
    from hellylat.constructions import box_polytope

    for d in (1, 2, 3):
        for k in (1, 2, 3, 4, 5):
            poly = box_polytope(k, d)
            assert longest_segment(poly)[0] == k - 1


@given(data=st.data())
@settings(max_examples=20, deadline=None)
def test_empty_implies_hollow(data):
    d = data.draw(st.integers(min_value=2, max_value=3))
    count = data.draw(st.integers(min_value=d + 1, max_value=d + 3))
    pts = data.draw(
        st.lists(
            st.tuples(*[st.integers(min_value=-3, max_value=3) for _ in range(d)]),
            min_size=count,
            max_size=count,
            unique=True,
        )
    )
    lattice = IntegerLattice(d)
    try:
        hull = convex_hull(pts)
    except Exception:
        return
    if is_empty_in(hull.vertices, lattice).empty:
        assert is_hollow(hull, lattice).empty


def test_verdict_definition_cross_check():
    # emptiness verdict must agree with a direct scan of the hull points
    pts = [(0, 0), (2, 1), (1, 2)]
    hull = convex_hull(pts)
    scanned = points_in_polytope(IntegerLattice(2), hull)
    direct = all(label == "vertex" for _, label in scanned)
    assert is_empty_in(pts, IntegerLattice(2)).empty == direct
