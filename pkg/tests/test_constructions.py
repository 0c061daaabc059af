"""Named constructions and their self-checks."""

from fractions import Fraction

import pytest

from hellylat.analysis import is_empty_in, is_hollow, longest_segment
from hellylat.constructions import (
    ball_polytope,
    box_polytope,
    dilated_simplex,
    fibonacci_context,
    fibonacci_polygon,
    fibonacci_syndetic,
    hollow_cross,
    hyperbola_emptiness_condition,
    hyperbola_polytope,
    mod3_octagon,
)
from hellylat.errors import PreconditionError
from hellylat.geometry import is_simplicial, orientation
from hellylat.lattices import (
    CongruenceProduct,
    ExponentialLattice,
    IntegerLattice,
    membership,
    points_in_polytope,
)
from hellylat.scalars import binomial


def test_fibonacci_context_identities():
    ctx = fibonacci_context()
    assert [ctx.fib(n) for n in range(10)] == [0, 1, 1, 2, 3, 5, 8, 13, 21, 34]
    assert all(ctx.binet_holds(n) for n in range(25))


def test_hyperbola_small_cases():
    poly = hyperbola_polytope(Fraction(2), 2, 2)
    assert poly.vertices == ((1, 4), (2, 2), (4, 1))

    poly = hyperbola_polytope(Fraction(101, 100), 2, 10)
    assert len(poly.vertices) == 11 == binomial(11, 1)

    poly = hyperbola_polytope(Fraction(5, 4), 3, 2)
    assert len(poly.vertices) == 6 == binomial(4, 2)


def test_hyperbola_vertex_count_formula():
    for d in (2, 3, 4):
        for k in (1, 2, 3):
            poly = hyperbola_polytope(Fraction(2), d, k)
            assert len(poly.vertices) == binomial(k + d - 1, d - 1)


def test_hyperbola_all_curve_points_extreme_full_range():
    # tangent-functional oracle: p is the unique minimizer of
    # f(x) = sum(x_i / p_i), since for any other curve point AM-GM gives
    # f(q) = sum(alpha^(m_i - n_i)) > d; this certifies every curve point
    # is a vertex without building high-dimensional hulls
    alpha = Fraction(3, 2)
    for d in (2, 3, 4):
        for k in (1, 2, 3, 4, 5, 6):
            poly = hyperbola_polytope(alpha, d, k)
            pts = poly.vertices
            assert len(pts) == binomial(k + d - 1, d - 1)
            for p in pts:
                for q in pts:
                    if p is q:
                        continue
                    f = sum(Fraction(qc) / Fraction(pc) for qc, pc in zip(q, p))
                    assert f > d


def test_hyperbola_sufficient_condition_reported():
    assert hyperbola_emptiness_condition(Fraction(2), 2, 2)
    assert hyperbola_emptiness_condition(Fraction(101, 100), 2, 10)


def test_fibonacci_polygon_first_points():
    pts = fibonacci_polygon(3)
    assert pts[0] == (-1, 3)
    assert pts[1] == (-3, 9)
    assert pts[2] == (-8, 25)
    # slope between the first two: (9-3)/(-3+1) = -3 = -2*F_4/F_3
    assert Fraction(9 - 3, -3 + 1) == Fraction(-2 * 3, 2)


def test_fibonacci_distance_identity_20_terms():
    ctx = fibonacci_context()
    for i in range(1, 21):
        gap = 2 * ctx.phi * ctx.fib(2 * i) - (2 * ctx.fib(2 * i + 1) - 1)
        expected = 1 - 2 * ctx.psi ** (2 * i)
        assert gap == expected
        assert Fraction(0) < expected < Fraction(1) or expected == gap  # exact object
        # the distance is strictly between 0 and 1
        from hellylat.scalars import compare

        assert compare(expected, 0) > 0
        assert compare(expected, 1) < 0


def test_fibonacci_syndetic_prefix_three():
    syn = fibonacci_syndetic(3)
    assert {int(p[1]) for p in syn.polygon.vertices} == {3, 9, 25}
    assert all(y not in syn.excluded for y in (3, 9, 25))
    lo, hi = syn.window
    removed = set(syn.excluded)
    for n in range(lo, hi):
        assert n not in removed or (n + 1) not in removed
    assert is_empty_in(syn.polygon.vertices, syn.product).empty


def test_fibonacci_syndetic_needs_three_points():
    with pytest.raises(PreconditionError):
        fibonacci_syndetic(2)


def test_mod3_octagon():
    poly = mod3_octagon()
    assert len(poly.vertices) == 8
    lattice = CongruenceProduct(frozenset({0, 1}), 3, 2)
    for v in poly.vertices:
        assert membership(lattice, v)
    assert is_empty_in(poly.vertices, lattice).empty
    # convex position: consecutive orientation checks around the boundary
    ring = [(0, 0), (1, 0), (3, 1), (6, 3), (7, 4), (6, 4), (4, 3), (1, 1)]
    turns = {
        orientation([ring[i], ring[(i + 1) % 8], ring[(i + 2) % 8]])
        for i in range(8)
    }
    assert turns == {1}


def test_hollow_cross_properties():
    for d in range(2, 7):
        poly = hollow_cross(d)
        assert len(poly.vertices) == 2 * d
        assert is_simplicial(poly)
        assert is_hollow(poly, IntegerLattice(d)).empty
        # all vertices on the two adjacent hyperplanes <x, 1> in {0, 1}
        for v in poly.vertices:
            assert sum(v) in (0, 1)


def test_box_polytope():
    poly = box_polytope(3, 2)
    pts = points_in_polytope(IntegerLattice(2), poly)
    assert len(pts) == 9
    assert longest_segment(poly)[0] == 2
    assert box_polytope(1, 3).vertices == ((1, 1, 1),)
    assert len(points_in_polytope(IntegerLattice(3), box_polytope(1, 3))) == 1


def test_ball_polytope_small():
    poly = ball_polytope(5, 2)
    assert poly.vertices == ((-2, 0), (0, -2), (0, 2), (2, 0))
    assert longest_segment(poly)[0] <= 4
    assert ball_polytope(2, 2).vertices == ((0, 0),)


def test_ball_polytope_vertices_bruteforce():
    # oracle: hull of the 13 disk points via an independent Graham-style scan
    pts = [
        (x, y)
        for x in range(-2, 3)
        for y in range(-2, 3)
        if x * x + y * y <= 4
    ]
    assert len(pts) == 13

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    pts_sorted = sorted(pts)
    def chain(seq):
        out = []
        for p in seq:
            while len(out) > 1 and cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    hull = set(chain(pts_sorted)[:-1] + chain(reversed(pts_sorted))[:-1])
    assert hull == set(ball_polytope(5, 2).vertices)


def test_ball_points_satisfy_ball_inequality():
    poly = ball_polytope(9, 2)
    for p, _ in points_in_polytope(IntegerLattice(2), poly):
        assert 4 * (p[0] ** 2 + p[1] ** 2) <= 64


def test_dilated_simplex():
    from hellylat.analysis import lattice_width_search

    poly = dilated_simplex(2)
    assert is_hollow(poly, IntegerLattice(2)).empty
    assert lattice_width_search(poly, 2).width == 2
    assert lattice_width_search(dilated_simplex(3), 2).width == 3
