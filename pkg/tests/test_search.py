"""The windowed empty-subset search engine and residue checks."""

import itertools
import json
from fractions import Fraction

import pytest

from hellylat.analysis import is_empty_in
from hellylat.errors import PreconditionError
from hellylat.lattices import (
    CongruenceProduct,
    ExponentialLattice,
    IntegerLattice,
    Window,
)
from hellylat.scalars import QuadExt, binomial, ceil_log
from hellylat.search import (
    classify_pentagons,
    empty_subsets_of_size,
    max_empty_subset,
    pentagon_template_match,
    pigeonhole_condition,
    residue_multiplicity_search,
    residue_pigeonhole_check,
)

PHI = QuadExt(Fraction(1, 2), Fraction(1, 2), 5)


def test_unit_square_max():
    report = max_empty_subset(IntegerLattice(2), Window.cube(0, 1, 2))
    assert report.max_empty_size == 4
    assert report.witness == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert report.exhaustive


def test_alpha2_window_max_is_five():
    lattice = ExponentialLattice(Fraction(2), 2)
    report = max_empty_subset(lattice, Window.cube(0, 6, 2, exponents=True))
    assert report.max_empty_size == 5
    assert report.exhaustive
    assert is_empty_in(report.witness, lattice).empty


def test_mod3_window_max_is_eight():
    lattice = CongruenceProduct(frozenset({0, 1}), 3, 2)
    report = max_empty_subset(lattice, Window.cube(-1, 8, 2))
    assert report.max_empty_size == 8
    assert report.exhaustive
    assert is_empty_in(report.witness, lattice).empty


def test_search_brute_force_cross_check_small_window():
    # independent oracle: enumerate every subset of the 3x3 grid
    lattice = IntegerLattice(2)
    window = Window.cube(0, 2, 2)
    pts = list(itertools.product(range(3), repeat=2))
    best = 0
    for size in range(1, 10):
        for sub in itertools.combinations(pts, size):
            if is_empty_in(sub, lattice).empty:
                best = max(best, size)
    report = max_empty_subset(lattice, window)
    assert report.max_empty_size == best


def test_window_monotonicity():
    lattice = ExponentialLattice(Fraction(2), 2)
    sizes = [
        max_empty_subset(lattice, Window.cube(0, e, 2, exponents=True)).max_empty_size
        for e in (1, 2, 3, 4, 5)
    ]
    assert sizes == sorted(sizes)


def test_theorem1_upper_bound_consistency():
    # the window maximum never exceeds 2*ceil_log(alpha, alpha/(alpha-1)) + 3
    for alpha in (Fraction(2), Fraction(3, 2), Fraction(5, 4)):
        lattice = ExponentialLattice(alpha, 2)
        bound = 2 * ceil_log(alpha, alpha / (alpha - 1)) + 3
        report = max_empty_subset(lattice, Window.cube(0, 4, 2, exponents=True))
        assert report.max_empty_size <= bound


def test_theorem2_lower_bound_consistency():
    from hellylat.constructions import hyperbola_polytope

    lattice = ExponentialLattice(Fraction(2), 2)
    poly = hyperbola_polytope(Fraction(2), 2, 2)
    report = max_empty_subset(lattice, Window.cube(0, 2, 2, exponents=True))
    assert report.max_empty_size >= binomial(3, 1) == len(poly.vertices)


def test_theorem3_consistency_no_congruent_witness_pair():
    # condition holds for S = {0..3} mod 5 in the plane: d=2 < 4
    assert pigeonhole_condition(4, 5, 2)
    lattice = CongruenceProduct(frozenset({0, 1, 2, 3}), 5, 2)
    report = max_empty_subset(lattice, Window.cube(0, 6, 2))
    assert report.witness
    for a, b in itertools.combinations(report.witness, 2):
        assert any((x - y) % 5 for x, y in zip(a, b))


def test_target_early_stop():
    lattice = ExponentialLattice(Fraction(2), 2)
    report = max_empty_subset(
        lattice, Window.cube(0, 6, 2, exponents=True), target=4
    )
    assert report.max_empty_size >= 4
    assert not report.exhaustive


def test_node_budget_reports_partial():
    lattice = ExponentialLattice(Fraction(2), 2)
    report = max_empty_subset(
        lattice, Window.cube(0, 6, 2, exponents=True), node_budget=50
    )
    assert report.wall_budget_hit
    assert not report.exhaustive
    assert report.max_empty_size >= 1


def test_serial_and_parallel_reports_identical():
    lattice = ExponentialLattice(Fraction(2), 2)
    window = Window.cube(0, 5, 2, exponents=True)
    serial = max_empty_subset(lattice, window, workers=1)
    parallel = max_empty_subset(lattice, window, workers=4)
    assert json.dumps(serial.to_json_dict(), sort_keys=True) == json.dumps(
        parallel.to_json_dict(), sort_keys=True
    )


def test_generic_path_dimensions():
    report = max_empty_subset(IntegerLattice(1), Window.cube(0, 4, 1))
    assert report.max_empty_size == 2  # adjacent integer pairs only
    report = max_empty_subset(IntegerLattice(3), Window.cube(0, 1, 3))
    assert report.max_empty_size == 8  # the unit cube


def test_pentagon_template_positive_example():
    lattice = ExponentialLattice(Fraction(2), 2)
    pentagon = [(1, 8), (8, 1), (4, 4), (2, 8), (8, 2)]
    # exponents (0,3), (3,0), (2,2), (1,3), (3,1) match (p,q,r,s) = (0,3,3,0)
    exps = frozenset({(0, 3), (3, 0), (2, 2), (1, 3), (3, 1)})
    assert pentagon_template_match(exps) == (0, 3, 3, 0)
    assert classify_pentagons(lattice, [pentagon])


def test_pentagon_rejects_non_empty_input():
    lattice = ExponentialLattice(Fraction(2), 2)
    bad = [(1, 1), (2, 1), (1, 2), (2, 2), (4, 4)]
    with pytest.raises(PreconditionError):
        classify_pentagons(lattice, [bad])


def test_pentagon_staircase_counterexample_documented():
    # this five-point set is empty in L_2(2) (re-verified) yet does not fit
    # the maximal-pentagon template: two vertical edges, no negative slope
    lattice = ExponentialLattice(Fraction(2), 2)
    staircase = [(1, 1), (1, 2), (2, 4), (2, 8), (4, 16)]
    assert is_empty_in(staircase, lattice).empty
    assert not classify_pentagons(lattice, [staircase])


def test_enumerate_size5_subsets_match_bruteforce():
    # independent oracle on the [0,3]^2 exponent window
    lattice = ExponentialLattice(Fraction(2), 2)
    pts = [(2**a, 2**b) for a in range(4) for b in range(4)]
    brute = {
        sub
        for sub in itertools.combinations(sorted(pts), 5)
        if is_empty_in(sub, lattice).empty
    }
    engine = empty_subsets_of_size(lattice, Window.cube(0, 3, 2, exponents=True), 5)
    assert {tuple(w) for w in engine} == brute


def test_pigeonhole_examples():
    report = residue_pigeonhole_check([0, 1], 3, 1)
    assert report.condition_holds and report.verified

    report = residue_pigeonhole_check([0, 1, 2, 3], 5, 3)
    assert report.condition_holds and report.verified

    report = residue_pigeonhole_check([0, 1], 3, 2)
    assert not report.condition_holds
    assert not report.verified
    assert report.counterexample is not None
    # replay the counterexample: no intermediate point lands in S^d
    u, w = report.counterexample
    for i in range(1, 3):
        coords = [(ui + i * wi) % 3 for ui, wi in zip(u, w)]
        assert any(c not in {0, 1} for c in coords)


def test_pigeonhole_d1_by_hand():
    # 12 evaluations: every (u, w) pair for S={0,1} mod 3 in one dimension
    for u in (0, 1):
        for w in range(3):
            assert any((u + i * w) % 3 in {0, 1} for i in (1, 2))


def test_multiplicity_search_mod3():
    lattice = CongruenceProduct(frozenset({0, 1}), 3, 2)
    window = Window.cube(-1, 8, 2)
    hit = residue_multiplicity_search(lattice, window, (0, 0), 2)
    assert hit.witness is not None
    matching = [
        p for p in hit.witness if all(int(c) % 3 == 0 for c in p)
    ]
    assert len(matching) >= 2
    assert is_empty_in(hit.witness, lattice).empty

    miss = residue_multiplicity_search(lattice, window, (0, 0), 3)
    assert miss.witness is None
    assert miss.exhaustive


def test_multiplicity_search_trivial_guard():
    result = residue_multiplicity_search(
        IntegerLattice(1), Window.cube(0, 3, 1), (0,), 1
    )
    assert result.witness == ((0,),)


def test_checkpoint_resume(tmp_path):
    lattice = ExponentialLattice(Fraction(2), 2)
    window = Window.cube(0, 4, 2, exponents=True)
    path = str(tmp_path / "search.ckpt")
    full = max_empty_subset(lattice, window)
    first = max_empty_subset(lattice, window, checkpoint_path=path)
    assert first.to_json_dict() == full.to_json_dict()
    # drop all but the header and ten partition records, then resume
    lines = (tmp_path / "search.ckpt").read_text().strip().splitlines()
    (tmp_path / "search.ckpt").write_text("\n".join(lines[:11]) + "\n")
    resumed = max_empty_subset(lattice, window, checkpoint_path=path)
    assert resumed.to_json_dict() == full.to_json_dict()
    # a checkpoint for different parameters is refused
    with pytest.raises(PreconditionError):
        max_empty_subset(
            lattice, Window.cube(0, 3, 2, exponents=True), checkpoint_path=path
        )


def test_multiplicity_parallel_identical():
    lattice = CongruenceProduct(frozenset({0, 1}), 3, 2)
    window = Window.cube(-1, 8, 2)
    serial = residue_multiplicity_search(lattice, window, (0, 0), 3, workers=1)
    parallel = residue_multiplicity_search(lattice, window, (0, 0), 3, workers=4)
    assert serial.to_json_dict() == parallel.to_json_dict()
