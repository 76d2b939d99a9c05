"""Tests for the signed resolution cube and its integer homology."""

from fractions import Fraction

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact import corpus
from artifact.algebra import LaurentPoly, quantum_integer
from artifact.cube import (
    BigradedHomology,
    ComplexError,
    GradedChainComplex,
    build_complex,
    check_invariance,
    euler_characteristic,
    homology,
    homology_json,
    link_homology,
    smith_diagonal,
)
from artifact.diagram import parse_pd
from artifact.web import link_bracket


# ==========================================================================
# Smith normal form
# ==========================================================================


def test_smith_of_identity():
    assert smith_diagonal([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == [1, 1, 1]


def test_smith_of_zero_and_empty():
    assert smith_diagonal([[0, 0], [0, 0]]) == []
    assert smith_diagonal([]) == []
    assert smith_diagonal([[], []]) == []


def test_smith_known_small_cases():
    assert smith_diagonal([[2, 0], [0, 3]]) == [1, 6]
    assert smith_diagonal([[2, 4], [6, 8]]) == [2, 4]
    assert smith_diagonal([[1, 2], [3, 4]]) == [1, 2]
    assert smith_diagonal([[3]]) == [3]
    assert smith_diagonal([[0, 5]]) == [5]
    assert smith_diagonal([[6, 10, 15]]) == [1]
    assert smith_diagonal([[2, 0], [0, 2], [0, 0]]) == [2, 2]


def _rank_over_rationals(mat):
    rows = [[Fraction(x) for x in row] for row in mat]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = Fraction(1) / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


small_matrices = st.lists(
    st.lists(st.integers(min_value=-9, max_value=9), min_size=1, max_size=4),
    min_size=1,
    max_size=4,
).filter(lambda rows: len({len(r) for r in rows}) == 1)


@settings(max_examples=120, deadline=None)
@given(small_matrices)
def test_smith_rank_matches_rational_rank(mat):
    diag = smith_diagonal(mat)
    assert len(diag) == _rank_over_rationals(mat)


@settings(max_examples=120, deadline=None)
@given(small_matrices)
def test_smith_entries_positive_and_divisor_chain(mat):
    diag = smith_diagonal(mat)
    assert all(x > 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert b % a == 0


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_smith_first_entry_is_gcd_of_entries(mat):
    diag = smith_diagonal(mat)
    nonzero = [abs(x) for row in mat for x in row if x]
    if not nonzero:
        assert diag == []
    else:
        g = 0
        for x in nonzero:
            while x:
                g, x = x, g % x
        assert diag[0] == g


# ==========================================================================
# cube structure
# ==========================================================================


def test_positive_kink_chain_groups():
    cx = build_complex(corpus.UNKNOT_KINK_POS)
    assert cx.hom_range() == (0, 1)
    assert cx.group_dimension(0) == 9
    assert cx.group_dimension(1) == 6
    assert cx.vertices[(0,)].shift == -2
    assert cx.vertices[(1,)].shift == -3
    assert sorted(cx.vertices[(0,)].q_degrees) == [-6, -4, -4, -2, -2, -2, 0, 0, 2]
    assert sorted(cx.vertices[(1,)].q_degrees) == [-6, -4, -4, -2, -2, 0]


def test_negative_kink_chain_groups():
    cx = build_complex(corpus.UNKNOT_KINK_NEG)
    assert cx.hom_range() == (-1, 0)
    assert cx.group_dimension(-1) == 6
    assert cx.group_dimension(0) == 9
    assert cx.vertices[(0,)].shift == 3
    assert cx.vertices[(1,)].shift == 2


def test_hom_ranges_follow_crossing_signs():
    assert build_complex(corpus.TREFOIL).hom_range() == (0, 3)
    assert build_complex(corpus.TREFOIL_MIRROR).hom_range() == (-3, 0)
    assert build_complex(corpus.FIGURE_EIGHT).hom_range() == (-2, 2)


def test_edge_sign_counts_earlier_chosen_crossings():
    assert GradedChainComplex.edge_sign((0, 0, 0), 0) == 1
    assert GradedChainComplex.edge_sign((1, 0, 0), 1) == -1
    assert GradedChainComplex.edge_sign((1, 0, 1), 1) == -1
    assert GradedChainComplex.edge_sign((0, 1, 0, 0), 2) == -1
    assert GradedChainComplex.edge_sign((1, 1, 0, 0), 2) == 1
    assert GradedChainComplex.edge_sign((1, 1, 0, 1), 2) == 1


def test_generators_are_ordered_by_bits_then_index():
    cx = build_complex(corpus.HOPF)
    gens = cx.generators(1)
    assert gens == sorted(gens)
    bits_seen = [g[0] for g in gens]
    assert bits_seen == sorted(bits_seen)


def test_graded_group_dimension_of_kink():
    cx = build_complex(corpus.UNKNOT_KINK_POS)
    two_circles = quantum_integer(3) * quantum_integer(3)
    theta = quantum_integer(2) * quantum_integer(3)
    assert cx.graded_group_dimension(0) == two_circles.shift(-2)
    assert cx.graded_group_dimension(1) == theta.shift(-3)


@pytest.mark.parametrize(
    "name",
    [
        "unknot-kink-positive",
        "unknot-kink-negative",
        "unknot-opposite-kinks",
        "unknot-double-kink",
        "unknot-curl-over",
        "push-through-parallel",
        "push-through-antiparallel",
        "slide-side-a",
        "slide-side-b",
        "hopf",
        "hopf-kinked",
        "trefoil",
    ],
)
def test_squares_anticommute_and_d_squared_zero(name):
    cx = build_complex(corpus.fixture_diagrams()[name])
    assert cx.squares_anticommute()
    assert cx.d_squared_is_zero()


def test_chain_euler_equals_homology_euler():
    cx = build_complex(corpus.TREFOIL)
    assert cx.graded_euler_characteristic() == euler_characteristic(homology(cx))


def test_threaded_build_matches_serial():
    serial = build_complex(corpus.HOPF, threads=1)
    threaded = build_complex(corpus.HOPF, threads=3)
    for i in range(*serial.hom_range()):
        assert serial.differential(i) == threaded.differential(i)


# ==========================================================================
# homology values
# ==========================================================================

UNKNOT_TABLE = ((0, -2, 1, ()), (0, 0, 1, ()), (0, 2, 1, ()))


@pytest.mark.parametrize(
    "diagram",
    [
        corpus.UNKNOT_0,
        corpus.UNKNOT_KINK_POS,
        corpus.UNKNOT_KINK_NEG,
        corpus.UNKNOT_OPPOSITE_KINKS,
        corpus.UNKNOT_DOUBLE_KINK,
        corpus.UNKNOT_CURL_OVER,
    ],
    ids=[
        "zero-crossings",
        "positive-kink",
        "negative-kink",
        "opposite-kinks",
        "double-kink",
        "curl-over",
    ],
)
def test_unknot_homology_is_three_free_summands(diagram):
    assert link_homology(diagram).entries == UNKNOT_TABLE


def test_empty_diagram_homology_is_one_group_at_origin():
    assert link_homology(parse_pd("")).entries == ((0, 0, 1, ()),)


def test_two_component_unlink_homology():
    h = link_homology(corpus.UNLINK_2)
    assert h.entries == (
        (0, -4, 1, ()),
        (0, -2, 2, ()),
        (0, 0, 3, ()),
        (0, 2, 2, ()),
        (0, 4, 1, ()),
    )


def test_hopf_homology_table():
    h = link_homology(corpus.HOPF)
    assert h.entries == (
        (0, -4, 1, ()),
        (0, -2, 1, ()),
        (0, 0, 1, ()),
        (2, -10, 1, ()),
        (2, -8, 2, ()),
        (2, -6, 2, ()),
        (2, -4, 1, ()),
    )
    assert not h.has_torsion()
    assert h.total_rank() == 9


def test_trefoil_homology_table_including_torsion():
    h = link_homology(corpus.TREFOIL)
    assert h.entries == (
        (0, -6, 1, ()),
        (0, -4, 1, ()),
        (0, -2, 1, ()),
        (2, -8, 1, ()),
        (2, -6, 1, ()),
        (3, -14, 1, ()),
        (3, -12, 1, ()),
        (3, -10, 0, (3,)),
    )
    assert h.has_torsion()
    assert h.torsion(3, -10) == (3,)
    assert h.rank(3, -10) == 0
    assert h.rank(0, -6) == 1
    assert h.total_rank() == 7


def test_mirror_homology_transposes_free_ranks():
    for d in (corpus.TREFOIL, corpus.HOPF):
        h = link_homology(d)
        hm = link_homology(d.mirror())
        assert {(-i, -j): r for (i, j), r in h.free_ranks().items()} == hm.free_ranks()


def test_figure_eight_free_ranks_are_self_transpose():
    h = link_homology(corpus.FIGURE_EIGHT)
    ranks = h.free_ranks()
    assert {(-i, -j): r for (i, j), r in ranks.items()} == ranks
    assert h.rank(0, 0) == 1
    assert h.torsion(-1, 4) == (3,)
    assert h.torsion(2, -4) == (3,)


@pytest.mark.parametrize(
    "name",
    [
        "unknot-0",
        "unknot-kink-positive",
        "unknot-kink-negative",
        "unlink-2",
        "push-through-parallel",
        "push-through-antiparallel",
        "slide-side-a",
        "hopf",
        "hopf-kinked",
        "trefoil",
        "trefoil-mirror",
        "figure-eight",
    ],
)
def test_euler_characteristic_equals_bracket(name):
    d = corpus.fixture_diagrams()[name]
    assert euler_characteristic(link_homology(d)) == link_bracket(d)


def test_slide_sides_present_the_same_link_as_hopf():
    assert link_homology(corpus.SLIDE_SIDE_A).entries == link_homology(corpus.HOPF).entries


# ==========================================================================
# invariance reports
# ==========================================================================


def test_invariance_report_passes_for_kink_pair():
    rep = check_invariance(corpus.UNKNOT_KINK_POS, corpus.UNKNOT_0)
    assert rep.passed
    assert rep.differences == ()
    assert rep.to_json_dict() == {"passed": True, "differences": []}


def test_invariance_report_fails_for_distinct_links():
    rep = check_invariance(corpus.TREFOIL, corpus.UNKNOT_0)
    assert not rep.passed
    assert rep.differences
    payload = rep.to_json_dict()
    assert payload["passed"] is False
    assert payload["differences"]
    first = payload["differences"][0]
    assert set(first) == {"i", "j", "first", "second"}


def test_all_corpus_invariance_pairs_have_small_diagrams():
    for name, d1, d2 in corpus.INVARIANCE_PAIRS:
        assert d1.n_crossings <= 4 and d2.n_crossings <= 4, name
    assert len(corpus.INVARIANCE_PAIRS) >= 10


# ==========================================================================
# JSON report
# ==========================================================================


def test_homology_json_shape_and_determinism():
    payload = homology_json(corpus.UNKNOT_KINK_POS)
    assert set(payload) == {"diagram", "bracket", "homology", "euler_check"}
    assert payload["euler_check"] is True
    assert payload["bracket"] == "q^-2 + 1 + q^2"
    assert payload["homology"] == [
        {"i": 0, "j": -2, "rank": 1, "torsion": []},
        {"i": 0, "j": 0, "rank": 1, "torsion": []},
        {"i": 0, "j": 2, "rank": 1, "torsion": []},
    ]
    again = homology_json(corpus.UNKNOT_KINK_POS)
    assert json.dumps(payload, sort_keys=True) == json.dumps(again, sort_keys=True)


def test_homology_json_reports_torsion():
    payload = homology_json(corpus.TREFOIL)
    torsion_rows = [row for row in payload["homology"] if row["torsion"]]
    assert torsion_rows == [{"i": 3, "j": -10, "rank": 0, "torsion": [3]}]


# ==========================================================================
# degree bookkeeping is validated at build time
# ==========================================================================


def test_build_checks_degree_preservation():
    cx = build_complex(corpus.UNKNOT_KINK_POS)
    for (bits, c), mat in cx.edge_maps.items():
        src = cx.vertices[bits]
        dst = cx.vertices[tuple(1 if a == c else b for a, b in enumerate(bits))]
        for r, row in enumerate(mat):
            for k, entry in enumerate(row):
                if entry:
                    assert dst.q_degrees[r] == src.q_degrees[k]


def test_homology_accessors_default_to_trivial():
    h = BigradedHomology(entries=((0, 0, 2, (5,)),))
    assert h.rank(0, 0) == 2
    assert h.rank(4, 4) == 0
    assert h.torsion(4, 4) == ()
    assert h.free_ranks() == {(0, 0): 2}
    assert euler_characteristic(h) == LaurentPoly.monomial(0, 2)
