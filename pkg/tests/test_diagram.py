"""PD parsing, sign derivation, flattenings, and resolution-edge moves."""

import itertools

import pytest

from artifact.algebra import quantum_integer
from artifact.diagram import (
    Flattening,
    LinkDiagram,
    MalformedDiagram,
    clear_flatten_cache,
    crossing_signs,
    diagram_from_json,
    diagram_to_json,
    flatten,
    parse_pd,
    resolution_edge_move,
    resolution_edge_movie,
)
from artifact.foam import MalformedMovie, Unzip, Zip
from artifact.web import Web, kuperberg_bracket, link_bracket

TREFOIL_R = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
HOPF_POS = "X(1,2,3,4) X(4,3,2,1)"
FIG8 = "X(7,5,1,2) X(2,3,4,8) X(3,1,5,6) X(6,7,8,4)"
# Two closures related by sliding a strand across a crossing: 3-crossing
# diagrams of the same two-component link, all crossings positive.
R3_SIDE_A = "X(6,5,1,2) X(4,2,3,4) X(3,1,5,6)"
R3_SIDE_B = "X(6,5,1,2) X(1,4,4,3) X(2,3,5,6)"
KINK_POS = "X(1,2,2,1)"
KINK_NEG = "X(1,1,2,2)"
POKE = "X(2,3,3,4) X(1,1,2,4)"  # unknot with one strand poked under another
S_CURL = "X(1,2,2,3) X(3,1,4,4)"  # unknot with a +1 and a -1 curl
DOUBLE_KINK = "X(1,2,2,3) X(3,4,4,1)"  # unknot with two +1 curls
UNLINK2_R2 = "X(1,2,3,4) X(3,2,1,4)"  # two circles crossing in a push-through
TWO_KINKS_APART = "X(1,2,2,1) X(3,4,4,3)"  # split pair of curled circles

ALL_PDS = [
    KINK_POS,
    KINK_NEG,
    POKE,
    S_CURL,
    DOUBLE_KINK,
    UNLINK2_R2,
    TWO_KINKS_APART,
    HOPF_POS,
    TREFOIL_R,
    R3_SIDE_A,
    R3_SIDE_B,
    FIG8,
]


def all_bits(n):
    return itertools.product((0, 1), repeat=n)


# --------------------------------------------------------------------------
# parsing and signs
# --------------------------------------------------------------------------


def test_trefoil_parses_with_three_positive_crossings():
    d = parse_pd(TREFOIL_R)
    assert d.n_crossings == 3
    assert d.signs == (1, 1, 1)
    assert crossing_signs(d) == [1, 1, 1]
    assert d.writhe == 3
    assert d.positive_count == 3 and d.negative_count == 0
    assert d.arcs() == (1, 2, 3, 4, 5, 6)
    assert d.component_count() == 1


def test_trefoil_mirror_has_all_negative_crossings():
    d = parse_pd(TREFOIL_R)
    m = d.mirror()
    assert m.signs == (-1, -1, -1)
    assert m.writhe == -3
    assert m.mirror().crossings == d.crossings


def test_bracket_and_whitespace_tuple_syntax():
    a = parse_pd("X[1,4,2,5]  X[3,6,4,1],X[5,2,6,3]")
    assert a == parse_pd(TREFOIL_R)


def test_empty_pd_gives_empty_diagram():
    d = parse_pd("")
    assert d.n_crossings == 0
    assert d.component_count() == 0
    assert d.flatten(()) == Web.empty()
    assert link_bracket(d) == quantum_integer(3) ** 0


def test_kink_signs():
    assert parse_pd(KINK_POS).signs == (1,)
    assert parse_pd(KINK_NEG).signs == (-1,)


def test_hopf_signs_and_components():
    d = parse_pd(HOPF_POS)
    assert d.signs == (1, 1)
    assert d.component_count() == 2


def test_figure_eight_signs():
    d = parse_pd(FIG8)
    assert d.signs == (1, -1, 1, -1)
    assert d.writhe == 0
    assert d.component_count() == 1


def test_r3_pair_signs_and_components():
    a, b = parse_pd(R3_SIDE_A), parse_pd(R3_SIDE_B)
    assert a.signs == (1, 1, 1) and b.signs == (1, 1, 1)
    assert a.component_count() == 2 and b.component_count() == 2


def test_push_through_circles_default_orientation():
    d = parse_pd(UNLINK2_R2)
    assert d.signs == (1, -1)
    assert d.component_count() == 2


def test_orientation_hint_flips_free_component():
    hinted = diagram_from_json(
        {"crossings": [[1, 2, 3, 4], [3, 2, 1, 4]], "over_in": [3, None]}
    )
    assert hinted.signs == (-1, 1)


def test_split_diagram_parses():
    d = parse_pd(TWO_KINKS_APART)
    assert d.signs == (1, 1)
    assert d.component_count() == 2


# --------------------------------------------------------------------------
# rejected inputs
# --------------------------------------------------------------------------


def test_junk_text_is_rejected():
    with pytest.raises(MalformedDiagram, match="unrecognized"):
        parse_pd("X(1,2,3) nonsense")
    with pytest.raises(MalformedDiagram, match="unrecognized"):
        parse_pd("X(1,2,3,4,5) X(1,2,3,4)")
    with pytest.raises(MalformedDiagram):
        parse_pd(123)  # type: ignore[arg-type]


def test_wrong_arity_tuple_is_rejected():
    with pytest.raises(MalformedDiagram, match="exactly 4"):
        LinkDiagram.from_crossings([(1, 2, 3)])
    with pytest.raises(MalformedDiagram, match="positive integers"):
        LinkDiagram.from_crossings([(0, 1, 1, 0)])


def test_unmatched_arc_labels_are_rejected():
    with pytest.raises(MalformedDiagram, match="occurs 1 time"):
        parse_pd("X(1,2,3,4)")
    with pytest.raises(MalformedDiagram, match="occurs 3 time"):
        parse_pd("X(1,2,2,1) X(1,3,4,5)")


def test_inconsistent_orientation_is_rejected():
    # both ends of arc 1 enter at the incoming-under slot
    with pytest.raises(MalformedDiagram, match="orientation"):
        parse_pd("X(1,2,3,4) X(1,4,3,2)")
    # a curled pair wired so one arc would need two outflow ends
    with pytest.raises(MalformedDiagram, match="orientation"):
        parse_pd("X(1,2,2,3) X(4,1,3,4)")


def test_nonplanar_pd_is_rejected():
    with pytest.raises(MalformedDiagram, match="non-planar"):
        parse_pd("X(1,2,1,2)")


def test_bad_hints_and_free_loops_are_rejected():
    with pytest.raises(MalformedDiagram, match="over_in"):
        LinkDiagram.from_crossings([(1, 2, 2, 1)], over_in=[1, 3])
    with pytest.raises(MalformedDiagram, match="over_in"):
        LinkDiagram.from_crossings([(1, 2, 2, 1)], over_in=[2])
    with pytest.raises(MalformedDiagram, match="conflicts"):
        LinkDiagram.from_crossings([(1, 2, 2, 1)], over_in=[3])
    with pytest.raises(MalformedDiagram, match="free_loops"):
        LinkDiagram.from_crossings([], free_loops=-1)


def test_bad_resolution_vectors_are_rejected():
    d = parse_pd(KINK_POS)
    with pytest.raises(MalformedDiagram):
        d.flatten((0, 1))
    with pytest.raises(MalformedDiagram):
        d.flatten((2,))
    with pytest.raises(MalformedDiagram, match="outside"):
        Flattening.of({5}).bits(1)


# --------------------------------------------------------------------------
# flattenings
# --------------------------------------------------------------------------


def test_positive_kink_smoothing_is_two_circles():
    d = parse_pd(KINK_POS)
    expected = Web({}, {}, frozenset(), {-1: True, -2: False},
                   {-1: None, -2: None}, {})
    assert d.flatten((0,)) == expected


def test_positive_kink_bridge_is_a_theta_web():
    d = parse_pd(KINK_POS)
    w = d.flatten((1,))
    assert w == Web(
        sigma={1: 2, 2: 5, 5: 1, 3: 4, 4: 6, 6: 3},
        alpha={5: 6, 6: 5, 2: 3, 3: 2, 1: 4, 4: 1},
        out_darts=frozenset({3, 4, 6}),
        loop_ccw={},
        parent={1: None},
        outer_face={1: 1},
    )
    assert kuperberg_bracket(w) == quantum_integer(2) * quantum_integer(3)


def test_negative_kink_bridge_web():
    d = parse_pd(KINK_NEG)
    w = d.flatten((0,))
    assert w == Web(
        sigma={5: 4, 4: 1, 1: 5, 2: 3, 3: 6, 6: 2},
        alpha={5: 6, 6: 5, 1: 2, 2: 1, 3: 4, 4: 3},
        out_darts=frozenset({2, 3, 6}),
        loop_ccw={},
        parent={1: None},
        outer_face={1: 1},
    )


def test_negative_kink_smoothing_is_two_nested_circles():
    d = parse_pd(KINK_NEG)
    expected = Web({}, {}, frozenset(), {-1: True, -3: True},
                   {-1: None, -3: ("inside", -1)}, {})
    assert d.flatten((1,)) == expected


def test_split_kinks_flatten_side_by_side():
    d = parse_pd(TWO_KINKS_APART)
    w = d.flatten((0, 0))
    assert w.loop_ccw == {-1: True, -2: False, -5: True, -6: False}
    assert w.parent == {-1: None, -2: None, -5: None, -6: None}
    w2 = d.flatten((1, 1))
    assert set(w2.components()) == {1, 5}
    assert w2.parent == {1: None, 5: None}
    assert w2.outer_face == {1: 1, 5: 5}


def test_flattening_subset_interface_matches_bit_vectors():
    d = parse_pd(HOPF_POS)
    assert d.flatten(Flattening.of({0})) == d.flatten((1, 0))
    assert d.flatten(Flattening.from_bits((0, 1))) == d.flatten((0, 1))
    assert flatten(d, Flattening.of(())) == d.flatten((0, 0))
    assert Flattening.of({0, 2}).bits(3) == (1, 0, 1)
    assert Flattening.from_bits((1, 0, 1)).crossings == frozenset({0, 2})


def test_every_flattening_of_every_fixture_is_a_valid_web():
    for pd in ALL_PDS:
        d = parse_pd(pd)
        assert d.positive_count + d.negative_count == d.n_crossings
        for bits in all_bits(d.n_crossings):
            w = d.flatten(bits)  # Web construction runs full validation
            assert set(w.loops) == set(w.loop_ccw)


def test_flatten_results_are_cached_by_value():
    clear_flatten_cache()
    a = parse_pd(KINK_POS).flatten((1,))
    b = parse_pd(KINK_POS).flatten((1,))
    assert a is b


def test_free_loops_add_split_circles():
    d = LinkDiagram.from_crossings([], free_loops=2)
    assert d.component_count() == 2
    w = d.flatten(())
    assert w.loop_ccw == {-1: True, -2: True}
    assert w.parent == {-1: None, -2: None}
    assert link_bracket(d) == quantum_integer(3) ** 2


# --------------------------------------------------------------------------
# bracket values through flattenings
# --------------------------------------------------------------------------


def test_curled_unknots_normalize_to_the_round_unknot_value():
    three = quantum_integer(3)
    for pd in (KINK_POS, KINK_NEG, POKE, S_CURL, DOUBLE_KINK):
        assert link_bracket(parse_pd(pd)) == three, pd


def test_push_through_circles_equal_the_split_pair():
    assert link_bracket(parse_pd(UNLINK2_R2)) == quantum_integer(3) ** 2
    assert link_bracket(parse_pd(TWO_KINKS_APART)) == quantum_integer(3) ** 2


def test_strand_slide_leaves_the_bracket_alone():
    a = link_bracket(parse_pd(R3_SIDE_A))
    b = link_bracket(parse_pd(R3_SIDE_B))
    assert a == b
    assert a != quantum_integer(3) ** 2  # genuinely linked components


def test_mirror_inverts_the_bracket_variable():
    for pd in (TREFOIL_R, HOPF_POS, FIG8):
        d = parse_pd(pd)
        assert link_bracket(d.mirror()) == link_bracket(d).mirror()


def test_figure_eight_bracket_is_palindromic():
    v = link_bracket(parse_pd(FIG8))
    assert v == v.mirror()


def test_bracket_at_one_counts_three_per_component():
    for pd in ALL_PDS:
        d = parse_pd(pd)
        assert link_bracket(d).evaluate_at_one() == 3 ** d.component_count(), pd


# --------------------------------------------------------------------------
# resolution-edge moves
# --------------------------------------------------------------------------


def test_positive_kink_edge_is_a_zip_with_pinned_labels():
    d = parse_pd(KINK_POS)
    mv = resolution_edge_move(d, (0,), 0)
    assert isinstance(mv, Zip)
    assert mv.labels == (5, 6, 2, 3, 1, 4)
    assert mv.site_a == -2 and mv.site_b == -1
    assert mv.region is None
    movie = resolution_edge_movie(d, (0,), 0)
    assert movie.states()[-1] == d.flatten((1,))


def test_negative_kink_edge_is_an_unzip_closing_two_loops():
    d = parse_pd(KINK_NEG)
    mv = resolution_edge_move(d, (0,), 0)
    assert isinstance(mv, Unzip)
    assert mv.seam == 5
    assert mv.loop_id_aligned == -1 and mv.loop_id_anti == -3
    movie = resolution_edge_movie(d, (0,), 0)
    assert movie.states()[-1] == d.flatten((1,))


def test_every_fixture_edge_reproduces_its_target_flattening():
    for pd in ALL_PDS:
        d = parse_pd(pd)
        n = d.n_crossings
        for bits in all_bits(n):
            for c in range(n):
                if bits[c] == 1:
                    continue
                target = tuple(1 if i == c else b for i, b in enumerate(bits))
                movie = resolution_edge_movie(d, bits, c)
                assert movie.states()[-1] == d.flatten(target), (pd, bits, c)
                sign = d.signs[c]
                mv = movie.moves[0]
                assert isinstance(mv, Zip if sign == 1 else Unzip)


def test_edge_move_argument_errors():
    d = parse_pd(KINK_POS)
    with pytest.raises(MalformedDiagram, match="no crossing"):
        resolution_edge_move(d, (0,), 1)
    with pytest.raises(MalformedDiagram, match="choice 1"):
        resolution_edge_move(d, (1,), 0)


# --------------------------------------------------------------------------
# JSON form
# --------------------------------------------------------------------------


def test_json_roundtrip():
    for pd in (TREFOIL_R, UNLINK2_R2, KINK_NEG):
        d = parse_pd(pd)
        assert diagram_from_json(diagram_to_json(d)) == d
    loops = LinkDiagram.from_crossings([], free_loops=3)
    assert diagram_from_json(diagram_to_json(loops)) == loops


def test_json_accepts_bare_crossing_lists():
    d = diagram_from_json([[1, 2, 2, 1]])
    assert d == parse_pd(KINK_POS)


def test_json_rejects_unknown_keys():
    with pytest.raises(MalformedDiagram, match="unknown"):
        diagram_from_json({"crossings": [], "spin": 7})
    with pytest.raises(MalformedDiagram):
        diagram_from_json("X(1,2,2,1)")
