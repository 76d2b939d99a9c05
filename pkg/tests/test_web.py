"""Tests for the web structure: validation, faces, regions, reduction
search, serialization, and the bracket recursion."""

from __future__ import annotations

import pytest

from artifact.algebra import LaurentPoly, quantum_integer
from artifact.web import (
    DigonFace,
    Empty,
    FreeLoop,
    MalformedWeb,
    SquareFace,
    Web,
    _canonical_component_key,
    _reduce_digon,
    clear_bracket_cache,
    crossing_weight,
    find_reduction,
    kuperberg_bracket,
    link_bracket,
)
from .helpers import (
    CUBE_EDGES,
    cube_web,
    nested_loops_web,
    theta_web,
    theta_with_loop_inside,
)
from .oracles import count_edge_3_colorings

# --------------------------------------------------------------------------
# structure
# --------------------------------------------------------------------------


def test_theta_faces():
    w = theta_web()
    assert w.faces() == {1: (1, 4), 2: (2, 5), 3: (3, 6)}
    assert w.face_of(4) == 1
    assert w.vertices() == ((1, 3, 5), (2, 6, 4))
    assert w.edges() == ((2, 1), (4, 3), (6, 5))
    assert w.components() == {1: frozenset({1, 2, 3, 4, 5, 6})}


def test_theta_regions():
    w = theta_web()
    assert w.region_of_face(2) is None, "the outer face bounds the parent region"
    assert w.region_of_face(1) == ("face", 1)
    assert w.regions() == (None, ("face", 1), ("face", 3))
    assert w.children_of(None) == (1,)
    assert w.children_of(("face", 1)) == ()


def test_cube_web_structure():
    w = cube_web()
    assert len(w.vertices()) == 8
    assert len(w.edges()) == 12
    faces = w.faces()
    assert len(faces) == 6
    assert all(len(orbit) == 4 for orbit in faces.values())


def test_edge_of_orientation():
    w = theta_web()
    assert w.edge_of(1) == (2, 1)
    assert w.edge_of(2) == (2, 1)
    assert w.is_source_dart(2) and not w.is_source_dart(1)


# --------------------------------------------------------------------------
# validation
# --------------------------------------------------------------------------


def test_validate_rejects_two_valent_vertex():
    with pytest.raises(MalformedWeb):
        Web(sigma={1: 2, 2: 1}, alpha={1: 2, 2: 1}, out_darts={1}, outer_face={1: 1})


def test_validate_rejects_mixed_orientation_vertex():
    base = theta_web()
    with pytest.raises(MalformedWeb):
        Web(
            sigma=base.sigma,
            alpha=base.alpha,
            out_darts={2, 4, 5},
            parent={1: None},
            outer_face={1: 2},
        )


def test_validate_rejects_nonplanar_rotation_system():
    # reversing one vertex's rotation turns the theta embedding into a
    # one-faced torus map
    with pytest.raises(MalformedWeb):
        Web(
            sigma={1: 3, 3: 5, 5: 1, 4: 6, 6: 2, 2: 4},
            alpha={1: 2, 2: 1, 3: 4, 4: 3, 5: 6, 6: 5},
            out_darts={2, 4, 6},
            parent={1: None},
            outer_face={1: 1},
        )


def test_validate_rejects_missing_outer_face():
    base = theta_web()
    with pytest.raises(MalformedWeb):
        Web(
            sigma=base.sigma,
            alpha=base.alpha,
            out_darts=base.out_darts,
            parent={1: None},
            outer_face={},
        )


def test_validate_rejects_outer_face_as_parent_region():
    base = theta_web()
    with pytest.raises(MalformedWeb):
        Web(
            sigma=base.sigma,
            alpha=base.alpha,
            out_darts=base.out_darts,
            loop_ccw={-1: True},
            parent={1: None, -1: ("face", 2)},
            outer_face={1: 2},
        )


def test_validate_rejects_cyclic_nesting():
    with pytest.raises(MalformedWeb):
        Web(
            loop_ccw={-1: True, -2: True},
            parent={-1: ("inside", -2), -2: ("inside", -1)},
        )


def test_validate_rejects_positive_loop_id():
    with pytest.raises(MalformedWeb):
        Web(loop_ccw={1: True}, parent={1: None})


# --------------------------------------------------------------------------
# reduction search
# --------------------------------------------------------------------------


def test_find_reduction_empty():
    assert find_reduction(Web.empty()) == Empty()


def test_find_reduction_free_loop():
    assert find_reduction(Web.single_loop(-5, ccw=False)) == FreeLoop(-5)


def test_find_reduction_prefers_innermost_loop():
    assert find_reduction(nested_loops_web()) == FreeLoop(-2)


def test_find_reduction_theta_digon():
    assert find_reduction(theta_web()) == DigonFace(1)


def test_find_reduction_skips_occupied_face():
    # the loop sits inside face 1; the loop is reduced first
    assert find_reduction(theta_with_loop_inside()) == FreeLoop(-1)


def test_find_reduction_cube_square():
    assert find_reduction(cube_web()) == SquareFace(2)


# --------------------------------------------------------------------------
# bracket
# --------------------------------------------------------------------------


def test_bracket_empty_web_is_one():
    assert kuperberg_bracket(Web.empty()) == LaurentPoly.one()


def test_bracket_single_loop():
    assert kuperberg_bracket(Web.single_loop()) == quantum_integer(3)
    assert str(kuperberg_bracket(Web.single_loop())) == "q^-2 + 1 + q^2"


def test_bracket_two_loops():
    w = Web(loop_ccw={-1: True, -2: False})
    assert kuperberg_bracket(w) == quantum_integer(3) ** 2


def test_bracket_theta():
    expected = quantum_integer(2) * quantum_integer(3)
    assert kuperberg_bracket(theta_web()) == expected
    assert str(expected) == "q^-3 + 2*q^-1 + 2*q + q^3"


def test_bracket_theta_with_nested_loop():
    got = kuperberg_bracket(theta_with_loop_inside())
    assert got == quantum_integer(2) * quantum_integer(3) ** 2


def test_bracket_ignores_labels():
    w = theta_web().relabeled(dart_map={d: d + 40 for d in range(1, 7)})
    assert kuperberg_bracket(w) == kuperberg_bracket(theta_web())


def test_bracket_cube_web():
    clear_bracket_cache()
    p = kuperberg_bracket(cube_web())
    assert p.is_palindromic(), f"cube web bracket {p} should be palindromic"
    assert all(c > 0 for _, c in p.items()), "bracket coefficients must be positive"
    colorings = count_edge_3_colorings(CUBE_EDGES)
    assert p.evaluate_at_one() == colorings, (
        f"bracket at q=1 gives {p.evaluate_at_one()}, "
        f"but the cube graph has {colorings} proper 3-edge-colorings"
    )
    # recomputing (now partly memoized) must give the same answer
    assert kuperberg_bracket(cube_web()) == p


def test_digon_reduction_of_theta_leaves_one_loop():
    w = theta_web()
    sigma, alpha, out, nloops = _reduce_digon(
        dict(w.sigma), dict(w.alpha), set(w.out_darts), w.faces()[1]
    )
    assert sigma == {} and alpha == {} and out == set()
    assert nloops == 1


def test_canonical_component_key_is_label_invariant():
    w1 = theta_web()
    w2 = w1.relabeled(dart_map={1: 9, 2: 14, 3: 21, 4: 3, 5: 77, 6: 50})
    k1 = _canonical_component_key(w1.sigma, w1.alpha, w1.out_darts, w1.darts)
    k2 = _canonical_component_key(w2.sigma, w2.alpha, w2.out_darts, w2.darts)
    assert k1 == k2
    kc = _canonical_component_key(
        cube_web().sigma, cube_web().alpha, cube_web().out_darts, cube_web().darts
    )
    assert kc != k1


# --------------------------------------------------------------------------
# serialization and relabeling
# --------------------------------------------------------------------------


def test_json_roundtrip():
    for w in (Web.empty(), theta_web(), theta_with_loop_inside(), nested_loops_web(), cube_web()):
        back = Web.from_json(w.to_json())
        assert back == w
        assert back.exact_key() == w.exact_key()


def test_relabeled_loops_and_regions():
    w = theta_with_loop_inside().relabeled(
        dart_map={d: d + 10 for d in range(1, 7)}, loop_map={-1: -9}
    )
    assert w.loops == (-9,)
    assert w.parent[-9] == ("face", 11)
    assert w.outer_face == {11: 12}


# --------------------------------------------------------------------------
# resolution weights and the link bracket on a fake one-crossing diagram
# --------------------------------------------------------------------------


def test_crossing_weight_table():
    assert crossing_weight(1, 0) == LaurentPoly.monomial(-2)
    assert crossing_weight(1, 1) == LaurentPoly.monomial(-3, -1)
    assert crossing_weight(-1, 0) == LaurentPoly.monomial(3, -1)
    assert crossing_weight(-1, 1) == LaurentPoly.monomial(2)


class _FakeKink:
    """One-crossing unknot: one resolution is two circles, the other is
    the theta web."""

    def __init__(self, sign: int):
        self.sign = sign

    def crossing_signs(self):
        return [self.sign]

    def flatten(self, bits):
        two_loops = Web(loop_ccw={-1: True, -2: True})
        if self.sign == 1:
            return two_loops if bits[0] == 0 else theta_web()
        return theta_web() if bits[0] == 0 else two_loops


def test_link_bracket_positive_kink_is_unknot_value():
    assert link_bracket(_FakeKink(1)) == quantum_integer(3)


def test_link_bracket_negative_kink_is_unknot_value():
    assert link_bracket(_FakeKink(-1)) == quantum_integer(3)
