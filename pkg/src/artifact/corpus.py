"""Named example diagrams and Reidemeister-move comparison pairs.

Small, hand-checked PD presentations used throughout the test suite and
the command-line self-test: unknots with zero to two crossings, the
two-component unlink, the Hopf link, both trefoils, the figure-eight
knot, and kinked or slid variants of each.  ``INVARIANCE_PAIRS`` lists
diagram pairs related by Reidemeister moves — both kink signs, both
push-through orientations, and a third-move slide — so homology tables
can be compared across presentations of the same link.
"""

from __future__ import annotations

from typing import Dict, Tuple

from .diagram import LinkDiagram, parse_pd

# -- unknots and unlinks ----------------------------------------------------

UNKNOT_0 = LinkDiagram.from_crossings((), free_loops=1)
UNKNOT_KINK_POS = parse_pd("X(1,2,2,1)")
UNKNOT_KINK_NEG = parse_pd("X(1,1,2,2)")
UNKNOT_OPPOSITE_KINKS = parse_pd("X(1,2,2,3) X(3,1,4,4)")
UNKNOT_DOUBLE_KINK = parse_pd("X(1,2,2,3) X(3,4,4,1)")
UNKNOT_CURL_OVER = parse_pd("X(2,3,3,4) X(1,1,2,4)")
UNLINK_2 = LinkDiagram.from_crossings((), free_loops=2)

# -- push-throughs: one circle slid across another, both orientations ------

PUSH_THROUGH_PARALLEL = parse_pd("X(1,2,3,4) X(3,2,1,4)")
PUSH_THROUGH_ANTIPARALLEL = LinkDiagram.from_crossings(
    ((1, 2, 3, 4), (3, 2, 1, 4)), over_in=(3, None)
)

# -- a strand slid across a crossing: two sides of the third move ----------

SLIDE_SIDE_A = parse_pd("X(6,5,1,2) X(4,2,3,4) X(3,1,5,6)")
SLIDE_SIDE_B = parse_pd("X(6,5,1,2) X(1,4,4,3) X(2,3,5,6)")

# -- standard small links ---------------------------------------------------

HOPF = parse_pd("X(1,2,3,4) X(4,3,2,1)")
TREFOIL = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)")
TREFOIL_MIRROR = TREFOIL.mirror()
FIGURE_EIGHT = parse_pd("X(7,5,1,2) X(2,3,4,8) X(3,1,5,6) X(6,7,8,4)")

# -- kinked variants (one extra curl on an arc) -----------------------------

TREFOIL_KINKED = parse_pd("X(8,4,2,5) X(3,6,4,1) X(5,2,6,3) X(1,7,7,8)")
TREFOIL_MIRROR_KINKED = TREFOIL_KINKED.mirror()
HOPF_KINKED = parse_pd("X(5,2,3,4) X(4,3,2,1) X(1,5,6,6)")


def fixture_diagrams() -> Dict[str, LinkDiagram]:
    """All named fixtures, keyed by a stable identifier."""

    return {
        "unknot-0": UNKNOT_0,
        "unknot-kink-positive": UNKNOT_KINK_POS,
        "unknot-kink-negative": UNKNOT_KINK_NEG,
        "unknot-opposite-kinks": UNKNOT_OPPOSITE_KINKS,
        "unknot-double-kink": UNKNOT_DOUBLE_KINK,
        "unknot-curl-over": UNKNOT_CURL_OVER,
        "unlink-2": UNLINK_2,
        "push-through-parallel": PUSH_THROUGH_PARALLEL,
        "push-through-antiparallel": PUSH_THROUGH_ANTIPARALLEL,
        "slide-side-a": SLIDE_SIDE_A,
        "slide-side-b": SLIDE_SIDE_B,
        "hopf": HOPF,
        "trefoil": TREFOIL,
        "trefoil-mirror": TREFOIL_MIRROR,
        "figure-eight": FIGURE_EIGHT,
        "trefoil-kinked": TREFOIL_KINKED,
        "trefoil-mirror-kinked": TREFOIL_MIRROR_KINKED,
        "hopf-kinked": HOPF_KINKED,
    }


# Pairs of diagrams presenting the same link, each related by one or two
# Reidemeister moves.  Both kink signs, both push-through orientations
# and a slide are represented.
INVARIANCE_PAIRS: Tuple[Tuple[str, LinkDiagram, LinkDiagram], ...] = (
    ("kink-positive-vs-unknot", UNKNOT_KINK_POS, UNKNOT_0),
    ("kink-negative-vs-unknot", UNKNOT_KINK_NEG, UNKNOT_0),
    ("push-through-parallel-vs-unlink", PUSH_THROUGH_PARALLEL, UNLINK_2),
    (
        "push-through-antiparallel-vs-unlink",
        PUSH_THROUGH_ANTIPARALLEL,
        UNLINK_2,
    ),
    ("slide-side-a-vs-side-b", SLIDE_SIDE_A, SLIDE_SIDE_B),
    ("opposite-kinks-vs-unknot", UNKNOT_OPPOSITE_KINKS, UNKNOT_0),
    ("double-kink-vs-unknot", UNKNOT_DOUBLE_KINK, UNKNOT_0),
    ("kinked-trefoil-vs-trefoil", TREFOIL_KINKED, TREFOIL),
    (
        "kinked-mirror-trefoil-vs-mirror-trefoil",
        TREFOIL_MIRROR_KINKED,
        TREFOIL_MIRROR,
    ),
    ("kinked-hopf-vs-hopf", HOPF_KINKED, HOPF),
)
