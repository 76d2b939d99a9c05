"""Movie presentations of dotted singular cobordisms between webs.

A cobordism between webs is presented as a *movie*: a start web followed
by elementary moves.  Each move transforms the web slice and sweeps a
piece of surface:

* ``Birth`` / ``Death``        -- a circle appears in / disappears from a
  region (a disk cap on the swept surface);
* ``Dot(site)``                -- marks a dot on the sheet swept by an
  edge or free loop;
* ``Zip``                      -- two strand sites merge along a seam,
  creating two trivalent vertices joined by a new edge (a "fin" sheet
  attached along a new singular arc);
* ``Unzip``                    -- the inverse: the fin collapses, its two
  vertices annihilate, and the four arm strands fuse in pairs;
* ``DigonCup``                 -- pushes a two-edge bubble out of a
  strand (two new disk sheets: an inner "chord" and an outer "bulge");
* ``DigonCap``                 -- collapses a two-edge face to a point,
  fusing the two external strands;
* ``SaddleMerge`` / ``SaddleSplit`` -- an ordinary (non-singular) saddle
  between free loops;
* ``Frame``                    -- renames darts/loops without touching
  the surface.

Vertices of the web slice are the endpoints of singular arcs in progress.
``Zip`` and ``DigonCup`` create a vertex pair (one arc); ``Unzip`` and
``DigonCap`` annihilate a vertex pair, joining arc ends.  When an arc's
two ends turn out to belong to the same arc, a singular circle closes;
exactly three sheet strips run along it.  A closed movie (empty web to
empty web) therefore determines:

* its facets (maximal sheets): each with an Euler characteristic built
  up move by move, a dot count, and boundary slots on singular circles;
* its singular circles: each a cyclic triple of facets.

``extract_prefoam`` computes that data; ``evaluate`` turns it into an
exact integer using the three-sheet circle rule and the closed-surface
values of the algebra module, and ``evaluate_bruteforce`` recomputes it
by brute force over all local weight assignments as a cross-check.

Grading: a movie has a degree (birth/death -2, dot +2, zip/unzip +1,
cup/cap -1, saddle +2, frame 0); a closed movie of nonzero degree always
evaluates to zero.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .algebra import closed_surface_value, theta_symbol
from .web import Region, Web, _component_split, _face_orbits

#: Around a seam endpoint the three sheet strips are read in the vertex's
#: counterclockwise dart order at source vertices and in the reversed
#: (clockwise) order at sink vertices.  This global convention fixes the
#: cyclic orientation of every closed singular circle; it is pinned by
#: the two-edge-face identity tests.
SINK_ORDER_REVERSED = True

#: Which bubble sheet carries the dot of the degree +1 lift through a
#: two-edge face: True puts it on the outer ("bulge") sheet, False on the
#: inner ("chord") sheet.  The degree +1 projection always dots the
#: opposite sheet.  Pinned by the two-edge-face identity tests: with the
#: cyclic-order convention above, only this setting makes the composite
#: "plain lift then dotted projection" induce plus the identity.
DIGON_DOT_ON_BULGE = False


class MoveError(Exception):
    """Raised when a move cannot be applied to the current web slice."""


class MalformedMovie(Exception):
    """Raised when a movie's global surface bookkeeping is inconsistent."""


# ==========================================================================
# moves
# ==========================================================================


@dataclass(frozen=True)
class Birth:
    """A free loop appears in ``region``."""

    loop_id: int
    region: Region
    ccw: bool


@dataclass(frozen=True)
class Death:
    """A free loop with empty interior disappears."""

    loop_id: int


@dataclass(frozen=True)
class Dot:
    """A dot on the sheet swept by an edge (``site`` = any of its darts)
    or by a free loop (``site`` = its negative id)."""

    site: int


@dataclass(frozen=True)
class Zip:
    """Merge two strand sites across ``region`` along a new seam.

    A site is a dart (a point on that dart's edge, approached from the
    side whose face walk contains the dart) or a negative loop id.
    Exactly one site must be *aligned* with the region's boundary walk
    (edge site: the dart is a tail; loop site: the loop's orientation
    runs with the walk).  ``labels`` fixes the six new darts
    ``(m1, m2, in_plus, out_plus, in_minus, out_minus)``: the seam edge
    runs m2 -> m1 into the new sink vertex, the aligned site is cut into
    a piece ending at ``in_plus`` (into the sink) and one starting at
    ``out_plus`` (out of the source); the anti-aligned site likewise
    with ``in_minus`` / ``out_minus``.

    When the two sites lie on one face walk, that face splits in two;
    ``children_to_sink`` lists the nested items landing in the sink-side
    part, and ``ceiling_side`` ('sink' or 'source') says which part
    keeps the surrounding region when the split walk was a component's
    outer face (or when both sites are free loops).  When both sites lie
    on the *same edge* (site_b = the head partner of site_a),
    ``middle`` ('aligned_first' or 'anti_first') orders the two cut
    points along the edge's flow.
    """

    site_a: int
    site_b: int
    region: Region
    labels: Optional[tuple[int, int, int, int, int, int]] = None
    children_to_sink: frozenset = frozenset()
    ceiling_side: Optional[str] = None
    middle: Optional[str] = None


@dataclass(frozen=True)
class Unzip:
    """Collapse the fin along the seam edge containing dart ``seam``.

    The seam's two vertices annihilate and the four arm strands fuse in
    pairs.  A fusing pair whose arms already share an edge closes into a
    free loop; ``loop_id_aligned`` / ``loop_id_anti`` fix the ids of
    loops formed from the aligned-side pair and the anti-side pair."""

    seam: int
    loop_id_aligned: Optional[int] = None
    loop_id_anti: Optional[int] = None


@dataclass(frozen=True)
class DigonCup:
    """Push a two-edge bubble out of a strand site.

    For an edge site (``site`` = a dart), ``side`` is 'left' or 'right'
    of the edge's flow; for a loop site (``site`` = a negative id),
    ``side`` is 'inside' or 'outside'.  ``labels`` fixes the six new
    darts ``(p1, p2, c1, c2, u1, u2)``: the cut strand ends at ``p1``
    and restarts at ``p2``, the inner bubble edge (chord) is
    ``c2 -> c1``, the outer one (bulge) is ``u2 -> u1``."""

    site: int
    side: str
    labels: Optional[tuple[int, int, int, int, int, int]] = None


@dataclass(frozen=True)
class DigonCap:
    """Collapse the bounded, empty two-edge face ``face`` to a point,
    fusing the two external strands.  If they are the same edge the
    component closes into a free loop with id ``loop_id``."""

    face: int
    loop_id: Optional[int] = None


@dataclass(frozen=True)
class SaddleMerge:
    """Ordinary saddle joining two free loops into one (id ``loop_id``).

    The loops must bound a common region with equal alignment: two
    same-orientation loops side by side, or nested loops of opposite
    orientation."""

    loop_a: int
    loop_b: int
    loop_id: Optional[int] = None


@dataclass(frozen=True)
class SaddleSplit:
    """Ordinary saddle splitting one free loop in two.

    ``through_inside`` True: the band crosses the loop's interior,
    leaving two side-by-side loops of the same orientation;
    ``children_to_first`` lists interior items landing inside the first.
    ``through_inside`` False: the band runs through the exterior region,
    leaving a nested pair - the outer loop keeps the orientation, the
    inner ("lens") loop reverses it, and ``lens_children`` lists
    exterior items captured inside the lens."""

    loop: int
    through_inside: bool
    loop_id_first: Optional[int] = None
    loop_id_second: Optional[int] = None
    children_to_first: frozenset = frozenset()
    lens_children: frozenset = frozenset()


@dataclass(frozen=True)
class Frame:
    """Rename darts and loop ids by bijections; no surface is swept."""

    dart_map: tuple[tuple[int, int], ...] = ()
    loop_map: tuple[tuple[int, int], ...] = ()


Move = (
    Birth
    | Death
    | Dot
    | Zip
    | Unzip
    | DigonCup
    | DigonCap
    | SaddleMerge
    | SaddleSplit
    | Frame
)

_MOVE_DEGREE = {
    Birth: -2,
    Death: -2,
    Dot: 2,
    Zip: 1,
    Unzip: 1,
    DigonCup: -1,
    DigonCap: -1,
    SaddleMerge: 2,
    SaddleSplit: 2,
    Frame: 0,
}


def move_degree(move: Move) -> int:
    return _MOVE_DEGREE[type(move)]


# ==========================================================================
# small helpers
# ==========================================================================


def _fresh_loop_id(web: Web, taken: Iterable[int] = ()) -> int:
    used = set(web.loop_ccw) | set(taken)
    lid = -1
    while lid in used:
        lid -= 1
    return lid


def _fresh_darts(web: Web, count: int) -> tuple[int, ...]:
    base = max(web.sigma, default=0)
    return tuple(range(base + 1, base + 1 + count))


def _site_region_candidates(web: Web, site: int) -> tuple[Region, ...]:
    if site < 0:
        if site not in web.loop_ccw:
            raise MoveError(f"loop {site} does not exist")
        return (web.parent[site], ("inside", site))
    if site not in web.sigma:
        raise MoveError(f"dart {site} does not exist")
    return (web.region_of_face(web.face_of(site)),)


def _site_aligned(web: Web, site: int, region: Region) -> bool:
    """Whether the site runs with the boundary walk of ``region``."""
    if site < 0:
        return web.loop_ccw[site] == (region == ("inside", site))
    return site in web.out_darts


def _carry_faces(old_web: Web, new_face_of: Mapping[int, int]) -> dict[int, int]:
    """Old face key -> new face key, via the smallest surviving dart."""
    out: dict[int, int] = {}
    for f, orbit in old_web.faces().items():
        survivors = [d for d in orbit if d in new_face_of]
        if survivors:
            out[f] = new_face_of[min(survivors)]
    return out


def _make_renamer(
    carry: Mapping[int, int],
    override: Mapping[Region, Region],
    new_comp_of: Mapping[int, int],
    outer_face: Mapping[int, int],
    parent: Mapping[int, Region],
):
    """Region names inside move code are old-web names, ('inside', l),
    or the internal marker ('newface', key) for a face already expressed
    in the new web's keys.  Build the normalizing translator."""

    def rename(r: Region) -> Region:
        r = override.get(r, r)
        if r is None:
            return None
        kind, val = r
        if kind == "inside":
            return r
        if kind == "face":
            if val not in carry:
                raise MalformedMovie(f"region ('face', {val}) vanished in a move")
            val = carry[val]
        comp = new_comp_of[val]
        if val == outer_face.get(comp):
            # the walk is a component's outer face: the region is really
            # the one surrounding that component
            return rename(parent[comp])
        return ("face", val)

    return rename


# Tracking instructions handed to FoamState.  Surface-element keys are
# ("dart", d) or ("loop", l).


def _k_dart(d: int) -> tuple[str, int]:
    return ("dart", d)


def _k_loop(l: int) -> tuple[str, int]:
    return ("loop", l)


# ==========================================================================
# move application: web surgery + tracking instructions
# ==========================================================================


def _apply_birth(web: Web, mv: Birth) -> tuple[Web, list]:
    lid = mv.loop_id if mv.loop_id is not None else _fresh_loop_id(web)
    if lid >= 0 or lid in web.loop_ccw:
        raise MoveError(f"birth needs a fresh negative loop id, got {lid}")
    if mv.region not in web.regions():
        raise MoveError(f"birth region {mv.region!r} does not exist")
    loop_ccw = dict(web.loop_ccw)
    loop_ccw[lid] = mv.ccw
    parent = dict(web.parent)
    parent[lid] = mv.region
    new_web = Web(web.sigma, web.alpha, web.out_darts, loop_ccw, parent, web.outer_face)
    return new_web, [("new_class", _k_loop(lid)), ("chi", _k_loop(lid), 1)]


def _apply_death(web: Web, mv: Death) -> tuple[Web, list]:
    lid = mv.loop_id
    if lid not in web.loop_ccw:
        raise MoveError(f"death: loop {lid} does not exist")
    if web.children_of(("inside", lid)):
        raise MoveError(f"death: loop {lid} has a nonempty interior")
    loop_ccw = dict(web.loop_ccw)
    del loop_ccw[lid]
    parent = dict(web.parent)
    del parent[lid]
    new_web = Web(web.sigma, web.alpha, web.out_darts, loop_ccw, parent, web.outer_face)
    return new_web, [("chi", _k_loop(lid), 1), ("unbind", _k_loop(lid))]


def _apply_dot(web: Web, mv: Dot) -> tuple[Web, list]:
    if mv.site < 0:
        if mv.site not in web.loop_ccw:
            raise MoveError(f"dot: loop {mv.site} does not exist")
        key = _k_loop(mv.site)
    else:
        if mv.site not in web.sigma:
            raise MoveError(f"dot: dart {mv.site} does not exist")
        key = _k_dart(mv.site)
    return web, [("dot", key)]


def _apply_frame(web: Web, mv: Frame) -> tuple[Web, list]:
    dart_map = dict(mv.dart_map)
    loop_map = dict(mv.loop_map)
    for d in dart_map:
        if d not in web.sigma:
            raise MoveError(f"frame: dart {d} does not exist")
    for l in loop_map:
        if l not in web.loop_ccw:
            raise MoveError(f"frame: loop {l} does not exist")
    new_web = web.relabeled(dart_map=dart_map, loop_map=loop_map)
    return new_web, [("rekey", dart_map, loop_map)]


def _apply_zip(web: Web, mv: Zip) -> tuple[Web, list]:
    region = mv.region
    if region is not None and region not in web.regions():
        raise MoveError(f"zip region {region!r} does not exist")
    if mv.site_a == mv.site_b:
        raise MoveError("zip sites must be distinct")
    for site in (mv.site_a, mv.site_b):
        if region not in _site_region_candidates(web, site):
            raise MoveError(f"zip site {site} is not adjacent to region {region!r}")
    al_a = _site_aligned(web, mv.site_a, region)
    al_b = _site_aligned(web, mv.site_b, region)
    if al_a == al_b:
        raise MoveError(
            "zip needs exactly one aligned site (a consistently oriented pair "
            "cannot be zipped from this region)"
        )
    s_plus, s_minus = (mv.site_a, mv.site_b) if al_a else (mv.site_b, mv.site_a)

    labels = mv.labels if mv.labels is not None else _fresh_darts(web, 6)
    m1, m2, in_p, out_p, in_m, out_m = labels
    if len(set(labels)) != 6 or any(d in web.sigma or d <= 0 for d in labels):
        raise MoveError(f"zip labels {labels} must be six fresh positive darts")

    same_edge = s_plus > 0 and s_minus > 0 and web.alpha[s_plus] == s_minus

    # ---- surgery on sigma/alpha/out -------------------------------------
    sigma = dict(web.sigma)
    alpha = dict(web.alpha)
    out = set(web.out_darts)
    loop_ccw = dict(web.loop_ccw)
    consumed_loops: list[int] = []

    if same_edge:
        t, h = s_plus, s_minus
        if mv.middle == "aligned_first":
            pieces = [(t, in_p), (out_p, in_m), (out_m, h)]
        elif mv.middle == "anti_first":
            pieces = [(t, in_m), (out_m, in_p), (out_p, h)]
        else:
            raise MoveError(
                "zip with both sites on one edge needs middle="
                "'aligned_first' or 'anti_first'"
            )
        for a, b in pieces:
            alpha[a] = b
            alpha[b] = a
    else:
        if s_plus > 0:
            t = s_plus
            old_head = web.alpha[t]
            alpha[t] = in_p
            alpha[in_p] = t
            alpha[out_p] = old_head
            alpha[old_head] = out_p
        else:
            alpha[out_p] = in_p
            alpha[in_p] = out_p
            consumed_loops.append(s_plus)
        if s_minus > 0:
            h = s_minus
            old_tail = web.alpha[h]
            alpha[old_tail] = in_m
            alpha[in_m] = old_tail
            alpha[out_m] = h
            alpha[h] = out_m
        else:
            alpha[out_m] = in_m
            alpha[in_m] = out_m
            consumed_loops.append(s_minus)
    # new vertices: sink (m1, in_minus, in_plus), source (m2, out_plus, out_minus)
    sigma[m1], sigma[in_m], sigma[in_p] = in_m, in_p, m1
    sigma[m2], sigma[out_p], sigma[out_m] = out_p, out_m, m2
    alpha[m1] = m2
    alpha[m2] = m1
    out |= {m2, out_p, out_m}
    for lid in consumed_loops:
        del loop_ccw[lid]

    # ---- faces, components ----------------------------------------------
    new_faces = _face_orbits(sigma, alpha)
    new_face_of = {d: f for f, orbit in new_faces.items() for d in orbit}
    new_comps = _component_split(sigma, alpha)
    new_comp_of = {d: c for c, comp in new_comps.items() for d in comp}
    carry = _carry_faces(web, new_face_of)

    sink_face = new_face_of[in_m]  # pocket between the two tail pieces
    source_face = new_face_of[out_p]  # pocket between the two head pieces
    split = sink_face != source_face

    old_comp_ids = {web.component_of(s) for s in (s_plus, s_minus) if s > 0}
    new_comp_id = new_comp_of[m1]

    parent: dict[int, Region] = {}
    outer_face: dict[int, int] = {}
    for c, f in web.outer_face.items():
        if c not in old_comp_ids:
            parent[c] = web.parent[c]
            outer_face[c] = carry[f]
    for l in loop_ccw:
        parent[l] = web.parent[l]

    if split:
        # both sites lie on one face walk of one dart component
        if len(old_comp_ids) != 1:
            raise MalformedMovie("zip: a splitting walk must lie on one component")
        c_old = next(iter(old_comp_ids))
        c_parent = web.parent[c_old]
        site_faces = {web.face_of(s) for s in (s_plus, s_minus) if s > 0}
        face_was_outer = web.outer_face[c_old] in site_faces
        parent[new_comp_id] = c_parent
        if face_was_outer:
            if mv.ceiling_side not in ("sink", "source"):
                raise MoveError(
                    "zip splitting a component's outer walk needs "
                    "ceiling_side='sink' or 'source'"
                )
            if mv.ceiling_side == "sink":
                outer_face[new_comp_id] = sink_face
                pocket_face = source_face
            else:
                outer_face[new_comp_id] = source_face
                pocket_face = sink_face
            sink_region: Region = (
                c_parent if mv.ceiling_side == "sink" else ("newface", pocket_face)
            )
            source_region: Region = (
                c_parent if mv.ceiling_side == "source" else ("newface", pocket_face)
            )
        else:
            outer_face[new_comp_id] = carry[web.outer_face[c_old]]
            sink_region = ("newface", sink_face)
            source_region = ("newface", source_face)
        for item in list(parent):
            if item != new_comp_id and parent[item] == region:
                parent[item] = (
                    sink_region if item in mv.children_to_sink else source_region
                )
    else:
        # the two site walks merge into one; the region keeps its name
        def encloses(site: int) -> bool:
            if site < 0:
                return region == ("inside", site)
            return web.face_of(site) != web.outer_face[web.component_of(site)]

        enc_plus = encloses(s_plus)
        enc_minus = encloses(s_minus)
        if enc_plus and enc_minus:
            raise MalformedMovie("zip sites cannot both enclose the shared region")
        if enc_plus or enc_minus:
            enclosing = s_plus if enc_plus else s_minus
            if enclosing > 0:
                c_old = web.component_of(enclosing)
                parent[new_comp_id] = web.parent[c_old]
                outer_face[new_comp_id] = carry[web.outer_face[c_old]]
            else:
                far_dart = m2 if enclosing == s_plus else m1
                parent[new_comp_id] = web.parent[enclosing]
                outer_face[new_comp_id] = new_face_of[far_dart]
        else:
            parent[new_comp_id] = region
            outer_face[new_comp_id] = sink_face

    # interiors of consumed loops
    override: dict[Region, Region] = {}
    for lid in consumed_loops:
        if region == ("inside", lid):
            override[("inside", lid)] = ("newface", sink_face)
        else:
            if lid == s_plus:
                interior_dart = out_p if web.loop_ccw[lid] else in_p
            else:
                interior_dart = out_m if web.loop_ccw[lid] else in_m
            override[("inside", lid)] = ("newface", new_face_of[interior_dart])

    rename = _make_renamer(carry, override, new_comp_of, outer_face, parent)
    final_parent = {item: rename(r) for item, r in parent.items()}
    new_web = Web(sigma, alpha, out, loop_ccw, final_parent, outer_face)

    # ---- tracking --------------------------------------------------------
    like_p = _k_dart(s_plus) if s_plus > 0 else _k_loop(s_plus)
    like_m = _k_dart(s_minus) if s_minus > 0 else _k_loop(s_minus)
    instrs: list = [
        ("new_class", _k_dart(m1)),
        ("chi", _k_dart(m1), 1),
        ("bind", _k_dart(m2), _k_dart(m1)),
        ("bind", _k_dart(in_p), like_p),
        ("bind", _k_dart(out_p), like_p),
        ("bind", _k_dart(in_m), like_m),
        ("bind", _k_dart(out_m), like_m),
    ]
    for lid in consumed_loops:
        instrs.append(("unbind", _k_loop(lid)))
    instrs.append(
        (
            "seam_create",
            (m1, in_m, in_p),
            (m2, out_p, out_m),
            [(in_p, out_p), (in_m, out_m), (m1, m2)],
        )
    )
    return new_web, instrs


def _unzip_arms(web: Web, seam: int) -> tuple[int, int, int, int, int, int]:
    """Resolve the seam edge: (m1, m2, p, q, r, s) with m1 the dart at
    the sink vertex, p = sigma(m1), q = sigma^2(m1), r = sigma(m2),
    s = sigma^2(m2)."""
    if seam not in web.sigma:
        raise MoveError(f"unzip: dart {seam} does not exist")
    d, a = seam, web.alpha[seam]
    m1, m2 = (a, d) if d in web.out_darts else (d, a)
    p = web.sigma[m1]
    q = web.sigma[p]
    r = web.sigma[m2]
    s = web.sigma[r]
    return m1, m2, p, q, r, s


def _unzip_new_loop_ids(
    web: Web, mv: Unzip, closes_aligned: bool, closes_anti: bool
) -> tuple[Optional[int], Optional[int]]:
    taken: list[int] = []
    lid_a = lid_b = None
    if closes_aligned:
        lid_a = (
            mv.loop_id_aligned
            if mv.loop_id_aligned is not None
            else _fresh_loop_id(web, taken)
        )
        taken.append(lid_a)
    if closes_anti:
        lid_b = (
            mv.loop_id_anti
            if mv.loop_id_anti is not None
            else _fresh_loop_id(web, taken)
        )
    return lid_a, lid_b


def _apply_unzip(web: Web, mv: Unzip) -> tuple[Web, list]:
    m1, m2, p, q, r, s = _unzip_arms(web, mv.seam)
    deleted = {m1, m2, p, q, r, s}
    if len(deleted) != 6:
        raise MoveError("unzip: seam vertices are degenerate")

    faces = web.faces()
    fl_aligned = web.face_of(m2)  # flank between seam and the aligned arms
    fl_anti = web.face_of(m1)  # flank between seam and the anti arms
    f_sink = web.face_of(p)  # pocket at the sink end
    f_source = web.face_of(r)  # pocket at the source end
    c_old = web.component_of(m1)
    c_parent = web.parent[c_old]
    old_outer = web.outer_face[c_old]

    sigma = {d: v for d, v in web.sigma.items() if d not in deleted}
    alpha = {d: v for d, v in web.alpha.items() if d not in deleted}
    out = {d for d in web.out_darts if d not in deleted}
    loop_ccw = dict(web.loop_ccw)

    closes_aligned = web.alpha[q] == r
    closes_anti = web.alpha[p] == s
    wires = {q: r, r: q, p: s, s: p}

    def exit_dart(arm: int) -> int:
        """The surviving dart the strand through this arm fuses onto."""
        cur = arm
        while True:
            out_d = web.alpha[wires[cur]]
            if out_d not in deleted:
                return out_d
            cur = out_d

    for y in list(sigma):
        a = web.alpha[y]
        if a in deleted:
            alpha[y] = exit_dart(a)

    lid_a, lid_b = _unzip_new_loop_ids(web, mv, closes_aligned, closes_anti)
    new_loops: list[tuple[int, int]] = []  # (loop id, flank face)

    def loop_ccw_flag(pair: tuple[int, int], flank: int) -> bool:
        tail = pair[0] if pair[0] in web.out_darts else pair[1]
        in_flank = tail in faces[flank]
        # a flank that was the outer face becomes the loop's exterior,
        # reversing the reading
        return in_flank if flank != old_outer else not in_flank

    if closes_aligned:
        if lid_a is None or lid_a >= 0 or lid_a in web.loop_ccw:
            raise MoveError(f"unzip: loop id {lid_a} is not a fresh negative id")
        loop_ccw[lid_a] = loop_ccw_flag((q, r), fl_aligned)
        new_loops.append((lid_a, fl_aligned))
    if closes_anti:
        if lid_b is None or lid_b >= 0 or lid_b in web.loop_ccw or lid_b == lid_a:
            raise MoveError(f"unzip: loop id {lid_b} is not a fresh negative id")
        loop_ccw[lid_b] = loop_ccw_flag((p, s), fl_anti)
        new_loops.append((lid_b, fl_anti))

    new_faces = _face_orbits(sigma, alpha) if sigma else {}
    new_face_of = {d: f for f, orbit in new_faces.items() for d in orbit}
    new_comps = _component_split(sigma, alpha) if sigma else {}
    new_comp_of = {d: c for c, comp in new_comps.items() for d in comp}
    carry = _carry_faces(web, new_face_of)

    parent: dict[int, Region] = {}
    outer_face: dict[int, int] = {}
    for c, f in web.outer_face.items():
        if c != c_old:
            parent[c] = web.parent[c]
            outer_face[c] = carry[f]
    for l in web.loop_ccw:
        parent[l] = web.parent[l]

    override: dict[Region, Region] = {}
    comp_darts_old = web.components()[c_old] - deleted
    my_parts = sorted({new_comp_of[d] for d in comp_darts_old})
    split = f_sink == f_source

    if not split:
        if len(my_parts) != 1 or new_loops:
            raise MalformedMovie("unzip: unexpected component split")
        c_new = my_parts[0]
        parent[c_new] = c_parent
        survivors = [d for d in faces[f_sink] if d in new_face_of] + [
            d for d in faces[f_source] if d in new_face_of
        ]
        merged = new_face_of[min(survivors)]
        if old_outer in (f_sink, f_source):
            outer_face[c_new] = merged
            override[("face", f_sink)] = c_parent
            override[("face", f_source)] = c_parent
        else:
            outer_face[c_new] = carry[old_outer]
            override[("face", f_sink)] = ("newface", merged)
            override[("face", f_source)] = ("newface", merged)
    else:
        # the pockets coincide: the walk F separates the aligned side
        # from the anti side and the component splits in two parts
        parts_info: list[tuple[str, int]] = []
        if closes_aligned:
            parts_info.append(("loop", lid_a))
        else:
            parts_info.append(("comp", new_comp_of[exit_dart(q)]))
        if closes_anti:
            parts_info.append(("loop", lid_b))
        else:
            parts_info.append(("comp", new_comp_of[exit_dart(p)]))
        flank_of = {0: fl_aligned, 1: fl_anti}

        def f_walk_face(part: int) -> int:
            survivors = [
                d
                for d in faces[f_sink]
                if d in new_face_of and new_comp_of[d] == part
            ]
            if not survivors:
                raise MalformedMovie("unzip: a split part lost its walk along F")
            return new_face_of[min(survivors)]

        if f_sink == old_outer:
            for kind, ident in parts_info:
                parent[ident] = c_parent
                if kind == "comp":
                    outer_face[ident] = f_walk_face(ident)
            override[("face", f_sink)] = c_parent
        else:
            outer_idx: Optional[int] = None
            for idx, (kind, ident) in enumerate(parts_info):
                if kind == "comp" and any(
                    new_comp_of.get(d) == ident
                    for d in faces[old_outer]
                    if d in new_face_of
                ):
                    outer_idx = idx
            if outer_idx is None:
                for idx, (kind, ident) in enumerate(parts_info):
                    if kind == "loop" and flank_of[idx] == old_outer:
                        outer_idx = idx
            if outer_idx is None:
                raise MalformedMovie("unzip: cannot locate the outer part")
            okind, oid = parts_info[outer_idx]
            ikind, iid = parts_info[1 - outer_idx]
            parent[oid] = c_parent
            if okind == "comp":
                outer_face[oid] = carry[old_outer]
                inner_region: Region = ("newface", f_walk_face(oid))
            else:
                inner_region = ("inside", oid)
            override[("face", f_sink)] = inner_region
            parent[iid] = inner_region
            if ikind == "comp":
                outer_face[iid] = f_walk_face(iid)

    # flank faces around forming loops become those loops' interiors
    for lid, flank in new_loops:
        if flank != old_outer:
            override[("face", flank)] = ("inside", lid)

    rename = _make_renamer(carry, override, new_comp_of, outer_face, parent)
    final_parent = {item: rename(r) for item, r in parent.items()}
    new_web = Web(sigma, alpha, out, loop_ccw, final_parent, outer_face)

    # ---- tracking --------------------------------------------------------
    instrs: list = []
    if closes_aligned:
        instrs.append(("bind", _k_loop(lid_a), _k_dart(q)))
    if closes_anti:
        instrs.append(("bind", _k_loop(lid_b), _k_dart(p)))
    instrs.append(("fuse", _k_dart(q), _k_dart(r)))
    instrs.append(("fuse", _k_dart(p), _k_dart(s)))
    instrs.append(("seam_join", (m1, p, q), (m2, r, s), [(m1, m2), (p, s), (q, r)]))
    for d in sorted(deleted):
        instrs.append(("unbind", _k_dart(d)))
    return new_web, instrs


def _apply_digon_cup(web: Web, mv: DigonCup) -> tuple[Web, list]:
    labels = mv.labels if mv.labels is not None else _fresh_darts(web, 6)
    p1, p2, c1, c2, u1, u2 = labels
    if len(set(labels)) != 6 or any(d in web.sigma or d <= 0 for d in labels):
        raise MoveError(f"cup labels {labels} must be six fresh positive darts")

    sigma = dict(web.sigma)
    alpha = dict(web.alpha)
    out = set(web.out_darts)
    loop_ccw = dict(web.loop_ccw)

    if mv.site < 0:
        lid = mv.site
        if lid not in web.loop_ccw:
            raise MoveError(f"cup: loop {lid} does not exist")
        if mv.side not in ("inside", "outside"):
            raise MoveError("cup on a loop needs side='inside' or 'outside'")
        side_left = (mv.side == "inside") == web.loop_ccw[lid]
        alpha[p1] = p2
        alpha[p2] = p1
        del loop_ccw[lid]
        loop_site: Optional[int] = lid
    else:
        d = mv.site
        if d not in web.sigma:
            raise MoveError(f"cup: dart {d} does not exist")
        if mv.side not in ("left", "right"):
            raise MoveError("cup on an edge needs side='left' or 'right'")
        t, h = web.edge_of(d)
        side_left = mv.side == "left"
        alpha[t] = p1
        alpha[p1] = t
        alpha[p2] = h
        alpha[h] = p2
        loop_site = None
    alpha[c1] = c2
    alpha[c2] = c1
    alpha[u1] = u2
    alpha[u2] = u1
    out |= {p2, c2, u2}
    if side_left:
        sigma[c1], sigma[u1], sigma[p1] = u1, p1, c1
        sigma[p2], sigma[u2], sigma[c2] = u2, c2, p2
    else:
        sigma[c1], sigma[p1], sigma[u1] = p1, u1, c1
        sigma[p2], sigma[c2], sigma[u2] = c2, u2, p2

    new_faces = _face_orbits(sigma, alpha)
    new_face_of = {d: f for f, orbit in new_faces.items() for d in orbit}
    new_comps = _component_split(sigma, alpha)
    new_comp_of = {d: c for c, comp in new_comps.items() for d in comp}
    carry = _carry_faces(web, new_face_of)

    parent: dict[int, Region] = {}
    outer_face: dict[int, int] = {}
    override: dict[Region, Region] = {}
    skip_comp = None if loop_site is not None else web.component_of(mv.site)
    for c, f in web.outer_face.items():
        if c != skip_comp:
            parent[c] = web.parent[c]
            outer_face[c] = carry[f]
    for l in loop_ccw:
        parent[l] = web.parent[l]

    new_comp_id = new_comp_of[p1]
    if loop_site is not None:
        ccw = web.loop_ccw[loop_site]
        interior_face = new_face_of[p2] if ccw else new_face_of[p1]
        exterior_face = new_face_of[p1] if ccw else new_face_of[p2]
        parent[new_comp_id] = web.parent[loop_site]
        outer_face[new_comp_id] = exterior_face
        override[("inside", loop_site)] = ("newface", interior_face)
    else:
        c_old = web.component_of(mv.site)
        parent[new_comp_id] = web.parent[c_old]
        outer_face[new_comp_id] = carry[web.outer_face[c_old]]

    rename = _make_renamer(carry, override, new_comp_of, outer_face, parent)
    final_parent = {item: rename(r) for item, r in parent.items()}
    new_web = Web(sigma, alpha, out, loop_ccw, final_parent, outer_face)

    like = _k_loop(loop_site) if loop_site is not None else _k_dart(mv.site)
    instrs: list = [
        ("bind", _k_dart(p1), like),
        ("bind", _k_dart(p2), like),
        ("new_class", _k_dart(c1)),
        ("chi", _k_dart(c1), 1),
        ("bind", _k_dart(c2), _k_dart(c1)),
        ("new_class", _k_dart(u1)),
        ("chi", _k_dart(u1), 1),
        ("bind", _k_dart(u2), _k_dart(u1)),
    ]
    if loop_site is not None:
        instrs.append(("unbind", _k_loop(loop_site)))
    if side_left:
        sink_cycle = (c1, u1, p1)
        source_cycle = (p2, u2, c2)
    else:
        sink_cycle = (c1, p1, u1)
        source_cycle = (p2, c2, u2)
    instrs.append(
        ("seam_create", sink_cycle, source_cycle, [(p1, p2), (c1, c2), (u1, u2)])
    )
    return new_web, instrs


def _cap_digon_data(web: Web, face: int) -> tuple[int, int, int, int]:
    """For a two-sided face: (d_a, d_b, x1, x2) with d_a the face dart at
    the sink vertex and x1/x2 the external darts at sink/source."""
    faces = web.faces()
    if face not in faces:
        raise MoveError(f"cap: no face with key {face}")
    orbit = faces[face]
    if len(orbit) != 2:
        raise MoveError(f"cap: face {face} is not two-sided")
    d_a, d_b = orbit
    if d_a in web.out_darts:
        d_a, d_b = d_b, d_a
    x1 = web.sigma[web.sigma[d_a]]
    x2 = web.sigma[web.sigma[d_b]]
    return d_a, d_b, x1, x2


def _apply_digon_cap(web: Web, mv: DigonCap) -> tuple[Web, list]:
    d_a, d_b, x1, x2 = _cap_digon_data(web, mv.face)
    comp = web.component_of(d_a)
    if mv.face == web.outer_face[comp]:
        raise MoveError("cap: the face must be bounded")
    if web.children_of(("face", mv.face)):
        raise MoveError("cap: the face must have an empty interior")
    faces = web.faces()
    deleted = {d_a, web.sigma[d_a], x1, d_b, web.sigma[d_b], x2}
    sf1 = web.face_of(x1)  # side face at the sink
    sf2 = web.face_of(web.sigma[d_a])  # side face at the source

    sigma = {d: v for d, v in web.sigma.items() if d not in deleted}
    alpha = {d: v for d, v in web.alpha.items() if d not in deleted}
    out = {d for d in web.out_darts if d not in deleted}
    loop_ccw = dict(web.loop_ccw)

    closes = web.alpha[x1] == x2
    new_loop: Optional[int] = None
    if closes:
        lid = mv.loop_id if mv.loop_id is not None else _fresh_loop_id(web)
        if lid >= 0 or lid in web.loop_ccw:
            raise MoveError(f"cap: loop id {lid} is not a fresh negative id")
        if sf1 == sf2:
            raise MalformedMovie("cap: degenerate side faces")
        tail = x1 if x1 in web.out_darts else x2
        interior = sf2 if sf1 == web.outer_face[comp] else sf1
        loop_ccw[lid] = tail in faces[interior]
        new_loop = lid
    else:
        y1, y2 = web.alpha[x1], web.alpha[x2]
        alpha[y1] = y2
        alpha[y2] = y1

    new_faces = _face_orbits(sigma, alpha) if sigma else {}
    new_face_of = {d: f for f, orbit2 in new_faces.items() for d in orbit2}
    new_comps = _component_split(sigma, alpha) if sigma else {}
    new_comp_of = {d: c for c, comp2 in new_comps.items() for d in comp2}
    carry = _carry_faces(web, new_face_of)

    parent: dict[int, Region] = {}
    outer_face: dict[int, int] = {}
    override: dict[Region, Region] = {}
    for c, f in web.outer_face.items():
        if c != comp:
            parent[c] = web.parent[c]
            outer_face[c] = carry[f]
    for l in web.loop_ccw:
        parent[l] = web.parent[l]

    if closes:
        assert new_loop is not None
        parent[new_loop] = web.parent[comp]
        interior = sf2 if sf1 == web.outer_face[comp] else sf1
        override[("face", interior)] = ("inside", new_loop)
    else:
        c_new = new_comp_of[min(web.components()[comp] - deleted)]
        parent[c_new] = web.parent[comp]
        outer_face[c_new] = carry[web.outer_face[comp]]

    rename = _make_renamer(carry, override, new_comp_of, outer_face, parent)
    final_parent = {item: rename(r) for item, r in parent.items()}
    new_web = Web(sigma, alpha, out, loop_ccw, final_parent, outer_face)

    instrs: list = []
    if closes:
        instrs.append(("bind", _k_loop(new_loop), _k_dart(x1)))
    instrs.append(("fuse", _k_dart(x1), _k_dart(x2)))
    instrs.append(
        (
            "seam_join",
            (d_a, web.sigma[d_a], x1),
            (d_b, web.sigma[d_b], x2),
            [
                (d_a, web.sigma[d_b]),  # bubble edge containing d_a
                (web.sigma[d_a], d_b),  # the other bubble edge
                (x1, x2),
            ],
        )
    )
    for d in sorted(deleted):
        instrs.append(("unbind", _k_dart(d)))
    return new_web, instrs


def _apply_saddle_merge(web: Web, mv: SaddleMerge) -> tuple[Web, list]:
    la, lb = mv.loop_a, mv.loop_b
    for l in (la, lb):
        if l not in web.loop_ccw:
            raise MoveError(f"saddle: loop {l} does not exist")
    if la == lb:
        raise MoveError("saddle merge needs two distinct loops")
    if web.parent[la] == web.parent[lb]:
        region: Region = web.parent[la]
        nested: Optional[tuple[int, int]] = None
    elif web.parent[lb] == ("inside", la):
        region = ("inside", la)
        nested = (la, lb)
    elif web.parent[la] == ("inside", lb):
        region = ("inside", lb)
        nested = (lb, la)
    else:
        raise MoveError("saddle loops do not bound a common region")
    if _site_aligned(web, la, region) != _site_aligned(web, lb, region):
        raise MoveError("saddle loops have incompatible orientations")
    lid = mv.loop_id if mv.loop_id is not None else _fresh_loop_id(web)
    if lid >= 0 or lid in web.loop_ccw:
        raise MoveError(f"saddle: loop id {lid} is not a fresh negative id")

    loop_ccw = dict(web.loop_ccw)
    parent = dict(web.parent)
    del loop_ccw[la], loop_ccw[lb]
    del parent[la], parent[lb]
    if nested is None:
        loop_ccw[lid] = web.loop_ccw[la]
        parent[lid] = region
        for item, reg in list(parent.items()):
            if reg in (("inside", la), ("inside", lb)):
                parent[item] = ("inside", lid)
    else:
        outer, inner = nested
        loop_ccw[lid] = web.loop_ccw[outer]
        parent[lid] = web.parent[outer]
        for item, reg in list(parent.items()):
            if reg == ("inside", outer):
                parent[item] = ("inside", lid)
            elif reg == ("inside", inner):
                parent[item] = web.parent[outer]
    new_web = Web(web.sigma, web.alpha, web.out_darts, loop_ccw, parent, web.outer_face)
    instrs = [
        ("fuse", _k_loop(la), _k_loop(lb)),
        ("bind", _k_loop(lid), _k_loop(la)),
        ("unbind", _k_loop(la)),
        ("unbind", _k_loop(lb)),
    ]
    return new_web, instrs


def _apply_saddle_split(web: Web, mv: SaddleSplit) -> tuple[Web, list]:
    l = mv.loop
    if l not in web.loop_ccw:
        raise MoveError(f"saddle: loop {l} does not exist")
    l1 = mv.loop_id_first if mv.loop_id_first is not None else _fresh_loop_id(web)
    l2 = (
        mv.loop_id_second
        if mv.loop_id_second is not None
        else _fresh_loop_id(web, [l1])
    )
    if l1 == l2 or any(x >= 0 or x in web.loop_ccw for x in (l1, l2)):
        raise MoveError(f"saddle: loop ids {(l1, l2)} are not fresh negative ids")
    loop_ccw = dict(web.loop_ccw)
    parent = dict(web.parent)
    ccw = loop_ccw.pop(l)
    del parent[l]
    if mv.through_inside:
        interior = set(web.children_of(("inside", l)))
        if not mv.children_to_first <= interior:
            raise MoveError("children_to_first must be nested in the split loop")
        loop_ccw[l1] = ccw
        loop_ccw[l2] = ccw
        parent[l1] = web.parent[l]
        parent[l2] = web.parent[l]
        for item in interior:
            parent[item] = (
                ("inside", l1) if item in mv.children_to_first else ("inside", l2)
            )
    else:
        siblings = set(web.children_of(web.parent[l])) - {l}
        if not mv.lens_children <= siblings:
            raise MoveError("lens_children must be siblings of the split loop")
        loop_ccw[l1] = ccw  # the big loop keeps the orientation
        loop_ccw[l2] = not ccw  # the lens reverses it
        parent[l1] = web.parent[l]
        parent[l2] = ("inside", l1)
        for item in web.children_of(("inside", l)):
            parent[item] = ("inside", l1)
        for item in mv.lens_children:
            parent[item] = ("inside", l2)
    new_web = Web(web.sigma, web.alpha, web.out_darts, loop_ccw, parent, web.outer_face)
    instrs = [
        ("bind", _k_loop(l1), _k_loop(l)),
        ("bind", _k_loop(l2), _k_loop(l)),
        ("unbind", _k_loop(l)),
        ("fuse", _k_loop(l1), _k_loop(l2)),
    ]
    return new_web, instrs


_APPLIERS = {
    Birth: _apply_birth,
    Death: _apply_death,
    Dot: _apply_dot,
    Zip: _apply_zip,
    Unzip: _apply_unzip,
    DigonCup: _apply_digon_cup,
    DigonCap: _apply_digon_cap,
    SaddleMerge: _apply_saddle_merge,
    SaddleSplit: _apply_saddle_split,
    Frame: _apply_frame,
}


def apply_move(web: Web, move: Move) -> tuple[Web, list]:
    """Apply one move; returns the new web and tracking instructions."""
    return _APPLIERS[type(move)](web, move)


# ==========================================================================
# inverse moves (time reversal)
# ==========================================================================


def inverse_move(move: Move, before: Web, after: Web) -> Move:
    """The move undoing ``move``, given the web slices before and after."""
    if isinstance(move, Birth):
        return Death(move.loop_id)
    if isinstance(move, Death):
        return Birth(
            move.loop_id, before.parent[move.loop_id], before.loop_ccw[move.loop_id]
        )
    if isinstance(move, Dot):
        return Dot(move.site)
    if isinstance(move, Frame):
        return Frame(
            tuple(sorted((b, a) for a, b in move.dart_map)),
            tuple(sorted((b, a) for a, b in move.loop_map)),
        )
    if isinstance(move, Zip):
        labels = move.labels if move.labels is not None else _fresh_darts(before, 6)
        al_a = _site_aligned(before, move.site_a, move.region)
        s_plus, s_minus = (
            (move.site_a, move.site_b) if al_a else (move.site_b, move.site_a)
        )
        return Unzip(
            seam=labels[0],
            loop_id_aligned=s_plus if s_plus < 0 else None,
            loop_id_anti=s_minus if s_minus < 0 else None,
        )
    if isinstance(move, Unzip):
        m1, m2, p, q, r, s = _unzip_arms(before, move.seam)
        closes_aligned = before.alpha[q] == r
        closes_anti = before.alpha[p] == s
        lid_a, lid_b = _unzip_new_loop_ids(before, move, closes_aligned, closes_anti)
        deleted = {m1, m2, p, q, r, s}
        wires = {q: r, r: q, p: s, s: p}

        def exit_from(arm: int) -> int:
            e = before.alpha[arm]
            while e in deleted:
                e = before.alpha[wires[e]]
            return e

        site_plus = lid_a if closes_aligned else exit_from(q)
        site_minus = lid_b if closes_anti else exit_from(s)
        region = _seam_region_after_unzip(after, site_plus, site_minus)
        sink_region_before = before.region_of_face(before.face_of(p))
        c_old = before.component_of(m1)
        cts = frozenset(
            item
            for item, reg in before.parent.items()
            if reg == sink_region_before and item != c_old
        )
        old_outer = before.outer_face[c_old]
        if before.face_of(p) == old_outer:
            ceiling: Optional[str] = "sink"
        elif before.face_of(r) == old_outer:
            ceiling = "source"
        else:
            ceiling = None
        if before.alpha[r] == p:
            middle: Optional[str] = "aligned_first"
        elif before.alpha[s] == q:
            middle = "anti_first"
        else:
            middle = None
        return Zip(
            site_a=site_plus,
            site_b=site_minus,
            region=region,
            labels=(m1, m2, q, r, p, s),
            children_to_sink=cts,
            ceiling_side=ceiling,
            middle=middle,
        )
    if isinstance(move, DigonCup):
        labels = move.labels if move.labels is not None else _fresh_darts(before, 6)
        p1, p2, c1, c2, u1, u2 = labels
        side_left = after.sigma[c1] == u1
        return DigonCap(
            face=min(u2, c1) if side_left else min(u1, c2),
            loop_id=move.site if move.site < 0 else None,
        )
    if isinstance(move, DigonCap):
        d_a, d_b, x1, x2 = _cap_digon_data(before, move.face)
        chord1 = before.sigma[x1]  # = d_a: the bubble edge on the face walk
        bulge1 = before.sigma[chord1]
        labels = (
            x1,
            x2,
            chord1,
            before.alpha[chord1],
            bulge1,
            before.alpha[bulge1],
        )
        if before.alpha[x1] == x2:
            lid = move.loop_id
            if lid is None:
                lid = next(l for l in after.loop_ccw if l not in before.loop_ccw)
            side = "inside" if after.loop_ccw[lid] else "outside"
            return DigonCup(site=lid, side=side, labels=labels)
        return DigonCup(site=before.alpha[x1], side="left", labels=labels)
    if isinstance(move, SaddleMerge):
        lid = move.loop_id
        if lid is None:
            lid = next(l for l in after.loop_ccw if l not in before.loop_ccw)
        la, lb = move.loop_a, move.loop_b
        if before.parent[la] == before.parent[lb]:
            return SaddleSplit(
                loop=lid,
                through_inside=True,
                loop_id_first=la,
                loop_id_second=lb,
                children_to_first=frozenset(before.children_of(("inside", la))),
            )
        outer, inner = (la, lb) if before.parent[lb] == ("inside", la) else (lb, la)
        return SaddleSplit(
            loop=lid,
            through_inside=False,
            loop_id_first=outer,
            loop_id_second=inner,
            lens_children=frozenset(before.children_of(("inside", inner))),
        )
    if isinstance(move, SaddleSplit):
        fresh = sorted(l for l in after.loop_ccw if l not in before.loop_ccw)
        l1 = move.loop_id_first if move.loop_id_first is not None else fresh[-1]
        l2 = move.loop_id_second if move.loop_id_second is not None else fresh[0]
        return SaddleMerge(loop_a=l1, loop_b=l2, loop_id=move.loop)
    raise MoveError(f"cannot invert move {move!r}")


def _seam_region_after_unzip(after: Web, site_plus: int, site_minus: int) -> Region:
    """The region, read in the unzipped web, across which re-zipping the
    seam acts."""
    if site_plus > 0:
        return after.region_of_face(after.face_of(site_plus))
    if site_minus > 0:
        return after.region_of_face(after.face_of(site_minus))
    # both re-zip sites are loops
    if after.parent[site_minus] == ("inside", site_plus):
        return ("inside", site_plus)
    if after.parent[site_plus] == ("inside", site_minus):
        return ("inside", site_minus)
    return after.parent[site_plus]


# ==========================================================================
# the movie
# ==========================================================================


class FoamMovie:
    """A start web and a sequence of moves; the presented cobordism goes
    from the start web to the final web."""

    __slots__ = ("start", "moves", "_states", "_instrs", "_reflect")

    def __init__(self, start: Web, moves: Sequence[Move] = ()) -> None:
        self.start = start
        self.moves = tuple(moves)
        self._states: Optional[list[Web]] = None
        self._instrs: Optional[tuple] = None
        self._reflect: Optional["FoamMovie"] = None

    def states(self) -> list[Web]:
        """All web slices, from the start web to the final web."""
        if self._states is None:
            webs = [self.start]
            for mv in self.moves:
                webs.append(apply_move(webs[-1], mv)[0])
            self._states = webs
        return self._states

    def instruction_stream(self) -> tuple:
        """The facet-tracking instruction list of each move, in order.

        ``apply_move`` is deterministic, so the stream is computed once
        and reused; ``compose`` concatenates the streams of its factors
        when both are already known.
        """
        if self._instrs is None:
            webs = self.states()
            self._instrs = tuple(
                apply_move(webs[i], mv)[1] for i, mv in enumerate(self.moves)
            )
        return self._instrs

    @property
    def end(self) -> Web:
        return self.states()[-1]

    def degree(self) -> int:
        return sum(move_degree(m) for m in self.moves)

    def compose(self, then: "FoamMovie") -> "FoamMovie":
        """This movie followed by ``then`` (ends must match exactly)."""
        if self.end != then.start:
            raise MalformedMovie("movies do not compose: end and start webs differ")
        out = FoamMovie(self.start, self.moves + then.moves)
        out._states = self.states() + then.states()[1:]
        if self._instrs is not None and then._instrs is not None:
            out._instrs = self._instrs + then._instrs
        return out

    def reflect(self) -> "FoamMovie":
        """The time-reversed movie, with each move exactly inverted.

        The result is cached on the movie, so repeated reflections of
        the same preparation are free.
        """
        if self._reflect is None:
            states = self.states()
            inv = [
                inverse_move(mv, states[i], states[i + 1])
                for i, mv in enumerate(self.moves)
            ]
            self._reflect = FoamMovie(self.end, tuple(reversed(inv)))
        return self._reflect

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FoamMovie):
            return NotImplemented
        return self.start == other.start and self.moves == other.moves

    def __hash__(self) -> int:
        return hash((self.start.exact_key(), self.moves))

    def __repr__(self) -> str:
        return f"<FoamMovie {len(self.moves)} moves>"

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "start": self.start.to_json_dict(),
            "moves": [move_to_json(m) for m in self.moves],
            "frame_checksums": [
                hashlib.md5(w.exact_key().encode()).hexdigest() for w in self.states()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "FoamMovie":
        movie = cls(
            Web.from_json_dict(data["start"]),
            tuple(move_from_json(m) for m in data["moves"]),
        )
        sums = data.get("frame_checksums")
        if sums is not None:
            got = [
                hashlib.md5(w.exact_key().encode()).hexdigest()
                for w in movie.states()
            ]
            if got != list(sums):
                raise MalformedMovie("movie frame checksums do not match")
        return movie

    @classmethod
    def from_json(cls, text: str) -> "FoamMovie":
        return cls.from_json_dict(json.loads(text))


def _region_to_json(r: Region):
    return None if r is None else [r[0], r[1]]


def _region_from_json(r) -> Region:
    return None if r is None else (str(r[0]), int(r[1]))


def move_to_json(m: Move) -> dict:
    d: dict = {"type": type(m).__name__}
    for name in m.__dataclass_fields__:  # type: ignore[union-attr]
        v = getattr(m, name)
        if name == "region":
            v = _region_to_json(v)
        elif isinstance(v, frozenset):
            v = sorted(v)
        elif isinstance(v, tuple):
            v = [list(x) if isinstance(x, tuple) else x for x in v]
        d[name] = v
    return d


_MOVE_TYPES = {
    t.__name__: t
    for t in (
        Birth,
        Death,
        Dot,
        Zip,
        Unzip,
        DigonCup,
        DigonCap,
        SaddleMerge,
        SaddleSplit,
        Frame,
    )
}


def move_from_json(d: Mapping) -> Move:
    t = _MOVE_TYPES[d["type"]]
    kwargs = {}
    for name in t.__dataclass_fields__:  # type: ignore[attr-defined]
        if name not in d:
            continue
        v = d[name]
        if name == "region":
            v = _region_from_json(v)
        elif name in ("children_to_sink", "lens_children", "children_to_first"):
            v = frozenset(v)
        elif name == "labels" and v is not None:
            v = tuple(v)
        elif name in ("dart_map", "loop_map"):
            v = tuple(tuple(x) for x in v)
        kwargs[name] = v
    return t(**kwargs)


# ==========================================================================
# global surface bookkeeping
# ==========================================================================


class _DSU:
    __slots__ = ("parent",)

    def __init__(self) -> None:
        self.parent: dict[int, int] = {}

    def make(self) -> int:
        n = len(self.parent)
        self.parent[n] = n
        return n

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)
        return min(ra, rb)


@dataclass(frozen=True)
class PreFoam:
    """The evaluation-relevant shadow of a closed movie: facets with
    their (genus, dots), and singular circles as cyclic facet triples."""

    facets: tuple[tuple[int, int], ...]
    circles: tuple[tuple[int, int, int], ...]


class FoamState:
    """Sweeps a movie, accumulating facet classes (Euler characteristic
    and dots), seam arcs with their boundary strips, and closed singular
    circles."""

    def __init__(self) -> None:
        self.facets = _DSU()
        self.chi: dict[int, int] = {}
        self.dots: dict[int, int] = {}
        self.class_of: dict[tuple[str, int], int] = {}
        self.strips = _DSU()
        self.strip_facet: dict[int, int] = {}
        self.strip_at: dict[tuple[int, int], int] = {}  # (vertex token, dart)
        self.vertex_of_dart: dict[int, int] = {}
        self.vertex_sink: dict[int, bool] = {}
        self.vertex_darts: dict[int, tuple[int, int, int]] = {}
        self.arcs = _DSU()
        self.arc_of_vertex: dict[int, int] = {}
        self.circles: list[tuple[int, int, int]] = []
        self._next_vertex = 0

    def _node(self, key: tuple[str, int]) -> int:
        if key not in self.class_of:
            raise MalformedMovie(f"no sheet class bound to {key}")
        return self.class_of[key]

    def _root(self, key: tuple[str, int]) -> int:
        return self.facets.find(self._node(key))

    def apply(self, instrs: list) -> None:
        for ins in instrs:
            op = ins[0]
            if op == "new_class":
                node = self.facets.make()
                self.chi[node] = 0
                self.dots[node] = 0
                self.class_of[ins[1]] = node
            elif op == "bind":
                self.class_of[ins[1]] = self._node(ins[2])
            elif op == "unbind":
                self.class_of.pop(ins[1], None)
            elif op == "chi":
                self.chi[self._root(ins[1])] += ins[2]
            elif op == "dot":
                self.dots[self._root(ins[1])] += 1
            elif op == "fuse":
                ra, rb = self._root(ins[1]), self._root(ins[2])
                if ra != rb:
                    keep = self.facets.union(ra, rb)
                    drop = rb if keep == ra else ra
                    self.chi[keep] += self.chi.pop(drop)
                    self.dots[keep] += self.dots.pop(drop)
                self.chi[self.facets.find(ra)] -= 1
            elif op == "seam_create":
                self._seam_create(ins[1], ins[2], ins[3])
            elif op == "seam_join":
                self._seam_join(ins[1], ins[2], ins[3])
            elif op == "rekey":
                self._rekey(ins[1], ins[2])
            else:
                raise MalformedMovie(f"unknown tracking instruction {op!r}")

    # -- seams -------------------------------------------------------------

    def _new_vertex(self, cycle: tuple[int, int, int], sink: bool) -> int:
        token = self._next_vertex
        self._next_vertex += 1
        self.vertex_sink[token] = sink
        self.vertex_darts[token] = cycle
        for d in cycle:
            self.vertex_of_dart[d] = token
            strip = self.strips.make()
            self.strip_facet[strip] = self._node(_k_dart(d))
            self.strip_at[(token, d)] = strip
        return token

    def _union_strips(self, s1: int, s2: int) -> None:
        r1, r2 = self.strips.find(s1), self.strips.find(s2)
        f1 = self.facets.find(self.strip_facet[r1])
        f2 = self.facets.find(self.strip_facet[r2])
        if f1 != f2:
            raise MalformedMovie(
                "seam strips on different sheets were glued; the movie is "
                "geometrically inconsistent"
            )
        r = self.strips.union(r1, r2)
        self.strip_facet[r] = self.strip_facet[r1]

    def _seam_create(
        self,
        sink_cycle: tuple[int, int, int],
        source_cycle: tuple[int, int, int],
        pairing: list,
    ) -> None:
        v1 = self._new_vertex(sink_cycle, sink=True)
        v2 = self._new_vertex(source_cycle, sink=False)
        arc = self.arcs.make()
        self.arc_of_vertex[v1] = arc
        self.arc_of_vertex[v2] = arc
        for d1, d2 in pairing:
            self._union_strips(self.strip_at[(v1, d1)], self.strip_at[(v2, d2)])

    def _seam_join(
        self,
        sink_cycle: tuple[int, int, int],
        source_cycle: tuple[int, int, int],
        pairing: list,
    ) -> None:
        v1 = self.vertex_of_dart.get(sink_cycle[0])
        v2 = self.vertex_of_dart.get(source_cycle[0])
        if v1 is None or v2 is None:
            raise MalformedMovie("seam join at darts that are not seam endpoints")
        if not self.vertex_sink[v1] or self.vertex_sink[v2]:
            raise MalformedMovie("seam join must pair a sink with a source endpoint")
        for d1, d2 in pairing:
            self._union_strips(self.strip_at[(v1, d1)], self.strip_at[(v2, d2)])
        a1 = self.arcs.find(self.arc_of_vertex[v1])
        a2 = self.arcs.find(self.arc_of_vertex[v2])
        if a1 == a2:
            self._close_circle(v1)
        else:
            self.arcs.union(a1, a2)
        for token, cycle in ((v1, sink_cycle), (v2, source_cycle)):
            for d in cycle:
                self.vertex_of_dart.pop(d, None)
                self.strip_at.pop((token, d), None)
            self.arc_of_vertex.pop(token, None)
            self.vertex_sink.pop(token, None)
            self.vertex_darts.pop(token, None)

    def _close_circle(self, v_sink: int) -> None:
        cycle = self.vertex_darts[v_sink]
        order = tuple(reversed(cycle)) if SINK_ORDER_REVERSED else cycle
        strips = [self.strips.find(self.strip_at[(v_sink, d)]) for d in order]
        if len(set(strips)) != 3:
            raise MalformedMovie(
                "a singular circle closed with fewer than three distinct strips"
            )
        self.circles.append(tuple(self.strip_facet[s] for s in strips))

    def _rekey(self, dart_map: Mapping[int, int], loop_map: Mapping[int, int]) -> None:
        def md(d: int) -> int:
            return dart_map.get(d, d)

        self.class_of = {
            (
                ("dart", md(k[1]))
                if k[0] == "dart"
                else ("loop", loop_map.get(k[1], k[1]))
            ): v
            for k, v in self.class_of.items()
        }
        self.vertex_of_dart = {md(d): v for d, v in self.vertex_of_dart.items()}
        self.vertex_darts = {
            v: tuple(md(d) for d in cyc) for v, cyc in self.vertex_darts.items()
        }
        self.strip_at = {(v, md(d)): s for (v, d), s in self.strip_at.items()}


def extract_prefoam(movie: FoamMovie) -> PreFoam:
    """Run the movie and return its facet/circle shadow.

    The movie must be closed: it must start and end at the empty web and
    leave no unfinished seam arcs.
    """
    if not movie.start.is_empty():
        raise MalformedMovie("a closed movie must start at the empty web")
    state = FoamState()
    for instrs in movie.instruction_stream():
        state.apply(instrs)
    if not movie.end.is_empty():
        raise MalformedMovie("a closed movie must end at the empty web")
    if state.arc_of_vertex:
        raise MalformedMovie("the movie ends with unfinished seam arcs")

    roots = sorted(state.chi)
    slots = {r: 0 for r in roots}
    circle_roots: list[tuple[int, ...]] = []
    for tri in state.circles:
        rtri = tuple(state.facets.find(n) for n in tri)
        circle_roots.append(rtri)
        for rt in rtri:
            slots[rt] += 1

    index: dict[int, int] = {}
    for tri in circle_roots:
        for rt in tri:
            if rt not in index:
                index[rt] = len(index)
    for rt in roots:
        if rt not in index:
            index[rt] = len(index)
    facets: list[tuple[int, int]] = [(0, 0)] * len(index)
    for rt, i in index.items():
        double_genus = 2 - state.chi[rt] - slots[rt]
        if double_genus % 2 or double_genus < 0:
            raise MalformedMovie(
                f"facet with Euler characteristic {state.chi[rt]} and "
                f"{slots[rt]} boundary slots is not a closed orientable sheet"
            )
        facets[i] = (double_genus // 2, state.dots[rt])
    circles = []
    for tri in circle_roots:
        itri = tuple(index[rt] for rt in tri)
        circles.append(min(itri[k:] + itri[:k] for k in range(3)))
    return PreFoam(tuple(facets), tuple(sorted(circles)))


# ==========================================================================
# evaluation
# ==========================================================================

_EVAL_MEMO: dict[PreFoam, int] = {}


def clear_evaluation_cache() -> None:
    _EVAL_MEMO.clear()


def evaluate(prefoam: PreFoam) -> int:
    """Exact integer value of a closed dotted singular surface.

    Sums over all ways of assigning the weights (0, 1, 2) to the three
    sheets around each singular circle (only arrangements using all
    three survive: cyclic ones count +1, reversed ones -1), multiplying
    each facet's closed-surface value at its own dots plus a
    complementary weight (2 - i) per boundary slot, with a global sign
    (-1) per circle.
    """
    cached = _EVAL_MEMO.get(prefoam)
    if cached is None:
        cached = _evaluate_inner(prefoam.facets, prefoam.circles)
        _EVAL_MEMO[prefoam] = cached
    return cached


_PERMS = ((0, 1, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0), (1, 0, 2), (0, 2, 1))


def _evaluate_inner(
    facets: tuple[tuple[int, int], ...], circles: tuple[tuple[int, int, int], ...]
) -> int:
    n = len(facets)
    slots = [0] * n
    for tri in circles:
        for f in tri:
            slots[f] += 1
    for (g, d), b in zip(facets, slots):
        if g >= 2 or (g == 1 and d > 0) or (g == 0 and d > 2):
            return 0
    # total dots must balance the total complementary weight the circles
    # hand out, or every term dies
    if sum(2 - 2 * g - b for (g, _), b in zip(facets, slots)) != sum(
        d for _, d in facets
    ):
        return 0
    base = 1
    for (g, d), b in zip(facets, slots):
        if b == 0:
            base *= closed_surface_value(g, d)
            if base == 0:
                return 0
    close_at = [-1] * n
    for idx, tri in enumerate(circles):
        for f in tri:
            close_at[f] = idx
    sign = -1 if len(circles) % 2 else 1
    memo: dict[tuple[int, tuple[tuple[int, int], ...]], int] = {}

    def rec(idx: int, acc: tuple[tuple[int, int], ...]) -> int:
        if idx == len(circles):
            return 1
        key = (idx, acc)
        hit = memo.get(key)
        if hit is not None:
            return hit
        tri = circles[idx]
        total = 0
        for perm in _PERMS:
            sgn = theta_symbol(*perm)
            nxt = dict(acc)
            for f, w in zip(tri, perm):
                nxt[f] = nxt.get(f, 0) + (2 - w)
            factor = sgn
            dead = False
            for f in set(tri):
                g, d = facets[f]
                tot = d + nxt[f]
                if close_at[f] == idx:
                    factor *= closed_surface_value(g, tot)
                    del nxt[f]
                    if factor == 0:
                        dead = True
                        break
                elif (g == 0 and tot > 2) or (g == 1 and tot > 0):
                    dead = True
                    break
            if dead:
                continue
            total += factor * rec(idx + 1, tuple(sorted(nxt.items())))
        memo[key] = total
        return total

    return sign * base * rec(0, ())


def evaluate_bruteforce(prefoam: PreFoam) -> int:
    """Independent evaluation looping over all 27 weight assignments per
    circle with no pruning or factoring; used as a cross-check."""
    facets = prefoam.facets
    circles = prefoam.circles
    sign = -1 if len(circles) % 2 else 1
    total = 0
    for assignment in itertools.product(
        itertools.product(range(3), repeat=3), repeat=len(circles)
    ):
        factor = 1
        extra = [0] * len(facets)
        for tri, weights in zip(circles, assignment):
            factor *= theta_symbol(*weights)
            if factor == 0:
                break
            for f, w in zip(tri, weights):
                extra[f] += 2 - w
        if factor == 0:
            continue
        for i, (g, d) in enumerate(facets):
            factor *= closed_surface_value(g, d + extra[i])
            if factor == 0:
                break
        total += factor
    return sign * total


def evaluate_closed(movie: FoamMovie) -> int:
    """Exact value of a closed movie (empty web to empty web)."""
    return evaluate(extract_prefoam(movie))


# ==========================================================================
# standard small cobordisms
# ==========================================================================


def identity_movie(web: Web) -> FoamMovie:
    return FoamMovie(web, ())


def dot_movie(web: Web, site: int) -> FoamMovie:
    return FoamMovie(web, (Dot(site),))


def cup_movies(web: Web, site: int, side: str) -> tuple[FoamMovie, FoamMovie]:
    """The two lifts through a two-edge bubble pushed out of ``site``:
    (plain cup, degree -1; dotted cup, degree +1).  The dotted cup marks
    the bubble sheet fixed by ``DIGON_DOT_ON_BULGE``, identified - like
    the lifts of ``digon_movies`` - through the sink-side dart of the
    bubble's bounded face, so left- and right-handed bubbles dot
    mirror-image sheets."""
    labels = _fresh_darts(web, 6)
    cup = DigonCup(site, side, labels)
    plain = FoamMovie(web, (cup,))
    end = plain.end
    bubble_darts = set(labels[2:])
    orbits = [
        o for o in end.faces().values() if len(o) == 2 and set(o) <= bubble_darts
    ]
    if len(orbits) != 1:
        raise MalformedMovie(f"bubble at {site} has no unique bounded face")
    p, q = orbits[0]
    d_a = p if p not in end.out_darts else q
    dot_site = end.sigma[d_a] if DIGON_DOT_ON_BULGE else d_a
    dotted = FoamMovie(web, (cup, Dot(dot_site)))
    return plain, dotted


def cap_movies(
    web: Web, face: int, loop_id: Optional[int] = None
) -> tuple[FoamMovie, FoamMovie]:
    """The two projections collapsing the two-edge face ``face``:
    (dotted cap, degree +1; plain cap, degree -1).  The dotted cap marks
    the bubble sheet opposite the one ``cup_movies`` dots."""
    d_a, d_b, x1, x2 = _cap_digon_data(web, face)
    dot_site = d_a if DIGON_DOT_ON_BULGE else web.sigma[d_a]
    cap = DigonCap(face, loop_id)
    dotted = FoamMovie(web, (Dot(dot_site), cap))
    plain = FoamMovie(web, (cap,))
    return dotted, plain


def digon_movies(
    web: Web, face: int, loop_id: Optional[int] = None
) -> tuple[FoamMovie, FoamMovie, FoamMovie, FoamMovie]:
    """The four canonical movies around the two-edge face ``face`` of
    ``web``: ``(lift_plain, lift_dotted, drop_dotted, drop_plain)``.

    The two drops collapse the face onto the reduced web (they are
    exactly ``cap_movies``); the two lifts run from the reduced web back
    into ``web``.  The plain lift is the reflection of the plain drop;
    the dotted lift adds one dot on the bubble sheet *opposite* the one
    the dotted drop marks, so that the four satisfy the two-edge-face
    identities (plain lift then dotted drop = identity, and so on)."""
    drop_dotted, drop_plain = cap_movies(web, face, loop_id)
    p, q = web.faces()[face]
    d_a = p if p not in web.out_darts else q
    lift_dot_site = web.sigma[d_a] if DIGON_DOT_ON_BULGE else d_a
    lift_plain = drop_plain.reflect()
    lift_dotted = lift_plain.compose(dot_movie(web, lift_dot_site))
    return lift_plain, lift_dotted, drop_dotted, drop_plain


def square_split_movies(web: Web, face: int) -> tuple[FoamMovie, FoamMovie]:
    """The two degree-zero projections unzipping a four-edge face.

    Each branch unzips one opposite pair of the face's edges; the face's
    other edge pair, fused by the first unzip, closes into a circle at
    the second unzip and is capped off.  Any further circles the
    rewiring closes belong to the reduced web and survive.  The branch
    whose pair contains the face's smallest dart comes first.
    """
    orbit = web.faces()[face]
    if len(orbit) != 4:
        raise MoveError(f"face {face} is not four-sided")

    def branch(first: int) -> FoamMovie:
        moves: list[Move] = []
        cur = web
        seams = sorted((orbit[first], orbit[first + 2]))
        middle = None
        for seam in seams:
            lid = _fresh_loop_id(cur)
            mv = Unzip(seam, loop_id_aligned=lid, loop_id_anti=lid - 1)
            cur, _ = apply_move(cur, mv)
            moves.append(mv)
            if seam == seams[1]:
                # the face lies left of its orbit darts, so its side of
                # this seam is the aligned flank exactly when the orbit
                # dart points out of the source vertex
                middle = lid if seam in web.out_darts else lid - 1
        if middle not in cur.loop_ccw:
            raise MalformedMovie(
                f"second unzip of face {face} did not close the middle circle"
            )
        moves.append(Death(middle))
        return FoamMovie(web, tuple(moves))

    return branch(0), branch(1)


def auto_zip(web: Web, site_a: int, site_b: int, region: Region = None) -> FoamMovie:
    """A single seam-creating move between two strand sites, with labels
    and the shared region inferred.  Raises ``MoveError`` when no
    placement works or several inequivalent ones do (pass an explicit
    ``Zip`` in that case)."""
    labels = _fresh_darts(web, 6)
    if region is not None:
        return FoamMovie(web, (Zip(site_a, site_b, region, labels),))
    shared = [
        r
        for r in _site_region_candidates(web, site_a)
        if r in _site_region_candidates(web, site_b)
    ]
    found: list[tuple[Web, Move]] = []
    last: Optional[MoveError] = None
    for r in shared:
        for ceiling in (None, "sink", "source"):
            mv = Zip(site_a, site_b, r, labels, frozenset(), ceiling, None)
            try:
                end, _ = apply_move(web, mv)
            except MoveError as exc:
                last = exc
                continue
            if not any(end == w for w, _ in found):
                found.append((end, mv))
    if not found:
        raise last or MoveError(f"sites {site_a}, {site_b} share no region")
    if len(found) > 1:
        raise MoveError(
            f"seam between {site_a} and {site_b} is ambiguous; give the region"
        )
    return FoamMovie(web, (found[0][1],))


def auto_unzip(web: Web, seam: int) -> FoamMovie:
    """Collapse the seam edge containing dart ``seam``, with fresh ids
    supplied for any loops the collapse closes."""
    lid = _fresh_loop_id(web)
    return FoamMovie(web, (Unzip(seam, loop_id_aligned=lid, loop_id_anti=lid - 1),))


def standard_foam(kind: str, web: Web, site: int = 0, **kw) -> FoamMovie:
    """Build a named small cobordism.

    Kinds starting at ``web``: 'identity'; 'dot' (site = dart or loop
    id); 'birth' (site = fresh loop id, with region=..., ccw=...);
    'death' (site = loop id); 'cup' / 'cup_dotted' (site with side=...);
    'cap' / 'cap_dotted' and 'drop' / 'drop_dotted' (site = two-edge
    face key); 'square_first' / 'square_second' (site = four-edge face
    key); 'zip' (site with other=..., optionally region=...); 'unzip'
    (site = seam dart).

    Kinds *ending* at ``web``: 'lift' / 'lift_dotted' (site = two-edge
    face key; the degree -1 / +1 movies from the face's reduced web back
    into ``web``) and 'square_join_first' / 'square_join_second' (the
    reflected square splits)."""
    if kind == "identity":
        return identity_movie(web)
    if kind == "dot":
        return dot_movie(web, site)
    if kind == "birth":
        return FoamMovie(web, (Birth(site, kw.get("region"), kw.get("ccw", True)),))
    if kind == "death":
        return FoamMovie(web, (Death(site),))
    if kind in ("cup", "cup_dotted"):
        plain, dotted = cup_movies(web, site, kw.get("side", "left"))
        return plain if kind == "cup" else dotted
    if kind in ("cap", "cap_dotted", "drop", "drop_dotted"):
        dotted, plain = cap_movies(web, site, kw.get("loop_id"))
        return plain if kind in ("cap", "drop") else dotted
    if kind in ("lift", "lift_dotted"):
        lift_plain, lift_dotted, _, _ = digon_movies(web, site, kw.get("loop_id"))
        return lift_plain if kind == "lift" else lift_dotted
    if kind in ("square_first", "square_second"):
        first, second = square_split_movies(web, site)
        return first if kind == "square_first" else second
    if kind in ("square_join_first", "square_join_second"):
        first, second = square_split_movies(web, site)
        return (first if kind == "square_join_first" else second).reflect()
    if kind == "zip":
        return auto_zip(web, site, kw["other"], kw.get("region"))
    if kind == "unzip":
        return auto_unzip(web, site)
    raise ValueError(f"unknown standard foam kind {kind!r}")
