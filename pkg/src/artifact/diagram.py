"""Oriented link diagrams: PD codes, crossing signs, flattenings.

A diagram is a list of crossings, each recorded as a 4-tuple of arc
labels listed counterclockwise starting from the incoming under-strand.
Arc orientations are recovered by constraint propagation: every arc
needs exactly one inflow end and one outflow end.  Components that never
pass under (so their direction is not forced) take an optional explicit
hint, defaulting to "over-strand enters at the second tuple position"
for the lowest-numbered crossing involved.  A crossing is positive when
a quarter turn counterclockwise carries the under-strand's direction to
the over-strand's direction, negative otherwise; equivalently, the
over-strand of a positive crossing enters at the second tuple position
and that of a negative crossing at the fourth.

Flattening replaces every crossing with one of its two local pictures:

* the oriented smoothing -- two disjoint arcs following the strand
  orientations; or
* the bridge picture -- two trivalent vertices (a sink collecting the
  two inflow ports, a source emitting the two outflow ports) joined by
  a bridge edge oriented source-vertex to sink-vertex.

A positive crossing smooths under choice 0 and bridges under choice 1;
a negative crossing the other way around.  The resulting closed web has
deterministic labels: crossing ``c`` owns port darts ``4c+1..4c+4`` (one
per tuple slot) and bridge darts ``4n+2c+1`` (sink end) and ``4n+2c+2``
(source end); a strand between two bridged crossings keeps exactly its
two end-port darts; a strand that closes up becomes a free loop whose id
is minus the smallest port dart it passes.  Region nesting and loop
winding flags are derived combinatorially from the crossing quadrants,
so equal inputs always produce identical webs.

``resolution_edge_move`` returns, for any choice vector and any crossing
sitting at choice 0, the single cobordism move (a ``Zip`` for positive
crossings, an ``Unzip`` for negative ones) that carries the choice-0
flattening to the choice-1 flattening with exactly matching labels.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .foam import FoamMovie, MalformedMovie, Move, Unzip, Zip, _DSU, apply_move
from .web import Region, Web, _component_split, _face_orbits


class MalformedDiagram(Exception):
    """Raised when PD data cannot describe an oriented planar diagram."""


# --------------------------------------------------------------------------
# crossing-local geometry
#
# Tuple slots sit at the four compass points of a small disk around the
# crossing: slot 0 = incoming under-strand (south), and slots 1, 2, 3
# continue counterclockwise (east, north, west).  The under-strand runs
# south to north.  For a positive crossing the over-strand runs east to
# west, for a negative one west to east.
# --------------------------------------------------------------------------

#: Slots where the strands flow into the disk, per sign.
_IN_SLOTS = {1: (0, 1), -1: (0, 3)}

#: Slots where the strands flow out of the disk, per sign.
_OUT_SLOTS = {1: (2, 3), -1: (1, 2)}

#: Oriented smoothing inside the disk: entry slot -> exit slot.  The two
#: arcs of a positive smoothing hug the southwest and northeast corners;
#: those of a negative smoothing hug the southeast and northwest corners.
_SMOOTH_EXIT = {1: {0: 3, 1: 2}, -1: {0: 1, 3: 2}}

#: Quadrant of the disk between slot k and slot k+1 (counterclockwise).
#: Quadrant indices double as region atoms: 4*c + k.
_QUADRANTS = 4


def _port(c: int, s: int) -> int:
    """Dart label of crossing ``c``'s port at slot ``s``."""

    return 4 * c + s + 1


def _bridge_darts(n: int, c: int) -> tuple[int, int]:
    """(sink-end, source-end) dart labels of crossing ``c``'s bridge."""

    return 4 * n + 2 * c + 1, 4 * n + 2 * c + 2


def _bridge_tables(sign: int, a: tuple[int, int, int, int], m1: int, m2: int):
    """Vertex cycles, outflow darts and dart->quadrant table of the
    bridge picture of a crossing with the given sign.

    ``a`` lists the four port darts by slot.  Counterclockwise vertex
    cycles are fixed by the disk geometry: the sink vertex sits between
    the two inflow ports and also carries the bridge's sink end; the
    source vertex likewise.
    """

    a0, a1, a2, a3 = a
    if sign == 1:
        sink = (a0, a1, m1)
        source = (a2, a3, m2)
        out = (a2, a3, m2)
        quadrant = {a0: 0, a1: 1, m1: 3, a2: 2, a3: 3, m2: 1}
    else:
        sink = (m1, a3, a0)
        source = (a1, a2, m2)
        out = (a1, a2, m2)
        quadrant = {a0: 0, a1: 1, a2: 2, a3: 3, m1: 2, m2: 0}
    return sink, source, out, quadrant


class _ParityUnionFind:
    """Union-find over binary variables tracking relative parity."""

    def __init__(self, size: int) -> None:
        self._parent = list(range(size))
        self._parity = [0] * size

    def find(self, x: int) -> tuple[int, int]:
        parity = 0
        while self._parent[x] != x:
            parity ^= self._parity[x]
            x = self._parent[x]
        return x, parity

    def union(self, a: int, b: int, relative_parity: int) -> bool:
        """Impose ``value(a) xor value(b) == relative_parity``; returns
        whether that is consistent with previous constraints."""

        ra, pa = self.find(a)
        rb, pb = self.find(b)
        if ra == rb:
            return (pa ^ pb) == relative_parity
        self._parent[rb] = ra
        self._parity[rb] = pa ^ pb ^ relative_parity
        return True


# --------------------------------------------------------------------------
# the diagram type
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class LinkDiagram:
    """An oriented link diagram: validated crossing tuples with their
    signs, plus a number of crossing-free unknotted circles drawn side
    by side next to the crossing part.

    Build instances through :func:`parse_pd`, :meth:`from_crossings` or
    :func:`diagram_from_json`; the constructor itself does not validate.
    """

    crossings: tuple[tuple[int, int, int, int], ...]
    signs: tuple[int, ...]
    free_loops: int = 0

    # -- construction ------------------------------------------------------

    @classmethod
    def from_crossings(
        cls,
        crossings: Sequence[Sequence[int]],
        over_in: Optional[Sequence[Optional[int]]] = None,
        free_loops: int = 0,
    ) -> "LinkDiagram":
        """Validate crossing tuples and derive signs.

        ``over_in`` optionally pins, per crossing, the slot (1 or 3) at
        which the over-strand enters; ``None`` entries leave the choice
        to propagation.  ``free_loops`` adds that many crossing-free
        circles next to the diagram.
        """

        xs = _check_tuples(crossings)
        if not isinstance(free_loops, int) or free_loops < 0:
            raise MalformedDiagram("free_loops must be a non-negative integer")
        occ = _occurrences(xs)
        signs = _derive_signs(xs, occ, over_in)
        _check_planarity(xs, occ)
        return cls(crossings=xs, signs=signs, free_loops=free_loops)

    # -- basic data --------------------------------------------------------

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def crossing_signs(self) -> list[int]:
        """Signs of the crossings, +1 or -1, in crossing order."""

        return list(self.signs)

    @property
    def positive_count(self) -> int:
        return sum(1 for s in self.signs if s == 1)

    @property
    def negative_count(self) -> int:
        return sum(1 for s in self.signs if s == -1)

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    def arcs(self) -> tuple[int, ...]:
        """Sorted arc labels."""

        return tuple(sorted({lab for x in self.crossings for lab in x}))

    def component_count(self) -> int:
        """Number of link components, counting crossing-free circles."""

        occ = _occurrences(self.crossings)
        seen: set[tuple[int, int]] = set()
        count = 0
        for c in range(self.n_crossings):
            for s in _IN_SLOTS[self.signs[c]]:
                if (c, s) in seen:
                    continue
                count += 1
                cur = (c, s)
                while cur not in seen:
                    seen.add(cur)
                    cc, ss = cur
                    out_slot = _strand_exit(self.signs[cc], ss)
                    cur = _arc_other(self.crossings, occ, cc, out_slot)
        return count + self.free_loops

    def mirror(self) -> "LinkDiagram":
        """The diagram with every crossing's over- and under-strand
        exchanged; all signs flip."""

        flipped = []
        for x, sign in zip(self.crossings, self.signs):
            a, b, c, d = x
            flipped.append((b, c, d, a) if sign == 1 else ((d, a, b, c)))
        return LinkDiagram.from_crossings(flipped, free_loops=self.free_loops)

    # -- flattenings -------------------------------------------------------

    def flatten(self, resolution) -> Web:
        """The closed web obtained by resolving every crossing according
        to ``resolution`` (a :class:`Flattening` or a 0/1 vector)."""

        bits = self._bits_of(resolution)
        return _flatten_state(self, bits).web

    def _bits_of(self, resolution) -> tuple[int, ...]:
        if isinstance(resolution, Flattening):
            return resolution.bits(self.n_crossings)
        bits = tuple(resolution)
        if len(bits) != self.n_crossings or any(b not in (0, 1) for b in bits):
            raise MalformedDiagram(
                f"resolution must assign 0 or 1 to each of the "
                f"{self.n_crossings} crossings, got {bits!r}"
            )
        return bits

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        data: dict = {"crossings": [list(x) for x in self.crossings]}
        over = []
        for x, sign in zip(self.crossings, self.signs):
            over.append(1 if sign == 1 else 3)
        if over:
            data["over_in"] = over
        if self.free_loops:
            data["free_loops"] = self.free_loops
        return data


# --------------------------------------------------------------------------
# parsing and validation
# --------------------------------------------------------------------------

_PD_TUPLE = re.compile(
    r"[Xx]\s*[(\[]\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*[)\]]"
)
_PD_FILLER = re.compile(r"^[\s,;]*$")


def parse_pd(text: str) -> LinkDiagram:
    """Parse PD-code text such as ``"X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"``.

    Tuples may use parentheses or brackets and any whitespace/comma
    separation.  An empty string gives the empty diagram.
    """

    if not isinstance(text, str):
        raise MalformedDiagram("PD code must be a string")
    crossings = [tuple(int(g) for g in m.groups()) for m in _PD_TUPLE.finditer(text)]
    leftover = _PD_TUPLE.sub("", text)
    if not _PD_FILLER.match(leftover):
        raise MalformedDiagram(
            f"unrecognized PD text {leftover.strip().split()[0]!r}: crossings "
            f"must be 4-tuples like X(1,4,2,5)"
        )
    return LinkDiagram.from_crossings(crossings)


def diagram_from_json(data) -> LinkDiagram:
    """Build a diagram from its JSON form: either a bare list of
    crossing 4-tuples, or an object with keys ``crossings`` and the
    optional ``over_in`` (entries 1, 3 or null) and ``free_loops``."""

    if isinstance(data, dict):
        unknown = set(data) - {"crossings", "over_in", "free_loops"}
        if unknown:
            raise MalformedDiagram(f"unknown diagram keys {sorted(unknown)!r}")
        crossings = data.get("crossings", [])
        over_in = data.get("over_in")
        free_loops = data.get("free_loops", 0)
    elif isinstance(data, (list, tuple)):
        crossings, over_in, free_loops = data, None, 0
    else:
        raise MalformedDiagram(
            "diagram JSON must be a list of 4-tuples or an object"
        )
    return LinkDiagram.from_crossings(crossings, over_in=over_in, free_loops=free_loops)


def diagram_to_json(d: LinkDiagram) -> dict:
    return d.to_json_dict()


def _check_tuples(crossings) -> tuple[tuple[int, int, int, int], ...]:
    xs = []
    for x in crossings:
        t = tuple(x)
        if len(t) != 4:
            raise MalformedDiagram(
                f"crossing {t!r} must have exactly 4 arc labels"
            )
        for lab in t:
            if not isinstance(lab, int) or isinstance(lab, bool) or lab <= 0:
                raise MalformedDiagram(
                    f"arc labels must be positive integers, got {lab!r}"
                )
        xs.append(t)
    return tuple(xs)


def _occurrences(xs) -> dict[int, tuple[tuple[int, int], tuple[int, int]]]:
    """Map each arc label to its two (crossing, slot) occurrences."""

    where: dict[int, list[tuple[int, int]]] = {}
    for c, x in enumerate(xs):
        for s, lab in enumerate(x):
            where.setdefault(lab, []).append((c, s))
    bad = {lab: len(o) for lab, o in where.items() if len(o) != 2}
    if bad:
        lab = min(bad)
        raise MalformedDiagram(
            f"arc label {lab} occurs {bad[lab]} time(s); every label must "
            f"occur exactly twice"
        )
    return {lab: (o[0], o[1]) for lab, o in where.items()}


def _arc_other(xs, occ, c: int, s: int) -> tuple[int, int]:
    """The other occurrence of the arc present at slot ``s`` of ``c``."""

    o1, o2 = occ[xs[c][s]]
    return o2 if o1 == (c, s) else o1


def _strand_exit(sign: int, in_slot: int) -> int:
    """Where the strand entering a crossing at ``in_slot`` leaves it."""

    if in_slot == 0:
        return 2
    return {1: {1: 3}, -1: {3: 1}}[sign][in_slot]


def _derive_signs(xs, occ, over_in) -> tuple[int, ...]:
    """Derive crossing signs by orienting every arc consistently.

    Encodes, per crossing ``c``, the binary unknown ``x_c`` ("the
    over-strand enters at slot 3") and solves the parity constraints
    coming from each arc having one inflow and one outflow end.  Slot 0
    is always inflow and slot 2 always outflow; slot 1 is inflow exactly
    when ``x_c`` is 0 and slot 3 exactly when ``x_c`` is 1.
    """

    n = len(xs)
    if over_in is not None:
        over_in = list(over_in)
        if len(over_in) != n:
            raise MalformedDiagram(
                f"over_in must list one entry per crossing ({n}), got "
                f"{len(over_in)}"
            )
        for v in over_in:
            if v not in (None, 1, 3):
                raise MalformedDiagram(
                    f"over_in entries must be 1, 3 or null, got {v!r}"
                )
    anchor = n
    uf = _ParityUnionFind(n + 1)

    def inflow_term(c: int, s: int):
        """The inflow indicator of slot ``s`` at ``c``: either a constant
        or ``x_c`` xor a constant."""

        if s == 0:
            return ("const", 1)
        if s == 2:
            return ("const", 0)
        return ("var", c, 1 if s == 1 else 0)

    for lab in sorted(occ):
        (c1, s1), (c2, s2) = occ[lab]
        t1, t2 = inflow_term(c1, s1), inflow_term(c2, s2)
        if t1[0] == "const" and t2[0] == "const":
            if t1[1] ^ t2[1] != 1:
                raise MalformedDiagram(
                    f"inconsistent orientation: arc {lab} has two "
                    f"{'inflow' if t1[1] else 'outflow'} ends"
                )
        elif t1[0] == "const" or t2[0] == "const":
            const, var = (t1, t2) if t1[0] == "const" else (t2, t1)
            # const ^ (x_c ^ p) == 1
            value = 1 ^ const[1] ^ var[2]
            if not uf.union(var[1], anchor, value):
                raise MalformedDiagram(
                    f"inconsistent orientation: arc {lab} over-constrains "
                    f"crossing {var[1]}"
                )
        else:
            parity = 1 ^ t1[2] ^ t2[2]
            if not uf.union(t1[1], t2[1], parity):
                raise MalformedDiagram(
                    f"inconsistent orientation: arc {lab} closes an "
                    f"inconsistent cycle"
                )
    if over_in is not None:
        for c, v in enumerate(over_in):
            if v is None:
                continue
            if not uf.union(c, anchor, 0 if v == 1 else 1):
                raise MalformedDiagram(
                    f"orientation hint for crossing {c} conflicts with the "
                    f"arcs"
                )
    # Components that never pass under leave their class unanchored; give
    # the lowest-numbered crossing of each such class over-in slot 1.
    root_anchor, _ = uf.find(anchor)
    for c in range(n):
        root, _ = uf.find(c)
        if root != root_anchor:
            uf.union(c, anchor, 0)
            root_anchor, _ = uf.find(anchor)
    signs = []
    for c in range(n):
        _, parity = uf.find(c)
        _, base = uf.find(anchor)
        signs.append(-1 if parity ^ base else 1)
    return tuple(signs)


def _check_planarity(xs, occ) -> None:
    """Verify the PD data embeds in the plane: each connected piece of
    the 4-valent graph must satisfy V - E + F = 2 for the face count
    determined by the counterclockwise slot order."""

    n = len(xs)
    if n == 0:
        return
    piece = _DSU()
    for _ in range(n):
        piece.make()
    for lab in occ:
        (c1, _), (c2, _) = occ[lab]
        piece.union(c1, c2)
    face_seen: set[tuple[int, int]] = set()
    faces_of_piece: dict[int, int] = {}
    for c in range(n):
        for s in range(4):
            if (c, s) in face_seen:
                continue
            cur = (c, s)
            while cur not in face_seen:
                face_seen.add(cur)
                c2, s2 = _arc_other(xs, occ, *cur)
                cur = (c2, (s2 - 1) % 4)
            root = piece.find(c)
            faces_of_piece[root] = faces_of_piece.get(root, 0) + 1
    sizes: dict[int, int] = {}
    for c in range(n):
        root = piece.find(c)
        sizes[root] = sizes.get(root, 0) + 1
    for root, v in sizes.items():
        f = faces_of_piece[root]
        if v - 2 * v + f != 2:
            raise MalformedDiagram(
                f"non-planar PD data: a connected piece with {v} crossings "
                f"closes into {f} faces instead of {v + 2}"
            )


# --------------------------------------------------------------------------
# flattenings
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Flattening:
    """A resolution choice: the set of crossings resolved at choice 1."""

    crossings: frozenset[int]

    @classmethod
    def of(cls, items) -> "Flattening":
        return cls(frozenset(items))

    @classmethod
    def from_bits(cls, bits) -> "Flattening":
        return cls(frozenset(i for i, b in enumerate(bits) if b))

    def bits(self, n: int) -> tuple[int, ...]:
        if self.crossings and not all(
            isinstance(c, int) and 0 <= c < n for c in self.crossings
        ):
            raise MalformedDiagram(
                f"flattening names crossings outside 0..{n - 1}: "
                f"{sorted(self.crossings)!r}"
            )
        return tuple(1 if i in self.crossings else 0 for i in range(n))


def crossing_signs(d: LinkDiagram) -> list[int]:
    return d.crossing_signs()


def flatten(d: LinkDiagram, resolution) -> Web:
    return d.flatten(resolution)


@dataclass(frozen=True)
class _Passage:
    """One transit of a strand through a smoothed crossing."""

    kind: str  # "edge" or "loop"
    carrier: tuple  # ("edge", tail, head) or ("loop", id)
    order: int  # position along the carrier's traversal


class _FlatState:
    """A flattened web together with the transit records and region
    atoms needed to build resolution-edge moves."""

    __slots__ = ("web", "passages", "_atom_dsu", "_region_of_class")

    def __init__(self, web, passages, atom_dsu, region_of_class) -> None:
        self.web = web
        self.passages = passages
        self._atom_dsu = atom_dsu
        self._region_of_class = region_of_class

    def region_of_atom(self, c: int, k: int) -> Region:
        """The web region containing the quadrant ``k`` of crossing ``c``."""

        return self._region_of_class[self._atom_dsu.find(4 * c + k)]


@lru_cache(maxsize=None)
def _flatten_state(d: LinkDiagram, bits: tuple[int, ...]) -> _FlatState:
    xs = d.crossings
    n = len(xs)
    occ = _occurrences(xs)
    bridged = [c for c in range(n) if (bits[c] == 1) == (d.signs[c] == 1)]
    smoothed = [c for c in range(n) if c not in set(bridged)]
    smoothed_set = set(smoothed)

    # ---- strands ---------------------------------------------------------
    passages: dict[int, dict[int, _Passage]] = {c: {} for c in smoothed}
    edge_routes: list[tuple[int, int, list[tuple[int, int]]]] = []
    loop_routes: list[tuple[int, list[tuple[int, int]]]] = []
    entered: set[tuple[int, int]] = set()

    def _trace_to_vertex(c: int, s: int):
        """Follow the strand leaving port (c, s) of a bridged crossing
        until it reaches a bridged crossing's inflow port; records the
        smoothed transits on the way."""

        route: list[tuple[int, int]] = []
        c2, s2 = _arc_other(xs, occ, c, s)
        while c2 in smoothed_set:
            assert s2 in _IN_SLOTS[d.signs[c2]], (c2, s2)
            entered.add((c2, s2))
            route.append((c2, s2))
            s3 = _SMOOTH_EXIT[d.signs[c2]][s2]
            c2, s2 = _arc_other(xs, occ, c2, s3)
        assert s2 in _IN_SLOTS[d.signs[c2]], (c2, s2)
        return _port(c2, s2), route

    for c in bridged:
        for s in _OUT_SLOTS[d.signs[c]]:
            head, route = _trace_to_vertex(c, s)
            edge_routes.append((_port(c, s), head, route))
    for c in smoothed:
        for s in _IN_SLOTS[d.signs[c]]:
            if (c, s) in entered:
                continue
            route = []
            ports: list[int] = []
            cur = (c, s)
            while cur not in entered:
                entered.add(cur)
                route.append(cur)
                cc, ss = cur
                exit_slot = _SMOOTH_EXIT[d.signs[cc]][ss]
                ports.extend([_port(cc, ss), _port(cc, exit_slot)])
                cur = _arc_other(xs, occ, cc, exit_slot)
                assert cur[0] in smoothed_set
            assert cur == (c, s)
            loop_routes.append((-min(ports), route))
    for (tail, head, route) in edge_routes:
        for i, (cc, ss) in enumerate(route):
            passages[cc][ss] = _Passage("edge", ("edge", tail, head), i)
    for (lid, route) in loop_routes:
        for i, (cc, ss) in enumerate(route):
            passages[cc][ss] = _Passage("loop", ("loop", lid), i)

    # ---- permutations ----------------------------------------------------
    sigma: dict[int, int] = {}
    alpha: dict[int, int] = {}
    out_darts: set[int] = set()
    dart_quadrant: dict[int, int] = {}
    for c in bridged:
        ports = tuple(_port(c, s) for s in range(4))
        m1, m2 = _bridge_darts(n, c)
        sink, source, out, quadrant = _bridge_tables(d.signs[c], ports, m1, m2)
        for cyc in (sink, source):
            for i, dart in enumerate(cyc):
                sigma[dart] = cyc[(i + 1) % 3]
        alpha[m1], alpha[m2] = m2, m1
        out_darts.update(out)
        for dart, k in quadrant.items():
            dart_quadrant[dart] = 4 * c + k
    for (tail, head, _route) in edge_routes:
        alpha[tail], alpha[head] = head, tail

    # ---- region atoms ----------------------------------------------------
    atoms = _DSU()
    for _ in range(4 * n):
        atoms.make()
    for lab in occ:
        (c1, s1), (c2, s2) = occ[lab]
        atoms.union(4 * c1 + s1, 4 * c2 + (s2 - 1) % 4)
        atoms.union(4 * c1 + (s1 - 1) % 4, 4 * c2 + s2)
    for c in smoothed:
        if d.signs[c] == 1:
            atoms.union(4 * c + 0, 4 * c + 2)
        else:
            atoms.union(4 * c + 1, 4 * c + 3)

    faces = _face_orbits(sigma, alpha) if sigma else {}
    comps = _component_split(sigma, alpha) if sigma else {}
    comp_of_dart = {dart: comp for comp, ds in comps.items() for dart in ds}
    face_class: dict[int, int] = {}
    comp_faces: dict[int, list[int]] = {comp: [] for comp in comps}
    class_comp_face: dict[tuple[int, int], int] = {}
    for f, orbit in faces.items():
        classes = {atoms.find(dart_quadrant[dart]) for dart in orbit}
        assert len(classes) == 1, f"face {f} spans region classes {classes}"
        g = classes.pop()
        face_class[f] = g
        comp = comp_of_dart[f]
        comp_faces[comp].append(f)
        assert (g, comp) not in class_comp_face
        class_comp_face[(g, comp)] = f
    loop_sides: dict[int, tuple[int, int]] = {}
    for lid, route in loop_routes:
        lefts = {atoms.find(4 * cc + (ss - 1) % 4) for (cc, ss) in route}
        rights = {atoms.find(4 * cc + ss) for (cc, ss) in route}
        assert len(lefts) == 1 and len(rights) == 1, (lid, lefts, rights)
        left, right = lefts.pop(), rights.pop()
        assert left != right, f"loop {lid} fails to separate its sides"
        loop_sides[lid] = (left, right)

    # ---- nesting ---------------------------------------------------------
    class_items: dict[int, list[tuple[str, int]]] = {}
    for f, g in face_class.items():
        comp = comp_of_dart[f]
        item = ("comp", comp)
        class_items.setdefault(g, [])
        if item not in class_items[g]:
            class_items[g].append(item)
    for lid, (left, right) in loop_sides.items():
        for g in (left, right):
            class_items.setdefault(g, []).append(("loop", lid))

    pieces = _DSU()
    for _ in range(n):
        pieces.make()
    for lab in occ:
        (c1, _), (c2, _) = occ[lab]
        pieces.union(c1, c2)
    piece_min: dict[int, int] = {}
    for c in range(n):
        root = pieces.find(c)
        piece_min.setdefault(root, c)

    parent: dict[int, Region] = {}
    outer_face: dict[int, int] = {}
    loop_ccw: dict[int, bool] = {}
    designator: dict[int, Region] = {}
    placed: set[tuple[str, int]] = set()
    for root in sorted(piece_min.values()):
        start = atoms.find(4 * root + 0)
        if start in designator:
            continue
        designator[start] = None
        queue = deque([start])
        while queue:
            g = queue.popleft()
            region = designator[g]
            for item in sorted(class_items.get(g, [])):
                if item in placed:
                    continue
                placed.add(item)
                kind, ident = item
                parent[ident] = region
                if kind == "comp":
                    outer_face[ident] = class_comp_face[(g, ident)]
                    for f in comp_faces[ident]:
                        cf = face_class[f]
                        if cf == g:
                            continue
                        inner_region: Region = ("face", f)
                        assert cf not in designator
                        designator[cf] = inner_region
                        queue.append(cf)
                else:
                    left, right = loop_sides[ident]
                    assert (left == g) != (right == g), (ident, g)
                    inner = right if left == g else left
                    loop_ccw[ident] = inner == left
                    assert inner not in designator
                    designator[inner] = ("inside", ident)
                    queue.append(inner)
    assert len(placed) == len(comps) + len(loop_routes)
    for j in range(d.free_loops):
        lid = -(6 * n + j + 1)
        loop_ccw[lid] = True
        parent[lid] = None

    web = Web(sigma, alpha, frozenset(out_darts), loop_ccw, parent, outer_face)
    return _FlatState(web, passages, atoms, designator)


# --------------------------------------------------------------------------
# resolution-edge moves
# --------------------------------------------------------------------------


def resolution_edge_move(d: LinkDiagram, bits, crossing: int) -> Move:
    """The single move carrying ``flatten(d, bits)`` to the flattening
    with ``crossing`` switched from choice 0 to choice 1.

    Positive crossings bridge under the switch: the move is a ``Zip``
    whose new vertices and bridge reuse exactly the port and bridge dart
    labels of the target flattening.  Negative crossings smooth under
    the switch: the move is an ``Unzip`` of their bridge.  The result is
    verified to reproduce the target flattening label-for-label.
    """

    bits = d._bits_of(bits)
    n = d.n_crossings
    if not 0 <= crossing < n:
        raise MalformedDiagram(f"no crossing {crossing} in a {n}-crossing diagram")
    if bits[crossing] != 0:
        raise MalformedDiagram(
            f"crossing {crossing} already sits at choice 1 in {bits!r}"
        )
    target = tuple(1 if i == crossing else b for i, b in enumerate(bits))
    state = _flatten_state(d, bits)
    state2 = _flatten_state(d, target)
    sign = d.signs[crossing]
    ports = tuple(_port(crossing, s) for s in range(4))
    m1, m2 = _bridge_darts(n, crossing)

    if sign == 1:
        move = _positive_edge_zip(d, crossing, state, state2, ports, m1, m2)
    else:
        move = _negative_edge_unzip(crossing, state, state2, m1)

    applied, _foam = apply_move(state.web, move)
    if applied != state2.web:
        raise MalformedMovie(
            f"internal: resolution move at crossing {crossing} of {bits!r} "
            f"failed to reproduce the target flattening"
        )
    return move


def _site_of(passage: _Passage, end: str) -> int:
    """The move site of a transit: the carrying edge's tail or head
    dart, or the loop id."""

    if passage.kind == "loop":
        return passage.carrier[1]
    _, tail, head = passage.carrier
    return tail if end == "tail" else head


def _positive_edge_zip(d, crossing, state, state2, ports, m1, m2) -> Zip:
    a0, a1, a2, a3 = ports
    over = state.passages[crossing][1]
    under = state.passages[crossing][0]
    site_plus = _site_of(over, "tail")
    site_minus = _site_of(under, "head")
    middle = None
    if site_plus == site_minus:
        raise MalformedMovie(
            f"crossing {crossing}: one free loop makes both transits; "
            f"this flattening edge is not a single zip"
        )
    if (
        over.kind == "edge"
        and under.kind == "edge"
        and over.carrier == under.carrier
    ):
        middle = "aligned_first" if over.order < under.order else "anti_first"
    region = state.region_of_atom(crossing, 0)

    children: frozenset[int] = frozenset()
    ceiling: Optional[str] = None
    webJ, web2 = state.web, state2.web
    if (
        site_plus > 0
        and site_minus > 0
        and webJ.component_of(site_plus) == webJ.component_of(site_minus)
        and webJ.face_of(site_plus) == webJ.face_of(site_minus)
    ):
        # The region pinches into a pocket at the new sink and one at the
        # new source; route the region's other occupants to their side.
        sink_region = state2.region_of_atom(crossing, 0)
        consumed = {webJ.component_of(s) for s in (site_plus, site_minus)}
        children = frozenset(
            k
            for k in webJ.children_of(region)
            if k not in consumed and web2.parent[k] == sink_region
        )
        comp = webJ.component_of(site_plus)
        if webJ.face_of(site_plus) == webJ.outer_face[comp]:
            comp2 = web2.component_of(m1)
            outer2 = web2.outer_face[comp2]
            if outer2 == web2.face_of(a0):
                ceiling = "sink"
            elif outer2 == web2.face_of(a2):
                ceiling = "source"
            else:
                raise MalformedMovie(
                    f"crossing {crossing}: cannot infer which pinched pocket "
                    f"keeps the outer walk"
                )
    return Zip(
        site_a=site_plus,
        site_b=site_minus,
        region=region,
        labels=(m1, m2, a1, a2, a0, a3),
        middle=middle,
        children_to_sink=children,
        ceiling_side=ceiling,
    )


def _negative_edge_unzip(crossing, state, state2, m1) -> Unzip:
    a0, a1, a2, a3 = (_port(crossing, s) for s in range(4))
    web = state.web
    lid_aligned = lid_anti = None
    if web.alpha[a0] == a1:
        p = state2.passages[crossing][0]
        assert p.kind == "loop"
        lid_aligned = p.carrier[1]
    if web.alpha[a3] == a2:
        p = state2.passages[crossing][3]
        assert p.kind == "loop"
        lid_anti = p.carrier[1]
    return Unzip(seam=m1, loop_id_aligned=lid_aligned, loop_id_anti=lid_anti)


def resolution_edge_movie(d: LinkDiagram, bits, crossing: int) -> FoamMovie:
    """The one-move cobordism presentation of :func:`resolution_edge_move`,
    starting from ``flatten(d, bits)``."""

    bits_t = d._bits_of(bits)
    move = resolution_edge_move(d, bits_t, crossing)
    return FoamMovie(_flatten_state(d, bits_t).web, (move,))


def clear_flatten_cache() -> None:
    _flatten_state.cache_clear()
