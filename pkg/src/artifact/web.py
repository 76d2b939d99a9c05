"""Closed trivalent plane graphs ("webs") and their Laurent bracket.

A web is a disjoint union of closed oriented trivalent plane graphs and
verticeless circles ("free loops"), with nesting data recording which
region of the plane each connected piece sits in.  It is stored as an
oriented combinatorial map:

* darts -- positive ints, one per edge end (half-edge);
* ``sigma`` -- permutation sending each dart to the next dart
  counterclockwise around its vertex; every cycle has length exactly 3;
* ``alpha`` -- fixed-point-free involution pairing the two darts of each
  edge;
* ``out_darts`` -- the tail darts.  Each edge has exactly one tail, and
  the three darts at a vertex are either all tails (source vertex) or all
  heads (sink vertex).  This forces the graph to be bipartite and
  bridge-free;
* free loops -- one negative id each, with a flag telling whether the
  loop runs counterclockwise in the plane;
* nesting -- each component or loop records its parent region.

Faces are the orbits of the walk ``phi(d) = sigma^-1(alpha(d))``; a face
walk keeps the region it bounds on its left.  A face orbit is keyed by
its smallest dart.  Every dart component designates one *outer* face (the
walk that bounds the component from outside); all its other faces are
bounded.  Regions are written in the normal form

* ``None`` -- the unbounded root region,
* ``("face", f)`` -- the bounded face with key ``f``,
* ``("inside", loop_id)`` -- the open disk inside a free loop,

and the parent assignment forms a forest rooted at ``None``.

The bracket of a web is the Laurent polynomial fixed by: empty web
``1``; disjoint circle ``[3]``; collapsing a two-edge (digon) face
``[2]``; a four-edge (square) face splits as the sum of its two planar
reconnections.  ``kuperberg_bracket`` evaluates it by recursion on those
local moves; ``link_bracket`` combines it over all binary resolutions of
a link diagram.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Optional

from .algebra import LaurentPoly, quantum_integer

Region = Optional[tuple[str, int]]


class MalformedWeb(Exception):
    """Raised when data does not describe a valid closed plane web."""


# --------------------------------------------------------------------------
# generic combinatorial-map helpers (also used by the bracket recursion)
# --------------------------------------------------------------------------


def _face_orbits(sigma: Mapping[int, int], alpha: Mapping[int, int]) -> dict[int, tuple[int, ...]]:
    """Orbits of ``phi(d) = sigma^-1(alpha(d))``, keyed by smallest dart.

    Each orbit tuple starts at its smallest dart and follows ``phi``.
    """
    sigma_inv = {v: k for k, v in sigma.items()}
    seen: set[int] = set()
    orbits: dict[int, tuple[int, ...]] = {}
    for start in sorted(sigma):
        if start in seen:
            continue
        walk = [start]
        seen.add(start)
        d = sigma_inv[alpha[start]]
        while d != start:
            walk.append(d)
            seen.add(d)
            d = sigma_inv[alpha[d]]
        orbits[start] = tuple(walk)
    return orbits


def _component_split(sigma: Mapping[int, int], alpha: Mapping[int, int]) -> dict[int, frozenset[int]]:
    """Connected components of the dart set under sigma and alpha,
    keyed by smallest dart."""
    seen: set[int] = set()
    comps: dict[int, frozenset[int]] = {}
    for start in sorted(sigma):
        if start in seen:
            continue
        stack = [start]
        comp: set[int] = set()
        while stack:
            d = stack.pop()
            if d in comp:
                continue
            comp.add(d)
            stack.append(sigma[d])
            stack.append(alpha[d])
        seen |= comp
        comps[min(comp)] = frozenset(comp)
    return comps


# --------------------------------------------------------------------------
# the Web class
# --------------------------------------------------------------------------


class Web:
    """A closed oriented trivalent plane graph with free loops and nesting.

    Instances validate on construction and should be treated as immutable;
    operations that change a web build a new instance.
    """

    __slots__ = (
        "sigma",
        "alpha",
        "out_darts",
        "loop_ccw",
        "parent",
        "outer_face",
        "_faces",
        "_face_of",
        "_comps",
        "_comp_of",
        "_sigma_inv",
        "_key",
    )

    def __init__(
        self,
        sigma: Mapping[int, int] = (),
        alpha: Mapping[int, int] = (),
        out_darts: Iterable[int] = (),
        loop_ccw: Mapping[int, bool] = (),
        parent: Optional[Mapping[int, Region]] = None,
        outer_face: Optional[Mapping[int, int]] = None,
        check: bool = True,
    ) -> None:
        self.sigma = dict(sigma)
        self.alpha = dict(alpha)
        self.out_darts = frozenset(out_darts)
        self.loop_ccw = dict(loop_ccw)
        self._sigma_inv = {v: k for k, v in self.sigma.items()}
        self._faces = _face_orbits(self.sigma, self.alpha) if self.sigma else {}
        self._face_of = {d: f for f, orbit in self._faces.items() for d in orbit}
        self._comps = _component_split(self.sigma, self.alpha) if self.sigma else {}
        self._comp_of = {d: c for c, comp in self._comps.items() for d in comp}
        self.outer_face = dict(outer_face) if outer_face is not None else {}
        if parent is not None:
            self.parent = dict(parent)
        else:
            # default: everything side by side in the root region
            self.parent = {c: None for c in self._comps}
            self.parent.update({l: None for l in self.loop_ccw})
        self._key: Optional[str] = None
        if check:
            self.validate()

    # -- constructors ------------------------------------------------------

    @classmethod
    def empty(cls) -> "Web":
        return cls()

    @classmethod
    def single_loop(cls, loop_id: int = -1, ccw: bool = True) -> "Web":
        return cls(loop_ccw={loop_id: ccw})

    # -- inspection --------------------------------------------------------

    @property
    def darts(self) -> tuple[int, ...]:
        return tuple(sorted(self.sigma))

    @property
    def loops(self) -> tuple[int, ...]:
        return tuple(sorted(self.loop_ccw))

    def is_empty(self) -> bool:
        return not self.sigma and not self.loop_ccw

    def faces(self) -> dict[int, tuple[int, ...]]:
        """Face orbits keyed by smallest dart (includes outer faces)."""
        return dict(self._faces)

    def face_of(self, dart: int) -> int:
        return self._face_of[dart]

    def components(self) -> dict[int, frozenset[int]]:
        return dict(self._comps)

    def component_of(self, dart: int) -> int:
        return self._comp_of[dart]

    def sigma_inv(self, dart: int) -> int:
        return self._sigma_inv[dart]

    def vertex_of(self, dart: int) -> tuple[int, int, int]:
        """The sigma cycle through ``dart``, rotated to start at its
        smallest dart."""
        a = dart
        b = self.sigma[a]
        c = self.sigma[b]
        m = min(a, b, c)
        while a != m:
            a, b, c = b, c, a
        return (a, b, c)

    def vertices(self) -> tuple[tuple[int, int, int], ...]:
        seen: set[int] = set()
        out: list[tuple[int, int, int]] = []
        for d in sorted(self.sigma):
            if d not in seen:
                v = self.vertex_of(d)
                seen.update(v)
                out.append(v)
        return tuple(out)

    def is_source_dart(self, dart: int) -> bool:
        """True when the edge of ``dart`` points away from ``dart``'s
        vertex (the dart is a tail)."""
        return dart in self.out_darts

    def edge_of(self, dart: int) -> tuple[int, int]:
        """The edge through ``dart`` as a ``(tail, head)`` pair."""
        other = self.alpha[dart]
        return (dart, other) if dart in self.out_darts else (other, dart)

    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            sorted(self.edge_of(d) for d in self.out_darts)
        )

    # -- regions -----------------------------------------------------------

    def region_of_face(self, face: int) -> Region:
        """Normal form of the region a face walk bounds: the parent region
        of the component when the face is its outer face, else the face
        itself."""
        comp = self._comp_of[face]
        if face == self.outer_face[comp]:
            return self.parent[comp]
        return ("face", face)

    def regions(self) -> tuple[Region, ...]:
        out: list[Region] = [None]
        for comp, f_out in sorted(self.outer_face.items()):
            for f in sorted(self._faces):
                if self._comp_of[f] == comp and f != f_out:
                    out.append(("face", f))
        for l in sorted(self.loop_ccw):
            out.append(("inside", l))
        return tuple(out)

    def children_of(self, region: Region) -> tuple[int, ...]:
        """Component ids and loop ids whose parent is ``region``."""
        return tuple(sorted(k for k, r in self.parent.items() if r == region))

    # -- validation --------------------------------------------------------

    def validate(self) -> None:
        sigma, alpha = self.sigma, self.alpha
        darts = set(sigma)
        if set(alpha) != darts:
            raise MalformedWeb("sigma and alpha must act on the same darts")
        for d in darts:
            if not isinstance(d, int) or d <= 0:
                raise MalformedWeb(f"darts must be positive ints, got {d!r}")
        if sorted(sigma.values()) != sorted(darts):
            raise MalformedWeb("sigma is not a permutation")
        for d in darts:
            a = alpha[d]
            if a == d or a not in darts or alpha[a] != d:
                raise MalformedWeb(f"alpha is not a fixed-point-free involution at {d}")
        # trivalent vertices
        for d in darts:
            if self.sigma[self.sigma[self.sigma[d]]] != d or self.sigma[d] == d:
                raise MalformedWeb(f"sigma cycle through {d} does not have length 3")
            if self.sigma[self.sigma[d]] == d:
                raise MalformedWeb(f"sigma cycle through {d} does not have length 3")
        # orientation: vertices all-in or all-out; each edge one tail
        if not self.out_darts <= darts:
            raise MalformedWeb("out_darts must be a subset of the darts")
        for d in darts:
            if (d in self.out_darts) != (sigma[d] in self.out_darts):
                raise MalformedWeb(
                    f"vertex of {d} mixes tail and head darts (must be a source or a sink)"
                )
            if (d in self.out_darts) == (alpha[d] in self.out_darts):
                raise MalformedWeb(f"edge of {d} needs exactly one tail dart")
            if self._comp_of[d] == self._comp_of[alpha[d]] and self.vertex_of(
                d
            ) == self.vertex_of(alpha[d]):
                raise MalformedWeb(f"edge of {d} joins a vertex to itself")
        # loops
        for l in self.loop_ccw:
            if not isinstance(l, int) or l >= 0:
                raise MalformedWeb(f"loop ids must be negative ints, got {l!r}")
        # per-component planarity: V - E + F = 2
        for c, comp in self._comps.items():
            v = sum(1 for d in comp if min(self.vertex_of(d)) == d)
            e = sum(1 for d in comp if d < alpha[d])
            f = sum(1 for key in self._faces if self._comp_of[key] == c)
            if v - e + f != 2:
                raise MalformedWeb(
                    f"component {c} has Euler characteristic {v - e + f}, not 2: "
                    "the rotation system is not planar"
                )
        # outer faces
        if set(self.outer_face) != set(self._comps):
            raise MalformedWeb("outer_face must assign exactly one face per component")
        for c, f in self.outer_face.items():
            if f not in self._faces or self._comp_of[f] != c:
                raise MalformedWeb(f"outer face {f} is not a face of component {c}")
        # nesting forest
        expected_keys = set(self._comps) | set(self.loop_ccw)
        if set(self.parent) != expected_keys:
            raise MalformedWeb(
                "parent must assign a region to every component and loop"
            )
        valid_regions = set(self.regions())
        for k, r in self.parent.items():
            if r not in valid_regions:
                raise MalformedWeb(f"parent region {r!r} of {k} does not exist")
        for k in self.parent:
            seen = {k}
            cur = self.parent[k]
            while cur is not None:
                owner = self._comp_of[cur[1]] if cur[0] == "face" else cur[1]
                if owner in seen:
                    raise MalformedWeb(f"nesting of {k} is cyclic")
                seen.add(owner)
                cur = self.parent[owner]

    # -- value semantics ---------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Web):
            return NotImplemented
        return (
            self.sigma == other.sigma
            and self.alpha == other.alpha
            and self.out_darts == other.out_darts
            and self.loop_ccw == other.loop_ccw
            and self.parent == other.parent
            and self.outer_face == other.outer_face
        )

    def __hash__(self) -> int:
        return hash(self.exact_key())

    def __repr__(self) -> str:
        nv = len(self.sigma) // 3
        return f"<Web {nv} vertices, {len(self.loop_ccw)} loops>"

    # -- serialization -----------------------------------------------------

    @staticmethod
    def _region_to_json(r: Region):
        return None if r is None else [r[0], r[1]]

    @staticmethod
    def _region_from_json(r) -> Region:
        return None if r is None else (str(r[0]), int(r[1]))

    def to_json_dict(self) -> dict:
        return {
            "rotations": [list(v) for v in self.vertices()],
            "pairings": sorted([d, self.alpha[d]] for d in self.out_darts),
            "orientations": sorted(self.out_darts),
            "loops": [
                {"id": l, "ccw": self.loop_ccw[l]} for l in sorted(self.loop_ccw)
            ],
            "nesting": {
                str(k): self._region_to_json(r)
                for k, r in sorted(self.parent.items())
            },
            "outer_faces": {str(c): f for c, f in sorted(self.outer_face.items())},
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "Web":
        sigma: dict[int, int] = {}
        for cyc in data["rotations"]:
            a, b, c = (int(x) for x in cyc)
            sigma[a], sigma[b], sigma[c] = b, c, a
        alpha: dict[int, int] = {}
        for pair in data["pairings"]:
            a, b = (int(x) for x in pair)
            alpha[a], alpha[b] = b, a
        return cls(
            sigma=sigma,
            alpha=alpha,
            out_darts={int(d) for d in data["orientations"]},
            loop_ccw={int(l["id"]): bool(l["ccw"]) for l in data["loops"]},
            parent={
                int(k): cls._region_from_json(r) for k, r in data["nesting"].items()
            },
            outer_face={int(c): int(f) for c, f in data["outer_faces"].items()},
        )

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "Web":
        return cls.from_json_dict(json.loads(text))

    def exact_key(self) -> str:
        """Deterministic serialization of the web, usable as a cache key."""
        if self._key is None:
            self._key = self.to_json()
        return self._key

    # -- relabeling --------------------------------------------------------

    def relabeled(
        self,
        dart_map: Optional[Mapping[int, int]] = None,
        loop_map: Optional[Mapping[int, int]] = None,
    ) -> "Web":
        """A copy with darts and/or loop ids renamed by the given bijections.

        Ids absent from a map are kept.  Face keys, component keys and
        nesting references are recomputed consistently.
        """
        dmap: Callable[[int], int] = lambda d: dart_map.get(d, d) if dart_map else d
        lmap: Callable[[int], int] = lambda l: loop_map.get(l, l) if loop_map else l
        new_sigma = {dmap(d): dmap(s) for d, s in self.sigma.items()}
        new_alpha = {dmap(d): dmap(a) for d, a in self.alpha.items()}
        new_out = {dmap(d) for d in self.out_darts}
        new_loop_ccw = {lmap(l): c for l, c in self.loop_ccw.items()}

        def map_face_key(f: int) -> int:
            return min(dmap(d) for d in self._faces[f])

        def map_owner(k: int) -> int:
            if k < 0:
                return lmap(k)
            return min(dmap(d) for d in self._comps[k])

        def map_region(r: Region) -> Region:
            if r is None:
                return None
            if r[0] == "face":
                return ("face", map_face_key(r[1]))
            return ("inside", lmap(r[1]))

        new_parent = {map_owner(k): map_region(r) for k, r in self.parent.items()}
        new_outer = {
            map_owner(c): map_face_key(f) for c, f in self.outer_face.items()
        }
        return Web(
            sigma=new_sigma,
            alpha=new_alpha,
            out_darts=new_out,
            loop_ccw=new_loop_ccw,
            parent=new_parent,
            outer_face=new_outer,
        )


# --------------------------------------------------------------------------
# reduction-site search (used by the graded-basis construction)
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Empty:
    """The web has no darts and no loops."""


@dataclass(frozen=True)
class FreeLoop:
    """A free loop whose interior region is empty."""

    loop_id: int


@dataclass(frozen=True)
class DigonFace:
    """A bounded two-edge face with nothing nested inside it."""

    face: int


@dataclass(frozen=True)
class SquareFace:
    """A bounded four-edge face with nothing nested inside it."""

    face: int


Reduction = Empty | FreeLoop | DigonFace | SquareFace


def find_reduction(web: Web) -> Reduction:
    """Locate a deterministic simplification site in a nonempty web.

    Preference order: the empty web; the smallest-id free loop with empty
    interior; the smallest-key bounded two-edge face with empty interior;
    then the smallest-key bounded four-edge face with empty interior.
    Every valid web admits one of these (an innermost component always
    carries a bounded face with fewer than six sides).
    """
    if web.is_empty():
        return Empty()
    loop_sites = [
        l for l in web.loops if not web.children_of(("inside", l))
    ]
    if loop_sites:
        return FreeLoop(min(loop_sites))
    digons: list[int] = []
    squares: list[int] = []
    for f, orbit in sorted(web.faces().items()):
        comp = web.component_of(f)
        if f == web.outer_face[comp]:
            continue
        if web.children_of(("face", f)):
            continue
        if len(orbit) == 2:
            digons.append(f)
        elif len(orbit) == 4:
            squares.append(f)
    if digons:
        return DigonFace(min(digons))
    if squares:
        return SquareFace(min(squares))
    raise MalformedWeb("no reduction site found; the web is not a valid closed web")


# --------------------------------------------------------------------------
# the bracket
# --------------------------------------------------------------------------

_BRACKET_MEMO: dict[tuple, LaurentPoly] = {}


def clear_bracket_cache() -> None:
    _BRACKET_MEMO.clear()


def _canonical_component_key(
    sigma: Mapping[int, int],
    alpha: Mapping[int, int],
    out: frozenset[int] | set[int],
    darts: Iterable[int],
) -> tuple:
    """Relabeling-invariant key for one connected dart component.

    For each possible start dart, darts are renamed in breadth-first
    discovery order (children visited sigma first, then alpha) and the
    structure serialized; the smallest serialization wins.
    """
    best: Optional[tuple] = None
    for start in sorted(darts):
        label = {start: 0}
        order = [start]
        i = 0
        while i < len(order):
            d = order[i]
            i += 1
            for nb in (sigma[d], alpha[d]):
                if nb not in label:
                    label[nb] = len(order)
                    order.append(nb)
        key = tuple(
            (label[sigma[d]], label[alpha[d]], d in out) for d in order
        )
        if best is None or key < best:
            best = key
    assert best is not None
    return best


def _rewire(
    sigma: dict[int, int],
    alpha: dict[int, int],
    out: set[int],
    deleted: set[int],
    wires: dict[int, int],
) -> tuple[dict[int, int], dict[int, int], set[int], int]:
    """Delete the darts in ``deleted`` and reconnect the edges that cross
    its boundary according to ``wires`` (a symmetric pairing of some
    deleted darts).

    Strands are traced through the deleted zone: entering along an edge
    whose far dart is wired, hop the wire, and continue until leaving the
    zone.  Wire-and-edge cycles wholly inside the zone become free loops;
    the number of such loops is returned.
    """
    for a, b in wires.items():
        assert a in deleted and b in deleted, "wires must pair deleted darts"
    new_sigma = {d: s for d, s in sigma.items() if d not in deleted}
    new_alpha: dict[int, int] = {}
    visited: set[int] = set()
    for y in new_sigma:
        a = alpha[y]
        if a not in deleted:
            new_alpha[y] = a
            continue
        cur = a
        while True:
            assert cur in wires, f"strand enters deleted zone at unwired dart {cur}"
            visited.add(cur)
            nxt = wires[cur]
            visited.add(nxt)
            out_dart = alpha[nxt]
            if out_dart in deleted:
                cur = out_dart
            else:
                break
        new_alpha[y] = out_dart
    new_out = {d for d in out if d not in deleted}
    for y, z in new_alpha.items():
        assert (y in new_out) != (z in new_out), (
            f"rewired edge ({y},{z}) does not have exactly one tail"
        )
    loops = 0
    remaining = set(wires) - visited
    while remaining:
        loops += 1
        start = next(iter(remaining))
        cur = start
        while True:
            remaining.discard(cur)
            nxt = wires[cur]
            remaining.discard(nxt)
            cur = alpha[nxt]
            if cur == start:
                break
            assert cur in wires, "closed chain leaves the deleted zone"
    return new_sigma, new_alpha, new_out, loops


def _vertex_darts(sigma: Mapping[int, int], d: int) -> tuple[int, int, int]:
    return (d, sigma[d], sigma[sigma[d]])


def _reduce_digon(
    sigma: dict[int, int], alpha: dict[int, int], out: set[int], orbit: tuple[int, ...]
) -> tuple[dict[int, int], dict[int, int], set[int], int]:
    """Collapse a two-edge face: delete its two vertices and splice the two
    external edges together."""
    d1, d2 = orbit
    deleted = set(_vertex_darts(sigma, d1)) | set(_vertex_darts(sigma, d2))
    x1 = sigma[sigma[d1]]
    x2 = sigma[sigma[d2]]
    wires = {x1: x2, x2: x1}
    return _rewire(sigma, alpha, out, deleted, wires)


def _reduce_square(
    sigma: dict[int, int],
    alpha: dict[int, int],
    out: set[int],
    orbit: tuple[int, ...],
    second: bool,
) -> tuple[dict[int, int], dict[int, int], set[int], int]:
    """Replace a four-edge face by one of its two planar reconnections.

    The four external strands leave the face at consecutive corners; the
    first reconnection joins them around corners (1,2) and (3,4), the
    second around (2,3) and (4,1).
    """
    d1, d2, d3, d4 = orbit
    deleted: set[int] = set()
    for d in orbit:
        deleted |= set(_vertex_darts(sigma, d))
    x = [sigma[sigma[d]] for d in orbit]
    if second:
        pairs = [(x[1], x[2]), (x[3], x[0])]
    else:
        pairs = [(x[0], x[1]), (x[2], x[3])]
    wires: dict[int, int] = {}
    for a, b in pairs:
        wires[a] = b
        wires[b] = a
    return _rewire(sigma, alpha, out, deleted, wires)


def _bracket_of_state(
    sigma: dict[int, int], alpha: dict[int, int], out: set[int], nloops: int
) -> LaurentPoly:
    total = quantum_integer(3) ** nloops
    if sigma:
        for darts in _component_split(sigma, alpha).values():
            sub_sigma = {d: sigma[d] for d in darts}
            sub_alpha = {d: alpha[d] for d in darts}
            sub_out = {d for d in darts if d in out}
            total = total * _bracket_component(sub_sigma, sub_alpha, sub_out)
    return total


def _bracket_component(
    sigma: dict[int, int], alpha: dict[int, int], out: set[int]
) -> LaurentPoly:
    """Bracket of one connected dart component, by face reduction.

    Any two-edge or four-edge face may be used (on the sphere the choice
    does not matter); the smallest face key is taken for determinism.
    """
    key = _canonical_component_key(sigma, alpha, out, sigma.keys())
    cached = _BRACKET_MEMO.get(key)
    if cached is not None:
        return cached
    faces = _face_orbits(sigma, alpha)
    digon = None
    square = None
    for f in sorted(faces):
        n = len(faces[f])
        if n == 2 and digon is None:
            digon = faces[f]
            break
        if n == 4 and square is None:
            square = faces[f]
    if digon is not None:
        s, a, o, nl = _reduce_digon(sigma, alpha, out, digon)
        result = quantum_integer(2) * _bracket_of_state(s, a, o, nl)
    elif square is not None:
        s1, a1, o1, nl1 = _reduce_square(sigma, alpha, out, square, second=False)
        s2, a2, o2, nl2 = _reduce_square(sigma, alpha, out, square, second=True)
        result = _bracket_of_state(s1, a1, o1, nl1) + _bracket_of_state(
            s2, a2, o2, nl2
        )
    else:
        raise MalformedWeb(
            "component admits no two- or four-edge face; not a valid closed web"
        )
    _BRACKET_MEMO[key] = result
    return result


def kuperberg_bracket(web: Web) -> LaurentPoly:
    """The bracket of a closed web: a Laurent polynomial in ``q`` with
    nonnegative integer coefficients."""
    return _bracket_of_state(
        dict(web.sigma), dict(web.alpha), set(web.out_darts), len(web.loop_ccw)
    )


# --------------------------------------------------------------------------
# the link invariant as a resolution sum
# --------------------------------------------------------------------------


def crossing_weight(sign: int, bit: int) -> LaurentPoly:
    """Laurent weight of resolving one crossing of the given sign with the
    given binary choice (0 = parallel smoothing for positive crossings).

    Positive crossing: ``q^-2`` for 0, ``-q^-3`` for 1.
    Negative crossing: ``-q^3`` for 0, ``q^2`` for 1.
    """
    if sign == 1:
        return LaurentPoly.monomial(-2) if bit == 0 else LaurentPoly.monomial(-3, -1)
    if sign == -1:
        return LaurentPoly.monomial(3, -1) if bit == 0 else LaurentPoly.monomial(2)
    raise ValueError(f"crossing sign must be +1 or -1, got {sign}")


def link_bracket(diagram) -> LaurentPoly:
    """The quantum invariant of an oriented link diagram.

    Sums, over all binary resolutions ``J`` of the crossings, the product
    of per-crossing weights times the bracket of the flattened web
    ``diagram.flatten(J)``.  The result is invariant under the three
    Reidemeister moves.
    """
    signs = diagram.crossing_signs()
    total = LaurentPoly.zero()
    for bits in itertools.product((0, 1), repeat=len(signs)):
        weight = LaurentPoly.one()
        for s, b in zip(signs, bits):
            weight = weight * crossing_weight(s, b)
        total = total + weight * kuperberg_bracket(diagram.flatten(bits))
    return total
