"""The signed resolution cube of a link diagram and its integer homology.

Every choice vector over the crossings names a flattening web; its state
space, with quantum degrees shifted by ``3*p_minus - 2*p_plus - |J|``
(``|J|`` = number of choice-1 crossings), sits at homological degree
``|J| - p_minus``.  Switching one crossing from choice 0 to choice 1
induces the matrix of the corresponding zip/unzip cobordism; multiplying
the edge from ``J`` by ``(-1)**#{a in J : a < b}`` (``b`` the switched
crossing, crossings totally ordered by index) makes every square face of
the cube anticommute, so the column sums form a differential with
``d*d = 0`` that preserves the shifted quantum degree.

Homology is computed exactly over the integers: the complex is split by
quantum degree, and each differential's Smith normal form yields free
ranks and torsion orders.  The graded Euler characteristic of the result
must reproduce the diagram's bracket polynomial; tables of bigraded
groups are invariant under the Reidemeister moves, which
``check_invariance`` verifies pairwise on diagrams.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import LaurentPoly
from .diagram import LinkDiagram, resolution_edge_movie
from .web import link_bracket
from .webhom import (
    IntMatrix,
    induced_matrix,
    mat_mul,
    matrix_rows,
    state_space,
)


class ComplexError(Exception):
    """Raised when assembled cube data violates a structural invariant."""


# --------------------------------------------------------------------------
# integer Smith normal form
# --------------------------------------------------------------------------


def smith_diagonal(mat: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal of the Smith normal form of an integer matrix.

    Entries are positive and each divides the next; their count is the
    rank.  Only the diagonal is computed, not the transforms.
    """

    a = [list(row) for row in mat]
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    diag: list[int] = []
    t = 0
    while t < min(n_rows, n_cols):

        def repivot() -> bool:
            best = None
            for i in range(t, n_rows):
                for j in range(t, n_cols):
                    v = a[i][j]
                    if v and (best is None or abs(v) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return False
            i0, j0 = best
            a[t], a[i0] = a[i0], a[t]
            for row in a:
                row[t], row[j0] = row[j0], row[t]
            if a[t][t] < 0:
                a[t] = [-x for x in a[t]]
            return True

        if not repivot():
            break
        while True:
            p = a[t][t]
            clean = True
            for i in range(t + 1, n_rows):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, n_cols):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        clean = False
            if not clean:
                repivot()
                continue
            offender = None
            for i in range(t + 1, n_rows):
                for j in range(t + 1, n_cols):
                    if a[i][j] % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[offender])]
        diag.append(a[t][t])
        t += 1
    return diag


# --------------------------------------------------------------------------
# the cube
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CubeVertex:
    """One flattening in the cube: its choice vector, web, quantum shift
    and homological degree, with the shifted degrees of its basis."""

    bits: Tuple[int, ...]
    shift: int
    hom_degree: int
    q_degrees: Tuple[int, ...]


class GradedChainComplex:
    """The totalized, signed resolution cube of a diagram.

    Generators at homological degree ``i`` are pairs ``(bits, k)`` —
    a flattening with ``i + p_minus`` choice-1 crossings and a basis
    index of its state space — ordered by ``bits`` then ``k``.  The
    integer differential acts between consecutive degrees and preserves
    the shifted quantum degree.
    """

    def __init__(self, diagram: LinkDiagram, threads: int = 1) -> None:
        self.diagram = diagram
        n = diagram.n_crossings
        self.p_plus = diagram.positive_count
        self.p_minus = diagram.negative_count
        self.vertices: Dict[Tuple[int, ...], CubeVertex] = {}
        for weight in range(n + 1):
            for bits in _bit_vectors(n, weight):
                shift = 3 * self.p_minus - 2 * self.p_plus - weight
                space = state_space(diagram.flatten(bits))
                self.vertices[bits] = CubeVertex(
                    bits=bits,
                    shift=shift,
                    hom_degree=weight - self.p_minus,
                    q_degrees=tuple(d + shift for d in space.degrees),
                )
        edge_keys = [
            (bits, c)
            for bits in self.vertices
            for c in range(n)
            if bits[c] == 0
        ]
        self.edge_maps: Dict[Tuple[Tuple[int, ...], int], IntMatrix] = {}
        if threads > 1 and len(edge_keys) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                for key, mat in zip(
                    edge_keys, pool.map(self._edge_matrix, edge_keys)
                ):
                    self.edge_maps[key] = mat
        else:
            for key in edge_keys:
                self.edge_maps[key] = self._edge_matrix(key)
        self._check_degrees()
        self._generators: Dict[int, List[Tuple[Tuple[int, ...], int]]] = {}
        for i in range(-self.p_minus, self.p_plus + 1):
            gens: List[Tuple[Tuple[int, ...], int]] = []
            for bits in sorted(self.vertices):
                v = self.vertices[bits]
                if v.hom_degree == i:
                    gens.extend((bits, k) for k in range(len(v.q_degrees)))
            self._generators[i] = gens
        self._diff_cache: Dict[int, IntMatrix] = {}

    def _check_degrees(self) -> None:
        """Every nonzero edge-map entry must connect generators of equal
        shifted quantum degree, else per-degree splitting would be lossy."""

        for (bits, c), mat in self.edge_maps.items():
            src = self.vertices[bits]
            dst = self.vertices[
                tuple(1 if a == c else b for a, b in enumerate(bits))
            ]
            for r, row in enumerate(mat):
                for k, entry in enumerate(row):
                    if entry and dst.q_degrees[r] != src.q_degrees[k]:
                        raise ComplexError(
                            "edge map does not preserve shifted degree at "
                            f"bits={bits}, crossing={c}"
                        )

    def _edge_matrix(self, key: Tuple[Tuple[int, ...], int]) -> IntMatrix:
        bits, c = key
        return induced_matrix(resolution_edge_movie(self.diagram, bits, c))

    # -- structure ---------------------------------------------------------

    @staticmethod
    def edge_sign(bits: Tuple[int, ...], c: int) -> int:
        return -1 if sum(bits[:c]) % 2 else 1

    def hom_range(self) -> Tuple[int, int]:
        return (-self.p_minus, self.p_plus)

    def generators(self, i: int) -> List[Tuple[Tuple[int, ...], int]]:
        return list(self._generators.get(i, []))

    def generator_q_degree(self, gen: Tuple[Tuple[int, ...], int]) -> int:
        bits, k = gen
        return self.vertices[bits].q_degrees[k]

    def group_dimension(self, i: int) -> int:
        return len(self._generators.get(i, []))

    def q_degrees(self) -> List[int]:
        out = set()
        for gens in self._generators.values():
            out.update(self.generator_q_degree(g) for g in gens)
        return sorted(out)

    def graded_group_dimension(self, i: int) -> LaurentPoly:
        total = LaurentPoly.zero()
        for g in self._generators.get(i, []):
            total = total + LaurentPoly.monomial(self.generator_q_degree(g))
        return total

    def graded_euler_characteristic(self) -> LaurentPoly:
        """Alternating sum of graded group dimensions (no homology)."""

        total = LaurentPoly.zero()
        lo, hi = self.hom_range()
        for i in range(lo, hi + 1):
            term = self.graded_group_dimension(i)
            total = total + (term if i % 2 == 0 else -term)
        return total

    # -- differentials -----------------------------------------------------

    def differential(self, i: int) -> IntMatrix:
        """The full integer matrix from degree ``i`` to degree ``i+1``."""

        if i in self._diff_cache:
            return self._diff_cache[i]
        src = self._generators.get(i, [])
        dst = self._generators.get(i + 1, [])
        dst_index = {g: r for r, g in enumerate(dst)}
        rows = [[0] * len(src) for _ in dst]
        for col, (bits, k) in enumerate(src):
            for c in range(self.diagram.n_crossings):
                if bits[c] == 1:
                    continue
                target = tuple(
                    1 if a == c else b for a, b in enumerate(bits)
                )
                mat = self.edge_maps[(bits, c)]
                sign = self.edge_sign(bits, c)
                for r_local in range(len(mat)):
                    entry = mat[r_local][k]
                    if entry:
                        row = dst_index[(target, r_local)]
                        rows[row][col] += sign * entry
        out = matrix_rows(rows)
        self._diff_cache[i] = out
        return out

    def differential_q(self, j: int, i: int) -> IntMatrix:
        src = [
            idx
            for idx, g in enumerate(self._generators.get(i, []))
            if self.generator_q_degree(g) == j
        ]
        dst = [
            idx
            for idx, g in enumerate(self._generators.get(i + 1, []))
            if self.generator_q_degree(g) == j
        ]
        full = self.differential(i)
        return matrix_rows([[full[r][c] for c in src] for r in dst])

    # -- sanity ------------------------------------------------------------

    def squares_anticommute(self) -> bool:
        """Each two-step square of the signed cube sums to zero."""

        n = self.diagram.n_crossings
        for bits in self.vertices:
            zeros = [c for c in range(n) if bits[c] == 0]
            for x in range(len(zeros)):
                for y in range(x + 1, len(zeros)):
                    b, c = zeros[x], zeros[y]
                    via_b = tuple(
                        1 if a == b else v for a, v in enumerate(bits)
                    )
                    via_c = tuple(
                        1 if a == c else v for a, v in enumerate(bits)
                    )
                    first = mat_mul(
                        _scaled(
                            self.edge_maps[(via_b, c)],
                            self.edge_sign(via_b, c),
                        ),
                        _scaled(self.edge_maps[(bits, b)], self.edge_sign(bits, b)),
                    )
                    second = mat_mul(
                        _scaled(
                            self.edge_maps[(via_c, b)],
                            self.edge_sign(via_c, b),
                        ),
                        _scaled(self.edge_maps[(bits, c)], self.edge_sign(bits, c)),
                    )
                    if any(
                        f + s
                        for frow, srow in zip(first, second)
                        for f, s in zip(frow, srow)
                    ):
                        return False
        return True

    def d_squared_is_zero(self) -> bool:
        lo, hi = self.hom_range()
        for i in range(lo, hi):
            prod = mat_mul(self.differential(i + 1), self.differential(i))
            if any(x for row in prod for x in row):
                return False
        return True


def _scaled(mat: IntMatrix, sign: int) -> IntMatrix:
    if sign == 1:
        return mat
    return matrix_rows([[-x for x in row] for row in mat])


def _bit_vectors(n: int, weight: int):
    if n == 0:
        if weight == 0:
            yield ()
        return
    for bits in _all_bits(n):
        if sum(bits) == weight:
            yield bits


def _all_bits(n: int):
    for mask in range(1 << n):
        yield tuple((mask >> k) & 1 for k in range(n))


def build_complex(d: LinkDiagram, threads: int = 1) -> GradedChainComplex:
    """Assemble the signed resolution cube of a diagram."""

    return GradedChainComplex(d, threads=threads)


# --------------------------------------------------------------------------
# homology
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class BigradedHomology:
    """Integer homology groups by (homological, quantum) bidegree:
    ``entries`` lists ``(i, j, free_rank, torsion_orders)`` for the
    nonzero groups, sorted by bidegree."""

    entries: Tuple[Tuple[int, int, int, Tuple[int, ...]], ...]

    def rank(self, i: int, j: int) -> int:
        for ei, ej, r, _t in self.entries:
            if (ei, ej) == (i, j):
                return r
        return 0

    def torsion(self, i: int, j: int) -> Tuple[int, ...]:
        for ei, ej, _r, t in self.entries:
            if (ei, ej) == (i, j):
                return t
        return ()

    def free_ranks(self) -> Dict[Tuple[int, int], int]:
        return {(i, j): r for i, j, r, _t in self.entries if r}

    def total_rank(self) -> int:
        return sum(r for _i, _j, r, _t in self.entries)

    def has_torsion(self) -> bool:
        return any(t for _i, _j, _r, t in self.entries)

    def to_json_list(self) -> list:
        return [
            {"i": i, "j": j, "rank": r, "torsion": list(t)}
            for i, j, r, t in self.entries
        ]


def homology(cx: GradedChainComplex) -> BigradedHomology:
    """Exact integer homology of the cube complex, split by quantum
    degree and diagonalized by Smith normal form."""

    lo, hi = cx.hom_range()
    entries: List[Tuple[int, int, int, Tuple[int, ...]]] = []
    for j in cx.q_degrees():
        dims: Dict[int, int] = {}
        mats: Dict[int, IntMatrix] = {}
        for i in range(lo, hi + 1):
            dims[i] = sum(
                1
                for g in cx.generators(i)
                if cx.generator_q_degree(g) == j
            )
        for i in range(lo, hi):
            mats[i] = cx.differential_q(j, i)
        snf: Dict[int, list[int]] = {
            i: smith_diagonal(mats[i]) for i in mats
        }
        for i in range(lo, hi):
            prod = mat_mul(mats[i + 1], mats[i]) if i + 1 in mats else None
            if prod is not None and any(x for row in prod for x in row):
                raise ComplexError(
                    f"differential does not square to zero at (i={i}, j={j})"
                )
        for i in range(lo, hi + 1):
            rank_out = len(snf.get(i, []))
            incoming = snf.get(i - 1, [])
            free = dims[i] - rank_out - len(incoming)
            if free < 0:
                raise ComplexError(
                    f"negative free rank at (i={i}, j={j}): check d*d = 0"
                )
            torsion = tuple(x for x in incoming if x > 1)
            if free or torsion:
                entries.append((i, j, free, torsion))
    entries.sort(key=lambda e: (e[0], e[1]))
    return BigradedHomology(entries=tuple(entries))


def link_homology(d: LinkDiagram, threads: int = 1) -> BigradedHomology:
    return homology(build_complex(d, threads=threads))


def euler_characteristic(h: BigradedHomology) -> LaurentPoly:
    """Alternating graded-rank sum; equals the diagram's bracket."""

    total = LaurentPoly.zero()
    for i, j, r, _t in h.entries:
        term = LaurentPoly.monomial(j, r)
        total = total + (term if i % 2 == 0 else -term)
    return total


# --------------------------------------------------------------------------
# invariance checking
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class InvarianceReport:
    """Pairwise comparison of two diagrams' homology tables."""

    first: BigradedHomology
    second: BigradedHomology
    passed: bool
    differences: Tuple[Tuple[Tuple[int, int], Tuple[int, Tuple[int, ...]], Tuple[int, Tuple[int, ...]]], ...]

    def to_json_dict(self) -> dict:
        return {
            "passed": self.passed,
            "differences": [
                {
                    "i": ij[0],
                    "j": ij[1],
                    "first": {"rank": a[0], "torsion": list(a[1])},
                    "second": {"rank": b[0], "torsion": list(b[1])},
                }
                for ij, a, b in self.differences
            ],
        }


def check_invariance(d1: LinkDiagram, d2: LinkDiagram, threads: int = 1) -> InvarianceReport:
    """Compare the bigraded homology tables of two diagrams; they agree
    exactly (ranks and torsion per bidegree) when the diagrams present
    the same link."""

    h1 = link_homology(d1, threads=threads)
    h2 = link_homology(d2, threads=threads)
    keys = {(i, j) for i, j, _r, _t in h1.entries}
    keys |= {(i, j) for i, j, _r, _t in h2.entries}
    diffs = []
    for ij in sorted(keys):
        a = (h1.rank(*ij), h1.torsion(*ij))
        b = (h2.rank(*ij), h2.torsion(*ij))
        if a != b:
            diffs.append((ij, a, b))
    return InvarianceReport(
        first=h1, second=h2, passed=not diffs, differences=tuple(diffs)
    )


def homology_json(d: LinkDiagram, threads: int = 1) -> dict:
    """The diagram's homology report in the interchange shape:
    diagram, bracket text, homology table, and the Euler-characteristic
    cross-check flag."""

    h = link_homology(d, threads=threads)
    bracket = link_bracket(d)
    return {
        "diagram": d.to_json_dict(),
        "bracket": str(bracket),
        "homology": h.to_json_list(),
        "euler_check": euler_characteristic(h) == bracket,
    }
