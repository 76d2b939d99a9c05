"""State spaces of closed webs and the maps cobordism movies induce.

Every closed web carries a free graded abelian group - its state space -
with an explicit basis of "preparation" movies from the empty web.  The
basis follows the web's reduction tree: a free loop contributes a birth
carrying zero, one or two dots (degrees -2, 0, +2); a bounded two-edge
face contributes the plain and dotted lifts through that face (degrees
-1, +1); a bounded four-edge face contributes the reflected split
branches of both rewirings (degree 0).

The closed-surface evaluation pairs two preparations to an integer.  The
resulting Gram matrix is unimodular, which makes the state space's
linear algebra exact: the matrix induced by any movie between webs is
obtained by pairing the movie's action on the source basis against the
target basis and solving the integer system, with any non-integrality
treated as a hard error rather than rounded away.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import LaurentPoly
from .foam import (
    Birth,
    Death,
    Dot,
    FoamMovie,
    apply_move,
    digon_movies,
    dot_movie,
    evaluate_closed,
    identity_movie,
    square_split_movies,
)
from .web import DigonFace, Empty, FreeLoop, SquareFace, Web, find_reduction

IntMatrix = Tuple[Tuple[int, ...], ...]

#: Reduction trace nodes: ("empty",), ("loop", loop_id, sub),
#: ("digon", face, sub), ("square", face, sub_first, sub_second).
Trace = tuple


class StateSpaceError(Exception):
    """Raised when state-space linear algebra loses exactness: a
    singular or non-unimodular pairing, a non-integral solution, or an
    induced matrix that fails degree homogeneity."""


# ==========================================================================
# exact integer matrices
# ==========================================================================


def matrix_rows(rows: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def identity_matrix(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zero_matrix(rows: int, cols: int) -> IntMatrix:
    return tuple((0,) * cols for _ in range(rows))


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a and b and len(a[0]) != len(b):
        raise ValueError(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in zip(*b)) for row in a
    )


def mat_add(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_neg(a: IntMatrix) -> IntMatrix:
    return tuple(tuple(-x for x in row) for row in a)


def mat_sub(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return mat_add(a, mat_neg(b))


def mat_scale(c: int, a: IntMatrix) -> IntMatrix:
    return tuple(tuple(c * x for x in row) for row in a)


def mat_power(a: IntMatrix, n: int) -> IntMatrix:
    out = identity_matrix(len(a))
    for _ in range(n):
        out = mat_mul(out, a)
    return out


def _solve_unimodular(
    gram: Sequence[Sequence[int]], rhs: Sequence[Sequence[int]]
) -> IntMatrix:
    """Solve gram @ X = rhs exactly.  The Gram matrix must be
    unimodular and the solution integral; anything else raises."""
    n = len(gram)
    m = len(rhs[0]) if rhs and rhs[0] is not None else 0
    if len(rhs) != n:
        raise ValueError("right-hand side has wrong height")
    aug = [
        [Fraction(gram[i][j]) for j in range(n)]
        + [Fraction(rhs[i][j]) for j in range(m)]
        for i in range(n)
    ]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise StateSpaceError("pairing matrix is singular")
        if piv != col:
            aug[col], aug[piv] = aug[piv], aug[col]
            det = -det
        det *= aug[col][col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    if det != 1 and det != -1:
        raise StateSpaceError(f"pairing matrix has determinant {det}, not ±1")
    out: List[List[int]] = []
    for i in range(n):
        row = []
        for j in range(m):
            x = aug[i][n + j]
            if x.denominator != 1:
                raise StateSpaceError(
                    f"non-integral coefficient {x} in induced map; convention bug"
                )
            row.append(int(x))
        out.append(row)
    return matrix_rows(out)


# ==========================================================================
# state spaces
# ==========================================================================


@dataclass(frozen=True)
class StateSpace:
    """The graded state space of a closed web with its preparation
    basis, basis degrees, reduction trace and pairing matrix."""

    web: Web
    basis: Tuple[FoamMovie, ...]
    degrees: Tuple[int, ...]
    trace: Trace
    gram: IntMatrix

    @property
    def dim(self) -> int:
        return len(self.basis)

    def graded_dimension(self) -> LaurentPoly:
        total = LaurentPoly.zero()
        for d in self.degrees:
            total = total + LaurentPoly.monomial(d)
        return total


_SPACES: Dict[str, StateSpace] = {}
_PAIRS: Dict[Tuple[FoamMovie, FoamMovie], int] = {}
_INDUCED: Dict[FoamMovie, IntMatrix] = {}


def clear_state_space_cache() -> None:
    _SPACES.clear()
    _PAIRS.clear()
    _INDUCED.clear()


def _fresh_loop_id(web: Web) -> int:
    return min((0, *web.loop_ccw)) - 1


def _preparations(web: Web) -> Tuple[Tuple[FoamMovie, ...], Trace]:
    reduction = find_reduction(web)
    if isinstance(reduction, Empty):
        return (identity_movie(web),), ("empty",)
    if isinstance(reduction, FreeLoop):
        lid = reduction.loop_id
        region = web.parent[lid]
        ccw = web.loop_ccw[lid]
        smaller, _ = apply_move(web, Death(lid))
        sub = state_space(smaller)
        out = []
        for b in sub.basis:
            for dots in range(3):
                grow = FoamMovie(
                    smaller, (Birth(lid, region, ccw),) + (Dot(lid),) * dots
                )
                out.append(b.compose(grow))
        return tuple(out), ("loop", lid, sub.trace)
    if isinstance(reduction, DigonFace):
        face = reduction.face
        lift_plain, lift_dotted, _, _ = digon_movies(
            web, face, loop_id=_fresh_loop_id(web)
        )
        sub = state_space(lift_plain.start)
        out = []
        for b in sub.basis:
            out.append(b.compose(lift_plain))
            out.append(b.compose(lift_dotted))
        return tuple(out), ("digon", face, sub.trace)
    if isinstance(reduction, SquareFace):
        face = reduction.face
        first, second = square_split_movies(web, face)
        traces = []
        out = []
        for branch in (first, second):
            back = branch.reflect()
            sub = state_space(branch.end)
            traces.append(sub.trace)
            out.extend(b.compose(back) for b in sub.basis)
        return tuple(out), ("square", face, traces[0], traces[1])
    raise StateSpaceError(f"unhandled reduction {reduction!r}")


def pair_movies(u: FoamMovie, v: FoamMovie) -> int:
    """The closed evaluation of u glued to the reflection of v.  Both
    movies must start at the empty web and end at the same web.  The
    value vanishes unless the degrees cancel."""
    if u.degree() + v.degree() != 0:
        return 0
    key = (u, v)
    if key not in _PAIRS:
        ref = v.reflect()
        u.instruction_stream()
        ref.instruction_stream()
        _PAIRS[key] = evaluate_closed(u.compose(ref))
        _PAIRS[(v, u)] = _PAIRS[key]
    return _PAIRS[key]


def state_space(web: Web) -> StateSpace:
    key = web.exact_key()
    if key in _SPACES:
        return _SPACES[key]
    basis, trace = _preparations(web)
    degrees = tuple(b.degree() for b in basis)
    n = len(basis)
    gram_rows = [[0] * n for _ in range(n)]
    for j in range(n):
        for k in range(j, n):
            val = pair_movies(basis[j], basis[k])
            gram_rows[j][k] = val
            gram_rows[k][j] = val
    gram = matrix_rows(gram_rows)
    _solve_unimodular(gram, [[] for _ in range(n)])  # unimodularity check
    space = StateSpace(web=web, basis=basis, degrees=degrees, trace=trace, gram=gram)
    _SPACES[key] = space
    return space


def gram_matrix(web: Web) -> IntMatrix:
    return state_space(web).gram


def induced_matrix(movie: FoamMovie) -> IntMatrix:
    """The integer matrix of the movie's action, from the preparation
    basis of its start web to that of its end web.  Homogeneous of the
    movie's degree; columns index the source basis."""
    if movie in _INDUCED:
        return _INDUCED[movie]
    src = state_space(movie.start)
    dst = state_space(movie.end)
    shift = movie.degree()
    movie.instruction_stream()
    rhs = [[0] * src.dim for _ in range(dst.dim)]
    for j, u in enumerate(src.basis):
        u.instruction_stream()
        pushed = u.compose(movie)
        for k, v in enumerate(dst.basis):
            rhs[k][j] = pair_movies(pushed, v)
    out = _solve_unimodular(dst.gram, rhs)
    for k in range(dst.dim):
        for j in range(src.dim):
            if out[k][j] and dst.degrees[k] != src.degrees[j] + shift:
                raise StateSpaceError(
                    f"induced matrix entry ({k}, {j}) breaks degree "
                    f"homogeneity: {dst.degrees[k]} != {src.degrees[j]} + {shift}"
                )
    _INDUCED[movie] = out
    return out


def edge_dot_action(web: Web, site: int) -> IntMatrix:
    """The degree-2 endomorphism placing one dot on the sheet swept by
    ``site`` (a dart of an edge, or a negative free-loop id)."""
    return induced_matrix(dot_movie(web, site))


def graded_dimension(web: Web) -> LaurentPoly:
    return state_space(web).graded_dimension()


# ==========================================================================
# edge-ring relations
# ==========================================================================


def vertex_orbits(web: Web) -> Tuple[Tuple[int, int, int], ...]:
    """The trivalent vertices of the web as rotation orbits, each
    starting from its smallest dart."""
    seen: set[int] = set()
    out = []
    for d in sorted(web.sigma):
        if d in seen:
            continue
        orbit = (d, web.sigma[d], web.sigma[web.sigma[d]])
        seen.update(orbit)
        out.append(orbit)
    return tuple(out)


def vertex_symmetric_actions(
    web: Web, orbit: Sequence[int]
) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """The three elementary symmetric polynomials in the dot actions of
    the three edges at one vertex.  All three vanish on the state space."""
    x1, x2, x3 = (edge_dot_action(web, d) for d in orbit)
    e1 = mat_add(mat_add(x1, x2), x3)
    x2x3 = mat_mul(x2, x3)
    e2 = mat_add(mat_mul(x1, mat_add(x2, x3)), x2x3)
    e3 = mat_mul(x1, x2x3)
    return e1, e2, e3


def check_edge_ring(web: Web) -> None:
    """Verify the edge-ring relations on the state space: at every
    vertex the elementary symmetric sums of the three incident dot
    actions vanish, and every dot action cubes to zero."""
    n = state_space(web).dim
    zero = zero_matrix(n, n)
    for orbit in vertex_orbits(web):
        for name, mat in zip("123", vertex_symmetric_actions(web, orbit)):
            if mat != zero:
                raise StateSpaceError(
                    f"symmetric relation e{name} fails at vertex {orbit}"
                )
    sites = [min(d, web.alpha[d]) for d in web.out_darts] + list(web.loops)
    for site in sorted(set(sites)):
        x = edge_dot_action(web, site)
        if mat_power(x, 3) != zero:
            raise StateSpaceError(f"dot action at {site} is not nilpotent of order 3")
