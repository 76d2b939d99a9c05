"""Tests for the exact algebra layer: Laurent polynomials, the rank-3
Frobenius algebra, the three-sheet circle evaluation and closed surfaces."""

from __future__ import annotations

import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.algebra import (
    FrobeniusElement,
    LaurentPoly,
    basis_degree,
    closed_surface_value,
    comultiply,
    dual_basis,
    handle_operator,
    multiply,
    quantum_integer,
    theta_symbol,
    trace,
)
from .oracles import flag_theta

# --------------------------------------------------------------------------
# strategies
# --------------------------------------------------------------------------

small_int = st.integers(min_value=-9, max_value=9)
laurents = st.dictionaries(
    st.integers(min_value=-6, max_value=6), small_int, max_size=5
).map(LaurentPoly)
frobs = st.builds(FrobeniusElement, small_int, small_int, small_int)

# tensors over the Frobenius algebra, written as {(i, j): int}
Tensor = dict


def _tensor_add(t1: Tensor, t2: Tensor) -> Tensor:
    out = dict(t1)
    for k, c in t2.items():
        s = out.get(k, 0) + c
        if s:
            out[k] = s
        elif k in out:
            del out[k]
    return out


def _tensor_scale(t: Tensor, c: int) -> Tensor:
    return {k: v * c for k, v in t.items() if v * c}


def _tensor_mult_left(a: FrobeniusElement, t: Tensor) -> Tensor:
    """(a (x) 1) . t  with multiplication in each tensor factor."""
    out: Tensor = {}
    for (i, j), c in t.items():
        prod = a * FrobeniusElement.basis(i)
        for k, ck in enumerate(prod.coefficients):
            if ck:
                out = _tensor_add(out, {(k, j): c * ck})
    return out


def _tensor_mult_right(t: Tensor, b: FrobeniusElement) -> Tensor:
    """t . (1 (x) b)  with multiplication in each tensor factor."""
    out: Tensor = {}
    for (i, j), c in t.items():
        prod = FrobeniusElement.basis(j) * b
        for k, ck in enumerate(prod.coefficients):
            if ck:
                out = _tensor_add(out, {(i, k): c * ck})
    return out


# --------------------------------------------------------------------------
# LaurentPoly
# --------------------------------------------------------------------------


def test_laurent_zero_prints_as_zero():
    assert str(LaurentPoly.zero()) == "0"
    assert str(LaurentPoly({2: 1}) - LaurentPoly({2: 1})) == "0"


def test_laurent_text_form_golden():
    assert str(LaurentPoly.one()) == "1"
    assert str(LaurentPoly({1: 1})) == "q"
    assert str(LaurentPoly({-1: 1})) == "q^-1"
    assert str(LaurentPoly({-2: 1, 0: 1, 2: 1})) == "q^-2 + 1 + q^2"
    assert str(LaurentPoly({-3: 1, -1: 2, 1: 2, 3: 1})) == "q^-3 + 2*q^-1 + 2*q + q^3"
    assert str(LaurentPoly({-1: -1, 0: 3, 3: -2})) == "-q^-1 + 3 - 2*q^3"
    assert str(LaurentPoly({0: -4})) == "-4"


def test_laurent_monomial_and_accessors():
    p = LaurentPoly.monomial(-2, 5)
    assert p.coefficient(-2) == 5
    assert p.coefficient(0) == 0
    assert p.items() == ((-2, 5),)
    assert p.min_exponent() == p.max_exponent() == -2
    assert p.shift(3).items() == ((1, 5),)
    assert p.evaluate_at_one() == 5


def test_laurent_cancellation_in_constructor():
    p = LaurentPoly([(1, 2), (1, -2), (0, 7)])
    assert p == LaurentPoly({0: 7})
    assert not LaurentPoly({3: 0})


@given(laurents, laurents, laurents)
def test_laurent_ring_laws(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + LaurentPoly.zero() == a
    assert a * LaurentPoly.one() == a
    assert a - a == LaurentPoly.zero()


@given(laurents, laurents)
def test_laurent_mirror_is_multiplicative(a, b):
    assert (a * b).mirror() == a.mirror() * b.mirror()
    assert a.mirror().mirror() == a


@given(laurents, st.integers(min_value=0, max_value=5))
def test_laurent_power_matches_repeated_product(a, n):
    expected = LaurentPoly.one()
    for _ in range(n):
        expected = expected * a
    assert a**n == expected


def test_quantum_integers():
    assert quantum_integer(0) == LaurentPoly.zero()
    assert quantum_integer(1) == LaurentPoly.one()
    assert quantum_integer(2) == LaurentPoly({1: 1, -1: 1})
    assert quantum_integer(3) == LaurentPoly({2: 1, 0: 1, -2: 1})
    assert str(quantum_integer(3)) == "q^-2 + 1 + q^2"
    # [2]*[3] = [4] + [2], and [2]^2 = [3] + [1]
    assert quantum_integer(2) * quantum_integer(3) == quantum_integer(
        4
    ) + quantum_integer(2)
    assert quantum_integer(2) ** 2 == quantum_integer(3) + quantum_integer(1)
    for n in range(7):
        assert quantum_integer(n).is_palindromic(), f"[{n}] should be palindromic"
        assert quantum_integer(n).evaluate_at_one() == n


# --------------------------------------------------------------------------
# Frobenius algebra Z[X]/(X^3)
# --------------------------------------------------------------------------


def test_frobenius_multiplication_table():
    X = FrobeniusElement.basis
    assert X(0) * X(0) == X(0)
    assert X(0) * X(1) == X(1)
    assert X(1) * X(1) == X(2)
    assert X(1) * X(2) == FrobeniusElement.zero(), "X^3 must vanish"
    assert X(2) * X(2) == FrobeniusElement.zero(), "X^4 must vanish"


def test_frobenius_trace_values():
    assert trace(FrobeniusElement.one()) == 0
    assert trace(FrobeniusElement.basis(1)) == 0
    assert trace(FrobeniusElement.basis(2)) == -1
    assert trace(FrobeniusElement(4, -2, 7)) == -7


def test_frobenius_grading():
    assert [basis_degree(i) for i in range(3)] == [-2, 0, 2]


def test_comultiplication_on_basis():
    assert comultiply(FrobeniusElement.one()) == {
        (0, 2): -1,
        (1, 1): -1,
        (2, 0): -1,
    }
    assert comultiply(FrobeniusElement.basis(1)) == {(1, 2): -1, (2, 1): -1}
    assert comultiply(FrobeniusElement.basis(2)) == {(2, 2): -1}


@given(frobs, frobs, frobs)
def test_frobenius_ring_laws(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * FrobeniusElement.one() == a


@given(frobs, frobs)
def test_frobenius_compatibility(a, b):
    """comultiply(a*b) == (a (x) 1).comultiply(b) == comultiply(a).(1 (x) b)"""
    lhs = comultiply(a * b)
    via_left = _tensor_mult_left(a, comultiply(b))
    via_right = _tensor_mult_right(comultiply(a), b)
    assert lhs == via_left, f"left Frobenius compatibility fails for {a}, {b}"
    assert lhs == via_right, f"right Frobenius compatibility fails for {a}, {b}"


@given(frobs)
def test_counit_axiom(a):
    """(trace (x) id) comultiply(a) == a == (id (x) trace) comultiply(a)"""
    left = FrobeniusElement.zero()
    right = FrobeniusElement.zero()
    for (i, j), c in comultiply(a).items():
        left = left + c * trace(FrobeniusElement.basis(i)) * FrobeniusElement.basis(j)
        right = right + c * trace(FrobeniusElement.basis(j)) * FrobeniusElement.basis(i)
    assert left == a, f"(trace (x) id) of the coproduct of {a} is {left}"
    assert right == a, f"(id (x) trace) of the coproduct of {a} is {right}"


def test_coassociativity_on_basis():
    for k in range(3):
        a = FrobeniusElement.basis(k)
        lhs: dict[tuple[int, int, int], int] = {}
        rhs: dict[tuple[int, int, int], int] = {}
        for (i, j), c in comultiply(a).items():
            for (p, r), d in comultiply(FrobeniusElement.basis(i)).items():
                key = (p, r, j)
                if lhs.get(key, 0) + c * d:
                    lhs[key] = lhs.get(key, 0) + c * d
                elif key in lhs:
                    del lhs[key]
            for (p, r), d in comultiply(FrobeniusElement.basis(j)).items():
                key = (i, p, r)
                if rhs.get(key, 0) + c * d:
                    rhs[key] = rhs.get(key, 0) + c * d
                elif key in rhs:
                    del rhs[key]
        assert lhs == rhs, f"coassociativity fails on X^{k}"


def test_dual_basis_pairing():
    pairs = dual_basis()
    for i, (_, bi_hat) in enumerate(pairs):
        for j, (bj, _) in enumerate(pairs):
            expected = 1 if i == j else 0
            got = trace(bj * bi_hat)
            assert got == expected, f"pairing ({i},{j}) gave {got}"


@given(frobs)
def test_neck_cutting_identity(a):
    """Cutting an identity tube: a == sum over the coproduct of the unit of
    coefficient * trace(X^i * a) * X^j."""
    total = FrobeniusElement.zero()
    for (i, j), c in comultiply(FrobeniusElement.one()).items():
        total = total + c * trace(FrobeniusElement.basis(i) * a) * FrobeniusElement.basis(j)
    assert total == a, f"neck-cutting reconstruction of {a} gave {total}"


# --------------------------------------------------------------------------
# closed surfaces
# --------------------------------------------------------------------------


def test_handle_operator_values():
    assert handle_operator(FrobeniusElement.one()) == FrobeniusElement(0, 0, -3)
    assert handle_operator(FrobeniusElement.basis(1)) == FrobeniusElement.zero()
    assert handle_operator(FrobeniusElement.basis(2)) == FrobeniusElement.zero()


def test_closed_surface_value_table():
    expected_nonzero = {(0, 2): -1, (1, 0): 3}
    for genus in range(4):
        for dots in range(6):
            got = closed_surface_value(genus, dots)
            want = expected_nonzero.get((genus, dots), 0)
            assert got == want, f"genus {genus} with {dots} dots gave {got}, want {want}"


# --------------------------------------------------------------------------
# three-sheet circle evaluation vs the flag-variety oracle
# --------------------------------------------------------------------------


def test_theta_symbol_against_flag_oracle():
    for a, b, c in itertools.product(range(5), repeat=3):
        got = theta_symbol(a, b, c)
        want = flag_theta(a, b, c)
        assert got == want, f"theta({a},{b},{c}) = {got} but the oracle says {want}"


def test_theta_symbol_symmetries():
    for a, b, c in itertools.product(range(4), repeat=3):
        assert theta_symbol(a, b, c) == theta_symbol(b, c, a), "cyclic invariance"
        assert theta_symbol(a, b, c) == -theta_symbol(c, b, a), "reversal negates"


def test_theta_symbol_known_values():
    assert theta_symbol(0, 1, 2) == 1
    assert theta_symbol(2, 1, 0) == -1
    assert theta_symbol(1, 1, 1) == 0
    assert theta_symbol(0, 0, 0) == 0
    assert theta_symbol(0, 1, 3) == 0
