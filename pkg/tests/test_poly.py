import json

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperfutaki.errors import (
    EmptyPolynomial,
    InputError,
    MalformedInput,
    NotHomogeneous,
    NotTangent,
    UnknownVariable,
)
from hyperfutaki.poly import (
    DiagonalField,
    HomogeneousPolynomial,
    format_complex,
    normalize_field,
    parse_complex,
    parse_polynomial,
    parse_vector,
    tangency_constraints,
    tangent_field_basis,
    weight_of,
)

FERMAT = "Z0^3 + Z1^3 + Z2^3 + Z3^3"
QUADRIC = "Z0*Z3 + Z1*Z2"


def test_parse_quadric():
    P = parse_polynomial(QUADRIC, 3)
    assert P.term_map() == {(1, 0, 0, 1): 1, (0, 1, 1, 0): 1}
    assert P.degree == 2 and P.n == 3


def test_parse_fermat():
    P = parse_polynomial(FERMAT, 3)
    assert P.degree == 3
    assert len(P.terms) == 4
    assert all(c == 1 for _, c in P.terms)


def test_not_homogeneous():
    with pytest.raises(NotHomogeneous):
        parse_polynomial("Z0^2 + Z1", 2)


@pytest.mark.parametrize("text, exc", [
    ("Z0 + Z5", UnknownVariable),
    ("Z0 + + Z1", MalformedInput),
    ("Z0 * * Z1 + Z2^2", MalformedInput),
    ("Z0 + Y1", MalformedInput),
    ("", EmptyPolynomial),
    ("Z0*Z1 - Z1*Z0 + 0*Z2^2", EmptyPolynomial),
])
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse_polynomial(text, 2)


def test_like_terms_merge_and_zero_drop():
    P = parse_polynomial("2*Z0*Z1 + Z1*Z0 - 3 Z0 Z1 + Z2^2", 2)
    assert P.term_map() == {(0, 0, 2): 1}


def test_coefficient_forms():
    P = parse_polynomial("(1+2i)*Z0^2 + 3-4i*Z1^2 - 2.5e-1 Z2^2 + i*Z0*Z1", 2)
    tm = P.term_map()
    assert tm[(2, 0, 0)] == 1 + 2j
    assert tm[(0, 2, 0)] == 3 - 4j
    assert tm[(0, 0, 2)] == -0.25
    assert tm[(1, 1, 0)] == 1j


def test_optional_star_and_power_one():
    a = parse_polynomial("Z0^1*Z1 Z2 + 2Z0^3", 2)
    b = parse_polynomial("Z0*Z1*Z2 + 2*Z0**3", 2)
    assert a.term_map() == b.term_map()


def test_n_inferred_and_checked():
    assert parse_polynomial("Z0*Z2 + Z1^2").n == 2
    with pytest.raises(InputError):
        parse_polynomial("Z0 + Z1", 1)


def test_json_form_round_trip():
    P = parse_polynomial("(1-0.5i) Z0*Z3 + Z1*Z2", 3)
    Q = parse_polynomial(json.dumps(P.to_json_dict()))
    assert Q == P


@pytest.mark.parametrize("text", [
    QUADRIC, FERMAT, "Z0*Z1^2", "(0.1+0.2i)*Z0^2*Z1 - 1e-07*Z2^3 + 3.5*Z1*Z2*Z0",
    "-Z0^4 - 2*Z1^4 + (0-1i)*Z2^2*Z3^2",
])
def test_print_reparse_round_trip(text):
    P = parse_polynomial(text, 3)
    Q = parse_polynomial(str(P), 3)
    assert Q.term_map() == P.term_map()


coeffs = st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False)


@st.composite
def polynomials(draw):
    n = draw(st.integers(2, 4))
    d = draw(st.integers(1, 4))
    m = draw(st.integers(1, 5))
    terms = {}
    for _ in range(m):
        cuts = sorted(draw(st.lists(st.integers(0, d), min_size=n, max_size=n)))
        exps = [b - a for a, b in zip([0] + cuts, cuts + [d])]
        c = draw(coeffs)
        if c != 0:
            terms[tuple(exps)] = c
    if not terms:
        terms[(d,) + (0,) * n] = 1.0
    return HomogeneousPolynomial.from_terms(n, terms)


@given(polynomials())
@settings(max_examples=200, deadline=None)
def test_round_trip_property(P):
    assert parse_polynomial(str(P), P.n).term_map() == P.term_map()


@given(coeffs)
def test_complex_literal_round_trip(z):
    assert parse_complex(format_complex(z)) == z


def test_parse_vector():
    v = parse_vector("1, -1, 0.5")
    assert v.dtype == float and v.tolist() == [1, -1, 0.5]
    w = parse_vector("1+2i,-i,3")
    assert w.tolist() == [1 + 2j, -1j, 3]
    with pytest.raises(MalformedInput):
        parse_vector("1,,2")


def test_field_rejects_nonzero_trace():
    with pytest.raises(InputError):
        DiagonalField([1.0, 0.0, 0.0])
    DiagonalField([1.0, -1.0, 0.0])


def test_field_immutable():
    f = DiagonalField([1.0, -1.0, 0.0])
    with pytest.raises(ValueError):
        f.coeffs[0] = 3.0


def test_weight_quadric():
    P = parse_polynomial(QUADRIC, 3)
    w = weight_of(P, DiagonalField([1, -1, 1, -1]))
    assert w.value == 0


def test_weight_fermat_not_tangent():
    P = parse_polynomial(FERMAT, 3)
    with pytest.raises(NotTangent):
        weight_of(P, DiagonalField([1, -1, 0, 0]))


def test_weight_single_monomial():
    P = parse_polynomial("Z0*Z1^2", 3)
    w = weight_of(P, DiagonalField([3, -1, -1, -1]))
    assert w.value == 1
    assert w.witness_exponent == (1, 2, 0, 0)


def test_weight_shift_rule():
    P = parse_polynomial("Z0*Z1^2", 3)
    raw = np.array([3.0, -1, -1, 2])
    f, m = normalize_field(raw)
    raw_weight = P.exponents[0] @ raw
    assert weight_of(P, f).value == pytest.approx(raw_weight - m * P.degree)


@pytest.mark.parametrize("raw, field, shift", [
    ([1, 1, 1, 1], [0, 0, 0, 0], 1),
    ([2, 0, 0, 0], [1.5, -0.5, -0.5, -0.5], 0.5),
    ([0, 0, 0], [0, 0, 0], 0),
])
def test_normalize_field(raw, field, shift):
    f, m = normalize_field(np.array(raw, dtype=float))
    np.testing.assert_array_equal(f.coeffs, field)
    assert m == shift


@given(st.lists(st.floats(-1e3, 1e3), min_size=3, max_size=7))
def test_normalize_idempotent(raw):
    f1, _ = normalize_field(np.array(raw))
    f2, m2 = normalize_field(f1.coeffs)
    np.testing.assert_allclose(f2.coeffs, f1.coeffs, atol=1e-12 * (1 + max(map(abs, raw))))
    assert abs(m2) <= 1e-12 * (1 + max(map(abs, raw)))


@given(polynomials(), st.complex_numbers(max_magnitude=100, allow_nan=False))
@settings(max_examples=100, deadline=None)
def test_weight_homogeneous_in_field(P, alpha):
    basis = tangent_field_basis(P)
    if not basis:
        return
    v = basis[0]
    assert weight_of(P, alpha * v).value == pytest.approx(
        alpha * weight_of(P, v).value, rel=1e-9, abs=1e-12 * (1 + abs(alpha)))


def _nullity_exact(P):
    """Dimension of the tangent family from an exact rational rank."""
    A = sympy.Matrix(tangency_constraints(P).astype(int).tolist())
    return P.n + 1 - A.rank()


@pytest.mark.parametrize("text, n, dim", [
    (FERMAT, 3, 0),
    (QUADRIC, 3, 2),
    ("Z0*Z1^2", 3, 3),
    ("Z0*Z1 + Z2^2", 2, 1),
])
def test_tangent_basis_dimension(text, n, dim):
    P = parse_polynomial(text, n)
    basis = tangent_field_basis(P)
    assert len(basis) == dim == _nullity_exact(P)


@given(polynomials())
@settings(max_examples=100, deadline=None)
def test_tangent_basis_properties(P):
    basis = tangent_field_basis(P)
    assert len(basis) == _nullity_exact(P)
    if basis:
        B = np.array([b.coeffs for b in basis])
        np.testing.assert_allclose(B @ B.T, np.eye(len(basis)), atol=1e-12)
        for b in basis:
            assert b.is_real
            weight_of(P, b)


def test_normalize_large_offset_small_spread():
    f, m = normalize_field(np.array([683.0, 683.5, 683.5062825770835]))
    assert abs(f.coeffs.sum()) <= 1e-12 * np.abs(f.coeffs).max()
    assert m == pytest.approx(683.3354275256945, rel=1e-15)
