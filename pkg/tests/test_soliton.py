import json

import numpy as np
import pytest
from scipy.stats import ortho_group

from hyperfutaki.errors import NotConverged
from hyperfutaki.invariant import futaki, tian_zhu
from hyperfutaki.poly import DiagonalField, parse_polynomial, tangent_field_basis
from hyperfutaki.soliton import fd_jacobian, invariant_map, solve_soliton

FERMAT = parse_polynomial("Z0^3 + Z1^3 + Z2^3 + Z3^3", 3)
QUADRIC = parse_polynomial("Z0*Z3 + Z1*Z2", 3)
# formal, non-Fano (s = -4); the facet barycentre condition has an interior solution
MONOMIAL = parse_polynomial("Z0^2*Z1^2*Z2^3", 2)


def fresh_residual(P, X):
    return max(abs(tian_zhu(P, v, X).value) for v in tangent_field_basis(P))


def test_fermat_trivial_family():
    r = solve_soliton(FERMAT)
    assert r.converged and r.iterations == 0 and r.residual == 0
    assert np.all(r.X_star.coeffs == 0)


def test_quadric_root_at_zero():
    r = solve_soliton(QUADRIC)
    assert r.converged and r.iterations == 0
    assert r.residual <= 1e-10
    assert np.all(r.X_star.coeffs == 0)


def test_monomial_root():
    r = solve_soliton(MONOMIAL, tol=1e-10)
    assert r.converged
    assert np.max(np.abs(r.X_star.coeffs)) > 0.1
    assert fresh_residual(MONOMIAL, r.X_star) <= 1e-9


def test_residual_non_increasing():
    r = solve_soliton(parse_polynomial("Z0^2*Z1^3*Z2^2*Z3^3", 3))
    assert r.converged
    assert all(b < a for a, b in zip(r.history, r.history[1:]))


def test_basis_remix_invariance():
    basis = tangent_field_basis(MONOMIAL)
    Q = ortho_group.rvs(len(basis), random_state=3)
    mixed = [DiagonalField(sum(Q[i, j] * basis[j].coeffs for j in range(len(basis))))
             for i in range(len(basis))]
    a = solve_soliton(MONOMIAL)
    b = solve_soliton(MONOMIAL, basis=mixed)
    np.testing.assert_allclose(b.X_star.coeffs, a.X_star.coeffs, atol=1e-9)


def test_fano_monomial_has_no_root():
    # facet barycentre would need a negative coordinate; reported, not guessed
    P = parse_polynomial("Z0*Z1^2", 3)
    with pytest.raises(NotConverged) as info:
        solve_soliton(P, max_iter=20)
    res = info.value.result
    assert not res.converged and res.residual > 1.0
    loose = solve_soliton(P, max_iter=20, strict=False)
    assert not loose.converged


def test_invariant_map_at_zero_is_futaki():
    P = parse_polynomial("Z0^2*Z1 + Z2^2*Z3", 3)
    basis = tangent_field_basis(P)
    got = invariant_map(P, np.zeros(len(basis)), basis)
    np.testing.assert_allclose(got, [futaki(P, b).real for b in basis], rtol=1e-12)


def test_invariant_map_empty():
    assert invariant_map(FERMAT, np.zeros(0), []).size == 0


def test_jacobian_vs_secant():
    basis = tangent_field_basis(MONOMIAL)
    rng = np.random.default_rng(4)

    def F(c):
        return invariant_map(MONOMIAL, c, basis)

    for _ in range(5):
        c = rng.uniform(-0.3, 0.3, len(basis))
        J = fd_jacobian(F, c)
        for j in range(len(basis)):
            e = np.zeros(len(basis))
            e[j] = 1e-4
            secant = (F(c + e) - F(c)) / 1e-4
            assert np.allclose(secant, J[:, j], rtol=1e-4, atol=1e-4 * np.abs(J).max())


def test_json():
    r = solve_soliton(MONOMIAL)
    data = json.loads(r.to_json())
    assert data["converged"] is True
    assert len(data["X_star"]) == 3
