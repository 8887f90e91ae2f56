"""Search for the field X* with F_{X*}(v) = 0 on every tangent direction v.

X ranges over the real span of :func:`tangent_field_basis`; the unknowns are
the coordinates c of X in that basis.  Damped Newton with a central
finite-difference Jacobian; small systems only (m <= n).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import HyperfutakiError, NotConverged, NumericalError
from .hfuncs import SeriesControl
from .invariant import tian_zhu
from .poly import DiagonalField, HomogeneousPolynomial, tangent_field_basis

FD_STEP = 1e-6
MAX_HALVINGS = 30
IMAG_TOL = 1e-10


@dataclass(frozen=True)
class SolitonResult:
    X_star: DiagonalField
    coords: np.ndarray
    residual: float
    iterations: int
    converged: bool
    history: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "X_star": self.X_star.coeffs.tolist(),
            "coords": self.coords.tolist(),
            "residual": self.residual,
            "iterations": self.iterations,
            "converged": self.converged,
            "history": list(self.history),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def field_from_coords(c, basis, n: int) -> DiagonalField:
    coeffs = np.zeros(n + 1)
    for cj, b in zip(c, basis):
        coeffs = coeffs + cj * b.coeffs
    return DiagonalField(coeffs)


def invariant_map(P: HomogeneousPolynomial, c, basis,
                  ctl: SeriesControl | None = None) -> np.ndarray:
    """(F_{X(c)}(v_1), ..., F_{X(c)}(v_m)) with X(c) = sum_j c_j v_j."""
    if not basis:
        return np.zeros(0)
    X = field_from_coords(c, basis, P.n)
    out = np.empty(len(basis))
    for j, v in enumerate(basis):
        value = tian_zhu(P, v, X, ctl).value
        if abs(value.imag) > IMAG_TOL * max(1.0, abs(value)):
            raise NumericalError(f"F_X(v_{j}) = {value} should be real")
        out[j] = value.real
    return out


def fd_jacobian(func, c: np.ndarray, step: float = FD_STEP) -> np.ndarray:
    m = c.size
    J = np.empty((m, m))
    for j in range(m):
        e = np.zeros(m)
        e[j] = step
        J[:, j] = (func(c + e) - func(c - e)) / (2 * step)
    return J


def solve_soliton(P: HomogeneousPolynomial, tol: float = 1e-10, max_iter: int = 50,
                  ctl: SeriesControl | None = None, basis=None,
                  strict: bool = True) -> SolitonResult:
    """Damped Newton from X = 0.

    A step is halved (at most 30 times) until the max-norm residual drops.
    With ``strict`` a failure raises NotConverged carrying the best iterate;
    otherwise that iterate is returned with ``converged=False``.
    """
    if basis is None:
        basis = tangent_field_basis(P)
    basis = list(basis)
    m = len(basis)
    if m == 0:
        return SolitonResult(DiagonalField.zero(P.n), np.zeros(0), 0.0, 0, True, [0.0])

    def F(c):
        return invariant_map(P, c, basis, ctl)

    c = np.zeros(m)
    r = F(c)
    res = float(np.max(np.abs(r)))
    history = [res]
    it = 0
    stalled = False
    while res > tol and it < max_iter:
        J = fd_jacobian(F, c)
        try:
            step = np.linalg.solve(J, -r)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(J, -r, rcond=None)[0]
        alpha = 1.0
        for _ in range(MAX_HALVINGS + 1):
            trial = c + alpha * step
            try:
                with np.errstate(over="ignore", invalid="ignore"):
                    r_trial = F(trial)
                res_trial = float(np.max(np.abs(r_trial)))
            except HyperfutakiError:
                res_trial = np.inf
            if res_trial < res:
                break
            alpha /= 2
        else:
            stalled = True
            break
        c, r, res = trial, r_trial, res_trial
        history.append(res)
        it += 1

    result = SolitonResult(field_from_coords(c, basis, P.n), c, res, it,
                           res <= tol, history)
    if not result.converged and strict:
        why = "no descent along the Newton direction" if stalled else \
            f"{max_iter} iterations"
        raise NotConverged(f"soliton search stopped after {why}; residual {res:.3g}",
                           result)
    return result
