"""Cross-check suite run by ``hyperfutaki check``.

Every entry compares two independent routes to the same number and records
both values, the error and the tolerance it was held to.
"""

from __future__ import annotations

import numpy as np

from .hfuncs import (
    BRUTE_MAX_K,
    BRUTE_MAX_N,
    SeriesControl,
    _control,
    brute_h,
    h_sequence,
    phi_bundle,
    phi_divdiff,
    phi_divdiff_dirderiv,
)
from .invariant import futaki, sigma, sigma_dirderiv, tian_zhu
from .oracle import mc_euler, mc_phi, monomial_sigma
from .poly import DiagonalField, HomogeneousPolynomial, tangent_field_basis, weight_of

FD_STEP = 1e-5


def rel_err(a, b, floor: float = 0.0) -> float:
    scale = max(abs(a), abs(b), floor)
    return 0.0 if scale == 0 else abs(a - b) / scale


def _entry(name, computed, reference, err, tol, **extra):
    out = {"name": name, "computed": complex(computed), "reference": complex(reference),
           "error": float(err), "tol": tol, "passed": bool(err <= tol)}
    out.update(extra)
    return out


def _pick_fields(P, seed):
    rng = np.random.default_rng(seed)
    raw = rng.uniform(-1.0, 1.0, P.n + 1)
    X_free = DiagonalField(raw - raw.mean())
    basis = tangent_field_basis(P)
    if basis:
        c = rng.uniform(-0.5, 0.5, len(basis))
        X_tan = DiagonalField(sum(cj * b.coeffs for cj, b in zip(c, basis)))
    else:
        X_tan = DiagonalField.zero(P.n)
    return X_free, X_tan, basis


def run_checks(P: HomogeneousPolynomial, X=None, samples: int = 200_000, seed: int = 0,
               ctl: SeriesControl | None = None) -> list[dict]:
    n, d = P.n, P.degree
    s = n - d + 1
    ctl = _control(n, d, ctl)
    X_free, X_tan, basis = _pick_fields(P, seed)
    if X is not None:
        X_free = X_tan = X
    results = []

    if n <= BRUTE_MAX_N:
        h = h_sequence(X_free, 6)
        for k in range(min(6, BRUTE_MAX_K) + 1):
            b = brute_h(X_free, k)
            results.append(_entry(f"h_{k} recurrence vs enumeration", h[k], b,
                                  rel_err(h[k], b), 1e-12))

    bundle = phi_bundle(X_free, None, n, d, ctl)
    if s != 0:
        dd = phi_divdiff(X_free, n, d)
        results.append(_entry("phi series vs divided difference", bundle.phi, dd,
                              rel_err(bundle.phi, dd), 1e-9))
        de = phi_divdiff_dirderiv(X_free, X_free, n, d)
        results.append(_entry("euler series vs Frechet derivative", bundle.euler, de,
                              rel_err(bundle.euler, de, 1e-300), 1e-9))

    est = mc_phi(X_free, n, d, samples=samples, seed=seed)
    results.append(_entry("phi series vs Monte Carlo", bundle.phi, est.mean,
                          abs(bundle.phi - est.mean), 4 * est.stderr, stderr=est.stderr))
    est = mc_euler(X_free, None, n, d, samples=samples, seed=seed + 1)
    results.append(_entry("euler series vs Monte Carlo", bundle.euler, est.mean,
                          abs(bundle.euler - est.mean), 4 * est.stderr, stderr=est.stderr))

    zero = DiagonalField.zero(n)
    lam = weight_of(P, X_tan).value
    for j, v in enumerate(basis):
        tz = tian_zhu(P, v, zero, ctl).value
        fu = futaki(P, v)
        # both sides are O(eps) when kappa = 0; measure against the natural scale
        natural = abs(s) ** (n - 1) * d * float(np.max(np.abs(v.coeffs)))
        results.append(_entry(f"F_0(v_{j}) vs Futaki closed form", tz, fu,
                              rel_err(tz, fu, natural), 1e-10))
        kappa = weight_of(P, v).value
        an = sigma_dirderiv(X_tan, v, kappa, lam, n, d, ctl)
        hstep = FD_STEP
        fd = (sigma(X_tan + hstep * v, lam + hstep * kappa, n, d, ctl)
              - sigma(X_tan + (-hstep) * v, lam - hstep * kappa, n, d, ctl)) / (2 * hstep)
        # floor: FD round-off is ~1e-11 |sigma| when D_v sigma itself is ~0
        floor = 1e-4 * abs(sigma(X_tan, lam, n, d, ctl))
        results.append(_entry(f"D_v sigma vs finite difference (v_{j})", an, fd,
                              rel_err(an, fd, floor), 1e-6))

    if len(P.terms) == 1:
        sg = sigma(X_tan, lam, n, d, ctl)
        geo = monomial_sigma(P, X_tan)
        results.append(_entry("sigma vs facet integrals", sg, geo, rel_err(sg, geo), 1e-9))
    return results
