"""Tian-Zhu invariant of a hypersurface via sigma(X) and its log-derivative.

    sigma(X) = (d - lambda s / n) phi(X) + (d / n) sum_i X_i dphi/dX_i
    F_X(v)   = -s^(n-1) d (kappa + D_v sigma / sigma)

with s = n - d + 1, kappa and lambda the weights of v and X on F.  Along
X + t v the weight of X moves as lambda + t kappa, which is what makes the
X = 0 value collapse to the Futaki invariant.
"""

from __future__ import annotations

import cmath
import json
from dataclasses import dataclass, field

from .errors import SigmaZero
from .hfuncs import PhiBundle, SeriesControl, _control, phi_bundle
from .poly import HomogeneousPolynomial, as_field, weight_of

SIGMA_ZERO_TOL = 1e-12
NON_FANO = "NonFano: n - d + 1 <= 0, first Chern class is not positive"


def _sigma_from_bundle(b: PhiBundle, lam, n, d, s):
    return (d - lam * s / n) * b.phi + (d / n) * b.euler


def _dsigma_from_bundle(b: PhiBundle, kappa, lam, n, d, s):
    return (-kappa * s / n) * b.phi + (d - lam * s / n) * b.dphi_v + (d / n) * b.deuler_v


def sigma(X, lam, n: int, d: int, ctl: SeriesControl | None = None) -> complex:
    ctl = _control(n, d, ctl)
    b = phi_bundle(X, None, n, d, ctl)
    return complex(_sigma_from_bundle(b, lam, n, d, ctl.s))


def sigma_dirderiv(X, v, kappa, lam, n: int, d: int,
                   ctl: SeriesControl | None = None) -> complex:
    """D_v sigma along (X + t v, lambda + t kappa); the caller divides by sigma."""
    ctl = _control(n, d, ctl)
    b = phi_bundle(X, v, n, d, ctl)
    return complex(_dsigma_from_bundle(b, kappa, lam, n, d, ctl.s))


def _check_sigma(value: complex, d: int):
    if abs(value) <= SIGMA_ZERO_TOL * max(1, d):
        raise SigmaZero(f"sigma(X) = {value} vanishes; invariant undefined at this X")


def normalization_constant(X, lam, n: int, d: int,
                           ctl: SeriesControl | None = None) -> complex:
    """c_X = log(d / sigma(X)) on the principal branch."""
    sig = sigma(X, lam, n, d, ctl)
    _check_sigma(sig, d)
    return cmath.log(d / sig)


def _complex_json(z):
    z = complex(z)
    return {"re": z.real, "im": z.imag}


@dataclass(frozen=True)
class InvariantReport:
    value: complex
    kappa: complex
    lam: complex
    phi: complex
    sigma: complex
    dsigma_v: complex
    c_X: complex
    terms_used: int
    tail_bound: float
    warnings: list = field(default_factory=list)

    def to_dict(self) -> dict:
        value = complex(self.value)
        return {
            "value_re": value.real,
            "value_im": value.imag,
            "kappa": _complex_json(self.kappa),
            "lambda": _complex_json(self.lam),
            "phi": _complex_json(self.phi),
            "sigma": _complex_json(self.sigma),
            "dsigma_v": _complex_json(self.dsigma_v),
            "c_X": _complex_json(self.c_X),
            "terms_used": self.terms_used,
            "tail_bound": self.tail_bound,
            "warnings": list(self.warnings),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def tian_zhu(P: HomogeneousPolynomial, v, X, ctl: SeriesControl | None = None,
             tol: float | None = None) -> InvariantReport:
    """F_X(v) for diagonal fields v, X tangent to the hypersurface P = 0."""
    n, d = P.n, P.degree
    ctl = _control(n, d, ctl)
    v, X = as_field(v), as_field(X)
    kw = {} if tol is None else {"tol": tol}
    kappa = weight_of(P, v, **kw).value
    lam = weight_of(P, X, **kw).value
    s = ctl.s
    b = phi_bundle(X, v, n, d, ctl)
    sig = _sigma_from_bundle(b, lam, n, d, s)
    _check_sigma(sig, d)
    dsig = _dsigma_from_bundle(b, kappa, lam, n, d, s)
    value = -(s ** (n - 1)) * d * (kappa + dsig / sig) + 0.0
    warnings = [NON_FANO] if s <= 0 else []
    return InvariantReport(
        value=complex(value), kappa=kappa, lam=lam, phi=b.phi,
        sigma=complex(sig), dsigma_v=complex(dsig),
        c_X=cmath.log(d / sig), terms_used=b.terms_used,
        tail_bound=b.tail_bound, warnings=warnings,
    )


def futaki(P: HomogeneousPolynomial, v, tol: float | None = None) -> complex:
    """Closed form -s^(n-1) (n+1)(d-1)/n * kappa."""
    n, d = P.n, P.degree
    kw = {} if tol is None else {"tol": tol}
    kappa = weight_of(P, as_field(v), **kw).value
    return complex(-((n - d + 1) ** (n - 1)) * (n + 1) * (d - 1) / n * kappa + 0.0)
