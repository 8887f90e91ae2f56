"""The series phi(X) = sum_k n! s^k h_k(X) / (n+k)! and its derivatives.

``h_k`` is the complete homogeneous symmetric polynomial of degree ``k`` and
``s = n - d + 1``.  Two evaluation routes are provided:

* the truncated series, with ``h_k`` from the power-sum recurrence
  ``k h_k = sum_{m=1}^k p_m h_{k-m}`` and a rigorous factorial tail bound;
* the divided difference ``n! [sX_0, ..., sX_n] exp``, read off the corner of
  the exponential of a bidiagonal matrix.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm, expm_frechet

from .errors import BudgetExceeded, InputError, ScaleExceeded, ZeroScale

BRUTE_MAX_K = 8
BRUTE_MAX_N = 5


def _vec(x) -> np.ndarray:
    c = getattr(x, "coeffs", x)
    c = np.asarray(c)
    if c.ndim != 1:
        raise InputError("expected a vector")
    return c


def brute_h(X, k: int):
    """Sum of all degree-``k`` monomials in the entries of ``X``, by enumeration.

    Test oracle only, limited to k <= 8 and n <= 5.
    """
    X = _vec(X)
    if k > BRUTE_MAX_K or X.size - 1 > BRUTE_MAX_N:
        raise ScaleExceeded(f"brute_h limited to k <= {BRUTE_MAX_K}, n <= {BRUTE_MAX_N}")
    if k < 0:
        raise InputError("k must be >= 0")
    total = 0
    for idx in itertools.combinations_with_replacement(range(X.size), k):
        term = 1
        for i in idx:
            term = term * X[i]
        total = total + term
    return total


def power_sums(X, K: int) -> np.ndarray:
    """p_0..p_K with p_m = sum_i X_i^m."""
    X = _vec(X)
    dtype = complex if np.iscomplexobj(X) else float
    powers = np.ones((K + 1, X.size), dtype=dtype)
    for m in range(1, K + 1):
        powers[m] = powers[m - 1] * X
    return powers.sum(axis=1)


def h_sequence(X, K: int) -> np.ndarray:
    """h_0..h_K of the entries of X."""
    X = _vec(X)
    if K < 0:
        raise InputError("K must be >= 0")
    p = power_sums(X, K)
    h = np.zeros(K + 1, dtype=p.dtype)
    h[0] = 1
    for k in range(1, K + 1):
        h[k] = np.dot(p[1:k + 1], h[k - 1::-1]) / k
    return h


def h_dirderiv(X, v, K: int) -> np.ndarray:
    """B_k = sum_i v_i dh_k/dX_i for k = 0..K.

    Uses B_k = sum_{m=1}^k w_m h_{k-m} with w_m = sum_i v_i X_i^(m-1).
    """
    X, v = _vec(X), _vec(v)
    if X.shape != v.shape:
        raise InputError("X and v must have the same length")
    h = h_sequence(X, K)
    dtype = np.result_type(h.dtype, v.dtype)
    w = np.zeros(K + 1, dtype=dtype)
    xp = np.ones_like(X, dtype=np.result_type(X.dtype, float))
    for m in range(1, K + 1):
        w[m] = np.dot(v, xp)
        xp = xp * X
    B = np.zeros(K + 1, dtype=dtype)
    for k in range(1, K + 1):
        B[k] = np.dot(w[1:k + 1], h[k - 1::-1])
    return B


@dataclass(frozen=True)
class SeriesControl:
    s: float
    epsilon: float = 1e-12
    max_terms: int = 512

    def __post_init__(self):
        if not self.epsilon > 0:
            raise InputError("epsilon must be positive")
        if self.max_terms < 1:
            raise InputError("max_terms must be >= 1")

    @classmethod
    def for_hypersurface(cls, n: int, d: int, **kwargs) -> "SeriesControl":
        return cls(s=float(n - d + 1), **kwargs)


@dataclass(frozen=True)
class PhiBundle:
    phi: complex
    dphi_v: complex
    euler: complex
    deuler_v: complex
    terms_used: int
    tail_bound: float


def exp_tail(x: float, J: int) -> float:
    """Upper bound for sum_{j >= J} x^j / j!  (x >= 0).

    Geometric majorant x^J/J! / (1 - x/(J+1)); infinite when J + 1 <= x.
    """
    if J <= 0:
        return math.exp(x) if x < 700 else math.inf
    if x == 0:
        return 0.0
    if J + 1 <= x:
        return math.inf
    log_lead = J * math.log(x) - math.lgamma(J + 1)
    return math.exp(log_lead) / (1.0 - x / (J + 1))


def series_tails(x: float, sv: float, K: int) -> dict:
    """Tail bounds of the four series truncated after index K.

    ``x = |s| max|X_i|`` and ``sv = |s| max|v_i|``.  From |h_k| <= C(n+k, n) R^k
    each term of phi is at most x^k/k!, and from Euler's relation applied to
    h_k(R, ..., R) the directional terms are at most sv * k x^(k-1)/k!.
    """
    e_K = exp_tail(x, K)
    return {
        "phi": exp_tail(x, K + 1),
        "euler": x * e_K,
        "dphi_v": sv * e_K,
        "deuler_v": sv * (x * exp_tail(x, K - 1) + e_K),
    }


def choose_terms(x: float, sv: float, ctl: SeriesControl) -> tuple[int, float]:
    """Smallest K >= 1 with every tail bound <= epsilon."""
    K = 1
    while True:
        bound = max(series_tails(x, sv, K).values())
        if bound <= ctl.epsilon:
            return K, bound
        if K >= ctl.max_terms:
            raise BudgetExceeded(
                f"series needs more than {ctl.max_terms} terms (|s| max|X| = {x:.3g})")
        K += 1


def series_coefficients(n: int, s: float, K: int) -> np.ndarray:
    """c_k = n! s^k / (n+k)!, built as a running product."""
    c = np.empty(K + 1)
    c[0] = 1.0
    for k in range(1, K + 1):
        c[k] = c[k - 1] * s / (n + k)
    return c


def _control(n: int, d: int, ctl: SeriesControl | None) -> SeriesControl:
    if ctl is None:
        return SeriesControl.for_hypersurface(n, d)
    if ctl.s != n - d + 1:
        raise InputError(f"SeriesControl.s = {ctl.s} but n - d + 1 = {n - d + 1}")
    return ctl


def phi_bundle(X, v, n: int, d: int, ctl: SeriesControl | None = None) -> PhiBundle:
    """phi(X), D_v phi, sum_i X_i dphi/dX_i and its v-derivative."""
    if n < 2:
        raise InputError("n must be >= 2")
    ctl = _control(n, d, ctl)
    X = _vec(X)
    v = np.zeros_like(X) if v is None else _vec(v)
    if X.size != n + 1 or v.size != n + 1:
        raise InputError(f"vectors must have length n + 1 = {n + 1}")
    s = ctl.s
    x = abs(s) * float(np.max(np.abs(X)))
    sv = abs(s) * float(np.max(np.abs(v)))
    if not (math.isfinite(x) and math.isfinite(sv)):
        raise InputError("non-finite field coefficients")
    K, bound = choose_terms(x, sv, ctl)
    c = series_coefficients(n, s, K)
    h = h_sequence(X, K)
    B = h_dirderiv(X, v, K)
    k = np.arange(K + 1)
    return PhiBundle(
        phi=complex(np.dot(c, h)),
        dphi_v=complex(np.dot(c, B)),
        euler=complex(np.dot(c * k, h)),
        deuler_v=complex(np.dot(c * k, B)),
        terms_used=K,
        tail_bound=bound,
    )


def _node_matrix(X, n: int, s: float) -> np.ndarray:
    X = _vec(X)
    if X.size != n + 1:
        raise InputError(f"X must have length n + 1 = {n + 1}")
    dtype = complex if np.iscomplexobj(X) else float
    return np.diag((s * X).astype(dtype)) + np.diag(np.ones(n, dtype=dtype), 1)


def divdiff_exp(nodes) -> complex:
    """Divided difference exp[y_0, ..., y_m] over arbitrary (possibly repeated) nodes."""
    y = _vec(nodes)
    m = y.size - 1
    dtype = complex if np.iscomplexobj(y) else float
    A = np.diag(y.astype(dtype)) + np.diag(np.ones(m, dtype=dtype), 1)
    return complex(expm(A)[0, m])


def phi_divdiff(X, n: int, d: int) -> complex:
    """phi(X) as n! times the divided difference of exp over the nodes s*X_i.

    For the bidiagonal matrix with the nodes on the diagonal and ones above
    it, the top-right entry of exp(A) is that divided difference; repeated
    nodes need no special treatment.
    """
    s = n - d + 1
    if s == 0:
        raise ZeroScale("s = n - d + 1 = 0; use phi_bundle (phi is identically 1)")
    X = _vec(X)
    if X.size != n + 1:
        raise InputError(f"X must have length n + 1 = {n + 1}")
    return math.factorial(n) * divdiff_exp(s * X)


def phi_divdiff_dirderiv(X, direction, n: int, d: int) -> complex:
    """Derivative of :func:`phi_divdiff` along ``direction``.

    Taken from the Frechet derivative of the matrix exponential; with
    ``direction = X`` this is the Euler sum sum_i X_i dphi/dX_i.
    """
    s = n - d + 1
    if s == 0:
        raise ZeroScale("s = n - d + 1 = 0")
    A = _node_matrix(X, n, s)
    u = _vec(direction)
    if u.size != n + 1:
        raise InputError(f"direction must have length n + 1 = {n + 1}")
    E = np.diag((s * u).astype(np.result_type(A.dtype, u.dtype)))
    if E.dtype != A.dtype:
        A = A.astype(E.dtype)
    _, L = expm_frechet(A, E)
    return complex(math.factorial(n) * L[0, n])
