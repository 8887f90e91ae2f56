"""Monte Carlo and geometric cross-checks for the series in :mod:`hfuncs`.

The torus moment map pushes the Fubini-Study volume of CP^n forward to the
uniform distribution on the simplex {t_i >= 0, sum t_i = 1}.  Hence

    phi(X)                    = E[exp(s <X, t>)]
    sum_i X_i dphi/dX_i       = s E[<X, t> exp(s <X, t>)]
    D_v phi                   = s E[<v, t> exp(s <X, t>)]

with t uniform.  Uniform points are normalized i.i.d. Exp(1) vectors.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import InputError
from .hfuncs import _vec, divdiff_exp
from .poly import HomogeneousPolynomial

DEFAULT_SHARD = 250_000
MIN_SAMPLES = 1000


@dataclass(frozen=True)
class McEstimate:
    mean: complex
    stderr: float
    samples: int
    seed: int

    def to_dict(self) -> dict:
        out = asdict(self)
        m = complex(self.mean)
        out["mean"] = {"re": m.real, "im": m.imag}
        return out

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def uniform_simplex(rng: np.random.Generator, size: int, dim: int) -> np.ndarray:
    """``size`` points uniform on the simplex with ``dim`` barycentric coordinates."""
    e = rng.standard_exponential((size, dim))
    return e / e.sum(axis=1, keepdims=True)


def _estimate(values: np.ndarray, seed: int) -> McEstimate:
    N = values.size
    mean = values.mean()
    var = np.sum(np.abs(values - mean) ** 2) / (N - 1)
    return McEstimate(complex(mean), float(math.sqrt(var / N)), N, seed)


def pool(estimates, seed: int | None = None) -> McEstimate:
    """Merge shard estimates, pooling the sample variances exactly."""
    estimates = list(estimates)
    N = sum(e.samples for e in estimates)
    mean = sum(e.samples * e.mean for e in estimates) / N
    ss = sum((e.samples - 1) * e.samples * e.stderr ** 2
             + e.samples * abs(e.mean - mean) ** 2 for e in estimates)
    seed = estimates[0].seed if seed is None else seed
    return McEstimate(complex(mean), float(math.sqrt(ss / (N - 1) / N)), N, seed)


def _shard_sizes(samples: int, shard: int) -> list[int]:
    full, rest = divmod(samples, shard)
    return [shard] * full + ([rest] if rest else [])


def _mc(X, weight, n: int, d: int, samples: int, seed: int, shard: int) -> McEstimate:
    X = _vec(X)
    if X.size != n + 1:
        raise InputError(f"X must have length n + 1 = {n + 1}")
    if samples < MIN_SAMPLES:
        raise InputError(f"need at least {MIN_SAMPLES} samples")
    s = n - d + 1
    sizes = _shard_sizes(samples, shard)
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    parts = []
    for size, child in zip(sizes, children):
        t = uniform_simplex(np.random.default_rng(child), size, n + 1)
        vals = np.exp(s * (t @ X))
        if weight is not None:
            vals = s * (t @ weight) * vals
        parts.append(_estimate(vals, seed))
    return pool(parts, seed)


def mc_phi(X, n: int, d: int, samples: int = 10**6, seed: int = 0,
           shard: int = DEFAULT_SHARD) -> McEstimate:
    """Monte Carlo estimate of phi(X); bit-identical for a fixed seed and shard size."""
    return _mc(X, None, n, d, samples, seed, shard)


def mc_euler(X, v, n: int, d: int, samples: int = 10**6, seed: int = 0,
             shard: int = DEFAULT_SHARD) -> McEstimate:
    """Estimate sum_i X_i dphi/dX_i, or D_v phi when ``v`` is given."""
    X = _vec(X)
    weight = X if v is None else _vec(v)
    if weight.size != X.size:
        raise InputError("X and v must have the same length")
    return _mc(X, weight, n, d, samples, seed, shard)


def monomial_sigma(P: HomogeneousPolynomial, X) -> complex:
    """sigma(X) for a single-monomial F = Z^a, computed geometrically.

    F = 0 is the divisor sum_i a_i {Z_i = 0}; each hyperplane contributes the
    average of exp(s <X, t>) over the corresponding facet of the simplex,
    which is (n-1)! times a divided difference of exp over the remaining nodes.
    """
    if len(P.terms) != 1:
        raise InputError("monomial_sigma needs a single-monomial polynomial")
    X = _vec(X)
    a = P.terms[0][0]
    n, s = P.n, P.n - P.degree + 1
    total = 0j
    for i, ai in enumerate(a):
        if ai:
            total += ai * math.factorial(n - 1) * divdiff_exp(s * np.delete(X, i))
    return total
