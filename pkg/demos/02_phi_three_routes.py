"""One weighted volume computed three independent ways.

phi(X) is the average of exp(s <X, t>) over the uniform simplex, with
s = n - d + 1. The library computes it from a truncated series with a
rigorous tail bound, from a divided difference of exp (a matrix exponential),
and by Monte Carlo. All three should agree.
"""
import math

import numpy as np

from hyperfutaki import mc_phi, phi_bundle, phi_divdiff

n, d = 2, 1
X = np.array([1.0, 0.0, -1.0])
closed = (math.e ** 2 - 2 + math.e ** -2) / 4

series = phi_bundle(X, None, n, d)
print(f"closed form      {closed:.15f}")
print(f"series           {series.phi.real:.15f}  ({series.terms_used} terms, "
      f"tail <= {series.tail_bound:.1e})")
print(f"divided diff     {phi_divdiff(X, n, d).real:.15f}")
est = mc_phi(X, n, d, samples=10**6, seed=1)
print(f"Monte Carlo      {est.mean.real:.6f} +/- {est.stderr:.6f}")

# a larger random instance: the series needs more terms but the bound still holds
rng = np.random.default_rng(3)
x = rng.uniform(-3, 3, 6)
Y = x - x.mean()
b = phi_bundle(Y, None, 5, 2)
print(f"\nn=5, d=2, max|X|={np.abs(Y).max():.2f}: series {b.phi.real:.12g} "
      f"with {b.terms_used} terms, divided difference {phi_divdiff(Y, 5, 2).real:.12g}")
