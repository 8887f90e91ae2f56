"""Complete homogeneous symmetric polynomials and their directional derivatives.

h_k(X) sums every degree-k monomial in the entries of X. Enumerating them is
exponential in k, so the library uses the power-sum recurrence instead. This
script compares the two and checks the Euler identity B_k(X, X) = k h_k.
"""
import numpy as np

from hyperfutaki import brute_h, h_dirderiv, h_sequence

X = np.array([1.0, 0.0, -1.0])
print("h_k(1, 0, -1), k = 0..6:", h_sequence(X, 6).real)
print("1/(1 - t^2) has exactly these coefficients: 1, 0, 1, 0, ...")

rng = np.random.default_rng(0)
Z = rng.normal(size=4) + 1j * rng.normal(size=4)
print("\nk   recurrence                      enumeration")
h = h_sequence(Z, 6)
for k in range(7):
    print(f"{k}   {h[k]:.12f}   {brute_h(Z, k):.12f}")

# moving X along itself scales every degree-k monomial by k
B = h_dirderiv(Z, Z, 6)
print("\nmax |B_k(Z, Z) - k h_k(Z)| =", np.max(np.abs(B - np.arange(7) * h)))
