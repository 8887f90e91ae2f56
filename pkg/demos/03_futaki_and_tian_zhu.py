"""Futaki and Tian-Zhu invariants on a few hypersurfaces.

A diagonal field v = sum c_i Z_i d/dZ_i is tangent to {F = 0} when every
monomial of F has the same weight <a, c>. The Fermat cubic admits no such
field; the quadric admits a 2-dimensional family on which the Futaki
invariant vanishes, as it must for a Kahler-Einstein hypersurface.
"""
from hyperfutaki import (
    DiagonalField,
    NotTangent,
    futaki,
    parse_polynomial,
    tangent_field_basis,
    tian_zhu,
    weight_of,
)

for text, n in [("Z0^3+Z1^3+Z2^3+Z3^3", 3), ("Z0*Z3+Z1*Z2", 3), ("Z0*Z1^2", 3)]:
    P = parse_polynomial(text, n)
    basis = tangent_field_basis(P)
    print(f"{text}: tangent family of dimension {len(basis)}")
    for b in basis:
        kappa, value = (round(z.real, 12) + 0.0 for z in (weight_of(P, b).value, futaki(P, b)))
        print(f"   v = {b.coeffs.round(4)}  kappa = {kappa:+.4f}  Futaki = {value:+.6f}")

P = parse_polynomial("Z0^3+Z1^3+Z2^3+Z3^3", 3)
try:
    weight_of(P, DiagonalField([1, -1, 0, 0]))
except NotTangent as exc:
    print("\nFermat cubic with v = (1, -1, 0, 0):", exc)

# away from X = 0 the Tian-Zhu invariant differs, but at X = 0 it is the Futaki invariant
P = parse_polynomial("Z0*Z1^2", 3)
v = DiagonalField([3, -1, -1, -1])
for t in (0.0, 0.2, 0.5):
    r = tian_zhu(P, v, DiagonalField([t, -t, t, -t]))
    print(f"X = {t}*(1,-1,1,-1): F_X(v) = {r.value.real:+.8f}  sigma = {r.sigma.real:.6f}")
