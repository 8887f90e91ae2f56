"""Searching for the soliton field X with F_X(v) = 0 on the whole tangent family.

Newton's method runs on the coordinates of X in an orthonormal basis of the
tangent family. A Fano monomial has no root (the iteration reports failure
with its best iterate). A formal monomial of degree beyond n + 1 has one.
"""
from hyperfutaki import NotConverged, parse_polynomial, solve_soliton, tian_zhu, tangent_field_basis

for text, n in [("Z0^3+Z1^3+Z2^3+Z3^3", 3), ("Z0*Z3+Z1*Z2", 3)]:
    r = solve_soliton(parse_polynomial(text, n))
    print(f"{text}: X* = {r.X_star.coeffs}, iterations {r.iterations}")

P = parse_polynomial("Z0^2*Z1^2*Z2^3", 2)
r = solve_soliton(P, tol=1e-12)
print(f"\nZ0^2*Z1^2*Z2^3: X* = {r.X_star.coeffs.round(6)} after {r.iterations} steps")
print("residual history:", [f"{h:.1e}" for h in r.history])
fresh = max(abs(tian_zhu(P, b, r.X_star).value) for b in tangent_field_basis(P))
print(f"re-evaluated residual {fresh:.1e}")

try:
    solve_soliton(parse_polynomial("Z0*Z1^2", 3), max_iter=15)
except NotConverged as exc:
    print(f"\nZ0*Z1^2: {exc}; best residual {exc.result.residual:.3f}")
