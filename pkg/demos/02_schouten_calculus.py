"""Polyvector fields and the Schouten bracket.

The bracket extends the Lie bracket of vector fields to all polyvectors and
detects Poisson structures: a bivector is Poisson exactly when it brackets to
zero with itself.
"""

from fractions import Fraction

from wblow import (
    Polyvector,
    is_poisson,
    is_tangent,
    jacobian_poisson,
    linearize,
    parse_poly,
    parse_polyvector,
    schouten,
    wedge,
)

V = ("x", "y", "z")
ORIGIN = (Fraction(0),) * 3

print("== the Jacobian bivector of a potential ==")
W = parse_poly("x^2 - y^2*z", V)
sigma = jacobian_poisson(W)
print("potential:", W)
print("bivector:", sigma)
print("equals the bracket of the volume with W:",
      sigma == schouten(Polyvector.volume(V), Polyvector.from_poly(W)))

print()
print("== the Poisson condition ==")
ok, certificate = is_poisson(sigma)
print("[sigma, sigma] =", certificate, "->", "Poisson" if ok else "not Poisson")
broken = parse_polyvector("z*@x^@y + x*@x^@z", V)
ok, certificate = is_poisson(broken)
print("a bivector failing Jacobi:", broken, "-> certificate", certificate)

print()
print("== coordinate brackets ==")
for i, j in ((0, 1), (0, 2), (1, 2)):
    print(f"{{{V[i]},{V[j]}}} =", sigma.bracket_of_coordinates(i, j))

print()
print("== tangency ==")
print("sigma tangent to its potential surface:", is_tangent(sigma, W))
print("x @x^@y tangent to the plane x=0:",
      is_tangent(parse_polyvector("x*@x^@y", V), parse_poly("x", V)))

print()
print("== linearization into 3d Lie algebras ==")
for text in ("x*@x^@y", "x*@y^@z", "x^2*@x^@y"):
    _, lie_class = linearize(parse_polyvector(text, V), ORIGIN)
    print(f"{text:12s} -> {lie_class}")

print()
print("== wedges ==")
euler = parse_polyvector("x*@x + y*@y + z*@z", V)
print("E ^ (x @x^@y) =", wedge(euler, parse_polyvector("x*@x^@y", V)))
