"""Tour of the exact arithmetic layer.

Everything in wblow is computed over the rationals: sparse polynomials with
Fraction coefficients, exact division, Sylvester resultants, and rational
root finding.  No floating point appears anywhere.
"""

from fractions import Fraction

from wblow import Poly, divides, parse_poly, rational_roots, resultant

V = ("x", "y", "z")

print("== parsing and printing ==")
W = parse_poly("x^2 - y^2*z", V)
print("the Whitney umbrella equation:", W)
print("round trip parses to the same object:", parse_poly(str(W), V) == W)

print()
print("== exact arithmetic ==")
f = parse_poly("x + y", ("x", "y"))
g = parse_poly("x - y", ("x", "y"))
print("(x+y)(x-y) =", f * g)
print("(x+y)^3 =", f ** 3)
print("scaling by 3/2:", parse_poly("2*x", ("x", "y")).scale(Fraction(3, 2)))

print()
print("== derivatives (the ingredients of Jacobian brackets) ==")
for v in V:
    print(f"d/d{v} of {W} =", W.diff(v))

print()
print("== blowdown substitutions ==")
chart = ("x", "y", "t")
cusp = parse_poly("y^2 - x^3", chart)
t = Poly.var(chart, "t")
image = {"y": Poly.var(chart, "y") * t ** 3, "x": Poly.var(chart, "x") * t ** 2}
print("cusp after x -> t^2 x, y -> t^3 y:", cusp.substitute(image))

print()
print("== exact division ==")
print("(x^2 - y^2) / (x + y) =", divides(f, parse_poly("x^2 - y^2", ("x", "y"))))
print("x divides y?", divides(parse_poly("x", ("x", "y")),
                              parse_poly("y", ("x", "y"))))

print()
print("== resultants and rational roots ==")
print("res_y(y^2 - x^3, 2y) =", resultant(parse_poly("y^2 - x^3", ("x", "y")),
                                          parse_poly("2*y", ("x", "y")), "y"))
poly = parse_poly("(2*x - 1)^2*(x - 3)", ("x",))
print("roots of (2x-1)^2 (x-3):", rational_roots(poly))

print()
print("== truncated power series ==")
series = parse_poly("1 + x + x^2 + x^3 + x^4", ("x",)).with_cap(4)
print("capped at degree 4:", series)
print("its square keeps the cap:", series * series)
