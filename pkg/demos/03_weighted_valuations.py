"""Weighted centres as valuations.

A centre assigns an exponent (possibly infinite) to each chart variable; the
reciprocal weights grade every polynomial and polyvector by a rational order
of vanishing.  The running example is the Whitney umbrella and its bivector
under three different weightings.
"""

from wblow import jacobian_poisson, parse_centre, parse_poly

V = ("x", "y", "z")

print("== numerical bookkeeping of a centre ==")
centre = parse_centre("x:2 y:3 z:inf")
data = centre.weight_data()
print("exponents (2, 3, inf):")
print("  weights (decreasing):", data.weight_seq)
print("  weight sums kappa:", data.kappa)
print("  gcd of the weights:", data.gcd)
print("  reduced integer weights:", data.reduced_weight_seq)
print("  support (codimension-two axis):", centre.support())

print()
print("== orders of functions ==")
f = parse_poly("x^5 + x^2*y^4*z^5", V)
order, witness = centre.ord_poly_with_witness(f)
print(f"ord({f}) = {order}, achieved by the monomial {witness}")
axis = parse_centre("x:1 y:1 z:inf")
order, witness = axis.ord_poly_with_witness(f)
print(f"unweighted axis instead gives {order}, achieved by {witness}")

print()
print("== the Whitney order table ==")
W = parse_poly("x^2 - y^2*z", V)
sigma = jacobian_poisson(W)
for spec in ("x:1 y:1 z:1", "x:1 y:1 z:inf", "x:2 y:3 z:3"):
    c = parse_centre(spec)
    print(f"centre [{spec}]")
    print("   ord W =", c.ord_poly(W), "   lt W =", c.leading_term(W))
    print("   ord sigma =", c.ord_polyvector(sigma))
    print("   lt sigma =", c.leading_term(sigma))

print()
print("== Euler fields ==")
c = parse_centre("x:2 y:3 z:3")
print("Euler field of (2,3,3):", c.euler_field())
print("its order:", c.ord_polyvector(c.euler_field()))

print()
print("== cutting a centre down to a point ==")
line = parse_centre("x:1 y:inf z:inf")
print(f"b-completion of [{line}] at b = 2:", line.b_completion(2))
