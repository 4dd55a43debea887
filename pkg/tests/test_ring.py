"""Exact arithmetic, parsing, division, resultants, rational roots."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wblow.ring import (
    INF,
    ParseError,
    Poly,
    divides,
    ext_reciprocal,
    parse_poly,
    rational_roots,
    resultant,
    univariate_gcd,
)

from conftest import V2, V3, random_nonzero_poly, random_poly

F = Fraction


# --- extended rationals ------------------------------------------------------

def test_infinity_order_and_absorption():
    assert F(10 ** 9) < INF
    assert INF > F(10 ** 9)
    assert not (INF < INF)
    assert INF == INF and INF != F(1)
    assert INF + F(5) is INF
    assert F(5) + INF is INF
    assert INF * F(3) is INF
    assert min(F(7, 3), INF) == F(7, 3)


def test_reciprocal_convention():
    assert ext_reciprocal(INF) == 0
    assert ext_reciprocal(F(0)) is INF
    assert ext_reciprocal(F(2)) == F(1, 2)


def test_zero_times_infinity_rejected():
    with pytest.raises(ArithmeticError):
        INF * F(0)


# --- parsing ------------------------------------------------------------------

def test_parse_whitney_equation():
    f = parse_poly("x^2 - y^2*z", V3)
    assert f.terms == {(2, 0, 0): F(1), (0, 2, 1): F(-1)}


def test_parse_zero():
    assert parse_poly("0", ("x",)).is_zero()


def test_parse_square_matches_expansion_oracle():
    # oracle: expand (x+y)^2 by repeated naive multiplication
    x_plus_y = parse_poly("x + y", V2)
    oracle = x_plus_y * x_plus_y
    assert parse_poly("(x+y)^2", V2) == oracle
    assert oracle.terms == {(2, 0): F(1), (1, 1): F(2), (0, 2): F(1)}


def test_parse_rejects_implicit_multiplication():
    with pytest.raises(ParseError):
        parse_poly("2x", ("x",))


def test_parse_unknown_variable_offset():
    with pytest.raises(ParseError) as err:
        parse_poly("x + w", V2)
    assert err.value.offset == 4


def test_parse_rationals_and_unary_minus():
    f = parse_poly("-3/2*x + 1/4", V2)
    assert f.terms == {(1, 0): F(-3, 2), (0, 0): F(1, 4)}


def test_print_parse_round_trip(rng):
    for _ in range(40):
        f = random_poly(rng, V3)
        assert parse_poly(str(f), V3) == f


# --- arithmetic ----------------------------------------------------------------

def test_difference_of_squares():
    assert (parse_poly("x + y", V2) * parse_poly("x - y", V2)
            == parse_poly("x^2 - y^2", V2))


def test_power_zero_is_one():
    assert parse_poly("x + 1", V2) ** 0 == Poly.const(V2, 1)


def test_rational_scaling():
    assert parse_poly("2*x", V2).scale(F(3, 2)) == parse_poly("3*x", V2)


def test_variable_mismatch_raises():
    with pytest.raises(ValueError):
        parse_poly("x", ("x",)) + parse_poly("x", V2)


small = st.integers(min_value=-6, max_value=6)


@st.composite
def polys(draw, variables=V2, max_degree=3):
    n_terms = draw(st.integers(0, 4))
    terms = {}
    for _ in range(n_terms):
        exponent = tuple(draw(st.integers(0, max_degree)) for _ in variables)
        coeff = draw(small)
        terms[exponent] = terms.get(exponent, 0) + coeff
    return Poly(variables, {k: v for k, v in terms.items() if v})


@given(polys(), polys(), polys())
@settings(max_examples=120, deadline=None)
def test_ring_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


# --- derivatives -------------------------------------------------------------

def test_partial_derivatives():
    W = parse_poly("x^2 - y^2*z", V3)
    assert W.diff("x") == parse_poly("2*x", V3)
    assert W.diff("z") == parse_poly("-y^2", V3)
    assert parse_poly("x^2", V3).diff("y").is_zero()
    with pytest.raises(ValueError):
        W.diff("w")


# --- substitution ----------------------------------------------------------------

def test_blowdown_substitution_cusp():
    chart = ("x", "y", "t")
    f = parse_poly("y^2 - x^3", chart)
    t = Poly.var(chart, "t")
    images = {"y": Poly.var(chart, "y") * t ** 3, "x": Poly.var(chart, "x") * t ** 2}
    assert f.substitute(images) == parse_poly("t^6*y^2 - t^6*x^3", chart)


def test_identity_substitution():
    f = parse_poly("x^2*y - 3", V2)
    assert f.substitute({"x": Poly.var(V2, "x")}) == f


def test_translation_substitution():
    f = parse_poly("x", V2)
    assert f.substitute({"x": parse_poly("x + 1", V2)}) == parse_poly("x + 1", V2)


def test_substitution_composition(rng):
    # substitute(substitute(f, A), B) == substitute(f, B after A)
    for _ in range(25):
        f = random_poly(rng, V2, max_degree=2)
        a_images = {"x": random_poly(rng, V2, max_degree=2),
                    "y": random_poly(rng, V2, max_degree=2)}
        b_images = {"x": random_poly(rng, V2, max_degree=2),
                    "y": random_poly(rng, V2, max_degree=2)}
        composed = {name: image.substitute(b_images)
                    for name, image in a_images.items()}
        assert f.substitute(a_images).substitute(b_images) == f.substitute(composed)


# --- division ---------------------------------------------------------------------

def test_divides_examples():
    assert divides(parse_poly("x", V2), parse_poly("x^2*y", V2)) == parse_poly("x*y", V2)
    q = divides(parse_poly("x + y", V2), parse_poly("x^2 - y^2", V2))
    assert q == parse_poly("x - y", V2)
    assert parse_poly("x + y", V2) * q == parse_poly("x^2 - y^2", V2)
    assert divides(parse_poly("x", V2), parse_poly("y", V2)) is None


def test_divide_by_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        divides(Poly.zero(V2), parse_poly("x", V2))


def test_divides_round_trip(rng):
    for _ in range(60):
        f = random_nonzero_poly(rng, V2)
        q = random_poly(rng, V2)
        assert divides(f, f * q) == q


# --- resultants ----------------------------------------------------------------------

def _det_by_permutations(matrix, variables):
    """Independent determinant oracle: Leibniz expansion (small matrices)."""
    import itertools
    n = len(matrix)
    total = Poly.zero(variables)
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = Poly.const(variables, sign)
        for i in range(n):
            term = term * matrix[i][perm[i]]
        total = total + term
    return total


def test_resultant_cusp_tangent():
    # hand Sylvester for (y^2 - x^3, 2y) in y, f-rows first:
    # [1, 0, -x^3; 2, 0, 0; 0, 2, 0] -> det = -4 x^3 under this convention
    f = parse_poly("y^2 - x^3", V2)
    g = parse_poly("2*y", V2)
    x_only = ("x",)
    one = Poly.const(x_only, 1)
    x3 = parse_poly("x^3", x_only)
    oracle = _det_by_permutations(
        [[one, Poly.zero(x_only), -x3],
         [one.scale(2), Poly.zero(x_only), Poly.zero(x_only)],
         [Poly.zero(x_only), one.scale(2), Poly.zero(x_only)]], x_only)
    assert resultant(f, g, "y") == oracle == parse_poly("-4*x^3", x_only)


def test_resultant_linear_pair():
    # [1, -x; 1, x] -> det = 2x under the f-rows-first convention
    assert resultant(parse_poly("y - x", V2), parse_poly("y + x", V2), "y") \
        == parse_poly("2*x", ("x",))


def test_resultant_common_root_everywhere():
    assert resultant(parse_poly("y", V2), parse_poly("y", V2), "y").is_zero()


def test_resultant_detects_common_factor(rng):
    # res = 0 exactly when f and g share a nonconstant factor in v
    for _ in range(20):
        common = random_nonzero_poly(rng, V2, max_degree=2)
        if common.degree_in("y") == 0:
            common = common * parse_poly("y", V2)
        f = common * random_nonzero_poly(rng, V2, max_degree=2)
        g = common * random_nonzero_poly(rng, V2, max_degree=2)
        assert resultant(f, g, "y").is_zero()
    # and generically nonzero without one
    f = parse_poly("y^2 - x", V2)
    g = parse_poly("y + x^2 + 1", V2)
    assert not resultant(f, g, "y").is_zero()


def test_resultant_degree_zero_convention():
    f = parse_poly("y^2 - x^3", V2)
    c = parse_poly("x", V2)  # degree 0 in y
    assert resultant(f, c, "y") == parse_poly("x^2", ("x",))


# --- rational roots ----------------------------------------------------------------

def test_rational_roots_examples():
    x = ("x",)
    assert rational_roots(parse_poly("x^2 - 1", x)) == [F(-1), F(1)]
    assert rational_roots(parse_poly("x^2 + 1", x)) == []
    built = parse_poly("(2*x - 1)^2 * (x - 3)", x)
    assert rational_roots(built) == [F(1, 2), F(1, 2), F(3)]


def test_rational_roots_zero_multiplicity():
    f = parse_poly("x^3*(x - 2)", ("x",))
    assert rational_roots(f) == [F(0), F(0), F(0), F(2)]


def test_univariate_gcd():
    x = ("x",)
    f = parse_poly("(x - 1)^2*(x + 2)", x)
    g = parse_poly("(x - 1)*(x + 3)", x)
    assert univariate_gcd(f, g) == parse_poly("x - 1", x)


# --- truncation caps -----------------------------------------------------------------

def test_cap_truncates_and_propagates():
    f = parse_poly("1 + x + x^2 + x^3", ("x",)).with_cap(3)
    assert f == parse_poly("1 + x + x^2", ("x",)).with_cap(3)
    g = f * f
    assert g.cap == 3
    assert g.total_degree() < 3


def test_cap_lowers_under_derivative():
    f = parse_poly("x^4", ("x",)).with_cap(5)
    assert f.diff("x").cap == 4


def test_capped_substitution_requires_vanishing_images():
    f = parse_poly("x^2", V2).with_cap(4)
    with pytest.raises(ValueError):
        f.substitute({"x": parse_poly("x + 1", V2)})
    shifted = f.substitute({"x": parse_poly("x + y", V2)})
    assert shifted == parse_poly("(x + y)^2", V2).with_cap(4)


def test_chart_dimension_cap():
    with pytest.raises(ValueError):
        Poly.zero(tuple(f"v{i}" for i in range(9)))
