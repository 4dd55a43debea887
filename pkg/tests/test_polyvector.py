"""Wedge, Schouten bracket, Poisson and tangency tests, linearization."""

import itertools
from fractions import Fraction

import pytest

from wblow.ring import Poly, parse_poly
from wblow.polyvector import (
    ABELIAN,
    HEISENBERG,
    SPLIT_NONABELIAN,
    LieAlgebra3,
    Polyvector,
    interior_product_df,
    is_poisson,
    is_tangent,
    jacobian_poisson,
    linearize,
    parse_polyvector,
    schouten,
    shear_polyvector,
    wedge,
)

from conftest import V3, random_poly

F = Fraction
ORIGIN = (F(0),) * 3


def pv(text: str) -> Polyvector:
    return parse_polyvector(text, V3)


def random_polyvector(rng, degree: int) -> Polyvector:
    terms = {}
    for indices in itertools.combinations(range(3), degree):
        if rng.random() < 0.8:
            coeff = random_poly(rng, V3, max_degree=2)
            if not coeff.is_zero():
                terms[indices] = coeff
    return Polyvector(degree, V3, terms)


# --- wedge -------------------------------------------------------------------

def test_wedge_basis():
    assert wedge(pv("@x"), pv("@y")) == pv("@x^@y")


def test_wedge_alternation():
    assert wedge(pv("x*@x"), pv("x*@x")).is_zero()


def test_wedge_euler_with_log_bivector():
    # (x@x + y@y + z@z) ^ (x @x^@y) = x z @x^@y^@z
    euler = pv("x*@x + y*@y + z*@z")
    assert wedge(euler, pv("x*@x^@y")) == pv("x*z*@x^@y^@z")


def test_wedge_variable_mismatch():
    with pytest.raises(ValueError):
        wedge(pv("@x"), parse_polyvector("@x", ("x", "y")))


# --- Schouten bracket -----------------------------------------------------------

def test_bracket_volume_with_whitney_potential():
    bracket = schouten(Polyvector.volume(V3),
                       Polyvector.from_poly(parse_poly("x^2 - y^2*z", V3)))
    assert bracket == pv("2*x*@y^@z - 2*y*z*@z^@x - y^2*@x^@y")


def test_bracket_commuting_scalings():
    assert schouten(pv("x*@x"), pv("y*@y")).is_zero()


def test_bracket_log_bivector_self():
    # sigma = x @x^@y is Poisson: direct expansion gives zero
    sigma = pv("x*@x^@y")
    assert schouten(sigma, sigma).is_zero()


def test_bracket_is_lie_bracket_in_degree_one():
    # [x^2 @y, y @x] = x^2 @x - 2xy @y by hand
    assert schouten(pv("x^2*@y"), pv("y*@x")) == pv("x^2*@x - 2*x*y*@y")


def test_bracket_is_derivative_pairing_on_functions():
    X = pv("x*@x + z*@y")
    f = parse_poly("x*y", V3)
    assert schouten(X, Polyvector.from_poly(f)).as_poly() == parse_poly("x*y + x*z", V3)


def test_graded_antisymmetry_and_jacobi(rng):
    # 500 randomized triples with degree sums <= 4
    checked = 0
    while checked < 500:
        a, b, c = (rng.randint(0, 3) for _ in range(3))
        if a + b + c > 4:
            continue
        xi, eta, zeta = (random_polyvector(rng, d) for d in (a, b, c))
        sign = -1 if ((a - 1) * (b - 1)) % 2 == 0 else 1
        assert schouten(xi, eta) == schouten(eta, xi).scale(sign)
        left = schouten(xi, schouten(eta, zeta))
        right = schouten(schouten(xi, eta), zeta) + schouten(
            eta, schouten(xi, zeta)).scale(1 if ((a - 1) * (b - 1)) % 2 == 0 else -1)
        assert left == right
        checked += 1


# --- Jacobian structures ----------------------------------------------------------

def test_jacobian_whitney():
    f = parse_poly("x^2 - y^2*z", V3)
    assert jacobian_poisson(f) == pv("2*x*@y^@z - 2*y*z*@z^@x - y^2*@x^@y")


def test_jacobian_constant_is_zero():
    assert jacobian_poisson(Poly.const(V3, 5)).is_zero()


def test_jacobian_xyz():
    # partials by hand: f_x = yz, f_y = xz, f_z = xy
    assert jacobian_poisson(parse_poly("x*y*z", V3)) == \
        pv("y*z*@y^@z + x*z*@z^@x + x*y*@x^@y")


def test_jacobian_always_poisson_and_tangent(rng):
    for _ in range(40):
        f = random_poly(rng, V3)
        sigma = jacobian_poisson(f)
        ok, certificate = is_poisson(sigma)
        assert ok and certificate.is_zero()
        assert interior_product_df(f, sigma).is_zero()


def test_jacobian_needs_three_variables():
    with pytest.raises(ValueError):
        jacobian_poisson(parse_poly("x*y", ("x", "y")))


# --- Poisson test -------------------------------------------------------------------

def test_is_poisson_mixed_bivector():
    # {x,y} = x, {y,z} = 1: Jacobi sums to zero, so this is Poisson
    ok, certificate = is_poisson(pv("x*@x^@y + @y^@z"))
    assert ok and certificate.is_zero()


def test_is_poisson_negative_case():
    # {x,y} = z, {x,z} = x breaks Jacobi
    ok, certificate = is_poisson(pv("z*@x^@y + x*@x^@z"))
    assert not ok and not certificate.is_zero()


def test_pencil_criterion():
    # sigma = (x + g) @y^@z + [mu, h] is Poisson iff dg ^ dh = 0
    for g_text, h_text in (("y^2 + z^2", "(y^2 + z^2)^2"), ("y^2", "z^3")):
        g = parse_poly(g_text, V3)
        h = parse_poly(h_text, V3)
        sigma = Polyvector(2, V3, {(1, 2): parse_poly("x", V3) + g}) + jacobian_poisson(h)
        jacobian_det = g.diff("y") * h.diff("z") - g.diff("z") * h.diff("y")
        assert is_poisson(sigma)[0] == jacobian_det.is_zero()


# --- tangency -------------------------------------------------------------------------

def test_tangency_examples():
    assert is_tangent(pv("x*@x^@y"), parse_poly("x", V3))
    assert not is_tangent(pv("@x^@y"), parse_poly("x", V3))
    W = parse_poly("x^2 - y^2*z", V3)
    assert is_tangent(jacobian_poisson(W), W)


# --- linearization ----------------------------------------------------------------------

def test_linearize_table():
    for text, expected in (("x*@x^@y", SPLIT_NONABELIAN),
                           ("x*@y^@z", HEISENBERG),
                           ("x^2*@x^@y", ABELIAN)):
        algebra, lie_class = linearize(pv(text), ORIGIN)
        assert lie_class == expected


def test_linearize_requires_vanishing():
    with pytest.raises(ValueError):
        linearize(pv("@x^@y"), ORIGIN)


def test_linearize_away_from_origin():
    sigma = pv("(x - 1)*@x^@y")
    _, lie_class = linearize(sigma, (F(1), F(0), F(0)))
    assert lie_class == SPLIT_NONABELIAN


def test_jacobi_validation_negative():
    with pytest.raises(ValueError):
        LieAlgebra3(((F(0), F(0), F(1)),
                     (F(1), F(0), F(0)),
                     (F(0), F(0), F(1))))


def _random_linear_change(rng):
    while True:
        rows = [[F(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
        det = (rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
               - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
               + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0]))
        if det != 0:
            return rows


def _apply_linear_change_to_bivector(sigma, rows):
    """Transport under new coordinates u = M x, by the bracket rule."""
    variables = sigma.variables
    n = 3
    # inverse of M over the rationals
    def inverse(m):
        identity = [[F(int(i == j)) for j in range(n)] for i in range(n)]
        aug = [list(m[i]) + identity[i] for i in range(n)]
        for col in range(n):
            pivot = next(r for r in range(col, n) if aug[r][col] != 0)
            aug[col], aug[pivot] = aug[pivot], aug[col]
            scale = aug[col][col]
            aug[col] = [v / scale for v in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    factor = aug[r][col]
                    aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
        return [row[n:] for row in aug]

    inv = inverse(rows)
    # x_i = sum_j inv[i][j] u_j; {u_k, u_l} = sum_ij M_ki M_lj {x_i, x_j}
    images = {variables[i]: sum(
        (Poly.var(variables, variables[j]).scale(inv[i][j]) for j in range(n)),
        Poly.zero(variables)) for i in range(n)}
    terms = {}
    for k in range(n):
        for l in range(k + 1, n):
            total = Poly.zero(variables)
            for i in range(n):
                for j in range(n):
                    coefficient = rows[k][i] * rows[l][j]
                    if coefficient == 0:
                        continue
                    total = total + sigma.bracket_of_coordinates(i, j).scale(coefficient)
            total = total.substitute(images)
            if not total.is_zero():
                terms[(k, l)] = total
    return Polyvector(2, variables, terms)


def test_lie_class_invariant_under_basis_change(rng):
    models = (("x*@x^@y", SPLIT_NONABELIAN), ("x*@y^@z", HEISENBERG),
              ("x^2*@x^@y", ABELIAN))
    for text, expected in models:
        sigma = pv(text)
        for _ in range(20):
            rows = _random_linear_change(rng)
            moved = _apply_linear_change_to_bivector(sigma, rows)
            _, lie_class = linearize(moved, ORIGIN)
            assert lie_class == expected, (text, rows)


# --- shears --------------------------------------------------------------------------------

def test_shear_straightens_vanishing_surface():
    # transporting (x + A) @y^@z through u = x + A gives
    # u @y^@z + u A_y @x^@z - u A_z @x^@y
    A = parse_poly("y^2 + z^2", V3)
    sigma = Polyvector(2, V3, {(1, 2): parse_poly("x", V3) + A})
    moved = shear_polyvector(sigma, "x", A)
    expected = (Polyvector(2, V3, {(1, 2): parse_poly("x", V3)})
                + Polyvector(2, V3, {(0, 2): parse_poly("x", V3) * A.diff("y")})
                - Polyvector(2, V3, {(0, 1): parse_poly("x", V3) * A.diff("z")}))
    assert moved == expected


def test_shear_round_trip(rng):
    for _ in range(20):
        sigma = random_polyvector(rng, 2)
        shift = random_poly(rng, V3, max_degree=2)
        if shift.degree_in("x") > 0:
            continue
        moved = shear_polyvector(sigma, "x", shift)
        back = shear_polyvector(moved, "x", -shift)
        assert back == sigma


def test_parse_polyvector_round_trip(rng):
    for _ in range(30):
        degree = rng.randint(0, 3)
        xi = random_polyvector(rng, degree)
        assert parse_polyvector(str(xi), V3) == xi


def test_parse_polyvector_rejects_mixed_degree():
    with pytest.raises(ValueError):
        parse_polyvector("@x + @x^@y", V3)
