"""Invariant constraints, lex order, monomial maxima, plane-curve invariants."""

import itertools
from fractions import Fraction

import pytest

from wblow.ring import INF, Poly, parse_poly
from wblow.centre import Centre, parse_centre
from wblow.invariant import (
    INVALID,
    InvariantSeq,
    VALID,
    canonical_numerics,
    centre_from_plane_invariant,
    is_admissible,
    lex_compare,
    max_monomial_centre,
    plane_curve_invariant,
    validate_invariant,
)

from conftest import V2, V3

F = Fraction


def seq(text: str) -> InvariantSeq:
    return InvariantSeq.parse(text)


# --- validation -----------------------------------------------------------------

def test_validate_examples():
    assert validate_invariant(seq("2,3,9/2")).status == VALID
    failed = validate_invariant(seq("2,3,11/2"))
    assert failed.status == INVALID and failed.witness == 3
    failed = validate_invariant(seq("3/2,2"))
    assert failed.status == INVALID and failed.witness == 1


def test_validate_first_entry_integer():
    # a valid sequence starts with an integer
    assert validate_invariant(seq("7/2")).status == INVALID
    assert validate_invariant(seq("4")).status == VALID


def test_validate_rejects_non_monotone():
    with pytest.raises(ValueError):
        seq("3,2")


GRID = sorted({F(p, q) for q in range(1, 7) for p in range(1, 12 * q + 1)})


def _valid_sequences(length: int):
    """All weakly increasing valid sequences over the small grid."""
    out = []

    def extend(prefix):
        if len(prefix) == length:
            out.append(tuple(prefix))
            return
        start = prefix[-1] if prefix else GRID[0]
        for value in GRID:
            if value < start:
                continue
            candidate = prefix + [value]
            if validate_invariant(InvariantSeq(tuple(candidate))).status == VALID:
                extend(candidate)

    extend([])
    return out


def test_two_prefix_forces_integer():
    # after a prefix of 2s the next entry of a valid sequence is an integer
    for a2 in GRID:
        if a2 < 2:
            continue
        status = validate_invariant(InvariantSeq((F(2), a2))).status
        assert (status == VALID) == (a2.denominator == 1), a2
    for a3 in GRID:
        if a3 < 2:
            continue
        status = validate_invariant(InvariantSeq((F(2), F(2), a3))).status
        assert (status == VALID) == (a3.denominator == 1), a3


def test_two_three_prefix_forces_z_or_3halves():
    allowed = {a for a in GRID if a >= 3 and (a.denominator == 1 or (2 * a) % 3 == 0)}
    for a3 in GRID:
        if a3 < 3:
            continue
        status = validate_invariant(InvariantSeq((F(2), F(3), a3))).status
        assert (status == VALID) == (a3 in allowed), a3
    assert validate_invariant(seq("2,3,9/2")).status == VALID
    assert validate_invariant(seq("2,3,15/2")).status == VALID
    assert validate_invariant(seq("2,3,11/2")).status == INVALID


# --- lexicographic order ----------------------------------------------------------

def test_lex_examples():
    assert lex_compare(seq("2,3,3"), seq("2,3,6")) < 0
    assert lex_compare(seq("2,2"), seq("2,2,5")) > 0  # (2,2) = (2,2,inf)
    assert lex_compare(seq("2,2"), seq("2,2,inf")) == 0
    assert lex_compare(seq("1,1"), seq("2")) < 0


def test_smooth_curve_invariant_is_minimal():
    smooth = seq("1,1")
    for other in ("2,2", "2,3", "1,2", "3,5"):
        assert lex_compare(smooth, seq(other)) < 0


# --- the trichotomy ------------------------------------------------------------------

def test_trichotomy_examples():
    result = canonical_numerics(seq("2,2,7"))
    assert all(result.values())
    assert seq("2,2,7").kappa(3) == F(8, 7)
    result = canonical_numerics(seq("2,3,6"))
    assert not any(result.values())
    result = canonical_numerics(seq("2,3,5"))
    assert all(result.values())
    assert seq("2,3,5").kappa(3) == F(31, 30)


def test_trichotomy_full_enumeration():
    # every valid length-2/3 sequence over the grid with a_1 > 1 agrees
    checked = 0
    for length in (2, 3):
        for entries in _valid_sequences(length):
            if entries[0] <= 1:
                continue
            result = canonical_numerics(InvariantSeq(entries))  # asserts agreement
            checked += 1
    assert checked > 200


# --- admissibility ------------------------------------------------------------------------

def test_admissibility_examples():
    assert is_admissible(Centre.from_exponents(V2, (3, 2)),
                         parse_poly("y^2 - x^3", V2))
    W = parse_poly("x^2 - y^2*z", V3)
    assert is_admissible(parse_centre("x:2 y:3 z:3"), W)
    assert not is_admissible(parse_centre("x:1 y:1 z:1"), W)  # ord = 2


# --- maximal monomial centres ----------------------------------------------------------------

TABLE_ONE = [
    ("x*y", (F(2), F(2))),
    ("x^2 - y^2*z", (F(2), F(3), F(3))),
    ("x^2 + y^2 + z^2", (F(2), F(2), F(2))),
    ("x^2 + y^2 + z^5", (F(2), F(2), F(5))),
    ("x^2 + y^2*z + z^3", (F(2), F(3), F(3))),
    ("x^2 + y^2*z + z^6", (F(2), F(3), F(3))),
    ("x^2 + y^3 + z^4", (F(2), F(3), F(4))),
    ("x^2 + y^3 + y*z^3", (F(2), F(3), F(9, 2))),
    ("x^2 + y^3 + z^5", (F(2), F(3), F(5))),
]


def test_table_one_invariants():
    for text, expected in TABLE_ONE:
        result = max_monomial_centre(parse_poly(text, V3))
        assert result.invariant.finite_entries() == expected, text
        assert is_admissible(result.centre, parse_poly(text, V3))


def _brute_force_lex_max(f: Poly, grid):
    """Independent oracle: enumerate per-variable grid exponents directly.

    A pure-power monomial v^k caps the exponent of v at k (its order must
    stay at least one); variables without a pure power range over the whole
    grid.  Every assignment is then checked against the admissibility
    constraints, with no greedy structure shared with the implementation.
    """
    top = max(grid)
    support = list(f.terms)
    n = len(f.variables)
    bounds = []
    for v in range(n):
        bound = top
        for J in support:
            if J[v] > 0 and all(J[u] == 0 for u in range(n) if u != v):
                bound = min(bound, F(J[v]))
        bounds.append(bound)
    candidates = [[a for a in grid if a <= bounds[v]] + [INF] for v in range(n)]
    # float screening with exact confirmation: the tolerance is orders of
    # magnitude above the representation error of these small fractions, so
    # no feasible assignment can be screened out; accepted ones are re-checked
    # with exact arithmetic
    weight_table = [[0.0 if a is INF else 1.0 / float(a) for a in column]
                    for column in candidates]
    exact_table = [[F(0) if a is INF else F(1) / a for a in column]
                   for column in candidates]
    best = None
    for positions in itertools.product(*(range(len(c)) for c in candidates)):
        approx = [sum(weight_table[v][positions[v]] * J[v] for v in range(n))
                  for J in support]
        if min(approx) < 1.0 - 1e-9 or min(approx) > 1.0 + 1e-9:
            continue
        weights = [exact_table[v][positions[v]] for v in range(n)]
        orders = [sum((w * j for w, j in zip(weights, J)), F(0)) for J in support]
        if min(orders) != 1:
            continue
        assignment = [candidates[v][positions[v]] for v in range(n)]
        key = tuple(sorted([a for a in assignment if a is not INF]))
        if best is None or lex_compare(key, best) > 0:
            best = key
    return best


def test_monomial_maximum_matches_brute_force_two_vars():
    grid = sorted({F(p, q) for q in range(1, 13) for p in range(1, 12 * q + 1)})
    for text in ("y^2 - x^3", "y^2 - x^4", "y^2 - x^2", "(x + y)^2", "y^3 - x^5"):
        f = parse_poly(text, V2)
        oracle = _brute_force_lex_max(f, grid)
        computed = max_monomial_centre(f).invariant.finite_entries()
        assert computed == oracle, text


def test_monomial_maximum_matches_brute_force_three_vars():
    # denominators up to six keep the unbounded-variable product tractable;
    # every corpus entry has denominator at most two, so the resolution is
    # ample
    grid = sorted({F(p, q) for q in range(1, 7) for p in range(1, 12 * q + 1)})
    for text, expected in TABLE_ONE:
        f = parse_poly(text, V3)
        oracle = _brute_force_lex_max(f, grid)
        assert oracle == max_monomial_centre(f).invariant.finite_entries(), text


def test_sheared_square_is_lower_bound_with_valid_status():
    result = max_monomial_centre(parse_poly("(x + y)^2", V2))
    assert result.invariant.finite_entries() == (F(2), F(2))
    assert result.lower_bound_only


def test_power_scaling():
    cusp = parse_poly("y^2 - x^3", V2)
    e6 = parse_poly("x^2 + y^3 + z^4", V3)
    for f, base in ((cusp, (F(2), F(3))), (e6, (F(2), F(3), F(4)))):
        for k in (1, 2, 3):
            entries = max_monomial_centre(f ** k).invariant.finite_entries()
            assert entries == tuple(k * b for b in base)


def test_unit_ideal_rejected():
    with pytest.raises(ValueError):
        max_monomial_centre(parse_poly("1 + x", V2))


def test_dn_quasi_homogeneity():
    # x^2 + y^2 z + z^(n-1) has order exactly one under (2, 2 + 2/(n-2), n-1)
    for n in range(4, 9):
        f = (parse_poly("x^2", V3) + parse_poly("y^2*z", V3)
             + Poly.var(V3, "z") ** (n - 1))
        centre = Centre.from_exponents(
            V3, (F(2), 2 + F(2, n - 2), F(n - 1)))
        assert centre.ord_poly(f) == 1


# --- plane curves -----------------------------------------------------------------------------

def test_plane_curve_invariants():
    expectations = [("y^2 - x^3", (F(2), F(3)), True),
                    ("y^2 - x^4", (F(2), F(4)), True),
                    ("y^2 - x^2", (F(2), F(2)), True),
                    ("y^2 - x^5", (F(2), F(5)), True),
                    ("y^3 - x^5", (F(3), F(5)), False)]
    for text, expected, exact in expectations:
        result = plane_curve_invariant(parse_poly(text, V2))
        assert result.invariant.finite_entries() == expected
        assert result.exact == exact
        # cross-check against the monomial machinery
        assert max_monomial_centre(parse_poly(text, V2)).invariant.finite_entries() \
            == expected


def test_plane_curve_tschirnhaus_shift():
    # (y + x^2)^2 - x^5 needs the shift y -> y - x^2 to reveal (2, 5)
    f = parse_poly("(y + x^2)^2 - x^5", V2)
    result = plane_curve_invariant(f)
    assert result.invariant.finite_entries() == (F(2), F(5))
    assert any("shift" in step for step in result.preparation_log)


def test_plane_curve_shear_catalogue():
    result = plane_curve_invariant(parse_poly("x*y", V2))
    assert result.invariant.finite_entries() == (F(2), F(2))
    assert any("shear" in step for step in result.preparation_log)


def test_centre_from_plane_invariant():
    result = plane_curve_invariant(parse_poly("y^2 - x^3", V2))
    centre = centre_from_plane_invariant(result, V2)
    assert str(centre) == "x:3 y:2"
