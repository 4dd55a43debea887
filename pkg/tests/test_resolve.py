"""Resolution driver, centre selection, and step certification."""

from fractions import Fraction

import pytest

from wblow.ring import parse_poly
from wblow.polyvector import Polyvector, jacobian_poisson, parse_polyvector
from wblow.centre import Centre, parse_centre
from wblow.invariant import lex_compare
from wblow.resolve import (
    RefusalError,
    StepAbort,
    certify_blowup_step,
    count_blowups,
    resolution_is_complete,
    resolve_plane_curve,
    select_centre_31,
    select_centre_32,
)

from conftest import V2, V3

F = Fraction
CORPUS = [("node", "y^2 - x^2"), ("cusp", "y^2 - x^3"), ("tacnode", "y^2 - x^4"),
          ("ramphoid", "y^2 - x^5"), ("E8-curve", "y^3 - x^5")]


# --- plane-curve resolution -----------------------------------------------------

def test_corpus_curves_resolve():
    for name, text in CORPUS:
        tree = resolve_plane_curve(parse_poly(text, V2))
        assert resolution_is_complete(tree), name
        assert count_blowups(tree) <= 4, name


def test_cusp_resolution_structure():
    tree = resolve_plane_curve(parse_poly("y^2 - x^3", V2))
    point = tree.children[0]
    assert str(point.centre) == "x:3 y:2"
    charts = {child.slice_variable: child for child in point.children}
    assert charts["x"].equation == parse_poly("y^2 - 1", charts["x"].equation.variables)
    assert charts["y"].equation == parse_poly("1 - x^3", charts["y"].equation.variables)
    assert charts["x"].residual_group_order == 2
    assert charts["y"].residual_group_order == 3


def test_invariants_strictly_decrease():
    def walk(node, bound):
        if node.invariant is not None and bound is not None:
            assert lex_compare(node.invariant, bound) < 0
        next_bound = node.invariant if node.invariant is not None else bound
        for child in node.children:
            walk(child, next_bound)

    for name, text in CORPUS + [("two-nodes", "y^2 - x^2*(x - 1)^2")]:
        tree = resolve_plane_curve(parse_poly(text, V2), max_steps=8)
        for point_node in tree.children:
            for chart in point_node.children:
                walk(chart, point_node.invariant)
        assert resolution_is_complete(tree), name


def test_two_singular_points_resolved_independently():
    tree = resolve_plane_curve(parse_poly("y^2 - x^2*(x - 1)^2", V2), max_steps=8)
    assert resolution_is_complete(tree)
    assert len(tree.children) == 2  # one germ per singular point
    assert count_blowups(tree) == 2


def test_squarefree_precondition():
    with pytest.raises(ValueError):
        resolve_plane_curve(parse_poly("(x + y)^2", V2))
    with pytest.raises(ValueError):
        resolve_plane_curve(parse_poly("y^2*(y - x)", V2))


def test_irrational_singularities_marked_indeterminate():
    tree = resolve_plane_curve(parse_poly("y^2 - (x^2 - 2)^2", V2))
    assert not resolution_is_complete(tree)
    assert any(leaf.status == "indeterminate" for leaf in tree.leaves())


def test_deterministic_node_ids():
    first = resolve_plane_curve(parse_poly("y^2 - x^3", V2))
    second = resolve_plane_curve(parse_poly("y^2 - x^3", V2))
    assert first.to_dict() == second.to_dict()


# --- centre selection: curves in threefolds ---------------------------------------------

def test_select_31_heisenberg_curve_vanishing():
    f = parse_poly("y^2 + z^2", V3)
    sigma = (Polyvector(2, V3, {(1, 2): parse_poly("x", V3) + f})
             + jacobian_poisson(f * f))
    generators = [parse_poly("x", V3) + f, f]
    selections = select_centre_31(sigma, generators)
    assert len(selections) == 1
    choice = selections[0]
    assert choice.case == "heis_curve_vanishing"
    assert choice.report.conilpotent
    assert choice.centre.exponent_of("x") == 1


def test_select_31_heisenberg_surface_vanishing():
    f = parse_poly("y^2 + z^2", V3)
    sigma = Polyvector(2, V3, {(1, 2): parse_poly("x", V3) + f})
    generators = [parse_poly("x", V3) + f, parse_poly("y^2 - z^3", V3)]
    selections = select_centre_31(sigma, generators)
    assert len(selections) == 1
    choice = selections[0]
    assert choice.case == "heis_surface_vanishing"
    assert choice.report.conilpotent
    # b = multiplicity of the plane curve = 2
    assert str(choice.centre) == "x:1 y:2 z:2"
    assert choice.coordinate_change is not None


def test_select_31_multiplicity_above_one():
    # a cone curve cut out in degree two: the associated centre applies and
    # is conilpotent because its first two weights sum to at most one
    g = parse_poly("x^2 - y*z", V3)
    h = parse_poly("y^2 - x*z", V3)
    sigma = jacobian_poisson(g * g)
    selections = select_centre_31(sigma, [g, h])
    assert selections[0].case == "a1_gt_1"
    assert str(selections[0].centre) == "x:2 y:2 z:2"
    assert selections[0].report.conilpotent


def test_select_31_abelian_point():
    sigma = parse_polyvector("x^2*@x^@y", V3)
    generators = [parse_poly("x", V3), parse_poly("y^2 - z^3", V3)]
    selections = select_centre_31(sigma, generators)
    assert selections[0].case == "ab_point"
    assert str(selections[0].centre) == "x:1 y:1 z:1"
    assert selections[0].report.conilpotent


def test_select_31_nonnilpotent_terminal():
    sigma = parse_polyvector("x*@x^@y", V3)
    generators = [parse_poly("x", V3), parse_poly("y^2 - z^3", V3)]
    selections = select_centre_31(sigma, generators)
    assert selections[0].case == "terminal_non_nilpotent"


def test_select_31_refuses_unrecognised():
    # two independent linear slots: not a Heisenberg normal form
    sigma = parse_polyvector("x*@y^@z + y*@x^@z", V3)
    generators = [parse_poly("x", V3), parse_poly("y^2 - z^3", V3)]
    with pytest.raises(RefusalError):
        select_centre_31(sigma, generators)


# --- centre selection: surfaces in threefolds ----------------------------------------------

def test_select_32_whitney():
    W = parse_poly("x^2 - y^2*z", V3)
    selections = select_centre_32(jacobian_poisson(W), W)
    assert len(selections) == 1
    choice = selections[0]
    assert choice.case == "inv_233_surface"
    assert str(choice.centre) == "x:1 y:1 z:inf"
    assert choice.report.conilpotent


def test_select_32_normal_crossings():
    f = parse_poly("x*y", V3)
    sigma = parse_polyvector("x*y*@x^@z", V3)
    selections = select_centre_32(sigma, f)
    choice = selections[0]
    assert choice.case == "generic_assoc"
    assert str(choice.centre) == "x:1 y:1 z:inf"
    assert choice.report.conilpotent


def test_select_32_deep_zero_at_ade_point():
    f = parse_poly("x^2 + y^2 + z^3", V3)
    sigma = jacobian_poisson(f).scale(f * f)
    selections = select_centre_32(sigma, f)
    choice = selections[0]
    assert choice.case == "generic_assoc"
    assert choice.report.conilpotent
    assert choice.centre.exponents == (F(2), F(2), F(3))


def test_select_32_duval_terminal():
    f = parse_poly("x^2 + y^3 + z^5", V3)
    selections = select_centre_32(jacobian_poisson(f), f)
    assert selections[0].case == "terminal_duval"


# --- step certification -------------------------------------------------------------------------

def test_certify_whitney_step():
    W = parse_poly("x^2 - y^2*z", V3)
    certificate = certify_blowup_step(jacobian_poisson(W), [W],
                                      parse_centre("x:1 y:1 z:inf"))
    assert certificate.ok()
    assert certificate.exceptional_tangent
    assert certificate.sigma_proper_poisson
    assert certificate.sigma_tangent_to_transforms
    assert certificate.invariant_decreased


def test_certify_aborts_on_wrong_centre():
    W = parse_poly("x^2 - y^2*z", V3)
    with pytest.raises(StepAbort) as err:
        certify_blowup_step(jacobian_poisson(W), [W], parse_centre("x:2 y:3 z:3"))
    assert "CD2" in str(err.value) or "CN" in str(err.value)


def test_certify_degenerate_mode_without_bivector():
    certificate = certify_blowup_step(None, [parse_poly("y^2 - x^3", V2)],
                                      Centre.from_exponents(V2, (3, 2)))
    assert certificate.ok()
    assert certificate.sigma_proper_poisson is None


def test_certified_selected_centres_for_corpus_triples():
    # every selected centre from the drivers passes the full step certificate
    W = parse_poly("x^2 - y^2*z", V3)
    selection = select_centre_32(jacobian_poisson(W), W)[0]
    certificate = certify_blowup_step(jacobian_poisson(W), [W], selection.centre)
    assert certificate.ok()

    f = parse_poly("y^2 + z^2", V3)
    sigma = (Polyvector(2, V3, {(1, 2): parse_poly("x", V3) + f})
             + jacobian_poisson(f * f))
    generators = [parse_poly("x", V3) + f, f]
    selection = select_centre_31(sigma, generators)[0]
    certificate = certify_blowup_step(sigma, generators, selection.centre)
    assert certificate.centre_report.conilpotent
    assert certificate.lift_regular
    assert certificate.sigma_proper_poisson
