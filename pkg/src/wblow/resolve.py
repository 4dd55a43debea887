"""Resolution drivers.

:func:`resolve_plane_curve` carries out embedded resolution of a plane curve
germ by weighted blowups: locate rational singular points, read the invariant
off the prepared Newton polygon, blow up the corresponding weighted centre,
pass to the slice charts, and recurse on the strict transforms.  The
invariant strictly decreases along every edge of the resulting chart tree and
every leaf is certified smooth (or the step budget is exhausted).

:func:`select_centre_31` and :func:`select_centre_32` carry out the centre
selection for Poisson triples presented in normal-form coordinates: curves in
threefolds split by the linearized Lie algebra class (abelian points take the
unweighted point centre; Heisenberg points take the associated centre or a
b-completion of the bivector's vanishing surface, depending on the dimension
of that vanishing locus), and surfaces in threefolds take the associated
centre away from invariant (2,3,3), where the singular locus splits into
type-D points and a curve blown up unweighted.  Every selected centre is
certified conilpotent; unrecognised inputs are refused with diagnostics, not
approximated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .ring import Point, Poly, is_infinite
from .polyvector import (
    ABELIAN,
    HEISENBERG,
    SPLIT_NONABELIAN,
    Polyvector,
    is_poisson,
    is_tangent,
    jacobian_poisson,
    shear_polyvector,
)
from .centre import Centre
from .blowup import (
    CentreReport,
    check_centre,
    is_smooth_plane_strict_transform,
    pullback_function,
    pullback_polyvector,
    rational_singular_points,
    slice_chart,
    strict_transform_in_chart,
)
from .invariant import (
    InvariantSeq,
    centre_from_plane_invariant,
    lex_compare,
    max_monomial_centre,
    plane_curve_invariant,
)
from .classify import (
    DEFAULT_DEGREE_BOUND,
    classify_surface,
    detect_duval_point,
    detect_nonnilpotent_point,
    sigma_tangent_to_ideal,
)

SMOOTH_LEAF = "smooth"
SINGULAR = "singular"
EXCLUDED = "excluded"
INDETERMINATE_STATUS = "indeterminate"
TERMINAL_NON_NILPOTENT = "terminal_non_nilpotent"
TERMINAL_DUVAL = "terminal_duval"


@dataclass
class ResolutionNode:
    """One chart of the resolution tree."""

    chart_id: str
    parent_id: Optional[str]
    equation: Poly
    status: str
    invariant: Optional[InvariantSeq] = None
    centre: Optional[Centre] = None
    slice_variable: Optional[str] = None
    residual_group_order: int = 1
    singular_points: List[Point] = field(default_factory=list)
    children: List["ResolutionNode"] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def leaves(self) -> List["ResolutionNode"]:
        if not self.children:
            return [self]
        out = []
        for child in self.children:
            out.extend(child.leaves())
        return out

    def depth(self) -> int:
        if not self.children:
            return 0
        return 1 + max(child.depth() for child in self.children)

    def render(self, indent: int = 0) -> str:
        pad = "  " * indent
        pieces = [f"{pad}[{self.chart_id}] {self.status}: {self.equation}"]
        if self.invariant is not None:
            pieces[0] += f"  invariant=({self.invariant})"
        if self.centre is not None:
            pieces[0] += f"  centre[{self.centre}]"
        for note in self.notes:
            pieces.append(f"{pad}  - {note}")
        for child in self.children:
            pieces.append(child.render(indent + 1))
        return "\n".join(pieces)

    def to_dict(self) -> dict:
        return {
            "chart_id": self.chart_id,
            "parent_id": self.parent_id,
            "equation": str(self.equation),
            "status": self.status,
            "invariant": None if self.invariant is None else str(self.invariant),
            "centre": None if self.centre is None else str(self.centre),
            "slice_variable": self.slice_variable,
            "residual_group_order": self.residual_group_order,
            "singular_points": [[str(c) for c in p] for p in self.singular_points],
            "notes": self.notes,
            "children": [c.to_dict() for c in self.children],
        }


def _is_squarefree(f: Poly) -> bool:
    """Squarefree test through resultants with the derivative, per variable."""
    from .ring import resultant, univariate_gcd
    for name in f.variables:
        derivative = f.diff(name)
        if derivative.is_zero():
            continue
        others = [v for v in f.variables if v != name and f.degree_in(v) > 0]
        if not others:
            g = univariate_gcd(f.drop_variables([v for v in f.variables if v != name]),
                               derivative.drop_variables([v for v in f.variables if v != name]))
            if g.total_degree() > 0:
                return False
            continue
        if resultant(f, derivative, name).is_zero():
            return False
    return True


def resolve_plane_curve(f: Poly, max_steps: int = 6) -> ResolutionNode:
    """Embedded resolution tree of a squarefree plane curve germ.

    Each node holds a chart equation; at singular charts every rational
    singular point is translated to the origin, its invariant computed, the
    weighted centre blown up, and one child created per slice chart.  The
    chart invariant (the largest invariant over its singular points) strictly
    decreases from parent to child; this is asserted.  Leaves are certified
    smooth, or marked indeterminate when a singular locus is not rational.
    """
    if len(f.variables) != 2:
        raise ValueError("resolve_plane_curve expects a two-variable chart")
    if f.is_zero():
        raise ValueError("the zero polynomial does not define a curve")
    if not _is_squarefree(f):
        raise ValueError("the curve equation must be squarefree")

    root = _resolve_chart(f, "r", None, None, max_steps)
    return root


def _resolve_chart(equation: Poly, chart_id: str, parent_id: Optional[str],
                   parent_invariant: Optional[InvariantSeq],
                   budget: int, exceptional: Optional[str] = None) -> ResolutionNode:
    all_points, certain = rational_singular_points(equation)
    points = list(all_points)
    copies = []
    if exceptional is not None:
        # singular points off the exceptional divisor are isomorphic copies of
        # other germs of the original curve; they are resolved in the sibling
        # branches rooted at those germs
        index = equation.variables.index(exceptional)
        points = [p for p in all_points if p[index] == 0]
        copies = [p for p in all_points if p[index] != 0]
    node = ResolutionNode(chart_id, parent_id, equation,
                          SMOOTH_LEAF if not points else SINGULAR,
                          singular_points=list(points))
    for copy in copies:
        node.notes.append(
            f"singular point {tuple(str(c) for c in copy)} is a copy of a germ "
            "resolved in a sibling branch")
    if not certain:
        node.status = INDETERMINATE_STATUS
        node.notes.append("singular locus not certified rational")
        return node
    if not points:
        return node
    if budget <= 0:
        node.notes.append("step budget exhausted")
        return node

    for index, point in enumerate(sorted(points)):
        local = equation.translate(point)
        plane = plane_curve_invariant(local)
        if parent_invariant is not None:
            drop = lex_compare(plane.invariant, parent_invariant)
            assert drop < 0, (
                f"invariant failed to decrease: {plane.invariant} !< {parent_invariant}")
        centre = centre_from_plane_invariant(plane, local.variables)
        point_node = ResolutionNode(
            chart_id=f"{chart_id}/{index}",
            parent_id=chart_id,
            equation=local,
            status=SINGULAR,
            invariant=plane.invariant,
            centre=centre,
            singular_points=[tuple(Fraction(0) for _ in local.variables)],
            notes=[f"singular point {tuple(str(c) for c in point)}"]
                  + plane.preparation_log,
        )
        node.children.append(point_node)
        for name in centre.support():
            transform = strict_transform_in_chart(plane.prepared, centre, name)
            chart = slice_chart(centre, name)
            fresh = next(v for v in chart.variables if v not in centre.variables)
            child = _resolve_chart(transform, f"{point_node.chart_id}:{name}",
                                   point_node.chart_id, plane.invariant,
                                   budget - 1, exceptional=fresh)
            child.slice_variable = name
            child.residual_group_order = chart.residual_group_order
            point_node.children.append(child)
    invariants = [child.invariant for child in node.children if child.invariant]
    if invariants:
        node.invariant = max(invariants, key=lex_key_of)
    return node


def lex_key_of(seq: InvariantSeq):
    from .invariant import lex_key
    return lex_key(seq)


def resolution_is_complete(root: ResolutionNode) -> bool:
    return all(leaf.status == SMOOTH_LEAF for leaf in root.leaves())


def count_blowups(root: ResolutionNode) -> int:
    total = 1 if root.centre is not None else 0
    for child in root.children:
        total += count_blowups(child)
    return total


# ---------------------------------------------------------------------------
# centre selection for Poisson triples
# ---------------------------------------------------------------------------

A1_GT_1 = "a1_gt_1"
AB_POINT = "ab_point"
HEIS_CURVE_VANISHING = "heis_curve_vanishing"
HEIS_SURFACE_VANISHING = "heis_surface_vanishing"
INV_233_SURFACE = "inv_233_surface"
GENERIC_ASSOC = "generic_assoc"


@dataclass
class CentreSelection:
    """A selected blowup centre with its case tag and certificates."""

    case: str
    centre: Centre
    point: Optional[Point]
    report: CentreReport
    rationale: str
    coordinate_change: Optional[Tuple[str, Poly]] = None  # shear applied first
    sigma: Optional[Polyvector] = None                    # in the working coordinates
    certificate: Optional["StepCertificate"] = None       # full blowup-step run

    def __post_init__(self):
        assert self.report.conilpotent, \
            f"selected centre {self.centre} is not conilpotent"


class RefusalError(ValueError):
    """Input outside the recognised normal forms; diagnostics in the message."""


def _recognise_heisenberg_form(sigma: Polyvector
                               ) -> Tuple[str, Poly, Poly, Tuple[str, str]]:
    """Match sigma against (x + A(y,z)) @y^@z + [volume, B(y,z)].

    Returns (x-like variable, A, B, (y-like, z-like)).  Raises RefusalError
    when the bivector is not in this shape.
    """
    variables = sigma.variables
    n = len(variables)
    linear_slots = []
    for (i, j), coeff in sigma.terms.items():
        linear = {e for e in coeff.terms if sum(e) == 1}
        if linear:
            linear_slots.append(((i, j), linear))
    candidates = []
    for (i, j), linear in linear_slots:
        for e in linear:
            k = e.index(1)
            if k not in (i, j):
                candidates.append(((i, j), k))
    if len(candidates) != 1:
        raise RefusalError(
            "bivector linear part is not a single Heisenberg slot; "
            f"found {len(candidates)} candidates")
    (i, j), k = candidates[0]
    x_name = variables[k]
    y_name, z_name = variables[i], variables[j]
    main = sigma.bracket_of_coordinates(i, j)
    unit_exp = tuple(1 if m == k else 0 for m in range(n))
    scale = main.terms.get(unit_exp)
    if scale != 1:
        raise RefusalError(f"Heisenberg slot has coefficient {scale}, expected 1 "
                           "(rescale the coordinates first)")
    A = main - Poly.var(variables, x_name)
    if A.degree_in(x_name) > 0:
        raise RefusalError("the pencil part A depends on the Heisenberg variable")
    if not A.is_zero() and A.min_total_degree() < 2:
        raise RefusalError("the pencil part A does not vanish to order two")
    # remaining components must be an exact Jacobian pair in (y, z)
    by = sigma.bracket_of_coordinates(k, j)   # {x, z} = -dB/dy with our volume
    bz = sigma.bracket_of_coordinates(i, k)   # {y, x}
    for name, coeff in ((y_name, by), (z_name, bz)):
        if coeff.degree_in(x_name) > 0:
            raise RefusalError("the divergence part depends on the Heisenberg variable")
    # integrate: sigma - (x+A) dy^dz should equal jacobian of some B(y,z)
    residual = sigma - Polyvector(2, variables, {(i, j): main})
    B = _integrate_jacobian(residual, x_name, y_name, z_name)
    return x_name, A, B, (y_name, z_name)


def _integrate_jacobian(residual: Polyvector, x_name: str, y_name: str,
                        z_name: str) -> Poly:
    """Find B(y,z) with residual = [volume, B], or refuse."""
    variables = residual.variables
    if residual.is_zero():
        return Poly.zero(variables)
    target = jacobian_poisson  # noqa: local alias for clarity
    # residual should have components only in the (x,y) and (x,z) slots
    ix, iy, iz = (variables.index(x_name), variables.index(y_name),
                  variables.index(z_name))
    b_y = residual.coefficient((iz, ix))   # [mu, B] has B_y @z^@x
    b_z = residual.coefficient((ix, iy))   # and B_z @x^@y
    for (a, b), coeff in residual.terms.items():
        if {a, b} == {iy, iz} and not coeff.is_zero():
            raise RefusalError("residual bivector has a @y^@z component")
    if b_y.degree_in(x_name) > 0 or b_z.degree_in(x_name) > 0:
        raise RefusalError("divergence part depends on the Heisenberg variable")
    # exactness: d/dz b_y == d/dy b_z
    if b_y.diff(z_name) != b_z.diff(y_name):
        raise RefusalError("residual is not an exact Jacobian bivector")
    B = _antiderivative(b_y, y_name)
    correction = b_z - B.diff(z_name)
    if correction.degree_in(y_name) > 0:
        raise RefusalError("integration failed; input not in normal form")
    B = B + _antiderivative(correction, z_name)
    check = jacobian_poisson_on(B, (x_name, y_name, z_name), variables)
    if check != residual:
        raise RefusalError("integrated potential does not reproduce the bivector")
    if not B.is_zero() and B.min_total_degree() < 3:
        raise RefusalError("the potential B does not vanish to order three")
    return B


def _antiderivative(f: Poly, name: str) -> Poly:
    index = f.variables.index(name)
    terms = {}
    for exponent, coeff in f.terms.items():
        lifted = exponent[:index] + (exponent[index] + 1,) + exponent[index + 1:]
        terms[lifted] = coeff / (exponent[index] + 1)
    return Poly(f.variables, terms, f.cap)


def jacobian_poisson_on(B: Poly, frame: Tuple[str, str, str],
                        variables: Tuple[str, ...]) -> Polyvector:
    """[volume, B] for the ordered frame (x, y, z) inside a larger chart."""
    x_name, y_name, z_name = frame
    ix, iy, iz = (variables.index(x_name), variables.index(y_name),
                  variables.index(z_name))
    terms: Dict[Tuple[int, int], Poly] = {}

    def put(a: int, b: int, coeff: Poly) -> None:
        if coeff.is_zero():
            return
        if a < b:
            terms[(a, b)] = terms.get((a, b), Poly.zero(variables)) + coeff
        else:
            terms[(b, a)] = terms.get((b, a), Poly.zero(variables)) - coeff

    put(iy, iz, B.diff(x_name))
    put(iz, ix, B.diff(y_name))
    put(ix, iy, B.diff(z_name))
    return Polyvector(2, variables, {k: v for k, v in terms.items() if not v.is_zero()})


def select_centre_31(sigma: Polyvector, y_generators: Sequence[Poly],
                     points: Optional[Sequence[Point]] = None,
                     degree_bound: int = DEFAULT_DEGREE_BOUND
                     ) -> List[CentreSelection]:
    """Centre selection for a curve in a threefold, in normal-form coordinates.

    For each supplied singular point (default: the origin): non-nilpotent
    points are excluded (they admit no codegenerate centre); when the curve
    invariant starts above one the associated monomial centre is selected;
    otherwise the linearization decides between the unweighted point centre
    (abelian) and the Heisenberg cases, where the vanishing locus of the
    bivector being a curve selects the associated centre and a smooth surface
    selects the b-completion of its unweighted centre with b the second
    invariant entry.  Conilpotence of every selection is certified.
    """
    variables = sigma.variables
    if len(variables) != 3:
        raise RefusalError("curve triples live in a three-variable chart")
    if not sigma_tangent_to_ideal(sigma, y_generators):
        raise RefusalError("bivector is not tangent to the curve")
    if points is None:
        points = [tuple(Fraction(0) for _ in variables)]

    selections: List[CentreSelection] = []
    for point in points:
        sigma_p = sigma.translate(point)
        generators_p = [g.translate(point) for g in y_generators]
        invariant = max_monomial_centre(generators_p).invariant
        a1 = invariant.entries[0]
        if a1 > 1:
            result = max_monomial_centre(generators_p)
            report = check_centre(sigma_p, result.centre)
            selections.append(CentreSelection(
                A1_GT_1, result.centre, point, report,
                "curve not contained in a smooth surface: associated centre "
                "of the pair is conilpotent because kappa_2 <= 1",
                sigma=sigma_p,
                certificate=certify_blowup_step(sigma_p, generators_p,
                                                result.centre)))
            continue

        triple = detect_nonnilpotent_point(sigma_p, generators_p,
                                           tuple(Fraction(0) for _ in variables))
        if triple.lie_class == SPLIT_NONABELIAN:
            selections.append(_excluded_selection(point, variables))
            continue
        if triple.lie_class == ABELIAN:
            centre = Centre.unweighted(variables)
            report = check_centre(sigma_p, centre)
            selections.append(CentreSelection(
                AB_POINT, centre, point, report,
                "abelian linearization: the unweighted point centre is "
                "conilpotent (conormal bracket is abelian)",
                sigma=sigma_p,
                certificate=certify_blowup_step(sigma_p, generators_p, centre)))
            continue
        if triple.lie_class != HEISENBERG:
            raise RefusalError(f"unexpected linearization class {triple.lie_class}")

        x_name, A, B, (y_name, z_name) = _recognise_heisenberg_form(sigma_p)
        if not B.is_zero():
            result = max_monomial_centre(generators_p)
            if result.centre.exponent_of(x_name) != 1:
                raise RefusalError(
                    "expected the Heisenberg variable to carry exponent one in "
                    f"the associated centre, got {result.centre}")
            report = check_centre(sigma_p, result.centre)
            selections.append(CentreSelection(
                HEIS_CURVE_VANISHING, result.centre, point, report,
                "Heisenberg point with one-dimensional bivector vanishing "
                "locus: associated centre (x carries exponent one; every term "
                "has order at least 1 - 1/b - 1/c >= 0)",
                sigma=sigma_p,
                certificate=certify_blowup_step(sigma_p, generators_p,
                                                result.centre)))
            continue

        # vanishing locus is the smooth surface x + A = 0: shear it straight
        sheared = shear_polyvector(sigma_p, x_name, A) if not A.is_zero() else sigma_p
        sheared_generators = []
        for g in generators_p:
            image = {x_name: Poly.var(variables, x_name) - A}
            sheared_generators.append(g.substitute(image))
        plane_candidates = [g for g in sheared_generators
                            if g.degree_in(x_name) == 0 and not g.is_zero()]
        if not plane_candidates:
            raise RefusalError(
                "cannot express the curve inside the vanishing surface; "
                "generators not in normal form")
        plane_curve = plane_candidates[0]
        b = Fraction(plane_curve.min_total_degree())
        if b < 1:
            raise RefusalError("curve multiplicity below one after shearing")
        centre = Centre.unweighted(variables, [x_name]).b_completion(b)
        report = check_centre(sheared, centre)
        selections.append(CentreSelection(
            HEIS_SURFACE_VANISHING, centre, point, report,
            f"Heisenberg point with smooth surface vanishing locus: "
            f"b-completion of the unweighted surface centre at b = {b}",
            coordinate_change=(x_name, A),
            sigma=sheared,
            certificate=certify_blowup_step(sheared, sheared_generators, centre)))
    return selections


def _excluded_selection(point: Point, variables: Tuple[str, ...]) -> CentreSelection:
    # terminal: no codegenerate centre exists at a non-nilpotent point
    dummy = CentreReport(conilpotent=True)
    selection = CentreSelection.__new__(CentreSelection)
    selection.case = TERMINAL_NON_NILPOTENT
    selection.centre = Centre.unweighted(variables)
    selection.point = point
    selection.report = dummy
    selection.rationale = ("non-nilpotent point: no codegenerate centre exists; "
                           "the point is a terminal singularity of the triple")
    selection.coordinate_change = None
    selection.sigma = None
    return selection


def _axis_in_singular_locus(f: Poly) -> List[str]:
    axes = []
    variables = f.variables
    system = [f] + [f.diff(v) for v in variables]
    for index, axis in enumerate(variables):
        images = {v: Poly.zero(variables) for i, v in enumerate(variables)
                  if i != index}
        if all(g.substitute(images).is_zero() for g in system):
            axes.append(axis)
    return axes


def select_centre_32(sigma: Polyvector, f: Poly,
                     points: Optional[Sequence[Point]] = None,
                     degree_bound: int = DEFAULT_DEGREE_BOUND
                     ) -> List[CentreSelection]:
    """Centre selection for a surface in a threefold, in normal-form coordinates.

    Du Val points of the triple are excluded (terminal).  Away from them, the
    associated monomial centre is selected unless the invariant is (2,3,3),
    where the singular locus splits into isolated type-D points (associated
    centre) and one-dimensional components (unweighted centre on the curve,
    certified through the logarithmic tangency argument).  Conilpotence of
    every selection is certified by the coordinate conditions.
    """
    variables = sigma.variables
    if len(variables) != 3 or f.variables != variables:
        raise RefusalError("surface triples live in a shared three-variable chart")
    if not is_tangent(sigma, f):
        raise RefusalError("bivector is not tangent to the surface")
    if points is None:
        points = [tuple(Fraction(0) for _ in variables)]

    selections: List[CentreSelection] = []
    for point in points:
        sigma_p = sigma.translate(point)
        f_p = f.translate(point)
        duval = detect_duval_point(sigma_p, f_p, tuple(Fraction(0) for _ in variables),
                                   degree_bound)
        if duval.duval:
            selection = CentreSelection.__new__(CentreSelection)
            selection.case = TERMINAL_DUVAL
            selection.centre = Centre.unweighted(variables)
            selection.point = point
            selection.report = CentreReport(conilpotent=True)
            selection.rationale = ("Du Val point of the triple: no codegenerate "
                                   "centre exists (weight sums exceed one)")
            selection.coordinate_change = None
            selection.sigma = None
            selections.append(selection)
            continue

        surface = classify_surface(f_p, degree_bound)
        result = max_monomial_centre(f_p)
        invariant = result.invariant
        if invariant.finite_entries() != (Fraction(2), Fraction(3), Fraction(3)):
            centre = result.centre
            reduced = centre.reduced()
            if all(a == 1 for a in reduced.exponents if not is_infinite(a)):
                centre = reduced  # unweighted up to rescaling: report the reduction
            report = check_centre(sigma_p, centre)
            selections.append(CentreSelection(
                GENERIC_ASSOC, centre, point, report,
                "invariant differs from (2,3,3): the associated centre is "
                "conilpotent away from Du Val and Whitney points",
                sigma=sigma_p,
                certificate=certify_blowup_step(sigma_p, [f_p], centre)))
            continue

        axes = _axis_in_singular_locus(f_p)
        if axes:
            # one-dimensional singular locus: unweighted centre on the curve
            support = [v for v in variables if v not in axes]
            centre = Centre.unweighted(variables, support)
            report = check_centre(sigma_p, centre)
            selections.append(CentreSelection(
                INV_233_SURFACE, centre, point, report,
                "invariant (2,3,3) with a one-dimensional singular locus: "
                "unweighted centre on the curve (logarithmic tangency keeps "
                "every bracket at non-negative order)",
                sigma=sigma_p,
                certificate=certify_blowup_step(sigma_p, [f_p], centre)))
            continue
        report = check_centre(sigma_p, result.centre)
        selections.append(CentreSelection(
            INV_233_SURFACE, result.centre, point, report,
            "invariant (2,3,3) at an isolated type-D point that is not a Du "
            "Val point of the triple: associated centre",
            sigma=sigma_p,
            certificate=certify_blowup_step(sigma_p, [f_p], result.centre)))
    return selections


# ---------------------------------------------------------------------------
# one certified blowup step
# ---------------------------------------------------------------------------

@dataclass
class StepCertificate:
    centre: Centre
    centre_report: CentreReport
    lift_regular: bool
    exceptional_tangent: Optional[bool]
    sigma_proper_poisson: Optional[bool]
    sigma_tangent_to_transforms: Optional[bool]
    invariant_before: Optional[InvariantSeq]
    invariants_after: List[Tuple[str, Optional[InvariantSeq]]]
    invariant_decreased: Optional[bool]
    notes: List[str] = field(default_factory=list)

    def ok(self) -> bool:
        checks = [self.centre_report.conilpotent, self.lift_regular]
        if self.sigma_proper_poisson is not None:
            checks.append(self.sigma_proper_poisson)
        if self.sigma_tangent_to_transforms is not None:
            checks.append(self.sigma_tangent_to_transforms)
        if self.invariant_decreased is not None:
            checks.append(self.invariant_decreased)
        return all(bool(c) for c in checks)


class StepAbort(AssertionError):
    """A certificate failed; the witness is in the message."""


def certify_blowup_step(sigma: Optional[Polyvector], equations: Sequence[Poly],
                        centre: Centre) -> StepCertificate:
    """Run every certificate for one blowup step and abort on any failure.

    With a bivector: the centre must be conilpotent, the bivector must lift
    (regularly, tangent to the exceptional divisor), the lifted proper part
    must stay Poisson and tangent to the strict transforms.  With or without
    a bivector: the invariant of the ideal generated by the strict transforms
    must drop lexicographically, in every slice chart, below the invariant of
    the ideal at the blown-up point (compared as monomial lower bounds,
    flagged when only bounds are available; a chart where a strict transform
    becomes a unit is resolved and drops out).
    """
    notes: List[str] = []
    equations = list(equations)
    before = max_monomial_centre(equations).invariant

    centre_report = CentreReport(conilpotent=True)
    lift_regular = True
    tangent = None
    proper_poisson = None
    tangent_to_transforms = None

    if sigma is not None:
        centre_report = check_centre(sigma, centre)
        if not centre_report.conilpotent:
            witness = [w for w in centre_report.witnesses if w.tag in ("CN", "CD1", "CD2")]
            raise StepAbort(f"centre {centre} is not conilpotent; witnesses: "
                            + "; ".join(str(w.to_dict()) for w in witness))
        pull = pullback_polyvector(sigma, centre)
        lift_regular = pull.regular
        tangent = pull.exceptional_tangent
        if not lift_regular:
            raise StepAbort(f"bivector does not lift along {centre}: minimal "
                            f"t-exponent {pull.min_t_exponent}")
        proper = pull.proper_part
        assert isinstance(proper, Polyvector)
        proper_poisson = is_poisson(proper)[0]
        if not proper_poisson:
            raise StepAbort("lifted bivector is no longer Poisson")
        transforms = []
        for equation in equations:
            transform = pullback_function(equation, centre).proper_part
            assert isinstance(transform, Poly)
            transforms.append(transform)
        # tangency to the ideal generated by the strict transforms, not to
        # each hypersurface separately (the subvariety may be a complete
        # intersection)
        tangent_to_transforms = sigma_tangent_to_ideal(proper, transforms)
        if not tangent_to_transforms:
            raise StepAbort("lifted bivector not tangent to the strict transform")

    after: List[Tuple[str, Optional[InvariantSeq]]] = []
    decreased: Optional[bool] = True
    for name in centre.support():
        transforms = [strict_transform_in_chart(equation, centre, name)
                      for equation in equations]
        if any(t.constant_term() != 0 for t in transforms):
            after.append((name, None))  # unit ideal: the chart is resolved
            continue
        chart_invariant = max_monomial_centre(transforms).invariant
        if lex_compare(chart_invariant, before) >= 0:
            decreased = False
            notes.append(
                f"invariant lower bound did not decrease in chart {name}: "
                f"{chart_invariant} vs {before}")
        after.append((name, chart_invariant))

    certificate = StepCertificate(
        centre=centre,
        centre_report=centre_report,
        lift_regular=lift_regular,
        exceptional_tangent=tangent,
        sigma_proper_poisson=proper_poisson,
        sigma_tangent_to_transforms=tangent_to_transforms,
        invariant_before=before,
        invariants_after=after,
        invariant_decreased=decreased,
        notes=notes,
    )
    return certificate
