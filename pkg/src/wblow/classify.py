"""Desk-scale singularity classification for surfaces in three variables.

Milnor numbers and isolatedness are decided by exact linear algebra on
degree-truncated local algebras: the dimension of O/(ideal + m^D) is computed
for increasing D, and two consecutive equal dimensions certify m^D lands in
the ideal (Nakayama), so the dimension has stabilised.  Non-isolated loci are
certified by coordinate axes contained in the singular locus; anything
neither certified finite nor certified infinite is reported indeterminate,
never guessed.

Surface classification runs the invariant machinery over a small preparation
catalogue (translations, integer shears, completing the square in a
multiplicity-two direction) and takes the lexicographically largest invariant
found.  Inputs outside the catalogue's reach fall into ``other`` rather than
a wrong class.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .ring import Point, Poly, divides
from .polyvector import (
    OTHER,
    SPLIT_NONABELIAN,
    Lie3Class,
    Polyvector,
    interior_product_df,
    is_poisson,
    is_tangent,
    jacobian_poisson,
    linearize,
    shear_polyvector,
    wedge,
)
from .centre import Centre
from .invariant import (
    InvariantSeq,
    MonomialCentreResult,
    lex_compare,
    max_monomial_centre,
)

DEFAULT_DEGREE_BOUND = 12
UNBOUNDED = "unbounded"
INDETERMINATE = "indeterminate"


# ---------------------------------------------------------------------------
# local algebra dimensions
# ---------------------------------------------------------------------------

def _grlex(m: Tuple[int, ...]) -> Tuple:
    return (sum(m), m)


def _monomials_below(variables: Tuple[str, ...], degree: int):
    n = len(variables)

    def rec(prefix, remaining, budget):
        if remaining == 0:
            yield tuple(prefix)
            return
        for e in range(budget + 1):
            yield from rec(prefix + [e], remaining - 1, budget - e)

    for m in rec([], n, degree - 1):
        if sum(m) < degree:
            yield m


def local_quotient_dimension(generators: Sequence[Poly], degree: int) -> int:
    """dim of O/(ideal + m^degree) by sparse row reduction over monomials."""
    generators = [g for g in generators if not g.is_zero()]
    if not generators:
        variables = ()
        raise ValueError("no nonzero generators")
    variables = generators[0].variables
    pivots: Dict[Tuple[int, ...], Dict[Tuple[int, ...], Fraction]] = {}

    def insert(row: Dict[Tuple[int, ...], Fraction]) -> None:
        while row:
            lead = max(row, key=_grlex)
            pivot = pivots.get(lead)
            if pivot is None:
                pivots[lead] = row
                return
            factor = row[lead] / pivot[lead]
            for monomial, coeff in pivot.items():
                new = row.get(monomial, Fraction(0)) - factor * coeff
                if new == 0:
                    row.pop(monomial, None)
                else:
                    row[monomial] = new

    for g in generators:
        base = g.min_total_degree()
        for alpha in _monomials_below(variables, max(degree - base, 1)):
            row = {}
            for monomial, coeff in g.terms.items():
                shifted = tuple(a + b for a, b in zip(monomial, alpha))
                if sum(shifted) < degree:
                    row[shifted] = coeff
            if row:
                insert(row)
    total = sum(1 for _ in _monomials_below(variables, degree))
    return total - len(pivots)


def _rational_line_directions(dimension: int, span: int = 3):
    """Primitive integer directions with entries up to ``span`` in size."""
    from math import gcd
    seen = set()
    for entries in itertools.product(range(-span, span + 1), repeat=dimension):
        if all(e == 0 for e in entries):
            continue
        g = 0
        for e in entries:
            g = gcd(g, abs(e))
        primitive = tuple(e // g for e in entries)
        first = next(e for e in primitive if e != 0)
        if first < 0:
            primitive = tuple(-e for e in primitive)
        if primitive not in seen:
            seen.add(primitive)
            yield primitive


def line_in_zero_locus(generators: Sequence[Poly]) -> Optional[Tuple[int, ...]]:
    """A rational line through the origin on which every generator vanishes.

    Searches the small catalogue of primitive integer directions; a hit is a
    certificate that the common zero locus is not a fat point.
    """
    generators = [g for g in generators if not g.is_zero()]
    if not generators:
        return None
    variables = generators[0].variables
    parameter = ("s",)
    s = Poly.var(parameter, "s")
    for direction in _rational_line_directions(len(variables)):
        images = {v: s.scale(d) for v, d in zip(variables, direction)}
        if all(g.substitute(images).is_zero() for g in generators):
            return direction
    return None


def local_dimension_is_zero(generators: Sequence[Poly],
                            degree_bound: int = DEFAULT_DEGREE_BOUND
                            ) -> Tuple[Optional[bool], Optional[int]]:
    """Whether the generators cut out a fat point at the origin.

    Returns (verdict, dimension): (True, dim) with the stabilised quotient
    dimension, (False, None) when a rational line through the origin lies in
    the zero set (divisibility certificate), or (None, None) when the bound
    is exhausted.
    """
    generators = [g for g in generators if not g.is_zero()]
    if not generators:
        return False, None
    if line_in_zero_locus(generators) is not None:
        return False, None
    previous = None
    for degree in range(2, degree_bound + 2):
        current = local_quotient_dimension(generators, degree)
        if current == previous:
            return True, current
        previous = current
    return None, None


def milnor_number(f: Poly,
                  degree_bound: int = DEFAULT_DEGREE_BOUND) -> Union[int, str]:
    """Dimension of the local algebra O/(partial derivatives of f).

    Stabilisation of the truncated dimensions certifies the value; a
    coordinate axis inside the critical locus certifies ``unbounded``
    (non-isolated).  Otherwise the string ``unbounded`` is returned when the
    degree bound is exhausted.
    """
    if f.constant_term() != 0:
        raise ValueError("the germ must vanish at the origin")
    gradient = [f.diff(v) for v in f.variables]
    if all(g.is_zero() for g in gradient):
        return UNBOUNDED
    verdict, dimension = local_dimension_is_zero(gradient, degree_bound)
    if verdict is True:
        assert dimension is not None
        return dimension
    return UNBOUNDED


def is_isolated_singularity(f: Poly,
                            degree_bound: int = DEFAULT_DEGREE_BOUND
                            ) -> Union[bool, str]:
    """Whether the singular locus of V(f) is at most the origin.

    True when the Milnor dimension stabilises; False when a coordinate axis
    is contained in the singular locus (f and its gradient vanish on it);
    ``indeterminate`` otherwise.
    """
    if f.constant_term() != 0:
        raise ValueError("the germ must vanish at the origin")
    system = [f] + [f.diff(v) for v in f.variables]
    if line_in_zero_locus(system) is not None:
        return False
    gradient = [g for g in system[1:] if not g.is_zero()]
    if not gradient:
        return INDETERMINATE
    verdict, _ = local_dimension_is_zero(gradient, degree_bound)
    if verdict is True:
        return True
    return INDETERMINATE


# ---------------------------------------------------------------------------
# surface classification
# ---------------------------------------------------------------------------

SMOOTH = "smooth"
NORMAL_CROSSINGS_2 = "normal_crossings_2"
WHITNEY_UMBRELLA = "whitney_umbrella"
A_CLASS = "A"
D_CLASS = "D"
E6 = "E6"
E7 = "E7"
E8 = "E8"
OTHER_CLASS = "other"

# quasi-homogeneity exponents of the standard equations, per class
def class_exponents(kind: str, index: Optional[int] = None) -> Tuple[Fraction, ...]:
    if kind == A_CLASS:
        assert index is not None and index >= 1
        return (Fraction(2), Fraction(2), Fraction(index + 1))
    if kind == D_CLASS:
        assert index is not None and index >= 4
        return (Fraction(2), 2 + Fraction(2, index - 2), Fraction(index - 1))
    return {E6: (Fraction(2), Fraction(3), Fraction(4)),
            E7: (Fraction(2), Fraction(3), Fraction(9, 2)),
            E8: (Fraction(2), Fraction(3), Fraction(5))}[kind]


@dataclass
class SingularityClass:
    kind: str
    index: Optional[int] = None              # n for A(n), D(n)
    invariant: Optional[InvariantSeq] = None
    milnor: Optional[Union[int, str]] = None
    witness_centre: Optional[Centre] = None
    certification_bound: int = DEFAULT_DEGREE_BOUND
    preparation: List[Tuple[str, Poly]] = field(default_factory=list)
    diagnostics: List[str] = field(default_factory=list)

    def __post_init__(self):
        if self.kind == A_CLASS and (self.index is None or self.index < 1):
            raise ValueError("A(n) requires n >= 1")
        if self.kind == D_CLASS and (self.index is None or self.index < 4):
            raise ValueError("D(n) requires n >= 4")

    def label(self) -> str:
        if self.kind in (A_CLASS, D_CLASS):
            return f"{self.kind}{self.index}"
        return self.kind

    def is_du_val(self) -> bool:
        return self.kind in (A_CLASS, D_CLASS, E6, E7, E8)


def _complete_square(f: Poly) -> Optional[Tuple[Poly, Tuple[str, Poly]]]:
    """One exact Morse step: kill the linear-in-u part when f is quadratic in u."""
    if f.min_total_degree() != 2:
        return None
    for name in f.variables:
        square = tuple(2 if v == name else 0 for v in f.variables)
        if square not in f.terms or f.degree_in(name) != 2:
            continue
        coefficients = f.coefficients_in(name)
        lead = coefficients[2]
        if lead.total_degree() != 0:
            continue
        sub = coefficients[1]
        if sub.is_zero():
            continue
        shift = sub.extend_variables(f.variables).scale(Fraction(-1, 2) / lead.constant_term())
        image = Poly.var(f.variables, name) + shift
        return f.substitute({name: image}), (name, shift)
    return None


_SHEAR_RANGE = (1, -1, 2, -2, 3, -3)


def _preparation_candidates(f: Poly):
    """Candidate prepared forms: identity, single integer shears, and each
    optionally followed by completing the square.  Yields (form, steps)."""
    base: List[Tuple[Poly, List[Tuple[str, Poly]]]] = [(f, [])]
    for target in f.variables:
        for source in f.variables:
            if source == target:
                continue
            for c in _SHEAR_RANGE:
                shift = Poly.var(f.variables, target).scale(c)
                form = f.substitute({source: Poly.var(f.variables, source) + shift})
                base.append((form, [(source, shift)]))
    for form, steps in base:
        yield form, steps
        completed = _complete_square(form)
        if completed is not None:
            completed_form, step = completed
            yield completed_form, steps + [step]


def classify_surface(f: Poly,
                     degree_bound: int = DEFAULT_DEGREE_BOUND) -> SingularityClass:
    """Classify a surface germ in three variables at the origin.

    Pipeline: smooth test; invariant lower bound maximised over the
    preparation catalogue; disambiguation of the invariant, with isolatedness
    separating the type-D series from the Whitney umbrella and the Milnor
    number choosing the index n of A(n) and D(n).
    """
    if len(f.variables) != 3:
        raise ValueError("classify_surface expects a three-variable chart")
    if f.is_zero():
        raise ValueError("the zero polynomial does not define a surface")
    if f.constant_term() != 0:
        raise ValueError("the germ must vanish at the origin; translate first")
    if f.min_total_degree() == 1:
        return SingularityClass(SMOOTH)

    best: Optional[MonomialCentreResult] = None
    best_steps: List[Tuple[str, Poly]] = []
    for form, steps in _preparation_candidates(f):
        try:
            candidate = max_monomial_centre(form)
        except ValueError:
            continue
        if best is None or lex_compare(candidate.invariant, best.invariant) > 0:
            best, best_steps = candidate, steps
    if best is None:
        return SingularityClass(OTHER_CLASS, diagnostics=["no admissible monomial centre"])

    invariant = best.invariant
    finite = invariant.finite_entries()
    report = SingularityClass(OTHER_CLASS, invariant=invariant,
                              witness_centre=best.centre,
                              certification_bound=degree_bound,
                              preparation=best_steps)

    if finite == (Fraction(2), Fraction(2)):
        report.kind = NORMAL_CROSSINGS_2
        return report
    if len(finite) == 3 and finite[:2] == (Fraction(2), Fraction(2)) \
            and finite[2].denominator == 1:
        report.kind = A_CLASS
        report.index = int(finite[2]) - 1
        report.milnor = milnor_number(f, degree_bound)
        if report.milnor != report.index:
            report.kind = OTHER_CLASS
            report.diagnostics.append(
                f"invariant says A({int(finite[2]) - 1}) but Milnor number is {report.milnor}")
            report.index = None
        return report
    if finite == (Fraction(2), Fraction(3), Fraction(3)):
        isolated = is_isolated_singularity(f, degree_bound)
        report.milnor = milnor_number(f, degree_bound)
        if isolated is True:
            if isinstance(report.milnor, int) and report.milnor >= 4:
                report.kind = D_CLASS
                report.index = report.milnor
            else:
                report.diagnostics.append(
                    f"isolated with invariant (2,3,3) but Milnor number {report.milnor}")
            return report
        if isolated is False:
            report.kind = WHITNEY_UMBRELLA
            return report
        report.diagnostics.append("isolatedness indeterminate at the degree bound")
        return report
    table = {(Fraction(2), Fraction(3), Fraction(4)): E6,
             (Fraction(2), Fraction(3), Fraction(9, 2)): E7,
             (Fraction(2), Fraction(3), Fraction(5)): E8}
    if finite in table:
        report.kind = table[finite]
        report.milnor = milnor_number(f, degree_bound)
        return report
    report.diagnostics.append("invariant not below (2,3,6)")
    return report


# ---------------------------------------------------------------------------
# triple detectors
# ---------------------------------------------------------------------------

@dataclass
class TripleReport:
    point: Point
    lie_class: Optional[Lie3Class] = None
    duval: Optional[bool] = None
    duval_witness_centre: Optional[Centre] = None
    isolated_sigma_zero: Optional[bool] = None
    surface_class: Optional[SingularityClass] = None
    diagnostics: List[str] = field(default_factory=list)

    def __post_init__(self):
        if self.duval:
            assert self.isolated_sigma_zero, "Du Val points require an isolated zero"

    @property
    def non_nilpotent(self) -> Optional[bool]:
        if self.lie_class is None:
            return None
        return self.lie_class == SPLIT_NONABELIAN


def ideal_member_structured(h: Poly, coordinate_gen: Poly, plane_gen: Optional[Poly]) -> bool:
    """Membership in (u, g) where u = x + s(rest) is coordinate-like.

    Substituting x -> -s kills the first generator; membership then reduces
    to exact divisibility by g in the remaining variables.  This covers the
    normal-form ideals used by the triple drivers; general ideal membership
    is out of scope.
    """
    variables = h.variables
    name = None
    for v in variables:
        unit = tuple(1 if w == v else 0 for w in variables)
        coeff = coordinate_gen.terms.get(unit)
        if coeff is not None and coordinate_gen.degree_in(v) == 1:
            rest = coordinate_gen - Poly.var(variables, v).scale(coeff)
            if rest.degree_in(v) <= 0:
                name = v
                shift = rest.scale(Fraction(1) / coeff)
                break
    if name is None:
        raise ValueError(f"generator {coordinate_gen} is not coordinate-like")
    reduced = h.substitute({name: -shift})
    if reduced.is_zero():
        return True
    if plane_gen is None:
        return False
    plane = plane_gen.substitute({name: -shift})
    return divides(plane, reduced) is not None


def sigma_tangent_to_ideal(sigma: Polyvector, generators: Sequence[Poly]) -> bool:
    """Tangency of a bivector to V(generators), for normal-form generator pairs.

    For a principal ideal this is the divisibility test; for a pair with a
    coordinate-like generator the structured membership above is used.
    Unrecognised generator shapes raise, by the refusal policy.
    """
    generators = [g for g in generators if not g.is_zero()]
    if not generators:
        raise ValueError("empty generator list")
    if len(generators) == 1:
        return is_tangent(sigma, generators[0])
    if len(generators) == 2:
        orderings = [(generators[0], generators[1]), (generators[1], generators[0])]
        for coordinate_gen, plane_gen in orderings:
            try:
                return all(
                    ideal_member_structured(coeff, coordinate_gen, plane_gen)
                    for g in generators
                    for coeff in interior_product_df(g, sigma).terms.values())
            except ValueError:
                continue
        # no coordinate-like generator: fall back to the sufficient test that
        # every contraction coefficient is divisible by a single generator
        sufficient = all(
            any(divides(g, coeff) is not None for g in generators)
            for h in generators
            for coeff in interior_product_df(h, sigma).terms.values())
        if sufficient:
            return True
        raise ValueError(
            "cannot certify tangency: no coordinate-like generator and the "
            "divisibility fallback fails")
    raise ValueError("tangency is implemented for at most two generators")


def detect_nonnilpotent_point(sigma: Polyvector, y_generators: Sequence[Poly],
                              point: Point) -> TripleReport:
    """Linearize a Poisson structure at a singular point of a curve.

    The point is non-nilpotent exactly when the linearized conormal Lie
    algebra is split nonabelian.  A derived subalgebra of dimension two or
    more cannot occur for a curve triple and is surfaced as a diagnostic.
    """
    if not sigma_tangent_to_ideal(sigma, y_generators):
        raise ValueError("the bivector is not tangent to the subvariety")
    for g in y_generators:
        if g.evaluate(point) != 0:
            raise ValueError(f"point {point} does not lie on the subvariety")
    algebra, lie_class = linearize(sigma, point)
    report = TripleReport(point=point, lie_class=lie_class)
    if lie_class == OTHER:
        report.diagnostics.append(
            "derived subalgebra has dimension >= 2: impossible for a curve triple")
    return report


def detect_duval_point(sigma: Polyvector, f: Poly, point: Point,
                       degree_bound: int = DEFAULT_DEGREE_BOUND) -> TripleReport:
    """Decide whether a surface triple has a Du Val point at ``point``.

    Three conditions: the bivector has an isolated zero; the surface germ is
    of type A, D or E; and at the quasi-homogeneity exponents of that class
    the leading term of the bivector is a constant multiple of the Jacobian
    structure of the leading term of the equation.
    """
    if not is_tangent(sigma, f):
        raise ValueError("the bivector is not tangent to the surface")
    if f.evaluate(point) != 0:
        raise ValueError(f"point {point} does not lie on the surface")
    sigma0 = sigma.translate(point)
    f0 = f.translate(point)
    report = TripleReport(point=point)

    coefficients = list(sigma0.terms.values())
    isolated, _ = local_dimension_is_zero(coefficients, degree_bound) \
        if coefficients else (False, None)
    report.isolated_sigma_zero = bool(isolated)
    if isolated is None:
        report.diagnostics.append("isolatedness of the bivector zero is indeterminate")
        report.duval = None
        return report

    surface = classify_surface(f0, degree_bound)
    report.surface_class = surface
    if not (isolated and surface.is_du_val()):
        report.duval = False
        return report

    prepared_f = f0
    prepared_sigma = sigma0
    for name, shift in surface.preparation:
        prepared_f = prepared_f.substitute(
            {name: Poly.var(f0.variables, name) + shift})
        prepared_sigma = shear_polyvector(prepared_sigma, name, -shift)

    exponents = class_exponents(surface.kind, surface.index)
    variables = f0.variables
    for permutation in sorted(set(itertools.permutations(exponents))):
        centre = Centre(variables, tuple(permutation))
        if centre.ord_poly(prepared_f) != 1:
            continue
        lead_f = centre.leading_term_poly(prepared_f)
        lead_sigma = centre.leading_term_polyvector(prepared_sigma)
        target = jacobian_poisson(lead_f)
        ratio = _constant_ratio(lead_sigma, target)
        if ratio is not None:
            report.duval = True
            report.duval_witness_centre = centre
            return report
    report.duval = False
    report.diagnostics.append("no class centre matches the leading term of the bivector")
    return report


def _constant_ratio(left: Polyvector, right: Polyvector) -> Optional[Fraction]:
    """The nonzero constant c with left = c * right, if one exists."""
    if right.is_zero() or left.is_zero():
        return None
    indices, coeff = next(iter(right.terms.items()))
    other = left.terms.get(indices)
    if other is None:
        return None
    exponent, value = next(iter(coeff.terms.items()))
    if exponent not in other.terms:
        return None
    ratio = other.terms[exponent] / value
    if ratio == 0 or left != right.scale(ratio):
        return None
    return ratio


# ---------------------------------------------------------------------------
# symbolic verification of the stated normal forms
# ---------------------------------------------------------------------------

SPLIT_LOG = "split_log"
HEISENBERG_PENCIL = "heisenberg_pencil"
WHITNEY_FAMILY = "whitney_family"
DUVAL_FAMILY = "duval_family"

DUVAL_EQUATIONS = {
    "A": lambda n, V: (Poly.var(V, "x") ** 2 + Poly.var(V, "y") ** 2
                       + Poly.var(V, "z") ** (n + 1)),
    "D": lambda n, V: (Poly.var(V, "x") ** 2
                       + Poly.var(V, "y") ** 2 * Poly.var(V, "z")
                       + Poly.var(V, "z") ** (n - 1)),
    "E6": lambda n, V: (Poly.var(V, "x") ** 2 + Poly.var(V, "y") ** 3
                        + Poly.var(V, "z") ** 4),
    "E7": lambda n, V: (Poly.var(V, "x") ** 2 + Poly.var(V, "y") ** 3
                        + Poly.var(V, "y") * Poly.var(V, "z") ** 3),
    "E8": lambda n, V: (Poly.var(V, "x") ** 2 + Poly.var(V, "y") ** 3
                        + Poly.var(V, "z") ** 5),
}


@dataclass
class NormalFormReport:
    kind: str
    ok: bool
    checks: Dict[str, bool]
    notes: List[str] = field(default_factory=list)
    sigma: Optional[Polyvector] = None


def _series_in(base: Poly, coefficients: Sequence[Union[int, Fraction]],
               lowest_power: int, cap: Optional[int]) -> Poly:
    """sum coefficients[i] * base^(lowest_power + i), truncated at cap."""
    total = Poly.zero(base.variables, cap)
    power = base.with_cap(cap) ** lowest_power if coefficients else None
    for i, c in enumerate(coefficients):
        if c:
            total = total + power.scale(Fraction(c))
        if i + 1 < len(coefficients):
            power = power * base
    return total


def verify_normal_form(kind: str, *, cap: int = 9, **params) -> NormalFormReport:
    """Construct a stated local normal form and verify its asserted properties.

    Families:

    * ``split_log`` (k, lam): (x @x + z^(k+1)/(1 + lam z^k) @z) ^ @y, the
      rational coefficient expanded as a geometric series below ``cap``.
    * ``heisenberg_pencil`` (f, a_coefficients, b_coefficients):
      (x + A(f)) @y^@z + [volume, B(f)] with A = sum a_i f^i (i >= 1), same
      for B.
    * ``whitney_family`` (a_coefficients): jacobian of W = x^2 - y^2 z plus
      W*A(W) @y^@z.
    * ``duval_family`` (family, n, unit): unit * jacobian of the standard
      type-A/D/E equation.

    Each family asserts the Poisson condition (exactly, or to ``cap`` when a
    truncation is involved), the stated leading term, and the stated
    tangency; reports, never guesses, when the cap is too small to certify.
    """
    V = ("x", "y", "z")
    checks: Dict[str, bool] = {}
    notes: List[str] = []

    if kind == SPLIT_LOG:
        k = int(params["k"])
        lam = Fraction(params.get("lam", 0))
        if k < 1:
            raise ValueError("split_log requires k >= 1")
        if cap < k + 2:
            return NormalFormReport(kind, False, {}, [
                f"cap {cap} too small to certify: needs at least k + 2 = {k + 2}"])
        z = Poly.var(V, "z").with_cap(cap)
        # z^(k+1) / (1 + lam z^k) as a geometric series below the cap
        series = Poly.zero(V, cap)
        m = 0
        while k + 1 + m * k < cap:
            series = series + (z ** (k + 1)) * (z ** (m * k)).scale((-lam) ** m)
            m += 1
        field_part = Polyvector(1, V, {(0,): Poly.var(V, "x").with_cap(cap), (2,): series})
        sigma = wedge(field_part, Polyvector.basis_vector(V, "y").map_coefficients(
            lambda c: c.with_cap(cap)))
        checks["poisson_to_cap"] = is_poisson(sigma)[0]
        unweighted = Centre.unweighted(V)
        checks["leading_term"] = (
            unweighted.leading_term_polyvector(sigma)
            == wedge(Polyvector(1, V, {(0,): Poly.var(V, "x").with_cap(cap)}),
                     Polyvector.basis_vector(V, "y").map_coefficients(
                         lambda c: c.with_cap(cap))))
        checks["tangent_to_plane"] = is_tangent(sigma, Poly.var(V, "x").with_cap(cap))
        notes.append(f"certified modulo degree {cap}")

    elif kind == HEISENBERG_PENCIL:
        f = params["f"]
        if f.variables != V:
            f = f.extend_variables(V)
        if f.degree_in("x") > 0 or f.constant_term() != 0:
            raise ValueError("the pencil parameter must be x-free and vanish at 0")
        A = _series_in(f, params.get("a_coefficients", ()), 1, None)
        B = _series_in(f, params.get("b_coefficients", ()), 1, None)
        sigma = (Polyvector(2, V, {(1, 2): Poly.var(V, "x") + A})
                 + jacobian_poisson(B))
        checks["poisson"] = is_poisson(sigma)[0]
        checks["A_in_square"] = A.is_zero() or A.min_total_degree() >= 2
        checks["B_in_cube"] = B.is_zero() or B.min_total_degree() >= 3
        unweighted = Centre.unweighted(V)
        checks["leading_term"] = (
            unweighted.leading_term_polyvector(sigma)
            == Polyvector(2, V, {(1, 2): Poly.var(V, "x")}))
        # integrability reduces to the vanishing of dA ^ dB
        jac = A.diff("y") * B.diff("z") - A.diff("z") * B.diff("y")
        checks["poisson_iff_pencil"] = checks["poisson"] == jac.is_zero()
        generators = [Poly.var(V, "x") + A]
        if not B.is_zero():
            generators.append(f)
            ok = all(
                ideal_member_structured(coeff, generators[0], f)
                for coeff in sigma.terms.values())
        else:
            ok = all(divides(generators[0], coeff) is not None
                     for coeff in sigma.terms.values())
        checks["coefficients_in_ideal"] = ok

    elif kind == WHITNEY_FAMILY:
        W = (Poly.var(V, "x") ** 2 - Poly.var(V, "y") ** 2 * Poly.var(V, "z"))
        A = _series_in(W, params.get("a_coefficients", ()), 1, None)
        sigma = jacobian_poisson(W) + Polyvector(2, V, {(1, 2): W * A})
        checks["poisson"] = is_poisson(sigma)[0]
        centre = Centre.from_exponents(V, (2, 3, 3))
        checks["leading_term"] = (
            centre.leading_term_polyvector(sigma) == jacobian_poisson(W))
        checks["tangent_to_surface"] = is_tangent(sigma, W)
        isolated, _ = local_dimension_is_zero(list(sigma.terms.values()))
        checks["non_isolated_zero"] = isolated is False

    elif kind == DUVAL_FAMILY:
        family = params["family"]
        n = params.get("n")
        unit = params.get("unit")
        f = DUVAL_EQUATIONS[family](n, V)
        sigma = jacobian_poisson(f)
        if unit is not None:
            if unit.variables != V:
                unit = unit.extend_variables(V)
            if unit.constant_term() == 0:
                raise ValueError("the unit must be invertible at the origin")
            sigma = sigma.scale(unit)
        checks["poisson"] = is_poisson(sigma)[0]
        kind_tag = {"A": A_CLASS, "D": D_CLASS}.get(family, family)
        exponents = class_exponents(kind_tag, n)
        centre = Centre.from_exponents(V, exponents)
        scale = Fraction(1) if unit is None else unit.constant_term()
        checks["leading_term"] = (
            centre.leading_term_polyvector(sigma) == jacobian_poisson(f).scale(scale))
        checks["tangent_to_surface"] = is_tangent(sigma, f)
        origin = (Fraction(0),) * 3
        checks["duval_detected"] = bool(
            detect_duval_point(sigma, f, origin).duval)

    else:
        raise ValueError(f"unknown normal form kind {kind!r}")

    report = NormalFormReport(kind, all(checks.values()), checks, notes, None)
    return report
