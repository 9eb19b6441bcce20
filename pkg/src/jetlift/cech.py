"""Two-chart curve atlases, presented sheaves, and Čech cochains over Laurent windows.

The compact curve is fixed to the two-chart shape with parameters z and w glued by
w = 1/z; with only two charts there are no triple overlaps, so antisymmetry is the
whole cocycle condition, and first cohomology is the cokernel of an exact linear map
between finite Laurent windows.  Sections of the presented sheaf are recorded as
generator-coefficient vectors; crossing the overlap substitutes the parameter and
multiplies by a transition matrix computed from the target atlas Jacobian.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .algebra import Poly, monomial_inverse, poly_det
from .errors import DimensionError, LiftError, WindowOverflowError
from .vectorfields import VectorField

__all__ = [
    "CurveAtlas",
    "TargetAtlas",
    "MorphismData",
    "PresentedSheaf",
    "Cochain0",
    "Cochain1",
    "Obstruction",
    "restrict_section",
    "coboundary",
    "cocycle_check",
    "solve_coboundary",
]

Window = Tuple[int, int]


# -- univariate Laurent helpers ----------------------------------------------

def uni(terms, *, laurent=True) -> Poly:
    """Univariate (Laurent) polynomial from {exponent: coefficient}."""
    return Poly(1, {(e,): c for e, c in terms.items()}, laurent=laurent)


def uni_x(e: int = 1) -> Poly:
    return Poly(1, {(e,): 1}, laurent=True)


def negate_exponents(p: Poly) -> Poly:
    """p(1/z) for univariate Laurent p."""
    if p.num_vars != 1:
        raise DimensionError("parameter substitution needs a univariate polynomial")
    return Poly._raw(1, {(-e[0],): c for e, c in p.terms.items()})


def inject_univariate(p: Poly, num_vars: int, index: int) -> Poly:
    """Re-read a univariate polynomial as a polynomial in variable `index`."""
    if p.num_vars != 1:
        raise DimensionError("injection needs a univariate polynomial")
    terms = {}
    for (e,), c in p.terms.items():
        exp = [0] * num_vars
        exp[index] = e
        terms[tuple(exp)] = c
    return Poly._raw(num_vars, terms)


def window_of(polys: Sequence[Poly]) -> Window:
    lo, hi = 0, 0
    for p in polys:
        for (e,) in p.terms:
            lo = min(lo, e)
            hi = max(hi, e)
    return lo, hi


def check_window(polys: Sequence[Poly], window: Window, what: str):
    lo, hi = window
    need_lo, need_hi = window_of(polys)
    if need_lo < lo or need_hi > hi:
        raise WindowOverflowError(
            f"{what} needs window [{min(need_lo, lo)}, {max(need_hi, hi)}], "
            f"declared [{lo}, {hi}]",
            required_window=(min(need_lo, lo), max(need_hi, hi)))


# -- atlases ------------------------------------------------------------------

@dataclass(frozen=True)
class CurveAtlas:
    """Two charts with parameters z and w, glued by w = 1/z away from the origins."""
    z_name: str = "z"
    w_name: str = "w"

    def param_name(self, chart: int) -> str:
        return (self.z_name, self.w_name)[chart]


class TargetAtlas:
    """One or two coordinate charts for the target, with a monomial transition.

    For two charts, `transition[k]` expresses chart-0 coordinate k as a Laurent
    monomial in the chart-1 coordinates (e.g. x -> 1/x); monomials keep every
    substitution and Jacobian inverse inside the exact Laurent world, and the
    inverse transition is computed symbolically.
    """

    __slots__ = ("names", "num_charts", "transition", "inverse")

    def __init__(self, names: Sequence[str], num_charts: int,
                 transition: Optional[Sequence[Poly]] = None):
        names = tuple(names)
        q = len(names)
        if q < 1:
            raise ValueError("at least one target coordinate required")
        if num_charts not in (1, 2):
            raise ValueError("only one- or two-chart targets are supported")
        if (transition is None) != (num_charts == 1):
            raise ValueError("two charts need a transition, one chart forbids it")
        inverse = None
        if transition is not None:
            transition = tuple(transition)
            if len(transition) != q:
                raise DimensionError("one transition formula per coordinate required")
            inverse = _invert_monomial_map(transition)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "num_charts", num_charts)
        object.__setattr__(self, "transition", transition)
        object.__setattr__(self, "inverse", inverse)

    def __setattr__(self, name, value):
        raise AttributeError("TargetAtlas is immutable")

    @property
    def num_coords(self) -> int:
        return len(self.names)

    def jacobian(self) -> List[List[Poly]]:
        """J[k][j] = d(transition_k)/d(chart-1 coordinate j)."""
        if self.transition is None:
            raise LiftError("one-chart target has no transition Jacobian")
        q = self.num_coords
        return [[self.transition[k].partial(j) for j in range(q)]
                for k in range(q)]

    def jacobian_inverse(self) -> List[List[Poly]]:
        """Exact inverse of the transition Jacobian (determinant must be a monomial)."""
        jac = self.jacobian()
        q = self.num_coords
        det = poly_det(jac)
        det_inv = monomial_inverse(det)
        inv = []
        for i in range(q):
            row = []
            for j in range(q):
                minor = [[jac[r][c] for c in range(q) if c != i]
                         for r in range(q) if r != j]
                cof = poly_det(minor) if minor else Poly.one(q)
                if (i + j) % 2:
                    cof = -cof
                row.append(cof * det_inv)
            inv.append(row)
        return inv


def _invert_monomial_map(transition: Sequence[Poly]) -> Tuple[Poly, ...]:
    """Invert x0 = G(x1) when each G_k is c * x_j^(+-1) with distinct j."""
    q = len(transition)
    inverse: List[Optional[Poly]] = [None] * q
    for k, g in enumerate(transition):
        mono = g.as_monomial()
        if mono is None:
            raise LiftError(f"transition component {g} is not a Laurent monomial")
        exps, c = mono
        support = [j for j, e in enumerate(exps) if e]
        if len(support) != 1 or exps[support[0]] not in (1, -1):
            raise LiftError(
                f"transition component {g} must be c*x_j or c*x_j^-1")
        j = support[0]
        e = exps[support[0]]
        if inverse[j] is not None:
            raise LiftError("transition reuses a coordinate; not invertible")
        # x0_k = c * x1_j^e  =>  x1_j = (x0_k / c)^e  (e = +-1)
        exp_vec = [0] * q
        exp_vec[k] = e
        inverse[j] = Poly(q, {tuple(exp_vec): Fraction(1) / c if e == 1 else c},
                          laurent=True)
    if any(p is None for p in inverse):
        raise LiftError("transition does not determine every coordinate")
    return tuple(p for p in inverse)  # type: ignore[misc]


@dataclass(frozen=True)
class MorphismData:
    """Per chart, the map into target coordinates as Laurent polynomials in the parameter."""
    chart0: Tuple[Poly, ...]
    chart1: Tuple[Poly, ...]

    def components(self, chart: int) -> Tuple[Poly, ...]:
        return (self.chart0, self.chart1)[chart]

    def verify(self, atlas: TargetAtlas):
        """Both chart representations must agree on the overlap, both ways."""
        if len(self.chart0) != atlas.num_coords or len(self.chart1) != atlas.num_coords:
            raise DimensionError("morphism components do not match target coordinates")
        if atlas.transition is None:
            expect0 = tuple(negate_exponents(p) for p in self.chart1)
            if expect0 != self.chart0:
                raise LiftError("morphism charts disagree on the overlap")
            return
        # chart-1 data pushed through the transition, read at w = 1/z
        try:
            pushed = [g.substitute(self.chart1) for g in atlas.transition]
            pulled = [g.substitute(self.chart0) for g in atlas.inverse]
        except ValueError as exc:
            raise LiftError(f"cannot push the morphism through the transition: {exc}")
        expect0 = tuple(negate_exponents(p) for p in pushed)
        if expect0 != self.chart0:
            raise LiftError("morphism charts disagree on the overlap (chart1 -> chart0)")
        expect1 = tuple(negate_exponents(p) for p in pulled)
        if expect1 != self.chart1:
            raise LiftError("morphism charts disagree on the overlap (chart0 -> chart1)")


# -- presented sheaves ---------------------------------------------------------

def evaluate_along_curve(p: Poly, morphism: Sequence[Poly]) -> Poly:
    """Restrict a function of (space coords, t) to the curve: space -> f(param), t -> 0."""
    values = list(morphism) + [Poly.zero(1)]
    if len(values) != p.num_vars:
        raise DimensionError("function does not live on space coordinates plus time")
    return p.substitute(values)


class PresentedSheaf:
    """Per-chart generator lists with a Laurent transition matrix for coefficients.

    A section over chart alpha is an s-vector of Laurent polynomials in that chart's
    parameter (coefficients of the generators).  On the overlap, chart-1 coefficient
    vectors are read in the chart-0 frame as T(z) . c(1/z); T is computed from the
    target-atlas Jacobian along the curve and re-verified against the generators.
    """

    __slots__ = ("atlas", "morphism", "gens0", "gens1", "transition")

    def __init__(self, atlas: Optional[TargetAtlas], morphism: Optional[MorphismData],
                 gens0: Sequence[VectorField], gens1: Sequence[VectorField],
                 transition: Sequence[Sequence[Poly]]):
        gens0, gens1 = tuple(gens0), tuple(gens1)
        if len(gens0) != len(gens1):
            raise DimensionError("both charts need the same number of generators")
        transition = tuple(tuple(row) for row in transition)
        s = len(gens0)
        if len(transition) != s or any(len(row) != s for row in transition):
            raise DimensionError("transition matrix must be s x s")
        object.__setattr__(self, "atlas", atlas)
        object.__setattr__(self, "morphism", morphism)
        object.__setattr__(self, "gens0", gens0)
        object.__setattr__(self, "gens1", gens1)
        object.__setattr__(self, "transition", transition)

    def __setattr__(self, name, value):
        raise AttributeError("PresentedSheaf is immutable")

    @property
    def num_gens(self) -> int:
        return len(self.gens0)

    def gens(self, chart: int) -> Tuple[VectorField, ...]:
        return (self.gens0, self.gens1)[chart]

    @classmethod
    def line_bundle(cls, transition: Poly) -> "PresentedSheaf":
        """Formal one-generator presentation from a bare transition factor in z."""
        return cls(None, None,
                   [VectorField([Poly.one(2), Poly.zero(2)])],
                   [VectorField([Poly.one(2), Poly.zero(2)])],
                   [[transition]])

    @classmethod
    def from_charts(cls, atlas: TargetAtlas, morphism: MorphismData,
                    gens0: Sequence[VectorField],
                    gens1: Sequence[VectorField]) -> "PresentedSheaf":
        """Compute the coefficient transition from the atlas and verify consistency."""
        morphism.verify(atlas)
        q = atlas.num_coords
        for g in tuple(gens0) + tuple(gens1):
            if g.num_vars != q + 1:
                raise DimensionError(
                    "generators must live on space coordinates plus time")
            if not g.components[q].is_zero():
                raise LiftError("generators must have zero time component")
        transition = _coefficient_transition(atlas, morphism, gens0, gens1)
        return cls(atlas, morphism, gens0, gens1, transition)

    def gens_along_curve(self, chart: int) -> List[List[Poly]]:
        """Values of the chart's generators along the curve, in chart coordinates.

        Returns, per generator, the q space components as Laurent polynomials in
        that chart's parameter.
        """
        if self.atlas is None or self.morphism is None:
            raise LiftError("formal presentation carries no geometric data")
        q = self.atlas.num_coords
        f = self.morphism.components(chart)
        out = []
        for g in self.gens(chart):
            out.append([evaluate_along_curve(g.components[k], f) for k in range(q)])
        return out


def _coefficient_transition(atlas: TargetAtlas, morphism: MorphismData,
                            gens0: Sequence[VectorField],
                            gens1: Sequence[VectorField]) -> List[List[Poly]]:
    """Solve gen1_j (pushed to the chart-0 frame along the curve) = sum_k T[k][j] gen0_k."""
    q = atlas.num_coords
    f1 = morphism.components(1)
    # chart-1 generator values along the curve, pushed to chart-0 frame, in z
    pushed: List[List[Poly]] = []
    for g in gens1:
        vec_w = [evaluate_along_curve(g.components[k], f1) for k in range(q)]
        if atlas.transition is not None:
            jac = atlas.jacobian()
            jac_on_curve = [[evaluate_along_curve(
                inject_time(jac[k][j], q + 1), f1) for j in range(q)]
                for k in range(q)]
            vec_w = [sum((jac_on_curve[k][j] * vec_w[j] for j in range(q)),
                         Poly.zero(1)) for k in range(q)]
        pushed.append([negate_exponents(p) for p in vec_w])
    base: List[List[Poly]] = []
    f0 = morphism.components(0)
    for g in gens0:
        base.append([evaluate_along_curve(g.components[k], f0) for k in range(q)])

    lo, hi = window_of([p for vec in pushed + base for p in vec])
    span = hi - lo
    solve_window = (lo - span - 1, hi + span + 1)
    s = len(gens0)
    transition: List[List[Poly]] = [[Poly.zero(1) for _ in range(s)] for _ in range(s)]
    for j in range(s):
        coeffs = _solve_section_coordinates(base, pushed[j], solve_window)
        if coeffs is None:
            raise LiftError(
                "generator transition rule inconsistent with the target Jacobian")
        for k in range(s):
            transition[k][j] = coeffs[k]
    return transition


def inject_time(p: Poly, num_vars: int) -> Poly:
    """Pad a space-only polynomial with a time variable (exponent 0)."""
    if p.num_vars != num_vars - 1:
        raise DimensionError("padding expects exactly one missing variable")
    return Poly._raw(num_vars, {e + (0,): c for e, c in p.terms.items()})


def _solve_section_coordinates(gen_values: Sequence[Sequence[Poly]],
                               target: Sequence[Poly],
                               window: Window) -> Optional[Tuple[Poly, ...]]:
    """Solve sum_k c_k(z) * gen_values[k] = target for Laurent c_k within `window`."""
    lo, hi = window
    s = len(gen_values)
    q = len(target)
    unknowns = [(k, e) for k in range(s) for e in range(lo, hi + 1)]
    row_exps = set()
    for vec in list(gen_values) + [list(target)]:
        for p in vec:
            for (e,) in p.terms:
                row_exps.add(e)
    for k, e in unknowns:
        for p in gen_values[k]:
            for (ge,) in p.terms:
                row_exps.add(ge + e)
    rows = sorted(row_exps)
    row_index = {(comp, e): i for i, (comp, e) in enumerate(
        [(c, e) for c in range(q) for e in rows])}
    matrix = [[Fraction(0)] * len(unknowns) for _ in range(len(row_index))]
    for col, (k, e) in enumerate(unknowns):
        shift = uni_x(e) if e else Poly.one(1)
        for comp in range(q):
            prod = shift * gen_values[k][comp] if e else gen_values[k][comp]
            for (pe,), c in prod.terms.items():
                matrix[row_index[(comp, pe)]][col] = c
    rhs = [Fraction(0)] * len(row_index)
    for comp in range(q):
        for (pe,), c in target[comp].terms.items():
            rhs[row_index[(comp, pe)]] = c
    solution = linalg.solve(matrix, rhs)
    if solution is None:
        return None
    out = []
    for k in range(s):
        terms = {}
        for col, (kk, e) in enumerate(unknowns):
            if kk == k and solution[col]:
                terms[(e,)] = solution[col]
        out.append(Poly._raw(1, terms))
    return tuple(out)


# -- cochains ------------------------------------------------------------------

class Cochain0:
    """Per chart, an s-vector of generator coefficients in the chart's own parameter."""

    __slots__ = ("sheaf", "chart0", "chart1", "window")

    def __init__(self, sheaf: PresentedSheaf, chart0: Sequence[Poly],
                 chart1: Sequence[Poly], window: Window):
        chart0, chart1 = tuple(chart0), tuple(chart1)
        s = sheaf.num_gens
        if len(chart0) != s or len(chart1) != s:
            raise DimensionError(f"cochain needs {s} coefficients per chart")
        check_window(chart0 + chart1, window, "0-cochain")
        object.__setattr__(self, "sheaf", sheaf)
        object.__setattr__(self, "chart0", chart0)
        object.__setattr__(self, "chart1", chart1)
        object.__setattr__(self, "window", window)

    def __setattr__(self, name, value):
        raise AttributeError("Cochain0 is immutable")

    def coefficients(self, chart: int) -> Tuple[Poly, ...]:
        return (self.chart0, self.chart1)[chart]

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.chart0 + self.chart1)

    def __eq__(self, other):
        if not isinstance(other, Cochain0):
            return NotImplemented
        return (self.chart0, self.chart1) == (other.chart0, other.chart1)

    def __hash__(self):
        return hash((self.chart0, self.chart1))


class Cochain1:
    """Overlap sections nu_(0,1) and nu_(1,0), both written in the chart-0 frame."""

    __slots__ = ("sheaf", "nu01", "nu10", "window")

    def __init__(self, sheaf: PresentedSheaf, nu01: Sequence[Poly],
                 nu10: Sequence[Poly], window: Window):
        nu01, nu10 = tuple(nu01), tuple(nu10)
        s = sheaf.num_gens
        if len(nu01) != s or len(nu10) != s:
            raise DimensionError(f"cochain needs {s} coefficients per overlap")
        check_window(nu01 + nu10, window, "1-cochain")
        object.__setattr__(self, "sheaf", sheaf)
        object.__setattr__(self, "nu01", nu01)
        object.__setattr__(self, "nu10", nu10)
        object.__setattr__(self, "window", window)

    def __setattr__(self, name, value):
        raise AttributeError("Cochain1 is immutable")

    @classmethod
    def from_nu01(cls, sheaf: PresentedSheaf, nu01: Sequence[Poly],
                  window: Window) -> "Cochain1":
        return cls(sheaf, nu01, [-p for p in nu01], window)

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.nu01)

    def __eq__(self, other):
        if not isinstance(other, Cochain1):
            return NotImplemented
        return (self.nu01, self.nu10) == (other.nu01, other.nu10)

    def __hash__(self):
        return hash((self.nu01, self.nu10))


def restrict_section(sheaf: PresentedSheaf, chart: int, coefficients: Sequence[Poly],
                     window: Window) -> Tuple[Poly, ...]:
    """Restrict a chart section to the overlap, expressed in the chart-0 frame."""
    coefficients = tuple(coefficients)
    if len(coefficients) != sheaf.num_gens:
        raise DimensionError(f"expected {sheaf.num_gens} generator coefficients")
    if chart == 0:
        out = coefficients
    elif chart == 1:
        substituted = [negate_exponents(p) for p in coefficients]
        out = tuple(
            sum((sheaf.transition[k][j] * substituted[j]
                 for j in range(sheaf.num_gens)), Poly.zero(1))
            for k in range(sheaf.num_gens))
    else:
        raise ValueError("chart must be 0 or 1")
    check_window(out, window, "restricted section")
    return out


def coboundary(cochain: Cochain0, window: Optional[Window] = None) -> Cochain1:
    """(delta lambda)_(0,1) = restrict(lambda_0) - restrict(lambda_1)."""
    window = window or cochain.window
    r0 = restrict_section(cochain.sheaf, 0, cochain.chart0, window)
    r1 = restrict_section(cochain.sheaf, 1, cochain.chart1, window)
    nu01 = tuple(a - b for a, b in zip(r0, r1))
    return Cochain1.from_nu01(cochain.sheaf, nu01, window)


def cocycle_check(cochain: Cochain1) -> bool:
    """With two charts the cocycle condition is exactly antisymmetry."""
    return all((a + b).is_zero() for a, b in zip(cochain.nu01, cochain.nu10))


@dataclass(frozen=True)
class Obstruction:
    """Nonzero class of a 1-cochain modulo coboundaries, within the window."""
    residual: Tuple[Poly, ...]
    cokernel_dim: int
    window: Window

    def render(self, param: str = "z") -> str:
        body = ", ".join(p.render([param]) for p in self.residual)
        return f"OBSTRUCTED class {body} cokernel_dim {self.cokernel_dim}"


def solve_coboundary(cochain: Cochain1, chart_degree: Optional[int] = None):
    """Split nu = delta(lambda) with chart-polynomial lambda, or report the obstruction.

    Unknowns are chart-0 and chart-1 coefficients with exponents in
    [0, chart_degree]; one-sided coefficients whose restriction would leave the
    overlap window cannot contribute and are excluded.  Free variables are pinned to
    zero, so nu = 0 yields lambda = 0 and the splitting is canonical.
    """
    if not cocycle_check(cochain):
        raise LiftError("cocycle condition (antisymmetry) fails")
    sheaf = cochain.sheaf
    s = sheaf.num_gens
    lo, hi = cochain.window
    if chart_degree is None:
        chart_degree = hi
    basis: List[Tuple[int, int, int]] = []   # (chart, gen, exponent)
    columns: List[List[Fraction]] = []
    row_index = {(k, e): i for i, (k, e) in enumerate(
        [(k, e) for k in range(s) for e in range(lo, hi + 1)])}

    def column_for(chart: int, gen: int, exp: int) -> Optional[List[Fraction]]:
        coeffs = [Poly.zero(1)] * s
        coeffs[gen] = uni_x(exp) if exp else Poly.one(1)
        try:
            restricted = restrict_section(sheaf, chart, coeffs, cochain.window)
        except WindowOverflowError:
            return None
        sign = 1 if chart == 0 else -1
        col = [Fraction(0)] * len(row_index)
        for k in range(s):
            for (pe,), c in restricted[k].terms.items():
                col[row_index[(k, pe)]] = sign * c
        return col

    for chart in (0, 1):
        for gen in range(s):
            for exp in range(0, chart_degree + 1):
                col = column_for(chart, gen, exp)
                if col is not None:
                    basis.append((chart, gen, exp))
                    columns.append(col)

    matrix = [[columns[c][r] for c in range(len(columns))]
              for r in range(len(row_index))]
    rhs = [Fraction(0)] * len(row_index)
    for k in range(s):
        for (pe,), c in cochain.nu01[k].terms.items():
            rhs[row_index[(k, pe)]] = c

    x, residual, rank = linalg.solve_with_residual(matrix, rhs)
    if any(residual):
        res_polys = [Poly.zero(1)] * s
        terms: List[dict] = [{} for _ in range(s)]
        for (k, e), i in row_index.items():
            if residual[i]:
                terms[k][(e,)] = residual[i]
        res_polys = [Poly._raw(1, t) for t in terms]
        return Obstruction(tuple(res_polys), len(row_index) - rank, cochain.window)

    lam0_terms: List[dict] = [{} for _ in range(s)]
    lam1_terms: List[dict] = [{} for _ in range(s)]
    for value, (chart, gen, exp) in zip(x, basis):
        if not value:
            continue
        target = lam0_terms if chart == 0 else lam1_terms
        target[gen][(exp,)] = value
    lam0 = [Poly._raw(1, t) for t in lam0_terms]
    lam1 = [Poly._raw(1, t) for t in lam1_terms]
    return Cochain0(sheaf, lam0, lam1, cochain.window)
