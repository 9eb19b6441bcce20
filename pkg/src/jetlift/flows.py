"""Jets of integral curves, the Picard oracle, and defect/invariance checks.

`flow_jet` evaluates iterated derivation powers: the i-th derivative of any
coordinate along the integral curve of D equals (D^i x_k) at the basepoint.
`flow_series_picard` integrates the same curve by Picard iteration and is kept
deliberately independent of `flow_jet`, so the two can certify each other.  The
defect machinery compares flows of two fields whose jets agree to some order: the
first disagreement is a tangent vector equal to an iterated Lie bracket, and
`verify_dj` computes it three independent ways.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .algebra import Poly, Scalar, TruncSeries, as_fraction, poly_det
from .errors import DimensionError, PreconditionError
from .jets import Jet, TangentVector, jet_difference
from .vectorfields import VectorField, apply_derivation, iterated_bracket

__all__ = [
    "flow_jet",
    "flow_series_picard",
    "jet_defect",
    "verify_dj",
    "DefectReport",
    "stratum_invariance_check",
    "InvarianceReport",
    "MinorViolation",
]


def _check_point(field: VectorField, point: Sequence[Scalar]) -> Tuple[Fraction, ...]:
    pt = tuple(as_fraction(c) for c in point)
    if len(pt) != field.num_vars:
        raise DimensionError(
            f"point has {len(pt)} coordinates, field has {field.num_vars} variables")
    return pt


def flow_jet(field: VectorField, point: Sequence[Scalar], order: int) -> Jet:
    """Order-n jet of the integral curve through `point`: x_i[k] = (D^i x_k)(point)."""
    pt = _check_point(field, point)
    if order < 0:
        raise ValueError("order must be >= 0")
    m = field.num_vars
    rows: List[Tuple[Fraction, ...]] = [pt]
    powers = [Poly.variable(m, k) for k in range(m)]
    for _ in range(order):
        powers = [apply_derivation(field, p) for p in powers]
        rows.append(tuple(p.eval(pt) for p in powers))
    return Jet(m, order, rows)


def flow_series_picard(field: VectorField, point: Sequence[Scalar],
                       order: int) -> TruncSeries:
    """Truncated integral-curve series by Picard iteration.

    gamma_{j+1}(t) = point + integral_0^t D(gamma_j(s)) ds, truncated at `order`;
    the iteration is run to its fixed point and the stabilization is asserted.
    """
    pt = _check_point(field, point)
    if order < 0:
        raise ValueError("order must be >= 0")
    m = field.num_vars
    gamma = TruncSeries.constant(pt, order)
    for _ in range(order + 1):
        gamma = _picard_round(field, pt, gamma)
    settled = _picard_round(field, pt, gamma)
    if settled != gamma:
        raise AssertionError("Picard iteration failed to stabilize")
    return gamma


def _picard_round(field: VectorField, pt, gamma: TruncSeries) -> TruncSeries:
    order = gamma.order
    new_cols = []
    for k in range(field.num_vars):
        rhs = field.components[k].compose_series(gamma).component(0)
        col = [pt[k]] + [rhs[j] / (j + 1) for j in range(order)]
        new_cols.append(col)
    rows = [tuple(col[j] for col in new_cols) for j in range(order + 1)]
    return TruncSeries(field.num_vars, order, rows)


def _first_jet_disagreement(j1: Jet, j2: Jet) -> Optional[int]:
    for i in range(min(j1.order, j2.order) + 1):
        if j1.coords[i] != j2.coords[i]:
            return i
    return None


def jet_defect(d1: VectorField, d2: VectorField, point: Sequence[Scalar],
               order: int) -> TangentVector:
    """Difference of the order-(n+1) flow jets of two fields whose n-jets agree.

    Orientation: flow of d2 minus flow of d1.  The result is cross-checked against
    the iterated bracket [d1, d2]^(n+1) at the point; a mismatch would falsify the
    defect identity and raises AssertionError.
    """
    if order < 1:
        raise ValueError("defects need order >= 1")
    jn1 = flow_jet(d1, point, order)
    jn2 = flow_jet(d2, point, order)
    bad = _first_jet_disagreement(jn1, jn2)
    if bad is not None:
        raise PreconditionError(
            f"flow jets differ at order {bad}: {jn1.coords[bad]} != {jn2.coords[bad]}")
    diff = jet_difference(flow_jet(d2, point, order + 1),
                          flow_jet(d1, point, order + 1))
    bracket_vec = iterated_bracket(d1, d2, order + 1).value_at(point)
    if diff.vec != bracket_vec:
        raise AssertionError(
            f"defect {diff.vec} does not equal iterated bracket {bracket_vec}")
    return diff


@dataclass(frozen=True)
class DefectReport:
    """Three independent evaluations of the same defect vector."""
    order: int
    point: Tuple[Fraction, ...]
    from_jets: Tuple[Fraction, ...]
    from_derivation_powers: Tuple[Fraction, ...]
    from_bracket: Tuple[Fraction, ...]

    @property
    def agree(self) -> bool:
        return self.from_jets == self.from_derivation_powers == self.from_bracket

    def render(self) -> str:
        fmt = lambda v: "(" + ",".join(str(c) for c in v) + ")"
        return "\n".join([
            f"jet difference        : {fmt(self.from_jets)}",
            f"derivation powers     : {fmt(self.from_derivation_powers)}",
            f"iterated bracket      : {fmt(self.from_bracket)}",
            f"agree                 : {'yes' if self.agree else 'NO'}",
        ])


def verify_dj(d1: VectorField, d2: VectorField, point: Sequence[Scalar],
              order: int) -> DefectReport:
    """Compute the flow-jet defect three ways and report whether they coincide.

    (a) difference of the order-(n+1) flow jets, (b) ((D2^{n+1} - D1^{n+1}) x_k) at
    the point, (c) the iterated bracket value.  The precondition (order-n jets agree)
    is checked, not assumed.
    """
    if order < 1:
        raise ValueError("defects need order >= 1")
    pt = _check_point(d1, point)
    jn1 = flow_jet(d1, pt, order)
    jn2 = flow_jet(d2, pt, order)
    bad = _first_jet_disagreement(jn1, jn2)
    if bad is not None:
        raise PreconditionError(
            f"flow jets differ at order {bad}: {jn1.coords[bad]} != {jn2.coords[bad]}")

    a = jet_difference(flow_jet(d2, pt, order + 1), flow_jet(d1, pt, order + 1)).vec

    m = d1.num_vars
    powers_vec = []
    for k in range(m):
        p1 = p2 = Poly.variable(m, k)
        for _ in range(order + 1):
            p1 = apply_derivation(d1, p1)
            p2 = apply_derivation(d2, p2)
        powers_vec.append((p2 - p1).eval(pt))
    b = tuple(powers_vec)

    c = iterated_bracket(d1, d2, order + 1).value_at(pt)
    return DefectReport(order, pt, a, b, c)


# -- rank-stratum invariance along flows -------------------------------------

@dataclass(frozen=True)
class MinorViolation:
    rows: Tuple[int, ...]
    cols: Tuple[int, ...]
    first_nonzero_order: int
    coefficient: Fraction


@dataclass(frozen=True)
class InvarianceReport:
    rank: int
    order: int
    minors_checked: int
    violations: Tuple[MinorViolation, ...]

    @property
    def invariant(self) -> bool:
        return not self.violations

    def render(self) -> str:
        head = (f"rank {self.rank}; {self.minors_checked} minor(s) composed with the "
                f"flow to order {self.order}")
        if self.invariant:
            return head + ": all vanish"
        lines = [head + f": {len(self.violations)} VIOLATION(S)"]
        for v in self.violations:
            lines.append(
                f"  minor rows={v.rows} cols={v.cols}: first nonzero coefficient "
                f"{v.coefficient} at t^{v.first_nonzero_order}")
        return "\n".join(lines)


def stratum_invariance_check(distribution, combo: Sequence[Poly],
                             point: Sequence[Scalar], order: int = 10) -> InvarianceReport:
    """Check that rank minors vanish along the flow of a combination of generators.

    `combo` gives D = sum_k combo[k] * gens[k]; requiring the combination up front is
    what guarantees D is a section of the distribution.  With r the rank at the
    starting point, every (r+1)x(r+1) minor of the generator component matrix is
    composed with the order-N Picard flow of D and must vanish identically.
    """
    from .frobenius import rank_at  # local import to avoid a module cycle

    m = distribution.num_vars
    gens = distribution.gens
    if len(combo) != len(gens):
        raise DimensionError(f"{len(combo)} coefficients for {len(gens)} generators")
    for c in combo:
        if c.num_vars != m:
            raise DimensionError("combination coefficients live on the wrong space")
    field = VectorField.zero(m)
    for c, g in zip(combo, gens):
        field = field + g.scale(c)
    pt = _check_point(field, point)
    r = rank_at(distribution, pt)
    size = r + 1
    if size > m or size > len(gens):
        return InvarianceReport(r, order, 0, ())

    gamma = flow_series_picard(field, pt, order)
    violations = []
    checked = 0
    for rows in combinations(range(m), size):
        for cols in combinations(range(len(gens)), size):
            checked += 1
            sub = [[gens[j].components[i] for j in cols] for i in rows]
            minor = poly_det(sub)
            composed = minor.compose_series(gamma).component(0)
            for j, coeff in enumerate(composed):
                if coeff:
                    violations.append(MinorViolation(rows, cols, j, coeff))
                    break
    return InvarianceReport(r, order, checked, tuple(violations))
