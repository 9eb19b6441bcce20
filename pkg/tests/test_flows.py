"""Flow jets, the Picard series oracle, defect identities, stratum invariance."""

import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jetlift.algebra import Poly, TruncSeries
from jetlift.errors import DimensionError, PreconditionError
from jetlift.flows import (flow_jet, flow_series_picard, jet_defect,
                           stratum_invariance_check, verify_dj)
from jetlift.frobenius import Distribution
from jetlift.jets import Jet, jet_from_series, jet_project
from jetlift.vectorfields import VectorField, iterated_bracket

from strategies import points, vector_fields

X = Poly.variable(2, 0)
Y = Poly.variable(2, 1)


def field(*comps):
    return VectorField(list(comps))


class TestFlowJet:
    def test_straight_line(self):
        d = field(Poly.one(2), Poly.zero(2))
        assert flow_jet(d, [0, 0], 3) == Jet(2, 3, [(0, 0), (1, 0), (0, 0), (0, 0)])

    def test_exponential(self):
        d = VectorField([Poly.variable(1, 0)])
        assert flow_jet(d, [1], 4) == Jet(1, 4, [(1,)] * 5)

    def test_rotation(self):
        d = field(Y, -X)
        assert flow_jet(d, [1, 0], 2) == Jet(2, 2, [(1, 0), (0, -1), (-1, 0)])

    def test_first_order_is_field_value(self):
        d = field(X * Y, X - Y)
        j = flow_jet(d, [Fraction(2), Fraction(-1, 2)], 1)
        assert j.coords[1] == d.value_at([Fraction(2), Fraction(-1, 2)])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            flow_jet(field(X, Y), [1], 2)


class TestPicard:
    def test_straight_line(self):
        d = field(Poly.one(2), Poly.zero(2))
        s = flow_series_picard(d, [0, 0], 1)
        assert s == TruncSeries(2, 1, [(0, 0), (1, 0)])

    def test_exponential_coefficients(self):
        d = VectorField([Poly.variable(1, 0)])
        s = flow_series_picard(d, [1], 3)
        assert s.component(0) == [Fraction(1, factorial(i)) for i in range(4)]

    def test_nilpotent_integration(self):
        # x' = 1, y' = x from the origin: x = t, y = t^2/2
        d = field(Poly.one(2), X)
        s = flow_series_picard(d, [0, 0], 3)
        assert s.component(0) == [0, 1, 0, 0]
        assert s.component(1) == [0, 0, Fraction(1, 2), 0]


@settings(max_examples=40, deadline=None)
@given(vector_fields(2, max_degree=2, max_terms=2), points(2, 2, 2),
       st.integers(min_value=0, max_value=5))
def test_oracle_equivalence(d, pt, order):
    assert jet_from_series(flow_series_picard(d, pt, order)) == flow_jet(d, pt, order)


@settings(max_examples=30, deadline=None)
@given(vector_fields(2, max_degree=2, max_terms=2), points(2, 2, 2))
def test_tower_consistency(d, pt):
    top = flow_jet(d, pt, 4)
    for m in range(5):
        assert jet_project(top, m) == flow_jet(d, pt, m)


@settings(max_examples=30, deadline=None)
@given(vector_fields(2, max_degree=2, max_terms=2), points(2, 2, 2),
       st.integers(min_value=-3, max_value=3))
def test_reparametrization_scaling(d, pt, c):
    base = flow_jet(d, pt, 3)
    scaled = flow_jet(d.scale(Fraction(c)), pt, 3)
    for i in range(4):
        assert scaled.coords[i] == tuple(Fraction(c) ** i * v for v in base.coords[i])


class TestDefect:
    def test_worked_example_order_one(self):
        d1 = field(Poly.one(2), Poly.zero(2))
        d2 = field(Poly.one(2), X)
        assert jet_defect(d1, d2, [0, 0], 1).vec == (0, 1)

    def test_worked_example_order_two(self):
        d1 = field(Poly.one(2), Poly.zero(2))
        d2 = field(Poly.one(2), X ** 2)
        assert jet_defect(d1, d2, [0, 0], 2).vec == (0, 2)

    def test_equal_fields(self):
        d = field(X, Y)
        assert jet_defect(d, d, [1, 2], 2).vec == (0, 0)

    def test_precondition_names_first_bad_order(self):
        d1 = field(Poly.one(2), Poly.zero(2))
        d2 = field(Poly.one(2), X)
        with pytest.raises(PreconditionError, match="order 2"):
            jet_defect(d1, d2, [0, 0], 2)


def _random_poly(rng, num_vars, max_degree, max_terms):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = tuple(rng.randint(0, max_degree) for _ in range(num_vars))
        if sum(e) > max_degree:
            continue
        terms[e] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return Poly(num_vars, terms)


def _random_field(rng, num_vars, max_degree=3, max_terms=2):
    return VectorField([_random_poly(rng, num_vars, max_degree, max_terms)
                        for _ in range(num_vars)])


def perturbation_in_maximal_ideal_power(rng, num_vars, point, order,
                                        max_degree=1, max_terms=1):
    """Random field with every coefficient in the order-th power of the maximal
    ideal at `point`: random fields times degree-`order` monomials in (x - point)."""
    shifted = [Poly.variable(num_vars, k) - point[k] for k in range(num_vars)]
    comps = []
    for _ in range(num_vars):
        exps = [0] * num_vars
        for _ in range(order):
            exps[rng.randrange(num_vars)] += 1
        mono = Poly.one(num_vars)
        for k, e in enumerate(exps):
            mono = mono * shifted[k] ** e
        comps.append(mono * _random_poly(rng, num_vars, max_degree, max_terms))
    return VectorField(comps)


def test_randomized_defect_identity():
    rng = random.Random(20240)
    for _ in range(40):
        m = rng.choice([1, 2, 3])
        n = rng.choice([1, 2, 3, 4])
        pt = tuple(Fraction(rng.randint(-2, 2), rng.randint(1, 2)) for _ in range(m))
        d1 = _random_field(rng, m)
        d2 = d1 + perturbation_in_maximal_ideal_power(rng, m, pt, n)
        report = verify_dj(d1, d2, pt, n)
        assert report.agree
        assert report.from_bracket == iterated_bracket(d1, d2, n + 1).value_at(pt)


def test_verify_dj_commuting_fields_zero():
    d1 = field(Poly.one(2), Poly.zero(2))
    d2 = field(Poly.one(2), Poly.zero(2))
    report = verify_dj(d1, d2, [Fraction(1, 3), 2], 3)
    assert report.agree and report.from_jets == (0, 0)


class TestStratumInvariance:
    def test_involutive_plane_field(self):
        # <d/dx, y d/dz> from the origin along d/dx: the only nonzero 2x2 minor is
        # y, and y vanishes identically along the flow (t, 0, 0)
        z3 = Poly.zero(3)
        gens = [VectorField([Poly.one(3), z3, z3]),
                VectorField([z3, z3, Poly.variable(3, 1)])]
        dist = Distribution(3, gens)
        combo = [Poly.one(3), Poly.zero(3)]
        report = stratum_invariance_check(dist, combo, [0, 0, 0], 10)
        assert report.rank == 1 and report.invariant
        assert report.minors_checked == 3

    def test_rank_zero_point(self):
        z2 = Poly.zero(2)
        gens = [VectorField([X, z2]), VectorField([z2, X])]
        dist = Distribution(2, gens)
        report = stratum_invariance_check(dist, [X, Poly.zero(2)], [0, 1], 10)
        assert report.rank == 0 and report.invariant
        assert report.minors_checked == 4  # all 1x1 entries

    def test_full_rank_vacuous(self):
        z2 = Poly.zero(2)
        gens = [VectorField([Poly.one(2), z2]), VectorField([z2, Poly.one(2)])]
        dist = Distribution(2, gens)
        report = stratum_invariance_check(dist, [Poly.one(2), Poly.zero(2)], [0, 0], 5)
        assert report.rank == 2 and report.invariant and report.minors_checked == 0

    def test_non_involutive_witness_violates(self):
        z2 = Poly.zero(2)
        gens = [VectorField([Poly.one(2), z2]), VectorField([z2, X])]
        dist = Distribution(2, gens)
        report = stratum_invariance_check(dist, [Poly.one(2), Poly.zero(2)],
                                          [0, 0], 10)
        assert report.rank == 1 and not report.invariant
        v = report.violations[0]
        assert v.first_nonzero_order == 1 and v.coefficient == 1
