"""Jet coordinates: projections, differences, translations, series conversion."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jetlift.errors import DimensionError, PreconditionError
from jetlift.jets import (Jet, TangentVector, jet_difference, jet_from_series,
                          jet_project, jet_to_series, jet_translate)

from strategies import fractions


def jets(dim, order):
    return st.lists(
        st.lists(fractions(), min_size=dim, max_size=dim),
        min_size=order + 1, max_size=order + 1,
    ).map(lambda rows: Jet(dim, order, rows))


class TestProject:
    def test_drop(self):
        j = Jet(1, 2, [(1,), (1,), (1,)])
        assert jet_project(j, 1) == Jet(1, 1, [(1,), (1,)])

    def test_identity(self):
        j = Jet(2, 2, [(1, 0), (0, 1), (2, 2)])
        assert jet_project(j, j.order) is j

    def test_basepoint_only(self):
        j = Jet(2, 2, [(1, 0), (0, 1), (2, 2)])
        assert jet_project(j, 0) == Jet(2, 0, [(1, 0)])

    def test_target_above_order(self):
        with pytest.raises(ValueError):
            jet_project(Jet(1, 1, [(0,), (1,)]), 2)


class TestDifference:
    def test_coordinate_formula(self):
        j1 = Jet(1, 2, [(0,), (1,), (2,)])
        j2 = Jet(1, 2, [(0,), (1,), (5,)])
        assert jet_difference(j1, j2) == TangentVector((0,), (-3,))

    def test_equal_jets(self):
        j = Jet(1, 1, [(4,), (2,)])
        assert jet_difference(j, j).vec == (Fraction(0),)

    def test_two_dim(self):
        j1 = Jet(2, 2, [(0, 0), (1, 0), (0, 1)])
        j2 = Jet(2, 2, [(0, 0), (1, 0), (0, 0)])
        assert jet_difference(j1, j2).vec == (0, 1)

    def test_lower_order_disagreement_names_index(self):
        j1 = Jet(1, 2, [(0,), (1,), (2,)])
        j2 = Jet(1, 2, [(0,), (3,), (2,)])
        with pytest.raises(PreconditionError, match="order 1"):
            jet_difference(j1, j2)


class TestTranslate:
    def test_concrete(self):
        j = Jet(1, 2, [(0,), (1,), (2,)])
        assert jet_translate(j, TangentVector((0,), (3,))) == Jet(1, 2, [(0,), (1,), (5,)])

    def test_zero_vector(self):
        j = Jet(2, 1, [(1, 2), (3, 4)])
        assert jet_translate(j, TangentVector((1, 2), (0, 0))) == j

    def test_basepoint_mismatch(self):
        j = Jet(1, 1, [(0,), (1,)])
        with pytest.raises(PreconditionError):
            jet_translate(j, TangentVector((1,), (1,)))


class TestSeriesConversion:
    def test_to_series(self):
        j = Jet(1, 2, [(1,), (1,), (1,)])
        assert jet_to_series(j).coeffs == ((1,), (1,), (Fraction(1, 2),))

    def test_from_series(self):
        s = jet_to_series(Jet(1, 2, [(1,), (1,), (1,)]))
        assert jet_from_series(s) == Jet(1, 2, [(1,), (1,), (1,)])

    def test_order_zero(self):
        j = Jet(3, 0, [(1, 2, 3)])
        assert jet_from_series(jet_to_series(j)) == j
        assert jet_to_series(j).coeffs == ((1, 2, 3),)


@settings(max_examples=50)
@given(jets(2, 3), st.lists(fractions(), min_size=2, max_size=2),
       st.lists(fractions(), min_size=2, max_size=2))
def test_translation_group_action(j, v_entries, w_entries):
    v = TangentVector(j.basepoint, v_entries)
    w = TangentVector(j.basepoint, w_entries)
    assert jet_translate(jet_translate(j, v), w) == jet_translate(j, v + w)
    assert jet_project(jet_translate(j, v), j.order - 1) == jet_project(j, j.order - 1)
    assert jet_difference(jet_translate(j, v), j) == v


@settings(max_examples=50)
@given(jets(3, 2))
def test_series_round_trip(j):
    assert jet_from_series(jet_to_series(j)) == j


def test_rendering():
    assert Jet(2, 2, [(1, 0), (0, -1), (-1, 0)]).render() == "((1,0),(0,-1),(-1,0))"
    assert Jet(1, 2, [(1,), (Fraction(1, 2),), (0,)]).render() == "(1,1/2,0)"


def test_bad_shapes():
    with pytest.raises(DimensionError):
        Jet(2, 1, [(1,), (2,)])
    with pytest.raises(DimensionError):
        Jet(1, 2, [(1,), (2,)])
