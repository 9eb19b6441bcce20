"""Literal grammars: polynomials, fields, points, grids, and scenario files."""

from fractions import Fraction

import pytest

from jetlift.algebra import Poly
from jetlift.cech import uni, uni_x
from jetlift.errors import LiftError, ParseError
from jetlift.parsing import (parse_field, parse_grid, parse_point, parse_poly,
                             parse_rational)
from jetlift.scenario import parse_scenario
from jetlift.vectorfields import VectorField


class TestPolyGrammar:
    def test_three_term_example(self):
        p = parse_poly("3/2*x^2*y - y + 1", ["x", "y"])
        assert p == Poly(2, {(2, 1): Fraction(3, 2), (0, 1): -1, (0, 0): 1})

    def test_laurent_monomial(self):
        assert parse_poly("x^-1", ["x"], allow_laurent=True) == uni_x(-1)

    def test_laurent_requires_flag(self):
        with pytest.raises(ParseError):
            parse_poly("x^-1", ["x"])

    def test_reciprocal_shorthand(self):
        assert parse_poly("1/x", ["x"], allow_laurent=True) == uni_x(-1)
        assert parse_poly("-3/2/x^2", ["x"], allow_laurent=True) == uni({-2: Fraction(-3, 2)})

    def test_implicit_multiplication(self):
        assert parse_poly("2x y", ["x", "y"]) == parse_poly("2*x*y", ["x", "y"])

    def test_leading_sign(self):
        assert parse_poly("-x + 1", ["x"]) == 1 - Poly.variable(1, 0)

    def test_repeated_variable_accumulates(self):
        assert parse_poly("x*x", ["x"]) == Poly.variable(1, 0) ** 2

    def test_unknown_variable_position(self):
        with pytest.raises(ParseError) as err:
            parse_poly("x + q", ["x"])
        assert err.value.column == 5

    def test_dangling_sign(self):
        with pytest.raises(ParseError):
            parse_poly("x +", ["x"])

    def test_empty(self):
        with pytest.raises(ParseError):
            parse_poly("   ", ["x"])

    def test_zero_denominator(self):
        with pytest.raises(ParseError):
            parse_poly("1/0", ["x"])


class TestFieldPointGrid:
    def test_field(self):
        f = parse_field("y, -x", ["x", "y"])
        assert f == VectorField([Poly.variable(2, 1), -Poly.variable(2, 0)])

    def test_field_wrong_arity(self):
        with pytest.raises(ParseError):
            parse_field("x", ["x", "y"])

    def test_point(self):
        assert parse_point("1,0", 2) == (1, 0)
        assert parse_point("-3/2, 1/2", 2) == (Fraction(-3, 2), Fraction(1, 2))

    def test_rational(self):
        assert parse_rational("-7/3") == Fraction(-7, 3)
        with pytest.raises(ParseError):
            parse_rational("1.5")

    def test_grid(self):
        ranges = parse_grid("x=-1:1:1, y=-1:1:1", ["x", "y"])
        assert ranges == [(-1, 1, 1), (-1, 1, 1)]

    def test_grid_rational_step(self):
        ranges = parse_grid("x=0:1:1/2", ["x"])
        assert ranges == [(0, 1, Fraction(1, 2))]

    def test_grid_missing_variable(self):
        with pytest.raises(ParseError):
            parse_grid("x=-1:1:1", ["x", "y"])

    def test_grid_bad_step(self):
        with pytest.raises(ParseError):
            parse_grid("x=-1:1:0", ["x"])


GOOD = """
# a comment line
[y]        charts z w ; transition w = 1/z
[x]        vars x ; charts 2 ; transition x -> 1/x ; jacobian -x^-2
[f]        chart0: x = z ; chart1: x = w
[sheaf]    gen chart0: x ; gen chart1: -x   # trailing comment
[sigma]    chart0: 1 ; chart1: 1
[window]   -8 8
[order]    4
"""


class TestScenarioParsing:
    def test_good_scenario(self):
        scenario = parse_scenario(GOOD)
        assert scenario.window == (-8, 8)
        assert scenario.order == 4
        assert scenario.curve.z_name == "z"
        assert scenario.sheaf.num_gens == 1
        assert scenario.perturbations == (None, None)

    def test_defaults(self):
        text = GOOD.replace("[window]   -8 8\n", "").replace("[order]    4\n", "")
        scenario = parse_scenario(text)
        assert scenario.window == (-8, 8) and scenario.order == 4

    def test_wrong_jacobian_rejected(self):
        with pytest.raises(LiftError):
            parse_scenario(GOOD.replace("jacobian -x^-2", "jacobian x^-2"))

    def test_unknown_tag(self):
        with pytest.raises(ParseError):
            parse_scenario(GOOD + "\n[bogus] 1")

    def test_untagged_line(self):
        with pytest.raises(ParseError) as err:
            parse_scenario(GOOD + "\nstray")
        assert err.value.line == len(GOOD.splitlines()) + 2

    def test_missing_sigma(self):
        with pytest.raises(ParseError):
            parse_scenario(GOOD.replace("[sigma]    chart0: 1 ; chart1: 1", ""))

    def test_mismatched_generator_counts(self):
        with pytest.raises(LiftError):
            parse_scenario(GOOD.replace("gen chart0: x ; gen chart1: -x",
                                        "gen chart0: x"))

    def test_curve_transition_shape_enforced(self):
        with pytest.raises(ParseError):
            parse_scenario(GOOD.replace("transition w = 1/z", "transition w = z"))
