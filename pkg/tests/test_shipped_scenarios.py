"""The scenario files shipped in scenarios/ behave as their comments claim."""

import pathlib

import pytest

from jetlift.cech import uni_x
from jetlift.errors import LiftObstructedError
from jetlift.lifting import lift_to_order
from jetlift.scenario import parse_scenario_file

SCENARIOS = pathlib.Path(__file__).resolve().parent.parent / "scenarios"


def test_flagship():
    result = lift_to_order(parse_scenario_file(str(SCENARIOS / "flagship.scn")))
    z = uni_x(1)
    assert tuple(result.state.sections[0][0]) == (z, z, z, z, z)
    assert all(step.nu.is_zero() for step in result.steps)


def test_flagship_perturbed():
    result = lift_to_order(
        parse_scenario_file(str(SCENARIOS / "flagship_perturbed.scn")))
    assert result.steps[0].nu.nu01 == (uni_x(1) * -1,)
    assert [s.nu.is_zero() for s in result.steps] == [False, True, True]


def test_obstructed():
    with pytest.raises(LiftObstructedError) as err:
        lift_to_order(
            parse_scenario_file(str(SCENARIOS / "obstructed_deg_minus2.scn")))
    assert err.value.cokernel_dim == 1
    assert err.value.residual == (uni_x(-1),)


def test_graph_embedded():
    result = lift_to_order(
        parse_scenario_file(str(SCENARIOS / "graph_embedded.scn")))
    assert result.scenario.atlas.names == ("y", "x")
    assert [s.nu.is_zero() for s in result.steps] == [False, True]
