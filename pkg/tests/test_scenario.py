import json

import pytest

from btsema import ScenarioError, parse_scenario
from btsema import treespec as ts
from btsema.harness import run_simulation
from btsema.scenario import ScenarioMismatch, bind_scenario, check_scenario, scenario_from_dict

ONE = {"activations": [{"duration": 0, "outcome": "SUCCESS"}]}


def test_condition_with_duration_rejected():
    doc = {"leaves": {"C": {"activations": [{"duration": 2, "outcome": "SUCCESS"}]}}, "max_ticks": 2}
    problems = check_scenario(scenario_from_dict(doc), ts.condition("C"))
    assert problems[0][0] == "/leaves/C/activations/0/duration"
    with pytest.raises(ScenarioMismatch):
        bind_scenario(scenario_from_dict(doc), ts.condition("C"))


def test_missing_and_unknown_scripts():
    doc = {"leaves": {"Ghost": ONE}, "max_ticks": 1}
    problems = check_scenario(scenario_from_dict(doc), ts.action("Real"))
    assert ("/leaves", "no script for leaf 'Real'") in problems
    assert any(p == "/leaves/Ghost" for p, _ in problems)


@pytest.mark.parametrize(
    "doc, pointer",
    [
        ({"leaves": {}}, ""),
        ({"leaves": {"A": {"activations": []}}, "max_ticks": 1}, "/leaves/A/activations"),
        ({"leaves": {"A": {"activations": [{"duration": -1, "outcome": "SUCCESS"}]}}, "max_ticks": 1}, "/leaves/A/activations/0/duration"),
        ({"leaves": {"A": {"activations": [{"duration": 0, "outcome": "RUNNING"}]}}, "max_ticks": 1}, "/leaves/A/activations/0/outcome"),
        ({"leaves": {}, "max_ticks": 1, "updates": [{"tick": 0, "key": "k", "value": [1]}]}, "/updates/0/value"),
        ({"leaves": {}, "max_ticks": 0}, "/max_ticks"),
    ],
)
def test_schema_problems_use_json_pointers(doc, pointer):
    with pytest.raises(ScenarioError) as err:
        scenario_from_dict(doc)
    assert pointer in [p for p, _ in err.value.problems]


def test_invalid_json():
    with pytest.raises(ScenarioError) as err:
        parse_scenario("{not json")
    assert err.value.problems[0][0] == ""


def test_round_trip_through_json(tour_scenario):
    assert parse_scenario(tour_scenario.to_json()) == tour_scenario


def test_script_cycles():
    doc = {
        "leaves": {"A": {"activations": [{"duration": 0, "outcome": "SUCCESS"}, {"duration": 0, "outcome": "FAILURE"}]}},
        "max_ticks": 5,
    }
    trace = run_simulation(ts.action("A"), scenario_from_dict(doc))
    assert trace.root_results() == ["SUCCESS", "FAILURE", "SUCCESS", "FAILURE", "SUCCESS"]


def test_script_without_cycle_underruns():
    doc = {"leaves": {"A": {"activations": [{"duration": 0, "outcome": "SUCCESS"}], "cycle": False}}, "max_ticks": 3}
    trace = run_simulation(ts.action("A"), scenario_from_dict(doc))
    assert trace.status == "error"
    assert trace.root_results() == ["SUCCESS"]
    assert "exhausted" in trace.events[-1].v


def test_update_lands_before_tick():
    doc = {"leaves": {"A": ONE}, "max_ticks": 3, "blackboard": {"k": 0}, "updates": [{"tick": 1, "key": "k", "value": "x"}]}
    trace = run_simulation(ts.action("A"), scenario_from_dict(doc))
    writes = [(e.t, e.node, e.v) for e in trace.events if e.ev == "bb_write"]
    assert writes == [(1, "scenario", {"key": "k", "value": "x"})]
    assert [e.ev for e in trace.events if e.t == 1][0] == "bb_write"


def test_defaults():
    s = scenario_from_dict(json.loads('{"leaves": {"A": {"activations": [{"duration": 1, "outcome": "FAILURE"}]}}, "max_ticks": 4}'))
    assert s.blackboard == {} and s.updates == [] and s.leaves["A"].cycle is True
