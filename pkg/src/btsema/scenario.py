"""Scenario documents: initial blackboard, timed updates and leaf scripts.

JSON layout::

    {"blackboard": {"route": 0},
     "updates": [{"tick": 3, "key": "route", "value": 1}],
     "leaves": {"GoToPoi": {"activations": [{"duration": 2, "outcome": "SUCCESS"}],
                            "cycle": true}},
     "max_ticks": 20}
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import jsonschema

from .core import Response, Scalar
from .errors import ScenarioError
from .treespec import CONDITION, TreeSpec, leaf_names

_SCALAR = {"type": ["integer", "number", "boolean", "string"]}

SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["leaves", "max_ticks"],
    "additionalProperties": False,
    "properties": {
        "blackboard": {"type": "object", "additionalProperties": _SCALAR},
        "updates": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["tick", "key", "value"],
                "additionalProperties": False,
                "properties": {
                    "tick": {"type": "integer", "minimum": 0},
                    "key": {"type": "string"},
                    "value": _SCALAR,
                },
            },
        },
        "leaves": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["activations"],
                "additionalProperties": False,
                "properties": {
                    "activations": {
                        "type": "array",
                        "minItems": 1,
                        "items": {
                            "type": "object",
                            "required": ["duration", "outcome"],
                            "additionalProperties": False,
                            "properties": {
                                "duration": {"type": "integer", "minimum": 0},
                                "outcome": {"enum": ["SUCCESS", "FAILURE"]},
                            },
                        },
                    },
                    "cycle": {"type": "boolean"},
                },
            },
        },
        "max_ticks": {"type": "integer", "minimum": 1},
    },
}


@dataclass(frozen=True)
class Activation:
    duration: int
    outcome: Response


@dataclass(frozen=True)
class LeafScript:
    activations: tuple[Activation, ...]
    cycle: bool = True


@dataclass(frozen=True)
class Update:
    tick: int
    key: str
    value: Scalar


@dataclass
class ScenarioSpec:
    leaves: dict[str, LeafScript]
    max_ticks: int
    blackboard: dict[str, Scalar] = field(default_factory=dict)
    updates: list[Update] = field(default_factory=list)

    def updates_at(self, tick: int) -> list[Update]:
        return [u for u in self.updates if u.tick == tick]

    def to_dict(self) -> dict[str, Any]:
        return {
            "blackboard": dict(self.blackboard),
            "updates": [{"tick": u.tick, "key": u.key, "value": u.value} for u in self.updates],
            "leaves": {
                name: {
                    "activations": [
                        {"duration": a.duration, "outcome": a.outcome.value}
                        for a in script.activations
                    ],
                    "cycle": script.cycle,
                }
                for name, script in self.leaves.items()
            },
            "max_ticks": self.max_ticks,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _pointer(parts) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in parts)


def scenario_from_dict(doc: Any) -> ScenarioSpec:
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        raise ScenarioError([(_pointer(e.absolute_path), e.message) for e in errors])
    leaves = {
        name: LeafScript(
            tuple(
                Activation(int(a["duration"]), Response(a["outcome"]))
                for a in script["activations"]
            ),
            script.get("cycle", True),
        )
        for name, script in doc["leaves"].items()
    }
    updates = [Update(int(u["tick"]), u["key"], u["value"]) for u in doc.get("updates", [])]
    return ScenarioSpec(
        leaves=leaves,
        max_ticks=int(doc["max_ticks"]),
        blackboard=dict(doc.get("blackboard", {})),
        updates=updates,
    )


def parse_scenario(text: str) -> ScenarioSpec:
    """Parse a scenario document; problems are reported with JSON pointers."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError([("", f"invalid JSON at {exc.lineno}:{exc.colno}: {exc.msg}")]) from None
    return scenario_from_dict(doc)


class ScenarioMismatch(ScenarioError):
    """The scenario and the tree disagree about leaves."""


def check_scenario(scenario: ScenarioSpec, tree: TreeSpec) -> list[tuple[str, str]]:
    """Problems binding ``scenario`` to ``tree``, as (json-pointer, message)."""
    problems: list[tuple[str, str]] = []
    used = leaf_names(tree)
    for name in sorted(used):
        if name not in scenario.leaves:
            problems.append(("/leaves", f"no script for leaf {name!r}"))
    for name, script in scenario.leaves.items():
        if name not in used:
            problems.append((_pointer(["leaves", name]), f"unknown leaf {name!r}"))
            continue
        if CONDITION in used[name]:
            for i, a in enumerate(script.activations):
                if a.duration != 0:
                    problems.append(
                        (
                            _pointer(["leaves", name, "activations", i, "duration"]),
                            f"condition {name!r} must have duration 0, got {a.duration}",
                        )
                    )
    return problems


def bind_scenario(scenario: ScenarioSpec, tree: TreeSpec) -> None:
    problems = check_scenario(scenario, tree)
    if problems:
        raise ScenarioMismatch(problems)
