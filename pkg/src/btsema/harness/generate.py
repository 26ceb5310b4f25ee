"""Seeded random (tree, scenario, config) cases for differential testing."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .. import treespec as ts
from ..core import Response
from ..scenario import Activation, LeafScript, ScenarioSpec, Update
from ..treespec import TreeSpec
from .runner import RunConfig

ACTION_NAMES = tuple(f"A{i}" for i in range(6))
CONDITION_NAMES = tuple(f"C{i}" for i in range(4))
_NON_LEAF = ts.CONTROL_KINDS + ts.DECORATOR_KINDS
_TERMINAL = (Response.SUCCESS, Response.FAILURE)
_BAD_INDEX = (-1, 7, 1.0, "one", True)


@dataclass(frozen=True)
class CaseLimits:
    max_depth: int = 4
    max_fanout: int = 5
    max_activations: int = 6
    max_duration: int = 3
    max_ticks: int = 30
    # chance that a switch update writes an unusable index
    bad_index_rate: float = 0.02


class _TreeGen:
    def __init__(self, rng: random.Random, limits: CaseLimits):
        self.rng = rng
        self.limits = limits
        self.switches: dict[str, int] = {}

    def tree(self, depth: int = 0) -> TreeSpec:
        rng = self.rng
        if depth >= self.limits.max_depth or rng.random() < 0.1 + 0.2 * depth:
            if rng.random() < 0.6:
                return ts.action(rng.choice(ACTION_NAMES))
            return ts.condition(rng.choice(CONDITION_NAMES))
        kind = rng.choice(_NON_LEAF)
        if kind in ts.DECORATOR_KINDS:
            attrs = {} if kind == ts.INVERTER else {"what": rng.choice(_TERMINAL)}
            return TreeSpec(kind, [self.tree(depth + 1)], attrs)
        n = rng.randint(2, self.limits.max_fanout)
        children = [self.tree(depth + 1) for _ in range(n)]
        attrs: dict = {}
        if kind in (ts.REACTIVE_PARALLEL, ts.PARALLEL_WITH_MEMORY):
            attrs["threshold"] = rng.randint(1, n)
        elif kind == ts.SWITCH:
            key = f"sw{len(self.switches)}"
            self.switches[key] = n
            attrs["key"] = key
        return TreeSpec(kind, children, attrs)


def random_case(seed: int, limits: CaseLimits | None = None) -> tuple[TreeSpec, ScenarioSpec, RunConfig]:
    """Deterministic case for ``seed``: every node kind can appear."""
    limits = limits or CaseLimits()
    rng = random.Random(seed)
    gen = _TreeGen(rng, limits)
    spec = gen.tree()
    max_ticks = rng.randint(1, limits.max_ticks)

    leaves = {}
    for name, kinds in sorted(ts.leaf_names(spec).items()):
        is_condition = ts.CONDITION in kinds
        acts = tuple(
            Activation(
                0 if is_condition else rng.randint(0, limits.max_duration),
                rng.choice(_TERMINAL),
            )
            for _ in range(rng.randint(1, limits.max_activations))
        )
        leaves[name] = LeafScript(acts, cycle=rng.random() < 0.93)

    blackboard = {}
    updates = []
    for key, n in gen.switches.items():
        if rng.random() > limits.bad_index_rate:
            blackboard[key] = rng.randrange(n)
        for _ in range(rng.randint(0, 4)):
            tick = rng.randrange(max_ticks)
            value = rng.choice(_BAD_INDEX) if rng.random() < limits.bad_index_rate else rng.randrange(n)
            updates.append(Update(tick, key, value))
    updates.sort(key=lambda u: u.tick)

    scenario = ScenarioSpec(leaves=leaves, max_ticks=max_ticks, blackboard=blackboard, updates=updates)
    config = RunConfig(stop_on_terminal=rng.random() < 0.25)
    return spec, scenario, config
