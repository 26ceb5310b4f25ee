"""Tick driver: runs a validated tree against a scenario and records a trace."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Protocol

from ..core import Blackboard, Node, Response
from ..errors import ExecutionError
from ..scenario import ScenarioSpec, bind_scenario
from ..treespec import TreeSpec
from ..wfbt import BehaviorTree, validate_wfbt
from .plugin import ScriptedPlugin
from .trace import COMPLETED, ERROR, SCENARIO_NODE, TERMINAL, Trace, TraceEvent, encode_value

VERBOSITY = ("full", "root")


@dataclass(frozen=True)
class RunConfig:
    """``max_ticks=None`` defers to the scenario's own ``max_ticks``.

    ``verbosity="root"`` keeps only root results and errors.
    """

    max_ticks: int | None = None
    stop_on_terminal: bool = False
    verbosity: str = "full"

    def __post_init__(self):
        if self.max_ticks is not None and self.max_ticks < 1:
            raise ValueError(f"max_ticks must be >= 1, got {self.max_ticks}")
        if self.verbosity not in VERBOSITY:
            raise ValueError(f"verbosity must be one of {VERBOSITY}, got {self.verbosity!r}")

    def ticks_for(self, scenario: ScenarioSpec) -> int:
        return self.max_ticks if self.max_ticks is not None else scenario.max_ticks


class Observer(Protocol):
    def event(self, node: Node | None, ev: str, value: Any) -> None: ...

    def cycle_end(self, t: int, tree: BehaviorTree) -> None: ...


class Simulation:
    """One run of ``spec`` under ``scenario``.

    Each cycle applies the scenario's blackboard updates for that tick,
    advances every running plugin once, then ticks the root to completion.
    """

    def __init__(
        self,
        spec: TreeSpec,
        scenario: ScenarioSpec,
        config: RunConfig | None = None,
        observer: Observer | None = None,
    ):
        bind_scenario(scenario, spec)
        self.scenario = scenario
        self.config = config or RunConfig()
        self.observer = observer
        self.plugins: dict[str, ScriptedPlugin] = {}
        self.tree = validate_wfbt(spec, Blackboard(scenario.blackboard), self._make_plugin)
        self.tree.attach(self._on_event)
        self.trace = Trace()
        self.t = 0
        self._full = self.config.verbosity == "full"

    def _make_plugin(self, leaf: TreeSpec, path: str) -> ScriptedPlugin:
        plugin = ScriptedPlugin(self.scenario.leaves[leaf.name], leaf.name)
        self.plugins[path] = plugin
        return plugin

    def _record(self, node: str, ev: str, value: Any = None, state: str | None = None) -> None:
        if self._full or ev in ("root_result", "error"):
            self.trace.events.append(TraceEvent(self.t, node, ev, encode_value(value), state))

    def _on_event(self, node: Node, ev: str, value: Any) -> None:
        if ev == "tick_result":
            self._record(node.path, ev, value, node.state.value)
        elif ev == "bb_read":
            self._record(node.path, ev, {"key": node.switch_key, "value": value})
        else:
            self._record(node.path, ev, value)
        if self.observer is not None:
            self.observer.event(node, ev, value)

    def step(self) -> Response | None:
        """Run one cycle. Returns the root response, or ``None`` on error."""
        bb = self.tree.blackboard
        for u in self.scenario.updates_at(self.t):
            bb.set(u.key, u.value)
            self._record(SCENARIO_NODE, "bb_write", {"key": u.key, "value": u.value})
            if self.observer is not None:
                self.observer.event(None, "bb_write", u.value)
        for plugin in self.plugins.values():
            plugin.advance()
        try:
            response = self.tree.tick()
        except ExecutionError as exc:
            self._record(exc.path or "/", "error", exc.message)
            self.trace.status = ERROR
            return None
        self._record("/", "root_result", response)
        if self.observer is not None:
            self.observer.cycle_end(self.t, self.tree)
        self.t += 1
        return response

    def run(self) -> Trace:
        for _ in range(self.config.ticks_for(self.scenario)):
            response = self.step()
            if response is None:
                return self.trace
            if self.config.stop_on_terminal and response != Response.RUNNING:
                self.trace.status = TERMINAL
                return self.trace
        self.trace.status = COMPLETED
        return self.trace


def run_simulation(
    spec: TreeSpec,
    scenario: ScenarioSpec,
    config: RunConfig | None = None,
    observer: Observer | None = None,
) -> Trace:
    return Simulation(spec, scenario, config, observer).run()
