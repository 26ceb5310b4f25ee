"""Reference interpreter used as the conformance oracle.

It works directly on the immutable :class:`TreeSpec` and keeps all mutable
data (node states, cursors, parallel counters and flags, switch memory,
plugin modes) in plain dicts keyed by node path. None of the node classes
are used here: each kind's tick and halt is written out again on its own,
so a disagreement with :mod:`btsema.harness.runner` points at a bug in
one of the two.
"""

from __future__ import annotations

from typing import Any

from .. import treespec as ts
from ..errors import (
    ConditionRunningError,
    ContractViolation,
    ExecutionError,
    MissingKeyError,
    ScriptUnderrunError,
    SwitchIndexError,
)
from ..scenario import ScenarioSpec, bind_scenario
from .runner import RunConfig
from .trace import COMPLETED, ERROR, SCENARIO_NODE, TERMINAL, Trace, TraceEvent

S, F, R = "SUCCESS", "FAILURE", "RUNNING"
IDLE, RUN = "IDLE", "RUNNING"
NO_TICK = -1


class Oracle:
    def __init__(self, spec: ts.TreeSpec, scenario: ScenarioSpec, config: RunConfig | None = None):
        bind_scenario(scenario, spec)
        self.scenario = scenario
        self.config = config or RunConfig()
        self.full = self.config.verbosity == "full"
        self.bb: dict[str, Any] = dict(scenario.blackboard)

        self.kind: dict[str, str] = {}
        self.kids: dict[str, list[str]] = {}
        self.attr: dict[str, dict] = {}
        self.name: dict[str, str] = {}
        self._index(spec, "/")

        self.state = {p: IDLE for p in self.kind}
        self.to_tick = {p: 0 for p in self.kind}
        self.succ = {p: 0 for p in self.kind}
        self.fail = {p: 0 for p in self.kind}
        self.done = {p: [False] * len(self.kids[p]) for p in self.kind}
        self.prev = {p: NO_TICK for p in self.kind}
        # plugin memory: mode in {"idle", "running", "latched"}
        leaves = [p for p in self.kind if self.kind[p] in ts.LEAF_KINDS]
        self.mode = {p: "idle" for p in leaves}
        self.left = {p: 0 for p in leaves}
        self.outcome: dict[str, str | None] = {p: None for p in leaves}
        self.cursor = {p: 0 for p in leaves}

        self.t = 0
        self.trace = Trace()

    def _index(self, spec: ts.TreeSpec, path: str) -> None:
        self.kind[path] = spec.kind
        self.attr[path] = spec.attrs
        self.name[path] = spec.name
        self.kids[path] = []
        for i, c in enumerate(spec.children):
            cp = ts.join_path(path, ts.child_segment(spec.children, i))
            self.kids[path].append(cp)
            self._index(c, cp)

    def emit(self, node: str, ev: str, v: Any = None, s: str | None = None) -> None:
        if self.full or ev in ("root_result", "error"):
            self.trace.events.append(TraceEvent(self.t, node, ev, v, s))

    # -- plugin state machine ---------------------------------------------

    def p_check(self, p: str) -> str:
        return RUN if self.mode[p] == "running" else IDLE

    def p_start(self, p: str) -> str:
        if self.mode[p] == "running":
            raise ContractViolation(f"start delivered to running plugin {self.name[p]!r}", p)
        if self.mode[p] == "latched":
            r = self.outcome[p]
            self.mode[p] = "idle"
            self.outcome[p] = None
            return r
        script = self.scenario.leaves[self.name[p]]
        if self.cursor[p] == len(script.activations):
            if not script.cycle:
                raise ScriptUnderrunError(self.name[p], p)
            self.cursor[p] = 0
        act = script.activations[self.cursor[p]]
        self.cursor[p] += 1
        if act.duration == 0:
            return act.outcome.value
        self.mode[p] = "running"
        self.left[p] = act.duration
        self.outcome[p] = act.outcome.value
        return R

    def p_stop(self, p: str) -> None:
        if self.mode[p] == "running":
            self.mode[p] = "idle"
            self.left[p] = 0
            self.outcome[p] = None

    def p_advance(self, p: str) -> None:
        if self.mode[p] == "running":
            self.left[p] -= 1
            if self.left[p] == 0:
                self.mode[p] = "latched"

    # -- halt ---------------------------------------------------------------

    def halt(self, p: str) -> None:
        self.emit(p, "halt")
        k = self.kind[p]
        if k == ts.ACTION:
            if self.p_check(p) != IDLE:
                self.p_stop(p)
                self.emit(p, "plugin_stop")
            self.state[p] = IDLE
        elif k == ts.CONDITION:
            pass
        else:
            for c in self.kids[p]:
                if self.state[c] != IDLE:
                    self.halt(c)
            self.state[p] = IDLE
            if k == ts.PARALLEL_WITH_MEMORY:
                self.succ[p] = 0
                self.fail[p] = 0
                self.done[p] = [False] * len(self.kids[p])

    # -- tick ---------------------------------------------------------------

    def tick(self, p: str) -> str:
        r = getattr(self, "tick_" + self.kind[p].replace("-", "_"))(p)
        self.emit(p, "tick_result", r, self.state[p])
        return r

    def tick_action(self, p: str) -> str:
        if self.p_check(p) == IDLE:
            r = self.p_start(p)
            self.emit(p, "plugin_start", r)
            if r == R:
                self.state[p] = RUN
                return R
            self.p_stop(p)
            self.emit(p, "plugin_stop")
            self.state[p] = IDLE
            return r
        return R

    def tick_condition(self, p: str) -> str:
        r = self.p_start(p)
        self.emit(p, "plugin_start", r)
        if r == R:
            raise ConditionRunningError(p)
        return r

    def _reactive(self, p: str, keep_going: str, all_done: str) -> str:
        kids = self.kids[p]
        for i in range(len(kids)):
            r = self.tick(kids[i])
            if r != keep_going:
                for j in range(i + 1, len(kids)):
                    if self.state[kids[j]] != IDLE:
                        self.halt(kids[j])
                self.state[p] = RUN if r == R else IDLE
                return r
        self.state[p] = IDLE
        return all_done

    def tick_reactive_sequence(self, p: str) -> str:
        return self._reactive(p, S, S)

    def tick_reactive_fallback(self, p: str) -> str:
        return self._reactive(p, F, F)

    def _memory(self, p: str, stop_on: str, all_done: str) -> str:
        kids = self.kids[p]
        for j in range(self.to_tick[p], len(kids)):
            r = self.tick(kids[j])
            if r == R:
                self.to_tick[p] = j
                self.state[p] = RUN
                return R
            if r == stop_on:
                self.to_tick[p] = 0
                self.state[p] = IDLE
                return stop_on
        self.to_tick[p] = 0
        self.state[p] = IDLE
        return all_done

    def tick_sequence_with_memory(self, p: str) -> str:
        return self._memory(p, F, S)

    def tick_fallback_with_memory(self, p: str) -> str:
        return self._memory(p, S, F)

    def _threshold(self, p: str, success: int, failure: int) -> str:
        n = len(self.kids[p])
        k = self.attr[p]["threshold"]
        if success >= k:
            self.halt(p)
            return S
        if failure > n - k:
            self.halt(p)
            return F
        self.state[p] = RUN
        return R

    def tick_reactive_parallel(self, p: str) -> str:
        success = failure = 0
        for c in self.kids[p]:
            r = self.tick(c)
            if r == S:
                success += 1
            elif r == F:
                failure += 1
        return self._threshold(p, success, failure)

    def tick_parallel_with_memory(self, p: str) -> str:
        kids = self.kids[p]
        for i in range(len(kids)):
            if not self.done[p][i]:
                r = self.tick(kids[i])
                if r != R:
                    self.done[p][i] = True
                    if r == S:
                        self.succ[p] += 1
                    elif r == F:
                        self.fail[p] += 1
        return self._threshold(p, self.succ[p], self.fail[p])

    def tick_switch(self, p: str) -> str:
        kids = self.kids[p]
        key = self.attr[p]["key"]
        if key not in self.bb:
            raise MissingKeyError(key, p)
        nxt = self.bb[key]
        self.emit(p, "bb_read", {"key": key, "value": nxt})
        if type(nxt) is not int or nxt < 0 or nxt >= len(kids):
            raise SwitchIndexError(key, nxt, len(kids), p)
        if nxt != self.prev[p]:
            if self.prev[p] != NO_TICK and self.state[kids[self.prev[p]]] != IDLE:
                self.halt(kids[self.prev[p]])
            self.prev[p] = nxt
        r = self.tick(kids[nxt])
        if r == R:
            self.state[p] = RUN
            return R
        self.state[p] = IDLE
        self.prev[p] = NO_TICK
        return r

    def tick_inverter(self, p: str) -> str:
        r = self.tick(self.kids[p][0])
        if r == S:
            self.state[p] = IDLE
            return F
        if r == F:
            self.state[p] = IDLE
            return S
        self.state[p] = RUN
        return R

    def tick_force(self, p: str) -> str:
        r = self.tick(self.kids[p][0])
        if r == R:
            self.state[p] = RUN
            return R
        self.state[p] = IDLE
        return self.attr[p]["what"].value

    def tick_retry_until(self, p: str) -> str:
        what = self.attr[p]["what"].value
        r = self.tick(self.kids[p][0])
        if r == what:
            self.state[p] = IDLE
            return what
        self.state[p] = RUN
        return R

    # -- driver ---------------------------------------------------------------

    def run(self) -> Trace:
        ticks = self.config.max_ticks if self.config.max_ticks is not None else self.scenario.max_ticks
        for t in range(ticks):
            self.t = t
            for u in self.scenario.updates:
                if u.tick == t:
                    self.bb[u.key] = u.value
                    self.emit(SCENARIO_NODE, "bb_write", {"key": u.key, "value": u.value})
            for p in self.mode:
                self.p_advance(p)
            try:
                r = self.tick("/")
            except ExecutionError as exc:
                self.emit(exc.path, "error", exc.message)
                self.trace.status = ERROR
                return self.trace
            self.emit("/", "root_result", r)
            if self.config.stop_on_terminal and r != R:
                self.trace.status = TERMINAL
                return self.trace
        self.trace.status = COMPLETED
        return self.trace


def oracle_run(spec: ts.TreeSpec, scenario: ScenarioSpec, config: RunConfig | None = None) -> Trace:
    return Oracle(spec, scenario, config).run()

