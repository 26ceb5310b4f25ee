"""Runtime invariant checks, attached to a :class:`Simulation` as its observer."""

from __future__ import annotations

from typing import Any

from ..control import (
    FallbackWithMemory,
    ParallelWithMemory,
    ReactiveFallback,
    ReactiveSequence,
    SequenceWithMemory,
    Switch,
    _Parallel,
)
from ..core import Node, NodeState, Response
from ..leaves import Condition
from ..wfbt import BehaviorTree

IDLE = NodeState.IDLE
_SINGLE_RUNNING = (ReactiveSequence, ReactiveFallback, Switch)
_CURSOR = (SequenceWithMemory, FallbackWithMemory)

# invariant labels
COUPLING = "state-coupling"
HALT_IDLE = "halt-idles-subtree"
CONDITION = "condition-idle"
SINGLE_RUNNING = "single-running-child"
NO_RETICK = "memory-no-retick"
EXCLUSIVE = "threshold-exclusivity"


def _within(node: Node, root: Node) -> bool:
    while node is not None:
        if node is root:
            return True
        node = node.parent
    return False


def _busy_children(node: Node) -> list[Node]:
    return [c for c in node.children() if c.state != IDLE]


class InvariantChecker:
    """Collects ``(t, invariant, path, detail)`` for every violated property."""

    def __init__(self):
        self.violations: list[tuple[int, str, str, str]] = []
        self.t = 0
        self._halted: list[Node] = []

    def _fail(self, label: str, node: Node, detail: str) -> None:
        self.violations.append((self.t, label, node.path, detail))

    def _settle_halts(self, node: Node | None) -> None:
        pending = []
        for h in self._halted:
            if node is not None and _within(node, h):
                pending.append(h)
                continue
            busy = [n.path for n in h.walk() if n.state != IDLE]
            if busy:
                self._fail(HALT_IDLE, h, f"still running after halt: {busy}")
        self._halted = pending

    def event(self, node: Node | None, ev: str, value: Any) -> None:
        if self._halted:
            self._settle_halts(node)
        if ev == "halt":
            self._halted.append(node)
        elif ev == "tick_result":
            self._check_tick(node, value)

    def _check_tick(self, node: Node, response: Response) -> None:
        if (node.state == NodeState.RUNNING) != (response == Response.RUNNING):
            self._fail(COUPLING, node, f"returned {response.value} with state {node.state.value}")
        if isinstance(node, Condition) and (response == Response.RUNNING or node.state != IDLE):
            self._fail(CONDITION, node, f"returned {response.value} with state {node.state.value}")
        if isinstance(node, _SINGLE_RUNNING):
            busy = _busy_children(node)
            if len(busy) > 1:
                self._fail(SINGLE_RUNNING, node, f"{len(busy)} children running")
        if isinstance(node, _CURSOR) and response == Response.RUNNING:
            others = [c.path for c in _busy_children(node) if c.index != node.to_tick]
            if others:
                self._fail(NO_RETICK, node, f"running beside the cursor: {others}")
        if isinstance(node, _Parallel):
            success, failure = node.counts
            if success >= node.threshold and failure > len(node.child) - node.threshold:
                self._fail(EXCLUSIVE, node, f"success={success} failure={failure}")

        parent = node.parent
        if isinstance(parent, ParallelWithMemory) and parent.done[node.index]:
            self._fail(NO_RETICK, node, "completed child ticked again")
        elif isinstance(parent, _CURSOR) and node.index < parent.to_tick:
            self._fail(NO_RETICK, node, f"ticked below cursor {parent.to_tick}")

    def cycle_end(self, t: int, tree: BehaviorTree) -> None:
        self._settle_halts(None)
        for node in tree.walk():
            if isinstance(node, Condition) and node.state != IDLE:
                self._fail(CONDITION, node, "condition left IDLE")
            if isinstance(node, _SINGLE_RUNNING) and len(_busy_children(node)) > 1:
                self._fail(SINGLE_RUNNING, node, "more than one child running at cycle end")
            if isinstance(node, _CURSOR):
                # an external halt leaves the cursor where it was (no halt override)
                if not 0 <= node.to_tick < len(node.child):
                    self._fail(NO_RETICK, node, f"cursor {node.to_tick} out of range")
                if any(c.index > node.to_tick for c in _busy_children(node)):
                    self._fail(NO_RETICK, node, "child beyond the cursor running")
            if isinstance(node, ParallelWithMemory):
                if node.success + node.failure != sum(node.done):
                    self._fail(NO_RETICK, node, "counters disagree with done flags")
                if node.state == IDLE and (node.success or node.failure or any(node.done)):
                    self._fail(NO_RETICK, node, "idle with leftover memory")
            if isinstance(node, _Parallel) and node.state == IDLE:
                if any(n.state != IDLE for n in node.walk()):
                    self._fail(HALT_IDLE, node, "idle parallel over a running subtree")
        self.t = t + 1
