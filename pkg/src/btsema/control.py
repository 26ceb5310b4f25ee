"""Control flow nodes: sequence, fallback and parallel in reactive and
with-memory flavours, plus Switch."""

from __future__ import annotations

from .core import Blackboard, Node, NodeState, Response
from .errors import ConstructionError, ExecutionError, SwitchIndexError

IDLE = NodeState.IDLE
SUCCESS = Response.SUCCESS
FAILURE = Response.FAILURE
RUNNING = Response.RUNNING


class ControlNode(Node):
    """Composite with a fixed number (at least two) of child slots."""

    def __init__(self, blackboard: Blackboard, n_children: int):
        super().__init__(blackboard)
        if not isinstance(n_children, int) or n_children < 2:
            raise ConstructionError(f"control node needs at least 2 children, got {n_children!r}")
        self.child: list[Node | None] = [None] * n_children

    def add_child(self, new_child: Node, ord: int) -> None:
        if new_child is None:
            raise ConstructionError("child must not be empty")
        if not 0 <= ord < len(self.child):
            raise ConstructionError(f"child index {ord} out of range [0, {len(self.child)})")
        self.child[ord] = new_child
        new_child.parent = self
        new_child.index = ord

    def children(self) -> list[Node]:
        return [c for c in self.child if c is not None]

    def _halt(self) -> None:
        for c in self.child:
            if c.state != IDLE:
                c.halt()
        self.state = IDLE

    def _halt_from(self, start: int) -> None:
        for j in range(start, len(self.child)):
            if self.child[j].state != IDLE:
                self.child[j].halt()


class ReactiveSequence(ControlNode):
    kind = "reactive-sequence"

    def _tick(self) -> Response:
        for i, c in enumerate(self.child):
            response = c.tick()
            if response != SUCCESS:
                self._halt_from(i + 1)
                self.state = NodeState.RUNNING if response == RUNNING else IDLE
                return response
        self.state = IDLE
        return SUCCESS


class ReactiveFallback(ControlNode):
    kind = "reactive-fallback"

    def _tick(self) -> Response:
        for i, c in enumerate(self.child):
            response = c.tick()
            if response != FAILURE:
                self._halt_from(i + 1)
                self.state = NodeState.RUNNING if response == RUNNING else IDLE
                return response
        self.state = IDLE
        return FAILURE


class _Parallel(ControlNode):
    def __init__(self, blackboard: Blackboard, n_children: int, threshold: int):
        super().__init__(blackboard, n_children)
        if isinstance(threshold, bool) or not isinstance(threshold, int) or not (
            1 <= threshold <= n_children
        ):
            raise ConstructionError(
                f"threshold must be an integer in [1, {n_children}], got {threshold!r}"
            )
        self.threshold = threshold
        # (successes, failures) seen by the latest tick, kept for inspection
        self.counts = (0, 0)

    def _decide(self, success: int, failure: int) -> Response:
        self.counts = (success, failure)
        reached = success >= self.threshold
        unreachable = failure > len(self.child) - self.threshold
        assert not (reached and unreachable), "parallel thresholds met simultaneously"
        if reached:
            self.halt()
            return SUCCESS
        if unreachable:
            self.halt()
            return FAILURE
        self.state = NodeState.RUNNING
        return RUNNING


class ReactiveParallel(_Parallel):
    """Ticks every child on every tick; counts are not carried over."""

    kind = "reactive-parallel"

    def _tick(self) -> Response:
        success = failure = 0
        for c in self.child:
            response = c.tick()
            if response == SUCCESS:
                success += 1
            elif response == FAILURE:
                failure += 1
        return self._decide(success, failure)


class ParallelWithMemory(_Parallel):
    """Children that finished are not ticked again until the node resets."""

    kind = "parallel-with-memory"

    def __init__(self, blackboard: Blackboard, n_children: int, threshold: int):
        super().__init__(blackboard, n_children, threshold)
        self.success = 0
        self.failure = 0
        self.done = [False] * n_children

    def _halt(self) -> None:
        super()._halt()
        self.success = self.failure = 0
        self.done = [False] * len(self.child)

    def _tick(self) -> Response:
        for i, c in enumerate(self.child):
            if not self.done[i]:
                response = c.tick()
                if response != RUNNING:
                    self.done[i] = True
                    if response == SUCCESS:
                        self.success += 1
                    else:
                        self.failure += 1
        return self._decide(self.success, self.failure)


class SequenceWithMemory(ControlNode):
    kind = "sequence-with-memory"

    def __init__(self, blackboard: Blackboard, n_children: int):
        super().__init__(blackboard, n_children)
        self.to_tick = 0

    def _tick(self) -> Response:
        for j in range(self.to_tick, len(self.child)):
            response = self.child[j].tick()
            if response == RUNNING:
                self.to_tick = j
                self.state = NodeState.RUNNING
                return RUNNING
            if response == FAILURE:
                self.to_tick = 0
                self.state = IDLE
                return FAILURE
        self.to_tick = 0
        self.state = IDLE
        return SUCCESS


class FallbackWithMemory(ControlNode):
    kind = "fallback-with-memory"

    def __init__(self, blackboard: Blackboard, n_children: int):
        super().__init__(blackboard, n_children)
        self.to_tick = 0

    def _tick(self) -> Response:
        for j in range(self.to_tick, len(self.child)):
            response = self.child[j].tick()
            if response == RUNNING:
                self.to_tick = j
                self.state = NodeState.RUNNING
                return RUNNING
            if response == SUCCESS:
                self.to_tick = 0
                self.state = IDLE
                return SUCCESS
        self.to_tick = 0
        self.state = IDLE
        return FAILURE


class Switch(ControlNode):
    """Routes the tick to the child whose index is stored under ``key``.

    ``previous_tick`` is deliberately left alone by ``halt``: after a halt the
    remembered child is idle, so the stale index is harmless.
    """

    kind = "switch"
    NO_TICK = -1

    def __init__(self, blackboard: Blackboard, n_children: int, key: str):
        super().__init__(blackboard, n_children)
        if not isinstance(key, str) or not key:
            raise ConstructionError(f"switch key must be a non-empty string, got {key!r}")
        self.switch_key = key
        self.previous_tick = Switch.NO_TICK

    def _read_index(self) -> int:
        try:
            value = self.blackboard.get(self.switch_key)
        except ExecutionError as exc:
            exc.path = self.path
            raise
        self._emit("bb_read", value)
        n = len(self.child)
        if isinstance(value, bool) or not isinstance(value, int) or not 0 <= value < n:
            raise SwitchIndexError(self.switch_key, value, n, self.path)
        return value

    def _tick(self) -> Response:
        next_tick = self._read_index()
        if next_tick != self.previous_tick:
            if (
                self.previous_tick != Switch.NO_TICK
                and self.child[self.previous_tick].state != IDLE
            ):
                self.child[self.previous_tick].halt()
            self.previous_tick = next_tick
        response = self.child[next_tick].tick()
        if response == RUNNING:
            self.state = NodeState.RUNNING
            return RUNNING
        self.state = IDLE
        self.previous_tick = Switch.NO_TICK
        return response
