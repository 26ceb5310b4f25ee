"""Execution nodes: Action and Condition.

Both follow a template method: ``tick`` and ``halt`` are fixed, and the link
to the functional component goes through ``start_plugin``, ``stop_plugin``
and ``check_plugin``. By default those delegate to a bound plugin object
(anything with ``start``/``stop``/``check`` methods); subclasses may override
them instead.
"""

from __future__ import annotations

from typing import Any, Mapping, Protocol

from .core import Blackboard, Node, NodeState, Response
from .errors import ContractViolation, ConditionRunningError, ExecutionError


class Plugin(Protocol):
    def start(self) -> Response: ...

    def stop(self) -> None: ...

    def check(self) -> NodeState: ...


class _Leaf(Node):
    def __init__(
        self,
        blackboard: Blackboard,
        plugin: Plugin | None = None,
        name: str | None = None,
        params: Mapping[str, Any] | None = None,
    ):
        super().__init__(blackboard)
        self.plugin = plugin
        self.name = name or type(self).__name__
        self.params = dict(params or {})

    def _bound(self) -> Plugin:
        if self.plugin is None:
            raise ContractViolation(f"no plugin bound to {self.kind} {self.name!r}", self.path)
        return self.plugin

    def _start(self) -> Response:
        try:
            response = self.start_plugin()
        except ExecutionError as exc:
            if exc.path is None:
                exc.path = self.path
            raise
        if not isinstance(response, Response):
            raise ContractViolation(f"startPlugin returned {response!r}", self.path)
        self._emit("plugin_start", response)
        return response

    def start_plugin(self) -> Response:
        return self._bound().start()


class Action(_Leaf):
    kind = "action"

    def stop_plugin(self) -> None:
        self._bound().stop()

    def check_plugin(self) -> NodeState:
        return self._bound().check()

    def _stop(self) -> None:
        self.stop_plugin()
        self._emit("plugin_stop")

    def _tick(self) -> Response:
        if self.check_plugin() == NodeState.IDLE:
            response = self._start()
            if response == Response.RUNNING:
                self.state = NodeState.RUNNING
                return Response.RUNNING
            self._stop()
            self.state = NodeState.IDLE
            return response
        return Response.RUNNING

    def _halt(self) -> None:
        if self.check_plugin() != NodeState.IDLE:
            self._stop()
        self.state = NodeState.IDLE


class Condition(_Leaf):
    """Instantaneous check. Never RUNNING, and halting it does nothing."""

    kind = "condition"

    def _tick(self) -> Response:
        response = self._start()
        if response == Response.RUNNING:
            raise ConditionRunningError(self.path)
        return response

    def _halt(self) -> None:
        return
