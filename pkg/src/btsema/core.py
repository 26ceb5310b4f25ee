"""Responses, node states, the blackboard and the abstract node."""

from __future__ import annotations

import enum
from typing import Any, Callable, Iterator, Union

from .errors import MissingKeyError

Scalar = Union[int, float, bool, str]

# listener(node, event_kind, value); installed by the harness for tracing
Listener = Callable[["Node", str, Any], None]


class Response(enum.Enum):
    SUCCESS = "SUCCESS"
    FAILURE = "FAILURE"
    RUNNING = "RUNNING"

    def __str__(self) -> str:
        return self.value


class NodeState(enum.Enum):
    IDLE = "IDLE"
    RUNNING = "RUNNING"

    def __str__(self) -> str:
        return self.value


SUCCESS = Response.SUCCESS
FAILURE = Response.FAILURE
RUNNING = Response.RUNNING
IDLE = NodeState.IDLE

_SCALARS = (bool, int, float, str)


class Blackboard:
    """Key/value store shared by every node of a tree.

    Values are tagged scalars: ``int``, ``float``, ``bool`` or ``str``. The
    Python type of a stored value is its tag, and nothing is coerced.
    """

    def __init__(self, entries: dict[str, Scalar] | None = None):
        self._entries: dict[str, Scalar] = {}
        for key, value in (entries or {}).items():
            self.set(key, value)

    def get(self, key: str) -> Scalar:
        try:
            return self._entries[key]
        except KeyError:
            raise MissingKeyError(key) from None

    def set(self, key: str, value: Scalar) -> None:
        if not isinstance(key, str):
            raise TypeError(f"blackboard keys are strings, got {type(key).__name__}")
        if not isinstance(value, _SCALARS):
            raise TypeError(
                f"blackboard values are int, float, bool or str; got {type(value).__name__}"
            )
        self._entries[key] = value

    def __contains__(self, key: object) -> bool:
        return key in self._entries

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def snapshot(self) -> dict[str, Scalar]:
        return dict(self._entries)

    def __repr__(self) -> str:
        return f"Blackboard({self._entries!r})"


def bb_get(bb: Blackboard, key: str) -> Scalar:
    return bb.get(key)


def bb_set(bb: Blackboard, key: str, value: Scalar) -> None:
    bb.set(key, value)


class Node:
    """Abstract behavior tree node.

    Subclasses implement ``_tick`` and ``_halt``; the public ``tick`` and
    ``halt`` wrap them so that an attached listener sees every call. Only
    subclasses assign ``state``.
    """

    kind = "node"

    def __init__(self, blackboard: Blackboard):
        self.state = NodeState.IDLE
        self.blackboard = blackboard
        self.path = "/"
        self.parent: Node | None = None
        self.index = 0
        self.listener: Listener | None = None

    def get_state(self) -> NodeState:
        return self.state

    def tick(self) -> Response:
        response = self._tick()
        if self.listener is not None:
            self.listener(self, "tick_result", response)
        return response

    def halt(self) -> None:
        if self.listener is not None:
            self.listener(self, "halt", None)
        self._halt()

    def _tick(self) -> Response:
        raise NotImplementedError

    def _halt(self) -> None:
        raise NotImplementedError

    def children(self) -> list[Node]:
        return []

    def walk(self) -> Iterator[Node]:
        """Pre-order traversal of the subtree rooted here."""
        stack: list[Node] = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children()))

    def _emit(self, event: str, value: Any = None) -> None:
        if self.listener is not None:
            self.listener(self, event, value)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.path} {self.state.value}>"
