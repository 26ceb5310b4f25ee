"""Single-child wrappers that rewrite their child's response."""

from __future__ import annotations

from .core import Blackboard, Node, NodeState, Response
from .errors import ConstructionError


class DecoratorNode(Node):
    def __init__(self, blackboard: Blackboard, child: Node):
        super().__init__(blackboard)
        if child is None:
            raise ConstructionError("decorator child must not be empty")
        self.child = child
        child.parent = self
        child.index = 0

    def children(self) -> list[Node]:
        return [self.child]

    def _halt(self) -> None:
        if self.child.state != NodeState.IDLE:
            self.child.halt()
        self.state = NodeState.IDLE


class Inverter(DecoratorNode):
    kind = "inverter"

    def _tick(self) -> Response:
        response = self.child.tick()
        if response == Response.SUCCESS:
            self.state = NodeState.IDLE
            return Response.FAILURE
        if response == Response.FAILURE:
            self.state = NodeState.IDLE
            return Response.SUCCESS
        self.state = NodeState.RUNNING
        return Response.RUNNING


def _terminal(what: Response) -> Response:
    if what not in (Response.SUCCESS, Response.FAILURE):
        raise ConstructionError(f"'what' must be SUCCESS or FAILURE, got {what!r}")
    return what


class Force(DecoratorNode):
    """Replaces any terminal child response with ``what``.

    The child is still ticked, so its side effects happen.
    """

    kind = "force"

    def __init__(self, blackboard: Blackboard, child: Node, what: Response):
        super().__init__(blackboard, child)
        self.what = _terminal(what)

    def _tick(self) -> Response:
        response = self.child.tick()
        if response == Response.RUNNING:
            self.state = NodeState.RUNNING
            return Response.RUNNING
        self.state = NodeState.IDLE
        return self.what


class RetryUntil(DecoratorNode):
    """RUNNING until the child answers ``what``; there is no retry budget.

    Note this node can be RUNNING while its child is IDLE (the child gave the
    opposite terminal answer and will be restarted on the next tick).
    """

    kind = "retry-until"

    def __init__(self, blackboard: Blackboard, child: Node, what: Response):
        super().__init__(blackboard, child)
        self.what = _terminal(what)

    def _tick(self) -> Response:
        response = self.child.tick()
        if response == self.what:
            self.state = NodeState.IDLE
            return self.what
        self.state = NodeState.RUNNING
        return Response.RUNNING
