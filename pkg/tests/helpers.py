from __future__ import annotations

from btsema.core import Blackboard, Node, NodeState, Response

S, F, R = Response.SUCCESS, Response.FAILURE, Response.RUNNING


class Stub(Node):
    """Child whose tick answers come from a list; records calls in ``log``."""

    kind = "stub"

    def __init__(self, bb: Blackboard, *responses: Response, name: str = "", log=None):
        super().__init__(bb)
        self.responses = list(responses)
        self.name = name
        self.ticks = 0
        self.halts = 0
        self.log = log if log is not None else []

    def _tick(self) -> Response:
        r = self.responses[min(self.ticks, len(self.responses) - 1)]
        self.ticks += 1
        self.state = NodeState.RUNNING if r == R else NodeState.IDLE
        self.log.append(("tick", self.name))
        return r

    def _halt(self) -> None:
        self.halts += 1
        self.state = NodeState.IDLE
        self.log.append(("halt", self.name))


class RecordingPlugin:
    """Plugin with a fixed start answer and a settable running flag."""

    def __init__(self, start: Response = S, running: bool = False):
        self.answer = start
        self.running = running
        self.calls: list[str] = []

    def start(self) -> Response:
        self.calls.append("start")
        if self.answer == R:
            self.running = True
        return self.answer

    def stop(self) -> None:
        self.calls.append("stop")
        self.running = False

    def check(self) -> NodeState:
        self.calls.append("check")
        return NodeState.RUNNING if self.running else NodeState.IDLE


def fill(node, *children):
    for i, c in enumerate(children):
        node.add_child(c, i)
    return node


def decorate_params(spec, rng):
    """Give some leaves of ``spec`` random parameters, in place."""
    from btsema.treespec import LEAF_KINDS

    values = [0, 7, -3, "PoI 1", 'quote " and \\ slash', "tab\there", S, F]
    for s in spec.walk():
        if s.kind in LEAF_KINDS and rng.random() < 0.4:
            for _ in range(rng.randint(1, 3)):
                s.attrs[rng.choice(["poi", "speed", "mode", "x_1"])] = rng.choice(values)
    return spec
