"""Deterministic mock functional component driven by a leaf script."""

from __future__ import annotations

from ..core import NodeState, Response
from ..errors import ContractViolation, ScriptUnderrunError
from ..scenario import LeafScript

IDLE_MODE = "idle"
RUNNING_MODE = "running"
LATCHED_MODE = "latched"


class ScriptedPlugin:
    """Plays back a list of activations, one per ``start``.

    Modes: idle, running (``remaining`` ticks, ``pending`` outcome) and
    latched (a finished outcome waiting to be collected). A durative
    activation finishes on ``advance``; its result is handed over by the next
    ``start`` rather than starting a fresh activation. ``stop`` cancels a
    running activation and drops its outcome, but leaves a latch alone.
    """

    def __init__(self, script: LeafScript, name: str = "?"):
        self.script = script
        self.name = name
        self.mode = IDLE_MODE
        self.remaining = 0
        self.pending: Response | None = None
        self.cursor = 0

    def _next_activation(self):
        acts = self.script.activations
        if self.cursor >= len(acts):
            if not self.script.cycle:
                raise ScriptUnderrunError(self.name)
            self.cursor = 0
        act = acts[self.cursor]
        self.cursor += 1
        return act

    def start(self) -> Response:
        if self.mode == RUNNING_MODE:
            raise ContractViolation(f"start delivered to running plugin {self.name!r}")
        if self.mode == LATCHED_MODE:
            outcome = self.pending
            self.mode, self.pending = IDLE_MODE, None
            return outcome
        act = self._next_activation()
        if act.duration == 0:
            return act.outcome
        self.mode, self.remaining, self.pending = RUNNING_MODE, act.duration, act.outcome
        return Response.RUNNING

    def check(self) -> NodeState:
        return NodeState.RUNNING if self.mode == RUNNING_MODE else NodeState.IDLE

    def stop(self) -> None:
        if self.mode == RUNNING_MODE:
            self.mode, self.remaining, self.pending = IDLE_MODE, 0, None

    def advance(self) -> None:
        if self.mode != RUNNING_MODE:
            return
        if self.remaining > 1:
            self.remaining -= 1
        else:
            self.mode, self.remaining = LATCHED_MODE, 0

    def __repr__(self) -> str:
        return f"ScriptedPlugin({self.name!r}, mode={self.mode}, cursor={self.cursor})"
