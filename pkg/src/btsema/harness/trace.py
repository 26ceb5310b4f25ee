"""Trace events, JSON Lines (de)serialization and first-divergence diffing."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable

from ..core import NodeState, Response

EVENT_KINDS = (
    "tick_result",
    "halt",
    "plugin_start",
    "plugin_stop",
    "bb_read",
    "bb_write",
    "root_result",
    "error",
)

# trace statuses
COMPLETED = "completed"  # ran max_ticks cycles
TERMINAL = "terminal"  # stopped on the first terminal root result
ERROR = "error"  # a runtime semantic error aborted the run

# node label used for blackboard writes made by the scenario itself
SCENARIO_NODE = "scenario"


@dataclass(frozen=True)
class TraceEvent:
    """One line of a trace.

    ``s`` is the node's post-tick state and is only set on ``tick_result``.
    """

    t: int
    node: str
    ev: str
    v: Any = None
    s: str | None = None

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"t": self.t, "node": self.node, "ev": self.ev, "v": self.v}
        if self.s is not None:
            d["s"] = self.s
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"), ensure_ascii=False)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> TraceEvent:
        return cls(d["t"], d["node"], d["ev"], d.get("v"), d.get("s"))


def encode_value(value: Any) -> Any:
    if isinstance(value, (Response, NodeState)):
        return value.value
    return value


@dataclass
class Trace:
    events: list[TraceEvent] = field(default_factory=list)
    status: str | None = None

    def to_jsonl(self) -> str:
        return "".join(e.to_json() + "\n" for e in self.events)

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.to_jsonl())

    @classmethod
    def from_jsonl(cls, text: str) -> Trace:
        events = [TraceEvent.from_dict(json.loads(line)) for line in text.splitlines() if line.strip()]
        return cls(events)

    @classmethod
    def read(cls, path) -> Trace:
        with open(path, encoding="utf-8") as fh:
            return cls.from_jsonl(fh.read())

    def root_results(self) -> list[str]:
        return [e.v for e in self.events if e.ev == "root_result"]

    def __len__(self) -> int:
        return len(self.events)


@dataclass(frozen=True)
class Divergence:
    index: int
    t: int
    index_in_cycle: int
    left: TraceEvent | None
    right: TraceEvent | None
    note: str = ""

    def __str__(self) -> str:
        def show(e: TraceEvent | None) -> str:
            return "<missing>" if e is None else e.to_json()

        head = f"first divergence at t={self.t}, event {self.index_in_cycle} (line {self.index + 1})"
        if self.note:
            head += f": {self.note}"
        return f"{head}\n  a: {show(self.left)}\n  b: {show(self.right)}"


def _position(events: list[TraceEvent], index: int) -> tuple[int, int]:
    if index < len(events):
        t = events[index].t
    elif events:
        # a missing event belongs after the last one
        t = events[-1].t
    else:
        return 0, 0
    k = index - 1
    while k >= 0 and events[k].t == t:
        k -= 1
    return t, index - k - 1


def trace_diff(a: Trace | Iterable[TraceEvent], b: Trace | Iterable[TraceEvent]) -> Divergence | None:
    """First differing event, or ``None`` when the traces are identical."""
    ea = a.events if isinstance(a, Trace) else list(a)
    eb = b.events if isinstance(b, Trace) else list(b)
    for i, (x, y) in enumerate(zip(ea, eb)):
        if x != y:
            t, j = _position(ea, i)
            return Divergence(i, t, j, x, y)
    if len(ea) != len(eb):
        i = min(len(ea), len(eb))
        longer = ea if len(ea) > len(eb) else eb
        t, j = _position(longer, i)
        return Divergence(i, t, j, ea[i] if i < len(ea) else None, eb[i] if i < len(eb) else None)
    sa = a.status if isinstance(a, Trace) else None
    sb = b.status if isinstance(b, Trace) else None
    if sa is not None and sb is not None and sa != sb:
        t, j = _position(ea, len(ea))
        return Divergence(len(ea), t, j, None, None, f"status {sa} != {sb}")
    return None
