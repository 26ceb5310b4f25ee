"""Well-formedness checking and construction of runtime trees from specs."""

from __future__ import annotations

from typing import Callable, Iterator

from . import treespec as ts
from .control import (
    FallbackWithMemory,
    ParallelWithMemory,
    ReactiveFallback,
    ReactiveParallel,
    ReactiveSequence,
    SequenceWithMemory,
    Switch,
)
from .core import Blackboard, Node, Response
from .decorators import Force, Inverter, RetryUntil
from .errors import ValidationError, Violation
from .leaves import Action, Condition, Plugin

# plugin_factory(leaf_spec, path) -> plugin bound to that leaf
PluginFactory = Callable[[ts.TreeSpec, str], Plugin]

_PLAIN_CONTROL = {
    ts.REACTIVE_SEQUENCE: ReactiveSequence,
    ts.SEQUENCE_WITH_MEMORY: SequenceWithMemory,
    ts.REACTIVE_FALLBACK: ReactiveFallback,
    ts.FALLBACK_WITH_MEMORY: FallbackWithMemory,
}
_PARALLEL = {ts.REACTIVE_PARALLEL: ReactiveParallel, ts.PARALLEL_WITH_MEMORY: ParallelWithMemory}
_WHAT_DECORATORS = {ts.FORCE: Force, ts.RETRY_UNTIL: RetryUntil}


def _is_int(value: object) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def check_wfbt(spec: ts.TreeSpec | None) -> list[Violation]:
    """Every well-formedness violation in ``spec``, in pre-order."""
    out: list[Violation] = []
    _check(spec, "/", out)
    return out


def _check(spec: ts.TreeSpec | None, path: str, out: list[Violation]) -> None:
    if spec is None:
        out.append(Violation(path, "empty slot"))
        return

    def bad(rule: str) -> None:
        out.append(Violation(path, rule, spec.pos))

    kind = spec.kind
    n = len(spec.children)
    if kind not in ts.ALL_KINDS:
        bad(f"unknown node kind {kind!r}")
    elif kind in ts.LEAF_KINDS:
        if n:
            bad(f"{kind} must have no children, has {n}")
        if not isinstance(spec.name, str) or not ts.is_symbol(spec.name):
            bad(f"{kind} needs a bare-symbol name, got {spec.name!r}")
        for key, value in spec.attrs.items():
            if not isinstance(key, str) or not ts.ATTR_NAME_RE.match(key):
                bad(f"bad parameter name {key!r}")
            if isinstance(value, bool) or not isinstance(value, (int, str, Response)):
                bad(f"parameter :{key} must be an integer, string, success or failure")
            elif value is Response.RUNNING:
                bad(f"parameter :{key} cannot be running")
    else:
        if kind in ts.CONTROL_KINDS and n < 2:
            bad(f"control node needs at least 2 children, has {n}")
        if kind in ts.DECORATOR_KINDS and n != 1:
            bad(f"decorator needs exactly 1 child, has {n}")
        required = ts.REQUIRED_ATTR.get(kind)
        for key in spec.attrs:
            if key != required:
                bad(f"unknown attribute :{key} for {kind}")
        if required is not None:
            if required not in spec.attrs:
                bad(f"missing :{required}")
            else:
                value = spec.attrs[required]
                if required == "threshold":
                    if not _is_int(value):
                        bad(f"threshold must be an integer, got {value!r}")
                    elif not 1 <= value <= n:
                        bad(f"threshold {value} outside [1, {n}]")
                elif required == "key":
                    if not isinstance(value, str) or not value:
                        bad(f"switch key must be a non-empty string, got {value!r}")
                elif value not in (Response.SUCCESS, Response.FAILURE):
                    bad(f"what must be success or failure, got {value!r}")

    for i, c in enumerate(spec.children):
        _check(c, ts.join_path(path, ts.child_segment(spec.children, i)), out)


class BehaviorTree:
    """A validated runtime tree: root node plus its shared blackboard."""

    def __init__(self, root: Node, blackboard: Blackboard, spec: ts.TreeSpec):
        self.root = root
        self.blackboard = blackboard
        self.spec = spec
        self.nodes = {n.path: n for n in root.walk()}

    def tick(self) -> Response:
        return self.root.tick()

    def halt(self) -> None:
        self.root.halt()

    def walk(self) -> Iterator[Node]:
        return self.root.walk()

    def leaves(self) -> list[Node]:
        return [n for n in self.walk() if isinstance(n, (Action, Condition))]

    def attach(self, listener) -> None:
        for n in self.walk():
            n.listener = listener

    def __getitem__(self, path: str) -> Node:
        return self.nodes[path]


def validate_wfbt(
    spec: ts.TreeSpec,
    blackboard: Blackboard | None = None,
    plugin_factory: PluginFactory | None = None,
) -> BehaviorTree:
    """Check ``spec`` and instantiate it over one shared blackboard.

    Raises :class:`ValidationError` listing every violation. Leaves get their
    plugin from ``plugin_factory``; without one they are left unbound.
    """
    violations = check_wfbt(spec)
    if violations:
        raise ValidationError(violations)
    bb = blackboard if blackboard is not None else Blackboard()
    root = _build(spec, "/", bb, plugin_factory)
    return BehaviorTree(root, bb, spec)


def _build(
    spec: ts.TreeSpec, path: str, bb: Blackboard, plugin_factory: PluginFactory | None
) -> Node:
    kind = spec.kind
    n = len(spec.children)
    if kind in ts.LEAF_KINDS:
        cls = Action if kind == ts.ACTION else Condition
        plugin = plugin_factory(spec, path) if plugin_factory is not None else None
        node: Node = cls(bb, plugin, name=spec.name, params=spec.attrs)
    elif kind in ts.DECORATOR_KINDS:
        child = _build(spec.children[0], ts.join_path(path, ts.child_segment(spec.children, 0)), bb, plugin_factory)
        if kind == ts.INVERTER:
            node = Inverter(bb, child)
        else:
            node = _WHAT_DECORATORS[kind](bb, child, spec.attrs["what"])
    else:
        if kind in _PARALLEL:
            node = _PARALLEL[kind](bb, n, spec.attrs["threshold"])
        elif kind == ts.SWITCH:
            node = Switch(bb, n, spec.attrs["key"])
        else:
            node = _PLAIN_CONTROL[kind](bb, n)
        for i, c in enumerate(spec.children):
            child_path = ts.join_path(path, ts.child_segment(spec.children, i))
            node.add_child(_build(c, child_path, bb, plugin_factory), i)
    node.path = path
    return node
