"""Abstract syntax of a behavior tree, independent of any runtime objects."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Union

from .core import Response

AttrValue = Union[int, str, Response]

REACTIVE_SEQUENCE = "reactive-sequence"
SEQUENCE_WITH_MEMORY = "sequence-with-memory"
REACTIVE_FALLBACK = "reactive-fallback"
FALLBACK_WITH_MEMORY = "fallback-with-memory"
REACTIVE_PARALLEL = "reactive-parallel"
PARALLEL_WITH_MEMORY = "parallel-with-memory"
SWITCH = "switch"
INVERTER = "inverter"
FORCE = "force"
RETRY_UNTIL = "retry-until"
ACTION = "action"
CONDITION = "condition"

CONTROL_KINDS = (
    REACTIVE_SEQUENCE,
    SEQUENCE_WITH_MEMORY,
    REACTIVE_FALLBACK,
    FALLBACK_WITH_MEMORY,
    REACTIVE_PARALLEL,
    PARALLEL_WITH_MEMORY,
    SWITCH,
)
DECORATOR_KINDS = (INVERTER, FORCE, RETRY_UNTIL)
LEAF_KINDS = (ACTION, CONDITION)
ALL_KINDS = CONTROL_KINDS + DECORATOR_KINDS + LEAF_KINDS

# the one attribute each non-leaf kind requires; other non-leaf kinds take none
REQUIRED_ATTR = {
    REACTIVE_PARALLEL: "threshold",
    PARALLEL_WITH_MEMORY: "threshold",
    SWITCH: "key",
    FORCE: "what",
    RETRY_UNTIL: "what",
}

ATTR_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_\-]*\Z")
INT_RE = re.compile(r"-?[0-9]+\Z")
_DELIMITERS = set(' \t\r\n()";')


def is_symbol(text: str) -> bool:
    """True if ``text`` reads back as a bare symbol token in the DSL."""
    return (
        bool(text)
        and not text.startswith(":")
        and not INT_RE.match(text)
        and not any(ch in _DELIMITERS for ch in text)
    )


@dataclass
class TreeSpec:
    """One node of a tree description.

    For leaves ``attrs`` holds the leaf parameters; for other kinds it holds
    ``threshold``, ``key`` or ``what``. ``pos`` is the (line, col) of the
    node's opening paren when parsed from text and takes no part in equality.
    """

    kind: str
    children: list[TreeSpec | None] = field(default_factory=list)
    attrs: dict[str, AttrValue] = field(default_factory=dict)
    name: str | None = None
    pos: tuple[int, int] | None = field(default=None, compare=False, repr=False)

    @property
    def is_leaf(self) -> bool:
        return self.kind in LEAF_KINDS

    def walk(self) -> Iterator[TreeSpec]:
        yield self
        for c in self.children:
            if c is not None:
                yield from c.walk()

    def size(self) -> int:
        return sum(1 for _ in self.walk())


def action(name: str, **params: AttrValue) -> TreeSpec:
    return TreeSpec(ACTION, name=name, attrs=dict(params))


def condition(name: str, **params: AttrValue) -> TreeSpec:
    return TreeSpec(CONDITION, name=name, attrs=dict(params))


def node(kind: str, *children: TreeSpec, **attrs: AttrValue) -> TreeSpec:
    return TreeSpec(kind, children=list(children), attrs=dict(attrs))


def child_segment(siblings: list[TreeSpec | None], ord: int) -> str:
    """Path segment of ``siblings[ord]``.

    Non-leaves are labelled ``kind#ord``; leaves ``kind:name``, with ``#ord``
    appended only when a sibling leaf would get the same label.
    """
    c = siblings[ord]
    if c is None:
        return f"<empty>#{ord}"
    if c.kind not in LEAF_KINDS:
        return f"{c.kind}#{ord}"
    label = f"{c.kind}:{c.name}"
    for j, other in enumerate(siblings):
        if j != ord and other is not None and other.kind == c.kind and other.name == c.name:
            return f"{label}#{ord}"
    return label


def join_path(parent: str, segment: str) -> str:
    return "/" + segment if parent == "/" else parent + "/" + segment


def iter_paths(spec: TreeSpec, path: str = "/") -> Iterator[tuple[str, TreeSpec]]:
    """Pre-order (path, node) pairs; the root is always ``/``."""
    yield path, spec
    for i, c in enumerate(spec.children):
        if c is not None:
            yield from iter_paths(c, join_path(path, child_segment(spec.children, i)))


def leaf_names(spec: TreeSpec) -> dict[str, set[str]]:
    """Map each leaf name to the set of leaf kinds using it."""
    out: dict[str, set[str]] = {}
    for n in spec.walk():
        if n.is_leaf and n.name is not None:
            out.setdefault(n.name, set()).add(n.kind)
    return out
