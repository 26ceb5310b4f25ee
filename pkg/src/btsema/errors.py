"""Exception hierarchy.

Construction and validation problems are raised eagerly; problems that can
only be observed while ticking derive from :class:`ExecutionError` and carry
the path of the node that raised them, so the harness can turn them into
trace events instead of crashing.
"""

from __future__ import annotations


class BTError(Exception):
    """Base class for every error raised by this package."""


class ConstructionError(BTError, ValueError):
    """A node was built with arguments that violate its structural asserts."""


class ParseError(BTError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class Violation:
    """One well-formedness problem found in a tree spec."""

    __slots__ = ("path", "rule", "pos")

    def __init__(self, path: str, rule: str, pos: tuple[int, int] | None = None):
        self.path = path
        self.rule = rule
        self.pos = pos

    def __str__(self) -> str:
        where = f"{self.pos[0]}:{self.pos[1]}: " if self.pos else ""
        return f"{where}{self.path}: {self.rule}"

    def __repr__(self) -> str:
        return f"Violation({self.path!r}, {self.rule!r}, {self.pos!r})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Violation):
            return NotImplemented
        return (self.path, self.rule, self.pos) == (other.path, other.rule, other.pos)


class ValidationError(BTError):
    def __init__(self, violations: list[Violation]):
        self.violations = list(violations)
        super().__init__("\n".join(str(v) for v in self.violations))


class ScenarioError(BTError):
    """Scenario document problems; ``problems`` holds (json-pointer, message) pairs."""

    def __init__(self, problems: list[tuple[str, str]]):
        self.problems = list(problems)
        super().__init__("\n".join(f"{ptr or '/'}: {msg}" for ptr, msg in self.problems))


class ExecutionError(BTError):
    """Raised during tick/halt. ``path`` is filled in by the node that observes it."""

    def __init__(self, message: str, path: str | None = None):
        super().__init__(message)
        self.message = message
        self.path = path

    def __str__(self) -> str:
        if self.path is None:
            return self.message
        return f"{self.path}: {self.message}"


class MissingKeyError(ExecutionError, KeyError):
    def __init__(self, key: str, path: str | None = None):
        super().__init__(f"blackboard has no key {key!r}", path)
        self.key = key

    # KeyError.__str__ would repr() the message
    __str__ = ExecutionError.__str__


class ContractViolation(ExecutionError):
    """A plugin or leaf broke the tick/halt protocol."""


class ConditionRunningError(ContractViolation):
    def __init__(self, path: str | None = None):
        super().__init__("condition returned RUNNING", path)


class ScriptUnderrunError(ExecutionError):
    def __init__(self, leaf: str, path: str | None = None):
        super().__init__(f"script for {leaf!r} exhausted and does not cycle", path)
        self.leaf = leaf


class SwitchIndexError(ExecutionError):
    def __init__(self, key: str, value: object, n_children: int, path: str | None = None):
        super().__init__(
            f"switch key {key!r} holds {value!r}, expected an integer in [0, {n_children})",
            path,
        )
        self.key = key
        self.value = value
