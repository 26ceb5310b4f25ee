"""Reference runtime for behavior-tree tick/halt execution semantics."""

from .control import (
    ControlNode,
    FallbackWithMemory,
    ParallelWithMemory,
    ReactiveFallback,
    ReactiveParallel,
    ReactiveSequence,
    SequenceWithMemory,
    Switch,
)
from .core import Blackboard, Node, NodeState, Response, bb_get, bb_set
from .decorators import DecoratorNode, Force, Inverter, RetryUntil
from .dsl import export_dot, parse_tree, print_tree
from .errors import (
    BTError,
    ConstructionError,
    ContractViolation,
    ExecutionError,
    ParseError,
    ScenarioError,
    ValidationError,
)
from .leaves import Action, Condition
from .scenario import ScenarioSpec, check_scenario, parse_scenario
from .treespec import TreeSpec
from .wfbt import BehaviorTree, check_wfbt, validate_wfbt

__version__ = "0.1.0"

__all__ = [
    "Action",
    "BTError",
    "BehaviorTree",
    "Blackboard",
    "Condition",
    "ConstructionError",
    "ContractViolation",
    "ControlNode",
    "DecoratorNode",
    "ExecutionError",
    "FallbackWithMemory",
    "Force",
    "Inverter",
    "Node",
    "NodeState",
    "ParallelWithMemory",
    "ParseError",
    "ReactiveFallback",
    "ReactiveParallel",
    "ReactiveSequence",
    "Response",
    "RetryUntil",
    "ScenarioError",
    "ScenarioSpec",
    "SequenceWithMemory",
    "Switch",
    "TreeSpec",
    "ValidationError",
    "bb_get",
    "bb_set",
    "check_scenario",
    "check_wfbt",
    "export_dot",
    "parse_scenario",
    "parse_tree",
    "print_tree",
    "validate_wfbt",
]
