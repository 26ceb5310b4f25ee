from .generate import CaseLimits, random_case
from .invariants import InvariantChecker
from .oracle import Oracle, oracle_run
from .plugin import ScriptedPlugin
from .runner import RunConfig, Simulation, run_simulation
from .trace import Divergence, Trace, TraceEvent, trace_diff

__all__ = [
    "CaseLimits",
    "Divergence",
    "InvariantChecker",
    "Oracle",
    "RunConfig",
    "ScriptedPlugin",
    "Simulation",
    "Trace",
    "TraceEvent",
    "oracle_run",
    "random_case",
    "run_simulation",
    "trace_diff",
]
