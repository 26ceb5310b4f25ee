"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line.

The lines are printed in the "acceptance criteria" section of the pytest
terminal summary.
"""

from __future__ import annotations

import hashlib
import inspect
import random
import subprocess
import sys
import time
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import pytest

import test_reference_rows
from btsema import (
    Action,
    ParallelWithMemory,
    ReactiveParallel,
    ReactiveSequence,
    Response,
    SequenceWithMemory,
    Switch,
    check_wfbt,
    parse_tree,
    print_tree,
    validate_wfbt,
)
from btsema import treespec as ts
from btsema.core import NodeState
from btsema.harness import (
    InvariantChecker,
    Trace,
    oracle_run,
    random_case,
    run_simulation,
    trace_diff,
)
from helpers import decorate_params

FIXTURES = Path(__file__).parent / "fixtures"

CORPUS_SEEDS = 10_000
CORPUS_BUDGET_S = 60.0
MIN_REFERENCE_ROWS = 35
MIN_GOLDEN_CYCLES = 12
ROUND_TRIP_SPECS = 1_000
MUTATION_SEARCH_SEEDS = 10_000


def _record(report: list[str], number: int, ok: bool, detail: str) -> None:
    report.append(f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")


@dataclass
class _KindCounter:
    """Observer wrapper that also counts which node kinds were ticked."""

    inner: InvariantChecker
    ticked: Counter = field(default_factory=Counter)

    def event(self, node, ev, value):
        if ev == "tick_result":
            self.ticked[node.kind] += 1
        self.inner.event(node, ev, value)

    def cycle_end(self, t, tree):
        self.inner.cycle_end(t, tree)


@dataclass
class CorpusResult:
    seconds: float = 0.0
    divergent: list[int] = field(default_factory=list)
    violations: list[tuple[int, tuple]] = field(default_factory=list)
    built: Counter = field(default_factory=Counter)
    ticked: Counter = field(default_factory=Counter)
    statuses: Counter = field(default_factory=Counter)


def _same(a: Trace, b: Trace) -> bool:
    return a.to_jsonl() == b.to_jsonl() and a.status == b.status


@pytest.fixture(scope="module")
def corpus() -> CorpusResult:
    result = CorpusResult()
    start = time.perf_counter()
    for seed in range(CORPUS_SEEDS):
        spec, scenario, config = random_case(seed)
        observer = _KindCounter(InvariantChecker())
        runtime = run_simulation(spec, scenario, config, observer)
        if not _same(runtime, oracle_run(spec, scenario, config)):
            result.divergent.append(seed)
        result.violations.extend((seed, v) for v in observer.inner.violations)
        result.built.update(s.kind for s in spec.walk())
        result.ticked.update(observer.ticked)
        result.statuses[runtime.status] += 1
    result.seconds = time.perf_counter() - start
    return result


def test_criterion_1_oracle_equivalence(corpus, acceptance_report):
    missing = [k for k in ts.ALL_KINDS if corpus.ticked[k] == 0]
    ok = not corpus.divergent and corpus.seconds < CORPUS_BUDGET_S and not missing
    _record(
        acceptance_report,
        1,
        ok,
        f"{CORPUS_SEEDS - len(corpus.divergent)}/{CORPUS_SEEDS} traces byte-identical to the oracle "
        f"in {corpus.seconds:.1f}s (budget {CORPUS_BUDGET_S:.0f}s, runtime and oracle together); "
        f"kinds never ticked: {missing or 'none'}; statuses {dict(corpus.statuses)}",
    )
    assert not corpus.divergent, f"divergent seeds: {corpus.divergent[:20]}"
    assert not missing
    assert corpus.seconds < CORPUS_BUDGET_S


def test_criterion_2_invariants(corpus, acceptance_report):
    by_label = Counter(v[1] for _, v in corpus.violations)
    _record(
        acceptance_report,
        2,
        not corpus.violations,
        f"{len(corpus.violations)} invariant violations over {CORPUS_SEEDS} runs "
        f"(coupling, halt-idles-subtree, condition-idle, single-running-child, "
        f"memory-no-retick, threshold-exclusivity) {dict(by_label) or ''}".rstrip(),
    )
    assert corpus.violations == []


def test_criterion_3_reference_rows(acceptance_report):
    rows = [
        (name, fn)
        for name, fn in inspect.getmembers(test_reference_rows, inspect.isfunction)
        if name.startswith("test_") and fn.__module__ == test_reference_rows.__name__
    ]
    failed = []
    for name, fn in rows:
        try:
            fn()
        except Exception as exc:  # noqa: BLE001 - any failure counts
            failed.append(f"{name}: {exc!r}")
    ok = not failed and len(rows) >= MIN_REFERENCE_ROWS
    _record(acceptance_report, 3, ok, f"{len(rows) - len(failed)}/{len(rows)} reference rows pass (need >= {MIN_REFERENCE_ROWS})")
    assert not failed, failed
    assert len(rows) >= MIN_REFERENCE_ROWS


def test_criterion_4_golden(acceptance_report, tour_scenario):
    spec = parse_tree((FIXTURES / "tour.bt").read_text())
    validate_wfbt(spec)
    trace = run_simulation(spec, tour_scenario)
    golden = Trace.read(FIXTURES / "tour_golden.jsonl")
    divergence = trace_diff(trace, golden)
    cycles = len(trace.root_results())
    ok = divergence is None and cycles >= MIN_GOLDEN_CYCLES
    _record(
        acceptance_report,
        4,
        ok,
        f"tour tree ({spec.size()} nodes) over {cycles} cycles, {len(golden)} golden events, "
        f"diff: {'empty' if divergence is None else divergence}",
    )
    assert divergence is None, str(divergence)
    assert cycles >= MIN_GOLDEN_CYCLES


# -- mutations ----------------------------------------------------------------
# each function replaces one method with a subtly wrong version


def _decide_non_strict(self, success, failure):
    self.counts = (success, failure)
    if success >= self.threshold:
        self.halt()
        return Response.SUCCESS
    if failure >= len(self.child) - self.threshold:
        self.halt()
        return Response.FAILURE
    self.state = NodeState.RUNNING
    return Response.RUNNING


def _reactive_sequence_no_halt(self):
    for c in self.child:
        response = c.tick()
        if response != Response.SUCCESS:
            self.state = NodeState.RUNNING if response == Response.RUNNING else NodeState.IDLE
            return response
    self.state = NodeState.IDLE
    return Response.SUCCESS


def _memory_sequence_keeps_cursor(self):
    for j in range(self.to_tick, len(self.child)):
        response = self.child[j].tick()
        if response == Response.RUNNING:
            self.to_tick = j
            self.state = NodeState.RUNNING
            return response
        if response == Response.FAILURE:
            self.state = NodeState.IDLE
            return response
    self.to_tick = 0
    self.state = NodeState.IDLE
    return Response.SUCCESS


def _parallel_halt_keeps_memory(self):
    for c in self.child:
        if c.state != NodeState.IDLE:
            c.halt()
    self.state = NodeState.IDLE


def _switch_no_halt(self):
    next_tick = self._read_index()
    self.previous_tick = next_tick
    response = self.child[next_tick].tick()
    if response == Response.RUNNING:
        self.state = NodeState.RUNNING
        return response
    self.state = NodeState.IDLE
    self.previous_tick = Switch.NO_TICK
    return response


def _action_halt_no_stop(self):
    self.state = NodeState.IDLE


MUTATIONS = {
    "parallel failure test uses >=": (ReactiveParallel, "_decide", _decide_non_strict),
    "reactive sequence skips halting": (ReactiveSequence, "_tick", _reactive_sequence_no_halt),
    "memory sequence keeps cursor on FAILURE": (SequenceWithMemory, "_tick", _memory_sequence_keeps_cursor),
    "memory parallel halt keeps counters": (ParallelWithMemory, "_halt", _parallel_halt_keeps_memory),
    "switch never halts the previous child": (Switch, "_tick", _switch_no_halt),
    "action halt never stops the plugin": (Action, "_halt", _action_halt_no_stop),
}


def _first_divergence() -> int | None:
    for seed in range(MUTATION_SEARCH_SEEDS):
        spec, scenario, config = random_case(seed)
        try:
            runtime = run_simulation(spec, scenario, config)
        except Exception:  # noqa: BLE001 - a crash is a divergence too
            return seed
        if not _same(runtime, oracle_run(spec, scenario, config)):
            return seed
    return None


@pytest.fixture(scope="module")
def mutation_results() -> dict[str, int | None]:
    results = {}
    for label, (cls, attr, replacement) in MUTATIONS.items():
        with pytest.MonkeyPatch.context() as mp:
            mp.setattr(cls, attr, replacement)
            results[label] = _first_divergence()
    return results


def test_criterion_5_mutation_sensitivity(mutation_results, acceptance_report):
    caught = {k: v for k, v in mutation_results.items() if v is not None}
    detail = ", ".join(f"{k} @seed {v}" for k, v in mutation_results.items())
    _record(acceptance_report, 5, len(caught) == len(MUTATIONS), f"{len(caught)}/{len(MUTATIONS)} mutants diverge ({detail})")
    assert len(caught) == len(MUTATIONS), mutation_results


def test_mutations_are_undone():
    spec, scenario, config = random_case(0)
    assert _same(run_simulation(spec, scenario, config), oracle_run(spec, scenario, config))


# -- DSL ----------------------------------------------------------------------


def _break(spec: ts.TreeSpec, rng: random.Random) -> ts.TreeSpec:
    """Introduce one well-formedness error that still parses."""
    nodes = list(spec.walk())
    target = rng.choice(nodes)
    if target.is_leaf:
        target.children.append(ts.action("Extra"))
    elif target.kind in ts.DECORATOR_KINDS:
        target.children.append(ts.condition("Extra"))
    elif "threshold" in target.attrs:
        target.attrs["threshold"] = len(target.children) + 1
    elif target.kind == ts.SWITCH:
        target.attrs["key"] = ""
    else:
        del target.children[1:]
    return spec


def test_criterion_6_dsl_round_trip(acceptance_report):
    rng = random.Random(2024)
    texts = [(FIXTURES / "tour.bt").read_text()]
    for seed in range(ROUND_TRIP_SPECS):
        spec, _, _ = random_case(seed)
        texts.append(print_tree(decorate_params(spec, rng)))
    not_fixed = []
    for text in texts:
        spec = parse_tree(text)
        printed = print_tree(spec)
        if parse_tree(printed) != spec or print_tree(parse_tree(printed)) != printed:
            not_fixed.append(text)

    rejected = unpositioned = 0
    for seed in range(ROUND_TRIP_SPECS):
        spec, _, _ = random_case(seed)
        text = print_tree(_break(spec, rng))
        violations = check_wfbt(parse_tree(text))
        rejected += bool(violations)
        unpositioned += sum(v.pos is None for v in violations)
    ok = not not_fixed and rejected == ROUND_TRIP_SPECS and unpositioned == 0
    _record(
        acceptance_report,
        6,
        ok,
        f"parse/print fixpoint on {len(texts) - len(not_fixed)}/{len(texts)} texts; "
        f"{rejected}/{ROUND_TRIP_SPECS} broken trees rejected, {unpositioned} violations without a position",
    )
    assert not not_fixed
    assert rejected == ROUND_TRIP_SPECS and unpositioned == 0


def _sha(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def test_criterion_7_determinism(tmp_path, acceptance_report):
    mismatched = []
    for seed in range(0, 200):
        paths = []
        for run in range(2):
            spec, scenario, config = random_case(seed)
            path = tmp_path / f"{seed}-{run}.jsonl"
            run_simulation(spec, scenario, config).write(path)
            paths.append(path)
        if _sha(paths[0]) != _sha(paths[1]):
            mismatched.append(seed)

    cli = []
    for run in range(2):
        out = tmp_path / f"cli-{run}.jsonl"
        subprocess.run(
            [
                sys.executable, "-m", "btsema", "run",
                "--tree", str(FIXTURES / "tour.bt"),
                "--scenario", str(FIXTURES / "tour_scenario.json"),
                "--trace", str(out),
            ],
            check=True,
        )
        cli.append(_sha(out))
    ok = not mismatched and cli[0] == cli[1]
    _record(
        acceptance_report,
        7,
        ok,
        f"200 seeded cases hash-equal across two runs ({len(mismatched)} mismatches); "
        f"two CLI processes wrote sha256 {cli[0][:12]} and {cli[1][:12]}",
    )
    assert not mismatched
    assert cli[0] == cli[1]
