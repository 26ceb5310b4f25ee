import pytest
from hypothesis import given
from hypothesis import strategies as st

from btsema import Action, Blackboard, ConstructionError, Force, Inverter, NodeState, RetryUntil
from btsema.harness import ScriptedPlugin
from btsema.scenario import Activation, LeafScript
from helpers import F, R, S, Stub

responses = st.sampled_from([S, F, R])
terminals = st.sampled_from([S, F])


def test_halt_cascades_through_decorator_stack():
    bb = Blackboard()
    plugin = ScriptedPlugin(LeafScript((Activation(5, S),)))
    leaf = Action(bb, plugin)
    top = Inverter(bb, Force(bb, RetryUntil(bb, leaf, S), F))
    assert top.tick() == R
    assert all(n.state == NodeState.RUNNING for n in top.walk())
    top.halt()
    assert all(n.state == NodeState.IDLE for n in top.walk())
    assert plugin.mode == "idle"


def test_retry_until_running_over_idle_child():
    bb = Blackboard()
    child = Stub(bb, F)
    node = RetryUntil(bb, child, S)
    assert node.tick() == R
    assert node.state == NodeState.RUNNING and child.state == NodeState.IDLE
    # halting with an idle child must not reach it
    node.halt()
    assert child.halts == 0 and node.state == NodeState.IDLE


@pytest.mark.parametrize("cls", [Force, RetryUntil])
def test_what_must_be_terminal(cls):
    bb = Blackboard()
    with pytest.raises(ConstructionError):
        cls(bb, Stub(bb, S), R)


def test_decorator_needs_child():
    with pytest.raises(ConstructionError):
        Inverter(Blackboard(), None)


@pytest.mark.parametrize("make", [Inverter, lambda bb, c: Force(bb, c, S), lambda bb, c: RetryUntil(bb, c, F)])
def test_running_passes_through(make):
    bb = Blackboard()
    node = make(bb, Stub(bb, R))
    assert node.tick() == R
    assert node.state == NodeState.RUNNING


@given(responses)
def test_double_inversion_is_identity(r):
    bb = Blackboard()
    assert Inverter(bb, Inverter(bb, Stub(bb, r))).tick() == r


@given(responses, terminals)
def test_force_never_answers_opposite(r, what):
    bb = Blackboard()
    out = Force(bb, Stub(bb, r), what).tick()
    assert out == (R if r == R else what)


@given(responses, terminals)
def test_retry_until_terminal_only_on_target(r, what):
    bb = Blackboard()
    node = RetryUntil(bb, Stub(bb, r), what)
    out = node.tick()
    assert out in (R, what)
    assert (out == what) == (r == what)
    assert (node.state == NodeState.RUNNING) == (out == R)
