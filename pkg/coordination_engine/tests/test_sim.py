import io
import json

import pytest

from coordination_engine.core.automaton import ExplicitAutomaton
from coordination_engine.core.predicates import Excl
from coordination_engine.core.product import product
from coordination_engine.core.reachability import reachable
from coordination_engine.errors import StaleRound
from coordination_engine.linda.encoding import encode_process, encode_tuplespace
from coordination_engine.linda.syntax import out
from coordination_engine.reo.primitives import component
from coordination_engine.shell.spec import build_network, spec_from_dict
from coordination_engine.sim import (IDLE_ROUND, Network, enabled_rounds, explore, fire_round, run, trace_records,
                                     write_trace)

LOSSY_ALTERNATOR = {
    "name": "lossy_alternator",
    "domain": [0, 1],
    "reo": [
        {"kind": "LossyFIFO", "name": "LF", "ports": ["a'", "a"]},
        {"kind": "Alternator", "name": "AC", "ports": ["a", "b", "c"]},
    ],
    "components": [
        {"kind": "Writer", "name": "W1", "ports": ["a'"]},
        {"kind": "Writer", "name": "W2", "ports": ["b"]},
        {"kind": "Reader", "name": "R", "ports": ["c"]},
    ],
}


def rounds_by_head(rounds):
    return {(r.participants, r.label.head) for r in rounds}


def stuck_automaton():
    return ExplicitAutomaton({"z"}, ["s"], [], Excl({"z"}), name="stuck")


@pytest.fixture
def net(lf, ac):
    return Network([lf, ac], name="lfac")


@pytest.fixture
def alternator_net():
    return build_network(spec_from_dict(dict(LOSSY_ALTERNATOR)))


# Networks

def test_network_neighbours_and_certification(net):
    assert net.neighbours == {0: frozenset({1}), 1: frozenset({0})}
    assert net.all_certified
    assert net.boundary({0}) == {1}
    assert net.index("AC") == 1
    assert net.initial == ("empty", "q0")
    with pytest.raises(KeyError):
        net.index("missing")


def test_linda_automata_are_not_certified():
    linda = Network([encode_process(out(1), domain=[1]), encode_tuplespace()], name="linda")
    assert linda.certified == (False, False)
    assert linda.coupled(0) == {1}


# Rounds

def test_rounds_at_initial_state(net):
    rounds = enabled_rounds(net, net.initial)
    assert rounds_by_head(rounds) == {((0,), "s3(0)"), ((0,), "s3(1)")}
    for result in rounds:
        assert result.consulted == {0, 1}


def test_rounds_from_full_buffer(net):
    rounds = enabled_rounds(net, ("full(0)", "q0"))
    assert rounds_by_head(rounds) == {
        ((0,), "s3(0)"),
        ((0,), "s3(1)"),
        ((0, 1), "s1(0,0)·s4(0)"),
        ((0, 1), "s1(1,0)·s4(0)"),
    }


def test_rounds_are_canonically_ordered(net):
    rounds = enabled_rounds(net, ("full(0)", "q0"), include_idle=True)
    assert rounds[0] is IDLE_ROUND
    keys = [r.sort_key() for r in rounds[1:]]
    assert keys == sorted(keys)


def test_region_search_agrees_with_exhaustive_search(net):
    graph = explore(net)
    for state in graph.states():
        regions = set(enabled_rounds(net, state))
        exhaustive = set(enabled_rounds(net, state, mode="exhaustive"))
        assert regions == exhaustive


def test_port_disjoint_automata_fire_alone_and_together():
    writer_x = component("Writer", ["x"], [0], name="Wx")
    reader_y = component("Reader", ["y"], [0], name="Ry")
    pair = Network([writer_x, reader_y], name="pair")
    assert pair.neighbours == {0: frozenset(), 1: frozenset()}

    rounds = enabled_rounds(pair, pair.initial)
    flows = {frozenset(r.label.step.flow) for r in rounds}
    assert flows == {frozenset("x"), frozenset("y"), frozenset("xy")}
    assert set(rounds) == set(enabled_rounds(pair, pair.initial, mode="exhaustive"))

    composed = product(writer_x, reader_y)
    (start,) = composed.initial
    assert {frozenset(t.label.step.flow) for t in composed.enabled(start)} == flows
    (joint,) = [r for r in rounds if r.participants == (0, 1)]
    assert joint.consulted == {0, 1}

    graph = explore(pair)
    assert graph.is_isomorphic(reachable(composed, 10), key=lambda label: (label.head, label.step.observable()))


def test_unknown_mode_is_rejected(net):
    with pytest.raises(ValueError):
        enabled_rounds(net, net.initial, mode="psychic")


def test_exhaustive_mode_is_limited_to_small_networks():
    big = Network([stuck_automaton() for _ in range(7)], certify=False)
    with pytest.raises(ValueError):
        enabled_rounds(big, big.initial, mode="exhaustive")


def test_fire_round(net):
    state = ("full(0)", "q0")
    (joint,) = [r for r in enabled_rounds(net, state) if r.label.head == "s1(1,0)·s4(0)"]
    assert fire_round(net, state, joint) == ["empty", "q1(1)"]
    with pytest.raises(StaleRound):
        fire_round(net, net.initial, joint)


def test_idle_round_keeps_states(net):
    assert fire_round(net, net.initial, IDLE_ROUND) == list(net.initial)
    assert IDLE_ROUND.is_idle


# Exploration

def test_explore_matches_product(net, lf, ac):
    graph = explore(net)
    composed = reachable(product(lf, ac), 100)
    assert graph.number_of_states() == 9
    assert graph.number_of_transitions() == 40
    assert graph.is_isomorphic(composed, key=lambda label: (label.head, label.step.observable()))


def test_explore_truncates(net):
    graph = explore(net, bound=2)
    assert graph.truncated
    assert graph.number_of_states() == 2


def test_linda_network_exploration():
    linda = Network([encode_process(out(1), domain=[1]), encode_tuplespace()], name="linda")
    graph = explore(linda)
    assert graph.number_of_states() == 2
    ((_, _, data),) = graph.edges()
    assert data["label"].head == "tau_out(1)"
    assert data["participants"] == (0, 1)


def test_exclusive_router_routes_one_way(router_spec):
    router_spec.components = spec_from_dict({
        "components": [
            {"kind": "Writer", "name": "W", "ports": ["a"]},
            {"kind": "Reader", "name": "Rj", "ports": ["j"]},
            {"kind": "Reader", "name": "Rk", "ports": ["k"]},
        ],
    }).components
    router = build_network(router_spec)
    graph = explore(router)
    assert graph.number_of_states() == 1
    flows = {frozenset(t.label.step.flow) for t in graph.transitions()}
    assert flows == {frozenset("abcdefhj"), frozenset("abcdfgik")}


def test_context_lossy_never_loses_into_empty_buffer(context_lossy_spec):
    network = build_network(context_lossy_spec)
    assert network.names(range(3)) == ["ctxLossy", "ctxFIFO", "W"]
    fifo = network.index("ctxFIFO")
    graph = explore(network, mode="exhaustive")
    lossy_sources = {t.source[fifo] for t in graph.transitions() if t.label.step.flow == {"a"}}
    assert "empty" not in lossy_sources
    assert lossy_sources


# Running

def test_run_is_deterministic(alternator_net):
    first = run(alternator_net, 30, "random", seed=7)
    second = run(alternator_net, 30, "random", seed=7)
    assert [s.states for s in first.steps] == [s.states for s in second.steps]
    assert [s.round.label for s in first.steps] == [s.round.label for s in second.steps]
    assert len(first) == 30
    assert not first.deadlock


def test_run_zero_rounds(alternator_net):
    trace = run(alternator_net, 0)
    assert len(trace) == 0
    assert trace.final == alternator_net.initial


def test_run_rejects_bad_arguments(alternator_net):
    with pytest.raises(ValueError):
        run(alternator_net, -1)
    with pytest.raises(ValueError):
        run(alternator_net, 1, policy="fair")


def test_run_reports_deadlock():
    stuck = Network([stuck_automaton()], name="stuck")
    trace = run(stuck, 5)
    assert trace.deadlock
    assert len(trace) == 0
    records = list(trace_records(stuck, trace, 5))
    assert records[-1] == {"deadlock": True, "round": 1, "states": {"stuck": "s"}}


def test_maximal_policy_prefers_joint_rounds(net):
    trace = run(net, 2, "maximal", states=("full(0)", "q0"))
    assert trace.steps[0].round.participants == (0, 1)


def test_on_round_callback(alternator_net):
    seen = []
    run(alternator_net, 4, on_round=seen.append)
    assert [step.index for step in seen] == [1, 2, 3, 4]


def test_decoupled_parts_never_consult_each_other():
    data = dict(LOSSY_ALTERNATOR)
    data["reo"] = LOSSY_ALTERNATOR["reo"] + [{"kind": "Sync", "name": "S", "ports": ["x", "y"]}]
    data["components"] = LOSSY_ALTERNATOR["components"] + [
        {"kind": "Writer", "name": "Wx", "ports": ["x"]},
        {"kind": "Reader", "name": "Ry", "ports": ["y"]},
    ]
    network = build_network(spec_from_dict(data))
    assert network.all_certified
    left = {network.index(name) for name in ("LF", "AC", "W1", "W2", "R")}
    right = {network.index(name) for name in ("S", "Wx", "Ry")}

    def check(step):
        result = step.round
        reach = set(result.participants)
        for i in result.participants:
            reach |= network.neighbours[i]
        assert result.consulted <= reach
        # a part that does not move is never asked, even when the other part moves
        for part in (left, right):
            if not set(result.participants) & part:
                assert not result.consulted & part

    trace = run(network, 1000, "random", seed=3, on_round=check)
    assert len(trace) == 1000
    touched = {i for step in trace.steps for i in step.round.participants}
    assert touched & left and touched & right


def test_trace_records(alternator_net):
    trace = run(alternator_net, 3)
    records = list(trace_records(alternator_net, trace, 3))
    header = records[0]
    assert header["network"] == "lossy_alternator"
    assert header["automata"] == ["LF", "AC", "W1", "W2", "R"]
    assert header["initial"]["LF"] == "empty"
    assert [r["round"] for r in records[1:]] == [1, 2, 3]
    for record in records[1:]:
        assert set(record["participants"]) <= set(record["consulted"])
        assert "head" in record["label"]

    stream = io.StringIO()
    write_trace(alternator_net, trace, 3, stream)
    lines = stream.getvalue().splitlines()
    assert [json.loads(line) for line in lines] == json.loads(json.dumps(records))


def test_alternator_output_round_only_consults_neighbours(lf, ac, reader_c):
    inlet = component("Sync", ["x", "a'"], [0, 1], name="inlet")
    feed = component("Sync", ["y", "b"], [0, 1], name="feed")
    network = Network([inlet, lf, ac, feed, reader_c], name="decoupled")
    assert network.all_certified
    states = list(network.initial)
    states[network.index("AC")] = "q1(0)"

    (output,) = [r for r in enabled_rounds(network, states)
                 if set(network.names(r.participants)) == {"AC", "R"}]
    assert output.label.step.flow == {"c"}
    assert set(network.names(output.consulted)) == {"AC", "R", "LF", "feed"}


def test_chained_connectors_keep_alternator_output_local():
    # Writers reach LF and AC through three-primitive connector chains
    data = {
        "name": "chained",
        "domain": [0, 1],
        "reo": [
            {"kind": "Sync", "name": "C1a", "ports": ["w1", "m1"]},
            {"kind": "FIFO1", "name": "C1b", "ports": ["m1", "m2"]},
            {"kind": "Sync", "name": "C1c", "ports": ["m2", "a'"]},
            {"kind": "LossyFIFO", "name": "LF", "ports": ["a'", "a"]},
            {"kind": "Alternator", "name": "AC", "ports": ["a", "b", "c"]},
            {"kind": "Sync", "name": "C2a", "ports": ["w2", "n1"]},
            {"kind": "FIFO1", "name": "C2b", "ports": ["n1", "n2"]},
            {"kind": "Sync", "name": "C2c", "ports": ["n2", "b"]},
        ],
        "components": [
            {"kind": "Writer", "name": "W1", "ports": ["w1"]},
            {"kind": "Writer", "name": "W2", "ports": ["w2"]},
            {"kind": "Reader", "name": "R", "ports": ["c"]},
        ],
    }
    network = build_network(spec_from_dict(data))
    assert network.all_certified
    outputs = []

    def check(step):
        result = step.round
        reach = set(result.participants)
        for i in result.participants:
            reach |= network.neighbours[i]
        assert result.consulted <= reach
        if set(network.names(result.participants)) == {"AC", "R"}:
            assert set(network.names(result.consulted)) == {"AC", "R", "LF", "C2c"}
            outputs.append(result)

    trace = run(network, 1000, "random", seed=11, on_round=check)
    assert len(trace) == 1000
    assert outputs
    assert {frozenset(r.label.step.flow) for r in outputs} == {frozenset({"c"})}
