from itertools import product as pairs

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coordination_engine.core.bisimulation import bisimilar
from coordination_engine.core.labels import IDENTITY
from coordination_engine.core.predicates import cp_contains
from coordination_engine.core.product import product
from coordination_engine.core.reachability import reachable
from coordination_engine.core.steps import compose_atomic_steps
from coordination_engine.errors import ArityError, EmptyDomain, UnboundPort
from coordination_engine.reo.automata import (ConstraintAutomaton, ca_product_oracle, ca_to_json, cas_label,
                                              compose_cas, encode_ca)
from coordination_engine.reo.constraints import (TRUE, CasLabel, Eq, Not, conj, dc_satisfies, disj,
                                                 enumerate_solutions, eq_ports, format_guard, neq)
from coordination_engine.reo.context import context_fifo, make_context_lossy
from coordination_engine.reo.primitives import component, primitive, reader
from coordination_engine.shell.commands import compose_automaton

D = (0, 1)
CHANNELS = ("Sync", "LossySync", "SyncDrain", "FIFO1", "Merger", "Replicator")
ARITY = {"Merger": 3, "Replicator": 3}


def flows(automaton, state):
    return {t.label.step.flow for t in automaton.enabled(state)}


# Data constraints

def test_port_equality_shorthand():
    g = eq_ports("a", "b", D)
    assert dc_satisfies({"a": 1, "b": 1}, g)
    assert not dc_satisfies({"a": 0, "b": 1}, g)


def test_core_forms():
    assert dc_satisfies({"z": 5}, TRUE)
    assert not dc_satisfies({"a": 0}, Not(Eq("a", 0)))
    assert dc_satisfies({"a": 1}, neq("a", 0))
    assert not dc_satisfies({"a": 1}, disj())


def test_unbound_port():
    with pytest.raises(UnboundPort) as error:
        dc_satisfies({"a": 0}, Eq("b", 0))
    assert error.value.port == "b"


def test_enumerate_solutions():
    assert enumerate_solutions({"a"}, TRUE, D) == [CasLabel.of({"a": 0}), CasLabel.of({"a": 1})]
    assert enumerate_solutions(set(), TRUE, D) == [CasLabel.of({})]
    assert enumerate_solutions({"a", "b"}, eq_ports("a", "b", D), D) == [
        CasLabel.of({"a": 0, "b": 0}), CasLabel.of({"a": 1, "b": 1})]


def test_empty_solution_encodes_as_identity():
    assert cas_label(CasLabel.of({}), {"a"}) is IDENTITY


@st.composite
def constraints(draw, depth=3):
    if depth == 0 or draw(st.booleans()):
        if draw(st.booleans()):
            return TRUE
        return Eq(draw(st.sampled_from("abc")), draw(st.sampled_from(D)))
    form = draw(st.sampled_from(("or", "not", "and")))
    if form == "not":
        return Not(draw(constraints(depth - 1)))
    left, right = draw(constraints(depth - 1)), draw(constraints(depth - 1))
    return left | right if form == "or" else conj(left, right)


@settings(max_examples=300, deadline=None)
@given(constraints())
def test_solutions_are_exactly_the_satisfying_assignments(g):
    solutions = {cas.assignment for cas in enumerate_solutions(["a", "b", "c"], g, D)}
    for a, b, c in pairs(D, D, D):
        assignment = {"a": a, "b": b, "c": c}
        assert (tuple(sorted(assignment.items())) in solutions) == dc_satisfies(assignment, g)


def test_guard_pretty_printing():
    assert format_guard({"b", "a"}, conj(Eq("a", 0), Eq("b", 0))) == "ab | a=0 ∧ b=0"
    assert format_guard(set(), TRUE) == "∅ | tt"
    assert format_guard({"a"}, neq("a", 1)) == "a | a≠1"


# CAS composition

def test_sync_step_composes_with_fifo_fill():
    s1 = cas_label(CasLabel.of({"a": 1, "b": 1}), {"a", "b"})
    s3 = cas_label(CasLabel.of({"b": 1}), {"b", "c"})
    composite = compose_cas(s1, s3)
    assert composite.step.flow == {"a", "b"}
    assert composite.step.data_map == {"a": 1, "b": 1}
    assert composite.step.scope == {"a", "b", "c"}
    assert compose_cas(s1, cas_label(CasLabel.of({"b": 0}), {"b", "c"})) is None


def test_independent_steps_compose():
    s2 = cas_label(CasLabel.of({"a": 0}), {"a", "b"})
    s4 = cas_label(CasLabel.of({"c": 1}), {"b", "c"})
    composite = compose_cas(s2, s4)
    assert composite.step.flow == {"a", "c"}
    assert composite.step.data_map == {"a": 0, "c": 1}


def test_flow_disagreement_on_shared_port_is_undefined():
    s2 = cas_label(CasLabel.of({"a": 0}), {"a", "b"})
    fill = cas_label(CasLabel.of({"b": 0}), {"b", "c"})
    assert compose_cas(s2, fill) is None


def test_composition_follows_atomic_steps():
    s1 = cas_label(CasLabel.of({"a": 1, "b": 1}), {"a", "b"})
    s3 = cas_label(CasLabel.of({"b": 1}), {"b", "c"})
    composed = compose_cas(s1, s3).step
    expected = compose_atomic_steps(s1.step, s3.step)
    assert (composed.flow, composed.data) == (expected.flow, expected.data)
    assert composed.inputs == frozenset()


def test_context_labels_respect_no_flow():
    lossy = cas_label(CasLabel.of({"a": 0}, noflow={"b"}), {"a", "b"})
    fill = cas_label(CasLabel.of({"b": 0}), {"b", "c"})
    drain = cas_label(CasLabel.of({"c": 0}), {"b", "c"})
    assert compose_cas(lossy, fill) is None
    composite = compose_cas(lossy, drain)
    assert composite.noflow == {"b"}
    assert composite.step.flow == {"a", "c"}


# Encoding

def test_encode_fifo():
    fifo = encode_ca(primitive("FIFO1", ["b", "c"], D), D)
    assert len(fifo.transitions) == 4
    (only,) = fifo.enabled("full(0)")
    assert only.label.step.flow == {"c"}
    assert only.label.step.data_map == {"c": 0}
    assert only.target == "empty"
    assert {t.target for t in fifo.enabled("empty")} == {"full(0)", "full(1)"}


def test_encode_lossy_sync():
    lossy = encode_ca(primitive("LossySync", ["a", "b"], D), D)
    assert self_loops(lossy) == 4
    assert flows(lossy, "q") == {frozenset({"a", "b"}), frozenset({"a"})}


def self_loops(automaton):
    return sum(1 for t in automaton.transitions if t.source == t.target)


def test_encoded_labels_are_all_outputs():
    sync = encode_ca(primitive("Sync", ["a", "b"], D), D)
    for transition in sync.transitions:
        assert transition.label.step.inputs == frozenset()
        assert transition.label.step.outputs == {"a", "b"}
        assert transition.label.head == "cas"


def test_idle_only_automaton_has_no_transitions():
    idle = ConstraintAutomaton(("q",), {"a"}, (), ("q",))
    assert encode_ca(idle, D).transitions == ()


def test_encode_needs_a_domain():
    with pytest.raises(EmptyDomain):
        encode_ca(primitive("Sync", ["a", "b"], D), ())
    with pytest.raises(EmptyDomain):
        primitive("Sync", ["a", "b"], ())


def test_primitive_library():
    assert len(encode_ca(primitive("SyncDrain", ["a", "b"], D), D).transitions) == 4
    assert len(encode_ca(primitive("Sync", ["a", "b"], D), D).transitions) == 2
    merger = encode_ca(primitive("Merger", ["a", "b", "c"], D), D)
    assert frozenset({"a", "b", "c"}) not in flows(merger, "q")
    assert flows(merger, "q") == {frozenset({"a", "c"}), frozenset({"b", "c"})}
    replicator = encode_ca(primitive("Replicator", ["a", "b", "c"], D), D)
    assert {t.label.step.data for t in replicator.transitions} == {
        (("a", 0), ("b", 0), ("c", 0)), (("a", 1), ("b", 1), ("c", 1))}


def test_arity_errors():
    with pytest.raises(ArityError):
        primitive("Sync", ["a"], D)
    with pytest.raises(ArityError):
        primitive("Merger", ["a", "b"], D)
    with pytest.raises(ArityError):
        primitive("FIFO1", ["a", "a"], D)
    with pytest.raises(ValueError):
        primitive("Teleporter", ["a", "b"], D)


def test_writer_emits_values_in_order():
    writer = encode_ca(primitive("Writer", ["a"], D, values=[1, 0]), D)
    (first,) = writer.enabled("w0")
    assert first.label.step.data_map == {"a": 1}
    (second,) = writer.enabled(first.target)
    assert second.label.step.data_map == {"a": 0}
    assert writer.enabled(second.target) == ()


def test_reader_port_is_an_input():
    r = reader(["c"], D)
    assert len(r.enabled("q")) == 2
    for transition in r.enabled("q"):
        assert transition.label.step.inputs == {"c"}
        assert transition.label.step.outputs == frozenset()


def test_components_come_from_the_library():
    assert component("LossyFIFO", ["x", "y"], D).initial == ("empty",)
    assert component("Alternator", ["x", "y", "z"], D).initial == ("q0",)
    assert component("Reader", ["x"], D).enabled("q")[0].label.step.inputs == {"x"}


# CA product oracle

def test_oracle_lossy_sync_with_fifo():
    lossy = primitive("LossySync", ["a", "b"], D)
    fifo = primitive("FIFO1", ["b", "c"], D)
    oracle = ca_product_oracle(lossy, fifo)
    assert len(oracle.states) == 3
    encoded = encode_ca(oracle, D)
    assert flows(encoded, ("q", "empty")) == {frozenset({"a", "b"}), frozenset({"a"})}
    assert flows(encoded, ("q", "full(1)")) == {frozenset({"c"}), frozenset({"a", "c"}), frozenset({"a"})}


def test_oracle_with_idle_partner():
    sync = primitive("Sync", ["a", "b"], D)
    idle = ConstraintAutomaton(("z",), {"x"}, (), ("z",))
    assert bisimilar(encode_ca(ca_product_oracle(sync, idle), D), encode_ca(sync, D))


def _ports(kind, prefix):
    return [f"{prefix}{i}" for i in range(ARITY.get(kind, 2))]


@pytest.mark.parametrize("shared", [0, 1])
@pytest.mark.parametrize("left_kind,right_kind", list(pairs(CHANNELS, CHANNELS)))
def test_encoding_commutes_with_product(left_kind, right_kind, shared):
    left_ports = _ports(left_kind, "l")
    right_ports = _ports(right_kind, "r")
    if shared:
        right_ports[0] = left_ports[-1]
    left = primitive(left_kind, left_ports, D)
    right = primitive(right_kind, right_ports, D)
    oracle = encode_ca(ca_product_oracle(left, right), D)
    composed = product(encode_ca(left, D), encode_ca(right, D))
    assert bisimilar(oracle, composed)


def test_ca_json_export():
    exported = ca_to_json(primitive("FIFO1", ["b", "c"], D))
    assert exported["initial"] == ["empty"]
    assert {"src": "empty", "guard": "b | b=0", "dst": "full(0)"} in exported["transitions"]


# Exclusive router

ROUTE_J = frozenset("abcdefhj")
ROUTE_K = frozenset("abcdfgik")


def test_exclusive_router_behaviours(router_spec):
    router = compose_automaton(router_spec)
    graph = reachable(router, 100)
    assert graph.number_of_states() == 1
    assert {label.step.flow for label in graph.labels()} == {ROUTE_J, ROUTE_K}
    assert graph.number_of_transitions() == 4
    for label in graph.labels():
        assert not {"j", "k"} <= label.step.flow
        assert len(set(label.step.data_map.values())) == 1


# Context dependency

def test_context_fifo_predicates():
    lossy = make_context_lossy(["a", "b"], D)
    fifo = context_fifo(["b", "c"], D)
    lossy_steps = [t.label for t in lossy.enabled("q") if t.label.noflow]
    sync_steps = [t.label for t in lossy.enabled("q") if not t.label.noflow]
    assert len(lossy_steps) == 2
    for label in lossy_steps:
        assert cp_contains(fifo.cp("empty"), label)
        assert not cp_contains(fifo.cp("full(0)"), label)
    for label in sync_steps:
        assert cp_contains(fifo.cp("empty"), label)


def test_context_lossy_never_loses_into_empty_buffer():
    composed = product(make_context_lossy(["a", "b"], D), context_fifo(["b", "c"], D))
    graph = reachable(composed, 100)
    lossy_in = {state[1] for state in graph.states()
                for t in composed.enabled(state) if t.label.step.flow == {"a"}}
    assert "empty" not in lossy_in
    assert lossy_in == {"full(0)", "full(1)"}
