"""Local steps and the locality property.

A transition of one automaton in a network is a local step when no other
automaton's concurrency predicate claims the restriction of its label. The
locality property says an automaton never claims labels over ports it does not
own; when every automaton has it, only neighbours need to be asked.
"""
import logging
from itertools import combinations
from typing import List, Sequence

from ..errors import IndexOutOfRange, SharedPorts
from .automaton import BehaviouralAutomaton, Transition
from .labels import Label
from .ports import ALL_PORTS, PortSet, disjoint, format_ports, intersect, sorted_ports
from .predicates import cp_contains, predicate_is_local
from .steps import AtomicStep

logger = logging.getLogger(__name__)

DEFAULT_STATE_BOUND = 1000


def is_local_step(network: Sequence[BehaviouralAutomaton], current: Sequence, i: int, t: Transition) -> bool:
    """True iff no automaton other than ``network[i]`` claims ``t.label``.

    Raises:
        IndexOutOfRange: ``i`` does not index ``network``.
    """
    if not 0 <= i < len(network):
        raise IndexOutOfRange(f"Automaton index {i} out of range for a network of {len(network)}")
    if t.label.is_identity:
        return True
    for j, automaton in enumerate(network):
        if j == i:
            continue
        restricted = automaton.algebra.restrict(t.label, automaton.ports)
        if cp_contains(automaton.cp(current[j]), restricted):
            return False
    return True


def is_local_step_by_neighbours(network: Sequence[BehaviouralAutomaton], current: Sequence, i: int,
                                t: Transition) -> bool:
    """Same question, asking only automata that share a port with ``network[i]``."""
    if not 0 <= i < len(network):
        raise IndexOutOfRange(f"Automaton index {i} out of range for a network of {len(network)}")
    own = network[i].ports
    for j, automaton in enumerate(network):
        if j == i or disjoint(own, automaton.ports):
            continue
        restricted = automaton.algebra.restrict(t.label, automaton.ports)
        if cp_contains(automaton.cp(current[j]), restricted):
            return False
    return True


def probe_labels(witness_ports: PortSet, domain: Sequence) -> List[Label]:
    """Finite probe set over ``witness_ports``.

    Single-port flows carrying each data value, as input and as output, plus
    data-free pairwise flows and single-port no-flow labels.
    """
    ports = sorted_ports(witness_ports)
    probes = []
    for port in ports:
        for value in domain:
            probes.append(Label((), AtomicStep(witness_ports, {port}, {port}, (), {port: value})))
            probes.append(Label((), AtomicStep(witness_ports, {port}, (), {port}, {port: value})))
        probes.append(Label((), AtomicStep(witness_ports), noflow={port}))
    for left, right in combinations(ports, 2):
        probes.append(Label((), AtomicStep(witness_ports, {left, right})))
    return probes


def locality_violations(b: BehaviouralAutomaton, witness_ports: PortSet, domain: Sequence = (0, 1),
                        bound: int = DEFAULT_STATE_BOUND) -> List[str]:
    """Reasons ``b`` fails the locality property, one string per offending state.

    Raises:
        SharedPorts: ``witness_ports`` intersects the automaton's ports.
    """
    from .reachability import reachable

    shared = intersect(witness_ports, b.ports)
    if witness_ports is ALL_PORTS or b.ports is ALL_PORTS or shared:
        raise SharedPorts(f"Witness ports {format_ports(witness_ports)} overlap the ports of {b.name}")

    probes = probe_labels(witness_ports, domain)
    graph = reachable(b, bound)
    violations = []
    for state in graph.states():
        cp = b.cp(state)
        if not predicate_is_local(cp, b.ports):
            violations.append(f"{b.state_name(state)}: predicate {cp} ranges over every port, "
                              f"not just {format_ports(b.ports)}")
            continue
        for probe in probes:
            if cp_contains(cp, b.algebra.restrict(probe, b.ports)):
                violations.append(f"{b.state_name(state)}: predicate {cp} claims probe {probe.step.flow or probe.noflow}")
                break
    if graph.truncated:
        logger.warning(f"Locality of {b.name} only checked on {graph.number_of_states()} states")
    return violations


def check_locality(b: BehaviouralAutomaton, witness_ports: PortSet, domain: Sequence = (0, 1),
                   bound: int = DEFAULT_STATE_BOUND) -> bool:
    """True iff ``b`` obeys the locality property on its reachable states."""
    return not locality_violations(b, witness_ports, domain, bound)
