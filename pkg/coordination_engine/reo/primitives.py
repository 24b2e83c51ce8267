"""The Reo primitive library and the components plugged onto connector ends."""
from typing import Optional, Sequence

from ..errors import ArityError, EmptyDomain
from ..core.automaton import ExplicitAutomaton, Transition
from ..core.labels import STEP_ALGEBRA, make_label
from ..core.library import alternating_coordinator, lossy_fifo
from ..core.predicates import Excl
from ..core.steps import make_step
from .automata import CATransition, ConstraintAutomaton, encode_ca
from .constraints import TRUE, Eq, all_equal, eq_ports

CHANNEL_KINDS = ("Sync", "LossySync", "SyncDrain", "FIFO1", "Merger", "Replicator", "Writer", "Reader")


def _arity(kind: str, ports: Sequence[str], expected: Optional[int] = None, at_least: Optional[int] = None):
    if expected is not None and len(ports) != expected:
        raise ArityError(f"{kind} takes {expected} ports, got {len(ports)}: {list(ports)}")
    if at_least is not None and len(ports) < at_least:
        raise ArityError(f"{kind} takes at least {at_least} ports, got {len(ports)}: {list(ports)}")
    if len(set(ports)) != len(ports):
        raise ArityError(f"{kind} ports must be distinct: {list(ports)}")


def _single_state(kind, ports, transitions, name):
    return ConstraintAutomaton(("q",), set(ports), [CATransition("q", x, g, "q") for x, g in transitions],
                               ("q",), name=name or kind)


def sync(ports, domain, name=None) -> ConstraintAutomaton:
    _arity("Sync", ports, 2)
    a, b = ports
    return _single_state("Sync", ports, [({a, b}, eq_ports(a, b, domain))], name)


def lossy_sync(ports, domain, name=None) -> ConstraintAutomaton:
    _arity("LossySync", ports, 2)
    a, b = ports
    return _single_state("LossySync", ports, [({a, b}, eq_ports(a, b, domain)), ({a}, TRUE)], name)


def sync_drain(ports, domain, name=None) -> ConstraintAutomaton:
    _arity("SyncDrain", ports, 2)
    return _single_state("SyncDrain", ports, [(set(ports), TRUE)], name)


def fifo1(ports, domain, name=None) -> ConstraintAutomaton:
    """empty --a|a=d--> full(d) --b|b=d--> empty."""
    _arity("FIFO1", ports, 2)
    a, b = ports
    transitions = []
    for d in domain:
        transitions.append(CATransition("empty", {a}, Eq(a, d), f"full({d})"))
        transitions.append(CATransition(f"full({d})", {b}, Eq(b, d), "empty"))
    states = ["empty"] + [f"full({d})" for d in domain]
    return ConstraintAutomaton(states, set(ports), transitions, ["empty"], name=name or "FIFO1")


def merger(ports, domain, name=None) -> ConstraintAutomaton:
    """Merger(a, b; c): c takes its value from exactly one of a and b."""
    _arity("Merger", ports, 3)
    a, b, c = ports
    return _single_state("Merger", ports, [({a, c}, eq_ports(a, c, domain)), ({b, c}, eq_ports(b, c, domain))], name)


def replicator(ports, domain, name=None) -> ConstraintAutomaton:
    """Replicator(a; b₁…bₙ): every sink end receives a's value in the same round."""
    _arity("Replicator", ports, at_least=2)
    return _single_state("Replicator", ports, [(set(ports), all_equal(list(ports), domain))], name)


def writer(ports, domain, values=None, name=None) -> ConstraintAutomaton:
    """Emits ``values`` in order and then idles; with no values it is always ready with any datum."""
    _arity("Writer", ports, 1)
    (port,) = ports
    if values is None:
        return _single_state("Writer", ports, [({port}, TRUE)], name)
    values = list(values)
    states = [f"w{i}" for i in range(len(values) + 1)]
    transitions = [CATransition(states[i], {port}, Eq(port, value), states[i + 1]) for i, value in enumerate(values)]
    return ConstraintAutomaton(states, {port}, transitions, [states[0]], name=name or "Writer")


def reader_ca(ports, domain, name=None) -> ConstraintAutomaton:
    _arity("Reader", ports, 1)
    return _single_state("Reader", ports, [(set(ports), TRUE)], name)


_CONSTRUCTORS = {
    "Sync": sync,
    "LossySync": lossy_sync,
    "SyncDrain": sync_drain,
    "FIFO1": fifo1,
    "Merger": merger,
    "Replicator": replicator,
    "Reader": reader_ca,
}


def primitive(kind: str, ports: Sequence[str], domain: Sequence, values=None, name=None) -> ConstraintAutomaton:
    """Constraint automaton of a primitive.

    Raises:
        ArityError: wrong number of ports for ``kind``.
        EmptyDomain: ``domain`` is empty.
        ValueError: unknown ``kind``.
    """
    if not domain:
        raise EmptyDomain(f"{kind} needs a nonempty data domain")
    if kind == "Writer":
        return writer(ports, domain, values, name)
    if kind not in _CONSTRUCTORS:
        raise ValueError(f"Unknown primitive kind {kind!r}; expected one of {', '.join(CHANNEL_KINDS)}")
    return _CONSTRUCTORS[kind](list(ports), domain, name)


def reader(ports: Sequence[str], domain: Sequence, name=None) -> ExplicitAutomaton:
    """Always-ready reader: r(v) = ⟨c, c, c, ∅, {c↦v}⟩, its port is an input port."""
    _arity("Reader", ports, 1)
    if not domain:
        raise EmptyDomain("Reader needs a nonempty data domain")
    (port,) = ports
    transitions = [
        Transition("q", make_label("r", make_step({port}, {port}, {port}, (), {port: v}), (v,)), "q")
        for v in domain
    ]
    return ExplicitAutomaton({port}, ["q"], transitions, Excl({port}), STEP_ALGEBRA, name or "Reader", states=["q"])


def component(kind: str, ports: Sequence[str], domain: Sequence, values=None, name=None):
    """Behavioural automaton for any primitive or component kind.

    Readers are built directly so their port is an input; the lossy FIFO and the
    alternating coordinator come from the hand-built library; everything else is
    the encoding of its constraint automaton.
    """
    if kind == "Reader":
        return reader(ports, domain, name)
    if kind == "LossyFIFO":
        return lossy_fifo(list(ports), domain, name or "LF")
    if kind == "Alternator":
        return alternating_coordinator(list(ports), domain, name or "AC")
    return encode_ca(primitive(kind, ports, domain, values, name), domain, name)
