"""Hand-built behavioural automata: the alternating coordinator and the lossy FIFO."""
from typing import Sequence

from ..errors import ArityError, EmptyDomain
from .automaton import ExplicitAutomaton, Transition
from .labels import make_label
from .predicates import Excl
from .steps import make_step


def _check(ports, arity, kind, domain):
    if len(ports) != arity:
        raise ArityError(f"{kind} takes {arity} ports, got {len(ports)}")
    if not domain:
        raise EmptyDomain(f"{kind} needs a nonempty data domain")


def alternating_coordinator(ports: Sequence[str] = ("a", "b", "c"), domain: Sequence = (0, 1),
                            name: str = "AC") -> ExplicitAutomaton:
    """Reads a and b together, passes a's value to c and buffers b's value for the next round.

    s1(u,v): a↦v, b↦u in, c↦v out, q0 → q1(u).   s2(v): c↦v out, q1(v) → q0.
    """
    _check(ports, 3, "AlternatingCoordinator", domain)
    a, b, c = ports
    scope = set(ports)
    transitions = []
    for u in domain:
        for v in domain:
            step = make_step(scope, {a, b, c}, {a, b}, {c}, {a: v, b: u, c: v})
            transitions.append(Transition("q0", make_label("s1", step, (u, v)), f"q1({u})"))
    for v in domain:
        step = make_step(scope, {c}, (), {c}, {c: v})
        transitions.append(Transition(f"q1({v})", make_label("s2", step, (v,)), "q0"))
    states = ["q0"] + [f"q1({v})" for v in domain]
    return ExplicitAutomaton(scope, ["q0"], transitions, Excl(scope), name=name, states=states)


def lossy_fifo(ports: Sequence[str] = ("a'", "a"), domain: Sequence = (0, 1), name: str = "LF") -> ExplicitAutomaton:
    """One-place buffer whose content is overwritten by new input.

    s3(v): a'↦v in, fills or overwrites the buffer.   s4(v): a↦v out, empties it.
    """
    _check(ports, 2, "LossyFIFO", domain)
    source, sink = ports
    scope = set(ports)

    def s3(v):
        return make_label("s3", make_step(scope, {source}, {source}, (), {source: v}), (v,))

    transitions = [Transition("empty", s3(v), f"full({v})") for v in domain]
    for v in domain:
        for w in domain:
            transitions.append(Transition(f"full({v})", s3(w), f"full({w})"))
        step = make_step(scope, {sink}, (), {sink}, {sink: v})
        transitions.append(Transition(f"full({v})", make_label("s4", step, (v,)), "empty"))
    states = ["empty"] + [f"full({v})" for v in domain]
    return ExplicitAutomaton(scope, ["empty"], transitions, Excl(scope), name=name, states=states)
