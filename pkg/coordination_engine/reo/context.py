"""Context-dependent connectors: labels that also forbid flow on some ports.

The lossy step of a context LossySync, s2ᵇ(w), carries no-flow set {b}. A FIFO1
whose empty state claims labels forbidding flow on its source end blocks that
step, so data is only lost while the buffer is full.
"""
from typing import Sequence

from ..errors import ArityError, EmptyDomain
from ..core.automaton import ExplicitAutomaton, Transition
from ..core.labels import STEP_ALGEBRA
from ..core.predicates import Ctx
from .automata import cas_label
from .constraints import CasLabel


def _check(kind, ports, domain):
    if len(ports) != 2:
        raise ArityError(f"{kind} takes 2 ports, got {len(ports)}")
    if not domain:
        raise EmptyDomain(f"{kind} needs a nonempty data domain")


def make_context_lossy(ports: Sequence[str], domain: Sequence, name: str = "ctxLossySync") -> ExplicitAutomaton:
    """LossySync whose lossy step s2ᵇ(w) requires no flow on b; C(q) = ctx(ab, ∅)."""
    _check("LossySync", ports, domain)
    a, b = ports
    scope = {a, b}
    transitions = []
    for v in domain:
        transitions.append(Transition("q", cas_label(CasLabel.of({a: v, b: v}), scope), "q"))
        transitions.append(Transition("q", cas_label(CasLabel.of({a: v}, noflow={b}), scope), "q"))
    return ExplicitAutomaton(scope, ["q"], transitions, Ctx(scope, ()), STEP_ALGEBRA, name, states=["q"])


def context_fifo(ports: Sequence[str], domain: Sequence, name: str = "ctxFIFO1") -> ExplicitAutomaton:
    """FIFO1 claiming no-flow on its source end while empty and on its sink end while full."""
    _check("FIFO1", ports, domain)
    source, sink = ports
    scope = {source, sink}
    transitions = []
    for v in domain:
        transitions.append(Transition("empty", cas_label(CasLabel.of({source: v}), scope), f"full({v})"))
        transitions.append(Transition(f"full({v})", cas_label(CasLabel.of({sink: v}), scope), "empty"))

    def cp(state):
        return Ctx(scope, {source} if state == "empty" else {sink})

    states = ["empty"] + [f"full({v})" for v in domain]
    return ExplicitAutomaton(scope, ["empty"], transitions, cp, STEP_ALGEBRA, name, states=states)


CONTEXT_KINDS = {
    "LossySync": make_context_lossy,
    "FIFO1": context_fifo,
}
