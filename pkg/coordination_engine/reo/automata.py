"""Constraint automata and their encoding as behavioural automata."""
import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from ..errors import EmptyDomain
from ..core.automaton import ExplicitAutomaton, Transition, state_name
from ..core.labels import IDENTITY, STEP_ALGEBRA, Action, Label
from ..core.ports import port_set
from ..core.predicates import Excl
from ..core.steps import AtomicStep
from .constraints import TRUE, CasLabel, DataConstraint, conj, enumerate_solutions, format_guard

logger = logging.getLogger(__name__)

CAS_HEAD = "cas"


@dataclass(frozen=True)
class CATransition:
    source: object
    ports: frozenset
    guard: DataConstraint
    target: object

    def __post_init__(self):
        object.__setattr__(self, "ports", port_set(self.ports))
        stray = self.guard.ports() - self.ports
        if stray:
            raise ValueError(f"Guard {self.guard} mentions ports {sorted(stray)} outside {sorted(self.ports)}")

    def __str__(self):
        return f"{self.source} --{format_guard(self.ports, self.guard)}--> {self.target}"


@dataclass(frozen=True)
class ConstraintAutomaton:
    """⟨Q, 𝒩, →, Q₀⟩. Idle transitions q --∅|tt--> q are implicit and never stored."""

    states: Tuple
    ports: frozenset
    transitions: Tuple[CATransition, ...]
    initial: Tuple
    name: str = "CA"

    def __post_init__(self):
        object.__setattr__(self, "ports", port_set(self.ports))
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        object.__setattr__(self, "initial", tuple(self.initial))
        if not self.initial:
            raise ValueError(f"Constraint automaton {self.name} has no initial state")
        for transition in self.transitions:
            if not transition.ports <= self.ports:
                raise ValueError(f"Transition {transition} uses ports outside {sorted(self.ports)}")

    def outgoing(self, state) -> List[CATransition]:
        return [t for t in self.transitions if t.source == state]

    def describe(self) -> List[str]:
        return [str(t) for t in self.transitions]


def cas_label(cas: CasLabel, scope: Iterable[str]) -> Label:
    """α(X|g) = ⟨𝒩, X, ∅, X, g⟩; an empty step with no no-flow ports is ε."""
    if not cas.ports and not cas.noflow:
        return IDENTITY
    step = AtomicStep(port_set(scope), cas.ports, (), cas.ports, cas.assignment)
    return Label((Action(CAS_HEAD),), step, cas.noflow)


def compose_cas(l1: Label, l2: Label) -> Optional[Label]:
    """CAS composition: defined iff shared ports agree on flow and data, and no-flow sets are respected.

    Returns None for ⊥.
    """
    return STEP_ALGEBRA.compose(l1, l2)


def encode_ca(automaton: ConstraintAutomaton, domain: Sequence, name: Optional[str] = None) -> ExplicitAutomaton:
    """⟦A⟧: one behavioural transition per ground solution of every guard, C(q) = excl(𝒩).

    Raises:
        EmptyDomain: ``domain`` is empty.
    """
    if not domain:
        raise EmptyDomain(f"Cannot encode {automaton.name} over an empty data domain")
    transitions = []
    for transition in automaton.transitions:
        for solution in enumerate_solutions(transition.ports, transition.guard, domain):
            label = cas_label(solution, automaton.ports)
            if label.is_identity:
                continue
            transitions.append(Transition(transition.source, label, transition.target))
    logger.debug(f"Encoded {automaton.name} into {len(transitions)} transitions")
    return ExplicitAutomaton(automaton.ports, automaton.initial, transitions, Excl(automaton.ports),
                             STEP_ALGEBRA, name or automaton.name, states=automaton.states)


def ca_product_oracle(a1: ConstraintAutomaton, a2: ConstraintAutomaton) -> ConstraintAutomaton:
    """Standard constraint-automata join, restricted to reachable state pairs.

    Either side may take its implicit idle transition; the pair of idles is left implicit.
    """
    idle = object()

    def moves(automaton, state):
        yield idle
        yield from automaton.outgoing(state)

    initial = [(p, q) for p in a1.initial for q in a2.initial]
    seen = set(initial)
    queue = deque(initial)
    states, transitions = [], []
    while queue:
        state = queue.popleft()
        states.append(state)
        p, q = state
        for t1 in moves(a1, p):
            for t2 in moves(a2, q):
                if t1 is idle and t2 is idle:
                    continue
                x1, g1, p2 = (frozenset(), TRUE, p) if t1 is idle else (t1.ports, t1.guard, t1.target)
                x2, g2, q2 = (frozenset(), TRUE, q) if t2 is idle else (t2.ports, t2.guard, t2.target)
                if x1 & a2.ports != x2 & a1.ports:
                    continue
                target = (p2, q2)
                transitions.append(CATransition(state, x1 | x2, conj(g1, g2), target))
                if target not in seen:
                    seen.add(target)
                    queue.append(target)
    return ConstraintAutomaton(states, a1.ports | a2.ports, transitions, initial,
                               name=f"{a1.name}⊗{a2.name}")


def ca_to_json(automaton: ConstraintAutomaton) -> dict:
    return {
        "name": automaton.name,
        "ports": sorted(automaton.ports),
        "states": [state_name(state) for state in automaton.states],
        "transitions": [
            {"src": state_name(t.source), "guard": format_guard(t.ports, t.guard), "dst": state_name(t.target)}
            for t in automaton.transitions
        ],
        "initial": [state_name(state) for state in automaton.initial],
    }


def ca_to_dot(automaton: ConstraintAutomaton) -> str:
    initial = {state_name(state) for state in automaton.initial}
    lines = ["digraph {\n", "  rankdir=LR;\n"]
    for name in sorted(state_name(state) for state in automaton.states):
        shape = "doublecircle" if name in initial else "circle"
        lines.append(f'  "{name}" [shape={shape}];\n')
    for source, guard, target in sorted(
            (state_name(t.source), format_guard(t.ports, t.guard), state_name(t.target)) for t in automaton.transitions):
        lines.append(f'  "{source}" -> "{target}" [label="{guard}"];\n')
    lines.append("}\n")
    return "".join(lines)
