"""Networks of behavioural automata and the rounds they can fire."""
import logging
from dataclasses import dataclass, field
from typing import FrozenSet, List, Sequence, Tuple

from ..core.automaton import BehaviouralAutomaton
from ..core.labels import IDENTITY, Label
from ..core.locality import DEFAULT_STATE_BOUND, locality_violations
from ..core.ports import disjoint
from ..core.product import check_same_algebra
from ..errors import SharedPorts

WITNESS_PORTS = frozenset({"~w1", "~w2"})


@dataclass(frozen=True)
class RoundResult:
    """One coordination round: who moved, the composed label and where they went.

    ``consulted`` lists every automaton whose transitions or predicate were
    examined to find the round; it is instrumentation and does not take part
    in equality.
    """

    participants: Tuple[int, ...]
    label: Label
    successors: Tuple[Tuple[int, object], ...]
    consulted: FrozenSet[int] = field(default=frozenset(), compare=False)

    @property
    def is_idle(self) -> bool:
        return not self.participants

    def sort_key(self) -> tuple:
        return (self.participants, self.label.sort_key())


IDLE_ROUND = RoundResult((), IDENTITY, ())


class Network:
    """An ordered list of automata sharing one label algebra.

    Two automata are neighbours when their port sets meet. An automaton is
    locality-certified when its predicates never claim labels over foreign
    ports; if every automaton is certified, rounds only consult neighbours.
    """

    def __init__(self, automata: Sequence[BehaviouralAutomaton], name: str = "network",
                 domain: Sequence = (0, 1), certify: bool = True, bound: int = DEFAULT_STATE_BOUND, logger=None):
        self.automata = tuple(automata)
        check_same_algebra(self.automata)
        self.name = name
        if logger:
            self.logger = logger.getChild(name)
        else:
            self.logger = logging.getLogger(f"{__name__}.{name}")
        self.neighbours = {
            i: frozenset(
                j for j, other in enumerate(self.automata)
                if j != i and not disjoint(automaton.ports, other.ports)
            )
            for i, automaton in enumerate(self.automata)
        }
        if certify:
            self.certified = tuple(self._certify(automaton, domain, bound) for automaton in self.automata)
        else:
            self.certified = tuple(False for _ in self.automata)

    def _certify(self, automaton: BehaviouralAutomaton, domain, bound) -> bool:
        try:
            violations = locality_violations(automaton, WITNESS_PORTS, domain, bound)
        except SharedPorts:
            self.logger.debug(f"{automaton.name} shares every port; not certified")
            return False
        for violation in violations:
            self.logger.info(f"{automaton.name} is not local: {violation}")
        return not violations

    @property
    def algebra(self):
        return self.automata[0].algebra if self.automata else None

    @property
    def all_certified(self) -> bool:
        return all(self.certified)

    @property
    def initial(self) -> tuple:
        """First initial state of every automaton."""
        return tuple(automaton.initial[0] for automaton in self.automata)

    def coupled(self, i: int) -> FrozenSet[int]:
        """Automata whose predicates must be asked when automaton ``i`` moves."""
        if self.all_certified:
            return self.neighbours[i]
        return frozenset(j for j in range(len(self.automata)) if j != i)

    def boundary(self, region) -> FrozenSet[int]:
        found = set()
        for i in region:
            found |= self.coupled(i)
        return frozenset(found - set(region))

    def index(self, name: str) -> int:
        for i, automaton in enumerate(self.automata):
            if automaton.name == name:
                return i
        raise KeyError(name)

    def names(self, indices) -> List[str]:
        return [self.automata[i].name for i in sorted(indices)]

    def state_names(self, states: Sequence) -> dict:
        return {automaton.name: automaton.state_name(state) for automaton, state in zip(self.automata, states)}

    def __len__(self):
        return len(self.automata)

    def __repr__(self):
        return f"<Network {self.name} of {len(self.automata)} automata>"


def apply_round(states: Sequence, result: RoundResult) -> list:
    updated = list(states)
    for i, target in result.successors:
        updated[i] = target
    return updated


def make_round(chosen: dict, label: Label, consulted=()) -> RoundResult:
    successors = tuple((i, chosen[i].target) for i in sorted(chosen))
    return RoundResult(tuple(sorted(chosen)), label, successors, frozenset(consulted))
