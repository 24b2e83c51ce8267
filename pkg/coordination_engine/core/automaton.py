"""Behavioural automata: labelled transition systems with concurrency predicates."""
import logging
import threading
from abc import ABC, abstractmethod
from collections import OrderedDict
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping, Optional, Sequence, Tuple, Union

from .labels import STEP_ALGEBRA, Label, LabelAlgebra
from .ports import ALL_PORTS, PortSet, port_set
from .predicates import ConcurrencyPredicate, NEVER

State = Hashable

DEFAULT_CACHE_SIZE = 4096


@dataclass(frozen=True)
class Transition:
    source: State
    label: Label
    target: State


def state_name(state) -> str:
    """Readable name of a (possibly composite) state."""
    if isinstance(state, tuple):
        return "(" + ", ".join(state_name(part) for part in state) + ")"
    return str(state)


def transition_key(transition: Transition) -> tuple:
    return (transition.label.sort_key(), state_name(transition.target))


class BehaviouralAutomaton(ABC):
    """A possibly infinite automaton explored on demand.

    Subclasses implement ``_successors(state)`` returning (label, target) pairs
    and ``cp(state)``. ``enabled`` memoises successors for the ``cache_size``
    most recently used states; the cache is guarded by a lock so automata can
    be shared between threads.
    """

    # Automata that can offer transitions only when a partner asks for them
    # (see ``transitions_for``) are placed after their partners in products.
    demand_driven = False

    def __init__(self, ports: PortSet, initial: Iterable[State], algebra: LabelAlgebra = STEP_ALGEBRA,
                 name: Optional[str] = None, logger=None, cache_size: int = DEFAULT_CACHE_SIZE):
        self.ports = ports if ports is ALL_PORTS else port_set(ports)
        self.initial = tuple(initial)
        self.algebra = algebra
        self.name = name or type(self).__name__
        if logger:
            self.logger = logger.getChild(self.name)
        else:
            self.logger = logging.getLogger(f"{__name__}.{self.name}")
        self._cache = OrderedDict()
        self._cache_size = cache_size
        self._cache_lock = threading.Lock()

    @abstractmethod
    def _successors(self, state: State) -> Iterable[Tuple[Label, State]]:
        """Yield the (label, target) pairs leaving ``state``."""

    @abstractmethod
    def cp(self, state: State) -> ConcurrencyPredicate:
        """Concurrency predicate C(state)."""

    def enabled(self, state: State) -> Tuple[Transition, ...]:
        with self._cache_lock:
            cached = self._cache.get(state)
            if cached is not None:
                self._cache.move_to_end(state)
                return cached
        transitions = {
            Transition(state, self._fit(label), target)
            for label, target in self._successors(state)
        }
        result = tuple(sorted(transitions, key=transition_key))
        with self._cache_lock:
            result = self._remember(self._cache, state, result)
        return result

    def _remember(self, cache: OrderedDict, state: State, value):
        # caller holds _cache_lock
        value = cache.setdefault(state, value)
        cache.move_to_end(state)
        while len(cache) > self._cache_size:
            cache.popitem(last=False)
        return value

    def transitions_for(self, state: State, partner_label: Label) -> Tuple[Transition, ...]:
        """Transitions that may synchronise with ``partner_label``; by default all enabled ones."""
        return self.enabled(state)

    def _fit(self, label: Label) -> Label:
        if label.step.scope == self.ports:
            return label
        return self.algebra.lift(label, self.ports)

    def state_name(self, state: State) -> str:
        return state_name(state)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class ExplicitAutomaton(BehaviouralAutomaton):
    """A finite automaton given by its transition list.

    ``cp`` is either one predicate for every state, a mapping from states, or
    a function of the state. States missing from a mapping get ``NEVER``.
    """

    def __init__(self, ports: PortSet, initial: Iterable[State], transitions: Iterable[Transition],
                 cp: Union[ConcurrencyPredicate, Mapping, Callable] = NEVER,
                 algebra: LabelAlgebra = STEP_ALGEBRA, name: Optional[str] = None,
                 states: Optional[Sequence[State]] = None, logger=None):
        super().__init__(ports, initial, algebra, name, logger)
        self.transitions = tuple(transitions)
        self._outgoing = {}
        for transition in self.transitions:
            self._outgoing.setdefault(transition.source, []).append(transition)
        self.states = tuple(states) if states is not None else self._collect_states()
        self._cp = cp

    def _collect_states(self) -> tuple:
        seen = {}
        for state in self.initial:
            seen.setdefault(state, None)
        for transition in self.transitions:
            seen.setdefault(transition.source, None)
            seen.setdefault(transition.target, None)
        return tuple(seen)

    def _successors(self, state):
        for transition in self._outgoing.get(state, ()):
            yield transition.label, transition.target

    def cp(self, state):
        if isinstance(self._cp, ConcurrencyPredicate):
            return self._cp
        if isinstance(self._cp, Mapping):
            return self._cp.get(state, NEVER)
        return self._cp(state)
