"""Synchronous product of behavioural automata.

A product transition is built by picking, for every factor, either one of its
transitions or nothing. The picked labels must compose to a defined label, and
every factor left out must not claim the composite in its concurrency
predicate (its restriction to that factor's ports). With two factors this is
exactly the joint / left / right case split of the binary product.
"""
from collections import OrderedDict
from dataclasses import dataclass
from functools import reduce
from itertools import product as cartesian
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..errors import AlgebraMismatch
from .automaton import DEFAULT_CACHE_SIZE, BehaviouralAutomaton, Transition
from .labels import Label
from .ports import union
from .predicates import ConcurrencyPredicate, Union, cp_contains


@dataclass(frozen=True)
class Justification:
    """Which factors took part in a product transition, and with which transitions."""

    participants: Tuple[int, ...]
    parts: Tuple[Transition, ...]

    def kind(self, factor_count: int = 2) -> str:
        if len(self.participants) > 1:
            return "joint"
        if factor_count == 2:
            return "left" if self.participants[0] == 0 else "right"
        return f"factor{self.participants[0]}"


def check_same_algebra(automata: Sequence[BehaviouralAutomaton]):
    algebras = {automaton.algebra for automaton in automata}
    if len(algebras) > 1:
        names = sorted(repr(algebra) for algebra in algebras)
        raise AlgebraMismatch(f"Automata use different label algebras: {', '.join(names)}")


def search_firings(automata: Sequence[BehaviouralAutomaton], states: Sequence, members: Sequence[int],
                   outsiders: Sequence[int], on_consult=None) -> Iterator[Tuple[Label, Dict[int, Transition]]]:
    """Enumerate composite steps of ``members`` that no outsider blocks.

    Every member either contributes one transition or stays idle; at least one
    contributes. Demand-driven members are visited last so their partners'
    labels are already known. ``on_consult`` is called with every automaton
    index whose transitions or predicate are examined.
    """
    algebra = automata[0].algebra if automata else None
    order = sorted(members, key=lambda i: (automata[i].demand_driven, i))
    consult = on_consult or (lambda index: None)

    def candidates(index, partial: Label):
        automaton = automata[index]
        consult(index)
        if automaton.demand_driven and not partial.is_identity:
            return automaton.transitions_for(states[index], partial)
        return automaton.enabled(states[index])

    def extend(position, partial: Label, chosen: Dict[int, Transition]):
        if position == len(order):
            if chosen:
                yield partial, dict(chosen)
            return
        index = order[position]
        yield from extend(position + 1, partial, chosen)
        for transition in candidates(index, partial):
            composite = algebra.compose(partial, transition.label)
            if composite is None:
                continue
            chosen[index] = transition
            yield from extend(position + 1, composite, chosen)
            del chosen[index]

    seen = set()
    for label, chosen in extend(0, algebra.identity if algebra else None, {}):
        if label.is_identity:
            continue
        blocked = False
        for j in outsiders:
            if j in chosen:
                continue
            consult(j)
            if cp_contains(automata[j].cp(states[j]), algebra.restrict(label, automata[j].ports)):
                blocked = True
                break
        if blocked:
            continue
        key = (label, tuple(sorted((i, t.target) for i, t in chosen.items())))
        if key in seen:
            continue
        seen.add(key)
        yield label, chosen


class ProductAutomaton(BehaviouralAutomaton):
    """b₁ ⋈ ⋯ ⋈ bₙ over tuples of factor states, explored lazily."""

    def __init__(self, factors: Sequence[BehaviouralAutomaton], name: Optional[str] = None, logger=None,
                 cache_size: int = DEFAULT_CACHE_SIZE):
        factors = tuple(factors)
        if not factors:
            raise ValueError("A product needs at least one factor")
        check_same_algebra(factors)
        ports = reduce(union, (factor.ports for factor in factors))
        initial = tuple(cartesian(*(factor.initial for factor in factors)))
        name = name or "⋈".join(factor.name for factor in factors)
        super().__init__(ports, initial, factors[0].algebra, name, logger, cache_size)
        self.factors = factors
        self.demand_driven = any(factor.demand_driven for factor in factors)
        self._justifications: "OrderedDict[object, Dict[Transition, Justification]]" = OrderedDict()

    def _firings(self, state) -> List[Tuple[Label, Dict[int, Transition]]]:
        indices = range(len(self.factors))
        return list(search_firings(self.factors, state, indices, indices))

    def _justification_table(self, state) -> Dict[Transition, Justification]:
        table = {}
        for label, chosen in self._firings(state):
            target = tuple(
                chosen[i].target if i in chosen else state[i]
                for i in range(len(self.factors))
            )
            participants = tuple(sorted(chosen))
            justification = Justification(participants, tuple(chosen[i] for i in participants))
            table.setdefault(Transition(state, self._fit(label), target), justification)
        with self._cache_lock:
            return self._remember(self._justifications, state, table)

    def _successors(self, state):
        for transition in self._justification_table(state):
            yield transition.label, transition.target

    def justify(self, transition: Transition) -> Justification:
        """The clause that produced ``transition``."""
        with self._cache_lock:
            table = self._justifications.get(transition.source)
        if table is None:
            table = self._justification_table(transition.source)
        return table[transition]

    def kind(self, transition: Transition) -> str:
        return self.justify(transition).kind(len(self.factors))

    def cp(self, state) -> ConcurrencyPredicate:
        return reduce(Union, (factor.cp(part) for factor, part in zip(self.factors, state)))


def product(b1: BehaviouralAutomaton, b2: BehaviouralAutomaton, name: Optional[str] = None) -> ProductAutomaton:
    """Binary product b1 ⋈ b2.

    Raises:
        AlgebraMismatch: the automata use different label algebras.
    """
    return ProductAutomaton((b1, b2), name)


def product_all(automata: Sequence[BehaviouralAutomaton], name: Optional[str] = None) -> ProductAutomaton:
    """Flat n-ary product; for two automata it coincides with ``product``."""
    return ProductAutomaton(automata, name)
