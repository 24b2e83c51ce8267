"""Strong bisimulation between finite automaton fragments.

Transitions are compared through a key function of their label, typically the
observable part of the atomic step, so automata with different label heads can
still be related.
"""
from typing import Callable, Hashable

from .automaton import BehaviouralAutomaton
from .labels import Label
from .reachability import StateGraph, reachable


def step_key(label: Label) -> Hashable:
    """Flow set and data of a label; scope and head are ignored."""
    return (label.step.flow, label.step.data)


def graphs_bisimilar(left: StateGraph, right: StateGraph, key: Callable[[Label], Hashable] = step_key) -> bool:
    """Greatest-fixpoint check that the initial states of both graphs are related."""
    left_moves = {state: [(key(t.label), t.target) for t in left.out_transitions(state)] for state in left.states()}
    right_moves = {state: [(key(t.label), t.target) for t in right.out_transitions(state)] for state in right.states()}

    relation = {(p, q) for p in left.states() for q in right.states()}

    def left_simulated(p, q):
        return all(
            any(k == other and (p2, q2) in relation for other, q2 in right_moves[q])
            for k, p2 in left_moves[p]
        )

    def right_simulated(p, q):
        return all(
            any(k == other and (p2, q2) in relation for other, p2 in left_moves[p])
            for k, q2 in right_moves[q]
        )

    changed = True
    while changed:
        changed = False
        for pair in list(relation):
            if not left_simulated(*pair) or not right_simulated(*pair):
                relation.discard(pair)
                changed = True

    left_initial = set(left.initial)
    right_initial = set(right.initial)
    return all(any((p, q) in relation for q in right_initial) for p in left_initial) and \
        all(any((p, q) in relation for p in left_initial) for q in right_initial)


def bisimilar(b1: BehaviouralAutomaton, b2: BehaviouralAutomaton, key: Callable[[Label], Hashable] = step_key,
              bound: int = 1000) -> bool:
    """Bisimilarity of the reachable fragments of ``b1`` and ``b2`` (up to ``bound`` states each)."""
    return graphs_bisimilar(reachable(b1, bound), reachable(b2, bound), key)
