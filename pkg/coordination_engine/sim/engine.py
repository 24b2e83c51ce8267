"""Round search, firing and global exploration.

Rounds are found region by region. A region is a connected set of coupled
automata; its rounds are the composite steps in which every member takes part
and no automaton on the region's boundary claims the composite. Regions grow
one neighbour at a time and only while their members still compose, so an
automaton far from where the action is never gets asked. Firings of regions
that are not coupled to one another are also offered together, as one round.
"""
import logging
from collections import deque
from typing import Callable, Dict, List, Sequence

from ..core.locality import DEFAULT_STATE_BOUND
from ..core.predicates import cp_contains
from ..core.product import search_firings
from ..core.reachability import StateGraph, bfs
from ..errors import StaleRound
from .network import IDLE_ROUND, Network, RoundResult, apply_round, make_round

logger = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 6
MODES = ("regions", "exhaustive")


def _claimed(net: Network, states: Sequence, j: int, label, consult: Callable) -> bool:
    consult(j)
    automaton = net.automata[j]
    return cp_contains(automaton.cp(states[j]), net.algebra.restrict(label, automaton.ports))


def _region_firings(net: Network, states: Sequence) -> List[tuple]:
    """Composite steps of connected regions in which every member takes part."""
    firings = []
    visited = set()
    queue = deque(frozenset([i]) for i in range(len(net)))
    while queue:
        region = queue.popleft()
        if region in visited:
            continue
        visited.add(region)

        consulted = set()
        found = [
            (label, chosen)
            for label, chosen in search_firings(net.automata, states, sorted(region), (), consulted.add)
            if len(chosen) == len(region)
        ]
        if not found:
            continue
        firings.extend((region, label, chosen, frozenset(consulted)) for label, chosen in found)
        for j in sorted(net.boundary(region)):
            queue.append(region | {j})
    return firings


def _admit(net: Network, states: Sequence, region, label, chosen: dict, consulted, found: dict) -> None:
    asked = set(consulted)
    if any(_claimed(net, states, j, label, asked.add) for j in sorted(net.boundary(region))):
        return
    result = make_round(chosen, label, asked)
    found.setdefault(result, result)


def _region_rounds(net: Network, states: Sequence) -> List[RoundResult]:
    firings = _region_firings(net, states)
    found: Dict[RoundResult, RoundResult] = {}

    # Regions that are not coupled to each other may also fire in the same round.
    def extend(start, region, label, chosen, consulted):
        for k in range(start, len(firings)):
            other, other_label, other_chosen, other_consulted = firings[k]
            if other & region or other & net.boundary(region):
                continue
            composite = net.algebra.compose(label, other_label)
            if composite is None:
                continue
            union = region | other
            merged = {**chosen, **other_chosen}
            asked = consulted | other_consulted
            _admit(net, states, union, composite, merged, asked, found)
            extend(k + 1, union, composite, merged, asked)

    for k, (region, label, chosen, consulted) in enumerate(firings):
        _admit(net, states, region, label, chosen, consulted, found)
        extend(k + 1, region, label, chosen, consulted)
    return list(found.values())


def _exhaustive_rounds(net: Network, states: Sequence) -> List[RoundResult]:
    if len(net) > EXHAUSTIVE_LIMIT:
        raise ValueError(f"Exhaustive round search is limited to {EXHAUSTIVE_LIMIT} automata, got {len(net)}")
    indices = list(range(len(net)))
    results = {}
    for label, chosen in search_firings(net.automata, states, indices, indices):
        result = make_round(chosen, label, indices)
        results.setdefault(result, result)
    return list(results.values())


def enabled_rounds(net: Network, states: Sequence, include_idle: bool = False,
                   mode: str = "regions") -> List[RoundResult]:
    """Every round enabled in the global state ``states``, in canonical order.

    ``mode="exhaustive"`` searches all subsets of automata at once (the full
    product step); it is limited to small networks and consults everybody.
    """
    if mode not in MODES:
        raise ValueError(f"Unknown round search mode {mode!r}")
    if mode == "regions":
        rounds = _region_rounds(net, states)
    else:
        rounds = _exhaustive_rounds(net, states)
    rounds.sort(key=RoundResult.sort_key)
    if include_idle:
        rounds.insert(0, IDLE_ROUND)
    return rounds


def fire_round(net: Network, states: Sequence, result: RoundResult, mode: str = "regions") -> list:
    """Advance the participants of ``result``; everybody else keeps their state.

    Raises:
        StaleRound: ``result`` is not enabled in ``states``.
    """
    if result.is_idle:
        return list(states)
    if result not in enabled_rounds(net, states, mode=mode):
        raise StaleRound(f"Round {result.label} of {net.names(result.participants)} is not enabled")
    return apply_round(states, result)


def explore(net: Network, bound: int = DEFAULT_STATE_BOUND, states: Sequence = None,
            mode: str = "regions") -> StateGraph:
    """Global reachability graph over state vectors, at most ``bound`` states."""
    start = tuple(states) if states is not None else net.initial

    def successors(state):
        for result in enabled_rounds(net, state, mode=mode):
            yield result.label, tuple(apply_round(state, result)), {"participants": result.participants}

    graph = bfs([start], successors, bound, net.name)
    if graph.truncated:
        logger.warning(f"Exploration of {net.name} stopped at {bound} states")
    return graph

