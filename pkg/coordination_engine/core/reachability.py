"""Bounded breadth-first exploration into a networkx state graph."""
import logging
from collections import deque
from typing import Callable, Hashable, Iterable, List, Tuple

import networkx as nx

from .automaton import BehaviouralAutomaton, Transition, state_name
from .labels import Label

logger = logging.getLogger(__name__)


class StateGraph:
    """Explored fragment of a transition system.

    Nodes are states (``initial`` marks the start states); every edge keeps
    its ``label`` and any extra attributes supplied by the explorer.
    """

    def __init__(self, initial: Iterable = (), name: str = ""):
        self.graph = nx.MultiDiGraph(name=name)
        self.initial = []
        self.truncated = False
        for state in initial:
            self.add_state(state, initial=True)

    def add_state(self, state, initial: bool = False):
        if state not in self.graph:
            self.graph.add_node(state, initial=initial)
            if initial:
                self.initial.append(state)

    def add_transition(self, source, label: Label, target, **attributes):
        self.graph.add_edge(source, target, label=label, **attributes)

    def states(self) -> List[Hashable]:
        return list(self.graph.nodes)

    def transitions(self) -> List[Transition]:
        return [Transition(u, data["label"], v) for u, v, data in self.graph.edges(data=True)]

    def edges(self) -> List[Tuple[Hashable, Hashable, dict]]:
        return list(self.graph.edges(data=True))

    def number_of_states(self) -> int:
        return self.graph.number_of_nodes()

    def number_of_transitions(self) -> int:
        return self.graph.number_of_edges()

    def labels(self) -> List[Label]:
        return [data["label"] for _, _, data in self.graph.edges(data=True)]

    def out_transitions(self, state) -> List[Transition]:
        return [Transition(state, data["label"], v) for _, v, data in self.graph.out_edges(state, data=True)]

    def is_isomorphic(self, other: "StateGraph", key: Callable[[Label], Hashable]) -> bool:
        """Isomorphism up to state naming, comparing edge labels by ``key``."""
        left = _keyed_digraph(self, key)
        right = _keyed_digraph(other, key)
        return nx.is_isomorphic(
            left, right,
            node_match=lambda a, b: a.get("initial") == b.get("initial"),
            edge_match=lambda a, b: a["keys"] == b["keys"],
        )

    def __len__(self):
        return self.number_of_states()


def _keyed_digraph(graph: StateGraph, key) -> nx.DiGraph:
    # Parallel edges collapse into one edge carrying the multiset of label keys.
    keyed = nx.DiGraph()
    for state, data in graph.graph.nodes(data=True):
        keyed.add_node(state, initial=bool(data.get("initial")))
    for u, v, data in graph.graph.edges(data=True):
        if not keyed.has_edge(u, v):
            keyed.add_edge(u, v, keys=[])
        keyed[u][v]["keys"].append(key(data["label"]))
    for _, _, data in keyed.edges(data=True):
        data["keys"] = sorted(data["keys"], key=repr)
    return keyed


def bfs(initial: Iterable, successors: Callable, bound: int, name: str = "") -> StateGraph:
    """Explore from ``initial`` keeping at most ``bound`` states.

    ``successors(state)`` yields ``(label, target, attributes)`` triples. Edges
    to states beyond the bound are dropped and the result is flagged truncated.
    """
    graph = StateGraph(name=name)
    initial = list(initial)
    if bound <= 0:
        graph.truncated = True
        return graph
    queue = deque()
    for state in initial:
        if state in graph.graph:
            continue
        if graph.number_of_states() >= bound:
            graph.truncated = True
            break
        graph.add_state(state, initial=True)
        queue.append(state)

    while queue:
        state = queue.popleft()
        for label, target, attributes in successors(state):
            if target not in graph.graph:
                if graph.number_of_states() >= bound:
                    graph.truncated = True
                    continue
                graph.add_state(target)
                queue.append(target)
            graph.add_transition(state, label, target, **attributes)

    logger.debug(f"Explored {graph.number_of_states()} states of {name or 'automaton'}"
                 f"{' (truncated)' if graph.truncated else ''}")
    return graph


def reachable(b: BehaviouralAutomaton, bound: int) -> StateGraph:
    """Reachable fragment of ``b`` from its initial states, at most ``bound`` states."""
    def successors(state):
        for transition in b.enabled(state):
            yield transition.label, transition.target, {}

    graph = bfs(b.initial, successors, bound, b.name)
    if graph.truncated:
        logger.warning(f"Exploration of {b.name} stopped at {bound} states")
    return graph


def named_states(graph: StateGraph) -> List[str]:
    return sorted(state_name(state) for state in graph.states())
