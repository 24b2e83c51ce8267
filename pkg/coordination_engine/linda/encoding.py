"""Behavioural automata for Linda processes and tuple spaces.

A process automaton moves on its raw actions ``out(t)``, ``rd(t)`` and ``in(t)``;
the tuple-space automaton answers with the duals. Raw actions are claimed by
every concurrency predicate, so in a product only the τ actions that pair a
process with the tuple space survive.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple

from ..core.automaton import BehaviouralAutomaton, Transition
from ..core.ports import ALL_PORTS
from ..core.predicates import LindaBase, LindaPriority
from ..core.product import ProductAutomaton
from ..errors import NonGroundTuple
from .algebra import LINDA_ALGEBRA, linda_label
from .matching import ground_instances, match
from .syntax import (Choice, End, LTuple, Prefix, Process, Rec, TupleSpaceTerm, check_closed, format_tuple,
                     is_ground, substitute, tuple_key, unfold)

log = logging.getLogger(__name__)


def _prefixes(process: Process, unfolding: frozenset = frozenset()) -> Iterator[Prefix]:
    """Action prefixes reachable by resolving choices and unfolding recursion."""
    if isinstance(process, Prefix):
        yield process
    elif isinstance(process, Choice):
        yield from _prefixes(process.left, unfolding)
        yield from _prefixes(process.right, unfolding)
    elif isinstance(process, Rec):
        if process in unfolding:
            return
        yield from _prefixes(unfold(process.body, process.name, process), unfolding | {process})


class ProcessAutomaton(BehaviouralAutomaton):
    """⟦P⟧: states are process terms, explored lazily.

    ``rd``/``in`` candidates are the ground instances of the pattern over
    ``domain``. With a priority ``order`` the predicate also claims τ actions of
    processes ranked at most this one.
    """

    def __init__(self, process: Process, pid: str, domain: Sequence = (), order: Optional[Sequence[str]] = None,
                 logger=None):
        check_closed(process)
        super().__init__(ALL_PORTS, [process], LINDA_ALGEBRA, pid, logger)
        self.pid = pid
        self.domain = tuple(domain)
        self.order = tuple(order) if order is not None else None

    def _successors(self, state):
        for prefix in _prefixes(state):
            if prefix.kind == "out":
                yield linda_label("out", prefix.params, self.pid), prefix.cont
                continue
            for t in ground_instances(prefix.params, self.domain):
                gamma = match(prefix.params, t)
                yield linda_label(prefix.kind, t, self.pid), substitute(prefix.cont, gamma)

    def cp(self, state):
        if self.order is None:
            return LindaBase()
        return LindaPriority(self.pid, isinstance(state, End), self.order)


@dataclass(frozen=True)
class TupleBag:
    """Canonical multiset of ground tuples, used as a tuple-space state."""

    tuples: Tuple[LTuple, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tuples", tuple(sorted((tuple(t) for t in self.tuples), key=tuple_key)))

    def add(self, t: LTuple) -> "TupleBag":
        return TupleBag(self.tuples + (tuple(t),))

    def remove(self, t: LTuple) -> "TupleBag":
        counts = Counter(self.tuples)
        counts[tuple(t)] -= 1
        return TupleBag(tuple(counts.elements()))

    def __contains__(self, t):
        return tuple(t) in self.tuples

    def __str__(self):
        return "{" + ", ".join(f"<{format_tuple(t)}>" for t in self.tuples) + "}"


class TupleSpaceAutomaton(BehaviouralAutomaton):
    """⟦T⟧ over multisets of tuples.

    ``dual_out(t)`` exists for every ground t, so it is only produced on demand
    through ``transitions_for``; ``enabled`` lists the finitely many
    ``dual_rd``/``dual_in`` moves on stored tuples.
    """

    demand_driven = True

    def __init__(self, tuples: Sequence[LTuple] = (), name: str = "T", logger=None):
        for t in tuples:
            if not is_ground(t):
                raise NonGroundTuple(f"Tuple <{format_tuple(t)}> has formal parameters")
        super().__init__(ALL_PORTS, [TupleBag(tuple(tuples))], LINDA_ALGEBRA, name, logger)

    def _successors(self, state: TupleBag):
        for t in dict.fromkeys(state.tuples):
            yield linda_label("dual_rd", t), state
            yield linda_label("dual_in", t), state.remove(t)

    def transitions_for(self, state: TupleBag, partner_label):
        result = []
        for action in partner_label.actions:
            t = tuple(action.params)
            if action.name == "out" and is_ground(t):
                result.append(Transition(state, linda_label("dual_out", t), state.add(t)))
            elif action.name == "rd" and t in state:
                result.append(Transition(state, linda_label("dual_rd", t), state))
            elif action.name == "in" and t in state:
                result.append(Transition(state, linda_label("dual_in", t), state.remove(t)))
        return tuple(result)

    def cp(self, state):
        return LindaBase()


def process_ids(count: int) -> Tuple[str, ...]:
    return tuple(f"p{i}" for i in range(1, count + 1))


def encode_process(process: Process, pid: str = "p1", priority: Optional[Sequence[str]] = None,
                   domain: Optional[Sequence] = None, logger=None) -> ProcessAutomaton:
    """⟦P⟧ for a closed process.

    Raises:
        OpenProcess: ``process`` has free process variables or unbound output formals.
    """
    if domain is None:
        domain = TupleSpaceTerm((process,)).domain()
    return ProcessAutomaton(process, pid, domain, priority, logger)


def encode_tuplespace(tuples: Sequence[LTuple] = (), name: str = "T", logger=None) -> TupleSpaceAutomaton:
    return TupleSpaceAutomaton(tuples, name, logger)


def encode_term(term: TupleSpaceTerm, priority: Optional[Sequence[str]] = None, domain: Optional[Sequence] = None,
                ids: Optional[Sequence[str]] = None, logger=None) -> ProductAutomaton:
    """⟦P₁⟧ ⋈ ⋯ ⋈ ⟦Pₙ⟧ ⋈ ⟦T⟧.

    Process ids default to p1..pn in the order of ``term.processes``; ``priority``
    lists ids from highest to lowest priority and switches the priority
    predicates on.
    """
    ids = tuple(ids) if ids is not None else process_ids(len(term.processes))
    if len(ids) != len(term.processes):
        raise ValueError(f"{len(term.processes)} processes but {len(ids)} ids")
    if domain is None:
        domain = term.domain()
    factors = [encode_process(p, pid, priority, domain, logger) for p, pid in zip(term.processes, ids)]
    factors.append(encode_tuplespace(term.tuples, logger=logger))
    log.debug(f"Encoded Linda term with {len(factors) - 1} processes and {len(term.tuples)} tuples")
    return ProductAutomaton(factors, name="linda", logger=logger)
