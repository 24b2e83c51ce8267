"""Symbolic concurrency predicates.

A predicate C(q) is the set of labels that require synchronisation with the
automaton in state q. The sets are infinite, so predicates are terms with a
decidable membership test, ``cp_contains``. The silent label ε is never a member.
"""
from dataclasses import dataclass, field
from typing import Tuple

from .labels import Label
from .ports import ALL_PORTS, PortSet, disjoint, intersect, is_subset, port_set, sorted_ports

LINDA_RAW_KINDS = frozenset({"out", "rd", "in", "dual_out", "dual_rd", "dual_in"})
LINDA_TAU_KINDS = frozenset({"tau_out", "tau_rd", "tau_in"})


class ConcurrencyPredicate:
    """Base class of predicate terms."""

    def ports(self) -> PortSet:
        """Ports the term refers to (used for analytic locality checks)."""
        return frozenset()

    def __or__(self, other):
        return Union(self, other)


def _freeze(ports) -> PortSet:
    return ports if ports is ALL_PORTS else port_set(ports)


@dataclass(frozen=True)
class Excl(ConcurrencyPredicate):
    """Labels with flow on some port of ``known``."""

    known: PortSet

    def __post_init__(self):
        object.__setattr__(self, "known", _freeze(self.known))

    def ports(self):
        return self.known

    def __str__(self):
        return f"excl({','.join(sorted_ports(self.known))})"


@dataclass(frozen=True)
class Ctx(ConcurrencyPredicate):
    """Excl(known), or a no-flow set meeting ``required``."""

    known: PortSet
    required: PortSet = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "known", _freeze(self.known))
        object.__setattr__(self, "required", _freeze(self.required))

    def ports(self):
        if self.known is ALL_PORTS or self.required is ALL_PORTS:
            return ALL_PORTS
        return self.known | self.required

    def __str__(self):
        return f"ctx({','.join(sorted_ports(self.known))};{','.join(sorted_ports(self.required))})"


@dataclass(frozen=True)
class LindaBase(ConcurrencyPredicate):
    """Act ∪ Act̄: every raw process or tuple-space action."""

    def ports(self):
        return ALL_PORTS

    def __str__(self):
        return "linda"


@dataclass(frozen=True)
class LindaPriority(ConcurrencyPredicate):
    """LindaBase plus τ labels of processes ranked at most ``process``.

    ``order`` lists process ids from highest to lowest priority; ids missing from
    it rank below every listed id.
    """

    process: str
    ended: bool = False
    order: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))

    def rank(self, process) -> int:
        try:
            return self.order.index(process)
        except ValueError:
            return len(self.order)

    def ranked_below_or_equal(self, other, process) -> bool:
        """``other`` ⪯ ``process`` in the priority order."""
        return self.rank(other) >= self.rank(process)

    def ports(self):
        return ALL_PORTS

    def __str__(self):
        state = "end" if self.ended else "live"
        return f"linda_priority({self.process};{state};{'>'.join(self.order)})"


@dataclass(frozen=True)
class Union(ConcurrencyPredicate):
    left: ConcurrencyPredicate
    right: ConcurrencyPredicate

    def ports(self):
        left, right = self.left.ports(), self.right.ports()
        if left is ALL_PORTS or right is ALL_PORTS:
            return ALL_PORTS
        return left | right

    def __str__(self):
        return f"{self.left} ∪ {self.right}"


@dataclass(frozen=True)
class Never(ConcurrencyPredicate):
    def __str__(self):
        return "never"


NEVER = Never()


def _linda_kinds(label: Label) -> set:
    return {action.name for action in label.actions}


def is_linda_raw(label: Label) -> bool:
    kinds = _linda_kinds(label)
    return bool(kinds) and kinds <= LINDA_RAW_KINDS


def is_linda_tau(label: Label) -> bool:
    kinds = _linda_kinds(label)
    return bool(kinds) and kinds <= LINDA_TAU_KINDS


def cp_contains(cp: ConcurrencyPredicate, label: Label) -> bool:
    """Decide ℓ ∈ C for a symbolic predicate term."""
    if label.is_silent:
        return False
    if isinstance(cp, Excl):
        return not disjoint(cp.known, label.step.flow)
    if isinstance(cp, Ctx):
        if not disjoint(cp.known, label.step.flow):
            return True
        return bool(intersect(label.noflow, cp.required))
    if isinstance(cp, LindaBase):
        return is_linda_raw(label)
    if isinstance(cp, LindaPriority):
        if is_linda_raw(label):
            return True
        if cp.ended or not is_linda_tau(label) or label.tag is None:
            return False
        return cp.ranked_below_or_equal(label.tag, cp.process)
    if isinstance(cp, Union):
        return cp_contains(cp.left, label) or cp_contains(cp.right, label)
    if isinstance(cp, Never):
        return False
    raise TypeError(f"Unknown concurrency predicate {cp!r}")


def predicate_is_local(cp: ConcurrencyPredicate, ports: PortSet) -> bool:
    """Analytic locality of a predicate term.

    Membership is always decided on labels restricted to ``ports``, so only the
    part of the term inside ``ports`` can match. Terms over every port stay
    non-local unless the automaton itself owns every port.
    """
    term_ports = cp.ports()
    if term_ports is ALL_PORTS:
        return ports is ALL_PORTS
    return is_subset(intersect(term_ports, ports), ports)
