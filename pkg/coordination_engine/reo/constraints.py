"""Data constraints over a finite domain.

The core grammar is ``tt | x = d | g ∨ g | ¬g``. Conjunction, falsity,
disequality and port equality are shorthands expanded into it when they are
built, so evaluation only ever sees the four core forms.
"""
from dataclasses import dataclass
from functools import reduce
from itertools import product
from typing import Dict, Iterable, List, Mapping, Sequence

from ..errors import EmptyDomain, UnboundPort
from ..core.ports import port_set


class DataConstraint:
    """Base class of constraint terms."""

    def ports(self) -> frozenset:
        return frozenset()

    def __and__(self, other):
        return conj(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)

    def __str__(self):
        return format_constraint(self)


@dataclass(frozen=True)
class TT(DataConstraint):
    pass


@dataclass(frozen=True)
class Eq(DataConstraint):
    port: str
    value: object

    def ports(self):
        return frozenset([self.port])


@dataclass(frozen=True)
class Or(DataConstraint):
    left: DataConstraint
    right: DataConstraint

    def ports(self):
        return self.left.ports() | self.right.ports()


@dataclass(frozen=True)
class Not(DataConstraint):
    body: DataConstraint

    def ports(self):
        return self.body.ports()


TRUE = TT()


def ff() -> DataConstraint:
    return Not(TRUE)


def conj(*constraints: DataConstraint) -> DataConstraint:
    """g₁ ∧ … ∧ gₙ as ¬(¬g₁ ∨ … ∨ ¬gₙ); the empty conjunction is tt."""
    if not constraints:
        return TRUE
    if len(constraints) == 1:
        return constraints[0]
    return Not(reduce(Or, (Not(g) for g in constraints)))


def disj(*constraints: DataConstraint) -> DataConstraint:
    """g₁ ∨ … ∨ gₙ; the empty disjunction is ff."""
    if not constraints:
        return ff()
    return reduce(Or, constraints)


def neq(port: str, value) -> DataConstraint:
    return Not(Eq(port, value))


def eq_ports(left: str, right: str, domain: Sequence) -> DataConstraint:
    """x̂ = ŷ over the domain, as (x̂=d₁ ∧ ŷ=d₁) ∨ … ∨ (x̂=dₙ ∧ ŷ=dₙ)."""
    if not domain:
        raise EmptyDomain("Port equality needs a nonempty data domain")
    return disj(*(conj(Eq(left, d), Eq(right, d)) for d in domain))


def all_equal(ports: Sequence[str], domain: Sequence) -> DataConstraint:
    """All ports carry the same value."""
    if len(ports) < 2:
        return TRUE
    first = ports[0]
    return conj(*(eq_ports(first, other, domain) for other in ports[1:]))


def dc_satisfies(assignment: Mapping, g: DataConstraint) -> bool:
    """Evaluate ``g`` under ``assignment``.

    Raises:
        UnboundPort: ``g`` mentions a port the assignment does not cover.
    """
    if isinstance(g, TT):
        return True
    if isinstance(g, Eq):
        if g.port not in assignment:
            raise UnboundPort(g.port)
        return assignment[g.port] == g.value
    if isinstance(g, Or):
        return dc_satisfies(assignment, g.left) or dc_satisfies(assignment, g.right)
    if isinstance(g, Not):
        return not dc_satisfies(assignment, g.body)
    raise TypeError(f"Unknown data constraint {g!r}")


@dataclass(frozen=True)
class CasLabel:
    """A ground constraint-automaton step X|g with g a total assignment of X."""

    ports: frozenset
    assignment: tuple
    noflow: frozenset = frozenset()

    @classmethod
    def of(cls, assignment: Mapping, noflow: Iterable = ()) -> "CasLabel":
        return cls(frozenset(assignment), tuple(sorted(assignment.items())), port_set(noflow))

    @property
    def data(self) -> Dict:
        return dict(self.assignment)

    def __str__(self):
        return format_cas(self)


def enumerate_solutions(ports: Iterable[str], g: DataConstraint, domain: Sequence) -> List[CasLabel]:
    """All total assignments of ``ports`` over ``domain`` that satisfy ``g``."""
    ports = sorted(port_set(ports))
    solutions = []
    for values in product(domain, repeat=len(ports)):
        assignment = dict(zip(ports, values))
        if dc_satisfies(assignment, g):
            solutions.append(CasLabel.of(assignment))
    return solutions


def _as_conjuncts(g: DataConstraint):
    # ¬(¬g₁ ∨ ¬g₂ ∨ …) reads back as g₁ ∧ g₂ ∧ …
    if not isinstance(g, Not) or not isinstance(g.body, Or):
        return None
    disjuncts = []
    stack = [g.body]
    while stack:
        node = stack.pop()
        if isinstance(node, Or):
            stack.extend([node.right, node.left])
        else:
            disjuncts.append(node)
    if all(isinstance(d, Not) for d in disjuncts):
        return [d.body for d in disjuncts]
    return None


def format_constraint(g: DataConstraint) -> str:
    if isinstance(g, TT):
        return "tt"
    if isinstance(g, Eq):
        return f"{g.port}={g.value}"
    conjuncts = _as_conjuncts(g)
    if conjuncts is not None:
        return " ∧ ".join(_wrap(c) for c in conjuncts)
    if isinstance(g, Or):
        return f"{_wrap(g.left)} ∨ {_wrap(g.right)}"
    if isinstance(g, Not):
        if isinstance(g.body, TT):
            return "ff"
        if isinstance(g.body, Eq):
            return f"{g.body.port}≠{g.body.value}"
        return f"¬{_wrap(g.body)}"
    raise TypeError(f"Unknown data constraint {g!r}")


def _wrap(g: DataConstraint) -> str:
    text = format_constraint(g)
    if isinstance(g, (TT, Eq)) or (isinstance(g, Not) and isinstance(g.body, (TT, Eq))):
        return text
    return f"({text})"


def format_guard(ports: Iterable[str], g: DataConstraint) -> str:
    """Render a transition guard as ``X | g``, e.g. ``ab | a=0 ∧ b=0``."""
    return f"{''.join(sorted(ports)) or '∅'} | {format_constraint(g)}"


def format_cas(cas: CasLabel) -> str:
    guard = conj(*(Eq(port, value) for port, value in cas.assignment))
    text = format_guard(cas.ports, guard)
    if cas.noflow:
        text += " ^" + ",".join(sorted(cas.noflow))
    return text
