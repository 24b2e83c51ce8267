"""Transition labels and label algebras.

A label carries a head (a set of actions such as ``s3(0)`` or ``cas``), the
atomic step α(ℓ), an optional no-flow set (the X of context labels s^X) and an
optional process tag. Algebras define the partial composition ℓ₁·ℓ₂; ``None``
stands for ⊥.
"""
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass, replace
from functools import reduce
from typing import Iterable, NamedTuple, Optional, Tuple

from ..errors import DataMismatch, InvalidStep
from .ports import PortSet, intersect, port_set
from .steps import AtomicStep, compose_atomic_steps

IDENTITY_HEAD = "eps"

_ACTION_RE = re.compile(r"^(?P<name>[^()·]+?)(?:\((?P<params>[^()]*)\))?$")


class Action(NamedTuple):
    name: str
    params: tuple = ()

    def render(self) -> str:
        if not self.params:
            return self.name
        return f"{self.name}({','.join(str(p) for p in self.params)})"

    @classmethod
    def parse(cls, text: str) -> "Action":
        match = _ACTION_RE.match(text.strip())
        if not match:
            raise ValueError(f"Malformed action {text!r}")
        params = ()
        if match.group("params"):
            params = tuple(_parse_value(p) for p in match.group("params").split(","))
        return cls(match.group("name"), params)


def _parse_value(text: str):
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        return text


def _action_key(action: Action):
    return (action.name, tuple(str(p) for p in action.params))


@dataclass(frozen=True)
class Label:
    actions: Tuple[Action, ...]
    step: AtomicStep
    noflow: frozenset = frozenset()
    tag: Optional[str] = None

    def __post_init__(self):
        actions = {Action(*a) for a in self.actions}
        object.__setattr__(self, "actions", tuple(sorted(actions, key=_action_key)))
        object.__setattr__(self, "noflow", port_set(self.noflow))
        if self.noflow & self.step.flow:
            raise InvalidStep(f"no-flow ports {sorted(self.noflow & self.step.flow)} also have flow")

    @property
    def head(self) -> str:
        if not self.actions:
            return IDENTITY_HEAD
        return "·".join(action.render() for action in self.actions)

    @property
    def flow(self) -> frozenset:
        return self.step.flow

    @property
    def is_silent(self) -> bool:
        """No flow and no no-flow constraint: behaves as ε everywhere."""
        return not self.step.flow and not self.noflow

    @property
    def is_identity(self) -> bool:
        return not self.actions and self.is_silent and self.tag is None

    def sort_key(self) -> tuple:
        return (
            self.head,
            tuple((p, str(v)) for p, v in self.step.data),
            tuple(sorted(self.step.flow)),
            tuple(sorted(self.noflow)),
            self.tag or "",
        )

    def __str__(self):
        text = self.head
        if self.noflow:
            text += "^" + ",".join(sorted(self.noflow))
        if self.tag:
            text += f"@{self.tag}"
        return text


IDENTITY = Label((), AtomicStep(frozenset()))


def make_label(name: str, step: AtomicStep, params: Iterable = (), noflow=(), tag=None) -> Label:
    return Label((Action(name, tuple(params)),), step, port_set(noflow), tag)


def restrict(label: Label, ports: PortSet) -> Label:
    """ℓ↾P′: intersect every component with P′; collapses to ε when nothing is left."""
    if label.is_identity:
        return IDENTITY
    step = label.step.restrict(ports)
    noflow = intersect(label.noflow, ports)
    if not step.flow and not noflow:
        return IDENTITY
    return Label(label.actions, step, noflow, label.tag)


class LabelAlgebra(ABC):
    """A partial commutative monoid of labels with identity ε."""

    name = "abstract"
    identity = IDENTITY

    def compose(self, l1: Label, l2: Label) -> Optional[Label]:
        if l1.is_identity:
            return l2
        if l2.is_identity:
            return l1
        return self._compose(l1, l2)

    @abstractmethod
    def _compose(self, l1: Label, l2: Label) -> Optional[Label]:
        """Compose two non-identity labels, or return None for ⊥."""

    def compose_all(self, labels: Iterable[Label]) -> Optional[Label]:
        def step(acc, label):
            return None if acc is None else self.compose(acc, label)

        return reduce(step, labels, self.identity)

    def restrict(self, label: Label, ports: PortSet) -> Label:
        return restrict(label, ports)

    def alpha(self, label: Label) -> AtomicStep:
        return label.step

    def lift(self, label: Label, ports: PortSet) -> Label:
        """See ``label`` as a label over a larger port set."""
        if label.is_identity:
            return label
        return replace(label, step=label.step.widen(ports))

    def __eq__(self, other):
        return isinstance(other, LabelAlgebra) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class StepAlgebra(LabelAlgebra):
    """Composition driven by atomic steps and shared ports.

    ℓ₁·ℓ₂ is defined iff both sides agree on which shared ports have flow
    (F₁ ∩ P₂ = F₂ ∩ P₁), their data agree, and neither side's no-flow set meets
    the other side's flow. The composite no-flow set drops ports that gained flow.
    """

    name = "step"

    def _compose(self, l1: Label, l2: Label) -> Optional[Label]:
        s1, s2 = l1.step, l2.step
        if intersect(s1.flow, s2.scope) != intersect(s2.flow, s1.scope):
            return None
        if l1.noflow & s2.flow or l2.noflow & s1.flow:
            return None
        try:
            step = compose_atomic_steps(s1, s2)
        except DataMismatch:
            return None
        noflow = (l1.noflow | l2.noflow) - step.flow
        return Label(l1.actions + l2.actions, step, noflow)


STEP_ALGEBRA = StepAlgebra()
