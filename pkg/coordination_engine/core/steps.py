"""Atomic steps: the observable content of one coordination round."""
from dataclasses import dataclass, field
from typing import Mapping, Optional, Tuple

from ..errors import DataMismatch, InvalidStep
from .ports import ALL_PORTS, DataValue, Port, PortSet, intersect, is_subset, port_set, union


def _freeze_data(data) -> Tuple[Tuple[Port, DataValue], ...]:
    if isinstance(data, Mapping):
        items = data.items()
    else:
        items = data or ()
    return tuple(sorted(items, key=lambda item: item[0]))


@dataclass(frozen=True)
class AtomicStep:
    """A tuple ⟨P, F, IP, OP, data⟩.

    ``scope`` is P, ``flow`` is F, ``inputs``/``outputs`` are IP/OP and ``data``
    maps every port of IP ∪ OP to a value. ``data`` is stored as a sorted tuple of
    pairs so steps stay hashable; use ``data_map`` for lookups.
    """

    scope: PortSet
    flow: frozenset = frozenset()
    inputs: frozenset = frozenset()
    outputs: frozenset = frozenset()
    data: Tuple[Tuple[Port, DataValue], ...] = field(default=())

    def __post_init__(self):
        if self.scope is not ALL_PORTS:
            object.__setattr__(self, "scope", port_set(self.scope))
        object.__setattr__(self, "flow", port_set(self.flow))
        object.__setattr__(self, "inputs", port_set(self.inputs))
        object.__setattr__(self, "outputs", port_set(self.outputs))
        object.__setattr__(self, "data", _freeze_data(self.data))
        self._validate()

    def _validate(self):
        if not is_subset(self.flow, self.scope):
            raise InvalidStep(f"flow {sorted(self.flow)} is not within scope")
        if not self.inputs <= self.flow or not self.outputs <= self.flow:
            raise InvalidStep("input and output ports must have flow")
        if self.inputs & self.outputs:
            raise InvalidStep(f"ports {sorted(self.inputs & self.outputs)} are both input and output")
        ports = [port for port, _ in self.data]
        if len(ports) != len(set(ports)):
            raise InvalidStep("data assigns a port twice")
        if set(ports) != self.inputs | self.outputs:
            raise InvalidStep("data must be defined exactly on the input and output ports")

    @property
    def data_map(self) -> dict:
        return dict(self.data)

    def observable(self) -> tuple:
        """The step without its scope: (flow, inputs, outputs, data)."""
        return (self.flow, self.inputs, self.outputs, self.data)

    def widen(self, ports: PortSet) -> "AtomicStep":
        """Same step seen over a larger scope."""
        return AtomicStep(union(self.scope, ports), self.flow, self.inputs, self.outputs, self.data)

    def restrict(self, ports: PortSet) -> "AtomicStep":
        kept = intersect(self.flow, ports)
        inputs = intersect(self.inputs, ports)
        outputs = intersect(self.outputs, ports)
        data = tuple((port, value) for port, value in self.data if port in inputs or port in outputs)
        return AtomicStep(intersect(self.scope, ports), kept, inputs, outputs, data)


def empty_step(scope: PortSet = frozenset()) -> AtomicStep:
    return AtomicStep(scope)


def merge_data(left: Mapping, right: Mapping) -> dict:
    """Union of two data maps, raising DataMismatch if they disagree."""
    merged = dict(left)
    for port, value in right.items():
        if port in merged and merged[port] != value:
            raise DataMismatch(port, merged[port], value)
        merged[port] = value
    return merged


def compose_atomic_steps(s1: AtomicStep, s2: AtomicStep) -> AtomicStep:
    """Maximal composite step allowed by the composition conditions.

    P = P₁∪P₂, F = F₁∪F₂, OP = OP₁∪OP₂, IP = (IP₁∪IP₂) \\ OP and data the
    union of both maps (inputs fed by an output are no longer inputs).

    Raises:
        DataMismatch: the data maps disagree on a shared port.
    """
    data = merge_data(s1.data_map, s2.data_map)
    outputs = s1.outputs | s2.outputs
    inputs = (s1.inputs | s2.inputs) - outputs
    return AtomicStep(
        scope=union(s1.scope, s2.scope),
        flow=s1.flow | s2.flow,
        inputs=inputs,
        outputs=outputs,
        data={port: value for port, value in data.items() if port in inputs or port in outputs},
    )


def make_step(scope, flow=(), inputs=(), outputs=(), data: Optional[Mapping] = None) -> AtomicStep:
    """Convenience constructor accepting any iterables of ports."""
    return AtomicStep(
        scope if scope is ALL_PORTS else port_set(scope),
        port_set(flow),
        port_set(inputs),
        port_set(outputs),
        data or {},
    )
