"""Ports, data values and port-set helpers.

Ports are plain strings and compare by name. Finite port sets are frozensets;
the Linda instantiation uses the whole global port set, represented by the
``ALL_PORTS`` sentinel.
"""
from typing import AbstractSet, Hashable, Iterable, Union

Port = str
DataValue = Hashable


class _AllPorts:
    """The global set of ports. Absorbs unions, is neutral for intersections."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __and__(self, other):
        return other

    __rand__ = __and__

    def __or__(self, other):
        return self

    __ror__ = __or__

    def __contains__(self, port):
        return True

    def __bool__(self):
        return True

    def __repr__(self):
        return "ALL_PORTS"

    def __reduce__(self):
        return (_AllPorts, ())


ALL_PORTS = _AllPorts()

PortSet = Union[AbstractSet[Port], _AllPorts]


def port_set(ports: Iterable[Port] = ()) -> frozenset:
    """Build a finite port set; a bare string is one port, not a set of letters."""
    if isinstance(ports, str):
        return frozenset([ports])
    return frozenset(ports)


def intersect(left: PortSet, right: PortSet) -> PortSet:
    if left is ALL_PORTS:
        return right
    if right is ALL_PORTS:
        return left
    return frozenset(left) & frozenset(right)


def union(left: PortSet, right: PortSet) -> PortSet:
    if left is ALL_PORTS or right is ALL_PORTS:
        return ALL_PORTS
    return frozenset(left) | frozenset(right)


def disjoint(left: PortSet, right: PortSet) -> bool:
    if left is ALL_PORTS:
        return not right
    if right is ALL_PORTS:
        return not left
    return frozenset(left).isdisjoint(right)


def is_subset(left: PortSet, right: PortSet) -> bool:
    if right is ALL_PORTS:
        return True
    if left is ALL_PORTS:
        return False
    return frozenset(left) <= frozenset(right)


def sorted_ports(ports: PortSet) -> list:
    if ports is ALL_PORTS:
        return ["*"]
    return sorted(ports)


def format_ports(ports: PortSet) -> str:
    """Render a port set compactly, e.g. ``{a,b,c}``."""
    return "{" + ",".join(sorted_ports(ports)) + "}"
