"""Exceptions raised by the coordination engine.

Undefined label composition is not an error: algebras return ``None`` for it.
"""


class CoordinationError(Exception):
    """Base class for every error raised by this package."""


class InvalidStep(CoordinationError, ValueError):
    """An atomic step violates F ⊆ P, IP/OP ⊆ F, IP ∩ OP = ∅ or dom(data) = IP ∪ OP."""


class DataMismatch(CoordinationError, ValueError):
    """Two data maps disagree on a shared port."""

    def __init__(self, port, left, right):
        super().__init__(f"Data mismatch on port {port!r}: {left!r} != {right!r}")
        self.port = port
        self.left = left
        self.right = right


class AlgebraMismatch(CoordinationError, ValueError):
    """Automata governed by different label algebras were combined."""


class SharedPorts(CoordinationError, ValueError):
    """Witness ports for a locality check intersect the automaton's ports."""


class IndexOutOfRange(CoordinationError, IndexError):
    """An automaton index does not exist in the network."""


class UnboundPort(CoordinationError, ValueError):
    """A data constraint mentions a port absent from the assignment."""

    def __init__(self, port):
        super().__init__(f"Port {port!r} is not bound by the assignment")
        self.port = port


class EmptyDomain(CoordinationError, ValueError):
    """The configured data domain is empty."""


class ArityError(CoordinationError, ValueError):
    """A primitive was given the wrong number of ports."""


class NonGroundTuple(CoordinationError, ValueError):
    """A tuple-space holds a tuple with formal parameters."""


class OpenProcess(CoordinationError, ValueError):
    """A Linda process has free process variables."""


class StaleRound(CoordinationError, RuntimeError):
    """A round is fired that is not enabled in the current global state."""


class BoundExceeded(CoordinationError, RuntimeError):
    """A finite exploration hit its state bound."""


class ParseError(CoordinationError, ValueError):
    """Malformed network spec or process source."""

    def __init__(self, message, field=None, line=None):
        location = []
        if field is not None:
            location.append(f"field {field}")
        if line is not None:
            location.append(f"line {line}")
        prefix = f"[{', '.join(location)}] " if location else ""
        super().__init__(f"{prefix}{message}")
        self.field = field
        self.line = line


class WiringError(CoordinationError, ValueError):
    """A port is plugged into more than two primitive ends."""

    def __init__(self, port, count):
        super().__init__(f"Port {port!r} is used by {count} ends; at most 2 are allowed")
        self.port = port
        self.count = count
