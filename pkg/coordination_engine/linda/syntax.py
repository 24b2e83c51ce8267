"""Linda-calculus terms: tuples, processes and tuple-space terms.

Tuple parameters are plain data values (actuals) or ``Formal`` names. A
formal in the pattern of ``rd``/``in`` binds that name in the continuation;
``rec X.P`` binds the process variable X in P.
"""
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Mapping, Tuple

from ..errors import NonGroundTuple, OpenProcess

ACTION_KINDS = ("out", "rd", "in")


@dataclass(frozen=True)
class Formal:
    name: str

    def __str__(self):
        return self.name


LTuple = Tuple


def is_ground(t: LTuple) -> bool:
    return not any(isinstance(p, Formal) for p in t)


def formals(t: LTuple) -> FrozenSet[str]:
    return frozenset(p.name for p in t if isinstance(p, Formal))


def substitute_tuple(t: LTuple, gamma: Mapping[str, object]) -> LTuple:
    return tuple(gamma.get(p.name, p) if isinstance(p, Formal) else p for p in t)


def format_value(value) -> str:
    if isinstance(value, Formal):
        return value.name
    if isinstance(value, str):
        return '"' + value.replace('"', '\\"') + '"'
    return str(value)


def format_tuple(t: LTuple) -> str:
    return ",".join(format_value(p) for p in t)


def value_key(value):
    # Mixed int/str tuples still need a total order.
    return (type(value).__name__, str(value))


def tuple_key(t: LTuple):
    return tuple(value_key(p) for p in t)


class Process:
    """Base class of process terms; rendered in the concrete syntax by ``str``."""

    def __str__(self):
        return format_process(self)


@dataclass(frozen=True)
class Prefix(Process):
    kind: str
    params: LTuple
    cont: Process

    def __post_init__(self):
        if self.kind not in ACTION_KINDS:
            raise ValueError(f"Unknown Linda action {self.kind!r}")
        object.__setattr__(self, "params", tuple(self.params))


@dataclass(frozen=True)
class Var(Process):
    name: str


@dataclass(frozen=True)
class Rec(Process):
    name: str
    body: Process


@dataclass(frozen=True)
class Choice(Process):
    left: Process
    right: Process


@dataclass(frozen=True)
class End(Process):
    pass


END = End()


def out(*params, cont: Process = END) -> Prefix:
    return Prefix("out", params, cont)


def rd(*params, cont: Process = END) -> Prefix:
    return Prefix("rd", params, cont)


def in_(*params, cont: Process = END) -> Prefix:
    return Prefix("in", params, cont)


def substitute(process: Process, gamma: Mapping[str, object]) -> Process:
    """P[γ]: replace the free data formals of ``process`` named in γ."""
    if not gamma:
        return process
    if isinstance(process, Prefix):
        if process.kind == "out":
            return Prefix(process.kind, substitute_tuple(process.params, gamma), substitute(process.cont, gamma))
        # Pattern formals are binders and shadow γ in the continuation.
        inner = {name: value for name, value in gamma.items() if name not in formals(process.params)}
        return Prefix(process.kind, process.params, substitute(process.cont, inner))
    if isinstance(process, Rec):
        return Rec(process.name, substitute(process.body, gamma))
    if isinstance(process, Choice):
        return Choice(substitute(process.left, gamma), substitute(process.right, gamma))
    return process


def unfold(process: Process, name: str, replacement: Process) -> Process:
    """P[Q/X] for a process variable X."""
    if isinstance(process, Var):
        return replacement if process.name == name else process
    if isinstance(process, Prefix):
        return Prefix(process.kind, process.params, unfold(process.cont, name, replacement))
    if isinstance(process, Rec):
        if process.name == name:
            return process
        return Rec(process.name, unfold(process.body, name, replacement))
    if isinstance(process, Choice):
        return Choice(unfold(process.left, name, replacement), unfold(process.right, name, replacement))
    return process


def free_variables(process: Process, bound: FrozenSet[str] = frozenset()) -> FrozenSet[str]:
    """Free process variables."""
    if isinstance(process, Var):
        return frozenset() if process.name in bound else frozenset([process.name])
    if isinstance(process, Prefix):
        return free_variables(process.cont, bound)
    if isinstance(process, Rec):
        return free_variables(process.body, bound | {process.name})
    if isinstance(process, Choice):
        return free_variables(process.left, bound) | free_variables(process.right, bound)
    return frozenset()


def free_formals(process: Process, bound: FrozenSet[str] = frozenset()) -> FrozenSet[str]:
    """Data formals used outside the scope of any binding pattern."""
    if isinstance(process, Prefix):
        names = formals(process.params)
        if process.kind == "out":
            return (names - bound) | free_formals(process.cont, bound)
        return free_formals(process.cont, bound | names)
    if isinstance(process, Rec):
        return free_formals(process.body, bound)
    if isinstance(process, Choice):
        return free_formals(process.left, bound) | free_formals(process.right, bound)
    return frozenset()


def check_closed(process: Process):
    """Raises OpenProcess when ``process`` has free process variables or free data formals."""
    variables = free_variables(process)
    if variables:
        raise OpenProcess(f"Process {process} has free process variables {sorted(variables)}")
    data = free_formals(process)
    if data:
        raise OpenProcess(f"Process {process} outputs unbound formals {sorted(data)}")


def actuals(process: Process) -> set:
    """Data values occurring in ``process``."""
    if isinstance(process, Prefix):
        return {p for p in process.params if not isinstance(p, Formal)} | actuals(process.cont)
    if isinstance(process, Rec):
        return actuals(process.body)
    if isinstance(process, Choice):
        return actuals(process.left) | actuals(process.right)
    return set()


def process_size(process: Process) -> int:
    if isinstance(process, Prefix):
        return 1 + process_size(process.cont)
    if isinstance(process, Rec):
        return 1 + process_size(process.body)
    if isinstance(process, Choice):
        return 1 + process_size(process.left) + process_size(process.right)
    return 1


def _atomic(process: Process) -> str:
    text = format_process(process)
    if isinstance(process, (Choice, Rec)):
        return f"({text})"
    return text


def format_process(process: Process) -> str:
    if isinstance(process, End):
        return "end"
    if isinstance(process, Var):
        return process.name
    if isinstance(process, Prefix):
        return f"{process.kind}({format_tuple(process.params)}).{_atomic(process.cont)}"
    if isinstance(process, Rec):
        return f"rec {process.name} . {format_process(process.body)}"
    if isinstance(process, Choice):
        left = _atomic(process.left) if isinstance(process.left, Rec) else format_process(process.left)
        return f"{left} [] {_atomic(process.right)}"
    raise TypeError(f"Unknown process {process!r}")


def _multiset(items, key) -> tuple:
    return tuple(sorted(items, key=key))


def _process_key(process):
    return format_process(process)


@dataclass(frozen=True)
class TupleSpaceTerm:
    """P₁ ⊕ ⋯ ⊕ Pₙ ⊕ t₁ ⊕ ⋯ ⊕ tₘ, kept as sorted multisets so equal terms compare equal."""

    processes: Tuple[Process, ...] = ()
    tuples: Tuple[LTuple, ...] = field(default=())

    def __post_init__(self):
        tuples = tuple(tuple(t) for t in self.tuples)
        for t in tuples:
            if not is_ground(t):
                raise NonGroundTuple(f"Tuple <{format_tuple(t)}> has formal parameters")
        object.__setattr__(self, "processes", _multiset(self.processes, _process_key))
        object.__setattr__(self, "tuples", _multiset(tuples, tuple_key))

    def replace(self, index: int, new: Iterable[Process] = (), add: Iterable[LTuple] = (),
                remove: Iterable[LTuple] = ()) -> "TupleSpaceTerm":
        processes = list(self.processes[:index]) + list(new) + list(self.processes[index + 1:])
        tuples = Counter(self.tuples)
        for t in remove:
            tuples[t] -= 1
        tuples.update(add)
        return TupleSpaceTerm(tuple(processes), tuple(tuples.elements()))

    def domain(self) -> list:
        values = set()
        for process in self.processes:
            values |= actuals(process)
        for t in self.tuples:
            values |= set(t)
        return sorted(values, key=value_key)

    def __str__(self):
        parts = [format_process(p) for p in self.processes] + [f"<{format_tuple(t)}>" for t in self.tuples]
        return " ⊕ ".join(parts) or "∅"


def tuple_counts(tuples: Iterable[LTuple]) -> Dict[LTuple, int]:
    return dict(Counter(tuple(t) for t in tuples))
