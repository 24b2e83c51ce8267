"""Network specifications: JSON input for the command-line tools and the server.

A spec lists Reo primitives, context-dependent primitives and boundary
components plugged together by port name, or a Linda term. Example::

    {
      "domain": [0, 1],
      "reo": [{"kind": "LossyFIFO", "name": "LF", "ports": ["a'", "a"]},
              {"kind": "Alternator", "name": "AC", "ports": ["a", "b", "c"]}],
      "components": [{"kind": "Writer", "ports": ["a'"]},
                     {"kind": "Writer", "ports": ["b"]},
                     {"kind": "Reader", "ports": ["c"]}]
    }
"""
import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from ..core.automaton import ExplicitAutomaton
from ..core.serialization import predicate_from_json
from ..errors import ParseError, WiringError
from ..linda.encoding import encode_process, encode_tuplespace
from ..linda.parser import parse_process, parse_tuple
from ..linda.syntax import Process, TupleSpaceTerm, check_closed
from ..reo.context import CONTEXT_KINDS
from ..reo.primitives import CHANNEL_KINDS, component
from ..sim.network import Network

logger = logging.getLogger(__name__)

REO_KINDS = tuple(k for k in CHANNEL_KINDS if k not in ("Writer", "Reader")) + ("LossyFIFO", "Alternator")
COMPONENT_KINDS = ("Writer", "Reader")


@dataclass
class PrimitiveSpec:
    kind: str
    name: str
    ports: Tuple[str, ...]
    values: Optional[list] = None
    predicate: Optional[dict] = None


@dataclass
class LindaSpec:
    processes: List[Tuple[str, Process]]
    tuples: List[tuple] = field(default_factory=list)
    priority: Optional[List[str]] = None

    @property
    def ids(self) -> List[str]:
        return [pid for pid, _ in self.processes]

    def term(self) -> TupleSpaceTerm:
        return TupleSpaceTerm(tuple(p for _, p in self.processes), tuple(self.tuples))


@dataclass
class NetworkSpec:
    domain: list = field(default_factory=lambda: [0, 1])
    reo: List[PrimitiveSpec] = field(default_factory=list)
    context_reo: List[PrimitiveSpec] = field(default_factory=list)
    components: List[PrimitiveSpec] = field(default_factory=list)
    linda: Optional[LindaSpec] = None
    name: str = "network"
    # False when the file left the domain to the caller
    domain_declared: bool = False

    def primitives(self) -> List[PrimitiveSpec]:
        return self.reo + self.context_reo + self.components

    @property
    def is_empty(self) -> bool:
        return not self.primitives() and self.linda is None


def _require(condition, message, field_name):
    if not condition:
        raise ParseError(message, field_name)


def _parse_primitives(entries, section: str, kinds: Sequence[str], counter: Counter) -> List[PrimitiveSpec]:
    _require(isinstance(entries, list), "must be a list", section)
    result = []
    for index, entry in enumerate(entries):
        where = f"{section}[{index}]"
        _require(isinstance(entry, dict), "must be an object", where)
        kind = entry.get("kind")
        _require(kind in kinds, f"unknown kind {kind!r}; expected one of {', '.join(kinds)}", f"{where}.kind")
        ports = entry.get("ports")
        _require(isinstance(ports, list) and all(isinstance(p, str) for p in ports),
                 "must be a list of port names", f"{where}.ports")
        counter[kind] += 1
        name = entry.get("name") or f"{kind}{counter[kind]}"
        values = entry.get("values")
        _require(values is None or isinstance(values, list), "must be a list", f"{where}.values")
        predicate = entry.get("predicate")
        _require(predicate is None or isinstance(predicate, dict), "must be an object", f"{where}.predicate")
        result.append(PrimitiveSpec(kind, str(name), tuple(ports), values, predicate))
    return result


def _parse_linda(data) -> LindaSpec:
    _require(isinstance(data, dict), "must be an object", "linda")
    entries = data.get("processes", [])
    _require(isinstance(entries, list), "must be a list", "linda.processes")
    processes = []
    for index, entry in enumerate(entries):
        where = f"linda.processes[{index}]"
        _require(isinstance(entry, dict) and isinstance(entry.get("source"), str),
                 "must be an object with a source string", where)
        pid = str(entry.get("id") or f"p{index + 1}")
        process = parse_process(entry["source"], f"{where}.source")
        try:
            check_closed(process)
        except ValueError as e:
            raise ParseError(str(e), f"{where}.source")
        processes.append((pid, process))
    ids = [pid for pid, _ in processes]
    duplicates = sorted(pid for pid, count in Counter(ids).items() if count > 1)
    _require(not duplicates, f"duplicate process ids {duplicates}", "linda.processes")

    raw_tuples = data.get("tuples", [])
    _require(isinstance(raw_tuples, list), "must be a list", "linda.tuples")
    tuples = [parse_tuple(t, f"linda.tuples[{i}]") for i, t in enumerate(raw_tuples)]

    priority = data.get("priority")
    if priority is not None:
        _require(isinstance(priority, list), "must be a list of process ids", "linda.priority")
        unknown = sorted(set(map(str, priority)) - set(ids))
        _require(not unknown, f"unknown process ids {unknown}", "linda.priority")
        priority = [str(pid) for pid in priority]
    return LindaSpec(processes, tuples, priority)


def check_wiring(primitives: Sequence[PrimitiveSpec]):
    """Every port joins at most two primitive ends.

    Raises:
        WiringError: a port is used by three or more ends.
    """
    counts = Counter(port for primitive in primitives for port in primitive.ports)
    for port, count in sorted(counts.items()):
        if count > 2:
            raise WiringError(port, count)


def spec_from_dict(data: dict, name: str = "network") -> NetworkSpec:
    """Validate a decoded spec.

    Raises:
        ParseError: a field is missing or malformed.
        WiringError: a port joins more than two ends.
    """
    _require(isinstance(data, dict), "a network spec must be a JSON object", None)
    domain = data.get("domain", [0, 1])
    _require(isinstance(domain, list) and domain, "must be a nonempty list", "domain")
    counter = Counter()
    spec = NetworkSpec(
        domain=domain,
        reo=_parse_primitives(data.get("reo", []), "reo", REO_KINDS, counter),
        context_reo=_parse_primitives(data.get("context_reo", []), "context_reo", tuple(CONTEXT_KINDS), counter),
        components=_parse_primitives(data.get("components", []), "components", COMPONENT_KINDS, counter),
        name=str(data.get("name", name)),
        domain_declared="domain" in data,
    )
    if data.get("linda") is not None:
        _require(not spec.primitives(), "Reo and Linda parts cannot be mixed in one network", "linda")
        spec.linda = _parse_linda(data["linda"])

    names = Counter(p.name for p in spec.primitives())
    duplicates = sorted(n for n, count in names.items() if count > 1)
    _require(not duplicates, f"duplicate names {duplicates}", "name")
    check_wiring(spec.primitives())
    return spec


def parse_spec(text: str, name: str = "network") -> NetworkSpec:
    """Parse a JSON network spec; ParseError reports the offending line or field."""
    try:
        data = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno)
    return spec_from_dict(data, name)


def _build_primitive(primitive: PrimitiveSpec, domain, context: bool = False):
    if context:
        automaton = CONTEXT_KINDS[primitive.kind](list(primitive.ports), domain, primitive.name)
    else:
        automaton = component(primitive.kind, primitive.ports, domain, primitive.values, primitive.name)
    if primitive.predicate is None:
        return automaton
    # Custom predicates replace the primitive's own for every state
    return ExplicitAutomaton(automaton.ports, automaton.initial, automaton.transitions,
                             predicate_from_json(primitive.predicate), automaton.algebra, automaton.name,
                             states=automaton.states)


def build_automata(spec: NetworkSpec, domain: Optional[Sequence] = None) -> list:
    """Behavioural automata of every part of ``spec``, in spec order."""
    domain = list(domain) if domain is not None else spec.domain
    if spec.linda is not None:
        term = spec.linda.term()
        values = term.domain()
        automata = [encode_process(process, pid, spec.linda.priority, values)
                    for pid, process in spec.linda.processes]
        automata.append(encode_tuplespace(spec.linda.tuples))
        return automata
    automata = [_build_primitive(p, domain) for p in spec.reo]
    automata += [_build_primitive(p, domain, context=True) for p in spec.context_reo]
    automata += [_build_primitive(p, domain) for p in spec.components]
    return automata


def build_network(spec: NetworkSpec, domain: Optional[Sequence] = None, certify: bool = True,
                  logger=None) -> Network:
    automata = build_automata(spec, domain)
    return Network(automata, spec.name, list(domain) if domain is not None else spec.domain, certify,
                   logger=logger)
