"""JSON and DOT export of finite automaton fragments, and JSON import."""
import json
from typing import Iterator, Optional

from ..errors import ParseError
from .automaton import BehaviouralAutomaton, ExplicitAutomaton, Transition, state_name
from .labels import IDENTITY_HEAD, STEP_ALGEBRA, Action, Label, LabelAlgebra
from .ports import ALL_PORTS, sorted_ports
from .predicates import (NEVER, ConcurrencyPredicate, Ctx, Excl, LindaBase, LindaPriority, Never, Union)
from .reachability import StateGraph, reachable
from .steps import AtomicStep


def _ports_to_json(ports):
    return sorted_ports(ports)


def _ports_from_json(ports):
    if ports == ["*"] or ports == "*":
        return ALL_PORTS
    return frozenset(ports)


def predicate_to_json(cp: ConcurrencyPredicate) -> dict:
    if isinstance(cp, Excl):
        return {"kind": "excl", "known": _ports_to_json(cp.known)}
    if isinstance(cp, Ctx):
        return {"kind": "ctx", "known": _ports_to_json(cp.known), "required": _ports_to_json(cp.required)}
    if isinstance(cp, LindaBase):
        return {"kind": "linda"}
    if isinstance(cp, LindaPriority):
        return {"kind": "linda_priority", "process": cp.process, "ended": cp.ended, "order": list(cp.order)}
    if isinstance(cp, Union):
        return {"kind": "union", "left": predicate_to_json(cp.left), "right": predicate_to_json(cp.right)}
    if isinstance(cp, Never):
        return {"kind": "never"}
    raise TypeError(f"Cannot serialise predicate {cp!r}")


def predicate_from_json(data: dict) -> ConcurrencyPredicate:
    if not isinstance(data, dict) or "kind" not in data:
        raise ParseError(f"Predicate must be an object with a kind, got {data!r}", field="cp")
    kind = data["kind"]
    try:
        if kind == "excl":
            return Excl(_ports_from_json(data["known"]))
        if kind == "ctx":
            return Ctx(_ports_from_json(data["known"]), _ports_from_json(data.get("required", [])))
        if kind == "linda":
            return LindaBase()
        if kind == "linda_priority":
            return LindaPriority(data["process"], bool(data.get("ended", False)), tuple(data.get("order", ())))
        if kind == "union":
            return Union(predicate_from_json(data["left"]), predicate_from_json(data["right"]))
        if kind == "never":
            return NEVER
    except KeyError as e:
        raise ParseError(f"Predicate of kind {kind!r} is missing {e}", field="cp")
    raise ParseError(f"Unknown predicate kind {kind!r}", field="cp")


def label_to_json(label: Label) -> dict:
    return {
        "head": label.head,
        "flow": sorted(label.step.flow),
        "inputs": sorted(label.step.inputs),
        "outputs": sorted(label.step.outputs),
        "data": {port: value for port, value in label.step.data},
        "noflow": sorted(label.noflow),
        "tag": label.tag,
    }


def parse_head(head: str) -> tuple:
    if head == IDENTITY_HEAD:
        return ()
    return tuple(Action.parse(part) for part in head.split("·"))


def label_from_json(data: dict, scope) -> Label:
    try:
        step = AtomicStep(scope, data.get("flow", ()), data.get("inputs", ()), data.get("outputs", ()),
                          data.get("data", {}))
        return Label(parse_head(data["head"]), step, frozenset(data.get("noflow", ())), data.get("tag"))
    except KeyError as e:
        raise ParseError(f"Label is missing {e}", field="label")
    except ValueError as e:
        raise ParseError(str(e), field="label")


def graph_to_json(b: BehaviouralAutomaton, graph: StateGraph) -> dict:
    """Export an explored fragment of ``b``; states and transitions in canonical order."""
    states = sorted(graph.states(), key=state_name)
    transitions = sorted(
        graph.transitions(),
        key=lambda t: (state_name(t.source), json.dumps(label_to_json(t.label), sort_keys=True, default=str),
                       state_name(t.target)),
    )
    return {
        "ports": _ports_to_json(b.ports),
        "states": [{"id": b.state_name(state), "cp": predicate_to_json(b.cp(state))} for state in states],
        "transitions": [
            {"src": b.state_name(t.source), "label": label_to_json(t.label), "dst": b.state_name(t.target)}
            for t in transitions
        ],
        "initial": sorted(b.state_name(state) for state in graph.initial),
    }


def automaton_to_json(b: BehaviouralAutomaton, bound: int = 1000) -> dict:
    graph = reachable(b, bound)
    data = graph_to_json(b, graph)
    if graph.truncated:
        data["truncated"] = True
    return data


def automaton_from_json(data: dict, algebra: LabelAlgebra = STEP_ALGEBRA, name: Optional[str] = None) -> ExplicitAutomaton:
    """Rebuild a finite automaton exported by ``automaton_to_json``; states become their names."""
    try:
        ports = _ports_from_json(data["ports"])
        states = [entry["id"] for entry in data["states"]]
        cps = {entry["id"]: predicate_from_json(entry["cp"]) for entry in data["states"]}
        transitions = [
            Transition(entry["src"], label_from_json(entry["label"], ports), entry["dst"])
            for entry in data["transitions"]
        ]
        initial = list(data["initial"])
    except KeyError as e:
        raise ParseError(f"Automaton export is missing {e}")
    return ExplicitAutomaton(ports, initial, transitions, cps, algebra, name=name, states=states)


def _quote(text: str) -> str:
    return '"{}"'.format(text.replace("\\", "\\\\").replace('"', '\\"'))


def edge_label(label: Label) -> str:
    text = label.head
    if label.noflow:
        text += "^" + ",".join(sorted(label.noflow))
    if label.step.data:
        text += " [" + ", ".join(f"{port}={value}" for port, value in label.step.data) + "]"
    if label.tag:
        text += f" @{label.tag}"
    return text


def graph_to_dot(b: BehaviouralAutomaton, graph: StateGraph) -> Iterator[str]:
    """Yield DOT lines; initial states are drawn with a double circle."""
    initial = {b.state_name(state) for state in graph.initial}
    yield "digraph {\n"
    yield "  rankdir=LR;\n"
    for name in sorted(b.state_name(state) for state in graph.states()):
        shape = "doublecircle" if name in initial else "circle"
        yield f"  {_quote(name)} [shape={shape}];\n"
    edges = sorted(
        (b.state_name(t.source), edge_label(t.label), b.state_name(t.target)) for t in graph.transitions()
    )
    for source, text, target in edges:
        yield f"  {_quote(source)} -> {_quote(target)} [label={_quote(text)}];\n"
    yield "}\n"


def automaton_to_dot(b: BehaviouralAutomaton, bound: int = 1000) -> str:
    return "".join(graph_to_dot(b, reachable(b, bound)))
