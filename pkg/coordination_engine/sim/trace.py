"""Newline-delimited JSON trace records."""
import json
from typing import IO, Iterator

from ..core.serialization import label_to_json
from .network import Network
from .schedulers import Trace, TraceStep


def header_record(net: Network, trace: Trace, rounds: int) -> dict:
    return {
        "network": net.name,
        "automata": [automaton.name for automaton in net.automata],
        "policy": trace.policy,
        "seed": trace.seed,
        "rounds": rounds,
        "initial": net.state_names(trace.initial),
    }


def round_record(net: Network, step: TraceStep) -> dict:
    return {
        "round": step.index,
        "participants": net.names(step.round.participants),
        "label": label_to_json(step.round.label),
        "states": net.state_names(step.states),
        "consulted": net.names(step.round.consulted),
    }


def trace_records(net: Network, trace: Trace, rounds: int) -> Iterator[dict]:
    yield header_record(net, trace, rounds)
    for step in trace.steps:
        yield round_record(net, step)
    if trace.deadlock:
        yield {"deadlock": True, "round": len(trace.steps) + 1, "states": net.state_names(trace.final)}


def write_trace(net: Network, trace: Trace, rounds: int, stream: IO[str]):
    for record in trace_records(net, trace, rounds):
        stream.write(json.dumps(record, sort_keys=True) + "\n")
