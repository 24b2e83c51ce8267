"""Commands shared by the command-line tool and the HTTP server.

Each command takes a parsed NetworkSpec and returns plain JSON-ready data.
"""
import logging
from itertools import combinations
from typing import Optional, Sequence

from ..core.automaton import ExplicitAutomaton
from ..core.bisimulation import bisimilar
from ..core.locality import locality_violations
from ..core.product import product, product_all
from ..core.ports import disjoint
from ..core.reachability import reachable
from ..core.serialization import automaton_to_dot, graph_to_dot, graph_to_json
from ..errors import BoundExceeded, SharedPorts
from ..linda.correspondence import trace_correspondence
from ..reo.automata import ca_product_oracle, encode_ca
from ..reo.primitives import CHANNEL_KINDS, primitive
from ..sim.engine import explore
from ..sim.network import WITNESS_PORTS
from ..sim.schedulers import run
from ..sim.trace import trace_records
from .spec import NetworkSpec, build_automata, build_network

logger = logging.getLogger(__name__)

DEFAULT_BOUND = 1000


def compose_automaton(spec: NetworkSpec, domain: Optional[Sequence] = None):
    """The flattened product of every automaton in ``spec``."""
    automata = build_automata(spec, domain)
    if not automata:
        return ExplicitAutomaton(frozenset(), [()], [], name=spec.name)
    return product_all(automata, name=spec.name)


def _export(automaton, bound: int, fmt: str):
    graph = reachable(automaton, bound)
    if fmt == "dot":
        return graph, "".join(graph_to_dot(automaton, graph))
    result = graph_to_json(automaton, graph)
    if graph.truncated:
        result["truncated"] = True
    return graph, result


def _export_parts(spec: NetworkSpec, domain, bound: int, fmt: str):
    exports = [(automaton.name, *_export(automaton, bound, fmt)) for automaton in build_automata(spec, domain)]
    truncated = any(graph.truncated for _, graph, _ in exports)
    if fmt == "dot":
        return truncated, "".join(text for _, _, text in exports)
    result = {"name": spec.name, "automata": [{"name": name, **data} for name, _, data in exports]}
    if truncated:
        result["truncated"] = True
    return truncated, result


def cmd_compose(spec: NetworkSpec, domain: Optional[Sequence] = None, bound: int = DEFAULT_BOUND,
                fmt: str = "json", strict: bool = False, flatten: bool = True):
    """Export the flattened product reachable within ``bound`` states.

    With ``flatten=False`` every automaton of the network is exported on its
    own instead (one DOT graph each, or a JSON ``automata`` list).

    Raises:
        BoundExceeded: ``strict`` is set and the exploration was truncated; the
            partial export is attached as ``partial``.
    """
    if flatten:
        graph, result = _export(compose_automaton(spec, domain), bound, fmt)
        truncated = graph.truncated
        logger.info(f"Composed {spec.name}: {graph.number_of_states()} states, "
                    f"{graph.number_of_transitions()} transitions")
    else:
        truncated, result = _export_parts(spec, domain, bound, fmt)
        logger.info(f"Exported the automata of {spec.name} one by one")
    if truncated and strict:
        error = BoundExceeded(f"{spec.name} has more than {bound} reachable states")
        error.partial = result
        raise error
    return result


def cmd_export_dot(spec: NetworkSpec, domain: Optional[Sequence] = None, bound: int = DEFAULT_BOUND) -> str:
    return automaton_to_dot(compose_automaton(spec, domain), bound)


def cmd_explore(spec: NetworkSpec, domain: Optional[Sequence] = None, bound: int = DEFAULT_BOUND) -> dict:
    """Explore the network round by round."""
    net = build_network(spec, domain)
    graph = explore(net, bound)
    return {
        "states": graph.number_of_states(),
        "transitions": graph.number_of_transitions(),
        "truncated": graph.truncated,
        "certified": dict(zip((a.name for a in net.automata), net.certified)),
    }


def cmd_run(spec: NetworkSpec, domain: Optional[Sequence] = None, rounds: int = 10, seed: int = 0,
            policy: str = "lex") -> list:
    """Simulate and return the trace records, header first."""
    net = build_network(spec, domain)
    trace = run(net, rounds, policy, seed)
    return list(trace_records(net, trace, rounds))


def _locality_report(automata, domain, bound) -> list:
    report = []
    for automaton in automata:
        entry = {"automaton": automaton.name}
        try:
            violations = locality_violations(automaton, WITNESS_PORTS, domain, bound)
        except SharedPorts:
            entry.update(ok=True, skipped="shares every port")
        else:
            entry.update(ok=not violations, violations=violations)
        report.append(entry)
    return report


def _ca_pairs_report(spec: NetworkSpec, domain, bound) -> list:
    cas = [(p.name, primitive(p.kind, p.ports, domain, p.values, p.name))
           for p in spec.reo if p.kind in CHANNEL_KINDS]
    report = []
    for (left_name, left), (right_name, right) in combinations(cas, 2):
        if disjoint(left.ports, right.ports):
            continue
        oracle = encode_ca(ca_product_oracle(left, right), domain)
        composed = product(encode_ca(left, domain), encode_ca(right, domain))
        ok = bisimilar(oracle, composed, bound=bound)
        if not ok:
            logger.warning(f"CA product of {left_name} and {right_name} differs from the encoded product")
        report.append({"left": left_name, "right": right_name, "ok": ok})
    return report


def cmd_check(spec: NetworkSpec, domain: Optional[Sequence] = None, depth: int = 4,
              bound: int = DEFAULT_BOUND) -> dict:
    """Run the checks that apply to ``spec``; ``ok`` is False if any fails."""
    domain = list(domain) if domain is not None else spec.domain
    report = {"network": spec.name}
    automata = build_automata(spec, domain)
    report["locality"] = _locality_report(automata, domain, bound)
    report["ca_pairs"] = _ca_pairs_report(spec, domain, bound)
    if spec.linda is not None:
        report["linda"] = trace_correspondence(spec.linda.term(), depth).to_dict()

    failures = [entry["automaton"] for entry in report["locality"] if not entry["ok"]]
    failures += [f"{entry['left']}⋈{entry['right']}" for entry in report["ca_pairs"] if not entry["ok"]]
    if "linda" in report and not report["linda"]["ok"]:
        failures.append("linda")
    report["failures"] = failures
    report["ok"] = not failures
    return report
