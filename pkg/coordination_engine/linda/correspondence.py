"""Bounded comparison of interpreter traces with traces of the encoded automaton."""
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import FrozenSet, Optional, Sequence, Set, Tuple

from .algebra import TAU_PREFIX
from .encoding import encode_term
from .interpreter import interp_step
from .syntax import TupleSpaceTerm, format_tuple

logger = logging.getLogger(__name__)

Trace = Tuple[str, ...]


@dataclass
class CorrespondenceReport:
    depth: int
    matched: Set[Trace] = field(default_factory=set)
    missing: Set[Trace] = field(default_factory=set)
    extra: Set[Trace] = field(default_factory=set)

    @property
    def ok(self) -> bool:
        return not self.missing and not self.extra

    @property
    def maximal(self) -> Set[Trace]:
        """Matched traces that are not a proper prefix of another matched trace."""
        prefixes = {trace[:i] for trace in self.matched for i in range(len(trace))}
        return {trace for trace in self.matched if trace and trace not in prefixes}

    def to_dict(self) -> dict:
        def listed(traces):
            return [list(trace) for trace in sorted(traces)]

        return {
            "depth": self.depth,
            "ok": self.ok,
            "matched": len(self.matched),
            "maximal": listed(self.maximal),
            "missing": listed(self.missing),
            "extra": listed(self.extra),
        }


def _silent_closure(term: TupleSpaceTerm) -> FrozenSet[TupleSpaceTerm]:
    seen = {term}
    queue = deque([term])
    while queue:
        current = queue.popleft()
        for reduction in interp_step(current):
            if not reduction.observable and reduction.successor not in seen:
                seen.add(reduction.successor)
                queue.append(reduction.successor)
    return frozenset(seen)


def interpreter_traces(term: TupleSpaceTerm, depth: int) -> Set[Trace]:
    """Prefix-closed observable traces of length at most ``depth``; end/left/right/rec are absorbed."""
    traces = {()}
    frontier = {((), term)}
    for _ in range(depth):
        following = set()
        for trace, current in frontier:
            for state in _silent_closure(current):
                for reduction in interp_step(state):
                    if reduction.observable:
                        following.add((trace + (reduction.event,), reduction.successor))
        traces |= {trace for trace, _ in following}
        frontier = following
    return traces


def _event(label) -> Optional[str]:
    (action,) = label.actions
    if not action.name.startswith(TAU_PREFIX):
        return None
    return f"{action.name[len(TAU_PREFIX):]}({format_tuple(action.params)})"


def automaton_traces(term: TupleSpaceTerm, depth: int, domain: Optional[Sequence] = None) -> Set[Trace]:
    """Prefix-closed τ traces of ⟦term⟧ of length at most ``depth``."""
    automaton = encode_term(term, domain=domain)
    traces = {()}
    frontier = {((), state) for state in automaton.initial}
    for _ in range(depth):
        following = set()
        for trace, state in frontier:
            for transition in automaton.enabled(state):
                event = _event(transition.label)
                if event is None:
                    logger.warning(f"Raw Linda label {transition.label} fired in the product")
                    continue
                following.add((trace + (event,), transition.target))
        traces |= {trace for trace, _ in following}
        frontier = following
    return traces


def trace_correspondence(term: TupleSpaceTerm, depth: int = 4, domain: Optional[Sequence] = None) -> CorrespondenceReport:
    """Compare interpreter and automaton traces up to ``depth`` observable steps."""
    left = interpreter_traces(term, depth)
    right = automaton_traces(term, depth, domain)
    report = CorrespondenceReport(depth, left & right, left - right, right - left)
    logger.debug(f"Trace correspondence at depth {depth}: {len(report.matched)} matched, "
                 f"{len(report.missing)} missing, {len(report.extra)} extra")
    return report
