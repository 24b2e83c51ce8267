"""Small-step interpreter for the Linda calculus.

Reductions follow the rules out, rd, in, end, left and right; rec is unfolded
one level and fused with the step of the unfolded body, so a reduction also
records how many rec unfoldings it went through.
"""
import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from .matching import match
from .syntax import (Choice, End, LTuple, Prefix, Process, Rec, TupleSpaceTerm, Var, format_tuple, substitute,
                     unfold)

logger = logging.getLogger(__name__)

OBSERVABLE_RULES = ("out", "rd", "in")
SILENT_RULES = ("end", "left", "right")


@dataclass(frozen=True)
class Reduction:
    rule: str
    successor: TupleSpaceTerm
    tuple: Optional[LTuple] = None
    via: Tuple[str, ...] = ()

    @property
    def observable(self) -> bool:
        return self.rule in OBSERVABLE_RULES

    @property
    def event(self) -> Optional[str]:
        """``out(42,43)`` style name of an observable reduction."""
        if not self.observable:
            return None
        return f"{self.rule}({format_tuple(self.tuple)})"

    def __iter__(self):
        yield self.rule
        yield self.successor


def _moves(process: Process, unfolding: frozenset = frozenset()) -> Iterator[Tuple[Tuple[str, ...], Process]]:
    """Yield (rec path, redex) for every position a rule may apply at."""
    if isinstance(process, Rec):
        if process in unfolding:
            logger.debug(f"Unguarded recursion in {process}")
            return
        body = unfold(process.body, process.name, process)
        for via, redex in _moves(body, unfolding | {process}):
            yield ("rec",) + via, redex
        return
    if isinstance(process, Var):
        return
    yield (), process


def interp_step(term: TupleSpaceTerm) -> List[Reduction]:
    """All one-step successors of ``term``."""
    reductions = []
    for index, process in enumerate(term.processes):
        if index > 0 and process == term.processes[index - 1]:
            continue
        for via, redex in _moves(process):
            reductions.extend(_reduce(term, index, redex, via))
    unique = list(dict.fromkeys(reductions))
    return unique


def _reduce(term: TupleSpaceTerm, index: int, redex: Process, via) -> Iterator[Reduction]:
    if isinstance(redex, End):
        yield Reduction("end", term.replace(index), None, via)
    elif isinstance(redex, Choice):
        yield Reduction("left", term.replace(index, [redex.left]), None, via)
        yield Reduction("right", term.replace(index, [redex.right]), None, via)
    elif isinstance(redex, Prefix):
        if redex.kind == "out":
            yield Reduction("out", term.replace(index, [redex.cont], add=[redex.params]), redex.params, via)
            return
        for t in dict.fromkeys(term.tuples):
            gamma = match(redex.params, t)
            if gamma is None:
                continue
            successor = substitute(redex.cont, gamma)
            removed = [t] if redex.kind == "in" else []
            yield Reduction(redex.kind, term.replace(index, [successor], remove=removed), t, via)
