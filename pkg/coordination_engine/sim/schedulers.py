"""Round selection policies and the run loop."""
import logging
import random
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

from .engine import enabled_rounds
from .network import Network, RoundResult, apply_round

logger = logging.getLogger(__name__)


class Scheduler:
    """Picks one round out of a non-empty list sorted canonically."""

    policy = "abstract"

    def choose(self, rounds: Sequence[RoundResult], rng: random.Random) -> RoundResult:
        raise NotImplementedError


class RandomScheduler(Scheduler):
    policy = "random"

    def choose(self, rounds, rng):
        return rounds[rng.randrange(len(rounds))]


class LexScheduler(Scheduler):
    policy = "lex"

    def choose(self, rounds, rng):
        return rounds[0]


class MaximalScheduler(Scheduler):
    """Most participants first, lexicographic among those."""

    policy = "maximal"

    def choose(self, rounds, rng):
        most = max(len(r.participants) for r in rounds)
        return next(r for r in rounds if len(r.participants) == most)


SCHEDULERS = {cls.policy: cls for cls in (RandomScheduler, LexScheduler, MaximalScheduler)}


def make_scheduler(policy: str) -> Scheduler:
    try:
        return SCHEDULERS[policy]()
    except KeyError:
        raise ValueError(f"Unknown policy {policy!r}; expected one of {', '.join(SCHEDULERS)}") from None


@dataclass
class TraceStep:
    index: int
    round: RoundResult
    states: tuple


@dataclass
class Trace:
    network: str
    policy: str
    seed: int
    initial: tuple
    steps: List[TraceStep] = field(default_factory=list)
    deadlock: bool = False

    @property
    def final(self) -> tuple:
        return self.steps[-1].states if self.steps else self.initial

    def __len__(self):
        return len(self.steps)


def run(net: Network, rounds: int, policy: str = "lex", seed: int = 0, states: Optional[Sequence] = None,
        include_idle: bool = False, on_round: Optional[Callable[[TraceStep], None]] = None) -> Trace:
    """Fire up to ``rounds`` rounds chosen by ``policy``.

    The run stops early, flagging a deadlock, when no non-idle round is enabled.
    The same network, policy, seed and start states always give the same trace.
    """
    if rounds < 0:
        raise ValueError("rounds must be >= 0")
    scheduler = make_scheduler(policy)
    rng = random.Random(seed)
    current = tuple(states) if states is not None else net.initial
    trace = Trace(net.name, policy, seed, current)

    for index in range(1, rounds + 1):
        candidates = enabled_rounds(net, current, include_idle=include_idle)
        if not any(not r.is_idle for r in candidates):
            logger.warning(f"{net.name} deadlocked after {index - 1} rounds in {net.state_names(current)}")
            trace.deadlock = True
            break
        chosen = scheduler.choose(candidates, rng)
        current = tuple(apply_round(current, chosen))
        step = TraceStep(index, chosen, current)
        trace.steps.append(step)
        logger.debug(f"Round {index}: {chosen.label} by {net.names(chosen.participants)}")
        if on_round:
            on_round(step)
    return trace
