from .network import IDLE_ROUND, Network, RoundResult, apply_round
from .engine import enabled_rounds, explore, fire_round
from .schedulers import SCHEDULERS, Trace, TraceStep, make_scheduler, run
from .trace import trace_records, write_trace

__all__ = [
    "IDLE_ROUND", "Network", "RoundResult", "apply_round", "enabled_rounds", "explore", "fire_round",
    "SCHEDULERS", "Trace", "TraceStep", "make_scheduler", "run", "trace_records", "write_trace",
]
