from .constraints import (TRUE, CasLabel, DataConstraint, Eq, Not, Or, TT, conj, dc_satisfies, disj,
                          enumerate_solutions, eq_ports, ff, neq)
from .automata import CATransition, ConstraintAutomaton, ca_product_oracle, cas_label, compose_cas, encode_ca
from .primitives import component, primitive, reader
from .context import context_fifo, make_context_lossy

__all__ = [
    "TRUE", "CasLabel", "DataConstraint", "Eq", "Not", "Or", "TT", "conj", "dc_satisfies", "disj",
    "enumerate_solutions", "eq_ports", "ff", "neq",
    "CATransition", "ConstraintAutomaton", "ca_product_oracle", "cas_label", "compose_cas", "encode_ca",
    "component", "primitive", "reader", "context_fifo", "make_context_lossy",
]
