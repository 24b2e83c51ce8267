from .ports import ALL_PORTS, port_set
from .steps import AtomicStep, compose_atomic_steps, make_step
from .labels import IDENTITY, STEP_ALGEBRA, Action, Label, LabelAlgebra, StepAlgebra, make_label, restrict
from .predicates import NEVER, Ctx, Excl, LindaBase, LindaPriority, Never, Union, cp_contains
from .automaton import BehaviouralAutomaton, ExplicitAutomaton, Transition
from .product import ProductAutomaton, product, product_all
from .locality import check_locality, is_local_step, locality_violations
from .reachability import StateGraph, reachable
from .bisimulation import bisimilar
from .serialization import automaton_from_json, automaton_to_dot, automaton_to_json

__all__ = [
    "ALL_PORTS", "port_set", "AtomicStep", "compose_atomic_steps", "make_step",
    "IDENTITY", "STEP_ALGEBRA", "Action", "Label", "LabelAlgebra", "StepAlgebra", "make_label", "restrict",
    "NEVER", "Ctx", "Excl", "LindaBase", "LindaPriority", "Never", "Union", "cp_contains",
    "BehaviouralAutomaton", "ExplicitAutomaton", "Transition",
    "ProductAutomaton", "product", "product_all",
    "check_locality", "is_local_step", "locality_violations",
    "StateGraph", "reachable", "bisimilar",
    "automaton_from_json", "automaton_to_dot", "automaton_to_json",
]
