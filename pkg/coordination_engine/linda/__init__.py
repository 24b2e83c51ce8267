from .syntax import END, Choice, End, Formal, Prefix, Process, Rec, TupleSpaceTerm, Var, in_, out, rd, substitute
from .matching import ground_instances, match
from .interpreter import Reduction, interp_step
from .algebra import LINDA_ALGEBRA, LindaAlgebra, compose_linda, linda_label
from .encoding import ProcessAutomaton, TupleSpaceAutomaton, encode_process, encode_term, encode_tuplespace
from .correspondence import CorrespondenceReport, trace_correspondence
from .parser import parse_process, parse_tuple

__all__ = [
    "END", "Choice", "End", "Formal", "Prefix", "Process", "Rec", "TupleSpaceTerm", "Var", "in_", "out", "rd",
    "substitute", "ground_instances", "match", "Reduction", "interp_step",
    "LINDA_ALGEBRA", "LindaAlgebra", "compose_linda", "linda_label",
    "ProcessAutomaton", "TupleSpaceAutomaton", "encode_process", "encode_term", "encode_tuplespace",
    "CorrespondenceReport", "trace_correspondence", "parse_process", "parse_tuple",
]
