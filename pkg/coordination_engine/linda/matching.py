"""Tuple matching and ground-tuple enumeration."""
from itertools import product
from typing import Dict, Iterator, Optional, Sequence

from .syntax import Formal, LTuple, formals, is_ground, substitute_tuple


def match(s: LTuple, t: LTuple) -> Optional[Dict[str, object]]:
    """γ with t = s[γ], or None.

    ``t`` must be ground and as long as ``s``; actuals must agree position by
    position and a formal repeated in ``s`` must bind the same value each time.
    """
    if len(s) != len(t) or not is_ground(t):
        return None
    gamma = {}
    for pattern, value in zip(s, t):
        if isinstance(pattern, Formal):
            if pattern.name in gamma and gamma[pattern.name] != value:
                return None
            gamma[pattern.name] = value
        elif pattern != value:
            return None
    return gamma


def ground_instances(s: LTuple, domain: Sequence) -> Iterator[LTuple]:
    """Every ground tuple over ``domain`` that matches ``s``."""
    names = sorted(formals(s))
    for values in product(domain, repeat=len(names)):
        yield substitute_tuple(s, dict(zip(names, values)))
