"""Linda labels: process actions, their tuple-space duals and the τ actions that join them.

All Linda automata range over the global port set. A raw action ``a`` (or its
dual) has flow on its own port and on τ of the underlying action; τ_a has flow
on the τ port only. Data travels in the port names, so inputs, outputs and data
maps are empty.
"""
from typing import Optional

from ..core.labels import Action, Label, LabelAlgebra
from ..core.ports import ALL_PORTS
from ..core.steps import AtomicStep
from .syntax import LTuple, format_tuple

DUAL_PREFIX = "dual_"
TAU_PREFIX = "tau_"


def action_port(kind: str, params: LTuple) -> str:
    return f"{kind}({format_tuple(params)})"


def linda_label(kind: str, params: LTuple, tag: Optional[str] = None) -> Label:
    """Label for ``out``/``rd``/``in``, ``dual_*`` or ``tau_*`` on a ground tuple."""
    params = tuple(params)
    base = kind.split("_", 1)[1] if "_" in kind else kind
    if kind.startswith(TAU_PREFIX):
        flow = {action_port(kind, params)}
    else:
        flow = {action_port(kind, params), action_port(TAU_PREFIX + base, params)}
    return Label((Action(kind, params),), AtomicStep(ALL_PORTS, flow), tag=tag)


def dual_kind(kind: str) -> str:
    if kind.startswith(DUAL_PREFIX):
        return kind[len(DUAL_PREFIX):]
    return DUAL_PREFIX + kind


class LindaAlgebra(LabelAlgebra):
    """a · ā = τ_a, tagged with the process side; every other composite is ⊥."""

    name = "linda"

    def _compose(self, l1: Label, l2: Label) -> Optional[Label]:
        if len(l1.actions) != 1 or len(l2.actions) != 1:
            return None
        (a1,), (a2,) = l1.actions, l2.actions
        if a1.name.startswith(TAU_PREFIX) or a2.name.startswith(TAU_PREFIX):
            return None
        if a1.params != a2.params or dual_kind(a1.name) != a2.name:
            return None
        process_side = l1 if not a1.name.startswith(DUAL_PREFIX) else l2
        base = process_side.actions[0].name
        return linda_label(TAU_PREFIX + base, a1.params, tag=process_side.tag)


LINDA_ALGEBRA = LindaAlgebra()


def compose_linda(l1: Label, l2: Label) -> Optional[Label]:
    """ℓ₁·ℓ₂ in the Linda algebra; None for ⊥."""
    return LINDA_ALGEBRA.compose(l1, l2)
