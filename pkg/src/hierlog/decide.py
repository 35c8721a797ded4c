"""Decision services for the indexed propositional logics.

A propositional judgment is decided by translating it with the box
translation and running the sequent searcher of the modal counterpart:
BPCh pairs with K4h, EBPCh with KD4h, IPCh with S4h. FPLh has no sequent
calculus here; its counterpart GLh is reachable only through the
experimental flag and is excluded from any correctness claim (see
GLH_NOTE). CPCh has no decision procedure at all; its proofs can still be
kernel-checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .formulas import Formula, Or, validate_prop
from .search import DEFAULT_BUDGET, Decision, decide_modal
from .translate import godel_b

COUNTERPART = {"BPCh": "K4h", "EBPCh": "KD4h", "IPCh": "S4h"}
EXPERIMENTAL_COUNTERPART = {"FPLh": "GLh"}

GLH_NOTE = (
    "the GLh search rule is a plausible index-decorated guess, is not part "
    "of the published calculi, and provably misses some GLh theorems; "
    "results are advisory only"
)


class PropertyViolation(AssertionError):
    """A provable disjunction with neither disjunct provable: engine bug."""


def decide_prop(system: str, gamma: list, a: Formula,
                budget: int = DEFAULT_BUDGET,
                experimental_glh: bool = False) -> Decision:
    """Decide ``gamma |- a`` in BPCh, EBPCh, or IPCh via the box translation."""
    if system in COUNTERPART:
        modal = COUNTERPART[system]
    elif system in EXPERIMENTAL_COUNTERPART and experimental_glh:
        modal = EXPERIMENTAL_COUNTERPART[system]
    elif system in EXPERIMENTAL_COUNTERPART:
        raise ValueError(
            f"{system} is check-only; pass experimental_glh=True to search "
            f"anyway ({GLH_NOTE})"
        )
    else:
        raise ValueError(f"no decision procedure for system {system!r}")
    validate_prop(a)
    for g in gamma:
        validate_prop(g)
    return decide_modal(modal, [godel_b(g) for g in gamma], godel_b(a), budget)


@dataclass(frozen=True)
class SplitResult:
    verdict: str  # "left" | "right" | "not-a-theorem" | "inconclusive"
    disjunction: Optional[Decision]
    left: Optional[Decision] = None
    right: Optional[Decision] = None


def split_disjunction(system: str, a: Formula, b: Formula,
                      budget: int = DEFAULT_BUDGET) -> SplitResult:
    """Locate a provable disjunct of ``a | b``, trying the left side first."""
    validate_prop(Or(a, b))
    disj = decide_prop(system, [], Or(a, b), budget)
    if disj.provable is None:
        return SplitResult("inconclusive", disj)
    if disj.provable is False:
        return SplitResult("not-a-theorem", disj)
    left = decide_prop(system, [], a, budget)
    if left.provable is True:
        return SplitResult("left", disj, left=left)
    right = decide_prop(system, [], b, budget)
    if right.provable is True:
        return SplitResult("right", disj, left=left, right=right)
    if left.provable is None or right.provable is None:
        return SplitResult("inconclusive", disj, left=left, right=right)
    raise PropertyViolation(
        f"{system} proves the disjunction but neither disjunct: "
        f"'{a}' | '{b}'"
    )
