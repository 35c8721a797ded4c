"""Cut-free backward proof search over set-based sequents.

The searcher works on sequents whose sides are sets: weakening and
contraction are absorbed. Saturation is cumulative: the classical rules
are invertible in this formulation, so each step keeps its principal
formula, adds the missing components, and a formula whose components are
already present is skipped as redundant. Every saturation step strictly
grows the sequent inside the finite subformula closure, so a phase always
terminates. On a saturated sequent the box rules branch disjunctively
over each candidate principal; a branch fails when it revisits a sequent
already on its own path. A failure that never consulted the path is
cached globally, and every success is cached with its derivation.

Successes are reconstructed in the original multiset calculus, inserting
explicit weakening and contraction, so every emitted proof re-checks under
:func:`hierlog.sequents.check_sequent_proof`.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Optional

from .formulas import (
    And,
    Bot,
    Box,
    Formula,
    Imp,
    Not,
    Or,
    Top,
    validate_modal,
)
from .sequents import (
    CALCULI,
    FOR_SYSTEM,
    Sequent,
    SProof,
    contract,
    fkey,
    sort_ms,
    weaken,
)

DEFAULT_BUDGET = 10 ** 6


@dataclass(frozen=True)
class SearchOutcome:
    status: str  # "provable" | "not-provable" | "budget-exceeded"
    proof: Optional[SProof]
    visited: int
    budget: int


class _BudgetExceeded(Exception):
    pass


class _Searcher:
    def __init__(self, calc: str, budget: int):
        self.calc = calc
        self.budget = budget
        self.visited = 0
        self.memo_true: dict = {}
        self.memo_false: set = set()

    # Returns (proof-or-None, pruned flag). A pruned failure depended on the
    # current path (a loop was cut), so it must not be cached globally.
    def prove(self, ant: frozenset, succ: frozenset, path: frozenset):
        key = (ant, succ)
        if key in self.memo_true:
            return self.memo_true[key], False
        if key in self.memo_false:
            return None, False
        if key in path:
            return None, True
        self.visited += 1
        if self.visited > self.budget:
            raise _BudgetExceeded
        proof, pruned = self._step(ant, succ, path | {key})
        if proof is not None:
            self.memo_true[key] = proof
            return proof, False
        if not pruned:
            self.memo_false.add(key)
        return None, pruned

    def _step(self, ant: frozenset, succ: frozenset, path: frozenset):
        A, S = sort_ms(ant), sort_ms(succ)

        # closure
        shared = ant & succ
        if shared:
            f = min(shared, key=fkey)
            return weaken(SProof("ax", (f,), (f,)), A, S), False
        for f in ant:
            if isinstance(f, Bot):
                return weaken(SProof("ax_bot", (f,), ()), A, S), False
        for f in succ:
            if isinstance(f, Top):
                return weaken(SProof("ax_top", (), (f,)), A, S), False

        # cumulative saturation: first formula with missing components
        for f in A:
            if isinstance(f, And) and not (f.lhs in ant and f.rhs in ant):
                return self._and_l(ant, succ, f, path)
            if isinstance(f, Or) and f.lhs not in ant and f.rhs not in ant:
                return self._or_l(ant, succ, f, path)
            if isinstance(f, Imp) and f.lhs not in succ and f.rhs not in ant:
                return self._imp_l(ant, succ, f, path)
            if isinstance(f, Not) and f.arg not in succ:
                return self._neg_l(ant, succ, f, path)
            if (self.calc == "GS4h" and isinstance(f, Box)
                    and f.arg not in ant):
                return self._box_l(ant, succ, f, path)
        for f in S:
            if isinstance(f, And) and f.lhs not in succ and f.rhs not in succ:
                return self._and_r(ant, succ, f, path)
            if isinstance(f, Or) and not (f.lhs in succ and f.rhs in succ):
                return self._or_r(ant, succ, f, path)
            if isinstance(f, Imp) and not (f.lhs in ant and f.rhs in succ):
                return self._imp_r(ant, succ, f, path)
            if isinstance(f, Not) and f.arg not in ant:
                return self._neg_r(ant, succ, f, path)

        # saturated: box rules, tried disjunctively
        pruned_any = False
        for f in S:
            if isinstance(f, Box):
                proof, pruned = self._box_right(ant, succ, f, path)
                if proof is not None:
                    return proof, False
                pruned_any = pruned_any or pruned
        if self.calc == "GKD4h" and any(isinstance(f, Box) for f in ant):
            proof, pruned = self._box_empty(ant, succ, path)
            if proof is not None:
                return proof, False
            pruned_any = pruned_any or pruned
        return None, pruned_any

    # -- invertible saturation steps -------------------------------------------
    #
    # Reconstruction recipe: weaken the premise derivation up to the full
    # retained context plus fresh copies of the consumed components, apply the
    # multiset rule(s), then contract the surplus principal copies away.

    def _and_l(self, ant, succ, f, path):
        sub, pruned = self.prove(ant | {f.lhs, f.rhs}, succ, path)
        if sub is None:
            return None, pruned
        A, S = sort_ms(ant), sort_ms(succ)
        p = weaken(sub, sort_ms(list(ant) + [f.lhs, f.rhs]), S)
        p = SProof("and_l", sort_ms(list(ant) + [f.rhs, f]), S, (p,),
                   principal=f, which=0)
        p = SProof("and_l", sort_ms(list(ant) + [f, f]), S, (p,),
                   principal=f, which=1)
        return contract(p, A, S), False

    def _or_r(self, ant, succ, f, path):
        sub, pruned = self.prove(ant, succ | {f.lhs, f.rhs}, path)
        if sub is None:
            return None, pruned
        A, S = sort_ms(ant), sort_ms(succ)
        p = weaken(sub, A, sort_ms(list(succ) + [f.lhs, f.rhs]))
        p = SProof("or_r", A, sort_ms(list(succ) + [f.lhs, f]), (p,),
                   principal=f, which=1)
        p = SProof("or_r", A, sort_ms(list(succ) + [f, f]), (p,),
                   principal=f, which=0)
        return contract(p, A, S), False

    def _neg_l(self, ant, succ, f, path):
        sub, pruned = self.prove(ant, succ | {f.arg}, path)
        if sub is None:
            return None, pruned
        A, S = sort_ms(ant), sort_ms(succ)
        p = weaken(sub, A, sort_ms(list(succ) + [f.arg]))
        p = SProof("neg_l", sort_ms(list(ant) + [f]), S, (p,), principal=f)
        return contract(p, A, S), False

    def _neg_r(self, ant, succ, f, path):
        sub, pruned = self.prove(ant | {f.arg}, succ, path)
        if sub is None:
            return None, pruned
        A, S = sort_ms(ant), sort_ms(succ)
        p = weaken(sub, sort_ms(list(ant) + [f.arg]), S)
        p = SProof("neg_r", A, sort_ms(list(succ) + [f]), (p,), principal=f)
        return contract(p, A, S), False

    def _imp_r(self, ant, succ, f, path):
        sub, pruned = self.prove(ant | {f.lhs}, succ | {f.rhs}, path)
        if sub is None:
            return None, pruned
        A, S = sort_ms(ant), sort_ms(succ)
        p = weaken(sub, sort_ms(list(ant) + [f.lhs]), sort_ms(list(succ) + [f.rhs]))
        p = SProof("imp_r", A, sort_ms(list(succ) + [f]), (p,), principal=f)
        return contract(p, A, S), False

    def _and_r(self, ant, succ, f, path):
        sub1, pr1 = self.prove(ant, succ | {f.lhs}, path)
        if sub1 is None:
            return None, pr1
        sub2, pr2 = self.prove(ant, succ | {f.rhs}, path)
        if sub2 is None:
            return None, pr2
        A, S = sort_ms(ant), sort_ms(succ)
        p1 = weaken(sub1, A, sort_ms(list(succ) + [f.lhs]))
        p2 = weaken(sub2, A, sort_ms(list(succ) + [f.rhs]))
        both = SProof("and_r", sort_ms(list(ant) * 2),
                      sort_ms(list(succ) * 2 + [f]), (p1, p2), principal=f)
        return contract(both, A, S), False

    def _or_l(self, ant, succ, f, path):
        sub1, pr1 = self.prove(ant | {f.lhs}, succ, path)
        if sub1 is None:
            return None, pr1
        sub2, pr2 = self.prove(ant | {f.rhs}, succ, path)
        if sub2 is None:
            return None, pr2
        A, S = sort_ms(ant), sort_ms(succ)
        p1 = weaken(sub1, sort_ms(list(ant) + [f.lhs]), S)
        p2 = weaken(sub2, sort_ms(list(ant) + [f.rhs]), S)
        both = SProof("or_l", sort_ms(list(ant) * 2 + [f]),
                      sort_ms(list(succ) * 2), (p1, p2), principal=f)
        return contract(both, A, S), False

    def _imp_l(self, ant, succ, f, path):
        sub1, pr1 = self.prove(ant, succ | {f.lhs}, path)
        if sub1 is None:
            return None, pr1
        sub2, pr2 = self.prove(ant | {f.rhs}, succ, path)
        if sub2 is None:
            return None, pr2
        A, S = sort_ms(ant), sort_ms(succ)
        p1 = weaken(sub1, A, sort_ms(list(succ) + [f.lhs]))
        p2 = weaken(sub2, sort_ms(list(ant) + [f.rhs]), S)
        both = SProof("imp_l", sort_ms(list(ant) * 2 + [f]),
                      sort_ms(list(succ) * 2), (p1, p2), principal=f)
        return contract(both, A, S), False

    def _box_l(self, ant, succ, f, path):
        sub, pruned = self.prove(ant | {f.arg}, succ, path)
        if sub is None:
            return None, pruned
        A, S = sort_ms(ant), sort_ms(succ)
        p = weaken(sub, sort_ms(list(ant) + [f.arg]), S)
        p = SProof("box_l", sort_ms(list(ant) + [f]), S, (p,), principal=f)
        return contract(p, A, S), False

    # -- box jumps --------------------------------------------------------------

    def _box_right(self, ant, succ, f, path):
        n = f.idx
        rule = {"GK4h": "box4_r", "GKD4h": "box4_r",
                "GS4h": "boxs_r", "GGLh": "boxgl_r"}[self.calc]
        sigma = [g.arg for g in ant if isinstance(g, Box) and g.idx == n]
        gamma = [g for g in ant if isinstance(g, Box) and g.idx < n]
        kept = sort_ms(g for g in ant if isinstance(g, Box) and g.idx <= n)
        if rule == "boxs_r":
            prem_ant = sigma + gamma
        else:
            prem_ant = sigma + [g.arg for g in gamma] + gamma
        if rule == "boxgl_r":
            prem_ant = prem_ant + [f]
        sub, pruned = self.prove(frozenset(prem_ant), frozenset({f.arg}), path)
        if sub is None:
            return None, pruned
        p = weaken(sub, sort_ms(prem_ant), (f.arg,))
        p = SProof(rule, kept, (f,), (p,), principal=f)
        return weaken(p, sort_ms(ant), sort_ms(succ)), False

    def _box_empty(self, ant, succ, path):
        boxes = [g for g in ant if isinstance(g, Box)]
        n = max(g.idx for g in boxes) + 1
        prem_ant = [g.arg for g in boxes] + boxes
        sub, pruned = self.prove(frozenset(prem_ant), frozenset(), path)
        if sub is None:
            return None, pruned
        p = weaken(sub, sort_ms(prem_ant), ())
        p = SProof("boxd_r", sort_ms(boxes), (), (p,), n=n)
        return weaken(p, sort_ms(ant), sort_ms(succ)), False


def prove_sequent(calc: str, s: Sequent, budget: int = DEFAULT_BUDGET) -> SearchOutcome:
    """Decide one sequent; a provable outcome carries a checkable derivation."""
    if calc not in CALCULI:
        raise ValueError(f"unknown calculus: {calc!r}")
    for f in s.ant + s.succ:
        validate_modal(f)
    searcher = _Searcher(calc, budget)
    limit = sys.getrecursionlimit()
    if limit < 50_000:
        sys.setrecursionlimit(50_000)
    try:
        proof, _ = searcher.prove(frozenset(s.ant), frozenset(s.succ), frozenset())
    except _BudgetExceeded:
        return SearchOutcome("budget-exceeded", None, searcher.visited, budget)
    finally:
        sys.setrecursionlimit(limit)
    if proof is None:
        return SearchOutcome("not-provable", None, searcher.visited, budget)
    proof = weaken(proof, sort_ms(s.ant), sort_ms(s.succ))
    return SearchOutcome("provable", proof, searcher.visited, budget)


@dataclass(frozen=True)
class Decision:
    provable: Optional[bool]  # None when the budget ran out
    proof: Optional[SProof]
    outcome: SearchOutcome

    @property
    def status(self) -> str:
        return self.outcome.status


def decide_modal(system: str, gamma: list, a: Formula,
                 budget: int = DEFAULT_BUDGET) -> Decision:
    """Decide whether ``gamma`` yields ``a`` in K4h, KD4h, S4h, or (experimentally) GLh."""
    if system not in FOR_SYSTEM:
        raise ValueError(f"no sequent calculus for system {system!r}")
    out = prove_sequent(FOR_SYSTEM[system], Sequent(tuple(gamma), (a,)), budget)
    if out.status == "provable":
        return Decision(True, out.proof, out)
    if out.status == "not-provable":
        return Decision(False, None, out)
    return Decision(None, None, out)


@dataclass(frozen=True)
class DisjunctionReport:
    disjunction_provable: Optional[bool]
    side: Optional[str]  # "left" | "right" | None
    left: Optional[Decision]
    right: Optional[Decision]


def strong_disjunction_check(system: str, a: Formula, b: Formula,
                             n: int, m: int,
                             budget: int = DEFAULT_BUDGET) -> DisjunctionReport:
    """Probe the strong disjunction property on ``[]n a | []m b``.

    When the boxed disjunction is provable, at least one plain disjunct must
    be provable; a report with ``side=None`` in that case flags a bug.
    """
    disj = Or(Box(a, n), Box(b, m))
    validate_modal(disj)
    d = decide_modal(system, [], disj, budget)
    if d.provable is not True:
        return DisjunctionReport(d.provable, None, None, None)
    da = decide_modal(system, [], a, budget)
    if da.provable is True:
        return DisjunctionReport(True, "left", da, None)
    db = decide_modal(system, [], b, budget)
    if db.provable is True:
        return DisjunctionReport(True, "right", da, db)
    return DisjunctionReport(True, None, da, db)
