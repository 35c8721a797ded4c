"""Exhaustive bounded-depth proof enumeration in the exact multiset calculi.

This is the validation oracle for the optimized searcher: it enumerates
every possible last rule of the published calculus backwards, including
explicit weakening and contraction and every context split of the binary
rules, with cut excluded, down to a height bound. Nothing is absorbed or
optimized here on purpose; the only shortcut is memoization.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

from .formulas import And, Bot, Box, Formula, Imp, Not, Or, Top
from .sequents import CALCULI, Sequent, sort_ms


@dataclass(frozen=True)
class OracleOutcome:
    status: str  # "provable" | "no-proof-within-depth"
    depth: int


def _splits(items: tuple):
    """All ways to distribute a multiset over two sides."""
    out = [((), ())]
    for f, count in Counter(items).items():
        grown = []
        for left, right in out:
            for k in range(count + 1):
                grown.append((left + (f,) * k, right + (f,) * (count - k)))
        out = grown
    return out


def _minus_one(items: tuple, f: Formula) -> tuple:
    out = list(items)
    out.remove(f)
    return tuple(out)


class _Oracle:
    def __init__(self, calc: str):
        if calc not in CALCULI:
            raise ValueError(f"unknown calculus: {calc!r}")
        self.calc = calc
        self.known_true: dict = {}  # canon -> smallest verified height
        self.known_false: dict = {}  # canon -> largest refuted height

    def provable(self, ant: tuple, succ: tuple, depth: int) -> bool:
        canon = (sort_ms(ant), sort_ms(succ))
        if self.known_true.get(canon, depth + 1) <= depth:
            return True
        if self.known_false.get(canon, -1) >= depth:
            return False
        ok = self._search(canon[0], canon[1], depth)
        if ok:
            self.known_true[canon] = min(self.known_true.get(canon, depth), depth)
        else:
            self.known_false[canon] = max(self.known_false.get(canon, -1), depth)
        return ok

    def _axiom(self, ant: tuple, succ: tuple) -> bool:
        if len(ant) == 1 and len(succ) == 1 and ant[0] == succ[0]:
            return True
        if len(ant) == 1 and not succ and isinstance(ant[0], Bot):
            return True
        if not ant and len(succ) == 1 and isinstance(succ[0], Top):
            return True
        return False

    def _search(self, ant: tuple, succ: tuple, depth: int) -> bool:
        if depth < 1:
            return False
        if self._axiom(ant, succ):
            return True
        if depth < 2:
            return False
        d = depth - 1
        seen: set = set()

        def one(pant, psucc) -> bool:
            key = (sort_ms(pant), sort_ms(psucc))
            if key in seen:
                return False
            seen.add(key)
            return self.provable(pant, psucc, d)

        def two(p1, p2) -> bool:
            return (self.provable(p1[0], p1[1], d)
                    and self.provable(p2[0], p2[1], d))

        # structural rules
        for f in set(ant):
            rest = _minus_one(ant, f)
            if one(rest, succ):  # wl
                return True
            if one(ant + (f,), succ):  # cl backwards
                return True
        for f in set(succ):
            rest = _minus_one(succ, f)
            if one(ant, rest):  # wr
                return True
            if one(ant, succ + (f,)):  # cr backwards
                return True

        # propositional rules
        for f in set(ant):
            rest = _minus_one(ant, f)
            if isinstance(f, And):
                if one(rest + (f.lhs,), succ) or one(rest + (f.rhs,), succ):
                    return True
            elif isinstance(f, Not):
                if one(rest, succ + (f.arg,)):
                    return True
            elif isinstance(f, Or):
                for (g0, g1) in _splits(rest):
                    for (d0, d1) in _splits(succ):
                        if two((g0 + (f.lhs,), d0), (g1 + (f.rhs,), d1)):
                            return True
            elif isinstance(f, Imp):
                for (g0, g1) in _splits(rest):
                    for (d0, d1) in _splits(succ):
                        if two((g0, d0 + (f.lhs,)), (g1 + (f.rhs,), d1)):
                            return True
            elif isinstance(f, Box) and "box_l" in CALCULI[self.calc]:
                if one(rest + (f.arg,), succ):
                    return True
        for f in set(succ):
            rest = _minus_one(succ, f)
            if isinstance(f, Or):
                if one(ant, rest + (f.lhs,)) or one(ant, rest + (f.rhs,)):
                    return True
            elif isinstance(f, Not):
                if one(ant + (f.arg,), rest):
                    return True
            elif isinstance(f, Imp):
                if one(ant + (f.lhs,), rest + (f.rhs,)):
                    return True
            elif isinstance(f, And):
                for (g0, g1) in _splits(ant):
                    for (d0, d1) in _splits(rest):
                        if two((g0, d0 + (f.lhs,)), (g1, d1 + (f.rhs,))):
                            return True

        # box rules: context must consist of boxes with small enough indices
        rules = CALCULI[self.calc]
        if len(succ) == 1 and isinstance(succ[0], Box) and (
                "box4_r" in rules or "boxs_r" in rules or "boxgl_r" in rules):
            top = succ[0]
            n = top.idx
            if all(isinstance(g, Box) and g.idx <= n for g in ant):
                prem: list = []
                for g in ant:
                    if g.idx == n:
                        prem.append(g.arg)
                    elif "boxs_r" in rules:
                        prem.append(g)
                    else:
                        prem.append(g.arg)
                        prem.append(g)
                if "boxgl_r" in rules:
                    prem.append(top)
                if one(tuple(prem), (top.arg,)):
                    return True
        if not succ and "boxd_r" in rules and all(isinstance(g, Box) for g in ant):
            tops = sorted({g.idx for g in ant})
            candidates = {tops[-1], tops[-1] + 1} if tops else {0}
            for n in candidates:
                prem = []
                for g in ant:
                    if g.idx == n:
                        prem.append(g.arg)
                    else:
                        prem.append(g.arg)
                        prem.append(g)
                if one(tuple(prem), ()):
                    return True
        return False


def oracle_exhaustive(calc: str, s: Sequent, depth: int) -> OracleOutcome:
    """Search every derivation of height <= depth in the exact calculus."""
    oracle = _Oracle(calc)
    if oracle.provable(tuple(s.ant), tuple(s.succ), depth):
        return OracleOutcome("provable", depth)
    return OracleOutcome("no-proof-within-depth", depth)


def oracle_stabilized(calc: str, s: Sequent, max_depth: int = 8,
                      start: int = 1) -> OracleOutcome:
    """Deepen one level at a time, reusing the memo, until a proof appears."""
    oracle = _Oracle(calc)
    ant, succ = tuple(s.ant), tuple(s.succ)
    for d in range(start, max_depth + 1):
        if oracle.provable(ant, succ, d):
            return OracleOutcome("provable", d)
    return OracleOutcome("no-proof-within-depth", max_depth)
