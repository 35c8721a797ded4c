"""Natural deduction proof trees and checking.

Every node stores its conclusion, so checking is local shape matching plus
discharge bookkeeping. Hypotheses are multisets: open leaves carry no
label; leaves that some ancestor discharges carry that ancestor's label.
Implication introduction in the typed systems must use an index strictly
greater than every index occurring in the open hypotheses of its premise
subderivation and in the discharged formula.

Typed systems: BPCh (propositional + formalized + structural rules),
EBPCh = BPCh + contradiction rule ``c``, FPLh = BPCh + rule ``l``,
IPCh = BPCh + detachment ``r``, CPCh = IPCh + excluded middle ``d``.
The untyped systems BPC/EBPC/FPL/IPC/CPC use the same trees with indices
erased and no side condition on implication introduction; untyped FPL also
admits the top-restricted form ``l_top`` of its rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .formulas import (
    And,
    Bot,
    Formula,
    IllTyped,
    Imp,
    Or,
    Top,
    max_index,
    render,
    validate_prop,
    validate_prop_untyped,
)
from .translate import forgetful_f

_BASE = frozenset({
    "hyp", "top_i", "and_i", "and_e_l", "and_e_r", "or_i_l", "or_i_r",
    "or_e", "imp_i", "exfalso", "and_i_f", "or_e_f", "tr_f", "tr", "h",
})

TYPED_SYSTEMS: dict[str, frozenset] = {
    "BPCh": _BASE,
    "EBPCh": _BASE | {"c"},
    "FPLh": _BASE | {"l"},
    "IPCh": _BASE | {"r"},
    "CPCh": _BASE | {"r", "d"},
}

UNTYPED_SYSTEMS: dict[str, frozenset] = {
    "BPC": _BASE,
    "EBPC": _BASE | {"c"},
    "FPL": _BASE | {"l", "l_top"},
    "IPC": _BASE | {"r"},
    "CPC": _BASE | {"r", "d"},
}

ALL_SYSTEMS = {**TYPED_SYSTEMS, **UNTYPED_SYSTEMS}


class BadNode(ValueError):
    """Rejection at a specific node; ``path`` is the child-index trail."""

    def __init__(self, path: tuple, reason: str):
        super().__init__(f"{path_str(path)}: {reason}")
        self.path = path
        self.reason = reason


def path_str(path: tuple) -> str:
    return "root" if not path else "root." + ".".join(str(i) for i in path)


@dataclass(frozen=True)
class NDProof:
    rule: str
    conclusion: Formula
    children: tuple = ()
    label: Optional[str] = None  # hyp leaves; discharge label of imp_i/tr/or_e
    label2: Optional[str] = None  # or_e right-branch discharge label

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)


def hyp(f: Formula, label: Optional[str] = None) -> NDProof:
    return NDProof("hyp", f, label=label)


_ARITY = {
    "hyp": 0, "top_i": 0, "d": 0,
    "and_e_l": 1, "and_e_r": 1, "or_i_l": 1, "or_i_r": 1, "imp_i": 1,
    "exfalso": 1, "h": 1, "l": 1, "l_top": 1,
    "and_i": 2, "and_i_f": 2, "or_e_f": 2, "tr_f": 2, "tr": 2, "c": 2, "r": 2,
    "or_e": 3,
}

# opens are triples (formula, label-or-None, leaf path)


class _Checker:
    def __init__(self, system: str):
        if system not in ALL_SYSTEMS:
            raise ValueError(f"unknown natural-deduction system: {system!r}")
        self.rules = ALL_SYSTEMS[system]
        self.typed = system in TYPED_SYSTEMS
        self.validate = validate_prop if self.typed else validate_prop_untyped
        self.binder_labels: set = set()

    def check(self, node: NDProof, path: tuple) -> list:
        rule, concl = node.rule, node.conclusion

        def fail(reason: str):
            raise BadNode(path, reason)

        if rule not in _ARITY:
            fail(f"unknown rule {rule!r}")
        if rule not in self.rules:
            fail(f"RuleNotInSystem({rule})")
        if len(node.children) != _ARITY[rule]:
            fail(f"rule {rule} takes {_ARITY[rule]} premises, got {len(node.children)}")
        try:
            self.validate(concl)
        except IllTyped as e:
            fail(str(e))

        ch = node.children
        opens_by_child = [self.check(c, path + (i,)) for i, c in enumerate(ch)]
        opens = [o for sub in opens_by_child for o in sub]

        if rule == "hyp":
            return [(concl, node.label, path)]

        if rule == "top_i":
            if not isinstance(concl, Top):
                fail("top_i concludes T")
            return opens

        if rule == "and_i":
            if concl != And(ch[0].conclusion, ch[1].conclusion):
                fail("and_i conclusion does not pair the premises")
            return opens

        if rule in ("and_e_l", "and_e_r"):
            prem = ch[0].conclusion
            if not isinstance(prem, And):
                fail(f"{rule} premise must be a conjunction")
            want = prem.lhs if rule == "and_e_l" else prem.rhs
            if concl != want:
                fail(f"{rule} conclusion must be the matching conjunct")
            return opens

        if rule in ("or_i_l", "or_i_r"):
            if not isinstance(concl, Or):
                fail(f"{rule} concludes a disjunction")
            want = concl.lhs if rule == "or_i_l" else concl.rhs
            if ch[0].conclusion != want:
                fail(f"{rule} premise must be the matching disjunct")
            return opens

        if rule == "or_e":
            disj = ch[0].conclusion
            if not isinstance(disj, Or):
                fail("or_e major premise must be a disjunction")
            if ch[1].conclusion != concl or ch[2].conclusion != concl:
                fail("or_e branches must conclude the conclusion")
            self._bind(path, node.label)
            self._bind(path, node.label2)
            left = self._discharge(path, opens_by_child[1], node.label, disj.lhs)
            right = self._discharge(path, opens_by_child[2], node.label2, disj.rhs)
            return opens_by_child[0] + left + right

        if rule == "imp_i":
            if not isinstance(concl, Imp):
                fail("imp_i concludes an implication")
            if ch[0].conclusion != concl.rhs:
                fail("imp_i premise must conclude the consequent")
            if self.typed:
                bound = max_index(concl.lhs)
                for f, _lab, _p in opens:
                    bound = _max2(bound, max_index(f))
                if bound is not None and concl.idx <= bound:
                    fail(f"IndexTooSmall({concl.idx}, >{bound})")
            self._bind(path, node.label)
            return self._discharge(path, opens, node.label, concl.lhs)

        if rule == "exfalso":
            if not isinstance(ch[0].conclusion, Bot):
                fail("exfalso premise must be F")
            return opens

        if rule == "and_i_f":
            p1, p2 = ch[0].conclusion, ch[1].conclusion
            if not (isinstance(p1, Imp) and isinstance(p2, Imp)):
                fail("and_i_f premises must be implications")
            if p1.lhs != p2.lhs or p1.idx != p2.idx:
                fail("and_i_f premises must share antecedent and index")
            if concl != Imp(p1.lhs, And(p1.rhs, p2.rhs), p1.idx):
                fail("and_i_f conclusion shape mismatch")
            return opens

        if rule == "or_e_f":
            p1, p2 = ch[0].conclusion, ch[1].conclusion
            if not (isinstance(p1, Imp) and isinstance(p2, Imp)):
                fail("or_e_f premises must be implications")
            if p1.rhs != p2.rhs or p1.idx != p2.idx:
                fail("or_e_f premises must share consequent and index")
            if concl != Imp(Or(p1.lhs, p2.lhs), p1.rhs, p1.idx):
                fail("or_e_f conclusion shape mismatch")
            return opens

        if rule == "tr_f":
            p1, p2 = ch[0].conclusion, ch[1].conclusion
            if not (isinstance(p1, Imp) and isinstance(p2, Imp)):
                fail("tr_f premises must be implications")
            if p1.rhs != p2.lhs or p1.idx != p2.idx:
                fail("tr_f premises must chain with equal indices")
            if concl != Imp(p1.lhs, p2.rhs, p1.idx):
                fail("tr_f conclusion shape mismatch")
            return opens

        if rule == "tr":
            if concl != ch[1].conclusion:
                fail("tr concludes its second premise")
            self._bind(path, node.label)
            grafted = self._discharge(path, opens_by_child[1], node.label,
                                      ch[0].conclusion)
            return opens_by_child[0] + grafted

        if rule == "h":
            prem = ch[0].conclusion
            if not (isinstance(prem, Imp) and isinstance(concl, Imp)):
                fail("h maps an implication to an implication")
            if prem.lhs != concl.lhs or prem.rhs != concl.rhs:
                fail("h must keep antecedent and consequent")
            if self.typed and concl.idx < prem.idx:
                fail(f"h target index {concl.idx} must be >= {prem.idx}")
            return opens

        if rule == "c":
            p1, p2 = ch[0].conclusion, ch[1].conclusion
            if not (isinstance(p2, Imp) and p2.lhs == p1 and isinstance(p2.rhs, Bot)):
                fail("c premises must be A and a negation of A")
            if not isinstance(concl, Bot):
                fail("c concludes F")
            return opens

        if rule == "r":
            p1, p2 = ch[0].conclusion, ch[1].conclusion
            if not (isinstance(p2, Imp) and p2.lhs == p1):
                fail("r premises must be A and an implication from A")
            if concl != p2.rhs:
                fail("r concludes the consequent of its implication")
            return opens

        if rule == "d":
            if not (isinstance(concl, Or) and isinstance(concl.rhs, Imp)
                    and concl.rhs.lhs == concl.lhs and isinstance(concl.rhs.rhs, Bot)):
                fail("d concludes A | (A ->n F)")
            return opens

        if rule == "l":
            if not isinstance(concl, Imp):
                fail("l concludes an implication")
            want_idx = None if concl.idx is None else concl.idx + 1
            expected = Imp(And(concl.lhs, concl), concl.rhs, want_idx)
            if ch[0].conclusion != expected:
                fail(f"l premise must be '{render(expected)}'")
            return opens

        if rule == "l_top":
            if not (isinstance(concl, Imp) and isinstance(concl.lhs, Top)
                    and concl.idx is None):
                fail("l_top concludes T -> A")
            if ch[0].conclusion != Imp(concl, concl.rhs):
                fail("l_top premise must be (T -> A) -> A")
            return opens

        raise BadNode(path, f"unhandled rule {rule!r}")

    def _bind(self, path: tuple, label: Optional[str]) -> None:
        if label is None:
            return
        if label in self.binder_labels:
            raise BadNode(path, f"label {label!r} is discharged twice")
        self.binder_labels.add(label)

    def _discharge(self, path: tuple, opens: list, label: Optional[str],
                   expected: Formula) -> list:
        if label is None:
            return opens
        kept = []
        for f, lab, leafpath in opens:
            if lab == label:
                if f != expected:
                    raise BadNode(
                        path,
                        f"leaf at {path_str(leafpath)} labeled {label!r} has "
                        f"'{render(f)}', expected '{render(expected)}'",
                    )
            else:
                kept.append((f, lab, leafpath))
        return kept


def _max2(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def check_nd(system: str, proof: NDProof, hypotheses: list, goal: Formula) -> None:
    """Check a proof of ``goal`` from ``hypotheses``; raises BadNode."""
    checker = _Checker(system)
    checker.validate(goal)
    for h in hypotheses:
        checker.validate(h)
    opens = checker.check(proof, ())
    if proof.conclusion != goal:
        raise BadNode(
            (), f"conclusion '{render(proof.conclusion)}' differs from the goal "
            f"'{render(goal)}'"
        )
    for f, label, leafpath in opens:
        if label is not None:
            raise BadNode(leafpath, f"UndischargedLabel({label})")
        if f not in hypotheses:
            raise BadNode(
                leafpath, f"open hypothesis '{render(f)}' is not allowed here"
            )


def open_hypotheses(proof: NDProof) -> list:
    """Undischarged leaf formulas at the root, as a multiset (list)."""
    def walk(node: NDProof) -> list:
        if node.rule == "hyp":
            return [(node.conclusion, node.label)]
        per_child = [walk(c) for c in node.children]

        def strip(items: list, label) -> list:
            if label is None:
                return items
            return [it for it in items if it[1] != label]

        if node.rule == "imp_i":
            merged = strip(per_child[0], node.label)
        elif node.rule == "tr":
            merged = per_child[0] + strip(per_child[1], node.label)
        elif node.rule == "or_e":
            merged = (per_child[0] + strip(per_child[1], node.label)
                      + strip(per_child[2], node.label2))
        else:
            merged = [it for sub in per_child for it in sub]
        return merged

    return [f for f, _label in walk(proof)]


def erase_indices(proof: NDProof) -> NDProof:
    """Map a typed proof tree onto the corresponding untyped one."""
    return NDProof(
        proof.rule,
        forgetful_f(proof.conclusion),
        tuple(erase_indices(c) for c in proof.children),
        label=proof.label,
        label2=proof.label2,
    )


# -- JSON proof trees ----------------------------------------------------------

def proof_to_json(proof: NDProof) -> dict:
    d: dict = {"rule": proof.rule, "conclusion": render(proof.conclusion)}
    if proof.label is not None:
        d["label"] = proof.label
    if proof.label2 is not None:
        d["label2"] = proof.label2
    if proof.children:
        d["children"] = [proof_to_json(c) for c in proof.children]
    return d


def proof_from_json(d: dict, parse) -> NDProof:
    if not isinstance(d, dict) or "rule" not in d or "conclusion" not in d:
        raise ValueError(f"not a proof node: {d!r}")
    return NDProof(
        d["rule"],
        parse(d["conclusion"]),
        tuple(proof_from_json(c, parse) for c in d.get("children", [])),
        label=d.get("label"),
        label2=d.get("label2"),
    )
