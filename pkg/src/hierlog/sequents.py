"""Two-sided multiset sequents and derivation checking.

The calculi: GK4h has identity/absurdity axioms, the structural rules
(weakening, contraction, cut), the classical propositional rules, and the
box-right rule that unboxes same-index antecedent boxes and carries
lower-index boxes both boxed and unboxed. GKD4h adds the empty-succedent
variant of that rule. GS4h replaces the box-right rule with the variant
that keeps lower-index boxes boxed only, and adds the box-left rule. GGLh
(experimental) uses the box-right rule with the diagonal box added to the
premise.

A derivation stores a full sequent at every node; checking verifies the
multiset equations of each rule. Cut is accepted by the checker; the
search engine never emits it. ``=> T`` is an axiom here: the top constant
has no rules of its own, and without the axiom the calculus could not
match the Hilbert systems on tautologies mentioning it.
"""

from __future__ import annotations

from collections import Counter
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
    render,
    validate_modal,
)
from .parser import ParseError, parse_modal

_STRUCTURAL = frozenset({"ax", "ax_bot", "ax_top", "wl", "wr", "cl", "cr", "cut"})
_PROPOSITIONAL = frozenset({
    "and_l", "and_r", "or_l", "or_r", "imp_l", "imp_r", "neg_l", "neg_r",
})
_COMMON = _STRUCTURAL | _PROPOSITIONAL

CALCULI: dict[str, frozenset] = {
    "GK4h": _COMMON | {"box4_r"},
    "GKD4h": _COMMON | {"box4_r", "boxd_r"},
    "GS4h": _COMMON | {"boxs_r", "box_l"},
    "GGLh": _COMMON | {"boxgl_r"},  # experimental, see decide.GLH_NOTE
}

FOR_SYSTEM = {"K4h": "GK4h", "KD4h": "GKD4h", "S4h": "GS4h", "GLh": "GGLh"}


class BadSequentNode(ValueError):
    def __init__(self, path: tuple, reason: str):
        pretty = "root" if not path else "root." + ".".join(str(i) for i in path)
        super().__init__(f"{pretty}: {reason}")
        self.path = path
        self.reason = reason


@dataclass(frozen=True)
class Sequent:
    ant: tuple
    succ: tuple

    def __str__(self) -> str:
        return render_sequent(self)


def fkey(f: Formula) -> str:
    return render(f)


def sort_ms(formulas) -> tuple:
    return tuple(sorted(formulas, key=fkey))


def parse_sequent(text: str) -> Sequent:
    """Parse ``A1, A2 => B1, B2``; empty sides are allowed."""
    if text.count("=>") != 1:
        raise ParseError("a sequent needs exactly one '=>'", 0)
    left, right = text.split("=>")

    def side(chunk: str) -> tuple:
        chunk = chunk.strip()
        if not chunk:
            return ()
        return tuple(parse_modal(part) for part in chunk.split(","))

    return Sequent(side(left), side(right))


def render_sequent(s: Sequent) -> str:
    left = ", ".join(render(f) for f in s.ant)
    right = ", ".join(render(f) for f in s.succ)
    return f"{left} => {right}".strip()


@dataclass(frozen=True)
class SProof:
    """One derivation node; ``ant``/``succ`` form its conclusion sequent."""

    rule: str
    ant: tuple
    succ: tuple
    children: tuple = ()
    principal: Optional[Formula] = None
    which: Optional[int] = None  # conjunct / disjunct selector
    n: Optional[int] = None  # index for the empty-succedent box rule

    def sequent(self) -> Sequent:
        return Sequent(self.ant, self.succ)

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def height(self) -> int:
        return 1 + max((c.height() for c in self.children), default=0)


def _counts(formulas) -> Counter:
    return Counter(formulas)


def _expect(cond: bool, path: tuple, reason: str) -> None:
    if not cond:
        raise BadSequentNode(path, reason)


def _minus(c: Counter, f: Formula, path: tuple, what: str) -> Counter:
    if c[f] < 1:
        raise BadSequentNode(path, f"{what} '{render(f)}' is not present")
    out = c.copy()
    out[f] -= 1
    if out[f] == 0:
        del out[f]
    return out


def check_sequent_proof(calc: str, proof: SProof) -> None:
    """Verify a derivation against one calculus; raises BadSequentNode."""
    if calc not in CALCULI:
        raise ValueError(f"unknown calculus: {calc!r}")
    _check(proof, CALCULI[calc], ())


def _check(node: SProof, rules: frozenset, path: tuple) -> None:
    for f in node.ant + node.succ:
        try:
            validate_modal(f)
        except Exception as e:
            raise BadSequentNode(path, str(e))
    _expect(node.rule in rules, path,
            f"rule {node.rule!r} is not in this calculus")
    for i, child in enumerate(node.children):
        _check(child, rules, path + (i,))

    A, S = _counts(node.ant), _counts(node.succ)
    ch = node.children
    P = node.principal

    def arity(k: int) -> None:
        _expect(len(ch) == k, path, f"{node.rule} takes {k} premises")

    def prem(i: int) -> tuple:
        return _counts(ch[i].ant), _counts(ch[i].succ)

    rule = node.rule
    if rule == "ax":
        arity(0)
        _expect(len(node.ant) == 1 and len(node.succ) == 1
                and node.ant[0] == node.succ[0], path,
                "axiom must be of the form A => A")
        return
    if rule == "ax_bot":
        arity(0)
        _expect(len(node.ant) == 1 and isinstance(node.ant[0], Bot)
                and not node.succ, path, "absurdity axiom must be F =>")
        return
    if rule == "ax_top":
        arity(0)
        _expect(not node.ant and len(node.succ) == 1
                and isinstance(node.succ[0], Top), path,
                "top axiom must be => T")
        return
    if rule in ("wl", "wr"):
        arity(1)
        pa, ps = prem(0)
        _expect(P is not None, path, "weakening needs its principal formula")
        if rule == "wl":
            _expect(_minus(A, P, path, "weakened formula") == pa and S == ps,
                    path, "weakening shape mismatch")
        else:
            _expect(A == pa and _minus(S, P, path, "weakened formula") == ps,
                    path, "weakening shape mismatch")
        return
    if rule in ("cl", "cr"):
        arity(1)
        pa, ps = prem(0)
        _expect(P is not None, path, "contraction needs its principal formula")
        if rule == "cl":
            _expect(P in A, path, "contracted formula must remain")
            want = A.copy()
            want[P] += 1
            _expect(want == pa and S == ps, path, "contraction shape mismatch")
        else:
            _expect(P in S, path, "contracted formula must remain")
            want = S.copy()
            want[P] += 1
            _expect(A == pa and want == ps, path, "contraction shape mismatch")
        return
    if rule == "cut":
        arity(2)
        a0, s0 = prem(0)
        a1, s1 = prem(1)
        _expect(P is not None, path, "cut needs its cut formula")
        _expect(A == a0 + _minus(a1, P, path, "cut formula")
                and S == _minus(s0, P, path, "cut formula") + s1,
                path, "cut shape mismatch")
        return
    if rule == "and_l":
        arity(1)
        pa, ps = prem(0)
        _expect(isinstance(P, And) and node.which in (0, 1), path,
                "and-left needs a conjunction and a side")
        piece = P.lhs if node.which == 0 else P.rhs
        want = _minus(A, P, path, "principal")
        want[piece] += 1
        _expect(pa == want and ps == S, path, "and-left shape mismatch")
        return
    if rule == "or_r":
        arity(1)
        pa, ps = prem(0)
        _expect(isinstance(P, Or) and node.which in (0, 1), path,
                "or-right needs a disjunction and a side")
        piece = P.lhs if node.which == 0 else P.rhs
        want = _minus(S, P, path, "principal")
        want[piece] += 1
        _expect(ps == want and pa == A, path, "or-right shape mismatch")
        return
    if rule == "and_r":
        arity(2)
        a0, s0 = prem(0)
        a1, s1 = prem(1)
        _expect(isinstance(P, And), path, "and-right needs a conjunction")
        _expect(A == a0 + a1
                and _minus(S, P, path, "principal")
                == _minus(s0, P.lhs, path, "left part")
                + _minus(s1, P.rhs, path, "right part"),
                path, "and-right shape mismatch")
        return
    if rule == "or_l":
        arity(2)
        a0, s0 = prem(0)
        a1, s1 = prem(1)
        _expect(isinstance(P, Or), path, "or-left needs a disjunction")
        _expect(_minus(A, P, path, "principal")
                == _minus(a0, P.lhs, path, "left part")
                + _minus(a1, P.rhs, path, "right part")
                and S == s0 + s1,
                path, "or-left shape mismatch")
        return
    if rule == "imp_l":
        arity(2)
        a0, s0 = prem(0)
        a1, s1 = prem(1)
        _expect(isinstance(P, Imp), path, "imp-left needs an implication")
        _expect(_minus(A, P, path, "principal")
                == a0 + _minus(a1, P.rhs, path, "consequent")
                and S == _minus(s0, P.lhs, path, "antecedent") + s1,
                path, "imp-left shape mismatch")
        return
    if rule == "imp_r":
        arity(1)
        pa, ps = prem(0)
        _expect(isinstance(P, Imp), path, "imp-right needs an implication")
        want_a = A.copy()
        want_a[P.lhs] += 1
        want_s = _minus(S, P, path, "principal")
        want_s[P.rhs] += 1
        _expect(pa == want_a and ps == want_s, path, "imp-right shape mismatch")
        return
    if rule == "neg_l":
        arity(1)
        pa, ps = prem(0)
        _expect(isinstance(P, Not), path, "neg-left needs a negation")
        want_s = S.copy()
        want_s[P.arg] += 1
        _expect(pa == _minus(A, P, path, "principal") and ps == want_s,
                path, "neg-left shape mismatch")
        return
    if rule == "neg_r":
        arity(1)
        pa, ps = prem(0)
        _expect(isinstance(P, Not), path, "neg-right needs a negation")
        want_a = A.copy()
        want_a[P.arg] += 1
        _expect(pa == want_a and ps == _minus(S, P, path, "principal"),
                path, "neg-right shape mismatch")
        return
    if rule in ("box4_r", "boxs_r", "boxgl_r"):
        arity(1)
        pa, ps = prem(0)
        _expect(len(node.succ) == 1 and isinstance(node.succ[0], Box), path,
                f"{rule} concludes a single boxed formula")
        top = node.succ[0]
        n = top.idx
        want = Counter()
        for g in node.ant:
            _expect(isinstance(g, Box), path,
                    f"{rule} context must be boxed, found '{render(g)}'")
            _expect(g.idx <= n, path, f"IndexViolation({g.idx}, {n})")
            if g.idx == n:
                want[g.arg] += 1
            elif rule == "boxs_r":
                want[g] += 1
            else:
                want[g.arg] += 1
                want[g] += 1
        if rule == "boxgl_r":
            want[top] += 1
        _expect(pa == want and ps == Counter({top.arg: 1}), path,
                f"{rule} premise mismatch")
        return
    if rule == "boxd_r":
        arity(1)
        pa, ps = prem(0)
        _expect(not node.succ and not ch[0].succ, path,
                "empty-succedent box rule needs empty succedents")
        n = node.n
        _expect(isinstance(n, int) and n >= 0, path,
                "empty-succedent box rule needs its index")
        want = Counter()
        for g in node.ant:
            _expect(isinstance(g, Box), path,
                    f"boxd_r context must be boxed, found '{render(g)}'")
            _expect(g.idx <= n, path, f"IndexViolation({g.idx}, {n})")
            if g.idx == n:
                want[g.arg] += 1
            else:
                want[g.arg] += 1
                want[g] += 1
        _expect(pa == want, path, "boxd_r premise mismatch")
        return
    if rule == "box_l":
        arity(1)
        pa, ps = prem(0)
        _expect(isinstance(P, Box), path, "box-left needs a boxed principal")
        want = _minus(A, P, path, "principal")
        want[P.arg] += 1
        _expect(pa == want and ps == S, path, "box-left shape mismatch")
        return
    raise BadSequentNode(path, f"unhandled rule {rule!r}")


# -- structural helpers used by proof reconstruction ---------------------------

def weaken(proof: SProof, ant: tuple, succ: tuple) -> SProof:
    """Grow a derivation's conclusion to a super-multiset via wl/wr steps."""
    cur_a, cur_s = _counts(proof.ant), _counts(proof.succ)
    add_a = _counts(ant) - cur_a
    add_s = _counts(succ) - cur_s
    assert cur_a - _counts(ant) == Counter() and cur_s - _counts(succ) == Counter(), \
        "weakening target must contain the current sequent"
    out = proof
    have_a = list(proof.ant)
    have_s = list(proof.succ)
    for f in sort_ms(add_a.elements()):
        have_a.append(f)
        out = SProof("wl", sort_ms(have_a), sort_ms(have_s), (out,), principal=f)
    for f in sort_ms(add_s.elements()):
        have_s.append(f)
        out = SProof("wr", sort_ms(have_a), sort_ms(have_s), (out,), principal=f)
    return out


def contract(proof: SProof, ant: tuple, succ: tuple) -> SProof:
    """Shrink a derivation's conclusion to a sub-multiset with equal support."""
    cur_a, cur_s = _counts(proof.ant), _counts(proof.succ)
    drop_a = cur_a - _counts(ant)
    drop_s = cur_s - _counts(succ)
    out = proof
    have_a, have_s = cur_a.copy(), cur_s.copy()
    for f in sort_ms(drop_a.elements()):
        have_a[f] -= 1
        assert have_a[f] >= 1, "contraction must keep one copy"
        out = SProof("cl", sort_ms(have_a.elements()), sort_ms(have_s.elements()),
                     (out,), principal=f)
    for f in sort_ms(drop_s.elements()):
        have_s[f] -= 1
        assert have_s[f] >= 1, "contraction must keep one copy"
        out = SProof("cr", sort_ms(have_a.elements()), sort_ms(have_s.elements()),
                     (out,), principal=f)
    return out


# -- JSON and text rendering ----------------------------------------------------

def proof_to_json(p: SProof) -> dict:
    d: dict = {
        "rule": p.rule,
        "ant": [render(f) for f in p.ant],
        "succ": [render(f) for f in p.succ],
    }
    if p.principal is not None:
        d["principal"] = render(p.principal)
    if p.which is not None:
        d["which"] = p.which
    if p.n is not None:
        d["n"] = p.n
    if p.children:
        d["children"] = [proof_to_json(c) for c in p.children]
    return d


def proof_from_json(d: dict) -> SProof:
    if not isinstance(d, dict) or "rule" not in d:
        raise ValueError(f"not a sequent proof node: {d!r}")
    return SProof(
        d["rule"],
        tuple(parse_modal(t) for t in d.get("ant", [])),
        tuple(parse_modal(t) for t in d.get("succ", [])),
        tuple(proof_from_json(c) for c in d.get("children", [])),
        principal=parse_modal(d["principal"]) if "principal" in d else None,
        which=d.get("which"),
        n=d.get("n"),
    )


def render_proof(p: SProof, indent: int = 0) -> str:
    lines = [f"{'  ' * indent}[{p.rule}] {render_sequent(p.sequent())}"]
    for c in p.children:
        lines.append(render_proof(c, indent + 1))
    return "\n".join(lines)
