"""Generators for reusable natural-deduction proof trees.

Each generator returns a kernel-checkable tree:

* ``reindex_proof``: from ``A ->m B`` derive ``A ->n B`` for any admissible
  m, n (one ``h`` step upward, iterated ``l`` descent downward);
* ``rewitness_proof``: from an untyped shape indexed by witness ``u`` derive
  the same shape indexed by witness ``v``;
* ``contradiction_via_top`` / ``detachment_via_top``: the binary rules
  ``c`` and ``r`` recovered from their top-restricted forms;
* ``loeb_via_top``: the untyped derivation showing the top-restricted
  bounded-recursion rule simulates the general one.
"""

from __future__ import annotations

from itertools import count

from .formulas import (
    BOT,
    TOP,
    And,
    Atom,
    Formula,
    IllTyped,
    Imp,
    Or,
    max_index,
    neg,
    render,
    validate_prop,
    validate_prop_untyped,
)
from .natded import NDProof, hyp
from .translate import (
    Witness,
    WArrow,
    WLeaf,
    WSplit,
    apply_witness,
    validate_witness,
    witness_of,
)


def _fresh_maker(prefix: str = "h"):
    c = count(1)
    return lambda: f"{prefix}{next(c)}"


def _relabel_open(proof: NDProof, formula: Formula, label: str) -> NDProof:
    """Attach ``label`` to every open leaf carrying exactly ``formula``."""
    if proof.rule == "hyp":
        if proof.label is None and proof.conclusion == formula:
            return NDProof("hyp", formula, label=label)
        return proof
    return NDProof(
        proof.rule,
        proof.conclusion,
        tuple(_relabel_open(c, formula, label) for c in proof.children),
        label=proof.label,
        label2=proof.label2,
    )


def _descend(d: NDProof, a: Formula, b: Formula, k: int, target: int,
             fresh) -> NDProof:
    """Extend a derivation of ``a ->k b`` down to ``a ->target b``."""
    while k > target:
        t = k - 1
        inner = Imp(a, b, t)
        conj = And(a, inner)
        lab = fresh()
        project = NDProof("and_e_l", a, (hyp(conj, lab),))
        to_a = NDProof("imp_i", Imp(conj, a, k), (project,), label=lab)
        chained = NDProof("tr_f", Imp(conj, b, k), (to_a, d))
        d = NDProof("l", inner, (chained,))
        k = t
    return d


def reindex_proof(a: Formula, b: Formula, m: int, n: int) -> NDProof:
    """Proof of ``a ->n b`` from hypothesis ``a ->m b``."""
    validate_prop(Imp(a, b, m))
    validate_prop(Imp(a, b, n))
    start = hyp(Imp(a, b, m))
    if n == m:
        return start
    if n > m:
        return NDProof("h", Imp(a, b, n), (start,))
    return _descend(start, a, b, m, n, _fresh_maker())


def rewitness_proof(shape: Formula, u: Witness, v: Witness) -> NDProof:
    """Proof of the ``v``-indexed reading of ``shape`` from its ``u`` reading."""
    validate_prop_untyped(shape)
    validate_witness(u)
    validate_witness(v)
    apply_witness(shape, u)
    apply_witness(shape, v)
    return _rw(shape, u, v, _fresh_maker())


def _rw(shape: Formula, u: Witness, v: Witness, fresh) -> NDProof:
    if u == v:
        return hyp(apply_witness(shape, u))
    if isinstance(shape, (And, Or)):
        assert isinstance(u, WSplit) and isinstance(v, WSplit)
        au = apply_witness(shape, u)
        lu = apply_witness(shape.lhs, u.lhs)
        ru = apply_witness(shape.rhs, u.rhs)
        lv = apply_witness(shape.lhs, v.lhs)
        rv = apply_witness(shape.rhs, v.rhs)
        left_sub = _rw(shape.lhs, u.lhs, v.lhs, fresh)
        right_sub = _rw(shape.rhs, u.rhs, v.rhs, fresh)
        la, lb = fresh(), fresh()
        if isinstance(shape, And):
            left = NDProof(
                "tr", lv,
                (NDProof("and_e_l", lu, (hyp(au),)), _relabel_open(left_sub, lu, la)),
                label=la,
            )
            right = NDProof(
                "tr", rv,
                (NDProof("and_e_r", ru, (hyp(au),)), _relabel_open(right_sub, ru, lb)),
                label=lb,
            )
            return NDProof("and_i", And(lv, rv), (left, right))
        goal = Or(lv, rv)
        left = NDProof("or_i_l", goal, (_relabel_open(left_sub, lu, la),))
        right = NDProof("or_i_r", goal, (_relabel_open(right_sub, ru, lb),))
        return NDProof("or_e", goal, (hyp(au), left, right), label=la, label2=lb)
    # implication: meet at the max index, swap both sides, then move down
    assert isinstance(shape, Imp) and isinstance(u, WArrow) and isinstance(v, WArrow)
    n, m = u.idx, v.idx
    k = max(n, m)
    bu = apply_witness(shape.lhs, u.lhs)
    bv = apply_witness(shape.lhs, v.lhs)
    cu = apply_witness(shape.rhs, u.rhs)
    cv = apply_witness(shape.rhs, v.rhs)
    la = fresh()
    ante = NDProof(
        "imp_i", Imp(bv, bu, k),
        (_relabel_open(_rw(shape.lhs, v.lhs, u.lhs, fresh), bv, la),),
        label=la,
    )
    lb = fresh()
    cons = NDProof(
        "imp_i", Imp(cu, cv, k),
        (_relabel_open(_rw(shape.rhs, u.rhs, v.rhs, fresh), cu, lb),),
        label=lb,
    )
    d = hyp(Imp(bu, cu, n))
    if k > n:
        d = NDProof("h", Imp(bu, cu, k), (d,))
    d = NDProof("tr_f", Imp(bv, cu, k), (ante, d))
    d = NDProof("tr_f", Imp(bv, cv, k), (d, cons))
    return _descend(d, bv, cv, k, m, fresh)


def contradiction_via_top(a: Formula, n: int) -> NDProof:
    """From hypotheses ``a`` and ``a ->n F`` conclude ``F`` without the binary rule."""
    na = neg(n, a)
    lift = NDProof("imp_i", Imp(TOP, a, n), (hyp(a),))
    chained = NDProof("tr_f", Imp(TOP, BOT, n), (lift, hyp(na)))
    return NDProof("c", BOT, (NDProof("top_i", TOP), chained))


def detachment_via_top(a: Formula, b: Formula, n: int) -> NDProof:
    """From hypotheses ``a`` and ``a ->n b`` conclude ``b`` via the top form."""
    ab = Imp(a, b, n)
    validate_prop(ab)
    lift = NDProof("imp_i", Imp(TOP, a, n), (hyp(a),))
    chained = NDProof("tr_f", Imp(TOP, b, n), (lift, hyp(ab)))
    return NDProof("r", b, (NDProof("top_i", TOP), chained))


def _identity_arrow(a: Formula, fresh) -> NDProof:
    lab = fresh()
    return NDProof("imp_i", Imp(a, a), (hyp(a, lab),), label=lab)


def _arrow_to_top(a: Formula) -> NDProof:
    return NDProof("imp_i", Imp(a, TOP), (NDProof("top_i", TOP),))


def loeb_core(a: Formula, b: Formula, tab_label=None) -> NDProof:
    """From ``T -> (a -> b)`` and ``(a & (a -> b)) -> b`` conclude ``a -> b``.

    With ``tab_label`` set, the first hypothesis' leaf carries that label so
    a surrounding graft can discharge it.
    """
    ab = Imp(a, b)
    conj = And(a, ab)
    big = Imp(conj, b)
    tab = Imp(TOP, ab)
    fresh = _fresh_maker("s")
    chained = NDProof("tr_f", Imp(a, ab), (_arrow_to_top(a), hyp(tab, tab_label)))
    paired = NDProof("and_i_f", Imp(a, conj), (_identity_arrow(a, fresh), chained))
    return NDProof("tr_f", ab, (paired, hyp(big)))


def loeb_via_top(a: Formula = Atom("p"), b: Formula = Atom("q")) -> NDProof:
    """Untyped derivation of ``a -> b`` from ``(a & (a -> b)) -> b``.

    Uses only the top-restricted bounded-recursion rule, so it witnesses
    that the restricted rule simulates the general one.
    """
    validate_prop_untyped(a)
    validate_prop_untyped(b)
    ab = Imp(a, b)
    conj = And(a, ab)
    big = Imp(conj, b)
    tab = Imp(TOP, ab)
    fresh = _fresh_maker()
    l_a, l_tab, l_star = fresh(), fresh(), fresh()

    to_a = NDProof("imp_i", Imp(TOP, a), (hyp(a, l_a),))
    paired = NDProof("and_i_f", Imp(TOP, conj), (to_a, hyp(tab, l_tab)))
    to_b = NDProof("tr_f", Imp(TOP, b), (paired, hyp(big)))
    arr = NDProof("tr_f", ab, (_arrow_to_top(a), to_b))
    closed = NDProof("imp_i", Imp(tab, ab), (arr,), label=l_tab)
    boxed = NDProof("l_top", tab, (closed,))

    grafted = NDProof("tr", ab, (boxed, loeb_core(a, b, tab_label=l_star)),
                      label=l_star)
    curried = NDProof("imp_i", Imp(a, ab), (grafted,), label=l_a)
    paired2 = NDProof("and_i_f", Imp(a, conj), (_identity_arrow(a, fresh), curried))
    return NDProof("tr_f", ab, (paired2, hyp(big)))


# -- registry for the CLI -------------------------------------------------------

def _build_reindex(args: list):
    from .parser import parse_prop

    if len(args) != 4:
        raise ValueError("reindex takes: A B M N")
    a, b = parse_prop(args[0]), parse_prop(args[1])
    m, n = int(args[2]), int(args[3])
    proof = reindex_proof(a, b, m, n)
    return "FPLh", [Imp(a, b, m)], Imp(a, b, n), proof


def _build_rewitness(args: list):
    from .parser import parse_prop

    if len(args) != 2:
        raise ValueError("rewitness takes: TYPED_A TYPED_B (same untyped shape)")
    fa, fb = parse_prop(args[0]), parse_prop(args[1])
    shape_a, u = witness_of(fa)
    shape_b, v = witness_of(fb)
    if shape_a != shape_b:
        raise ValueError(
            f"'{render(fa)}' and '{render(fb)}' differ after erasing indices"
        )
    proof = rewitness_proof(shape_a, u, v)
    return "FPLh", [fa], fb, proof


def _build_contradiction(args: list):
    from .parser import parse_prop

    if len(args) != 2:
        raise ValueError("contradiction-via-top takes: A N")
    a, n = parse_prop(args[0]), int(args[1])
    proof = contradiction_via_top(a, n)
    return "EBPCh", [a, neg(n, a)], BOT, proof


def _build_detachment(args: list):
    from .parser import parse_prop

    if len(args) != 3:
        raise ValueError("detachment-via-top takes: A B N")
    a, b, n = parse_prop(args[0]), parse_prop(args[1]), int(args[2])
    proof = detachment_via_top(a, b, n)
    return "IPCh", [a, Imp(a, b, n)], b, proof


def _build_loeb(args: list):
    from .parser import parse_prop_untyped

    if len(args) not in (0, 2):
        raise ValueError("loeb-via-top takes no arguments or: A B")
    if args:
        a, b = parse_prop_untyped(args[0]), parse_prop_untyped(args[1])
    else:
        a, b = Atom("p"), Atom("q")
    ab = Imp(a, b)
    big = Imp(And(a, ab), b)
    proof = loeb_via_top(a, b)
    return "FPL", [big], ab, proof


SCHEMA_BUILDERS = {
    "reindex": (_build_reindex, "A B M N: derive A ->N B from A ->M B"),
    "rewitness": (_build_rewitness, "A' A'': move between two indexings of one shape"),
    "contradiction-via-top": (_build_contradiction, "A N: derive F from A and A ->N F"),
    "detachment-via-top": (_build_detachment, "A B N: derive B from A and A ->N B"),
    "loeb-via-top": (_build_loeb, "[A B]: untyped bounded-recursion simulation"),
}
