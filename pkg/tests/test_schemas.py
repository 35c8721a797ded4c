import random

import pytest

from hierlog.formulas import BOT, TOP, And, Atom, IllTyped, Imp, neg
from hierlog.natded import check_nd, erase_indices
from hierlog.schemas import (
    SCHEMA_BUILDERS,
    contradiction_via_top,
    detachment_via_top,
    loeb_core,
    loeb_via_top,
    reindex_proof,
    rewitness_proof,
)
from hierlog.translate import canonical_witness, forgetful_f, witness_of

from genlib import gen_prop, gen_prop_untyped

P, Q, R = Atom("p"), Atom("q"), Atom("r")


@pytest.mark.parametrize("m,n", [(2, 1), (1, 2), (1, 1), (5, 2), (2, 5)])
def test_reindex_checks(m, n):
    proof = reindex_proof(P, Q, m, n)
    check_nd("FPLh", proof, [Imp(P, Q, m)], Imp(P, Q, n))
    if m == n:
        assert proof.size() == 1
    if n > m:
        assert proof.rule == "h"


def test_reindex_over_complex_operands():
    a = Imp(P, Q, 1)
    proof = reindex_proof(a, R, 4, 2)
    check_nd("FPLh", proof, [Imp(a, R, 4)], Imp(a, R, 2))
    with pytest.raises(IllTyped):
        reindex_proof(a, R, 1, 2)  # 1 does not clear the index inside a


def test_reindex_random(seed=3):
    rng = random.Random(seed)
    for _ in range(25):
        a = gen_prop(rng, rng.randint(1, 5), max_idx=2)
        b = gen_prop(rng, rng.randint(1, 5), max_idx=2)
        from hierlog.formulas import max_index
        floor = max(max_index(a) or 0, max_index(b) or 0)
        m = floor + rng.randint(1, 3)
        n = floor + rng.randint(1, 3)
        proof = reindex_proof(a, b, m, n)
        check_nd("FPLh", proof, [Imp(a, b, m)], Imp(a, b, n))


def test_rewitness_identity_is_a_leaf():
    shape, w = witness_of(Imp(P, Q, 2))
    proof = rewitness_proof(shape, w, w)
    assert proof.size() == 1
    check_nd("FPLh", proof, [Imp(P, Q, 2)], Imp(P, Q, 2))


@pytest.mark.parametrize("src,dst", [
    ("p ->1 q", "p ->3 q"),
    ("(p ->1 q) ->2 r", "(p ->2 q) ->3 r"),
    ("(p ->2 q) ->3 r", "(p ->1 q) ->4 r"),
    ("(p & (p ->1 q)) ->2 q", "(p & (p ->3 q)) ->4 q"),
    ("(p | q) ->2 (q ->1 r)", "(p | q) ->4 (q ->3 r)"),
    ("T ->1 (p & q)", "T ->2 (p & q)"),
])
def test_rewitness_between_indexings(src, dst):
    from hierlog.parser import parse_prop

    fa, fb = parse_prop(src), parse_prop(dst)
    shape, u = witness_of(fa)
    shape2, v = witness_of(fb)
    assert shape == shape2
    proof = rewitness_proof(shape, u, v)
    check_nd("FPLh", proof, [fa], fb)


def test_rewitness_random(seed=5):
    rng = random.Random(seed)
    done = 0
    while done < 20:
        shape = gen_prop_untyped(rng, rng.randint(1, 7))
        u = canonical_witness(shape)
        f2 = gen_prop(rng, 1)  # placeholder to vary rng state
        v = _scaled(shape, u, rng.randint(2, 4))
        proof = rewitness_proof(shape, u, v)
        from hierlog.translate import apply_witness
        check_nd("FPLh", proof, [apply_witness(shape, u)],
                 apply_witness(shape, v))
        done += 1


def _scaled(shape, w, factor):
    from hierlog.translate import WArrow, WLeaf, WSplit

    if isinstance(w, WLeaf):
        return w
    if isinstance(w, WSplit):
        return WSplit(_scaled(shape, w.lhs, factor), _scaled(shape, w.rhs, factor))
    return WArrow(_scaled(shape, w.lhs, factor), w.idx * factor,
                  _scaled(shape, w.rhs, factor))


def test_contradiction_via_top():
    for a, n in [(P, 1), (Imp(P, Q, 1), 2), (TOP, 1)]:
        proof = contradiction_via_top(a, n)
        check_nd("EBPCh", proof, [a, neg(n, a)], BOT)


def test_detachment_via_top():
    for a, b, n in [(P, Q, 1), (Imp(P, Q, 1), R, 2), (TOP, TOP, 1)]:
        proof = detachment_via_top(a, b, n)
        check_nd("IPCh", proof, [a, Imp(a, b, n)], b)


def test_loeb_via_top():
    ab = Imp(P, Q)
    big = Imp(And(P, ab), Q)
    proof = loeb_via_top()
    check_nd("FPL", proof, [big], ab)


def test_loeb_core_in_isolation():
    ab = Imp(P, Q)
    proof = loeb_core(P, Q)
    check_nd("FPL", proof, [P, Imp(TOP, ab), Imp(And(P, ab), Q)], ab)
    # the core needs no bounded-recursion rule at all
    check_nd("BPC", proof, [P, Imp(TOP, ab), Imp(And(P, ab), Q)], ab)


def test_erased_schema_proofs_recheck_untyped():
    samples = [
        (reindex_proof(P, Q, 3, 1), [Imp(P, Q)], Imp(P, Q), "FPL"),
        (contradiction_via_top(P, 1), [P, Imp(P, BOT)], BOT, "EBPC"),
        (detachment_via_top(P, Q, 2), [P, Imp(P, Q)], Q, "IPC"),
    ]
    for proof, hyps, goal, system in samples:
        check_nd(system, erase_indices(proof), hyps, goal)


def test_builder_registry():
    system, hyps, goal, proof = SCHEMA_BUILDERS["reindex"][0](["p", "q", "2", "1"])
    assert system == "FPLh"
    check_nd(system, proof, hyps, goal)
    with pytest.raises(ValueError):
        SCHEMA_BUILDERS["reindex"][0](["p", "q"])
    system, hyps, goal, proof = SCHEMA_BUILDERS["rewitness"][0](
        ["p ->1 q", "p ->2 q"])
    check_nd(system, proof, hyps, goal)
    with pytest.raises(ValueError):
        SCHEMA_BUILDERS["rewitness"][0](["p ->1 q", "q ->2 q"])
    system, hyps, goal, proof = SCHEMA_BUILDERS["loeb-via-top"][0]([])
    check_nd(system, proof, hyps, goal)
