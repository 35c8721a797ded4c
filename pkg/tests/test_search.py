import random

import pytest

from hierlog.formulas import And, Atom, BOT, Box, Imp, Not, Or, TOP, max_index
from hierlog.hilbert import instantiate_axiom
from hierlog.parser import parse_modal
from hierlog.search import (
    decide_modal,
    prove_sequent,
    strong_disjunction_check,
)
from hierlog.sequents import Sequent, check_sequent_proof, parse_sequent

from genlib import gen_modal

P, Q = Atom("p"), Atom("q")


def proved(calc, text):
    out = prove_sequent(calc, parse_sequent(text))
    if out.status == "provable":
        check_sequent_proof(calc, out.proof)  # every success must re-check
        from collections import Counter
        s = parse_sequent(text)
        assert Counter(out.proof.ant) == Counter(s.ant)
        assert Counter(out.proof.succ) == Counter(s.succ)
        return True
    assert out.status == "not-provable"
    return False


def test_basic_sequents():
    assert proved("GK4h", "p => p")
    assert not proved("GK4h", "=> p")
    assert proved("GK4h", "F => q")
    assert proved("GK4h", "=> T")
    assert proved("GK4h", "p & q => q & p")
    assert proved("GK4h", "=> p | ~p")
    assert not proved("GK4h", "p | q => p & q")
    assert proved("GK4h", "p, p -> q => q")
    assert proved("GK4h", "p, ~p =>")
    assert not proved("GK4h", "=>")


def test_axiom_instances_per_calculus():
    assert proved("GK4h", "=> []0 p -> []1 []0 p")
    assert proved("GK4h", "=> []0 p -> []1 p")
    assert proved("GK4h", "=> []0(p -> q) -> ([]0 p -> []0 q)")
    assert not proved("GK4h", "=> ~[]0 F")
    assert proved("GKD4h", "=> ~[]0 F")
    assert not proved("GK4h", "=> []0 p -> p")
    assert proved("GS4h", "=> []0 p -> p")
    assert proved("GS4h", "=> []0 p -> []1 []0 p")  # inherited from K4h
    assert not proved("GS4h", "=> p -> []0 p")


def test_spec_pair_examples():
    assert proved("GKD4h", "=> ~[]0 F")
    assert not proved("GK4h", "=> ~[]0 F")
    assert proved("GS4h", "=> []0 p -> p")
    assert not proved("GK4h", "=> []0 p -> p")


def test_duplicates_in_input_multiset():
    s = Sequent((P, P, Box(P, 0)), (Q, Q))
    out = prove_sequent("GK4h", s)
    assert out.status == "not-provable"
    s = Sequent((P, P), (P, P))
    out = prove_sequent("GK4h", s)
    assert out.status == "provable"
    check_sequent_proof("GK4h", out.proof)
    from collections import Counter
    assert Counter(out.proof.ant) == Counter((P, P))
    assert Counter(out.proof.succ) == Counter((P, P))


def test_decide_modal_api():
    assert decide_modal("K4h", [], instantiate_axiom("H", 0, P)).provable is True
    assert decide_modal("K4h", [Box(P, 0)], Box(Box(P, 0), 1)).provable is True
    assert decide_modal("K4h", [], Box(P, 0)).provable is False
    with pytest.raises(ValueError):
        decide_modal("S5h", [], P)


def test_budget_exceeded_is_inconclusive():
    goal = parse_modal("[]3([]2([]1([]0 p -> []0 q) -> []1 p) -> []2 q)")
    d = decide_modal("K4h", [], goal, budget=3)
    assert d.provable is None
    assert d.status == "budget-exceeded"


def test_axiom_schema_completeness_randomized():
    rng = random.Random(42)
    systems = {"K4h": ("H", "Kh", "4h"), "KD4h": ("H", "Kh", "4h", "Dh"),
               "S4h": ("H", "Kh", "4h", "Th")}
    for system, axioms in systems.items():
        for schema in axioms:
            for _ in range(5):
                a = gen_modal(rng, rng.randint(1, 4), max_idx=2)
                b = gen_modal(rng, rng.randint(1, 4), max_idx=2)
                ma, mb = max_index(a), max_index(b)
                floor = max(-1 if ma is None else ma, -1 if mb is None else mb)
                inst = instantiate_axiom(schema, floor + 1 + rng.randint(0, 1),
                                         a, b)
                d = decide_modal(system, [], inst)
                assert d.provable is True, (system, schema, str(inst))
                check_sequent_proof({"K4h": "GK4h", "KD4h": "GKD4h",
                                     "S4h": "GS4h"}[system], d.proof)


def test_monotone_across_calculi():
    goals = ["=> []0 p -> []1 []0 p", "=> []0(p -> q) -> ([]0 p -> []0 q)",
             "p => p", "=> []1([]0 p -> []0 p)"]
    for text in goals:
        assert proved("GK4h", text)
        assert proved("GKD4h", text)
        assert proved("GS4h", text)


def test_strong_disjunction_check():
    r = strong_disjunction_check("K4h", TOP, BOT, 0, 0)
    assert r.disjunction_provable is True and r.side == "left"
    r = strong_disjunction_check("KD4h", Not(Box(BOT, 0)), BOT, 1, 0)
    assert r.disjunction_provable is True and r.side == "left"
    r = strong_disjunction_check("K4h", P, P, 0, 0)
    assert r.disjunction_provable is False and r.side is None


def test_deep_nesting_decides_quickly():
    # iterated positive introspection chains
    f = Box(P, 0)
    for i in range(1, 6):
        assert decide_modal("K4h", [Box(P, 0)], f).provable is True
        f = Box(f, i)
