import pytest

from hierlog.formulas import And, Atom, BOT, Box, Imp, Not, Or, TOP
from hierlog.parser import ParseError
from hierlog.sequents import (
    BadSequentNode,
    CALCULI,
    Sequent,
    SProof,
    check_sequent_proof,
    contract,
    parse_sequent,
    proof_from_json,
    proof_to_json,
    render_proof,
    render_sequent,
    weaken,
)

P, Q = Atom("p"), Atom("q")
BP = Box(P, 0)


def test_parse_and_render_sequents():
    s = parse_sequent("p, []0 p => q")
    assert s == Sequent((P, BP), (Q,))
    assert render_sequent(s) == "p, []0 p => q"
    assert parse_sequent("=> p") == Sequent((), (P,))
    assert parse_sequent("p =>") == Sequent((P,), ())
    assert parse_sequent(" => ") == Sequent((), ())
    with pytest.raises(ParseError):
        parse_sequent("p, q")
    with pytest.raises(ParseError):
        parse_sequent("p => q => r")


def test_axioms():
    check_sequent_proof("GK4h", SProof("ax", (P,), (P,)))
    f = Imp(BP, Q)
    check_sequent_proof("GK4h", SProof("ax", (f,), (f,)))
    check_sequent_proof("GK4h", SProof("ax_bot", (BOT,), ()))
    check_sequent_proof("GK4h", SProof("ax_top", (), (TOP,)))
    with pytest.raises(BadSequentNode):
        check_sequent_proof("GK4h", SProof("ax", (P,), (Q,)))
    with pytest.raises(BadSequentNode):
        check_sequent_proof("GK4h", SProof("ax", (P, Q), (P,)))


def test_weakening_contraction_cut():
    ax = SProof("ax", (P,), (P,))
    w = SProof("wl", (P, Q), (P,), (ax,), principal=Q)
    check_sequent_proof("GK4h", w)
    c = SProof("cl", (P,), (P,), (SProof("wl", (P, P), (P,), (ax,), principal=P),),
               principal=P)
    check_sequent_proof("GK4h", c)
    cut = SProof("cut", (P,), (Q,), (
        SProof("wr", (P,), (Q, Q), (SProof("wr", (P,), (Q,), (
            SProof("ax", (P,), (P,)),), principal=Q),), principal=Q),
    ), principal=P)
    with pytest.raises(BadSequentNode):
        check_sequent_proof("GK4h", cut)  # wrong shape on purpose
    good_cut = SProof("cut", (P,), (P,), (
        SProof("ax", (P,), (P,)),
        SProof("ax", (P,), (P,)),
    ), principal=P)
    check_sequent_proof("GK4h", good_cut)


def test_propositional_rules_checked():
    # and_l
    prem = SProof("ax", (P,), (P,))
    node = SProof("and_l", (And(P, Q),), (P,), (prem,), principal=And(P, Q), which=0)
    check_sequent_proof("GK4h", node)
    with pytest.raises(BadSequentNode):
        check_sequent_proof(
            "GK4h",
            SProof("and_l", (And(P, Q),), (P,), (prem,), principal=And(P, Q),
                   which=1))
    # imp_r over an axiom with context
    prem = SProof("wr", (P,), (Q, P), (SProof("ax", (P,), (P,)),), principal=Q)
    node = SProof("imp_r", (), (P, Imp(P, Q)), (prem,), principal=Imp(P, Q))
    # conclusion: => p, p -> q needs premise p => q, p
    check_sequent_proof("GK4h", node)
    # neg rules
    prem = SProof("ax", (P,), (P,))
    node = SProof("neg_l", (P, Not(P)), (), (
        SProof("ax", (P,), (P,)),), principal=Not(P))
    check_sequent_proof("GK4h", node)
    node = SProof("neg_r", (), (P, Not(P)), (
        SProof("ax", (P,), (P,)),), principal=Not(P))
    check_sequent_proof("GK4h", node)


def test_box4_rule_shape():
    # []0 p => []1 []0 p via the box-right rule with a carried context
    prem = SProof("wl", (P, BP), (BP,), (SProof("ax", (BP,), (BP,)),), principal=P)
    node = SProof("box4_r", (BP,), (Box(BP, 1),), (prem,), principal=Box(BP, 1))
    check_sequent_proof("GK4h", node)
    # same-index boxes unbox into the sigma role
    prem = SProof("ax", (P,), (P,))
    node = SProof("box4_r", (BP,), (Box(P, 0),), (prem,), principal=Box(P, 0))
    check_sequent_proof("GK4h", node)
    # an index violation: context box at the principal's level stays boxed
    bad_prem = SProof("ax", (BP,), (BP,))
    bad = SProof("box4_r", (BP,), (Box(Q, 0),), (bad_prem,), principal=Box(Q, 0))
    with pytest.raises(BadSequentNode):
        check_sequent_proof("GK4h", bad)
    # boxes above the principal index are not allowed at all
    high = SProof("box4_r", (Box(P, 2),), (Box(Q, 1),), (
        SProof("ax", (Q,), (Q,)),), principal=Box(Q, 1))
    with pytest.raises(BadSequentNode) as e:
        check_sequent_proof("GK4h", high)
    assert "IndexViolation(2, 1)" in str(e.value)


def test_boxd_rule_shape():
    prem = SProof("ax_bot", (BOT,), ())
    prem = SProof("wl", (BOT, Box(BOT, 0)), (), (prem,), principal=Box(BOT, 0))
    node = SProof("boxd_r", (Box(BOT, 0),), (), (prem,), n=1)
    check_sequent_proof("GKD4h", node)
    with pytest.raises(BadSequentNode):
        check_sequent_proof("GK4h", node)  # rule not in GK4h


def test_boxs_and_boxl_rules():
    # [] keeps lower boxes boxed in the premise
    prem = SProof("wl", (P, Box(Q, 0)), (P,), (SProof("ax", (P,), (P,)),),
                  principal=Box(Q, 0))
    node = SProof("boxs_r", (Box(P, 1), Box(Q, 0)), (Box(P, 1),), (prem,),
                  principal=Box(P, 1))
    check_sequent_proof("GS4h", node)
    with pytest.raises(BadSequentNode):
        check_sequent_proof("GK4h", node)
    unbox = SProof("box_l", (BP,), (P,), (SProof("ax", (P,), (P,)),), principal=BP)
    check_sequent_proof("GS4h", unbox)
    with pytest.raises(BadSequentNode):
        check_sequent_proof("GK4h", unbox)


def test_weaken_contract_helpers():
    ax = SProof("ax", (P,), (P,))
    big = weaken(ax, (BP, P, Q), (P, Q))
    assert big.sequent() == Sequent((BP, P, Q), (P, Q))
    check_sequent_proof("GK4h", big)
    doubled = weaken(ax, (P, P, Q), (P,))
    back = contract(doubled, (P, Q), (P,))
    assert sorted(back.ant, key=str) == sorted((P, Q), key=str)
    check_sequent_proof("GK4h", back)


def test_proof_json_roundtrip():
    prem = SProof("wl", (P, BP), (BP,), (SProof("ax", (BP,), (BP,)),), principal=P)
    node = SProof("box4_r", (BP,), (Box(BP, 1),), (prem,), principal=Box(BP, 1))
    doc = proof_to_json(node)
    assert proof_from_json(doc) == node
    text = render_proof(node)
    assert "[box4_r]" in text and "[ax]" in text


def test_calculi_inventories():
    assert "box4_r" in CALCULI["GK4h"] and "boxd_r" not in CALCULI["GK4h"]
    assert "boxd_r" in CALCULI["GKD4h"]
    assert "box4_r" not in CALCULI["GS4h"]
    assert {"boxs_r", "box_l"} <= CALCULI["GS4h"]
    assert "cut" in CALCULI["GK4h"]
