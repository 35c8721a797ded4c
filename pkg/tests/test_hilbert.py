import random
from itertools import product

import pytest

from hierlog.formulas import And, Atom, Bot, Box, IllTyped, Imp, Not, Or, TOP
from hierlog.hilbert import (
    BadLine,
    Line,
    NotSubset,
    SYSTEMS,
    check_derives,
    check_hilbert,
    check_tautology,
    conj,
    instantiate_axiom,
    line_from_json,
    line_to_json,
)
from hierlog.formulas import validate_modal
from hierlog.parser import parse_modal

from genlib import gen_modal

P, Q = Atom("p"), Atom("q")
BOX_P = Box(P, 0)


def test_named_systems():
    assert SYSTEMS["K4h"] == {"H", "Kh", "4h"}
    assert SYSTEMS["KD4h"] == {"H", "Kh", "4h", "Dh"}
    assert SYSTEMS["S4h"] == {"H", "Kh", "4h", "Th"}
    assert SYSTEMS["GLh"] == {"H", "Kh", "4h", "Lh"}
    assert SYSTEMS["KD45h"] == {"H", "Kh", "Dh", "4h", "5h"}
    assert SYSTEMS["S5h"] == {"H", "Kh", "4h", "Th", "5h"}


def test_instantiate_axiom_shapes():
    assert instantiate_axiom("4h", 0, P) == Imp(BOX_P, Box(BOX_P, 1))
    assert instantiate_axiom("H", 1, P) == Imp(Box(P, 1), Box(P, 2))
    assert instantiate_axiom("Lh", 0, P) == Imp(Box(Imp(BOX_P, P), 1), BOX_P)
    assert instantiate_axiom("Th", 2, P) == Imp(Box(P, 2), P)
    assert instantiate_axiom("Dh", 3) == Not(Box(Bot(), 3))
    assert instantiate_axiom("Kh", 0, P, Q) == Imp(
        Box(Imp(P, Q), 0), Imp(Box(P, 0), Box(Q, 0)))
    assert instantiate_axiom("5h", 0, P) == Imp(
        Not(BOX_P), Box(Not(BOX_P), 1))


def test_instantiate_axiom_index_constraints():
    with pytest.raises(IllTyped):
        instantiate_axiom("Kh", 0, BOX_P, Q)
    with pytest.raises(IllTyped):
        instantiate_axiom("4h", 0, BOX_P)
    instantiate_axiom("4h", 1, BOX_P)
    with pytest.raises(ValueError):
        instantiate_axiom("Kh", 0, P)  # missing second parameter


def test_instantiated_axioms_are_wellformed():
    from hierlog.formulas import max_index

    rng = random.Random(7)
    for _ in range(200):
        a = gen_modal(rng, rng.randint(1, 6), max_idx=3)
        b = gen_modal(rng, rng.randint(1, 6), max_idx=3)
        ma, mb = max_index(a), max_index(b)
        floor = max(-1 if ma is None else ma, -1 if mb is None else mb)
        n = floor + 1 + rng.randint(0, 2)
        for schema in ("H", "Kh", "4h", "Dh", "Lh", "Th", "5h"):
            inst = instantiate_axiom(schema, n, a, b)
            validate_modal(inst)


def test_check_tautology():
    assert check_tautology(Or(BOX_P, Not(BOX_P)))
    assert not check_tautology(instantiate_axiom("4h", 0, P))
    assert check_tautology(Imp(Bot(), P))
    assert check_tautology(parse_modal("[]0 p -> []0 p"))
    assert not check_tautology(parse_modal("[]0(p -> p)"))  # boxed, so opaque


def test_check_tautology_against_bruteforce():
    # independent evaluator: enumerate assignments over boxed subterms/atoms
    def opaque(f):
        if isinstance(f, (Box, Atom)):
            return {f}
        if isinstance(f, Not):
            return opaque(f.arg)
        if isinstance(f, (And, Or, Imp)):
            return opaque(f.lhs) | opaque(f.rhs)
        return set()

    def ev(f, env):
        if isinstance(f, (Box, Atom)):
            return env[f]
        if isinstance(f, Not):
            return not ev(f.arg, env)
        if isinstance(f, And):
            return ev(f.lhs, env) and ev(f.rhs, env)
        if isinstance(f, Or):
            return ev(f.lhs, env) or ev(f.rhs, env)
        if isinstance(f, Imp):
            return (not ev(f.lhs, env)) or ev(f.rhs, env)
        return not isinstance(f, Bot)

    rng = random.Random(11)
    for _ in range(150):
        f = gen_modal(rng, rng.randint(1, 9), max_idx=2)
        keys = sorted(opaque(f), key=str)
        expected = all(
            ev(f, dict(zip(keys, bits)))
            for bits in product((False, True), repeat=len(keys))
        )
        assert check_tautology(f) == expected


def test_check_hilbert_basic():
    goal = instantiate_axiom("4h", 0, P)
    check_hilbert("K4h", [Line("axiom", schema="4h", n=0, a=P)], goal)
    with pytest.raises(BadLine) as e:
        check_hilbert("K4h", [Line("axiom", schema="Th", n=0, a=P)],
                      instantiate_axiom("Th", 0, P))
    assert "not in this system" in str(e.value)


def test_check_hilbert_mp_and_nec():
    t = Imp(P, Imp(Q, P))
    lines = [
        Line("taut", formula=t),
        Line("nec", src=1, n=0),
        Line("axiom", schema="Kh", n=0, a=P, b=Imp(Q, P)),
        Line("mp", src=2, imp=3),
    ]
    goal = Imp(Box(P, 0), Box(Imp(Q, P), 0))
    check_hilbert("K4h", lines, goal)


def test_nec_index_constraint():
    lines = [
        Line("taut", formula=Imp(BOX_P, BOX_P)),
        Line("nec", src=1, n=0),
    ]
    with pytest.raises(BadLine) as e:
        check_hilbert("K4h", lines, Box(Imp(BOX_P, BOX_P), 1))
    assert e.value.line == 2 and "index" in e.value.reason
    lines = [Line("taut", formula=Imp(BOX_P, BOX_P)), Line("nec", src=1, n=1)]
    check_hilbert("K4h", lines, Box(Imp(BOX_P, BOX_P), 1))


def test_bad_references_and_goal():
    with pytest.raises(BadLine):
        check_hilbert("K4h", [Line("mp", src=1, imp=2)], P)
    with pytest.raises(BadLine) as e:
        check_hilbert("K4h", [Line("taut", formula=Imp(P, P))], Q)
    assert "goal" in str(e.value)
    with pytest.raises(BadLine):
        check_hilbert("K4h", [Line("taut", formula=P)], P)  # not a tautology


def test_conj():
    assert conj([]) == TOP
    assert conj([P]) == P
    assert conj([P, Q, BOX_P]) == And(P, And(Q, BOX_P))


def test_check_derives():
    goal_imp = Imp(BOX_P, Box(BOX_P, 1))
    lines = [
        Line("axiom", schema="4h", n=0, a=P),
        Line("taut", formula=Imp(goal_imp, goal_imp)),
        Line("mp", src=1, imp=2),
    ]
    check_derives("K4h", [BOX_P], [BOX_P], lines, Box(BOX_P, 1))
    with pytest.raises(NotSubset):
        check_derives("K4h", [BOX_P], [Box(Q, 0)], lines, Box(BOX_P, 1))
    # empty context: conj(()) is T
    t = Imp(TOP, Imp(P, P))
    check_derives("K4h", [], [], [Line("taut", formula=t)], Imp(P, P))


def test_line_json_roundtrip():
    lines = [
        Line("taut", formula=Imp(P, P)),
        Line("axiom", schema="Kh", n=0, a=P, b=Q),
        Line("mp", src=1, imp=2),
        Line("nec", src=3, n=2),
    ]
    for line in lines:
        assert line_from_json(line_to_json(line), parse_modal) == line
