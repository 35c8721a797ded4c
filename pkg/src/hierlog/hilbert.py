"""Line-based proof checking for the indexed modal Hilbert systems.

A proof is a list of lines; each line is a classical tautology (checked by
truth table over maximal boxed subformulas), an axiom-schema instance with
explicit parameters, a modus ponens step, or a necessitation step. Checking
is purely syntactic: no unification, no search.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

from .formulas import (
    BOT,
    TOP,
    And,
    Atom,
    Bot,
    Box,
    Formula,
    IllTyped,
    Imp,
    Not,
    Or,
    Top,
    max_index,
    render,
    validate_modal,
)

SCHEMAS = ("H", "Kh", "4h", "Dh", "Lh", "Th", "5h")

SYSTEMS: dict[str, frozenset] = {
    "K4h": frozenset({"H", "Kh", "4h"}),
    "KD4h": frozenset({"H", "Kh", "4h", "Dh"}),
    "S4h": frozenset({"H", "Kh", "4h", "Th"}),
    "GLh": frozenset({"H", "Kh", "4h", "Lh"}),
    "KD45h": frozenset({"H", "Kh", "Dh", "4h", "5h"}),
    "S5h": frozenset({"H", "Kh", "4h", "Th", "5h"}),
}


class BadLine(ValueError):
    """First invalid proof line, 1-based, with the reason."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class NotSubset(ValueError):
    pass


@dataclass(frozen=True)
class Line:
    op: str  # taut, axiom, mp, nec
    formula: Optional[Formula] = None  # taut
    schema: Optional[str] = None  # axiom
    n: Optional[int] = None  # axiom / nec index
    a: Optional[Formula] = None  # axiom parameter
    b: Optional[Formula] = None  # axiom parameter (Kh)
    src: Optional[int] = None  # mp minor premise / nec premise, 1-based
    imp: Optional[int] = None  # mp major premise (the implication), 1-based


def instantiate_axiom(schema: str, n: int, a: Optional[Formula] = None,
                      b: Optional[Formula] = None) -> Formula:
    """Build a schema instance; raises IllTyped when an index is too small."""
    if schema not in SCHEMAS:
        raise ValueError(f"unknown axiom schema: {schema!r}")
    if n < 0:
        raise IllTyped(f"box index must be >= 0, got {n}")

    def need(f: Optional[Formula], which: str) -> Formula:
        if f is None:
            raise ValueError(f"schema {schema} needs parameter {which}")
        validate_modal(f)
        m = max_index(f)
        if m is not None and n <= m:
            raise IllTyped(
                f"index {n} must exceed max box index {m} of '{render(f)}'"
            )
        return f

    if schema == "Dh":
        return Not(Box(BOT, n))
    fa = need(a, "a")
    if schema == "H":
        return Imp(Box(fa, n), Box(fa, n + 1))
    if schema == "Kh":
        fb = need(b, "b")
        return Imp(Box(Imp(fa, fb), n), Imp(Box(fa, n), Box(fb, n)))
    if schema == "4h":
        return Imp(Box(fa, n), Box(Box(fa, n), n + 1))
    if schema == "Lh":
        return Imp(Box(Imp(Box(fa, n), fa), n + 1), Box(fa, n))
    if schema == "Th":
        return Imp(Box(fa, n), fa)
    # 5h
    return Imp(Not(Box(fa, n)), Box(Not(Box(fa, n)), n + 1))


def _abstract(f: Formula, table: dict) -> object:
    """Replace maximal boxed subformulas and atoms by variables.

    Returns a nested structure over ('var', key) and connective tuples that
    the truth-table evaluator consumes.
    """
    if isinstance(f, (Box, Atom)):
        table.setdefault(f, len(table))
        return ("var", table[f])
    if isinstance(f, Top):
        return ("const", True)
    if isinstance(f, Bot):
        return ("const", False)
    if isinstance(f, Not):
        return ("not", _abstract(f.arg, table))
    if isinstance(f, And):
        return ("and", _abstract(f.lhs, table), _abstract(f.rhs, table))
    if isinstance(f, Or):
        return ("or", _abstract(f.lhs, table), _abstract(f.rhs, table))
    if isinstance(f, Imp):
        return ("imp", _abstract(f.lhs, table), _abstract(f.rhs, table))
    raise TypeError(f"not a formula: {f!r}")


def _eval(e, env) -> bool:
    tag = e[0]
    if tag == "var":
        return env[e[1]]
    if tag == "const":
        return e[1]
    if tag == "not":
        return not _eval(e[1], env)
    if tag == "and":
        return _eval(e[1], env) and _eval(e[2], env)
    if tag == "or":
        return _eval(e[1], env) or _eval(e[2], env)
    return (not _eval(e[1], env)) or _eval(e[2], env)


def check_tautology(f: Formula, cap: int = 20) -> bool:
    """True iff ``f`` is a classical tautology over its boxed-subformula atoms."""
    validate_modal(f)
    table: dict = {}
    expr = _abstract(f, table)
    k = len(table)
    if k > cap:
        raise ValueError(f"too many abstracted atoms for a truth table: {k} > {cap}")
    return all(_eval(expr, env) for env in product((False, True), repeat=k))


def line_formula(line: Line, previous: list[Formula], lineno: int,
                 system: frozenset) -> Formula:
    """Conclusion of one proof line, checking it against ``previous`` lines."""

    def ref(i: Optional[int], what: str) -> Formula:
        if i is None or not (1 <= i <= len(previous)):
            raise BadLine(lineno, f"{what} must reference an earlier line, got {i}")
        return previous[i - 1]

    if line.op == "taut":
        if line.formula is None:
            raise BadLine(lineno, "taut line without a formula")
        try:
            if not check_tautology(line.formula):
                raise BadLine(lineno, f"not a tautology: '{render(line.formula)}'")
        except IllTyped as e:
            raise BadLine(lineno, str(e))
        return line.formula
    if line.op == "axiom":
        if line.schema not in SCHEMAS:
            raise BadLine(lineno, f"unknown schema {line.schema!r}")
        if line.schema not in system:
            raise BadLine(lineno, f"schema {line.schema} is not in this system")
        try:
            return instantiate_axiom(line.schema, line.n, line.a, line.b)
        except (IllTyped, ValueError) as e:
            raise BadLine(lineno, str(e))
    if line.op == "mp":
        minor = ref(line.src, "mp minor premise")
        major = ref(line.imp, "mp major premise")
        if not (isinstance(major, Imp) and major.lhs == minor):
            raise BadLine(
                lineno,
                f"mp needs '{render(minor)} -> ...' as major premise, got "
                f"'{render(major)}'",
            )
        return major.rhs
    if line.op == "nec":
        prem = ref(line.src, "nec premise")
        if line.n is None or line.n < 0:
            raise BadLine(lineno, f"nec needs an index >= 0, got {line.n}")
        m = max_index(prem)
        if m is not None and line.n <= m:
            raise BadLine(
                lineno,
                f"nec index {line.n} must exceed max box index {m} of "
                f"'{render(prem)}'",
            )
        return Box(prem, line.n)
    raise BadLine(lineno, f"unknown line op {line.op!r}")


def check_hilbert(system: str, lines: list[Line], goal: Formula) -> list[Formula]:
    """Check a proof; returns line conclusions or raises BadLine."""
    if system not in SYSTEMS:
        raise ValueError(f"unknown system: {system!r}")
    schemas = SYSTEMS[system]
    validate_modal(goal)
    if not lines:
        raise BadLine(1, "empty proof")
    derived: list[Formula] = []
    for i, line in enumerate(lines, start=1):
        derived.append(line_formula(line, derived, i, schemas))
    if derived[-1] != goal:
        raise BadLine(
            len(lines),
            f"last line proves '{render(derived[-1])}', not the goal '{render(goal)}'",
        )
    return derived


def conj(formulas: list[Formula]) -> Formula:
    """Right-nested conjunction; empty input yields T."""
    if not formulas:
        return TOP
    out = formulas[-1]
    for f in reversed(formulas[:-1]):
        out = And(f, out)
    return out


def check_derives(system: str, gamma: list[Formula], delta: list[Formula],
                  lines: list[Line], a: Formula) -> list[Formula]:
    """Check that the proof derives ``conj(delta) -> a`` with delta from gamma."""
    missing = [d for d in delta if d not in gamma]
    if missing:
        raise NotSubset(
            f"hypotheses not in the context: {', '.join(render(m) for m in missing)}"
        )
    return check_hilbert(system, lines, Imp(conj(delta), a))


# -- JSON proof format ---------------------------------------------------------

def line_from_json(d: dict, parse) -> Line:
    op = d.get("op")
    if op == "taut":
        return Line("taut", formula=parse(d["formula"]))
    if op == "axiom":
        return Line(
            "axiom",
            schema=d.get("schema"),
            n=d.get("n"),
            a=parse(d["a"]) if "a" in d else None,
            b=parse(d["b"]) if "b" in d else None,
        )
    if op == "mp":
        return Line("mp", src=d.get("from"), imp=d.get("imp"))
    if op == "nec":
        return Line("nec", src=d.get("from"), n=d.get("n"))
    raise ValueError(f"unknown proof line op: {op!r}")


def line_to_json(line: Line) -> dict:
    if line.op == "taut":
        return {"op": "taut", "formula": render(line.formula)}
    if line.op == "axiom":
        d = {"op": "axiom", "schema": line.schema, "n": line.n}
        if line.a is not None:
            d["a"] = render(line.a)
        if line.b is not None:
            d["b"] = render(line.b)
        return d
    if line.op == "mp":
        return {"op": "mp", "from": line.src, "imp": line.imp}
    return {"op": "nec", "from": line.src, "n": line.n}
