"""Formula ASTs for the four object languages.

Two typed languages and their untyped counterparts share one set of node
classes:

* typed propositional: every implication carries an index ``>= 1`` that is
  strictly greater than every implication index inside either operand;
  no negation, no boxes;
* typed modal: every box carries an index ``>= 0`` strictly greater than
  every box index in its scope; implication is unindexed and negation is
  primitive;
* untyped propositional / untyped modal: the same shapes with the indices
  erased (``idx is None``).

Values are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union


class IllTyped(ValueError):
    """Raised when a formula violates the index stratification rules."""


class _Node:
    __slots__ = ()

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Atom(_Node):
    name: str


@dataclass(frozen=True)
class Top(_Node):
    pass


@dataclass(frozen=True)
class Bot(_Node):
    pass


@dataclass(frozen=True)
class Not(_Node):
    arg: "Formula"


@dataclass(frozen=True)
class And(_Node):
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Or(_Node):
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Imp(_Node):
    lhs: "Formula"
    rhs: "Formula"
    idx: Optional[int] = None


@dataclass(frozen=True)
class Box(_Node):
    arg: "Formula"
    idx: Optional[int] = None


Formula = Union[Atom, Top, Bot, Not, And, Or, Imp, Box]

TOP = Top()
BOT = Bot()


def max_index(f: Formula) -> Optional[int]:
    """Largest index occurring in ``f``, or None for index-free formulas."""
    best: Optional[int] = None
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, (Imp, Box)):
            if g.idx is not None and (best is None or g.idx > best):
                best = g.idx
        if isinstance(g, Not):
            stack.append(g.arg)
        elif isinstance(g, (And, Or, Imp)):
            stack.append(g.lhs)
            stack.append(g.rhs)
        elif isinstance(g, Box):
            stack.append(g.arg)
    return best


def _above(idx: Optional[int], bound: Optional[int]) -> bool:
    # None compares below every index
    return bound is None or (idx is not None and idx > bound)


def validate_prop(f: Formula) -> None:
    """Check membership in the typed propositional language; raise IllTyped."""
    if isinstance(f, (Atom, Top, Bot)):
        return
    if isinstance(f, (And, Or)):
        validate_prop(f.lhs)
        validate_prop(f.rhs)
        return
    if isinstance(f, Imp):
        validate_prop(f.lhs)
        validate_prop(f.rhs)
        if f.idx is None:
            raise IllTyped(f"implication without index in '{render(f)}'")
        if f.idx < 1:
            raise IllTyped(f"implication index must be >= 1, got {f.idx} in '{render(f)}'")
        inner = _max2(max_index(f.lhs), max_index(f.rhs))
        if not _above(f.idx, inner):
            raise IllTyped(
                f"implication index {f.idx} must exceed every inner index: "
                f"max inner index is {inner} in '{render(f)}'"
            )
        return
    raise IllTyped(f"'{render(f)}' is not a propositional formula")


def validate_modal(f: Formula) -> None:
    """Check membership in the typed modal language; raise IllTyped."""
    if isinstance(f, (Atom, Top, Bot)):
        return
    if isinstance(f, Not):
        validate_modal(f.arg)
        return
    if isinstance(f, (And, Or)):
        validate_modal(f.lhs)
        validate_modal(f.rhs)
        return
    if isinstance(f, Imp):
        if f.idx is not None:
            raise IllTyped(f"modal implication carries no index, got {f.idx} in '{render(f)}'")
        validate_modal(f.lhs)
        validate_modal(f.rhs)
        return
    if isinstance(f, Box):
        validate_modal(f.arg)
        if f.idx is None:
            raise IllTyped(f"box without index in '{render(f)}'")
        if f.idx < 0:
            raise IllTyped(f"box index must be >= 0, got {f.idx}")
        inner = max_index(f.arg)
        if not _above(f.idx, inner):
            raise IllTyped(
                f"box index {f.idx} must exceed every inner box index: "
                f"max inner index is {inner} in '{render(f)}'"
            )
        return
    raise IllTyped(f"'{render(f)}' is not a modal formula")


def validate_prop_untyped(f: Formula) -> None:
    """Check membership in the untyped propositional language."""
    if isinstance(f, (Atom, Top, Bot)):
        return
    if isinstance(f, (And, Or)):
        validate_prop_untyped(f.lhs)
        validate_prop_untyped(f.rhs)
        return
    if isinstance(f, Imp):
        if f.idx is not None:
            raise IllTyped(f"untyped implication carries no index in '{render(f)}'")
        validate_prop_untyped(f.lhs)
        validate_prop_untyped(f.rhs)
        return
    raise IllTyped(f"'{render(f)}' is not an untyped propositional formula")


def validate_modal_untyped(f: Formula) -> None:
    """Check membership in the untyped modal language."""
    if isinstance(f, (Atom, Top, Bot)):
        return
    if isinstance(f, Not):
        validate_modal_untyped(f.arg)
        return
    if isinstance(f, (And, Or, Imp)):
        if isinstance(f, Imp) and f.idx is not None:
            raise IllTyped(f"untyped implication carries no index in '{render(f)}'")
        validate_modal_untyped(f.lhs)
        validate_modal_untyped(f.rhs)
        return
    if isinstance(f, Box):
        if f.idx is not None:
            raise IllTyped(f"untyped box carries no index in '{render(f)}'")
        validate_modal_untyped(f.arg)
        return
    raise IllTyped(f"'{render(f)}' is not an untyped modal formula")


def _max2(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def neg(n: int, a: Formula) -> Imp:
    """Indexed propositional negation: sugar for ``a ->n F``."""
    if not _above(n, max_index(a)):
        raise IllTyped(
            f"negation index {n} must exceed every index in '{render(a)}' "
            f"(max is {max_index(a)})"
        )
    out = Imp(a, BOT, n)
    validate_prop(out)
    return out


def atoms(f: Formula) -> set:
    """Names of the atoms occurring in ``f``."""
    out: set = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Atom):
            out.add(g.name)
        elif isinstance(g, Not):
            stack.append(g.arg)
        elif isinstance(g, (And, Or, Imp)):
            stack.append(g.lhs)
            stack.append(g.rhs)
        elif isinstance(g, Box):
            stack.append(g.arg)
    return out


# -- rendering ---------------------------------------------------------------
#
# Binary connectives are always parenthesized except for an implication at
# the very top, so every rendering re-parses to the same tree.

def render(f: Formula) -> str:
    if isinstance(f, Imp):
        return f"{_render(f.lhs)} {_arrow(f)} {_render(f.rhs)}"
    return _render(f)


def _arrow(f: Imp) -> str:
    return "->" if f.idx is None else f"->{f.idx}"


def _render(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Top):
        return "T"
    if isinstance(f, Bot):
        return "F"
    if isinstance(f, Not):
        return "~" + _render(f.arg)
    if isinstance(f, And):
        return f"({_render(f.lhs)} & {_render(f.rhs)})"
    if isinstance(f, Or):
        return f"({_render(f.lhs)} | {_render(f.rhs)})"
    if isinstance(f, Imp):
        return f"({_render(f.lhs)} {_arrow(f)} {_render(f.rhs)})"
    if isinstance(f, Box):
        tag = "[]" if f.idx is None else f"[]{f.idx}"
        body = _render(f.arg)
        return tag + body if body.startswith("(") else f"{tag} {body}"
    raise TypeError(f"not a formula: {f!r}")


# -- JSON AST ----------------------------------------------------------------

def to_json(f: Formula) -> dict:
    """AST as plain dicts with a ``tag`` field and ``idx`` where applicable."""
    if isinstance(f, Atom):
        return {"tag": "atom", "name": f.name}
    if isinstance(f, Top):
        return {"tag": "top"}
    if isinstance(f, Bot):
        return {"tag": "bot"}
    if isinstance(f, Not):
        return {"tag": "not", "arg": to_json(f.arg)}
    if isinstance(f, And):
        return {"tag": "and", "lhs": to_json(f.lhs), "rhs": to_json(f.rhs)}
    if isinstance(f, Or):
        return {"tag": "or", "lhs": to_json(f.lhs), "rhs": to_json(f.rhs)}
    if isinstance(f, Imp):
        d = {"tag": "imp", "lhs": to_json(f.lhs), "rhs": to_json(f.rhs)}
        if f.idx is not None:
            d["idx"] = f.idx
        return d
    if isinstance(f, Box):
        d = {"tag": "box", "arg": to_json(f.arg)}
        if f.idx is not None:
            d["idx"] = f.idx
        return d
    raise TypeError(f"not a formula: {f!r}")


def from_json(d: dict) -> Formula:
    """Inverse of :func:`to_json`; raises ValueError on malformed input."""
    if not isinstance(d, dict) or "tag" not in d:
        raise ValueError(f"not a formula object: {d!r}")
    tag = d["tag"]
    if tag == "atom":
        return Atom(d["name"])
    if tag == "top":
        return TOP
    if tag == "bot":
        return BOT
    if tag == "not":
        return Not(from_json(d["arg"]))
    if tag == "and":
        return And(from_json(d["lhs"]), from_json(d["rhs"]))
    if tag == "or":
        return Or(from_json(d["lhs"]), from_json(d["rhs"]))
    if tag == "imp":
        return Imp(from_json(d["lhs"]), from_json(d["rhs"]), d.get("idx"))
    if tag == "box":
        return Box(from_json(d["arg"]), d.get("idx"))
    raise ValueError(f"unknown formula tag: {tag!r}")
