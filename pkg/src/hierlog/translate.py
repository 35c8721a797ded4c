"""Translations between the typed and untyped languages.

* ``godel_b``: boxes every atom/constant with ``[]0`` and every indexed
  implication with the box of the same index, landing in the typed modal
  language; ``godel_b_untyped`` is the index-free variant.
* ``forgetful_f``: erases all indices.
* witnesses: an assignment of indices to the implication occurrences of an
  untyped propositional formula, outward strictly increasing; applying a
  witness rebuilds a typed formula.
* ``bhk_unfold``: renders the provability reading of a typed propositional
  formula with uninterpreted ``Pr_n`` predicates over symbolic atom names.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

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
    validate_modal_untyped,
    validate_prop,
)


class ShapeMismatch(ValueError):
    """Witness tree does not mirror the formula's implication structure."""


class MissingAtomName(KeyError):
    """An atom has no entry in the naming map."""


# -- box translation ----------------------------------------------------------

def godel_b(a: Formula) -> Formula:
    """Typed propositional -> typed modal: []0 on leaves, []n on ->n."""
    out = _b(a)
    validate_modal(out)
    return out


def _b(a: Formula) -> Formula:
    if isinstance(a, (Atom, Top, Bot)):
        return Box(a, 0)
    if isinstance(a, And):
        return And(_b(a.lhs), _b(a.rhs))
    if isinstance(a, Or):
        return Or(_b(a.lhs), _b(a.rhs))
    if isinstance(a, Imp):
        return Box(Imp(_b(a.lhs), _b(a.rhs)), a.idx)
    raise IllTyped(f"'{render(a)}' is not a propositional formula")


def godel_b_untyped(a: Formula) -> Formula:
    """Untyped propositional -> untyped modal, same clauses without indices."""
    out = _bu(a)
    validate_modal_untyped(out)
    return out


def _bu(a: Formula) -> Formula:
    if isinstance(a, (Atom, Top, Bot)):
        return Box(a)
    if isinstance(a, And):
        return And(_bu(a.lhs), _bu(a.rhs))
    if isinstance(a, Or):
        return Or(_bu(a.lhs), _bu(a.rhs))
    if isinstance(a, Imp):
        return Box(Imp(_bu(a.lhs), _bu(a.rhs)))
    raise IllTyped(f"'{render(a)}' is not an untyped propositional formula")


def forgetful_f(a: Formula) -> Formula:
    """Erase every implication and box index."""
    if isinstance(a, (Atom, Top, Bot)):
        return a
    if isinstance(a, Not):
        return Not(forgetful_f(a.arg))
    if isinstance(a, And):
        return And(forgetful_f(a.lhs), forgetful_f(a.rhs))
    if isinstance(a, Or):
        return Or(forgetful_f(a.lhs), forgetful_f(a.rhs))
    if isinstance(a, Imp):
        return Imp(forgetful_f(a.lhs), forgetful_f(a.rhs))
    if isinstance(a, Box):
        return Box(forgetful_f(a.arg))
    raise TypeError(f"not a formula: {a!r}")


# -- witnesses ----------------------------------------------------------------

@dataclass(frozen=True)
class WLeaf:
    pass


@dataclass(frozen=True)
class WSplit:
    lhs: "Witness"
    rhs: "Witness"


@dataclass(frozen=True)
class WArrow:
    lhs: "Witness"
    idx: int
    rhs: "Witness"


Witness = Union[WLeaf, WSplit, WArrow]

WLEAF = WLeaf()


def witness_max(w: Witness) -> Optional[int]:
    if isinstance(w, WLeaf):
        return None
    if isinstance(w, WSplit):
        return _max2(witness_max(w.lhs), witness_max(w.rhs))
    return _max2(w.idx, _max2(witness_max(w.lhs), witness_max(w.rhs)))


def _max2(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def validate_witness(w: Witness) -> None:
    """Arrow indices must strictly dominate everything assigned inside them."""
    if isinstance(w, WLeaf):
        return
    if isinstance(w, WSplit):
        validate_witness(w.lhs)
        validate_witness(w.rhs)
        return
    validate_witness(w.lhs)
    validate_witness(w.rhs)
    if w.idx < 1:
        raise IllTyped(f"witness index must be >= 1, got {w.idx}")
    inner = _max2(witness_max(w.lhs), witness_max(w.rhs))
    if inner is not None and w.idx <= inner:
        raise IllTyped(f"witness index {w.idx} does not exceed inner index {inner}")


def witness_of(a: Formula) -> tuple[Formula, Witness]:
    """Split a typed propositional formula into its untyped shape plus witness."""
    if isinstance(a, (Atom, Top, Bot)):
        return a, WLEAF
    if isinstance(a, And):
        lf, lw = witness_of(a.lhs)
        rf, rw = witness_of(a.rhs)
        return And(lf, rf), WSplit(lw, rw)
    if isinstance(a, Or):
        lf, lw = witness_of(a.lhs)
        rf, rw = witness_of(a.rhs)
        return Or(lf, rf), WSplit(lw, rw)
    if isinstance(a, Imp):
        lf, lw = witness_of(a.lhs)
        rf, rw = witness_of(a.rhs)
        return Imp(lf, rf), WArrow(lw, a.idx, rw)
    raise IllTyped(f"'{render(a)}' is not a propositional formula")


def apply_witness(a: Formula, w: Witness) -> Formula:
    """Re-index an untyped propositional formula according to ``w``."""
    out = _apply(a, w)
    validate_prop(out)
    return out


def _apply(a: Formula, w: Witness) -> Formula:
    if isinstance(a, (Atom, Top, Bot)):
        if not isinstance(w, WLeaf):
            raise ShapeMismatch(f"leaf formula '{render(a)}' vs non-leaf witness")
        return a
    if isinstance(a, (And, Or)):
        if not isinstance(w, WSplit):
            raise ShapeMismatch(f"binary formula '{render(a)}' vs {type(w).__name__}")
        ctor = And if isinstance(a, And) else Or
        return ctor(_apply(a.lhs, w.lhs), _apply(a.rhs, w.rhs))
    if isinstance(a, Imp):
        if a.idx is not None:
            raise ShapeMismatch(f"'{render(a)}' already carries indices")
        if not isinstance(w, WArrow):
            raise ShapeMismatch(f"implication '{render(a)}' vs {type(w).__name__}")
        return Imp(_apply(a.lhs, w.lhs), _apply(a.rhs, w.rhs), w.idx)
    raise ShapeMismatch(f"'{render(a)}' is not an untyped propositional formula")


def canonical_witness(a: Formula) -> Witness:
    """Minimal witness: each implication gets one more than its inside max."""
    if isinstance(a, (Atom, Top, Bot)):
        return WLEAF
    if isinstance(a, (And, Or)):
        return WSplit(canonical_witness(a.lhs), canonical_witness(a.rhs))
    if isinstance(a, Imp):
        lw = canonical_witness(a.lhs)
        rw = canonical_witness(a.rhs)
        inner = _max2(witness_max(lw), witness_max(rw))
        return WArrow(lw, (inner or 0) + 1, rw)
    raise IllTyped(f"'{render(a)}' is not an untyped propositional formula")


def witness_to_json(w: Witness) -> dict:
    if isinstance(w, WLeaf):
        return {"w": "leaf"}
    if isinstance(w, WSplit):
        return {"w": "split", "lhs": witness_to_json(w.lhs), "rhs": witness_to_json(w.rhs)}
    return {
        "w": "arrow",
        "idx": w.idx,
        "lhs": witness_to_json(w.lhs),
        "rhs": witness_to_json(w.rhs),
    }


def witness_from_json(d: dict) -> Witness:
    kind = d.get("w")
    if kind == "leaf":
        return WLEAF
    if kind == "split":
        return WSplit(witness_from_json(d["lhs"]), witness_from_json(d["rhs"]))
    if kind == "arrow":
        return WArrow(witness_from_json(d["lhs"]), d["idx"], witness_from_json(d["rhs"]))
    raise ValueError(f"unknown witness node: {d!r}")


# -- symbolic provability reading ---------------------------------------------

def bhk_unfold(a: Formula, names: dict) -> str:
    """Render the provability reading of ``a`` with symbolic atom names.

    ``Pr_n`` stays an uninterpreted predicate name; nothing arithmetical is
    evaluated. Leaves (atoms, T, F) sit under ``Pr_0``; ``->n`` becomes
    ``Pr_n(lhs -> rhs)``; conjunction and disjunction pass through.
    """
    if isinstance(a, Atom):
        if a.name not in names:
            raise MissingAtomName(a.name)
        return f"Pr_0({names[a.name]})"
    if isinstance(a, Top):
        return "Pr_0(T)"
    if isinstance(a, Bot):
        return "Pr_0(F)"
    if isinstance(a, And):
        return f"({bhk_unfold(a.lhs, names)} & {bhk_unfold(a.rhs, names)})"
    if isinstance(a, Or):
        return f"({bhk_unfold(a.lhs, names)} | {bhk_unfold(a.rhs, names)})"
    if isinstance(a, Imp):
        return f"Pr_{a.idx}({bhk_unfold(a.lhs, names)} -> {bhk_unfold(a.rhs, names)})"
    raise IllTyped(f"'{render(a)}' is not a propositional formula")


def boxing_bound(a: Formula) -> int:
    """Smallest n with every box index of the translation of ``a`` below n."""
    return (max_index(a) or 0) + 1
