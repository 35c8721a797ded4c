"""Text syntax for formulas.

Grammar (identical for all four languages up to the index decorations):

    formula  ::=  or_expr ( ARROW formula )?          right associative
    or_expr  ::=  and_expr ( "|" and_expr )*
    and_expr ::=  unary ( "&" unary )*
    unary    ::=  "~" unary  |  BOX unary  |  primary
    primary  ::=  IDENT | "T" | "F" | "(" formula ")"

ARROW is ``->N`` (decimal index, typed propositional) or bare ``->``
(modal and untyped); BOX is ``[]N`` (typed modal) or bare ``[]`` (untyped
modal). ``~`` exists only in the modal languages. Parsing is total over
the grammar; the index constraints are checked afterwards and reported as
:class:`~hierlog.formulas.IllTyped`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .formulas import (
    BOT,
    TOP,
    And,
    Atom,
    Box,
    Formula,
    Imp,
    Not,
    Or,
    validate_modal,
    validate_modal_untyped,
    validate_prop,
    validate_prop_untyped,
)


class ParseError(ValueError):
    """Grammar violation, with the character position that triggered it."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


@dataclass(frozen=True)
class _Tok:
    kind: str  # ident, top, bot, and, or, not, arrow, box, lp, rp, eof
    pos: int
    value: object = None


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_DIGITS = re.compile(r"[0-9]+")


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "(":
            toks.append(_Tok("lp", i))
            i += 1
        elif c == ")":
            toks.append(_Tok("rp", i))
            i += 1
        elif c == "&":
            toks.append(_Tok("and", i))
            i += 1
        elif c == "|":
            toks.append(_Tok("or", i))
            i += 1
        elif c == "~":
            toks.append(_Tok("not", i))
            i += 1
        elif text.startswith("->", i):
            m = _DIGITS.match(text, i + 2)
            if m:
                toks.append(_Tok("arrow", i, int(m.group())))
                i = m.end()
            else:
                toks.append(_Tok("arrow", i, None))
                i += 2
        elif text.startswith("[]", i):
            m = _DIGITS.match(text, i + 2)
            if m:
                toks.append(_Tok("box", i, int(m.group())))
                i = m.end()
            else:
                toks.append(_Tok("box", i, None))
                i += 2
        else:
            m = _IDENT.match(text, i)
            if not m:
                raise ParseError(f"unexpected character {c!r}", i)
            name = m.group()
            if name == "T":
                toks.append(_Tok("top", i))
            elif name == "F":
                toks.append(_Tok("bot", i))
            else:
                toks.append(_Tok("ident", i, name))
            i = m.end()
    toks.append(_Tok("eof", n))
    return toks


class _Parser:
    def __init__(self, toks: list[_Tok], mode: str):
        self.toks = toks
        self.i = 0
        self.mode = mode  # prop, modal, prop_untyped, modal_untyped
        self.modal = mode in ("modal", "modal_untyped")
        self.indexed_arrows = mode == "prop"
        self.indexed_boxes = mode == "modal"

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def formula(self) -> Formula:
        lhs = self.or_expr()
        t = self.peek()
        if t.kind == "arrow":
            self.next()
            if self.indexed_arrows and t.value is None:
                raise ParseError("implication needs an index here (write ->N)", t.pos)
            if not self.indexed_arrows and t.value is not None:
                raise ParseError("implication takes no index in this language", t.pos)
            rhs = self.formula()
            return Imp(lhs, rhs, t.value)
        return lhs

    def or_expr(self) -> Formula:
        f = self.and_expr()
        while self.peek().kind == "or":
            self.next()
            f = Or(f, self.and_expr())
        return f

    def and_expr(self) -> Formula:
        f = self.unary()
        while self.peek().kind == "and":
            self.next()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        t = self.peek()
        if t.kind == "not":
            if not self.modal:
                raise ParseError("~ is only available in the modal languages", t.pos)
            self.next()
            return Not(self.unary())
        if t.kind == "box":
            if not self.modal:
                raise ParseError("[] is only available in the modal languages", t.pos)
            self.next()
            if self.indexed_boxes and t.value is None:
                raise ParseError("box needs an index here (write []N)", t.pos)
            if not self.indexed_boxes and t.value is not None:
                raise ParseError("box takes no index in this language", t.pos)
            return Box(self.unary(), t.value)
        return self.primary()

    def primary(self) -> Formula:
        t = self.next()
        if t.kind == "ident":
            return Atom(t.value)
        if t.kind == "top":
            return TOP
        if t.kind == "bot":
            return BOT
        if t.kind == "lp":
            f = self.formula()
            t2 = self.next()
            if t2.kind != "rp":
                raise ParseError("expected ')'", t2.pos)
            return f
        raise ParseError(f"expected a formula, found {t.kind}", t.pos)


def _parse(text: str, mode: str) -> Formula:
    p = _Parser(_tokenize(text), mode)
    f = p.formula()
    t = p.peek()
    if t.kind != "eof":
        raise ParseError(f"trailing input starting with {t.kind}", t.pos)
    return f


def parse_prop(text: str) -> Formula:
    """Parse a typed propositional formula; raises ParseError or IllTyped."""
    f = _parse(text, "prop")
    validate_prop(f)
    return f


def parse_modal(text: str) -> Formula:
    """Parse a typed modal formula; raises ParseError or IllTyped."""
    f = _parse(text, "modal")
    validate_modal(f)
    return f


def parse_prop_untyped(text: str) -> Formula:
    """Parse an untyped propositional formula."""
    f = _parse(text, "prop_untyped")
    validate_prop_untyped(f)
    return f


def parse_modal_untyped(text: str) -> Formula:
    """Parse an untyped modal formula."""
    f = _parse(text, "modal_untyped")
    validate_modal_untyped(f)
    return f


PARSERS = {
    "prop": parse_prop,
    "modal": parse_modal,
    "prop-untyped": parse_prop_untyped,
    "modal-untyped": parse_modal_untyped,
}
