"""Scalar literal grammar for the CLI/JSON layer.

    expr  := term (('+'|'-') term)*
    term  := unary (('*'|'/') unary)*
    unary := '-' unary | power
    power := atom ('^' '-'? INT)?
    atom  := INT | NAME | '(' expr ')'

Parsing is exact; malformed literals raise ScalarParseError with the
0-based offending position.  format_scalar emits a canonical string the
parser accepts, with terms listed in ascending right-lex order.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, ScalarParseError
from .poly import Poly, rlex_key
from .scalars import LaurentField, Scalar


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        i, n = 0, len(text)
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                self.toks.append(("INT", text[i:j], i))
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.toks.append(("NAME", text[i:j], i))
                i = j
            elif ch in "+-*/^()":
                self.toks.append((ch, ch, i))
                i += 1
            else:
                raise ScalarParseError(f"unexpected character {ch!r}", i)
        self.pos = 0

    def peek(self):
        if self.pos < len(self.toks):
            return self.toks[self.pos]
        return ("EOF", "", len(self.text))

    def next(self):
        t = self.peek()
        self.pos += 1
        return t

    def expect(self, kind: str):
        t = self.next()
        if t[0] != kind:
            raise ScalarParseError(f"expected {kind}, found {t[1]!r}", t[2])
        return t


def parse_scalar(field: LaurentField, text: str) -> Scalar:
    toks = _Tokens(text)
    value = _expr(field, toks)
    tail = toks.peek()
    if tail[0] != "EOF":
        raise ScalarParseError(f"unexpected trailing {tail[1]!r}", tail[2])
    return value


def _expr(field, toks) -> Scalar:
    value = _term(field, toks)
    while toks.peek()[0] in ("+", "-"):
        op, _, pos = toks.next()
        rhs = _term(field, toks)
        value = value + rhs if op == "+" else value - rhs
    return value


def _term(field, toks) -> Scalar:
    value = _unary(field, toks)
    while toks.peek()[0] in ("*", "/"):
        op, _, pos = toks.next()
        rhs = _unary(field, toks)
        if op == "*":
            value = value * rhs
        else:
            if rhs.is_zero:
                raise ScalarParseError("division by zero", pos)
            value = value / rhs
    return value


def _unary(field, toks) -> Scalar:
    if toks.peek()[0] == "-":
        toks.next()
        return -_unary(field, toks)
    return _power(field, toks)


def _power(field, toks) -> Scalar:
    base = _atom(field, toks)
    if toks.peek()[0] != "^":
        return base
    _, _, pos = toks.next()
    sign = 1
    if toks.peek()[0] == "-":
        toks.next()
        sign = -1
    t = toks.expect("INT")
    exp = sign * int(t[1])
    if exp < 0 and base.is_zero:
        raise ScalarParseError("zero to a negative power", pos)
    return base ** exp


def _atom(field, toks) -> Scalar:
    kind, text, pos = toks.next()
    if kind == "INT":
        return field.from_int(int(text))
    if kind == "NAME":
        if text not in field.names:
            raise ScalarParseError(f"unknown variable {text!r}", pos)
        return field.gen(field.names.index(text))
    if kind == "(":
        value = _expr(field, toks)
        toks.expect(")")
        return value
    raise ScalarParseError(f"expected a value, found {text!r}", pos)


# -- printing ----------------------------------------------------------------


def _fmt_coeff_abs(base, c) -> str:
    if base.variant == "rational":
        c = abs(c)
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def _coeff_negative(base, c) -> bool:
    return base.variant == "rational" and c < 0


def format_poly(p: Poly, names) -> str:
    if p.is_zero:
        return "0"
    base = p.field
    pieces: list[str] = []
    for exps, c in sorted(p.coeffs.items(), key=lambda kv: rlex_key(kv[0])):
        mono = "*".join(
            names[i] if e == 1 else f"{names[i]}^{e}"
            for i, e in enumerate(exps) if e
        )
        neg = _coeff_negative(base, c)
        mag = _fmt_coeff_abs(base, c)
        if mono:
            body = mono if mag == "1" else f"{mag}*{mono}"
        else:
            body = mag
        if not pieces:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append((" - " if neg else " + ") + body)
    return "".join(pieces)


def _needs_parens_as_denominator(p: Poly) -> bool:
    if len(p.coeffs) != 1:
        return True
    (exps, c), = p.coeffs.items()
    nvarused = sum(1 for e in exps if e)
    if nvarused == 0:
        return _fmt_coeff_abs(p.field, c) != str(c)  # fractions need parens
    # a single power of a single variable with coefficient 1 binds tightly
    return not (nvarused == 1 and c == p.field.one)


def format_scalar(x: Scalar) -> str:
    names = x.field.names
    num = format_poly(x.num, names)
    if x.den.is_const and x.den.const_value() == x.field.base.one:
        return num
    den = format_poly(x.den, names)
    if len(x.num.coeffs) > 1:
        num = f"({num})"
    if _needs_parens_as_denominator(x.den):
        den = f"({den})"
    return f"{num}/{den}"
