"""Polynomial expression parser for job files and fixtures.

Accepts integer and rational literals (``3/2``), the imaginary unit ``i``
(``1/2*i``), declared variable identifiers, ``+ - * / ^``, and parentheses.
Division is only allowed by nonzero constants.  Produces a TruncatedSeries
in the supplied ring.
"""

import re

from .errors import ParseError, ValidationError
from .gaussian import GaussianRational

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*/^()]))")


class _Token:
    __slots__ = ("kind", "value", "line", "column")

    def __init__(self, kind, value, line, column):
        self.kind = kind
        self.value = value
        self.line = line
        self.column = column


def _tokenize(text, line=1):
    tokens = []
    pos = 0
    col_base = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            column = pos + len(text[pos:]) - len(stripped) + 1 - col_base
            raise ParseError("unexpected character %r" % stripped[0], line, column)
        if m.group(1) is not None:
            tokens.append(_Token("int", int(m.group(1)), line, m.start(1) + 1 - col_base))
        elif m.group(2) is not None:
            tokens.append(_Token("ident", m.group(2), line, m.start(2) + 1 - col_base))
        else:
            tokens.append(_Token("op", m.group(3), line, m.start(3) + 1 - col_base))
        pos = m.end()
    tokens.append(_Token("end", None, line, len(text) + 1 - col_base))
    return tokens


class _Parser:
    def __init__(self, tokens, ring):
        self.tokens = tokens
        self.pos = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op):
        tok = self.peek()
        if tok.kind == "op" and tok.value == op:
            return self.advance()
        raise ParseError("expected %r" % op, tok.line, tok.column)

    def parse_expr(self):
        value = self.parse_term()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.value in "+-":
                self.advance()
                rhs = self.parse_term()
                value = value + rhs if tok.value == "+" else value - rhs
            else:
                return value

    def parse_term(self):
        value = self.parse_factor()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.value in "*/":
                self.advance()
                rhs = self.parse_factor()
                if tok.value == "*":
                    value = value * rhs
                else:
                    const = rhs.constant_term()
                    if rhs != const or not const:
                        raise ParseError(
                            "division only by nonzero constants", tok.line, tok.column
                        )
                    value = value / const
            else:
                return value

    def parse_factor(self):
        tok = self.peek()
        negate = False
        while tok.kind == "op" and tok.value in "+-":
            self.advance()
            if tok.value == "-":
                negate = not negate
            tok = self.peek()
        value = self.parse_atom()
        tok = self.peek()
        if tok.kind == "op" and tok.value == "^":
            self.advance()
            exp_tok = self.peek()
            if exp_tok.kind != "int":
                raise ParseError(
                    "exponent must be an integer literal", exp_tok.line, exp_tok.column
                )
            self.advance()
            value = value ** exp_tok.value
        return -value if negate else value

    def parse_atom(self):
        tok = self.advance()
        if tok.kind == "int":
            return self.ring.one() * tok.value
        if tok.kind == "ident":
            if tok.value == "i":
                if self.ring.field == "exact":
                    return self.ring.one() * GaussianRational(0, 1)
                return self.ring.one() * 1j
            if tok.value in self.ring.varnames:
                return self.ring.var(tok.value)
            raise ValidationError(
                "unknown variable %r" % tok.value, field=tok.value
            )
        if tok.kind == "op" and tok.value == "(":
            value = self.parse_expr()
            self.expect_op(")")
            return value
        raise ParseError(
            "unexpected token %r" % (tok.value,), tok.line, tok.column
        )


def parse_polynomial(text, ring, line=1):
    """Parse ``text`` into a TruncatedSeries of ``ring``."""
    parser = _Parser(_tokenize(text, line), ring)
    value = parser.parse_expr()
    tok = parser.peek()
    if tok.kind != "end":
        raise ParseError("trailing input %r" % (tok.value,), tok.line, tok.column)
    return value


def parse_rational(text, line=1):
    """Parse a (possibly signed) rational literal like ``-3/5``."""
    from fractions import Fraction

    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError("invalid rational literal %r" % text, line, 1)
