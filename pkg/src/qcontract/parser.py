"""Tokenizer and recursive-descent parser for the algebra expression syntax.

Grammar (whitespace-insensitive)::

    expr     := ['-'] term (('+'|'-') term)*
    term     := slotprod ('ox' slotprod)*        # 'ox' builds tensor factors
    slotprod := factor ('*' factor)*
    factor   := atom ['^' signed_int]
    atom     := NUMBER | 'i' | 'eps' | NAME | '(' expr ')' | '[' expr ',' expr ']'
    NUMBER   := INT ['/' INT]

``[x,y]`` is the commutator, names resolve to generators or parameters,
``i`` is the imaginary unit and ``eps`` the truncation variable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .freealg import Alphabet, Element, tensor_embed
from .scalars import Scalar

RESERVED = {"i", "eps", "ox"}


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str  # NAME NUMBER OP END
    value: object
    line: int
    col: int


_OPS = set("+-*^()[],")


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch in _OPS:
            tokens.append(Token("OP", ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            num = int(text[start:i])
            den = 1
            if i < n and text[i] == "/":
                j = i + 1
                if j < n and text[j].isdigit():
                    i = j
                    ds = i
                    while i < n and text[i].isdigit():
                        i += 1
                    den = int(text[ds:i])
            tokens.append(Token("NUMBER", Fraction(num, den), line, col))
            col += i - start
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(Token("NAME", text[start:i], line, col))
            col += i - start
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("END", None, line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token], alphabet: Alphabet,
                 params: tuple[str, ...], order: int):
        self.tokens = tokens
        self.pos = 0
        self.alphabet = alphabet
        self.params = params
        self.order = order

    # -- token helpers -----------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def expect_op(self, op: str):
        t = self.next()
        if t.kind != "OP" or t.value != op:
            raise ParseError(f"expected {op!r}", t.line, t.col)

    def fail(self, message: str):
        t = self.peek()
        raise ParseError(message, t.line, t.col)

    # -- element combination with scalar promotion --------------------------

    def _promote(self, a: Element, b: Element) -> tuple[Element, Element]:
        if a.alphabet == b.alphabet:
            return a, b
        if a.alphabet.names == b.alphabet.names:
            if a.alphabet.slot_count == 1 and all(not w for w in a.terms):
                return a.rebind(b.alphabet), b
            if b.alphabet.slot_count == 1 and all(not w for w in b.terms):
                return a, b.rebind(a.alphabet)
        self.fail("mixed tensor ranks in expression")

    def add(self, a, b):
        a, b = self._promote(a, b)
        return a + b

    def sub(self, a, b):
        a, b = self._promote(a, b)
        return a - b

    def mul(self, a, b):
        a, b = self._promote(a, b)
        return a * b

    # -- grammar -----------------------------------------------------------

    def parse_expr(self) -> Element:
        negate = False
        if self.peek().kind == "OP" and self.peek().value == "-":
            self.next()
            negate = True
        acc = self.parse_term()
        if negate:
            acc = -acc
        while self.peek().kind == "OP" and self.peek().value in "+-":
            op = self.next().value
            rhs = self.parse_term()
            acc = self.add(acc, rhs) if op == "+" else self.sub(acc, rhs)
        return acc

    def parse_term(self) -> Element:
        parts = [self.parse_slotprod()]
        while self.peek().kind == "NAME" and self.peek().value == "ox":
            self.next()
            parts.append(self.parse_slotprod())
        if len(parts) == 1:
            return parts[0]
        if len(parts) > 3:
            self.fail("at most three tensor factors supported")
        out = None
        for slot, part in enumerate(parts, start=1):
            if part.alphabet.slot_count != 1:
                self.fail("nested tensor factors are not supported")
            emb = tensor_embed(part, slot, slot_count=len(parts))
            out = emb if out is None else out * emb
        return out

    def parse_slotprod(self) -> Element:
        acc = self.parse_factor()
        while self.peek().kind == "OP" and self.peek().value == "*":
            self.next()
            acc = self.mul(acc, self.parse_factor())
        return acc

    def parse_factor(self) -> Element:
        atom = self.parse_atom()
        if self.peek().kind == "OP" and self.peek().value == "^":
            self.next()
            sign = 1
            if self.peek().kind == "OP" and self.peek().value == "-":
                self.next()
                sign = -1
            t = self.next()
            if t.kind != "NUMBER" or t.value.denominator != 1:
                raise ParseError("integer exponent expected", t.line, t.col)
            exp = sign * t.value.numerator
            return self._power(atom, exp)
        return atom

    def _power(self, x: Element, exp: int) -> Element:
        if exp >= 0:
            out = Element.unit(x.alphabet, self.order)
            for _ in range(exp):
                out = out * x
            return out
        if len(x.terms) == 1 and () in x.terms:
            coeff = x.terms[()]
            try:
                inv = coeff.inverse_of_unit()
            except ValueError:
                self.fail("negative power of a non-invertible scalar")
            out = Element.unit(x.alphabet, self.order)
            for _ in range(-exp):
                out = out.scaled(inv)
            return out
        self.fail("negative powers are only defined for scalar monomials")

    def parse_atom(self) -> Element:
        t = self.next()
        unit = Element.unit(self.alphabet, self.order)
        if t.kind == "NUMBER":
            return unit.scaled(Scalar.from_rational(t.value, self.order))
        if t.kind == "NAME":
            name = t.value
            if name == "i":
                return unit.scaled(Scalar.imag_unit(self.order))
            if name == "eps":
                return unit.scaled(Scalar.eps(self.order))
            if name == "ox":
                raise ParseError("misplaced 'ox'", t.line, t.col)
            if name in self.alphabet.names:
                return Element.generator(self.alphabet, name, self.order)
            if name in self.params:
                return unit.scaled(Scalar.param(name, self.order))
            raise ParseError(f"unknown symbol {name!r}", t.line, t.col)
        if t.kind == "OP" and t.value == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        if t.kind == "OP" and t.value == "[":
            x = self.parse_expr()
            self.expect_op(",")
            y = self.parse_expr()
            self.expect_op("]")
            x, y = self._promote(x, y)
            return x * y - y * x
        raise ParseError("expected an atom", t.line, t.col)


def parse_expression(text: str, alphabet: Alphabet, params: tuple[str, ...],
                     order: int) -> Element:
    """Parse ``text`` into an element over ``alphabet``.

    Raises :class:`ParseError` with line/column on malformed input or
    unknown symbols.
    """
    parser = _Parser(tokenize(text), alphabet, params, order)
    out = parser.parse_expr()
    tail = parser.peek()
    if tail.kind != "END":
        raise ParseError("trailing input", tail.line, tail.col)
    return out
