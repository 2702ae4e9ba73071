"""Parsing and formatting of the singularity and polynomial notation.

Grammar (whitespace-insensitive):

    cyclic quotient   1/m(a1,...,an)
    hyperquotient     1/m(a0,...,an;e){g=<polynomial>}
    weight system     1/m(a1,...,an)      (positive entries, never reduced)
    polynomial        integer coefficients; variables x1..x9, or x{10} and up
                      with the brace delimiter; ^ for powers; + and - between
                      terms; * between factors is optional
    rational          p/q or a bare integer

Parse errors carry a 1-based character position.  Weights may be negative in
quotient notation and are reduced mod m by the type constructors.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NotationError
from .quotient import CyclicQuotientType, HyperquotientType, Polynomial
from .wideal import WeightSystem


class _Scanner:
    def __init__(self, text: str, offset: int = 0):
        self.text = text
        self.pos = 0
        self.offset = offset  # for error positions inside embedded fragments

    def error(self, message: str, at: int | None = None):
        position = self.offset + (self.pos if at is None else at) + 1
        raise NotationError(message, position)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        if ch:
            self.pos += 1
        return ch

    def expect(self, literal: str) -> None:
        ch = self.peek()
        if ch != literal:
            found = repr(ch) if ch else "end of input"
            self.error(f"expected {literal!r}, found {found}")
        self.pos += 1

    def at_end(self) -> bool:
        return self.peek() == ""

    def take_unsigned(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            found = repr(self.text[start]) if start < len(self.text) else "end of input"
            self.error(f"expected an integer, found {found}", at=start)
        return int(self.text[start : self.pos])

    def take_signed(self) -> int:
        sign = 1
        ch = self.peek()
        if ch in "+-":
            self.pos += 1
            sign = -1 if ch == "-" else 1
        return sign * self.take_unsigned()


def _parse_prefix(sc: _Scanner) -> tuple[int, list]:
    """The shared '1/m(w1,...,wk' head; leaves the scanner on ';' or ')'."""
    sc.expect("1")
    sc.expect("/")
    m = sc.take_unsigned()
    sc.expect("(")
    weights = [sc.take_signed()]
    while sc.peek() == ",":
        sc.pos += 1
        weights.append(sc.take_signed())
    return m, weights


def parse_singularity(text: str):
    """Parse quotient notation into a cyclic quotient or hyperquotient type."""
    sc = _Scanner(text)
    m, weights = _parse_prefix(sc)
    if sc.peek() == ";":
        sc.pos += 1
        e = sc.take_signed()
        sc.expect(")")
        sc.expect("{")
        sc.expect("g")
        sc.expect("=")
        sc.skip_ws()
        brace = text.find("}", sc.pos)
        if brace < 0:
            sc.error("missing closing '}' after the equation", at=len(text))
        body = text[sc.pos : brace]
        g = parse_polynomial(body, nvars=len(weights), offset=sc.pos)
        sc.pos = brace + 1
        if not sc.at_end():
            sc.error("trailing input after the hyperquotient")
        return HyperquotientType(CyclicQuotientType(m, tuple(weights)), g, e)
    sc.expect(")")
    if not sc.at_end():
        sc.error("trailing input after the quotient type")
    return CyclicQuotientType(m, tuple(weights))


def parse_weight_system(text: str) -> WeightSystem:
    """Parse '1/m(a1,...,an)' as blow-up weights: positive, gcd 1, unreduced."""
    sc = _Scanner(text)
    m, weights = _parse_prefix(sc)
    sc.expect(")")
    if not sc.at_end():
        sc.error("trailing input after the weight system")
    return WeightSystem(tuple(weights), m)


def parse_polynomial(text: str, nvars: int, offset: int = 0) -> Polynomial:
    """Parse a polynomial in variables x1..x{nvars} with integer coefficients."""
    sc = _Scanner(text, offset=offset)
    terms: dict = {}
    if sc.at_end():
        sc.error("empty polynomial")

    first = True
    while not sc.at_end():
        sign = 1
        ch = sc.peek()
        if ch in "+-":
            sc.pos += 1
            sign = -1 if ch == "-" else 1
        elif not first:
            sc.error(f"expected '+' or '-' between terms, found {ch!r}")
        first = False

        coeff = 1
        has_body = False
        if sc.peek().isdigit():
            coeff = sc.take_unsigned()
            has_body = True
        exponents = [0] * nvars
        while True:
            if sc.peek() == "*":
                sc.pos += 1
            if sc.peek() != "x":
                break
            sc.pos += 1
            ch = sc.peek()
            if ch == "{":
                sc.pos += 1
                idx = sc.take_unsigned()
                sc.expect("}")
            elif ch.isdigit() and ch != "0":
                sc.pos += 1
                idx = int(ch)
            else:
                sc.error("expected a variable index after 'x'")
            if not 1 <= idx <= nvars:
                sc.error(f"variable x{idx} is out of range for {nvars} variables")
            power = 1
            if sc.peek() == "^":
                sc.pos += 1
                power = sc.take_unsigned()
                if power < 1:
                    sc.error("exponents must be positive")
            exponents[idx - 1] += power
            has_body = True
        if not has_body:
            sc.error("expected a coefficient or a variable")
        key = tuple(exponents)
        terms[key] = terms.get(key, 0) + sign * coeff

    return Polynomial(nvars, {k: Fraction(v) for k, v in terms.items() if v != 0})


def parse_rational(text: str) -> Fraction:
    """Parse 'p/q' or a bare integer as an exact rational."""
    sc = _Scanner(text)
    num = sc.take_signed()
    if sc.peek() == "/":
        sc.pos += 1
        den = sc.take_signed()
        if den == 0:
            sc.error("zero denominator")
        value = Fraction(num, den)
    else:
        value = Fraction(num)
    if not sc.at_end():
        sc.error("trailing input after the rational")
    return value


def format_rational(value: Fraction) -> str:
    """Canonical 'p/q' spelling (the denominator is kept even when it is 1)."""
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"
