"""Numbers of the shape a^n +- b^n and the expression grammar that names them.

Accepted input::

    <a>^<n>+<b>^<n>     <a>^<n>-<b>^<n>     <a>^<n>+1     <a>^<n>-1     <decimal>
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Union

PLUS = "+"
MINUS = "-"


class ParseError(ValueError):
    def __init__(self, text: str, pos: int, message: str):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text, self.pos, self.message = text, pos, message


class ConstraintError(ValueError):
    """Syntactically fine, but not a valid a^n +- b^n instance."""


@dataclass(frozen=True)
class SpecialForm:
    a: int
    base_b: int
    n: int
    sign: str

    def __post_init__(self):
        if self.sign not in (PLUS, MINUS):
            raise ConstraintError(f"sign must be '+' or '-', got {self.sign!r}")
        if self.n < 1:
            raise ConstraintError(f"exponent must be >= 1, got {self.n}")
        if not self.a > self.base_b >= 1:
            raise ConstraintError(f"need a > b >= 1, got a={self.a}, b={self.base_b}")
        g = gcd(self.a, self.base_b)
        if g != 1:
            raise ConstraintError(f"gcd({self.a},{self.base_b}) = {g} != 1")
        if self.value < 2:
            raise ConstraintError(f"{self} = {self.value} has no prime factors")

    @property
    def value(self) -> int:
        x, y = self.a**self.n, self.base_b**self.n
        return x + y if self.sign == PLUS else x - y

    def __str__(self) -> str:
        return f"{self.a}^{self.n}{self.sign}{self.base_b}^{self.n}"


@dataclass(frozen=True)
class RawInteger:
    N: int


@dataclass(frozen=True)
class RawWithResidue:
    N: int
    m: int
    r: int


InputExpr = Union[SpecialForm, RawInteger, RawWithResidue]


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def at_end(self) -> bool:
        return self.pos == len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def number(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError(self.text, self.pos, "expected a decimal number")
        return int(self.text[start : self.pos])

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise ParseError(self.text, self.pos, f"expected {ch!r}, found {found}")
        self.pos += 1


def parse_special_form(text: str) -> InputExpr:
    """Parse ``text`` into a :class:`SpecialForm` or :class:`RawInteger`."""
    s = _Scanner(text.strip())
    a = s.number()
    if s.at_end():
        if a < 1:
            raise ConstraintError("input must be a positive integer")
        return RawInteger(a)
    s.expect("^")
    n = s.number()
    if s.peek() not in (PLUS, MINUS):
        raise ParseError(s.text, s.pos, "expected '+' or '-'")
    sign = s.peek()
    s.pos += 1
    b = s.number()
    if s.at_end():
        if b != 1:
            raise ParseError(s.text, s.pos, f"expected '^{n}' after {b}")
        return SpecialForm(a, 1, n, sign)
    s.expect("^")
    n2_pos = s.pos
    n2 = s.number()
    if not s.at_end():
        raise ParseError(s.text, s.pos, "unexpected trailing input")
    if n2 != n:
        raise ConstraintError(f"exponents differ ({n} vs {n2} at position {n2_pos})")
    return SpecialForm(a, b, n, sign)
