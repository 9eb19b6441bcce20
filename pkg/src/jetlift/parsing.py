"""Parsers for polynomial, field, point, and grid literals.

Grammar for polynomials: terms separated by + or -, each term an optional rational
coefficient (p or p/q), an optional '*', and variable powers (name, or name^k);
whitespace is insignificant.  Negative exponents are accepted only when the caller
allows Laurent input.  All errors carry a 1-based line/column.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .algebra import Poly
from .errors import ParseError
from .vectorfields import VectorField

__all__ = ["parse_poly", "parse_field", "parse_point", "parse_rational",
           "parse_grid"]


class _Scanner:
    def __init__(self, text: str, line: int = 1, col_offset: int = 0):
        self.text = text
        self.pos = 0
        self.line = line
        self.col_offset = col_offset

    def error(self, message: str, pos: Optional[int] = None) -> ParseError:
        p = self.pos if pos is None else pos
        return ParseError(message, line=self.line, column=self.col_offset + p + 1)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        c = self.peek()
        self.pos += 1
        return c

    def at_end(self) -> bool:
        return self.peek() == ""

    def read_int(self, allow_sign: bool = False) -> int:
        self.skip_ws()
        start = self.pos
        if allow_sign and self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            raise self.error("expected an integer", start)
        return int(self.text[start:self.pos])

    def read_name(self) -> str:
        self.skip_ws()
        start = self.pos
        while (self.pos < len(self.text)
               and (self.text[self.pos].isalnum() or self.text[self.pos] == "_")):
            self.pos += 1
        if self.pos == start:
            raise self.error("expected a name")
        name = self.text[start:self.pos]
        if name[0].isdigit():
            raise self.error(f"names cannot start with a digit: {name!r}", start)
        return name


def _parse_term(sc: _Scanner, names: Sequence[str], allow_laurent: bool,
                num_vars: int) -> Poly:
    coeff = Fraction(1)
    have_coeff = False
    pending_div = False
    if sc.peek().isdigit():
        num = sc.read_int()
        coeff = Fraction(num)
        have_coeff = True
        if sc.peek() == "/":
            sc.take()
            if sc.peek().isdigit():
                den_pos = sc.pos
                den = sc.read_int()
                if den == 0:
                    raise sc.error("zero denominator", den_pos)
                coeff = Fraction(num, den)
            else:
                pending_div = True  # '1/x' style: divide by the next factor
    exponents = [0] * num_vars
    saw_factor = False
    while True:
        c = sc.peek()
        if c == "*" and not pending_div:
            sc.take()
            c = sc.peek()
            if c == "":
                raise sc.error("dangling '*'")
            continue
        if c == "/" and not pending_div and (have_coeff or saw_factor):
            sc.take()
            pending_div = True
            c = sc.peek()
        if not (c.isalpha() or c == "_"):
            if pending_div:
                raise sc.error("expected a variable after '/'")
            break
        name_pos = sc.pos
        name = sc.read_name()
        if name not in names:
            raise sc.error(f"unknown variable {name!r}", name_pos)
        k = names.index(name)
        power = 1
        if sc.peek() == "^":
            sc.take()
            exp_pos = sc.pos
            power = sc.read_int(allow_sign=True)
        else:
            exp_pos = name_pos
        if pending_div:
            power = -power
            pending_div = False
        if power < 0 and not allow_laurent:
            raise sc.error("negative exponents need Laurent input", exp_pos)
        exponents[k] += power
        saw_factor = True
    if not have_coeff and not saw_factor:
        raise sc.error("expected a term")
    return Poly(num_vars, {tuple(exponents): coeff}, laurent=allow_laurent)


def parse_poly(text: str, names: Sequence[str], allow_laurent: bool = False,
               line: int = 1, col_offset: int = 0) -> Poly:
    """Parse one polynomial in the named variables."""
    names = list(names)
    num_vars = len(names)
    sc = _Scanner(text, line, col_offset)
    if sc.at_end():
        raise sc.error("empty polynomial")
    total = Poly.zero(num_vars)
    sign = 1
    if sc.peek() in "+-":
        sign = -1 if sc.take() == "-" else 1
    while True:
        term = _parse_term(sc, names, allow_laurent, num_vars)
        total = total + (term if sign > 0 else -term)
        if sc.at_end():
            return total
        c = sc.take()
        if c == "+":
            sign = 1
        elif c == "-":
            sign = -1
        else:
            raise sc.error(f"unexpected {c!r}", sc.pos - 1)
        if sc.at_end():
            raise sc.error("dangling sign")


def _split_top(text: str) -> List[Tuple[str, int]]:
    """Split on commas, keeping each piece's start offset."""
    pieces = []
    start = 0
    for i, c in enumerate(text):
        if c == ",":
            pieces.append((text[start:i], start))
            start = i + 1
    pieces.append((text[start:], start))
    return pieces


def parse_field(text: str, names: Sequence[str], allow_laurent: bool = False,
                line: int = 1) -> VectorField:
    """Comma-separated component polynomials, one per variable."""
    pieces = _split_top(text)
    if len(pieces) != len(names):
        raise ParseError(
            f"{len(pieces)} components for {len(names)} variables", line=line)
    comps = [parse_poly(part, names, allow_laurent, line, offset)
             for part, offset in pieces]
    return VectorField(comps)


def parse_rational(text: str, line: int = 1, col_offset: int = 0) -> Fraction:
    sc = _Scanner(text, line, col_offset)
    sign = 1
    if sc.peek() in "+-":
        sign = -1 if sc.take() == "-" else 1
    num = sc.read_int()
    den = 1
    if sc.peek() == "/":
        sc.take()
        den_pos = sc.pos
        den = sc.read_int()
        if den == 0:
            raise sc.error("zero denominator", den_pos)
    if not sc.at_end():
        raise sc.error("trailing input after rational")
    return Fraction(sign * num, den)


def parse_point(text: str, dim: int, line: int = 1) -> Tuple[Fraction, ...]:
    pieces = _split_top(text)
    if len(pieces) != dim:
        raise ParseError(f"{len(pieces)} coordinates for dimension {dim}", line=line)
    return tuple(parse_rational(part, line, offset) for part, offset in pieces)


def parse_grid(text: str, names: Sequence[str],
               line: int = 1) -> List[Tuple[Fraction, Fraction, Fraction]]:
    """Grid literal 'x=-1:1:1, y=0:2:1' -> per-variable (start, stop, step).

    Every declared variable must get a range; ranges are exact rationals with a
    positive step.
    """
    ranges = {}
    for part, offset in _split_top(text):
        sc = _Scanner(part, line, offset)
        name_pos = sc.pos
        name = sc.read_name()
        if name not in names:
            raise sc.error(f"unknown variable {name!r}", name_pos)
        if sc.take() != "=":
            raise sc.error("expected '='")
        bounds = []
        remainder = part[sc.pos:]
        segments = remainder.split(":")
        if len(segments) != 3:
            raise sc.error("range must be start:stop:step")
        seg_offset = sc.pos
        for seg in segments:
            bounds.append(parse_rational(seg, line, offset + seg_offset))
            seg_offset += len(seg) + 1
        start, stop, step = bounds
        if step <= 0:
            raise sc.error("step must be positive")
        if start > stop:
            raise sc.error("start exceeds stop")
        if name in ranges:
            raise sc.error(f"duplicate range for {name!r}", name_pos)
        ranges[name] = (start, stop, step)
    missing = [n for n in names if n not in ranges]
    if missing:
        raise ParseError(f"no range for variable(s): {', '.join(missing)}", line=line)
    return [ranges[n] for n in names]
