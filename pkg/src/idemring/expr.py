"""Ring-construction expressions and their text syntax.

Grammar::

    ring  := "Z(" nat ")" | "GF(" nat "," poly ")" | "M(" nat "," ring ")"
           | "UT(" nat "," ring ")" | "Prod(" ring ("," ring)+ ")"
           | "Quot(" ring ",{" elem ("," elem)* "})" | "Corner(" ring "," elem ")"
           | "Table(" path ")"
    poly  := "[" int ("," int)* "]"
    elem  := int | "[" elem ("," elem)* "]" | "(" elem ("," elem)* ")"

Whitespace is insignificant everywhere except inside a table path.
Element literals are kept as normalized text inside the AST; the ring they
belong to decides what they mean.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import ParseError

Literal = Union[int, list, tuple]


@dataclass(frozen=True)
class Zn:
    modulus: int

    def __str__(self):
        return f"Z({self.modulus})"


@dataclass(frozen=True)
class GFp:
    prime: int
    poly: tuple[int, ...]

    def __str__(self):
        return f"GF({self.prime},[{','.join(map(str, self.poly))}])"


@dataclass(frozen=True)
class Mat:
    size: int
    base: "RingExpr"

    def __str__(self):
        return f"M({self.size},{self.base})"


@dataclass(frozen=True)
class UpperTri:
    size: int
    base: "RingExpr"

    def __str__(self):
        return f"UT({self.size},{self.base})"


@dataclass(frozen=True)
class Prod:
    factors: tuple["RingExpr", ...]

    def __str__(self):
        return f"Prod({','.join(map(str, self.factors))})"


@dataclass(frozen=True)
class Quot:
    base: "RingExpr"
    ideal_gens: tuple[str, ...]

    def __str__(self):
        return f"Quot({self.base},{{{','.join(self.ideal_gens)}}})"


@dataclass(frozen=True)
class Corner:
    base: "RingExpr"
    idem: str

    def __str__(self):
        return f"Corner({self.base},{self.idem})"


@dataclass(frozen=True)
class Table:
    source: str

    def __str__(self):
        return f"Table({self.source})"


RingExpr = Union[Zn, GFp, Mat, UpperTri, Prod, Quot, Corner, Table]


def render_literal(value: Literal) -> str:
    """Inverse of :func:`parse_literal` (normalized, no whitespace)."""
    if isinstance(value, bool):
        raise TypeError("booleans are not element literals")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, list):
        return "[" + ",".join(render_literal(v) for v in value) + "]"
    if isinstance(value, tuple):
        return "(" + ",".join(render_literal(v) for v in value) + ")"
    raise TypeError(f"not an element literal: {value!r}")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message, expected=None):
        raise ParseError(message, position=self.pos, expected=expected, text=self.text)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, token: str):
        self.skip_ws()
        if not self.text.startswith(token, self.pos):
            self.error("unexpected input", expected=repr(token))
        self.pos += len(token)

    def accept(self, token: str) -> bool:
        self.skip_ws()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def integer(self, signed=True) -> int:
        self.skip_ws()
        start = self.pos
        if signed and self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits_start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits_start:
            self.pos = start
            self.error("expected an integer", expected="integer")
        return int(self.text[start:self.pos])

    def natural(self) -> int:
        start = self.pos
        value = self.integer(signed=False)
        if value < 1:
            self.pos = start
            self.error("expected a positive integer", expected="positive integer")
        return value

    def end(self):
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("trailing input", expected="end of input")

    # element literals -------------------------------------------------

    def literal(self) -> Literal:
        c = self.peek()
        if c in "[(":
            close = "]" if c == "[" else ")"
            self.pos += 1
            items = [self.literal()]
            while self.accept(","):
                items.append(self.literal())
            self.expect(close)
            return items if c == "[" else tuple(items)
        return self.integer()

    def literal_text(self) -> str:
        return render_literal(self.literal())

    # ring expressions -------------------------------------------------

    _KEYWORDS = ("Prod", "Quot", "Corner", "Table", "UT", "GF", "M", "Z")

    def ring(self) -> RingExpr:
        self.skip_ws()
        for kw in self._KEYWORDS:
            if self.text.startswith(kw + "(", self.pos) or (
                self.text.startswith(kw, self.pos)
                and self.text[self.pos + len(kw):].lstrip().startswith("(")
            ):
                self.pos += len(kw)
                self.expect("(")
                return getattr(self, "_" + kw.lower())()
        self.error("unknown ring constructor", expected="one of Z, GF, M, UT, Prod, Quot, Corner, Table")

    def _z(self):
        n = self.natural()
        self.expect(")")
        return Zn(n)

    def _gf(self):
        p = self.natural()
        self.expect(",")
        self.expect("[")
        coeffs = [self.integer()]
        while self.accept(","):
            coeffs.append(self.integer())
        self.expect("]")
        self.expect(")")
        return GFp(p, tuple(coeffs))

    def _m(self):
        k = self.natural()
        self.expect(",")
        base = self.ring()
        self.expect(")")
        return Mat(k, base)

    def _ut(self):
        k = self.natural()
        self.expect(",")
        base = self.ring()
        self.expect(")")
        return UpperTri(k, base)

    def _prod(self):
        factors = [self.ring()]
        while self.accept(","):
            factors.append(self.ring())
        self.expect(")")
        if len(factors) < 2:
            self.error("Prod needs at least two factors", expected="','")
        return Prod(tuple(factors))

    def _quot(self):
        base = self.ring()
        self.expect(",")
        self.expect("{")
        gens = [self.literal_text()]
        while self.accept(","):
            gens.append(self.literal_text())
        self.expect("}")
        self.expect(")")
        return Quot(base, tuple(gens))

    def _corner(self):
        base = self.ring()
        self.expect(",")
        idem = self.literal_text()
        self.expect(")")
        return Corner(base, idem)

    def _table(self):
        self.skip_ws()
        close = self.text.find(")", self.pos)
        if close < 0:
            self.error("unterminated table path", expected="')'")
        path = self.text[self.pos:close].strip()
        if not path:
            self.error("empty table path", expected="file path")
        self.pos = close + 1
        return Table(path)


def parse_ring(text: str) -> RingExpr:
    """Parse a ring expression such as ``"M(2,Z(3))"``."""
    p = _Parser(text)
    expr = p.ring()
    p.end()
    return expr


def parse_literal(text: str) -> Literal:
    """Parse one element literal into nested ints, lists and tuples."""
    p = _Parser(text)
    value = p.literal()
    p.end()
    return value


def parse_literal_list(text: str) -> list[Literal]:
    """Parse a comma separated sequence of element literals."""
    p = _Parser(text)
    items = [p.literal()]
    while p.accept(","):
        items.append(p.literal())
    p.end()
    return items
