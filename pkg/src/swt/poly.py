"""Exact sparse polynomial arithmetic in the variables x, y, z.

Coefficients are rational numbers (`fractions.Fraction`); floats are
rejected so every result is exact.  Polynomials are immutable value
objects in canonical form: no zero coefficient is ever stored, so two
polynomials are equal iff their term maps are equal.

A monomial is an exponent triple ``(ex, ey, ez)``; the module also
provides the vector/matrix helpers used by the singularity chain
(gradient, cross and dot products, determinants, 2x2 minors) and the
text parser for the expression grammar accepted by the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Mono = tuple[int, int, int]
CoeffLike = Union[int, Fraction]

VARIABLES = ("x", "y", "z")
_VAR_INDEX = {"x": 0, "y": 1, "z": 2}


def _coerce(value: CoeffLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"exact rational coefficient required, got {type(value).__name__}")


def _print_key(m: Mono) -> tuple[int, int, int]:
    # degree-reverse-lexicographic with x > y > z; used only for stable printing
    return (m[0] + m[1] + m[2], -m[2], -m[1])


class Polynomial:
    """A sparse polynomial in x, y, z with exact rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Mono, CoeffLike] | None = None):
        cleaned: dict[Mono, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                if (
                    len(mono) != 3
                    or any(not isinstance(e, int) or e < 0 for e in mono)
                ):
                    raise ValueError(f"bad monomial exponents {mono!r}")
                c = _coerce(coeff)
                if c:
                    cleaned[tuple(mono)] = c
        self.terms = cleaned

    # -- constructors ---------------------------------------------------

    @classmethod
    def constant(cls, value: CoeffLike) -> "Polynomial":
        return cls({(0, 0, 0): value})

    @classmethod
    def variable(cls, name: str) -> "Polynomial":
        if name not in _VAR_INDEX:
            raise ValueError(f"unknown variable {name!r}")
        mono = [0, 0, 0]
        mono[_VAR_INDEX[name]] = 1
        return cls({tuple(mono): 1})

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == (0, 0, 0) for m in self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0, 0, 0), Fraction(0))

    # -- ring operations --------------------------------------------------

    def __add__(self, other) -> "Polynomial":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        result = dict(self.terms)
        for mono, coeff in other.terms.items():
            new = result.get(mono, _ZERO_FRAC) + coeff
            if new:
                result[mono] = new
            else:
                result.pop(mono, None)
        out = Polynomial.__new__(Polynomial)
        out.terms = result
        return out

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        out = Polynomial.__new__(Polynomial)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other) -> "Polynomial":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return -(self - other)

    def __mul__(self, other) -> "Polynomial":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        result: dict[Mono, Fraction] = {}
        for (a0, a1, a2), ca in self.terms.items():
            for (b0, b1, b2), cb in other.terms.items():
                mono = (a0 + b0, a1 + b1, a2 + b2)
                new = result.get(mono, _ZERO_FRAC) + ca * cb
                if new:
                    result[mono] = new
                else:
                    result.pop(mono, None)
        out = Polynomial.__new__(Polynomial)
        out.terms = result
        return out

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = ONE
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- calculus ---------------------------------------------------------

    def partial(self, var: str) -> "Polynomial":
        """Formal partial derivative with respect to 'x', 'y' or 'z'."""
        i = _VAR_INDEX[var]
        result: dict[Mono, Fraction] = {}
        for mono, coeff in self.terms.items():
            e = mono[i]
            if e == 0:
                continue
            lowered = list(mono)
            lowered[i] = e - 1
            result[tuple(lowered)] = coeff * e
        out = Polynomial.__new__(Polynomial)
        out.terms = result
        return out

    def evaluate(self, point: Sequence[CoeffLike]) -> Fraction:
        """Exact evaluation at a rational point; a ring homomorphism."""
        px, py, pz = (_coerce(c) for c in point)
        total = Fraction(0)
        for (e0, e1, e2), coeff in self.terms.items():
            total += coeff * px**e0 * py**e1 * pz**e2
        return total

    # -- value semantics ----------------------------------------------------

    def __eq__(self, other) -> bool:
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


_ZERO_FRAC = Fraction(0)

ZERO = Polynomial()
ONE = Polynomial.constant(1)
X = Polynomial.variable("x")
Y = Polynomial.variable("y")
Z = Polynomial.variable("z")


def _as_poly(value) -> "Polynomial":
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return Polynomial.constant(value)
    return NotImplemented


# -- vectors and matrices ----------------------------------------------------

PolyVector = tuple[Polynomial, Polynomial, Polynomial]


def gradient(p: Polynomial) -> PolyVector:
    """(dp/dx, dp/dy, dp/dz)."""
    return (p.partial("x"), p.partial("y"), p.partial("z"))


def cross(a: Sequence[Polynomial], b: Sequence[Polynomial]) -> PolyVector:
    """Formal cross product of two polynomial 3-vectors."""
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def dot(a: Sequence[Polynomial], b: Sequence[Polynomial]) -> Polynomial:
    """Standard scalar product of two polynomial 3-vectors."""
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def det3(m: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant of a 3x3 polynomial matrix, by cofactor expansion.

    Expands along the first row, forming the three 2x2 minors of the
    lower rows first; with rows ordered by size this keeps the
    intermediate products small.
    """
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def minors2(m: Sequence[Sequence[Polynomial]]) -> list[Polynomial]:
    """All 2x2 minors of an r x 3 polynomial matrix, r >= 2.

    Fixed deterministic order: row pairs lexicographically, then column
    pairs lexicographically, so generator lists are stable across runs.
    """
    rows = len(m)
    if rows < 2:
        raise ValueError("minors2 requires a matrix with at least two rows")
    out: list[Polynomial] = []
    for r1 in range(rows):
        if len(m[r1]) != 3:
            raise ValueError("minors2 requires exactly three columns")
        for r2 in range(r1 + 1, rows):
            for c1 in range(3):
                for c2 in range(c1 + 1, 3):
                    out.append(m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1])
    return out


@dataclass(frozen=True)
class PolyMap:
    """A polynomial map (f1, f2, f3) from R^3 to R^3."""

    f1: Polynomial
    f2: Polynomial
    f3: Polynomial

    @property
    def components(self) -> PolyVector:
        return (self.f1, self.f2, self.f3)

    def jacobian(self) -> list[PolyVector]:
        return [gradient(self.f1), gradient(self.f2), gradient(self.f3)]

    def __str__(self) -> str:
        return f"({self.f1}, {self.f2}, {self.f3})"


# -- printing -----------------------------------------------------------------


def _format_monomial(mono: Mono) -> str:
    parts = []
    for name, e in zip(VARIABLES, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    """Canonical text form, parseable by :func:`parse` (round-trips)."""
    if not p.terms:
        return "0"
    pieces: list[str] = []
    for mono in sorted(p.terms, key=_print_key, reverse=True):
        coeff = p.terms[mono]
        mono_text = _format_monomial(mono)
        mag = -coeff if coeff < 0 else coeff
        if not mono_text:
            body = str(mag)
        elif mag == 1:
            body = mono_text
        else:
            body = f"{mag}*{mono_text}"
        if not pieces:
            pieces.append(f"-{body}" if coeff < 0 else body)
        else:
            pieces.append(f"- {body}" if coeff < 0 else f"+ {body}")
    return " ".join(pieces)


# -- expression parser ----------------------------------------------------------


class ParseError(ValueError):
    """Syntax or semantic error in a polynomial expression."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


_TOKEN_CHARS = {
    "+": "PLUS",
    "-": "MINUS",
    "*": "STAR",
    "^": "CARET",
    "/": "SLASH",
    "(": "LPAREN",
    ")": "RPAREN",
}


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch in _TOKEN_CHARS:
            tokens.append(_Token(_TOKEN_CHARS[ch], ch, line, col))
            col += 1
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            tokens.append(_Token("INT", text[start:i], line, col))
            col += i - start
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(_Token("NAME", text[start:i], line, col))
            col += i - start
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("EOF", "", line, col))
    return tokens


class _Parser:
    """Recursive-descent parser for the polynomial expression grammar.

    expr   := '-'? term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' uint)?
    base   := 'x' | 'y' | 'z' | rational | '(' expr ')'
    rational := uint ('/' uint)?

    Implicit multiplication is not accepted: "2x" is a syntax error.
    """

    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            shown = tok.text if tok.kind != "EOF" else "end of input"
            raise ParseError(f"expected {what}, found {shown!r}", tok.line, tok.column)
        return self.advance()

    def parse_expr(self) -> Polynomial:
        negate = False
        if self.peek().kind == "MINUS":
            self.advance()
            negate = True
        result = self.parse_term()
        if negate:
            result = -result
        while self.peek().kind in ("PLUS", "MINUS"):
            op = self.advance()
            term = self.parse_term()
            result = result + term if op.kind == "PLUS" else result - term
        return result

    def parse_term(self) -> Polynomial:
        result = self.parse_factor()
        while self.peek().kind == "STAR":
            self.advance()
            result = result * self.parse_factor()
        return result

    def parse_factor(self) -> Polynomial:
        base = self.parse_base()
        if self.peek().kind == "CARET":
            caret = self.advance()
            tok = self.peek()
            if tok.kind != "INT":
                msg = "exponent must be a non-negative integer"
                if tok.kind == "MINUS":
                    msg = "negative exponents are not allowed"
                raise ParseError(msg, caret.line, caret.column)
            self.advance()
            return base ** int(tok.text)
        return base

    def parse_base(self) -> Polynomial:
        tok = self.peek()
        if tok.kind == "NAME":
            self.advance()
            if tok.text in _VAR_INDEX:
                return Polynomial.variable(tok.text)
            raise ParseError(f"unknown identifier {tok.text!r}", tok.line, tok.column)
        if tok.kind == "INT":
            self.advance()
            numerator = int(tok.text)
            if self.peek().kind == "SLASH":
                self.advance()
                den = self.expect("INT", "an integer denominator")
                if int(den.text) == 0:
                    raise ParseError("zero denominator", den.line, den.column)
                return Polynomial.constant(Fraction(numerator, int(den.text)))
            return Polynomial.constant(numerator)
        if tok.kind == "LPAREN":
            self.advance()
            inner = self.parse_expr()
            self.expect("RPAREN", "')'")
            return inner
        shown = tok.text if tok.kind != "EOF" else "end of input"
        raise ParseError(f"expected a variable, number or '(', found {shown!r}",
                         tok.line, tok.column)


def parse(text: str) -> Polynomial:
    """Parse a polynomial expression into canonical form.

    Raises :class:`ParseError` (with line and column) on syntax errors,
    unknown identifiers, and negative or non-integer exponents.
    """
    parser = _Parser(_tokenize(text))
    result = parser.parse_expr()
    tok = parser.peek()
    if tok.kind != "EOF":
        raise ParseError(f"unexpected {tok.text!r} after expression", tok.line, tok.column)
    return result
