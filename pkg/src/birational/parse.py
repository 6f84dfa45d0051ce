"""Text grammar for polynomials, rational functions and fixture files.

Grammar (whitespace insensitive)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?            # exponent must be a non-negative integer
    atom   := INT | VAR | '(' expr ')'

Variables are ``x0, x1, ...`` with aliases ``x, y, z, w`` for ``x0..x3``.
``**`` is accepted as a synonym for ``^``.  Expressions are evaluated into a
numerator/denominator pair, so ``/`` is allowed anywhere; a polynomial parse
then insists on a constant denominator.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from .errors import DimensionMismatchError, FieldError, ParseError, ZeroPolynomialError
from .fields import FieldSpec
from .poly import ALIASES, Polynomial

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<var>x\d+|[a-zA-Z_]\w*)|(?P<op>\*\*|[-+*/^()]))")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def _position(text: str, pos: int) -> tuple:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _error(text: str, pos: int, message: str) -> ParseError:
    line, col = _position(text, pos)
    return ParseError(message, line, col, text)


def tokenize(text: str) -> list:
    out, pos = [], 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise _error(text, pos, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        start = m.start(kind)
        tok = m.group(kind)
        out.append(Token(kind, "^" if tok == "**" else tok, start))
        pos = m.end()
    out.append(Token("end", "", n))
    return out


def variable_index(name: str) -> int | None:
    if name in ALIASES:
        return ALIASES.index(name)
    if re.fullmatch(r"x\d+", name):
        return int(name[1:])
    return None


def max_variable(text: str) -> int:
    """Largest variable index mentioned in ``text`` (-1 if none)."""
    best = -1
    for tok in tokenize(text):
        if tok.kind == "var":
            i = variable_index(tok.text)
            if i is not None:
                best = max(best, i)
    return best


class _Parser:
    """Precedence-climbing evaluator over (numerator, denominator) pairs."""

    def __init__(self, text: str, nvars: int, field: FieldSpec):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.nvars = nvars
        self.field = field
        self.one = Polynomial.one(field, nvars)

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str):
        if self.tok.text != text:
            raise self.fail(f"expected {text!r}")
        self.advance()

    def fail(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        return _error(self.text, tok.pos, f"{message}, found {found}")

    def parse(self):
        if self.tok.kind == "end":
            raise self.fail("empty expression")
        value = self.expr()
        if self.tok.kind != "end":
            raise self.fail("unexpected token")
        return value

    def expr(self):
        num, den = self.term()
        while self.tok.text in ("+", "-"):
            op = self.advance().text
            n2, d2 = self.term()
            if den == d2:
                num = num + n2 if op == "+" else num - n2
            else:
                num = num * d2 + n2 * den if op == "+" else num * d2 - n2 * den
                den = den * d2
        return num, den

    def term(self):
        num, den = self.unary()
        while self.tok.text in ("*", "/"):
            op_tok = self.advance()
            n2, d2 = self.unary()
            if op_tok.text == "*":
                num, den = num * n2, den * d2
            else:
                if n2.is_zero:
                    raise _error(self.text, op_tok.pos, "division by zero")
                num, den = num * d2, den * n2
        return num, den

    def unary(self):
        if self.tok.text == "-":
            self.advance()
            num, den = self.unary()
            return -num, den
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok.text != "^":
            return base
        self.advance()
        tok = self.tok
        if tok.kind != "int":
            raise self.fail("exponent must be a non-negative integer literal")
        self.advance()
        e = int(tok.text)
        return base[0] ** e, base[1] ** e

    def atom(self):
        tok = self.tok
        if tok.kind == "int":
            self.advance()
            try:
                c = self.field.coerce(int(tok.text))
            except FieldError as exc:
                raise _error(self.text, tok.pos, str(exc)) from exc
            return Polynomial.constant(self.field, self.nvars, c), self.one
        if tok.kind == "var":
            idx = variable_index(tok.text)
            if idx is None:
                raise _error(self.text, tok.pos, f"unknown variable {tok.text!r}")
            if idx >= self.nvars:
                raise _error(self.text, tok.pos,
                             f"variable {tok.text} out of range for {self.nvars} variables")
            self.advance()
            return Polynomial.var(self.field, self.nvars, idx), self.one
        if tok.text == "(":
            self.advance()
            value = self.expr()
            self.expect(")")
            return value
        raise self.fail("expected a number, variable or '('")


def parse_fraction(text: str, nvars: int | None = None, field: FieldSpec | None = None):
    """Parse into an unreduced ``(numerator, denominator)`` pair of polynomials."""
    field = field or FieldSpec()
    if nvars is None:
        nvars = max(max_variable(text) + 1, 1)
    num, den = _Parser(text, nvars, field).parse()
    if den.is_zero:
        raise _error(text, 0, "denominator vanishes identically")
    return num, den


def parse_polynomial(text: str, nvars: int | None = None,
                     field: FieldSpec | None = None) -> Polynomial:
    """Parse a polynomial; ``/`` is allowed only by nonzero constants.

    Over F_p a denominator divisible by p is rejected as not in the field.
    """
    num, den = parse_fraction(text, nvars, field)
    if not den.is_constant:
        raise _error(text, 0, "expected a polynomial, got a quotient by a non-constant")
    c = den.constant_value()
    if c == 0:
        f = num.field
        raise FieldError(f"coefficient denominator is zero in {f}")
    return num.scale(num.field.inv(c))


# -- fixture files -----------------------------------------------------------


def _content_lines(text: str) -> Iterator[tuple]:
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_field_line(line: str) -> FieldSpec:
    return FieldSpec.parse(line)


def _reline(exc: ParseError, lineno: int) -> ParseError:
    return ParseError(exc.message, lineno, exc.column, exc.text)


@dataclass(frozen=True)
class HypersurfaceFixture:
    field: FieldSpec
    chart: str
    nvars: int
    polynomial: Polynomial


def parse_hypersurface_fixture(text: str):
    """Three logical lines: field (``Q`` / ``Fp 7``), chart, polynomial.

    The chart line is ``affine`` or ``projective``, optionally followed by the
    number of variables (otherwise inferred from the polynomial).
    A polynomial ``0`` stands for the whole space (the count is then required).
    Blank lines and ``#`` comments are ignored.
    """
    from .geom import AmbientSpace, Chart, Hypersurface

    lines = list(_content_lines(text))
    if len(lines) != 3:
        raise ParseError(f"expected 3 lines (field, chart, polynomial), got {len(lines)}",
                         lines[-1][0] if lines else 1, 1, text)
    (l1, fline), (l2, cline), (l3, pline) = lines
    try:
        field = _parse_field_line(fline)
    except (FieldError, ValueError) as exc:
        raise ParseError(f"bad field line: {exc}", l1, 1, fline) from exc
    parts = cline.split()
    try:
        chart = Chart.parse(parts[0])
        nvars = int(parts[1]) if len(parts) > 1 else None
    except (ValueError, IndexError) as exc:
        raise ParseError(f"bad chart line {cline!r}", l2, 1, cline) from exc
    try:
        poly = parse_polynomial(pline, nvars, field)
    except ParseError as exc:
        raise _reline(exc, l3) from exc
    if poly.is_zero:
        if nvars is None:
            raise ParseError("the whole space needs an explicit variable count", l2, 1, cline)
        return AmbientSpace(field, nvars, chart)
    return Hypersurface(poly, chart)


def format_hypersurface_fixture(X) -> str:
    head = "Q" if not X.field.p else f"Fp {X.field.p}"
    eq = "0" if X.defining is None else str(X.defining)
    return f"{head}\n{X.chart.value} {X.nvars}\n{eq}\n"


def parse_map_fixture(text: str):
    """A map file: header lines then one coordinate function per line.

    Header::

        field Q
        source affine 2          # chart and number of variables
        target projective 3      # chart and ambient coordinate count

    ``target`` counts affine coordinates for an affine target and homogeneous
    coordinates for a projective one.  Each following line is one coordinate,
    with ``/`` for quotients.
    """
    from .geom import Chart
    from .ratmap import RationalMap

    header: dict = {}
    coords = []
    for lineno, line in _content_lines(text):
        key = line.split(None, 1)[0].lower()
        if not coords and key in ("field", "source", "target"):
            rest = line.split(None, 1)[1] if " " in line else ""
            header[key] = (lineno, rest.strip())
            continue
        coords.append((lineno, line))
    missing = {"field", "source", "target"} - header.keys()
    if missing:
        raise ParseError(f"map fixture is missing header line(s): {', '.join(sorted(missing))}",
                         1, 1, text)
    try:
        field = _parse_field_line(header["field"][1])
    except (FieldError, ValueError) as exc:
        raise ParseError(f"bad field line: {exc}", header["field"][0], 1) from exc
    src = header["source"][1].split()
    tgt = header["target"][1].split()
    try:
        schart, snvars = Chart.parse(src[0]), int(src[1])
        tchart, tcount = Chart.parse(tgt[0]), int(tgt[1])
    except (ValueError, IndexError) as exc:
        raise ParseError("source/target lines need a chart and a count", header["source"][0], 1) from exc
    if len(coords) != tcount:
        raise DimensionMismatchError(f"map fixture declares {tcount} target coordinates, "
                                     f"found {len(coords)}")
    fracs = []
    for lineno, line in coords:
        try:
            fracs.append(parse_fraction(line, snvars, field))
        except ParseError as exc:
            raise _reline(exc, lineno) from exc
    if tchart == Chart.PROJECTIVE:
        return RationalMap.from_projective_fractions(fracs, schart)
    return RationalMap.from_fractions(fracs, schart)


def format_map_fixture(F) -> str:
    head = "Q" if not F.field.p else f"Fp {F.field.p}"
    lines = [f"field {head}",
             f"source {F.source_chart.value} {F.nvars}",
             f"target {F.target_chart.value} {F.target_count}"]
    lines += [str(c) for c in F.coordinate_strings()]
    return "\n".join(lines) + "\n"


def parse_point(text: str, field: FieldSpec):
    from .geom import Point

    try:
        return Point.parse(field, text)
    except (FieldError, ValueError) as exc:
        raise ParseError(f"bad point {text!r}: {exc}", 1, 1, text) from exc


__all__ = [
    "ParseError",
    "ZeroPolynomialError",
    "parse_polynomial",
    "parse_fraction",
    "parse_hypersurface_fixture",
    "parse_map_fixture",
    "format_hypersurface_fixture",
    "format_map_fixture",
    "parse_point",
    "tokenize",
]
