"""Line-oriented text format for models (``*.mm`` files).

::

    # comment
    generator x 3
    generator z 5
    d z = x*y - 1/2*x*w
    extend t 2          # base generator of a KS-extension
    d v += u*t          # perturbation; every term must contain t

Coefficients are exact rationals; ``^`` powers are legal only on even
generators.  A leading ``-`` on the first term is accepted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .extensions import KSExtensionSpec
from .gca import GradedAlgebra, Polynomial
from .model import MinimalModel

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<op>\+=|[-+*/^=]))")


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


@dataclass
class Token:
    kind: str  # "name", "int", "op", "end"
    text: str
    column: int  # 1-based


def tokenize(text: str, line: int = 0, offset: int = 0) -> list[Token]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            col = offset + len(text) - len(text[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {text[pos:].lstrip()[0]!r}", line, col)
        kind = m.lastgroup
        toks.append(Token(kind, m.group(kind), offset + m.start(kind) + 1))
        pos = m.end()
    toks.append(Token("end", "", offset + len(text.rstrip()) + 1))
    return toks


class _ExprParser:
    def __init__(self, tokens: list[Token], algebra: GradedAlgebra, line: int,
                 must_contain: Optional[str] = None):
        self.toks = tokens
        self.i = 0
        self.alg = algebra
        self.line = line
        self.must_contain = must_contain

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, tok: Token, expected: str):
        found = "end of line" if tok.kind == "end" else repr(tok.text)
        raise ParseError(f"expected {expected}, found {found}", self.line, tok.column)

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek().text == "-":
            self.take()
            sign = -1
        total = self.term() * sign
        while self.peek().text in ("+", "-"):
            op = self.take().text
            t = self.term()
            total = total + t if op == "+" else total - t
        tok = self.peek()
        if tok.kind != "end":
            self.fail(tok, "'+', '-' or '*'")
        return total

    def rational(self) -> Fraction:
        num = self.take()
        if self.peek().text == "/":
            self.take()
            den = self.peek()
            if den.kind != "int":
                self.fail(den, "integer denominator")
            self.take()
            if int(den.text) == 0:
                raise ParseError("malformed rational: zero denominator", self.line, den.column)
            return Fraction(int(num.text), int(den.text))
        return Fraction(int(num.text))

    def term(self) -> Polynomial:
        start = self.peek()
        coeff = Fraction(1)
        if start.kind == "int":
            coeff = self.rational()
            if self.peek().text != "*":
                poly = Polynomial.constant(self.alg, coeff)
                self._check_contains(poly, start)
                return poly
            self.take()
        word = [self.factor()]
        while self.peek().text == "*":
            self.take()
            word.append(self.factor())
        seq = [name for name, power in word for _ in range(power)]
        poly = Polynomial.word(self.alg, seq, coeff)
        self._check_contains(poly, start, seq)
        return poly

    def _check_contains(self, poly, start: Token, seq=()):
        if self.must_contain is not None and self.must_contain not in seq:
            raise ParseError(f"perturbation term lacks the extension generator {self.must_contain!r}",
                             self.line, start.column)

    def factor(self) -> tuple[str, int]:
        tok = self.peek()
        if tok.kind != "name":
            self.fail(tok, "generator name")
        self.take()
        if tok.text not in self.alg.names():
            raise ParseError(f"unknown generator {tok.text!r}", self.line, tok.column)
        power = 1
        if self.peek().text == "^":
            caret = self.take()
            exp = self.peek()
            if exp.kind != "int":
                self.fail(exp, "integer exponent")
            self.take()
            if self.alg.generator(tok.text).odd:
                raise ParseError(f"'^' applied to odd generator {tok.text!r}", self.line, caret.column)
            power = int(exp.text)
            if power < 1:
                raise ParseError("exponent must be >= 1", self.line, exp.column)
        return tok.text, power


def parse_expression(text: str, algebra: GradedAlgebra) -> Polynomial:
    """Parse a polynomial such as ``"phi*a + x*y - 2*c^3"`` over ``algebra``."""
    return _ExprParser(tokenize(text), algebra, 0).expr()


@dataclass
class ModelFile:
    model: MinimalModel
    extension: Optional[KSExtensionSpec] = None


def parse_model(text: str) -> ModelFile:
    """Parse a ``*.mm`` file into a model and optional KS-extension."""
    gens: list[tuple[str, int]] = []
    ext: Optional[tuple[str, int]] = None
    diffs: list[tuple[int, list[Token], bool]] = []
    seen: set[str] = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        toks = tokenize(raw, lineno)
        toks += [toks[-1]] * 3
        head = toks[0]
        if head.kind == "name" and head.text in ("generator", "extend"):
            name, deg = _declaration(toks, lineno)
            if name in seen:
                raise ParseError(f"duplicate generator {name!r}", lineno, toks[1].column)
            seen.add(name)
            if head.text == "generator":
                gens.append((name, deg))
            else:
                if ext is not None:
                    raise ParseError("only one 'extend' line is allowed", lineno, head.column)
                ext = (name, deg)
        elif head.kind == "name" and head.text == "d":
            target = toks[1]
            if target.kind != "name":
                _fail(target, "generator name", lineno)
            op = toks[2]
            if op.text not in ("=", "+="):
                _fail(op, "'=' or '+='", lineno)
            diffs.append((lineno, toks, op.text == "+="))
        else:
            _fail(head, "'generator', 'extend', 'd' or '#'", lineno)

    try:
        algebra = GradedAlgebra.from_degrees(gens)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    total = algebra.adjoin(*ext) if ext else None

    differential: dict[str, Polynomial] = {}
    perturbations: dict[str, Polynomial] = {}
    for lineno, toks, is_pert in diffs:
        target = toks[1]
        name = target.text
        if ext and name == ext[0]:
            raise ParseError(f"extension generator {name!r} must stay closed", lineno, target.column)
        if name not in algebra.names():
            raise ParseError(f"unknown generator {name!r}", lineno, target.column)
        body = toks[3:]
        if is_pert:
            if total is None:
                raise ParseError("'+=' requires an 'extend' declaration", lineno, toks[2].column)
            if name in perturbations:
                raise ParseError(f"duplicate perturbation for {name!r}", lineno, target.column)
            perturbations[name] = _ExprParser(body, total, lineno, must_contain=ext[0]).expr()
        else:
            if name in differential:
                raise ParseError(f"duplicate differential for {name!r}", lineno, target.column)
            differential[name] = _ExprParser(body, algebra, lineno).expr()

    model = MinimalModel(algebra, differential)
    extension = None
    if ext:
        extension = KSExtensionSpec(total.generator(ext[0]), total, perturbations)
    return ModelFile(model, extension)


def _declaration(toks: list[Token], lineno: int) -> tuple[str, int]:
    if toks[1].kind != "name":
        _fail(toks[1], "generator name", lineno)
    if toks[2].kind != "int":
        _fail(toks[2], "positive integer degree", lineno)
    if toks[3].kind != "end":
        _fail(toks[3], "end of line", lineno)
    deg = int(toks[2].text)
    if deg < 1:
        raise ParseError("degree must be >= 1", lineno, toks[2].column)
    return toks[1].text, deg


def _fail(tok: Token, expected: str, lineno: int):
    found = "end of line" if tok.kind == "end" else repr(tok.text)
    raise ParseError(f"expected {expected}, found {found}", lineno, tok.column)


def format_model(model: MinimalModel, extension: Optional[KSExtensionSpec] = None) -> str:
    """Canonical text: declarations in id order, then nonzero differentials."""
    alg = model.algebra
    by_id = sorted(alg.generators, key=lambda g: g.id)
    lines = [f"generator {g.name} {g.degree}" for g in by_id]
    for g in by_id:
        dv = model.d_of(g.name)
        if dv:
            lines.append(f"d {g.name} = {dv.format()}")
    if extension is not None:
        lines.append(f"extend {extension.name} {extension.degree}")
        for g in by_id:
            pert = extension.perturbations.get(g.name)
            if pert:
                lines.append(f"d {g.name} += {pert.format()}")
    return "\n".join(lines) + "\n"
