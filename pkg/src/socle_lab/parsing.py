"""Text grammar for fields, function fields and element expressions.

Field descriptors::

    Q   Q(zeta5)   Fp(7)   F7   F4   Fq(3,4;g)   Fq(3,4)
    Q(zeta5)(r:x^5-2)          extension steps: (symbol:minimal polynomial)
    Fq(7,1)(t,u | t:T u:U)     function field with an explicit T/U split
    F7(t,u)                    first variable is T, the rest are U

Expressions use ``+ - * / ^``, integer literals, parentheses, variable names
and generator names.  Juxtaposition such as ``2t`` means multiplication.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import DivisionByZero, ParseError, Reducible, SemanticError, SocleLabError, UncertifiedIrreducibility, ZeroDenominator
from .fields import Field, extend, is_prime, make_cyclotomic, make_finite_field, make_rationals
from .funcfields import FunctionField

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(),:;|])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # int | name | op | end
    text: str
    pos: int


def _location(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            line, col = _location(text, pos)
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        if m.lastgroup != "ws":
            out.append(Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, message: str, tok: Token | None = None, kind=ParseError):
        tok = tok or self.tok
        line, col = _location(self.text, tok.pos)
        if kind is ParseError:
            return ParseError(message, line, col)
        return kind(f"{message} (line {line}, column {col})")

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind == "end":
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def integer(self) -> int:
        if self.tok.kind != "int":
            raise self.error(f"expected an integer, found {self.tok.text or 'end of input'!r}")
        return int(self.advance().text)

    def name(self) -> str:
        if self.tok.kind != "name":
            raise self.error(f"expected a name, found {self.tok.text or 'end of input'!r}")
        return self.advance().text

    def finish(self):
        if self.tok.kind != "end":
            raise self.error(f"unexpected trailing input {self.tok.text!r}")


# ---------------------------------------------------------------------------
# expressions


class _Expr:
    """Recursive descent over a cursor, evaluating into a field or function field."""

    def __init__(self, cur: _Cursor, env: dict, one):
        self.cur = cur
        self.env = env
        self.one = one

    def expr(self):
        cur = self.cur
        if cur.accept("-"):
            value = -self.term()
        else:
            cur.accept("+")
            value = self.term()
        while cur.tok.kind == "op" and cur.tok.text in "+-":
            op = cur.advance().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        cur = self.cur
        value = self.power()
        while True:
            t = cur.tok
            if t.kind == "op" and t.text in "*/":
                cur.advance()
                rhs = self.power()
                if t.text == "*":
                    value = value * rhs
                else:
                    value = self._divide(value, rhs, t)
            elif t.kind in ("int", "name") or (t.kind == "op" and t.text == "("):
                value = value * self.power()
            else:
                return value

    def _divide(self, a, b, tok):
        if b.is_zero():
            raise self.cur.error("division by zero", tok, SemanticError)
        try:
            return a / b
        except (DivisionByZero, ZeroDenominator, ZeroDivisionError):
            raise self.cur.error("division by zero", tok, SemanticError) from None

    def power(self):
        cur = self.cur
        base = self.atom()
        if cur.tok.kind == "op" and cur.tok.text == "^":
            tok = cur.advance()
            neg = cur.accept("-")
            e = cur.integer()
            if neg:
                if base.is_zero():
                    raise cur.error("zero raised to a negative power", tok, SemanticError)
                return self._divide(self.one, base**e, tok)
            return base**e
        return base

    def atom(self):
        cur = self.cur
        t = cur.tok
        if t.kind == "int":
            cur.advance()
            return self.one * int(t.text)
        if t.kind == "name":
            cur.advance()
            if t.text not in self.env:
                raise cur.error(f"unknown name {t.text!r}", t, SemanticError)
            return self.env[t.text]
        if cur.accept("("):
            value = self.expr()
            cur.expect(")")
            return value
        raise cur.error(f"expected a number, name or '(', found {t.text or 'end of input'!r}")


def _field_env(F: Field) -> dict:
    return dict(F.gens())


def _ff_env(R: FunctionField) -> dict:
    env = {k: R.const(v) for k, v in _field_env(R.base).items()}
    env.update({v: R.var(v) for v in R.vars})
    return env


def _evaluate(cur: _Cursor, target):
    if isinstance(target, FunctionField):
        return _Expr(cur, _ff_env(target), target.one).expr()
    return _Expr(cur, _field_env(target), target.one).expr()


def parse_expression(text: str, target: Field | FunctionField):
    """One element of ``target`` from infix text."""
    cur = _Cursor(text)
    value = _evaluate(cur, target)
    cur.finish()
    return value


def parse_element_list(text: str, target: Field | FunctionField) -> list:
    """Comma separated expressions; an empty string gives an empty list."""
    cur = _Cursor(text)
    out = []
    if cur.tok.kind == "end":
        return out
    while True:
        out.append(_evaluate(cur, target))
        if not cur.accept(","):
            break
    cur.finish()
    return out


# ---------------------------------------------------------------------------
# field descriptors


def _prime_power(q: int) -> tuple[int, int] | None:
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            return (p, k) if r == 1 else None
    return None


def _base_field(cur: _Cursor) -> Field:
    tok = cur.tok
    head = cur.name()
    if head == "Q":
        nxt, after = cur.peek(1), cur.peek(2)
        if cur.tok.text == "(" and nxt.kind == "name" and re.fullmatch(r"zeta\d+", nxt.text) and after.text == ")":
            cur.advance()
            n = int(cur.advance().text[4:])
            cur.advance()
            if n < 3:
                raise cur.error(f"zeta{n} is rational; write Q", nxt, SemanticError)
            return make_cyclotomic(n)
        return make_rationals()
    if head == "Fp":
        cur.expect("(")
        ptok = cur.tok
        p = cur.integer()
        cur.expect(")")
        if not is_prime(p):
            raise cur.error(f"{p} is not prime", ptok, SemanticError)
        return make_finite_field(p)
    if head == "Fq":
        cur.expect("(")
        ptok = cur.tok
        p = cur.integer()
        cur.expect(",")
        k = cur.integer()
        symbol = "g"
        if cur.accept(";"):
            symbol = cur.name()
        cur.expect(")")
        if not is_prime(p):
            raise cur.error(f"{p} is not prime", ptok, SemanticError)
        if k < 1:
            raise cur.error("extension degree must be positive", ptok, SemanticError)
        return make_finite_field(p, k, symbol)
    m = re.fullmatch(r"F(\d+)", head)
    if m:
        q = int(m.group(1))
        pk = _prime_power(q) if q > 1 else None
        if pk is None:
            raise cur.error(f"{q} is not a prime power", tok, SemanticError)
        return make_finite_field(*pk)
    raise cur.error(f"unknown field {head!r}", tok)


def _is_step(cur: _Cursor) -> bool:
    return cur.tok.text == "(" and cur.peek(1).kind == "name" and cur.peek(2).text == ":"


def _extension_step(cur: _Cursor, F: Field) -> Field:
    cur.expect("(")
    stok = cur.tok
    symbol = cur.name()
    cur.expect(":")
    if symbol in F.symbols or symbol in ("T", "U"):
        raise cur.error(f"symbol {symbol!r} is already in use", stok, SemanticError)
    ptok = cur.tok
    R = FunctionField(F, (symbol,))
    env = _ff_env(R)
    if "x" not in env:
        # canonical text writes every minimal polynomial in x
        env["x"] = R.var(symbol)
    f = _Expr(cur, env, R.one).expr()
    cur.expect(")")
    if not f.is_polynomial():
        raise cur.error("a minimal polynomial cannot have a denominator", ptok, SemanticError)
    poly = f.num.to_upoly(0)
    if poly.degree < 2 or not poly.lc.is_one():
        raise cur.error("minimal polynomial must be monic of degree at least 2", ptok, SemanticError)
    try:
        return extend(F, poly, symbol, assert_irreducible=False)
    except Reducible as exc:
        raise cur.error(f"reducible minimal polynomial: {exc}", ptok, SemanticError) from None
    except UncertifiedIrreducibility:
        return extend(F, poly, symbol, assert_irreducible=True)


def _variables(cur: _Cursor, F: Field) -> FunctionField:
    cur.expect("(")
    names = [cur.name()]
    positions = [cur.tokens[cur.i - 1]]
    while cur.accept(","):
        names.append(cur.name())
        positions.append(cur.tokens[cur.i - 1])
    for n, t in zip(names, positions):
        if n in F.symbols:
            raise cur.error(f"variable {n!r} clashes with a field generator", t, SemanticError)
        if names.count(n) > 1:
            raise cur.error(f"variable {n!r} listed twice", t, SemanticError)
    if cur.accept("|"):
        side: dict[str, str] = {}
        while cur.tok.kind == "name":
            t = cur.tok
            v = cur.name()
            cur.expect(":")
            s = cur.name()
            if v not in names:
                raise cur.error(f"{v!r} is not a listed variable", t, SemanticError)
            if s not in ("T", "U"):
                raise cur.error(f"side must be T or U, got {s!r}", t, SemanticError)
            if v in side:
                raise cur.error(f"{v!r} assigned twice", t, SemanticError)
            side[v] = s
        missing = [v for v in names if v not in side]
        if missing:
            raise cur.error(f"no side given for {missing}", cur.tok, SemanticError)
        cur.expect(")")
        return FunctionField(F, [v for v in names if side[v] == "T"], [v for v in names if side[v] == "U"])
    cur.expect(")")
    return FunctionField(F, names[:1], names[1:])


def _descriptor(cur: _Cursor) -> Field | FunctionField:
    F = _base_field(cur)
    while _is_step(cur):
        F = _extension_step(cur, F)
    if cur.tok.text == "(":
        return _variables(cur, F)
    return F


def parse_field(text: str) -> Field | FunctionField:
    """A field or a function field from its textual descriptor."""
    cur = _Cursor(text)
    try:
        out = _descriptor(cur)
    except (ParseError, SemanticError):
        raise
    except (SocleLabError, ValueError) as exc:
        raise cur.error(str(exc), kind=SemanticError) from None
    cur.finish()
    return out


__all__ = [
    "Token",
    "parse_element_list",
    "parse_expression",
    "parse_field",
    "tokenize",
]
