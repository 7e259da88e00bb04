"""Cycle expressions: a tiny parser, a canonical printer and the expanded
polynomial form ``CycleExpr`` that rings integrate.

Grammar (whitespace is ignored)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := coef ['*'] factor ('*' factor)* | coef | factor ('*' factor)*
    coef   := INT ['/' INT]
    factor := NAME ['^' INT] | '(' expr ')' ['^' INT]
    NAME   := [A-Za-z_][A-Za-z0-9_]*
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Union


class ExprSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"syntax error at position {pos}: {msg}")
        self.pos = pos


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Group:
    body: "SumExpr"


@dataclass(frozen=True)
class Power:
    base: Union[Sym, Group]
    exp: int


Factor = Union[Sym, Group, Power]


@dataclass(frozen=True)
class Term:
    coef: Fraction
    factors: tuple[Factor, ...]


@dataclass(frozen=True)
class SumExpr:
    terms: tuple[Term, ...]


ExprAST = SumExpr


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m.group(0).strip() == "":
            break
        if m.group(1):
            toks.append(("int", m.group(1), m.start(1)))
        elif m.group(2):
            toks.append(("name", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ExprSyntaxError(f"unexpected character {ch!r}", m.start(3))
            toks.append(("op", ch, m.start(3)))
        pos = m.end()
    toks.append(("end", "", len(src)))
    return toks


class _Parser:
    def __init__(self, src: str):
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def accept(self, value: str) -> bool:
        kind, v, _ = self.peek()
        if kind == "op" and v == value:
            self.i += 1
            return True
        return False

    def fail(self, msg: str):
        raise ExprSyntaxError(msg, self.peek()[2])

    def parse(self) -> SumExpr:
        e = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return e

    def expr(self) -> SumExpr:
        sign = -1 if self.accept("-") else 1
        terms = [self.term(sign)]
        while True:
            if self.accept("+"):
                terms.append(self.term(1))
            elif self.accept("-"):
                terms.append(self.term(-1))
            else:
                return SumExpr(tuple(terms))

    def term(self, sign: int) -> Term:
        coef = Fraction(sign)
        factors = []
        kind, v, _ = self.peek()
        if kind == "int":
            self.take()
            c = Fraction(int(v))
            if self.accept("/"):
                kind, d, _ = self.peek()
                if kind != "int":
                    self.fail("expected integer denominator")
                self.take()
                if int(d) == 0:
                    self.fail("zero denominator")
                c /= int(d)
            coef *= c
            if self.accept("*"):
                factors.append(self.factor())
            elif self._starts_factor():
                factors.append(self.factor())
            else:
                return Term(coef, ())
        else:
            factors.append(self.factor())
        while self.accept("*"):
            factors.append(self.factor())
        return Term(coef, tuple(factors))

    def _starts_factor(self) -> bool:
        kind, v, _ = self.peek()
        return kind == "name" or (kind == "op" and v == "(")

    def factor(self) -> Factor:
        kind, v, _ = self.peek()
        if kind == "name":
            self.take()
            base: Union[Sym, Group] = Sym(v)
        elif kind == "op" and v == "(":
            self.take()
            base = Group(self.expr())
            if not self.accept(")"):
                self.fail("expected ')'")
        else:
            self.fail("expected a class name or '('" if kind != "end" else "unexpected end of input")
        if self.accept("^"):
            kind, v, _ = self.peek()
            if kind != "int":
                self.fail("expected integer exponent")
            self.take()
            return Power(base, int(v))
        return base


def parse_expr(src: str) -> SumExpr:
    """Parse ``src`` into an AST. Names are resolved later, at evaluation."""
    return _Parser(src).parse()


# ---------------------------------------------------------------------------
# canonical printer
# ---------------------------------------------------------------------------


def _fmt_factor(f: Factor) -> str:
    if isinstance(f, Sym):
        return f.name
    if isinstance(f, Group):
        return "(" + format_expr(f.body) + ")"
    return f"{_fmt_factor(f.base)}^{f.exp}"


def format_expr(e: SumExpr) -> str:
    """Canonical rendering; ``parse_expr(format_expr(e)) == e``."""
    out = []
    for k, t in enumerate(e.terms):
        neg = t.coef < 0
        mag = -t.coef if neg else t.coef
        if t.factors:
            body = "*".join(_fmt_factor(f) for f in t.factors)
            if mag != 1:
                body = f"{mag}*{body}"
        else:
            body = str(mag)
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# ---------------------------------------------------------------------------
# expanded polynomials
# ---------------------------------------------------------------------------

Monomial = tuple[tuple[str, int], ...]  # sorted by name, positive exponents


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    d = dict(a)
    for n, e in b:
        d[n] = d.get(n, 0) + e
    return tuple(sorted(d.items()))


class CycleExpr:
    """Formal polynomial in class names with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        t = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c != 0:
                t[m] = t.get(m, Fraction(0)) + c
        object.__setattr__(self, "terms", {m: c for m, c in t.items() if c != 0})

    def __setattr__(self, name, value):
        raise AttributeError("CycleExpr is immutable")

    @classmethod
    def var(cls, name: str) -> "CycleExpr":
        return cls({((name, 1),): Fraction(1)})

    @classmethod
    def const(cls, c) -> "CycleExpr":
        return cls({(): Fraction(c)})

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coef=1) -> "CycleExpr":
        return cls({tuple(sorted((n, e) for n, e in exps.items() if e)): Fraction(coef)})

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {sum(e for _, e in m) for m in self.terms}

    def names(self) -> set[str]:
        return {n for m in self.terms for n, _ in m}

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycleExpr.const(other)
        return isinstance(other, CycleExpr) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> "CycleExpr":
        other = _as_expr(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, Fraction(0)) + c
        return CycleExpr(t)

    __radd__ = __add__

    def __neg__(self) -> "CycleExpr":
        return CycleExpr({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "CycleExpr":
        return self + (-_as_expr(other))

    def __rsub__(self, other) -> "CycleExpr":
        return _as_expr(other) - self

    def __mul__(self, other) -> "CycleExpr":
        other = _as_expr(other)
        t: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                t[m] = t.get(m, Fraction(0)) + c1 * c2
        return CycleExpr(t)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CycleExpr":
        if n < 0:
            raise ValueError("negative exponent")
        out = CycleExpr.const(1)
        for _ in range(n):
            out = out * self
        return out

    def homogeneous_part(self, k: int) -> "CycleExpr":
        return CycleExpr({m: c for m, c in self.terms.items() if sum(e for _, e in m) == k})

    def to_ast(self) -> SumExpr:
        if not self.terms:
            return SumExpr((Term(Fraction(0), ()),))
        terms = []
        for m in sorted(self.terms, key=lambda m: (-sum(e for _, e in m), m)):
            fs = tuple(Sym(n) if e == 1 else Power(Sym(n), e) for n, e in m)
            terms.append(Term(self.terms[m], fs))
        return SumExpr(tuple(terms))

    def __str__(self) -> str:
        return format_expr(self.to_ast())

    def __repr__(self) -> str:
        return f"CycleExpr({str(self)!r})"


def _as_expr(x) -> CycleExpr:
    return x if isinstance(x, CycleExpr) else CycleExpr.const(x)


def expand(e: SumExpr | str, resolve: Callable[[str], CycleExpr] | None = None) -> CycleExpr:
    """Expand an AST to a polynomial, substituting names through ``resolve``.

    Without a resolver every name stays a formal variable.
    """
    if isinstance(e, str):
        e = parse_expr(e)
    resolve = resolve or CycleExpr.var
    cache: dict[str, CycleExpr] = {}

    def name(n: str) -> CycleExpr:
        if n not in cache:
            cache[n] = resolve(n)
        return cache[n]

    def fac(f: Factor) -> CycleExpr:
        if isinstance(f, Sym):
            return name(f.name)
        if isinstance(f, Group):
            return summ(f.body)
        return fac(f.base) ** f.exp

    def summ(s: SumExpr) -> CycleExpr:
        out = CycleExpr()
        for t in s.terms:
            p = CycleExpr.const(t.coef)
            for f in t.factors:
                p = p * fac(f)
            out = out + p
        return out

    return summ(e)
