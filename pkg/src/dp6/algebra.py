"""Exact rational arithmetic: univariate polynomials, binary forms and small
linear algebra over the rationals.

Everything here is immutable and uses :class:`fractions.Fraction`; no floating
point is used anywhere in the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction

Matrix = list[list[Fraction]]


def Q(x) -> Fraction:
    """Coerce ``x`` (int, str, Fraction) to a Fraction."""
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# univariate polynomials
# ---------------------------------------------------------------------------


class UniPoly:
    """Dense univariate polynomial with rational coefficients, low degree first.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Q(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, a) -> "UniPoly":
        return cls((a,))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "UniPoly":
        p = cls((1,))
        for r in roots:
            p = p * cls((-Q(r), 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UniPoly.const(other)
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "UniPoly(0)"
        terms = []
        for i in range(self.degree, -1, -1):
            a = self.coeffs[i]
            if a == 0:
                continue
            mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mon and a == 1:
                terms.append(mon)
            elif mon and a == -1:
                terms.append("-" + mon)
            else:
                terms.append(f"{a}{'*' + mon if mon else ''}")
        return "UniPoly(" + " + ".join(terms).replace("+ -", "- ") + ")"

    def __neg__(self) -> "UniPoly":
        return UniPoly(-a for a in self.coeffs)

    def __add__(self, other) -> "UniPoly":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __sub__(self, other) -> "UniPoly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "UniPoly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "UniPoly":
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise ValueError("negative power")
        out = UniPoly((1,))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other) -> tuple["UniPoly", "UniPoly"]:
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        quo = [Fraction(0)] * max(len(rem) - dq, 0)
        inv = 1 / other.lead
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv
            if c == 0:
                continue
            quo[k - dq] = c
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] -= c * b
        return UniPoly(quo), UniPoly(rem[:dq])

    def __floordiv__(self, other) -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "UniPoly":
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(i * a for i, a in enumerate(self.coeffs) if i > 0)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        inv = 1 / self.lead
        return UniPoly(a * inv for a in self.coeffs)


def _as_poly(p) -> UniPoly:
    if isinstance(p, UniPoly):
        return p
    return UniPoly.const(p)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd; gcd(0, 0) is the zero polynomial."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_decompose(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm.

    Returns monic, pairwise coprime, squarefree factors ``f_i`` with
    multiplicities ``m_i`` such that ``p = lead(p) * prod f_i**m_i``.
    Constant factors are omitted, so a nonzero constant gives ``[]``.
    """
    if p.is_zero():
        raise ValueError("zero input")
    p = p.monic()
    if p.degree == 0:
        return []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    out = []
    i = 1
    while b.degree > 0:
        d = c - b.derivative()
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g, i))
        b = b // g
        c = d // g
        i += 1
    return out


def squarefree_part(p: UniPoly) -> UniPoly:
    out = UniPoly((1,))
    for f, _ in squarefree_decompose(p):
        out = out * f
    return out


def _integer_coeffs(p: UniPoly) -> list[int]:
    den = 1
    for a in p.coeffs:
        den = den * a.denominator // math.gcd(den, a.denominator)
    ints = [int(a * den) for a in p.coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return [v // g for v in ints] if g else ints


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_sqrt(a: Fraction) -> Fraction | None:
    if a < 0:
        return None
    rn, rd = math.isqrt(a.numerator), math.isqrt(a.denominator)
    if rn * rn == a.numerator and rd * rd == a.denominator:
        return Fraction(rn, rd)
    return None


def rational_roots(p: UniPoly) -> list[Fraction]:
    """Distinct rational roots of ``p`` in increasing order."""
    if p.is_zero():
        raise ValueError("zero input")
    roots: set[Fraction] = set()
    for f, _ in squarefree_decompose(p):
        roots.update(_rational_roots_squarefree(f))
    return sorted(roots)


def _rational_roots_squarefree(f: UniPoly) -> list[Fraction]:
    if f.degree == 1:
        return [-f.coeffs[0] / f.coeffs[1]]
    if f.degree == 2:
        c, b, a = f.coeffs
        s = rational_sqrt(b * b - 4 * a * c)
        if s is None:
            return []
        return sorted({(-b + s) / (2 * a), (-b - s) / (2 * a)})
    out = []
    if f.coeffs[0] == 0:
        out.append(Fraction(0))
        f = f // UniPoly.x()
    ints = _integer_coeffs(f)
    for num in _divisors(ints[0]):
        for den in _divisors(ints[-1]):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if f(cand) == 0 and cand not in out:
                    out.append(cand)
    return sorted(out)


# ---------------------------------------------------------------------------
# binary forms
# ---------------------------------------------------------------------------


ProjPoint = tuple[Fraction, Fraction]


def normalize_point(p: Sequence) -> tuple[Fraction, ...]:
    """Scale a projective point so its last nonzero coordinate is 1."""
    p = [Q(a) for a in p]
    for a in reversed(p):
        if a != 0:
            return tuple(x / a for x in p)
    raise ValueError("zero vector is not a projective point")


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous form ``sum coeffs[i] * lam**i * mu**(degree - i)``."""

    degree: int
    coeffs: tuple[Fraction, ...]

    def __init__(self, degree: int, coeffs: Iterable):
        c = tuple(Q(a) for a in coeffs)
        if len(c) > degree + 1:
            if any(c[degree + 1:]):
                raise ValueError(f"coefficients exceed declared degree {degree}")
            c = c[: degree + 1]
        c = c + (Fraction(0),) * (degree + 1 - len(c))
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_dehomogenized(cls, f: UniPoly, degree: int) -> "BinaryForm":
        """Homogenize ``f(lam)`` as a form of the given degree in (lam, mu)."""
        if f.degree > degree:
            raise ValueError("polynomial degree exceeds form degree")
        return cls(degree, f.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __call__(self, lam, mu):
        return sum(a * lam**i * mu ** (self.degree - i) for i, a in enumerate(self.coeffs))

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        out = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return BinaryForm(self.degree + other.degree, out)

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return BinaryForm(self.degree, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return self + BinaryForm(other.degree, (-b for b in other.coeffs))

    def scale(self, c) -> "BinaryForm":
        return BinaryForm(self.degree, (Q(c) * a for a in self.coeffs))

    def dehomogenize(self) -> UniPoly:
        return UniPoly(self.coeffs)

    def substitute(self, a, b, c, d) -> "BinaryForm":
        """Return ``F(a*lam + b*mu, c*lam + d*mu)``."""
        lin1 = BinaryForm(1, (b, a))
        lin2 = BinaryForm(1, (d, c))
        out = BinaryForm(self.degree, ())
        for i, coef in enumerate(self.coeffs):
            if coef == 0:
                continue
            term = BinaryForm(0, (coef,))
            for _ in range(i):
                term = term * lin1
            for _ in range(self.degree - i):
                term = term * lin2
            out = out + term
        return out

    def __str__(self) -> str:
        parts = []
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            mon = "*".join(
                s for s in (_pw("lam", i), _pw("mu", self.degree - i)) if s
            )
            parts.append(f"{a}*{mon}" if mon else f"{a}")
        return " + ".join(parts) if parts else "0"


def _pw(name: str, e: int) -> str:
    return "" if e == 0 else (name if e == 1 else f"{name}^{e}")


@dataclass(frozen=True)
class FormAnalysis:
    distinct_roots: int
    rational_roots: tuple[tuple[ProjPoint, int], ...]
    multiplicities: tuple[int, ...]  # over the algebraic closure, descending


def binary_form_analyze(F: BinaryForm) -> FormAnalysis:
    """Count distinct roots of ``F`` over the algebraic closure and list the
    rational ones, ``(lam:mu)`` normalized with last nonzero coordinate 1."""
    if F.is_zero():
        raise ValueError("zero form")
    top = max(i for i, a in enumerate(F.coeffs) if a != 0)
    at_infinity = F.degree - top  # multiplicity of (1:0), i.e. power of mu
    f = UniPoly(F.coeffs)
    distinct = 1 if at_infinity else 0
    mults = [at_infinity] if at_infinity else []
    roots: list[tuple[ProjPoint, int]] = []
    if at_infinity:
        roots.append(((Fraction(1), Fraction(0)), at_infinity))
    finite = []
    for factor, m in squarefree_decompose(f):
        distinct += factor.degree
        mults.extend([m] * factor.degree)
        for r in _rational_roots_squarefree(factor):
            finite.append(((r, Fraction(1)), m))
    roots.extend(sorted(finite))
    return FormAnalysis(distinct, tuple(roots), tuple(sorted(mults, reverse=True)))


# ---------------------------------------------------------------------------
# linear algebra
# ---------------------------------------------------------------------------


def to_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[Q(a) for a in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(M: Matrix) -> Matrix:
    return [list(col) for col in zip(*M)] if M else []


def matmul(A: Matrix, B: Matrix) -> Matrix:
    Bt = transpose(B)
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in Bt] for row in A]


def matvec(A: Matrix, v: Sequence) -> list[Fraction]:
    return [sum((a * Q(b) for a, b in zip(row, v)), Fraction(0)) for row in A]


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Q(a) * Q(b) for a, b in zip(u, v)), Fraction(0))


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = [list(map(Q, row)) for row in M]
    if not A:
        return A, []
    rows, cols = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = 1 / A[r][c]
        A[r] = [a * inv for a in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank(M: Matrix) -> int:
    return len(rref(M)[1])


def nullspace(M: Matrix, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{v : M v = 0}``; each vector has a 1 in a free column."""
    if not M:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    R, pivots = rref(M)
    n = len(M[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -R[r][fc]
        basis.append(v)
    return basis


def det(M: Matrix) -> Fraction:
    A = [list(map(Q, row)) for row in M]
    n = len(A)
    out = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if A[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            A[c], A[pr] = A[pr], A[c]
            out = -out
        out *= A[c][c]
        inv = 1 / A[c][c]
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] * inv
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return out


def solve(A: Matrix, b: Sequence) -> list[Fraction]:
    """Unique solution of ``A x = b``; raises if singular or inconsistent."""
    n = len(A[0])
    aug = [list(map(Q, row)) + [Q(v)] for row, v in zip(A, b)]
    R, pivots = rref(aug)
    if n in pivots:
        raise ValueError("inconsistent linear system")
    if len(pivots) < n:
        raise ValueError("linear system has no unique solution")
    return [R[i][n] for i in range(n)]


def inverse(A: Matrix) -> Matrix:
    n = len(A)
    aug = [list(map(Q, row)) + e for row, e in zip(A, identity(n))]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


class SymMatrix:
    """Symmetric square matrix over the rationals (immutable)."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]):
        M = tuple(tuple(Q(a) for a in row) for row in rows)
        n = len(M)
        if any(len(r) != n for r in M):
            raise ValueError("matrix is not square")
        for i in range(n):
            for j in range(i + 1, n):
                if M[i][j] != M[j][i]:
                    raise ValueError(f"matrix is not symmetric at ({i}, {j})")
        object.__setattr__(self, "rows", M)

    def __setattr__(self, name, value):
        raise AttributeError("SymMatrix is immutable")

    @classmethod
    def diag(cls, entries: Iterable) -> "SymMatrix":
        e = list(entries)
        return cls([[e[i] if i == j else 0 for j in range(len(e))] for i in range(len(e))])

    @property
    def size(self) -> int:
        return len(self.rows)

    def tolist(self) -> Matrix:
        return [list(r) for r in self.rows]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, SymMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(a) for a in r) + "]" for r in self.rows)
        return f"SymMatrix([{body}])"

    def quad(self, v: Sequence) -> Fraction:
        return dot(v, matvec(self.tolist(), v))

    def bilinear(self, u: Sequence, v: Sequence) -> Fraction:
        return dot(u, matvec(self.tolist(), v))

    def apply(self, v: Sequence) -> list[Fraction]:
        return matvec(self.tolist(), v)

    def restrict(self, basis: Sequence[Sequence]) -> "SymMatrix":
        """Gram matrix of the form on the span of ``basis`` (B^T M B)."""
        return SymMatrix([[self.bilinear(u, v) for v in basis] for u in basis])

    def det(self) -> Fraction:
        return det(self.tolist())


def symmetric_rank_kernel(M) -> tuple[int, list[list[Fraction]]]:
    """Rank and kernel basis of a symmetric matrix."""
    if not isinstance(M, SymMatrix):
        M = SymMatrix(M)  # raises on non-symmetric input
    ker = nullspace(M.tolist(), M.size)
    return M.size - len(ker), ker


def binary_forms_coprime(F: BinaryForm, G: BinaryForm) -> bool:
    """True if F and G share no root over the algebraic closure."""
    if F.is_zero() or G.is_zero():
        return False
    inf_f = F.degree - max(i for i, a in enumerate(F.coeffs) if a != 0)
    inf_g = G.degree - max(i for i, a in enumerate(G.coeffs) if a != 0)
    if inf_f and inf_g:
        return False
    return poly_gcd(F.dehomogenize(), G.dehomogenize()).degree <= 0


def root_multiplicity(F: BinaryForm, point: Sequence) -> int:
    """Multiplicity of the root ``(lam:mu)`` of F (0 if not a root)."""
    lam, mu = normalize_point(point)
    for r, m in binary_form_analyze(F).rational_roots:
        if r == (lam, mu):
            return m
    return 0
