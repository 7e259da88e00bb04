"""Trace duality for a finite free algebra B over A = Q.

With E = B/A and a basis (1, b_1, ..., b_n) of B, the map

    c_B : Hom_A(E, A) (x)_A B -> Hom_A(B, A),   f (x) b  |->  b.f,  (b.f)(x) = f(bx)

is surjective. Here it is checked by rank and by evaluating an explicit
preimage of the dual element 1^v.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import Matrix, UniPoly, inverse, rank, solve

Vec = tuple[Fraction, ...]


class TraceError(ValueError):
    pass


def _vec(v: Iterable) -> Vec:
    return tuple(Fraction(a) for a in v)


@dataclass(frozen=True)
class FiniteAlgebra:
    """Commutative unital Q-algebra given by structure constants:
    ``b_i b_j = sum_k table[i][j][k] b_k``."""

    table: tuple[tuple[Vec, ...], ...]
    unit: Vec
    label: str = ""

    def __post_init__(self):
        N = len(self.table)
        if N == 0 or any(len(r) != N or any(len(c) != N for c in r) for r in self.table):
            raise TraceError("structure constants must be an N x N x N table")
        if len(self.unit) != N:
            raise TraceError("unit has the wrong length")
        e = [_unit_vec(N, i) for i in range(N)]
        for i in range(N):
            if self.mul(self.unit, e[i]) != e[i]:
                raise TraceError("unit axiom fails")
            for j in range(N):
                if self.table[i][j] != self.table[j][i]:
                    raise TraceError("algebra is not commutative")
        for i, j, k in itertools.product(range(N), repeat=3):
            if self.mul(self.mul(e[i], e[j]), e[k]) != self.mul(e[i], self.mul(e[j], e[k])):
                raise TraceError("algebra is not associative")

    @property
    def rank(self) -> int:
        return len(self.table)

    def mul(self, x: Sequence, y: Sequence) -> Vec:
        N = self.rank
        out = [Fraction(0)] * N
        for i, a in enumerate(x):
            if a == 0:
                continue
            for j, b in enumerate(y):
                if b == 0:
                    continue
                ab = a * b
                for k, c in enumerate(self.table[i][j]):
                    if c:
                        out[k] += ab * c
        return tuple(out)

    def mult_matrix(self, b: Sequence) -> Matrix:
        """Matrix of x |-> b x (columns are images of basis vectors)."""
        N = self.rank
        cols = [self.mul(b, _unit_vec(N, j)) for j in range(N)]
        return [[cols[j][k] for j in range(N)] for k in range(N)]

    def trace(self, b: Sequence) -> Fraction:
        M = self.mult_matrix(b)
        return sum((M[i][i] for i in range(self.rank)), Fraction(0))

    def change_basis(self, vectors: Sequence[Sequence]) -> "FiniteAlgebra":
        """Same algebra in the basis given by ``vectors`` (old coordinates)."""
        P = [[Fraction(vectors[j][i]) for j in range(self.rank)] for i in range(self.rank)]
        Pinv = inverse(P)

        def new_coords(v):
            return tuple(sum(Pinv[i][k] * v[k] for k in range(self.rank)) for i in range(self.rank))

        table = tuple(
            tuple(new_coords(self.mul(vectors[i], vectors[j])) for j in range(self.rank))
            for i in range(self.rank)
        )
        return FiniteAlgebra(table, new_coords(self.unit), self.label)

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_poly(cls, f: UniPoly | Sequence, label: str = "") -> "FiniteAlgebra":
        """Q[x]/(f) for monic f, basis 1, x, ..., x^(d-1)."""
        f = f if isinstance(f, UniPoly) else UniPoly(f)
        if f.is_zero() or f.lead != 1:
            raise TraceError("polynomial must be monic")
        d = f.degree
        if d < 1:
            raise TraceError("polynomial must have positive degree")
        x = UniPoly.x()

        def coords(p: UniPoly) -> Vec:
            r = (p % f).coeffs
            return tuple(r[k] if k < len(r) else Fraction(0) for k in range(d))

        table = tuple(tuple(coords(x ** (i + j)) for j in range(d)) for i in range(d))
        return cls(table, _unit_vec(d, 0), label or f"Q[x]/({_poly_text(f)})")

    @classmethod
    def split(cls, n: int) -> "FiniteAlgebra":
        """Q^n with the idempotent basis."""
        if n < 1:
            raise TraceError("n must be positive")
        table = tuple(tuple(_unit_vec(n, i) if i == j else (Fraction(0),) * n for j in range(n)) for i in range(n))
        return cls(table, (Fraction(1),) * n, "Q" + "xQ" * (n - 1))

    def product(self, other: "FiniteAlgebra") -> "FiniteAlgebra":
        n, m = self.rank, other.rank
        N = n + m
        rows = []
        for i in range(N):
            row = []
            for j in range(N):
                if i < n and j < n:
                    row.append(self.table[i][j] + (Fraction(0),) * m)
                elif i >= n and j >= n:
                    row.append((Fraction(0),) * n + other.table[i - n][j - n])
                else:
                    row.append((Fraction(0),) * N)
            rows.append(tuple(row))
        return FiniteAlgebra(tuple(rows), self.unit + other.unit, f"{self.label} x {other.label}")


def _unit_vec(n: int, i: int) -> Vec:
    return tuple(Fraction(int(k == i)) for k in range(n))


def _poly_text(f: UniPoly) -> str:
    parts = []
    for k in range(f.degree, -1, -1):
        a = f.coeffs[k]
        if a == 0:
            continue
        mon = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        mag = abs(a)
        body = (str(mag) if mag != 1 or not mon else "") + mon
        parts.append(("-" if a < 0 else "+") + body)
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


def parse_poly(text: str) -> UniPoly:
    """Parse a polynomial in x such as ``x^3-2`` (integer or p/q coefficients)."""
    from .expr import expand

    p = expand(text)
    bad = p.names() - {"x"}
    if bad:
        raise TraceError(f"unknown variables {sorted(bad)}")
    coeffs: dict[int, Fraction] = {}
    for m, c in p.terms.items():
        k = dict(m).get("x", 0)
        coeffs[k] = coeffs.get(k, Fraction(0)) + c
    if not coeffs:
        raise TraceError("zero polynomial")
    return UniPoly(coeffs.get(k, 0) for k in range(max(coeffs) + 1))


# ---------------------------------------------------------------------------
# normalized basis, c_B and the preimage of 1^v
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TraceData:
    basis: tuple[Vec, ...]  # (1, b_1, ..., b_n) in the original coordinates
    trace_vector: tuple[Fraction, ...]  # Tr of each basis element
    trace_form: tuple[tuple[Fraction, ...], ...]  # Tr(b_i b_j)
    algebra: FiniteAlgebra  # the algebra rewritten in the normalized basis


def normalize_basis(B: FiniteAlgebra) -> TraceData:
    """Complete 1 to a basis and shift each b by -Tr(b)/(n+1) so Tr(b_i) = 0."""
    N = B.rank
    if N < 2:
        raise TraceError("rank-1 algebra: E = B/A is zero")
    vecs = [B.unit]
    for j in range(N):
        e = _unit_vec(N, j)
        if rank([list(v) for v in vecs + [e]]) > len(vecs):
            vecs.append(e)
    basis = [B.unit]
    for b in vecs[1:]:
        t = B.trace(b) / N
        basis.append(tuple(x - t * u for x, u in zip(b, B.unit)))
    nb = B.change_basis(basis)
    tv = tuple(nb.trace(_unit_vec(N, i)) for i in range(N))
    tf = tuple(
        tuple(nb.trace(nb.mul(_unit_vec(N, i), _unit_vec(N, j))) for j in range(N)) for i in range(N)
    )
    return TraceData(tuple(basis), tv, tf, nb)


def act(B: FiniteAlgebra, b: Sequence, f: Sequence) -> Vec:
    """The B-module structure on Hom(B, A): (b.f)(x) = f(bx).
    Functionals are given by their values on the basis."""
    N = B.rank
    return tuple(
        sum((fk * c for fk, c in zip(f, B.mul(b, _unit_vec(N, m)))), Fraction(0)) for m in range(N)
    )


def c_matrix(B: FiniteAlgebra, data: TraceData | None = None) -> Matrix:
    """Matrix of c_B in the normalized basis.

    Column (i, k), for i = 1..n and k = 0..n, is the image of
    b_i^v (x) beta_k; its m-th entry is b_i^v(beta_k beta_m).
    """
    data = data or normalize_basis(B)
    nb = data.algebra
    N = nb.rank
    cols = []
    for i in range(1, N):
        dual = _unit_vec(N, i)
        for k in range(N):
            cols.append(act(nb, _unit_vec(N, k), dual))
    return [[col[m] for col in cols] for m in range(N)]


def preimage_of_unit_dual(B: FiniteAlgebra, data: TraceData | None = None) -> list[tuple[int, Vec]]:
    """b_1^v (x) (b_1 - b_1^v(b_1^2)) + sum_{i>=2} b_i^v (x) (-b_1^v(b_1 b_i)),
    as a list of (dual index i, element of B in normalized coordinates)."""
    data = data or normalize_basis(B)
    nb = data.algebra
    N = nb.rank
    e = [_unit_vec(N, i) for i in range(N)]
    c = nb.mul(e[1], e[1])[1]
    first = tuple(a - c * u for a, u in zip(e[1], e[0]))
    out = [(1, first)]
    for i in range(2, N):
        coef = -nb.mul(e[1], e[i])[1]
        out.append((i, tuple(coef * u for u in e[0])))
    return out


def apply_c(B: FiniteAlgebra, element: Sequence[tuple[int, Sequence]], data: TraceData | None = None) -> Vec:
    data = data or normalize_basis(B)
    nb = data.algebra
    N = nb.rank
    total = [Fraction(0)] * N
    for i, b in element:
        img = act(nb, b, _unit_vec(N, i))
        total = [x + y for x, y in zip(total, img)]
    return tuple(total)


@dataclass(frozen=True)
class A4Report:
    label: str
    n: int
    rank_c: int
    surjective: bool
    preimage_value: Vec
    preimage_ok: bool

    @property
    def ok(self) -> bool:
        return self.surjective and self.preimage_ok


def verify_prop_a4(B: FiniteAlgebra) -> A4Report:
    """Check rank(c_B) = n + 1 and that the explicit preimage hits 1^v."""
    data = normalize_basis(B)
    N = B.rank
    M = c_matrix(B, data)
    r = rank(M)
    val = apply_c(B, preimage_of_unit_dual(B, data), data)
    report = A4Report(B.label, N - 1, r, r == N, val, val == _unit_vec(N, 0))
    if not report.ok:
        raise AssertionError(f"c_B check failed for {B.label}: {report}")
    return report


def corpus() -> list[FiniteAlgebra]:
    """Monic quadratics and cubics with coefficients in -2..2, plus split
    products and a non-reduced product."""
    out = []
    rng = range(-2, 3)
    for a, b in itertools.product(rng, repeat=2):
        out.append(FiniteAlgebra.from_poly(UniPoly((b, a, 1))))
    for a, b, c in itertools.product(rng, repeat=3):
        out.append(FiniteAlgebra.from_poly(UniPoly((c, b, a, 1))))
    out.append(FiniteAlgebra.split(2))
    out.append(FiniteAlgebra.split(3))
    out.append(FiniteAlgebra.split(1).product(FiniteAlgebra.from_poly(UniPoly((0, 0, 1)))))
    out.append(FiniteAlgebra.split(1).product(FiniteAlgebra.from_poly(UniPoly((-2, 0, 1)))))
    return out
