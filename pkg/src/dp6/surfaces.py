"""Picard lattices of weak sextic del Pezzo surfaces and Hirzebruch surfaces.

A weak del Pezzo surface of degree 6 is the blow-up of P^2 along a
curvilinear length-3 subscheme. The subscheme is encoded by its chains of
infinitely near points and a colinearity flag; the exceptional classes are
numbered chain by chain, so ``e_i - e_{i+1}`` is effective inside a chain.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import SymMatrix


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class PicardLattice:
    names: tuple[str, ...]
    gram: SymMatrix
    canonical: tuple[int, ...]
    label: str = ""

    def dot(self, a: Sequence, b: Sequence) -> Fraction:
        return self.gram.bilinear(a, b)

    def square(self, a: Sequence) -> Fraction:
        return self.gram.quad(a)

    def k_degree(self, a: Sequence) -> Fraction:
        return self.dot(self.canonical, a)

    def cls(self, **coeffs) -> "CurveClass":
        bad = set(coeffs) - set(self.names)
        if bad:
            raise LatticeError(f"unknown basis names {sorted(bad)}")
        return CurveClass(tuple(coeffs.get(n, 0) for n in self.names))

    def format(self, c: "CurveClass") -> str:
        parts = []
        for n, a in zip(self.names, c.coeffs):
            if a == 0:
                continue
            mag = abs(a)
            body = n if mag == 1 else f"{mag}*{n}"
            parts.append(("-" if a < 0 else "+") + body)
        if not parts:
            return "0"
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


@dataclass(frozen=True, order=True)
class CurveClass:
    coeffs: tuple[int, ...]

    def __add__(self, other: "CurveClass") -> "CurveClass":
        return CurveClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CurveClass") -> "CurveClass":
        return CurveClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, k: int) -> "CurveClass":
        return CurveClass(tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def __neg__(self) -> "CurveClass":
        return self * -1


@dataclass(frozen=True)
class DelPezzoConfig:
    chains: tuple[int, ...]
    colinear: bool

    def __post_init__(self):
        ch = tuple(sorted((int(c) for c in self.chains), reverse=True))
        if sum(ch) != 3 or any(c <= 0 for c in ch):
            raise LatticeError(f"chains must be a partition of 3, got {list(self.chains)}")
        object.__setattr__(self, "chains", ch)

    @classmethod
    def parse(cls, text: str) -> "DelPezzoConfig":
        """Parse ``chains=2+1,colinear=true``."""
        fields = {}
        for part in text.split(","):
            if "=" not in part:
                raise LatticeError(f"expected key=value, got {part!r}")
            k, v = (s.strip() for s in part.split("=", 1))
            fields[k] = v
        if set(fields) != {"chains", "colinear"}:
            raise LatticeError("config needs exactly the keys 'chains' and 'colinear'")
        try:
            chains = tuple(int(c) for c in fields["chains"].split("+"))
        except ValueError:
            raise LatticeError(f"bad chains {fields['chains']!r}") from None
        flag = fields["colinear"].lower()
        if flag not in ("true", "false"):
            raise LatticeError("colinear must be true or false")
        return cls(chains, flag == "true")

    def __str__(self) -> str:
        return f"chains={'+'.join(map(str, self.chains))},colinear={'true' if self.colinear else 'false'}"

    @property
    def fiber_type(self) -> str:
        """The type label (i,j) with i = 2 for non-colinear, j = number of chains."""
        return f"({1 if self.colinear else 2},{len(self.chains)})"


ALL_CONFIGS = tuple(
    DelPezzoConfig(ch, col)
    for col in (False, True)
    for ch in ((1, 1, 1), (2, 1), (3,))
)


def dp6_lattice() -> PicardLattice:
    return PicardLattice(("h", "e1", "e2", "e3"), SymMatrix.diag([1, -1, -1, -1]), (-3, 1, 1, 1), "dP6")


def hirzebruch_lattice(n: int) -> PicardLattice:
    """F_n with h the tautological section class: h^2 = n, h.f = 1, f^2 = 0,
    K = -2h + (n-2)f."""
    if n < 0:
        raise LatticeError("n must be nonnegative")
    return PicardLattice(("h", "f"), SymMatrix([[n, 1], [1, 0]]), (-2, n - 2), f"F{n}")


def tautological_quadric_lattice() -> PicardLattice:
    """h^2 = 2, h.f = 1, f^2 = 0, K = -2h.

    Used for the pull-back of O(1) to a smooth quadric surface or to the
    resolution F_2 of the quadric cone; numerically the two agree.
    """
    return PicardLattice(("h", "f"), SymMatrix([[2, 1], [1, 0]]), (-2, 0), "quadric(h^2=2)")


def build_config(c: DelPezzoConfig) -> tuple[PicardLattice, list[CurveClass]]:
    """Lattice and effective (-2)-classes of the blow-up along ``c``."""
    L = dp6_lattice()
    roots = []
    idx = 1
    for length in c.chains:
        for k in range(idx, idx + length - 1):
            roots.append(L.cls(**{f"e{k}": 1, f"e{k + 1}": -1}))
        idx += length
    if c.colinear:
        roots.append(L.cls(h=1, e1=-1, e2=-1, e3=-1))
    return L, roots


def minus_one_classes(L: PicardLattice | None = None) -> list[CurveClass]:
    """All C = a h - sum b_i e_i with C^2 = K.C = -1.

    From sum b_i = 3a - 1 and sum b_i^2 = a^2 + 1, Cauchy-Schwarz gives
    3(a^2 + 1) >= (3a - 1)^2, so 0 <= a <= 1 and |b_i| <= 1; the search box
    below contains that range.
    """
    L = L or dp6_lattice()
    out = []
    for a in range(-2, 3):
        for bs in itertools.product(range(-2, 3), repeat=3):
            c = CurveClass((a,) + bs)
            if L.square(c.coeffs) == -1 and L.k_degree(c.coeffs) == -1:
                out.append(c)
    return sorted(out)


def brute_force_minus_one(bound: int) -> list[CurveClass]:
    """Same enumeration over an explicit box |a|, |b_i| <= bound."""
    L = dp6_lattice()
    rng = range(-bound, bound + 1)
    return sorted(
        c for c in (CurveClass(t) for t in itertools.product(rng, repeat=4))
        if L.square(c.coeffs) == -1 and L.k_degree(c.coeffs) == -1
    )


def lines_of(c: DelPezzoConfig) -> list[CurveClass]:
    """(-1)-classes meeting every effective (-2)-class nonnegatively."""
    L, roots = build_config(c)
    return [
        C for C in minus_one_classes(L)
        if all(L.dot(C.coeffs, R.coeffs) >= 0 for R in roots)
    ]


def _dynkin_label(cartan: list[list[int]]) -> str:
    n = len(cartan)
    for i in range(n):
        if cartan[i][i] != 2:
            raise LatticeError("not a root system: diagonal entry != 2")
        for j in range(n):
            if i != j and cartan[i][j] not in (0, -1):
                raise LatticeError("unrecognized root system")
    edges = {i: [j for j in range(n) if j != i and cartan[i][j] == -1] for i in range(n)}
    if sum(len(v) for v in edges.values()) // 2 != n - 1:
        raise LatticeError("unrecognized root system: Dynkin graph is not a tree")
    branch = [i for i in range(n) if len(edges[i]) >= 3]
    if not branch:
        return f"A{n}"
    if len(branch) > 1 or len(edges[branch[0]]) > 3:
        raise LatticeError("unrecognized root system")
    b = branch[0]
    arms = []
    for start in edges[b]:
        length, prev, cur = 1, b, start
        while True:
            nxt = [j for j in edges[cur] if j != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == arms[1] == 1:
        return f"D{n}"
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return f"E{n}"
    raise LatticeError("unrecognized root system")


def ade_label(L: PicardLattice, roots: Sequence[CurveClass]) -> str:
    """ADE type of the span of ``roots`` (a set of simple roots)."""
    if not roots:
        return "smooth"
    n = len(roots)
    cartan = [[int(-L.dot(roots[i].coeffs, roots[j].coeffs)) for j in range(n)] for i in range(n)]
    seen, comps = set(), []
    for i in range(n):
        if i in seen:
            continue
        stack, comp = [i], []
        seen.add(i)
        while stack:
            k = stack.pop()
            comp.append(k)
            for j in range(n):
                if j not in seen and cartan[k][j] != 0:
                    seen.add(j)
                    stack.append(j)
        comp.sort()
        comps.append(_dynkin_label([[cartan[a][b] for b in comp] for a in comp]))
    comps.sort(key=lambda s: (s[0], int(s[1:])))
    return "+".join(comps)


def singularity_of(c: DelPezzoConfig) -> str:
    L, roots = build_config(c)
    return ade_label(L, roots)


# ---------------------------------------------------------------------------
# Riemann-Roch and Chern arithmetic
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChernData:
    rank: int
    c1: tuple  # coefficients in the lattice basis
    c2: Fraction


def hrr_chi(L: PicardLattice, rank: int, c1: Sequence, c2, chi_o: int = 1) -> Fraction:
    """chi = r chi(O) + c1.(c1 - K)/2 - c2 on a surface."""
    c1 = tuple(c1.coeffs) if isinstance(c1, CurveClass) else tuple(c1)
    diff = tuple(a - k for a, k in zip(c1, L.canonical))
    return rank * chi_o + L.dot(c1, diff) / 2 - Fraction(c2)


def chern_twist(L: PicardLattice, rank: int, c1: Sequence, c2, twist: Sequence) -> ChernData:
    """Chern data of E (x) O(twist)."""
    c1 = tuple(c1.coeffs) if isinstance(c1, CurveClass) else tuple(c1)
    t = tuple(twist.coeffs) if isinstance(twist, CurveClass) else tuple(twist)
    new_c1 = tuple(a + rank * b for a, b in zip(c1, t))
    new_c2 = Fraction(c2) + (rank - 1) * L.dot(c1, t) + math.comb(rank, 2) * L.square(t)
    return ChernData(rank, new_c1, new_c2)


def chern_sum(L: PicardLattice, a: ChernData, b: ChernData) -> ChernData:
    """Whitney formula for a direct sum."""
    c1 = tuple(x + y for x, y in zip(a.c1, b.c1))
    return ChernData(a.rank + b.rank, c1, Fraction(a.c2) + Fraction(b.c2) + L.dot(a.c1, b.c1))


def chern_twist_sum(L: PicardLattice, rank: int, c1, c2, twist=None, summand: ChernData | None = None) -> ChernData:
    """Either twist by a line bundle or add a direct summand (exactly one)."""
    if (twist is None) == (summand is None):
        raise LatticeError("give exactly one of twist or summand")
    c1 = tuple(c1.coeffs) if isinstance(c1, CurveClass) else tuple(c1)
    if twist is not None:
        return chern_twist(L, rank, c1, c2, twist)
    return chern_sum(L, ChernData(rank, c1, Fraction(c2)), summand)
