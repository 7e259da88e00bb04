"""Invariant formulas for sextic del Pezzo fibrations X -> C and the integer
solvers behind the 2-ray game.

Genera: g_B of the double cover B -> C, g_T of the triple cover T -> C,
g_C of the base curve.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import chow
from .algebra import UniPoly, rational_roots, solve


class InadmissibleError(ValueError):
    pass


@dataclass(frozen=True)
class CoveringInvariants:
    g_B: int
    g_T: int
    g_C: int
    kx_c0: int | None = None

    def __post_init__(self):
        for name in ("g_B", "g_T", "g_C"):
            if getattr(self, name) < 0:
                raise InadmissibleError(f"{name} must be nonnegative")

    @property
    def deg_R_B(self) -> int:
        return 2 * self.g_B + 2 - 4 * self.g_C

    @property
    def deg_R_T(self) -> int:
        return 2 * self.g_T + 4 - 6 * self.g_C

    @property
    def admissible(self) -> bool:
        return self.deg_R_B >= 0 and self.deg_R_T >= 0

    def require_admissible(self):
        if not self.admissible:
            raise InadmissibleError(
                f"inadmissible genera (g_B, g_T, g_C) = ({self.g_B}, {self.g_T}, {self.g_C}): "
                f"deg R_B = {self.deg_R_B}, deg R_T = {self.deg_R_T}"
            )


@dataclass(frozen=True)
class DoubleProjectionOutput:
    kq3: int
    kq_dot_T: int
    deg_alpha: int


def anticanonical_degree(ci: CoveringInvariants) -> int:
    ci.require_admissible()
    return 22 - (6 * ci.g_B + 4 * ci.g_T + 12 * ci.g_C)


def hodge_h21(ci: CoveringInvariants) -> int:
    """h^{1,2}(X) = dim Jac(B) + dim Jac(T) - dim Jac(C)."""
    ci.require_admissible()
    h = ci.g_B + ci.g_T - ci.g_C
    if h < 0:
        raise InadmissibleError("inconsistent genera: negative h^{1,2}")
    return h


def quadric_fibration_degree(g_B: int, g_C: int) -> int:
    """(-K_Q)^3 of a quadric fibration whose double cover B -> C has genus g_B."""
    if g_B < 0 or g_C < 0:
        raise InadmissibleError("genera must be nonnegative")
    if g_C > 0 and g_B < 2 * g_C - 1:
        raise InadmissibleError(f"inadmissible: a double cover of a genus-{g_C} curve has genus >= {2 * g_C - 1}")
    return 40 - 8 * g_B - 32 * g_C


def _int_or_raise(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise InadmissibleError(f"inconsistent input: {what} = {x} is not an integer")
    return int(x)


def double_projection_system(kx3, g_T, g_C, kx_c0) -> list[Fraction]:
    """Solve the three linear relations of the relative double projection
    for (kq3, kq.T, deg alpha).

    With A = kx3 - 2 kx_c0 + 2 g_C - 2 (the degree of Bl_{C0} X):

      kq3 - 2 kqT + 2 g_T - 2 = A
      kqT + 2 - 2 g_T         = A - 2 (kx_c0 + 2 - 2 g_C) + 5 deg alpha
      2 g_T - 2               = A + 4 (2 g_C - 2) - 4 (kx_c0 + 2 - 2 g_C) + 6 deg alpha
    """
    A = Fraction(kx3) - 2 * kx_c0 + 2 * g_C - 2
    M = [[1, -2, 0], [0, 1, -5], [0, 0, -6]]
    b = [
        A - 2 * g_T + 2,
        A - 2 * (kx_c0 + 2 - 2 * g_C) - 2 + 2 * g_T,
        A + 4 * (2 * g_C - 2) - 4 * (kx_c0 + 2 - 2 * g_C) - 2 * g_T + 2,
    ]
    return solve(M, b)


def double_projection(kx3: int, g_T: int, g_C: int, kx_c0: int) -> DoubleProjectionOutput:
    kq3 = Fraction(4 * kx3 + 16 * g_T - 48 * g_C + 32, 3)
    kqT = Fraction(kx3 + 22 * g_T - 54 * g_C + 6 * kx_c0 + 32, 6)
    da = Fraction(-kx3 + 2 * g_T - 18 * g_C + 6 * kx_c0 + 16, 6)
    closed = [kq3, kqT, da]
    if closed != double_projection_system(kx3, g_T, g_C, kx_c0):
        raise AssertionError("closed forms disagree with the linear system")
    names = ("(-K_Q)^3", "-K_Q.T", "deg alpha")
    return DoubleProjectionOutput(*(_int_or_raise(v, n) for v, n in zip(closed, names)))


def relative_degree(ci: CoveringInvariants) -> int:
    """(-K_{X/C})^3, computed from the ramification degrees and checked
    against the direct expansion."""
    ci.require_admissible()
    via_ramification = -(3 * ci.deg_R_B + 2 * ci.deg_R_T)
    direct = 24 * ci.g_C - (6 * ci.g_B + 4 * ci.g_T + 14)
    if via_ramification != direct:
        raise AssertionError("relative degree routes disagree")
    return via_ramification


def admissible_triples(min_value: int) -> Iterable[CoveringInvariants]:
    """All admissible triples with anticanonical degree >= min_value."""
    top = 22 - min_value
    for c in range(top // 12 + 1):
        for b in range((top - 12 * c) // 6 + 1):
            for t in range((top - 12 * c - 6 * b) // 4 + 1):
                ci = CoveringInvariants(b, t, c)
                if ci.admissible:
                    yield ci


def degree_spectrum(bound: int) -> dict[int, list[tuple[int, int, int]]]:
    """Map of attained (-K_X)^3 >= -bound to the admissible triples giving it.

    Only Hurwitz admissibility is imposed; an admissible triple need not be
    realized by a fibration.
    """
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    out: dict[int, list[tuple[int, int, int]]] = {}
    for ci in admissible_triples(-bound):
        out.setdefault(anticanonical_degree(ci), []).append((ci.g_B, ci.g_T, ci.g_C))
    return dict(sorted(out.items()))


def hurwitz_genus(n: int, g_C: int, branch_degree: int) -> int:
    """Genus of a degree-n cover of a genus-g_C curve with the given
    ramification degree."""
    if n < 1 or g_C < 0:
        raise ValueError("need n >= 1 and g_C >= 0")
    twice = n * (2 * g_C - 2) + branch_degree + 2
    if twice % 2:
        raise ValueError("non-integral genus")
    g = twice // 2
    if g < 0:
        raise ValueError("negative genus")
    return g


# ---------------------------------------------------------------------------
# quadric fibration inside a P^3-bundle over a curve
# ---------------------------------------------------------------------------

CONVENTIONS = ("minus-alpha", "adjunction")


@dataclass(frozen=True)
class SlicedQuadricReport:
    g_C: int
    deg_F: int
    deg_alpha: int
    convention: str
    deg_L: int
    minus_k_cubed: Fraction
    product: Fraction  # the displayed anticanonical product on the P^3-bundle
    deg_sigma: int
    g_B: int
    expected: int  # 40 - 8 g_B - 32 g_C


def sliced_quadric(g_C: int, deg_F: int, deg_alpha: int, convention: str = "minus-alpha") -> SlicedQuadricReport:
    """Q in |2 xi + L| inside P(F), F of rank 4 over a genus-g_C curve.

    ``minus-alpha``: L = -alpha, so -K_Q = 2 xi - (K_C + det F - alpha) and the
    integrand is (2 xi - (K_C + det F - alpha))^3 (2 xi + L).
    ``adjunction``: L = alpha - K_C - det F, so -K_Q = 2 xi - alpha.

    The discriminant Sigma has class (det F)^2 (x) O(4L), and B is the double
    cover of C branched along it.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}")
    C = chow.curve(g_C)
    P = chow.proj_bundle(C, 4, [f"{deg_F}*pt"])
    kc = 2 * g_C - 2
    deg_L = -deg_alpha if convention == "minus-alpha" else deg_alpha - kc - deg_F
    P = P.with_aliases(
        KC=f"{kc}*pt", detF=f"{deg_F}*pt", alpha=f"{deg_alpha}*pt", L=f"{deg_L}*pt"
    )
    Q = chow.slice_hypersurface(P, "2*xi + L")
    if convention == "minus-alpha":
        product = P.integrate("(2*xi - (KC + detF - alpha))^3*(2*xi + L)")
    else:
        product = P.integrate("(2*xi - alpha)^3*(2*xi + L)")
    deg_sigma = 2 * deg_F + 4 * deg_L
    g_B = hurwitz_genus(2, g_C, deg_sigma)
    return SlicedQuadricReport(
        g_C, deg_F, deg_alpha, convention, deg_L, Q.minus_k_cubed(), product,
        deg_sigma, g_B, quadric_fibration_degree(g_B, g_C),
    )


# ---------------------------------------------------------------------------
# Diophantine systems of the 2-ray game
# ---------------------------------------------------------------------------


def _cauchy_bound(p: UniPoly) -> Fraction:
    lead = abs(p.lead)
    return 1 + max((abs(a) / lead for a in p.coeffs[:-1]), default=Fraction(0))


def two_ray_apriori_bound(quad, lin, rhs) -> int:
    """Bound on |x|, |y| for any real solution (system with finitely many)."""
    reduced, solve_for = _reduce(quad, lin, rhs)
    if reduced.degree <= 0:
        return 0
    R = _cauchy_bound(reduced)
    p, q = lin
    r2 = rhs[1]
    other = (abs(Fraction(r2)) + abs(Fraction(p if solve_for == "y" else q)) * R) / abs(
        Fraction(q if solve_for == "y" else p)
    )
    return math.ceil(max(R, other))


def _reduce(quad, lin, rhs) -> tuple[UniPoly, str]:
    a, b, c = (Fraction(v) for v in quad)
    p, q = (Fraction(v) for v in lin)
    r1, r2 = (Fraction(v) for v in rhs)
    if q != 0:  # y = (r2 - p x)/q
        y = UniPoly((r2 / q, -p / q))
        x = UniPoly.x()
        return a * x * x + b * x * y + c * y * y - r1, "y"
    if p != 0:  # x = r2/p, polynomial in y
        x = UniPoly.const(r2 / p)
        y = UniPoly.x()
        return a * x * x + b * x * y + c * y * y - r1, "x"
    raise ValueError("linear constraint is identically zero")


def two_ray_solve(quad, lin, rhs, search_bound: int | None = None) -> list[tuple[int, int]]:
    """Integer solutions of ``a x^2 + b xy + c y^2 = r1``, ``p x + q y = r2``.

    The linear equation eliminates one variable, so the solutions are among
    the rational roots of a single polynomial of degree <= 2; those are found
    exactly. A full 2-D scan of ``|x|, |y| <= search_bound`` must agree.
    The default bound is ``10 * max|r_i| + 10``; a bound below the a-priori
    root bound is rejected.
    """
    reduced, solve_for = _reduce(quad, lin, rhs)
    if reduced.is_zero():
        raise ValueError("system has infinitely many solutions")
    r1, r2 = (Fraction(v) for v in rhs)
    if search_bound is None:
        search_bound = int(10 * max(abs(r1), abs(r2)) + 10)
    need = two_ray_apriori_bound(quad, lin, rhs)
    if search_bound < need:
        raise ValueError(f"search bound {search_bound} is below the a-priori bound {need}")
    p, q = (Fraction(v) for v in lin)
    exact = set()
    roots = rational_roots(reduced) if reduced.degree > 0 else []
    for t in roots:
        if solve_for == "y":
            x, y = t, (r2 - p * t) / q
        else:
            x, y = r2 / p, t
        if x.denominator == 1 and y.denominator == 1:
            exact.add((int(x), int(y)))
    scanned = _scan(quad, lin, rhs, search_bound)
    if exact != scanned:
        raise AssertionError(f"exact solutions {sorted(exact)} disagree with scan {sorted(scanned)}")
    return sorted(exact)


def _scan(quad, lin, rhs, bound: int) -> set[tuple[int, int]]:
    a, b, c = quad
    p, q = lin
    r1, r2 = rhs
    out = set()
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            if p * x + q * y == r2 and a * x * x + b * x * y + c * y * y == r1:
                out.add((x, y))
    return out


@dataclass(frozen=True)
class CensusResult:
    bound: int
    solutions: tuple[tuple[int, tuple[int, int, int], int], ...]  # (a, b, m)

    @property
    def only_m_one(self) -> bool:
        return all(m == 1 for _, _, m in self.solutions)


def minus_two_census(bound: int) -> CensusResult:
    """All (a, b, m) with m = 3a - sum b, m^2 - 2 = a^2 - sum b^2,
    0 <= a <= bound, |b_j| <= bound, 1 <= m <= bound."""
    if bound < 6:
        raise ValueError("bound must be at least 6")
    sols = []
    rng = range(-bound, bound + 1)
    for a in range(bound + 1):
        for bs in itertools.product(rng, repeat=3):
            m = 3 * a - sum(bs)
            if 1 <= m <= bound and m * m - 2 == a * a - sum(v * v for v in bs):
                sols.append((a, bs, m))
    return CensusResult(bound, tuple(sols))
