"""Intersection rings built by construction.

A ring is determined by its divisor generators and a top-degree integration
map on monomials. Products are reduced to normal form modulo numerical
equivalence: in each degree a basis of monomials is chosen greedily (first
independent monomials in a fixed order, under the pairing with the
complementary degree), and every other monomial is rewritten as the unique
combination of basis monomials with the same pairings. The stored rewrite
relations are exactly these rewrites.

Builders:

* ``point()``, ``curve(g)``, ``lattice_surface(lattice)``, ``projective_space(n)``
* ``proj_bundle(base, rank, chern)`` with ``xi^r = sum (-1)^(i+1) c_i xi^(r-i)``
* ``slice_hypersurface(ambient, D)``
* ``blow_up_points(X, n)`` and ``blow_up_curve(X, g, pairings, K_dot_T)``

Flops are not ring operations; ``FlopShadow`` carries only (-K)^3 and the
Euler number across them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Sequence

from .algebra import rank, rref, solve
from .expr import CycleExpr, SumExpr, expand, parse_expr

Exps = tuple[int, ...]


class ChowError(ValueError):
    pass


class DegreeMismatch(ChowError):
    pass


def _monomials(n: int, k: int) -> list[Exps]:
    """Exponent vectors of length n summing to k, in lexicographically
    decreasing order (so x0^k comes first)."""
    if n == 0:
        return [()] if k == 0 else []
    out = []
    for a in range(k, -1, -1):
        for rest in _monomials(n - 1, k - a):
            out.append((a,) + rest)
    return out


class IntersectionRing:
    """Numerical intersection ring of a smooth projective variety.

    ``top`` integrates a top-degree exponent vector over ``generators``.
    All generators are divisor classes. ``aliases`` name fixed classes (for
    instance pulled-back line bundles) usable in expressions; the name ``K``
    always means the canonical class.
    """

    def __init__(
        self,
        dimension: int,
        generators: Sequence[str],
        top: Callable[[Exps], Fraction],
        canonical: CycleExpr,
        euler: int | None = None,
        aliases: Mapping[str, CycleExpr] | None = None,
        label: str = "",
    ):
        if len(set(generators)) != len(generators):
            raise ChowError("duplicate generator names")
        if "K" in generators:
            raise ChowError("'K' is reserved for the canonical class")
        self.dimension = dimension
        self.generators = tuple(generators)
        self._top = lru_cache(maxsize=None)(top)
        self.canonical = canonical
        self.euler = euler
        self.aliases = dict(aliases or {})
        self.label = label
        self._basis: dict[int, list[Exps]] = {}
        self._rewrites: dict[int, dict[Exps, dict[Exps, Fraction]]] = {}
        bad = canonical.names() - set(self.generators)
        if bad or (canonical.terms and canonical.degrees() != {1}):
            raise ChowError("canonical class must be a degree-1 combination of generators")

    # -- expressions -------------------------------------------------------

    def resolve(self, name: str) -> CycleExpr:
        if name in self.generators:
            return CycleExpr.var(name)
        if name == "K":
            return self.canonical
        if name in self.aliases:
            return self.aliases[name]
        raise ChowError(f"unknown class {name!r}")

    def expr(self, e: str | SumExpr | CycleExpr) -> CycleExpr:
        """Expand text or an AST against this ring's names."""
        if isinstance(e, CycleExpr):
            bad = e.names() - set(self.generators)
            if bad:
                # allow formal polynomials that still mention K or aliases
                return expand(e.to_ast(), self.resolve)
            return e
        if isinstance(e, str):
            e = parse_expr(e)
        return expand(e, self.resolve)

    def _exps(self, mono) -> Exps:
        d = dict(mono)
        return tuple(d.get(g, 0) for g in self.generators)

    def _poly(self, coeffs: Mapping[Exps, Fraction]) -> CycleExpr:
        out = {}
        for ex, c in coeffs.items():
            m = tuple(sorted((g, e) for g, e in zip(self.generators, ex) if e))
            out[m] = c
        return CycleExpr(out)

    # -- integration -------------------------------------------------------

    def integrate(self, e) -> Fraction:
        """Degree of a top-degree class. Mixed or wrong degrees raise."""
        p = self.expr(e)
        if p.is_zero():
            return Fraction(0)
        degs = p.degrees()
        if degs != {self.dimension}:
            raise DegreeMismatch(
                f"degree mismatch: expression has degree(s) {sorted(degs)}, "
                f"ring dimension is {self.dimension}"
            )
        return sum((c * self._top(self._exps(m)) for m, c in p.terms.items()), Fraction(0))

    def top_monomial(self, ex: Exps) -> Fraction:
        if sum(ex) != self.dimension:
            raise DegreeMismatch("degree mismatch")
        return self._top(tuple(ex))

    def point_class(self) -> CycleExpr:
        """A top-degree class of degree 1."""
        for ex in _monomials(len(self.generators), self.dimension):
            v = self._top(ex)
            if v != 0:
                return self._poly({ex: 1 / v})
        if self.dimension == 0:
            return CycleExpr.const(1)
        raise ChowError("ring has no nonzero top-degree monomial")

    # -- normal forms ------------------------------------------------------

    def basis(self, k: int) -> list[Exps]:
        """Basis monomials of degree k (numerical classes)."""
        if k not in self._basis:
            self._build_degree(k)
        return self._basis[k]

    def relations(self, k: int) -> dict[Exps, dict[Exps, Fraction]]:
        """Rewrite relations in degree k: non-basis monomial -> combination."""
        if k not in self._rewrites:
            self._build_degree(k)
        return self._rewrites[k]

    def _pairing_rows(self, k: int, monos: list[Exps]) -> list[list[Fraction]]:
        dual = _monomials(len(self.generators), self.dimension - k)
        return [[self._top(tuple(a + b for a, b in zip(m, d))) for d in dual] for m in monos]

    def _build_degree(self, k: int):
        if k < 0 or k > self.dimension:
            self._basis[k], self._rewrites[k] = [], {}
            return
        monos = _monomials(len(self.generators), k)
        rows = self._pairing_rows(k, monos)
        basis, brows = [], []
        for m, r in zip(monos, rows):
            if rank(brows + [r]) > len(brows):
                basis.append(m)
                brows.append(r)
        rewrites = {}
        # a square invertible subsystem: pivot columns of the basis pairing rows
        piv = rref(brows)[1] if brows else []
        square = [[row[d] for row in brows] for d in piv]
        for m, r in zip(monos, rows):
            if m in basis:
                continue
            coeffs = solve(square, [r[d] for d in piv]) if basis else []
            rewrites[m] = {b: c for b, c in zip(basis, coeffs) if c != 0}
        self._basis[k], self._rewrites[k] = basis, rewrites

    def normal_form(self, e) -> CycleExpr:
        """Reduce to a combination of basis monomials."""
        p = self.expr(e)
        out: dict[Exps, Fraction] = {}
        for m, c in p.terms.items():
            ex = self._exps(m)
            k = sum(ex)
            basis = self.basis(k)
            if ex in basis:
                out[ex] = out.get(ex, Fraction(0)) + c
            else:
                for b, cb in self.relations(k).get(ex, {}).items():
                    out[b] = out.get(b, Fraction(0)) + c * cb
        return self._poly({ex: c for ex, c in out.items() if c != 0})

    def betti(self) -> list[int]:
        return [len(self.basis(k)) for k in range(self.dimension + 1)]

    # -- bookkeeping -------------------------------------------------------

    def euler_number(self) -> int:
        if self.euler is None:
            raise ChowError("Euler-number bookkeeping is not enabled for this ring")
        return self.euler

    def minus_k_cubed(self) -> Fraction:
        return self.integrate((-self.canonical) ** self.dimension)

    def with_aliases(self, **aliases) -> "IntersectionRing":
        new = self._clone()
        for n, v in aliases.items():
            if n in self.generators or n == "K":
                raise ChowError(f"alias {n!r} shadows a generator or K")
            new.aliases[n] = self.expr(v)
        return new

    def _clone(self) -> "IntersectionRing":
        new = IntersectionRing.__new__(IntersectionRing)
        new.__dict__.update(self.__dict__)
        new.aliases = dict(self.aliases)
        return new

    def flop(self, note: str = "") -> "FlopShadow":
        """Cross a flop: only (-K)^dim and the Euler number survive."""
        return FlopShadow(self.minus_k_cubed(), self.euler, self.dimension, [f"flop {note}".strip()])

    def __repr__(self) -> str:
        return f"IntersectionRing({self.label or '?'}, dim={self.dimension}, gens={list(self.generators)})"


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------


def point() -> IntersectionRing:
    return IntersectionRing(0, (), lambda ex: Fraction(1), CycleExpr(), euler=1, label="pt")


def curve(g: int, name: str = "pt") -> IntersectionRing:
    """Curve of genus g with point class ``pt`` of degree 1."""
    if g < 0:
        raise ChowError("negative genus")
    return IntersectionRing(
        1,
        (name,),
        lambda ex: Fraction(1),
        CycleExpr.var(name) * (2 * g - 2),
        euler=2 - 2 * g,
        label=f"curve(g={g})",
    )


def lattice_surface(lattice) -> IntersectionRing:
    """Surface ring from a Picard lattice (names, gram, canonical coefficients).

    The Euler number is 2 + rank, valid for the rational surfaces used here.
    """
    names = tuple(lattice.names)
    G = lattice.gram

    def top(ex):
        idx = [i for i, e in enumerate(ex) for _ in range(e)]
        return Fraction(G[idx[0], idx[1]])

    K = CycleExpr()
    for n, c in zip(names, lattice.canonical):
        K = K + CycleExpr.var(n) * c
    return IntersectionRing(2, names, top, K, euler=2 + len(names), label=getattr(lattice, "label", "surface"))


def proj_bundle(base: IntersectionRing, rank_: int, chern: Sequence, name: str = "xi") -> IntersectionRing:
    """P(E) for a rank-r bundle with Chern classes ``chern = [c1, c2, ...]``.

    ``xi`` is the tautological class with ``xi^r = sum (-1)^(i+1) c_i xi^(r-i)``
    and ``int xi^(r-1) * pt = 1``. Entries may be expressions in the base or,
    for the top Chern class of the base, a plain number of points. Classes with
    index above the base dimension are dropped.
    """
    if rank_ < 2:
        raise ChowError("rank must be at least 2")
    if name in base.generators or name == "K":
        raise ChowError(f"generator name {name!r} already used")
    cs: list[CycleExpr] = []
    for i, c in enumerate(chern, start=1):
        if i > min(rank_, base.dimension):
            continue
        if isinstance(c, (int, Fraction)) and not isinstance(c, bool):
            p = base.point_class() * c if i == base.dimension else CycleExpr.const(c)
            if i != base.dimension and c != 0:
                raise ChowError(f"c{i} given as a number but the base has dimension {base.dimension}")
        else:
            p = base.expr(c)
        if not p.is_zero() and p.degrees() != {i}:
            raise ChowError(f"chern class c{i} must have degree {i}, got {sorted(p.degrees())}")
        cs.append(p)
    while len(cs) < base.dimension:
        cs.append(CycleExpr())
    # Segre-type classes s_j = sum_{i=1}^{j} (-1)^(i+1) c_i s_{j-i}
    s = [CycleExpr.const(1)]
    for j in range(1, base.dimension + 1):
        acc = CycleExpr()
        for i in range(1, j + 1):
            if i <= len(cs):
                acc = acc + cs[i - 1] * s[j - i] * (1 if i % 2 else -1)
        s.append(acc)
    nb = len(base.generators)
    dim = base.dimension + rank_ - 1

    def top(ex):
        k, rest = ex[-1], ex[:-1]
        j = k - rank_ + 1
        if j < 0 or j > base.dimension:
            return Fraction(0)
        beta = base._poly({rest: Fraction(1)}) if nb else CycleExpr.const(1)
        cls = s[j] * beta
        if cls.is_zero():
            return Fraction(0)
        return base.integrate(cls)

    xi = CycleExpr.var(name)
    c1 = cs[0] if cs else CycleExpr()
    K = xi * (-rank_) + base.canonical + c1
    euler = rank_ * base.euler if base.euler is not None else None
    return IntersectionRing(
        dim,
        base.generators + (name,),
        top,
        K,
        euler=euler,
        aliases=base.aliases,
        label=f"P({base.label}, r={rank_})",
    )


def projective_space(n: int, name: str = "H") -> IntersectionRing:
    """P^n as the projectivization of a trivial bundle over a point."""
    r = proj_bundle(point(), n + 1, [], name=name)
    r.label = f"P{n}"
    return r


def slice_hypersurface(ambient: IntersectionRing, D, label: str = "") -> IntersectionRing:
    """Smooth member of |D|; classes are restrictions of ambient classes."""
    if ambient.dimension < 2:
        raise ChowError("ambient dimension must be at least 2")
    Dp = ambient.expr(D)
    if Dp.is_zero() or Dp.degrees() != {1}:
        raise ChowError("slice class must be a nonzero degree-1 class")

    def top(ex):
        return ambient.integrate(ambient._poly({ex: Fraction(1)}) * Dp)

    return IntersectionRing(
        ambient.dimension - 1,
        ambient.generators,
        top,
        ambient.canonical + Dp,
        euler=None,
        aliases=ambient.aliases,
        label=label or f"slice({ambient.label}, {Dp})",
    )


def blow_up_points(X: IntersectionRing, n: int, prefix: str = "E") -> IntersectionRing:
    """Blow up n distinct points of a 3-fold."""
    if X.dimension != 3:
        raise ChowError("point blow-ups are implemented for 3-folds only")
    names = tuple(f"{prefix}{i}" for i in range(1, n + 1))
    if set(names) & set(X.generators):
        raise ChowError("exceptional divisor names collide with existing generators")
    nx = len(X.generators)

    def top(ex):
        base, exc = ex[:nx], ex[nx:]
        if not any(exc):
            return X._top(base)
        if any(base) or sum(1 for e in exc if e) > 1:
            return Fraction(0)
        return Fraction(1)  # E_i^3 = 1

    K = X.canonical
    for nm in names:
        K = K + CycleExpr.var(nm) * 2
    euler = X.euler + 2 * n if X.euler is not None else None
    return IntersectionRing(3, X.generators + names, top, K, euler=euler, aliases=X.aliases,
                            label=f"Bl_{n}pts({X.label})")


def blow_up_curve(
    X: IntersectionRing,
    g: int,
    pairings: Mapping[str, int],
    K_dot_T: int,
    name: str = "E",
) -> IntersectionRing:
    """Blow up a smooth curve T of genus g in a 3-fold.

    ``pairings`` gives D.T for every generator D; ``K_dot_T`` must agree with
    the canonical class expressed in the generators.
    """
    if X.dimension != 3:
        raise ChowError("curve blow-ups are implemented for 3-folds only")
    if g < 0:
        raise ChowError("negative genus")
    if name in X.generators:
        raise ChowError(f"generator name {name!r} already used")
    missing = [gname for gname in X.generators if gname not in pairings]
    if missing:
        raise ChowError(f"missing pairings for {missing}")
    dot = [Fraction(pairings[gname]) for gname in X.generators]
    KT = Fraction(0)
    for m, c in X.canonical.terms.items():
        ((gname, _),) = m
        KT += c * pairings[gname]
    if KT != K_dot_T:
        raise ChowError(f"K.T = {K_dot_T} is inconsistent with pairings (which give {KT})")
    nx = len(X.generators)

    def top(ex):
        base, e = ex[:nx], ex[nx]
        if e == 0:
            return X._top(base)
        if e == 3:
            return Fraction(K_dot_T + 2 - 2 * g)
        if e == 2:
            i = next(i for i, a in enumerate(base) if a)
            return -dot[i]
        return Fraction(0)

    euler = X.euler + 2 - 2 * g if X.euler is not None else None
    return IntersectionRing(3, X.generators + (name,), top, X.canonical + CycleExpr.var(name),
                            euler=euler, aliases=X.aliases, label=f"Bl_T({X.label})")


# ---------------------------------------------------------------------------
# flops
# ---------------------------------------------------------------------------


@dataclass
class FlopShadow:
    """Numbers that are carried across flops: (-K)^dim and the Euler number.

    Only the anticanonical self-intersection may be evaluated; any other
    divisor product is rejected because it is not known to survive a flop.
    """

    minus_k_top: Fraction
    euler: int | None
    dimension: int = 3
    history: list[str] = field(default_factory=list)

    def flop(self, note: str = "") -> "FlopShadow":
        return FlopShadow(self.minus_k_top, self.euler, self.dimension, self.history + [f"flop {note}".strip()])

    def blow_down_point(self) -> "FlopShadow":
        """Contract a divisor to a smooth point (inverse of a point blow-up)."""
        if self.dimension != 3:
            raise ChowError("point blow-down bookkeeping is for 3-folds")
        eu = self.euler - 2 if self.euler is not None else None
        return FlopShadow(self.minus_k_top + 8, eu, self.dimension, self.history + ["blow down point"])

    def adjust(self, points: int = 0, curve_genera: Sequence[int] = ()) -> "FlopShadow":
        """Euler-number change after contracting ``points`` point-divisors and
        curve-divisors of the given genera: -2 each, -(2-2g) each."""
        if self.euler is None:
            raise ChowError("Euler-number bookkeeping is not enabled")
        d = -2 * points - sum(2 - 2 * g for g in curve_genera)
        return FlopShadow(self.minus_k_top, self.euler + d, self.dimension,
                          self.history + [f"euler {d:+d}"])

    def euler_number(self) -> int:
        if self.euler is None:
            raise ChowError("Euler-number bookkeeping is not enabled")
        return self.euler

    def integrate(self, e) -> Fraction:
        p = expand(e) if not isinstance(e, CycleExpr) else e
        if p.names() - {"K"}:
            raise ChowError("only powers of K can be evaluated across a flop")
        out = Fraction(0)
        for m, c in p.terms.items():
            k = sum(ex for _, ex in m)
            if k != self.dimension:
                raise DegreeMismatch("degree mismatch")
            out += c * (-1) ** self.dimension * self.minus_k_top
        return out
