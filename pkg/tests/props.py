"""Seeded property suites shared by test_properties.py and test_acceptance.py.

Each suite runs ``n`` randomized cases from a fixed seed (``DP6_SEED``
overrides it), raises AssertionError on the first counterexample and returns
the number of cases checked.
"""

from __future__ import annotations

import itertools
import os
import random
from fractions import Fraction

from dp6 import chow, fibrations, geometry
from dp6.algebra import BinaryForm
from dp6.fibrations import CoveringInvariants, InadmissibleError
from dp6.surfaces import tautological_quadric_lattice

SEED = int(os.environ.get("DP6_SEED", "20240607"))
N_CASES = 200


def _rng(salt: str) -> random.Random:
    return random.Random(f"{SEED}:{salt}")


# -- rings used as random bases ---------------------------------------------


def _threefolds():
    """(ring, K-coefficient on H) for a few Fano 3-folds of Picard rank 1."""
    P3 = chow.projective_space(3)
    Q3 = chow.slice_hypersurface(chow.projective_space(4), "2*H")
    V3 = chow.slice_hypersurface(chow.projective_space(4), "3*H")
    return [(P3, -4), (Q3, -3), (V3, -2)]


def _random_ring(rng: random.Random) -> chow.IntersectionRing:
    kind = rng.randrange(5)
    if kind == 0:
        return chow.projective_space(rng.randint(1, 4))
    if kind == 1:
        return chow.blow_up_points(chow.projective_space(3), rng.randint(1, 3))
    if kind == 2:
        base = chow.projective_space(1, name="a")
        return chow.proj_bundle(base, rng.randint(2, 3), [f"{rng.randint(-3, 3)}*a"])
    if kind == 3:
        return chow.lattice_surface(tautological_quadric_lattice())
    P2 = chow.projective_space(2)
    return chow.proj_bundle(P2, 2, [f"{rng.randint(-2, 2)}*H", rng.randint(-3, 3)])


def _lin(coeffs, monos) -> str:
    """Render sum c_i*m_i with proper signs, e.g. ``2*h - 3*f``."""
    out = ""
    for c, m in zip(coeffs, monos):
        sign = "-" if c < 0 else "+"
        out += f" {sign} {abs(c)}*{m}" if out else f"{c}*{m}"
    return out


def _random_divisor(rng: random.Random, R: chow.IntersectionRing) -> str:
    return _lin([rng.randint(-3, 3) for _ in R.generators], R.generators)


# -- suites -------------------------------------------------------------------


def blowup_deltas(n: int = N_CASES) -> int:
    """(-K)^3 drops by 8 per blown-up point and changes by 2K.T - 2 + 2g per
    blown-up curve T of genus g; Euler numbers change by +2 and +(2 - 2g)."""
    rng = _rng("blowup")
    folds = _threefolds()
    for _ in range(n):
        X, kH = rng.choice(folds)
        base = X.minus_k_cubed()
        if rng.random() < 0.5:
            k = rng.randint(1, 4)
            Y = chow.blow_up_points(X, k)
            assert Y.minus_k_cubed() == base - 8 * k
            if X.euler is not None:
                assert Y.euler_number() == X.euler_number() + 2 * k
        else:
            d, g = rng.randint(1, 8), rng.randint(0, 6)
            KT = kH * d
            Y = chow.blow_up_curve(X, g, {"H": d}, KT)
            assert Y.minus_k_cubed() == base + 2 * KT - 2 + 2 * g
            assert Y.integrate("E^3") == KT + 2 - 2 * g
            assert Y.integrate("H*E^2") == -d
            if X.euler is not None:
                assert Y.euler_number() == X.euler_number() + 2 - 2 * g
    return n


def grothendieck(n: int = N_CASES) -> int:
    """sum_i (-1)^i c_i xi^(r-i) integrates to zero against every monomial of
    complementary degree, and xi^(r-1) has degree 1 on a fiber."""
    rng = _rng("grothendieck")
    for _ in range(n):
        r = rng.randint(2, 4)
        if rng.random() < 0.5:
            m = rng.randint(1, 3)
            base = chow.projective_space(m)
            chern = [f"{rng.randint(-4, 4)}*H^{i}" for i in range(1, m)] + [rng.randint(-4, 4)]
            chern = chern[: min(r, m)]
        else:
            base = chow.lattice_surface(tautological_quadric_lattice())
            chern = [_lin([rng.randint(-3, 3), rng.randint(-3, 3)], ["h", "f"]), rng.randint(-4, 4)]
        R = chow.proj_bundle(base, r, chern)
        cs = [R.expr("1")] + [R.expr(c) if isinstance(c, str) else base.point_class() * c for c in chern]
        xi = R.expr("xi")
        rel = sum((cs[i] * xi ** (r - i) * (1 if i % 2 == 0 else -1) for i in range(len(cs))), R.expr("0"))
        rest = R.dimension - r
        for mono in itertools.combinations_with_replacement(R.generators, rest):
            beta = R.expr("*".join(mono) if mono else "1")
            assert R.integrate(rel * beta) == 0
        assert R.integrate(xi ** (r - 1) * base.point_class()) == 1
    return n


def multilinearity(n: int = N_CASES) -> int:
    """The degree map is multilinear and symmetric in divisor arguments."""
    rng = _rng("multilinear")
    for _ in range(n):
        R = _random_ring(rng)
        d = R.dimension
        Ds = [R.expr(_random_divisor(rng, R)) for _ in range(d)]
        D2 = R.expr(_random_divisor(rng, R))
        a, b = rng.randint(-5, 5), rng.randint(-5, 5)

        def prod(xs):
            out = R.expr("1")
            for x in xs:
                out = out * x
            return out

        lhs = R.integrate(prod([Ds[0] * a + D2 * b] + Ds[1:]))
        rhs = a * R.integrate(prod(Ds)) + b * R.integrate(prod([D2] + Ds[1:]))
        assert lhs == rhs
        perm = Ds[:]
        rng.shuffle(perm)
        assert R.integrate(prod(perm)) == R.integrate(prod(Ds))
    return n


def hurwitz_gating(n: int = N_CASES) -> int:
    """Invariants are produced exactly for admissible genera, and the genera
    are recovered from the ramification degrees by Hurwitz."""
    rng = _rng("hurwitz")
    for _ in range(n):
        ci = CoveringInvariants(rng.randint(0, 10), rng.randint(0, 10), rng.randint(0, 4))
        admissible = ci.deg_R_B >= 0 and ci.deg_R_T >= 0
        try:
            v = fibrations.anticanonical_degree(ci)
            ok = True
        except InadmissibleError:
            ok = False
        assert ok == admissible
        if admissible:
            assert v == 22 - 6 * ci.g_B - 4 * ci.g_T - 12 * ci.g_C
            assert fibrations.hurwitz_genus(2, ci.g_C, ci.deg_R_B) == ci.g_B
            assert fibrations.hurwitz_genus(3, ci.g_C, ci.deg_R_T) == ci.g_T
    return n


def _random_form(rng: random.Random, degree: int) -> BinaryForm:
    return BinaryForm(degree, [Fraction(rng.randint(-4, 4)) for _ in range(degree + 1)])


def resultant_sums(n: int = N_CASES) -> int:
    """A (1,1)-conic meets an irreducible (1,2)-curve in 3 points counted
    with multiplicity, and the resultant agrees with the hyperplane
    restriction."""
    rng = _rng("resultant")
    done = 0
    while done < n:
        T = geometry.BidegreeCurve(_random_form(rng, 2), _random_form(rng, 2))
        l = tuple(Fraction(rng.randint(-4, 4)) for _ in range(4))
        C = geometry.conic_from_covector(l)
        if not (T.irreducible and C.irreducible) or T.A.is_zero() or T.B.is_zero():
            continue
        inter = geometry.conic_cubic_intersection(T, C)
        assert sum(inter.multiplicities) == 3
        assert all(m >= 1 for m in inter.multiplicities)
        restricted = geometry.restrict_to_curve(T, l + (Fraction(0),))
        assert restricted == inter.resultant or restricted == inter.resultant.scale(-1)
        done += 1
    return n


def confluence(n: int = N_CASES) -> int:
    """Normal forms are canonical: idempotent, additive, independent of how
    a product is grouped, and numerically equal to the input."""
    rng = _rng("confluence")
    for _ in range(n):
        R = _random_ring(rng)
        d = R.dimension
        k = rng.randint(1, d)
        gens = R.generators

        def rand_poly(deg):
            count = rng.randint(1, 3)
            monos = ["*".join(rng.choice(gens) for _ in range(deg)) for _ in range(count)]
            return R.expr(_lin([rng.randint(-4, 4) for _ in range(count)], monos))

        p, q = rand_poly(k), rand_poly(k)
        nf = R.normal_form(p)
        assert R.normal_form(nf) == nf
        assert R.normal_form(p + q) == nf + R.normal_form(q)
        basis = set(R.basis(k))
        assert all(R._exps(m) in basis for m in nf.terms)
        if k < d:
            a, b = rand_poly(1), rand_poly(d - k - 1) if d - k - 1 else R.expr("1")
            assert R.integrate(nf * a * b) == R.integrate(p * a * b)
            assert R.normal_form(R.normal_form(p * a) * b) == R.normal_form(p * R.normal_form(a * b))
    return n


SUITES = {
    "blow-up deltas": blowup_deltas,
    "Grothendieck relation": grothendieck,
    "multilinearity": multilinearity,
    "Hurwitz gating": hurwitz_gating,
    "resultant multiplicities sum to 3": resultant_sums,
    "normal-form confluence": confluence,
}
