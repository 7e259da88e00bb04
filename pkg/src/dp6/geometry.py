"""Coordinate models over the rationals: quadric 3-folds in P^4, pencils of
hyperplane sections through a plane, and twisted cubics on the quadric
surface Q^2 = P^1 x P^1.

Conventions. A quadric is ``q(x) = x^T M x`` with M symmetric, so the term
``x0*x1`` contributes 1/2 to M[0][1] and M[1][0]. Points and covectors are
normalized with last nonzero coordinate 1.

The scenes use ``Q^3 = {x0 x1 - x2 x3 + x4^2 = 0}`` and its hyperplane
section ``Q^2 = {x4 = 0}``, parametrized by the Segre map
``((s:t), (u:v)) -> (su, tv, sv, tu, 0)``. A curve of bidegree (1, d) is
``s*A(u,v) + t*B(u,v)`` with binary forms A, B of degree d.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import (
    BinaryForm,
    SymMatrix,
    binary_form_analyze,
    binary_forms_coprime,
    dot,
    nullspace,
    normalize_point,
    rank,
    rational_sqrt,
    rref,
    solve,
    symmetric_rank_kernel,
)
from .classify import FiberDescriptor, FiberType, VertexRelation, classify_exact


class GeometryError(ValueError):
    pass


Vec = tuple[Fraction, ...]


def _vec(v: Sequence) -> Vec:
    return tuple(Fraction(a) for a in v)


# ---------------------------------------------------------------------------
# quadrics, tangent hyperplanes, polar conics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadricForm:
    gram: SymMatrix

    def __post_init__(self):
        if all(a == 0 for row in self.gram.rows for a in row):
            raise GeometryError("zero quadric")

    @classmethod
    def from_terms(cls, n: int, terms: dict[tuple[int, int], int | Fraction]) -> "QuadricForm":
        """``terms[(i, j)]`` is the coefficient of ``x_i x_j``."""
        M = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), c in terms.items():
            c = Fraction(c)
            if i == j:
                M[i][i] += c
            else:
                M[i][j] += c / 2
                M[j][i] += c / 2
        return cls(SymMatrix(M))

    @property
    def size(self) -> int:
        return self.gram.size

    def __call__(self, v: Sequence) -> Fraction:
        return self.gram.quad(_vec(v))

    def polar(self, v: Sequence) -> list[Fraction]:
        return self.gram.apply(_vec(v))

    def restrict(self, basis: Sequence[Sequence]) -> SymMatrix:
        return self.gram.restrict([_vec(b) for b in basis])


SCENE_Q3 = QuadricForm.from_terms(5, {(0, 1): 1, (2, 3): -1, (4, 4): 1})


def tangent_hyperplane(Q: QuadricForm, v: Sequence) -> Vec:
    """Covector of the projective tangent hyperplane at a smooth point."""
    v = _vec(v)
    if Q(v) != 0:
        raise GeometryError("point is not on the quadric")
    g = Q.polar(v)
    if not any(g):
        raise GeometryError("point is a singular point of the quadric")
    return normalize_point(g)


def hyperplane_basis(covectors: Sequence[Sequence], n: int) -> list[list[Fraction]]:
    """Basis of the common kernel of the covectors."""
    return nullspace([list(_vec(c)) for c in covectors], n)


@dataclass(frozen=True)
class PolarConic:
    plane: tuple[Vec, ...]  # basis of the 3-space (a P^2 in P^4)
    form: SymMatrix  # the quadric restricted to that basis
    smooth: bool


def polar_conic(Q: QuadricForm, v1: Sequence, v2: Sequence) -> PolarConic:
    """C(v1, v2) = Q ∩ T_{v1}Q ∩ T_{v2}Q."""
    h1, h2 = tangent_hyperplane(Q, v1), tangent_hyperplane(Q, v2)
    if rank([list(h1), list(h2)]) < 2:
        raise GeometryError("tangent hyperplanes are dependent")
    basis = hyperplane_basis([h1, h2], Q.size)
    form = Q.restrict(basis)
    r, _ = symmetric_rank_kernel(form)
    return PolarConic(tuple(_vec(b) for b in basis), form, r == 3)


# ---------------------------------------------------------------------------
# pencils of hyperplanes through a plane
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlanePencil:
    """Hyperplanes ``lam*phi0 + mu*phi1 = 0`` containing the plane phi0 = phi1 = 0."""

    phi0: Vec
    phi1: Vec

    def __init__(self, phi0: Sequence, phi1: Sequence):
        p0, p1 = _vec(phi0), _vec(phi1)
        if rank([list(p0), list(p1)]) < 2:
            raise GeometryError("pencil covectors are dependent")
        object.__setattr__(self, "phi0", p0)
        object.__setattr__(self, "phi1", p1)

    def member(self, lam, mu) -> Vec:
        return tuple(Fraction(lam) * a + Fraction(mu) * b for a, b in zip(self.phi0, self.phi1))


@dataclass(frozen=True)
class AdaptedFrame:
    """Vectors w0..w4 with w0, w1, w2 spanning the base plane and
    phi_i(w_{3+j}) = delta_ij. In the coordinates of this frame the pencil
    is {lam*x3 + mu*x4 = 0}."""

    plane: tuple[Vec, Vec, Vec]
    w3: Vec
    w4: Vec

    def member_basis(self, lam, mu) -> list[Vec]:
        lam, mu = Fraction(lam), Fraction(mu)
        last = tuple(mu * a - lam * b for a, b in zip(self.w3, self.w4))
        return list(self.plane) + [last]


def adapted_frame(P: PlanePencil, mix: Sequence[Sequence] | None = None,
                  shift: Sequence[Sequence] | None = None) -> AdaptedFrame:
    """Build an adapted frame; ``mix`` (3x3 invertible) and ``shift`` (2x3)
    give alternative frames for invariance tests."""
    n = len(P.phi0)
    Phi = [list(P.phi0), list(P.phi1)]
    plane = [_vec(b) for b in nullspace(Phi, n)]
    if mix is not None:
        plane = [tuple(sum(Fraction(m) * p[k] for m, p in zip(row, plane)) for k in range(n)) for row in mix]
        if rank([list(p) for p in plane]) < 3:
            raise GeometryError("mixing matrix is singular")
    piv = rref(Phi)[1]
    sub = [[Phi[i][p] for p in piv] for i in range(2)]
    ws = []
    for j in range(2):
        sol = solve(sub, [Fraction(int(i == j)) for i in range(2)])
        w = [Fraction(0)] * n
        for k, p in enumerate(piv):
            w[p] = sol[k]
        ws.append(w)
    if shift is not None:
        for j in range(2):
            for c, p in zip(shift[j], plane):
                ws[j] = [a + Fraction(c) * b for a, b in zip(ws[j], p)]
    return AdaptedFrame(tuple(plane), _vec(ws[0]), _vec(ws[1]))


@dataclass(frozen=True)
class SingularMember:
    point: tuple[Fraction, Fraction]  # (lam:mu)
    multiplicity: int
    hyperplane: Vec
    rank: int
    vertex: Vec | None


@dataclass(frozen=True)
class Discriminant:
    form: BinaryForm
    distinct_roots: int
    singular_members: tuple[SingularMember, ...]  # rational roots only

    @property
    def roots_with_multiplicity(self) -> int:
        return sum(binary_form_analyze(self.form).multiplicities)


def pencil_discriminant(Q: QuadricForm, P: PlanePencil, frame: AdaptedFrame | None = None) -> Discriminant:
    """Binary quadratic whose zeros are the singular members of the pencil."""
    frame = frame or adapted_frame(P)

    def det_at(lam, mu):
        return Q.restrict(frame.member_basis(lam, mu)).det()

    a, c = det_at(1, 0), det_at(0, 1)
    b = det_at(1, 1) - a - c
    form = BinaryForm(2, (c, b, a))
    if form.is_zero():
        raise GeometryError("pencil not generically smooth: discriminant vanishes identically")
    an = binary_form_analyze(form)
    members = []
    for (lam, mu), m in an.rational_roots:
        basis = frame.member_basis(lam, mu)
        G = Q.restrict(basis)
        r, ker = symmetric_rank_kernel(G)
        vertex = None
        if len(ker) == 1:
            k = ker[0]
            vertex = normalize_point([sum(k[i] * basis[i][j] for i in range(4)) for j in range(Q.size)])
        members.append(SingularMember((lam, mu), m, normalize_point(P.member(lam, mu)), r, vertex))
    return Discriminant(form, an.distinct_roots, tuple(members))


def pencil_through_points(Q: QuadricForm, v1: Sequence, v2: Sequence) -> PlanePencil:
    """Pencil of hyperplanes containing the plane of C(v1, v2)."""
    return PlanePencil(tangent_hyperplane(Q, v1), tangent_hyperplane(Q, v2))


# ---------------------------------------------------------------------------
# curves on P^1 x P^1
# ---------------------------------------------------------------------------

U = BinaryForm(1, (0, 1))  # u is lam, v is mu
V = BinaryForm(1, (1, 0))


@dataclass(frozen=True)
class BidegreeCurve:
    """``s*A(u,v) + t*B(u,v)`` of bidegree (1, d)."""

    A: BinaryForm
    B: BinaryForm

    def __post_init__(self):
        if self.A.degree != self.B.degree:
            raise GeometryError("A and B must have equal degree")

    @property
    def bidegree(self) -> tuple[int, int]:
        return (1, self.A.degree)

    @property
    def irreducible(self) -> bool:
        return binary_forms_coprime(self.A, self.B)

    def __call__(self, s, t, u, v) -> Fraction:
        return Fraction(s) * self.A(u, v) + Fraction(t) * self.B(u, v)

    def __str__(self) -> str:
        return f"s*({self.A}) + t*({self.B})"


def conic_from_covector(l: Sequence) -> BidegreeCurve:
    """The (1,1)-curve cut on Q^2 by ``l0 x0 + l1 x1 + l2 x2 + l3 x3``."""
    l0, l1, l2, l3 = (Fraction(a) for a in list(l)[:4])
    return BidegreeCurve(BinaryForm(1, (l2, l0)), BinaryForm(1, (l1, l3)))


def covector_from_conic(C: BidegreeCurve, x4: Fraction = Fraction(0)) -> Vec:
    """Inverse of :func:`conic_from_covector`, with a chosen x4-coefficient."""
    if C.bidegree != (1, 1):
        raise GeometryError("need a (1,1)-curve")
    a1, a0 = C.A.coeffs
    b1, b0 = C.B.coeffs
    return (a0, b1, a1, b0, Fraction(x4))


def segre(s, t, u, v) -> Vec:
    s, t, u, v = (Fraction(a) for a in (s, t, u, v))
    return (s * u, t * v, s * v, t * u, Fraction(0))


def segre_inverse(x: Sequence) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]] | None:
    """Recover ((s:t), (u:v)) from a point of Q^2, or None if not on Q^2."""
    x = _vec(x)
    if x[4] != 0 or x[0] * x[1] != x[2] * x[3]:
        return None
    uv = (x[0], x[2]) if (x[0], x[2]) != (0, 0) else (x[3], x[1])
    st = (x[0], x[3]) if (x[0], x[3]) != (0, 0) else (x[2], x[1])
    return normalize_point(st), normalize_point(uv)


def curve_parameter_point(T: BidegreeCurve, uv: Sequence) -> Vec:
    """The point of T over (u:v), as a point of P^4."""
    u, v = (Fraction(a) for a in uv)
    s, t = T.B(u, v), -T.A(u, v)
    if s == 0 and t == 0:
        raise GeometryError("A and B vanish together; curve is reducible")
    return normalize_point(segre(s, t, u, v))


def restrict_to_curve(T: BidegreeCurve, phi: Sequence) -> BinaryForm:
    """Pull back a linear form on P^4 along u,v -> (B u, -A v, B v, -A u, 0)."""
    p = _vec(phi)
    A, B = T.A, T.B
    terms = [
        (B * U).scale(p[0]),
        (A * V).scale(-p[1]),
        (B * V).scale(p[2]),
        (A * U).scale(-p[3]),
    ]
    out = terms[0]
    for t in terms[1:]:
        out = out + t
    return out


@dataclass(frozen=True)
class Intersection:
    resultant: BinaryForm
    multiplicities: tuple[int, ...]
    distinct_points: int
    rational_points: tuple[tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction], int], ...]


def conic_cubic_intersection(T: BidegreeCurve, C: BidegreeCurve) -> Intersection:
    """C ∩ T on P^1 x P^1 through the resultant ``A_T b_C - B_T a_C``."""
    if C.bidegree != (1, 1):
        raise GeometryError("C must have bidegree (1,1)")
    if not T.irreducible:
        raise GeometryError("T is reducible")
    if not C.irreducible:
        raise GeometryError("C is reducible")
    res = T.A * C.B - T.B * C.A
    if res.is_zero():
        raise GeometryError("common component")
    an = binary_form_analyze(res)
    pts = []
    for (u, v), m in an.rational_roots:
        s, t = C.B(u, v), -C.A(u, v)
        if s == 0 and t == 0:
            s, t = T.B(u, v), -T.A(u, v)
        pts.append((normalize_point((s, t)), (u, v), m))
    return Intersection(res, an.multiplicities, an.distinct_roots, tuple(pts))


def conic_with_restriction(T: BidegreeCurve, target: BinaryForm) -> BidegreeCurve:
    """The unique (1,1)-curve C with resultant ``A_T b_C - B_T a_C = target``.

    Unique because the linear map (a, b) -> A b - B a from pairs of linear
    forms to binary cubics is invertible when gcd(A, B) = 1.
    """
    if T.bidegree != (1, 2) or target.degree != 3:
        raise GeometryError("need a (1,2)-curve and a binary cubic")
    cols = []
    for k in range(4):
        e = [Fraction(int(i == k)) for i in range(4)]
        a = BinaryForm(1, e[:2])
        b = BinaryForm(1, e[2:])
        cols.append(list((T.A * b - T.B * a).coeffs))
    M = [[cols[k][i] for k in range(4)] for i in range(4)]
    x = solve(M, list(target.coeffs))
    return BidegreeCurve(BinaryForm(1, x[:2]), BinaryForm(1, x[2:]))


def form_from_roots(roots: Sequence[tuple[int, int]], degree: int | None = None) -> BinaryForm:
    """Product of linear forms ``mu0*u - lam0*v`` vanishing at each (lam0:mu0)."""
    out = BinaryForm(0, (1,))
    for lam, mu in roots:
        out = out * BinaryForm(1, (-Fraction(lam), Fraction(mu)))
    return out


# ---------------------------------------------------------------------------
# scenes
# ---------------------------------------------------------------------------


@dataclass
class Scene:
    kind: FiberType
    quadric: QuadricForm
    curve: BidegreeCurve
    special: Vec  # covector of the hyperplane cutting the special fiber
    other: Vec  # second generator of the pencil
    fiber_rank: int = 0
    vertex: Vec | None = None
    t_form: BinaryForm | None = None
    t_multiplicities: tuple[int, ...] = ()
    descriptor: FiberDescriptor | None = None
    classified: FiberType | None = None
    discriminant: Discriminant | None = None
    checks: dict[str, bool] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        def fr(x):
            return str(x)

        d = self.descriptor
        return {
            "kind": self.kind.value,
            "quadric_gram": [[fr(a) for a in row] for row in self.quadric.gram.rows],
            "curve": {"A": [fr(a) for a in self.curve.A.coeffs], "B": [fr(a) for a in self.curve.B.coeffs],
                      "text": str(self.curve)},
            "special_hyperplane": [fr(a) for a in self.special],
            "other_hyperplane": [fr(a) for a in self.other],
            "fiber_rank": self.fiber_rank,
            "vertex": None if self.vertex is None else [fr(a) for a in self.vertex],
            "T_t": str(self.t_form),
            "T_t_multiplicities": list(self.t_multiplicities),
            "discriminant": str(self.discriminant.form) if self.discriminant else None,
            "descriptor": None if d is None else {
                "q_singular": d.q_singular, "t_red": d.t_red, "vertex_relation": d.vertex_relation.value,
            },
            "classified": None if self.classified is None else self.classified.value,
            "checks": dict(self.checks),
            "notes": list(self.notes),
        }


class SceneError(GeometryError):
    pass


DEFAULT_CURVE = BidegreeCurve(BinaryForm(2, (0, 0, 1)), BinaryForm(2, (-1, 0, 0)))  # s u^2 - t v^2


def describe_fiber(Q: QuadricForm, T: BidegreeCurve, phi: Sequence) -> tuple[FiberDescriptor, dict]:
    """Descriptor of the fiber (Q ∩ H, T ∩ H) for the hyperplane H = {phi = 0}."""
    phi = _vec(phi)
    basis = hyperplane_basis([phi], Q.size)
    G = Q.restrict(basis)
    r, ker = symmetric_rank_kernel(G)
    if r < 3:
        raise SceneError(f"hyperplane section has rank {r}; not an irreducible quadric surface")
    t_form = restrict_to_curve(T, phi)
    if t_form.is_zero():
        raise SceneError("curve lies in the hyperplane")
    an = binary_form_analyze(t_form)
    info = {"rank": r, "t_form": t_form, "t_mults": an.multiplicities, "vertex": None}
    if r == 4:
        return FiberDescriptor(False, an.distinct_roots), info
    k = ker[0]
    vertex = normalize_point([sum(k[i] * basis[i][j] for i in range(4)) for j in range(Q.size)])
    info["vertex"] = vertex
    rel = VertexRelation.DISJOINT
    coords = segre_inverse(vertex)
    if coords is not None:
        (s, t), (u, v) = coords
        if T(s, t, u, v) == 0:
            m = next((m for pt, m in an.rational_roots if pt == normalize_point((u, v))), 0)
            rel = {1: VertexRelation.SIMPLE, 2: VertexRelation.DOUBLE, 3: VertexRelation.TRIPLE}[m]
    return FiberDescriptor(True, an.distinct_roots, rel), info


_CANDIDATE_COVECTORS = [
    tuple(Fraction(a) for a in c)
    for c in [
        (0, 0, 0, 0, 1), (1, 0, 0, 0, 1), (0, 1, 0, 0, 1), (0, 0, 1, 0, 1), (0, 0, 0, 1, 1),
        (1, 1, 0, 0, 1), (1, 0, 1, 0, 1), (1, 2, 3, 0, 1), (2, 0, 1, 3, 1), (1, -1, 2, 1, 3),
    ]
]


def _complete_pencil(Q: QuadricForm, T: BidegreeCurve, phi: Vec) -> tuple[Vec, list[str]]:
    """Pick a second hyperplane so that the base conic is smooth and the base
    plane misses T."""
    t0 = restrict_to_curve(T, phi)
    for c in _CANDIDATE_COVECTORS:
        if rank([list(phi), list(c)]) < 2:
            continue
        plane = hyperplane_basis([phi, c], Q.size)
        if symmetric_rank_kernel(Q.restrict(plane))[0] != 3:
            continue
        if not binary_forms_coprime(t0, restrict_to_curve(T, c)):
            continue
        return normalize_point(c), []
    raise SceneError("no second hyperplane with smooth base conic found among candidates")


def _finish(scene: Scene, expected: FiberType, extra: dict[str, bool]) -> Scene:
    Q, T = scene.quadric, scene.curve
    scene.checks["curve irreducible"] = T.irreducible
    d, info = describe_fiber(Q, T, scene.special)
    scene.fiber_rank = info["rank"]
    scene.vertex = info["vertex"]
    scene.t_form = info["t_form"]
    scene.t_multiplicities = info["t_mults"]
    scene.descriptor = d
    other, _ = _complete_pencil(Q, T, scene.special)
    scene.other = other
    P = PlanePencil(scene.special, other)
    scene.discriminant = pencil_discriminant(Q, P)
    scene.checks["discriminant has two roots"] = scene.discriminant.roots_with_multiplicity == 2
    scene.checks["special member is singular iff Q_t is"] = (
        any(m.point == (Fraction(1), Fraction(0)) for m in scene.discriminant.singular_members)
        == d.q_singular
    )
    scene.checks.update(extra)
    scene.classified = classify_exact(d)
    scene.checks["classified as requested"] = scene.classified == expected
    failed = [k for k, ok in scene.checks.items() if not ok]
    if failed:
        raise SceneError(f"scene for {expected.value} failed: {', '.join(failed)}")
    return scene


# target cubics for T ∩ H with j distinct points, tried in order
_ROOT_PATTERNS = {
    3: [[(a, 1), (b, 1), (c, 1)] for a, b, c in
        [(0, 1, -1), (0, 1, 2), (1, 2, 3), (0, 2, -1), (1, -1, 3), (0, 1, 3), (1, -2, 2), (2, -3, 1), (0, 3, -2)]]
       + [[(1, 0), (a, 1), (b, 1)] for a, b in [(0, 1), (1, 2), (-1, 2), (0, 3)]],
    2: [[(a, 1), (a, 1), (b, 1)] for a, b in
        [(1, 0), (0, 1), (1, 2), (2, 1), (1, -1), (-1, 2), (2, -1), (3, 1), (1, 3), (0, 2), (2, 0)]]
       + [[(1, 0), (1, 0), (a, 1)] for a in (0, 1, 2)],
    1: [[(a, 1)] * 3 for a in (1, 0, 2, -1, 3, -2)] + [[(1, 2)] * 3, [(1, 0)] * 3],
}


def build_example(kind, curve: BidegreeCurve | None = None) -> Scene:
    """Explicit rational scene whose special fiber has the requested type."""
    kind = FiberType(kind)
    T = curve or DEFAULT_CURVE
    Q = SCENE_Q3
    if not T.irreducible:
        raise SceneError("curve irreducible: failed")
    if kind.normal:
        i, j = kind.indices
        return _normal_scene(kind, Q, T, i, j)
    return _vertex_on_curve_scene(kind, Q, T)


def _normal_scene(kind: FiberType, Q: QuadricForm, T: BidegreeCurve, i: int, j: int) -> Scene:
    tried = []
    for roots in _ROOT_PATTERNS[j]:
        roots = [(Fraction(a), Fraction(b)) for a, b in roots]
        target = form_from_roots(roots)
        try:
            C = conic_with_restriction(T, target)
        except ValueError:
            continue
        if not C.irreducible:
            tried.append("reducible conic")
            continue
        l = covector_from_conic(C)
        if i == 2:
            phi = l  # x4-coefficient 0; smooth because C is a smooth conic
            notes = [f"conic C = {C} meets T in the zeros of {target}"]
        else:
            # a tangent hyperplane containing C's linear span on Q^2: need
            # l4^2 = 4 (l2 l3 - l0 l1) with l4 != 0
            w = rational_sqrt(4 * (l[2] * l[3] - l[0] * l[1]))
            if not w:
                tried.append(f"{target}: no rational tangent hyperplane")
                continue
            phi = l[:4] + (w,)
            notes = [f"H = T_v Q^3 with vertex off Q^2; H ∩ Q^2 = {C}"]
        scene = Scene(kind, Q, T, normalize_point(phi), (), notes=notes)
        try:
            extra = {"intersection via resultant agrees": _resultant_agrees(T, C, phi)}
            return _finish(scene, kind, extra)
        except SceneError as e:
            tried.append(str(e))
    raise SceneError(f"no scene found for {kind.value}; attempts: {tried}")


def _resultant_agrees(T: BidegreeCurve, C: BidegreeCurve, phi: Sequence) -> bool:
    inter = conic_cubic_intersection(T, C)
    an = binary_form_analyze(restrict_to_curve(T, phi))
    return inter.multiplicities == an.multiplicities and inter.distinct_points == an.distinct_roots


def ramification_points(T: BidegreeCurve) -> list[tuple[Fraction, Fraction]]:
    """Rational (s:t) over which the projection T -> P^1_(s:t) ramifies.

    Over (s:t) the fiber is the zero set of the quadratic s*A + t*B; its
    discriminant is a binary quadratic in (s, t).
    """
    a2, a1, a0 = T.A.coeffs[2], T.A.coeffs[1], T.A.coeffs[0]
    b2, b1, b0 = T.B.coeffs[2], T.B.coeffs[1], T.B.coeffs[0]
    # disc(s,t) = (s a1 + t b1)^2 - 4 (s a2 + t b2)(s a0 + t b0), lam = s, mu = t
    form = BinaryForm(2, (
        b1 * b1 - 4 * b2 * b0,
        2 * a1 * b1 - 4 * (a2 * b0 + b2 * a0),
        a1 * a1 - 4 * a2 * a0,
    ))
    return [pt for pt, _ in binary_form_analyze(form).rational_roots]


def _vertex_on_curve_scene(kind: FiberType, Q: QuadricForm, T: BidegreeCurve) -> Scene:
    want_ramified = kind is FiberType.N4
    ram = set(ramification_points(T))
    cands = [(Fraction(1), Fraction(0))] + [(Fraction(a), Fraction(1)) for a in (0, 1, -1, 2, -2, 3, Fraction(1, 2))]
    for uv in cands:
        p1 = curve_parameter_point(T, uv)
        coords = segre_inverse(p1)
        st = coords[0]
        ramified = st in ram
        if ramified != want_ramified:
            continue
        phi = tangent_hyperplane(Q, p1)
        fib = T.A.scale(st[0]) + T.B.scale(st[1])  # the fiber of T -> P^1_(s:t)
        g_fiber = binary_form_analyze(fib)
        scene = Scene(kind, Q, T, phi, (), notes=[
            f"vertex p1 = {[str(a) for a in p1]} on T, (s:t) = ({st[0]}:{st[1]}), "
            f"{'ramified' if ramified else 'unramified'} for the projection to (s:t)"
        ])
        # T ∩ T_p1 Q^3 = p1 + (fiber of the projection through p1)
        expected = (3,) if ramified else (2, 1)
        extra = {
            "fiber of projection has expected shape": g_fiber.multiplicities == ((2,) if ramified else (1, 1)),
            "T_t = p1 + fiber through p1": binary_form_analyze(restrict_to_curve(T, phi)).multiplicities == expected,
        }
        try:
            return _finish(scene, kind, extra)
        except SceneError:
            continue
    raise SceneError(f"no {'ramified' if want_ramified else 'unramified'} rational point found on T")


# ---------------------------------------------------------------------------
# randomized conic roundtrip
# ---------------------------------------------------------------------------


def default_seed() -> int:
    return int(os.environ.get("DP6_SEED", "20240607"))


def random_point_on(Q: QuadricForm, rng: random.Random, height: int = 5) -> Vec:
    """Random rational point of SCENE_Q3-type quadrics solved for x0."""
    n = Q.size
    M = Q.gram
    for _ in range(1000):
        x = [Fraction(0)] + [Fraction(rng.randint(-height, height), rng.randint(1, height)) for _ in range(n - 1)]
        # q(x) is linear in x0 when M[0][0] = 0: q = 2 x0 (M[0] . x) + rest
        lin = 2 * sum(M[0, j] * x[j] for j in range(1, n))
        rest = Q(x)
        if M[0, 0] != 0 or lin == 0:
            continue
        x[0] = -rest / lin
        if Q(x) == 0:
            return normalize_point(x)
    raise GeometryError("could not sample a point")


@dataclass(frozen=True)
class RoundtripResult:
    v1: Vec
    v2: Vec
    recovered: tuple[Vec, ...]
    ok: bool


def claim_roundtrip(Q: QuadricForm, v1: Sequence, v2: Sequence) -> RoundtripResult:
    """From a smooth C(v1, v2), the singular members of the pencil through its
    plane have vertices exactly {v1, v2}."""
    v1, v2 = normalize_point(v1), normalize_point(v2)
    pc = polar_conic(Q, v1, v2)
    if not pc.smooth:
        raise GeometryError("C(v1, v2) is not smooth")
    # a pencil basis chosen independently of the tangent hyperplanes
    planes = [list(b) for b in pc.plane]
    ann = nullspace(planes, Q.size)  # covectors vanishing on the plane
    P = PlanePencil(ann[0], ann[1])
    disc = pencil_discriminant(Q, P)
    verts = tuple(sorted(m.vertex for m in disc.singular_members if m.vertex is not None))
    ok = disc.distinct_roots == 2 and set(verts) == {v1, v2}
    return RoundtripResult(v1, v2, verts, ok)


def random_roundtrips(n: int, seed: int | None = None, Q: QuadricForm = SCENE_Q3) -> list[RoundtripResult]:
    rng = random.Random(default_seed() if seed is None else seed)
    out = []
    while len(out) < n:
        v1, v2 = random_point_on(Q, rng), random_point_on(Q, rng)
        try:
            out.append(claim_roundtrip(Q, v1, v2))
        except GeometryError:
            continue  # degenerate draw: dependent tangents or singular conic
    return out
