"""Registry of numerical checks run by ``dp6 verify``.

Each check computes an actual value and compares its string form with the
expected one. ``paper_ref`` is a short formula anchor identifying the claim;
every anchor is listed in docs/CHECKS.md.
"""

from __future__ import annotations

import itertools
import json
import sys
from dataclasses import dataclass
from typing import Callable

from . import chow, classify, fibrations, geometry, surfaces, trace
from .fibrations import CoveringInvariants


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    status: str  # pass | fail | error
    expected: str
    actual: str
    paper_ref: str

    def to_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "status": self.status,
            "expected": self.expected,
            "actual": self.actual,
            "paper_ref": self.paper_ref,
        }


@dataclass(frozen=True)
class Check:
    check_id: str
    paper_ref: str
    expected: str
    compute: Callable[[], object]


REGISTRY: list[Check] = []


def check(check_id: str, paper_ref: str, expected):
    def deco(fn):
        if not paper_ref:
            raise ValueError(f"{check_id}: empty paper_ref")
        if any(c.check_id == check_id for c in REGISTRY):
            raise ValueError(f"duplicate check id {check_id}")
        REGISTRY.append(Check(check_id, paper_ref, str(expected), fn))
        return fn

    return deco


def _run(c: Check) -> CheckResult:
    try:
        actual = str(c.compute())
    except Exception as e:  # failures are data
        return CheckResult(c.check_id, "error", c.expected, f"{type(e).__name__}: {e}", c.paper_ref)
    return CheckResult(c.check_id, "pass" if actual == c.expected else "fail", c.expected, actual, c.paper_ref)


def run_verify(filter_: str | None = None) -> tuple[list[CheckResult], int]:
    """Run all checks whose id contains ``filter_``; exit code 0 iff all pass."""
    selected = [c for c in REGISTRY if not filter_ or filter_ in c.check_id]
    if filter_ and not selected:
        print(f"warning: no checks match {filter_!r}", file=sys.stderr)
    results = sorted((_run(c) for c in selected), key=lambda r: r.check_id)
    return results, 0 if all(r.status == "pass" for r in results) else 1


def emit_report(results: list[CheckResult], fmt: str = "text") -> bytes:
    if fmt == "json":
        return json.dumps([r.to_dict() for r in results], ensure_ascii=False, indent=2).encode("utf-8")
    if fmt != "text":
        raise ValueError("format must be text or json")
    if not results:
        return b"no checks\n"
    w_id = max(len(r.check_id) for r in results)
    w_st = 6
    w_ex = max(len("expected"), min(max(len(r.expected) for r in results), 40))
    lines = [f"{'check':<{w_id}}  {'status':<{w_st}}  {'expected':<{w_ex}}  actual"]
    for r in results:
        lines.append(f"{r.check_id:<{w_id}}  {r.status:<{w_st}}  {r.expected:<{w_ex}}  {r.actual}")
    n_pass = sum(r.status == "pass" for r in results)
    lines.append(f"{n_pass}/{len(results)} passed")
    return ("\n".join(lines) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# invariant formulas
# ---------------------------------------------------------------------------

REF_DEGREE = "(-K_X)^3=22-(6g(B)+4g(T)+12g(C))"
REF_SPECTRUM = "(-K_X)^3<=22 and (-K_X)^3!=20"
REF_H21 = "h^{1,2}(X)=g(B)+g(T)-g(C)"
REF_RELATIVE = "(-K_{X/C})^3=-(3deg R_B+2deg R_T)"
REF_QUADRIC = "(-K_Q)^3=40-(8g(B)+32g(C))"
REF_SIGMA = "O_C(Sigma)=(det F)^2(x)O(4L)"
REF_DOUBLE = "(-K_Q)^3=(4(-K_X)^3+16g(T)-48g(C)+32)/3"
REF_TWO_RAY = "5x^2+2xy-y^2=-m, 5x+y=m"
REF_CENSUS = "m=3a-sum b_j, m^2-2=a^2-sum b_j^2"
REF_LINES = "#lines(i,j)=i*j"
REF_SING = "Du Val type of the (-2)-configuration"
REF_TABLE = "(b_red,t_red) -> (X_t, Y_t, Z_t)"
REF_NONNORMAL = "normalization F_2 (h+2f) or F_4 (h+f)"
REF_CHI = "chi=r+c1.(c1-K)/2-c2"
REF_L3 = "(L|_F_t)^3=5"
REF_BL3 = "(-K_{F_t})^3+8=48"
REF_XI4 = "xi_F^4+1=6"
REF_P111 = "(-K_{P^{1,1,1}})^3=48"
REF_P22 = "deg P^{2,2}=6"
REF_EULER = "Eu(W)=8"
REF_EXAMPLES = "T_t=p_1+g_a^{-1}(g_a(p_1))"
REF_ROUNDTRIP = "C(v_1,v_2)=Q^3 ∩ T_{v_1}Q^3 ∩ T_{v_2}Q^3"
REF_DISCRIMINANT = "pencil through a smooth conic has two singular members"
REF_TRACE = "c_B surjective, c_B(b_1^v(x)(b_1-b_1^v(b_1^2))+...)=1^v"

ALL_REFS = [v for k, v in dict(globals()).items() if k.startswith("REF_")]


@check("anticanonical/degree22", REF_DEGREE, 22)
def _():
    return fibrations.anticanonical_degree(CoveringInvariants(0, 0, 0))


@check("anticanonical/degree18", REF_DEGREE, 18)
def _():
    return fibrations.anticanonical_degree(CoveringInvariants(0, 1, 0))


@check("anticanonical/degree12", REF_DEGREE, 12)
def _():
    return fibrations.anticanonical_degree(CoveringInvariants(1, 1, 0))


@check("anticanonical/spectrum-max", REF_SPECTRUM, 22)
def _():
    return max(fibrations.degree_spectrum(0))


@check("anticanonical/spectrum-no-20", REF_SPECTRUM, False)
def _():
    return 20 in fibrations.degree_spectrum(0)


@check("anticanonical/spectrum-22-only-trivial", REF_SPECTRUM, [(0, 0, 0)])
def _():
    return fibrations.degree_spectrum(0)[22]


@check("anticanonical/h21", REF_H21, [0, 3, 4])
def _():
    return [fibrations.hodge_h21(CoveringInvariants(*t)) for t in [(0, 0, 0), (2, 1, 0), (3, 2, 1)]]


@check("anticanonical/relative-degree", REF_RELATIVE, [-14, -4, 0])
def _():
    return [fibrations.relative_degree(CoveringInvariants(*t)) for t in [(0, 0, 0), (1, 2, 1), (3, 4, 2)]]


# ---------------------------------------------------------------------------
# quadric fibrations and the double projection
# ---------------------------------------------------------------------------


def _grid(convention: str, alphas) -> str:
    bad = []
    for g, F, a in itertools.product(range(3), range(3), alphas):
        r = fibrations.sliced_quadric(g, F, a, convention)
        if not (r.minus_k_cubed == r.product == r.expected):
            bad.append((g, F, a))
    return f"27 points, mismatches {bad}"


@check("quadric-fibration/minus-alpha-product-grid", REF_SIGMA, "27 points, mismatches []")
def _():
    return _grid("minus-alpha", range(-3, 0))


@check("quadric-fibration/adjunction-grid", REF_SIGMA, "27 points, mismatches []")
def _():
    return _grid("adjunction", range(3, 6))


@check("quadric-fibration/minus-alpha-closed-form", REF_QUADRIC, True)
def _():
    return all(
        fibrations.sliced_quadric(g, F, a).product == 24 * (2 - 2 * g) - 8 * F + 16 * a
        for g, F, a in itertools.product(range(3), range(3), range(-3, 0))
    )


@check("quadric-fibration/degree-values", REF_QUADRIC, [40, 24, 32])
def _():
    return [fibrations.quadric_fibration_degree(b, 0) for b in (0, 2, 1)]


def conic_blowup() -> chow.IntersectionRing:
    """Blow-up of a smooth quadric 3-fold along a conic."""
    Q = chow.slice_hypersurface(chow.projective_space(4), "2*H")
    return chow.blow_up_curve(Q, 0, {"H": 2}, -6)


@check("double-projection/closed-forms", REF_DOUBLE, "(40, 9, -1)")
def _():
    o = fibrations.double_projection(22, 0, 0, 0)
    return (o.kq3, o.kq_dot_T, o.deg_alpha)


@check("double-projection/linear-system", REF_DOUBLE, "[40, 9, -1]")
def _():
    return [int(v) for v in fibrations.double_projection_system(22, 0, 0, 0)]


@check("double-projection/conic-blowup-degree", REF_DOUBLE, 40)
def _():
    return conic_blowup().minus_k_cubed()


@check("double-projection/twisted-cubic-degree", REF_DOUBLE, 9)
def _():
    # a twisted cubic in Q^3 has class 3/2 H^2 and misses the conic
    return conic_blowup().integrate("3/2*(3*H - E)*H^2")


@check("double-projection/consistency-square", REF_QUADRIC, True)
def _():
    for ci in fibrations.admissible_triples(-40):
        kx3 = fibrations.anticanonical_degree(ci)
        kq3 = fibrations.double_projection(kx3, ci.g_T, ci.g_C, 0).kq3
        if kq3 != 40 - 8 * ci.g_B - 32 * ci.g_C:
            return False
    return True


@check("two-ray/m3", REF_TWO_RAY, [(1, -2)])
def _():
    return fibrations.two_ray_solve((5, 2, -1), (5, 1), (-3, 3))


@check("two-ray/m1", REF_TWO_RAY, [(0, 1)])
def _():
    return fibrations.two_ray_solve((5, 2, -1), (5, 1), (-1, 1))


@check("two-ray/m2", REF_TWO_RAY, [])
def _():
    return fibrations.two_ray_solve((5, 2, -1), (5, 1), (-2, 2))


@check("two-ray/dimension2", REF_TWO_RAY, [])
def _():
    return fibrations.two_ray_solve((5, 2, -1), (5, 1), (0, 2))


@check("two-ray/no-section-n1-n2", REF_TWO_RAY, [[], []])
def _():
    return [fibrations.two_ray_solve((5, 2, -1), (5, 1), (-2 * n, 0)) for n in (1, 2)]


@check("two-ray/minus-two-census", REF_CENSUS, True)
def _():
    c = fibrations.minus_two_census(6)
    return bool(c.solutions) and c.only_m_one


# ---------------------------------------------------------------------------
# surfaces and fiber tables
# ---------------------------------------------------------------------------

_LINES = {"(2,3)": 6, "(2,2)": 4, "(2,1)": 2, "(1,3)": 3, "(1,2)": 2, "(1,1)": 1}
_SING = {"(2,3)": "smooth", "(2,2)": "A1", "(2,1)": "A2", "(1,3)": "A1", "(1,2)": "A1+A1", "(1,1)": "A1+A2"}

for _cfg in surfaces.ALL_CONFIGS:
    check(f"dp6-lattice/lines{_cfg.fiber_type}", REF_LINES, _LINES[_cfg.fiber_type])(
        lambda c=_cfg: len(surfaces.lines_of(c))
    )
    check(f"dp6-lattice/singularity{_cfg.fiber_type}", REF_SING, _SING[_cfg.fiber_type])(
        lambda c=_cfg: surfaces.singularity_of(c)
    )

_ROWS = {
    (2, 3): "(2,3) | (P^1)^3 | (P^2)^2",
    (2, 2): "(2,2) | P^1 x Q^2_0 | (P^2)^2",
    (2, 1): "(2,1) | P^{1,1,1} | (P^2)^2",
    (1, 3): "(1,3) | (P^1)^3 | P^{2,2}",
    (1, 2): "(1,2),(n2) | P^1 x Q^2_0 | P^{2,2}",
    (1, 1): "(1,1),(n4) | P^{1,1,1} | P^{2,2}",
}


def _row_text(row: classify.TableRow) -> str:
    return f"{','.join(t.value for t in row.x_types)} | {row.y_type} | {row.z_type}"


for (_b, _t), _txt in _ROWS.items():
    check(f"fiber-table/row-{_b}-{_t}", REF_TABLE, _txt)(
        lambda b=_b, t=_t: _row_text(classify.classify_from_counts(b, t))
    )


@check("fiber-table/exact-within-counts", REF_TABLE, True)
def _():
    return all(
        classify.classify_exact(d) in classify.classify_from_counts(d.b_red, d.t_red).x_types
        for d in classify.admissible_descriptors()
        if _classifiable(d)
    )


def _classifiable(d) -> bool:
    try:
        classify.classify_exact(d)
        return True
    except classify.ClassifyError:
        return False


@check("fiber-table/non-normal-degree", REF_NONNORMAL, [6, 6])
def _():
    return [classify.NORMALIZATIONS[t].anticanonical_degree() for t in (classify.FiberType.N2, classify.FiberType.N4)]


# ---------------------------------------------------------------------------
# Riemann-Roch and degree checks
# ---------------------------------------------------------------------------

_QL = surfaces.tautological_quadric_lattice()


@check("chi/F", REF_CHI, 8)
def _():
    return surfaces.hrr_chi(_QL, 3, (2, 0), 3)


@check("chi/O(h)", REF_CHI, 4)
def _():
    return surfaces.hrr_chi(_QL, 1, (1, 0), 0)


@check("chi/reflexive-hull", REF_CHI, "5-c2 for c2 in 0..4")
def _():
    ok = all(surfaces.hrr_chi(_QL, 2, (1, 0), c2) == 5 - c2 for c2 in range(5))
    return "5-c2 for c2 in 0..4" if ok else "mismatch"


@check("chi/E(-h)", REF_CHI, 1)
def _():
    t = surfaces.chern_twist(_QL, 2, (1, 0), 0, (-1, 0))
    return surfaces.hrr_chi(_QL, t.rank, t.c1, t.c2)


@check("chi/E(-h+f)", REF_CHI, 1)
def _():
    t = surfaces.chern_twist(_QL, 2, (1, 0), 1, (-1, 1))
    return surfaces.hrr_chi(_QL, t.rank, t.c1, t.c2)


@check("chi/F(-h)", REF_CHI, 1)
def _():
    s = surfaces.chern_sum(_QL, surfaces.ChernData(2, (1, 0), 1), surfaces.ChernData(1, (1, 0), 0))
    t = surfaces.chern_twist(_QL, s.rank, s.c1, s.c2, (-1, 0))
    return surfaces.hrr_chi(_QL, t.rank, t.c1, t.c2)


def bl3_p3() -> chow.IntersectionRing:
    return chow.blow_up_points(chow.projective_space(3), 3)


@check("degrees/L-cubed", REF_L3, 5)
def _():
    return bl3_p3().integrate("(2*H - E1 - E2 - E3)^3")


@check("degrees/bl3-plus-contraction", REF_BL3, 48)
def _():
    return bl3_p3().minus_k_cubed() + 8


@check("degrees/P1-cubed", REF_BL3, 48)
def _():
    P1 = chow.projective_space(1, name="a")
    R = chow.proj_bundle(chow.proj_bundle(P1, 2, [], name="b"), 2, [], name="c")
    return R.minus_k_cubed()


@check("degrees/xi4-plus-one", REF_XI4, 6)
def _():
    R = chow.proj_bundle(chow.lattice_surface(_QL), 3, ["2*h", 3])
    return R.integrate("xi^4") + 1


@check("degrees/P111", REF_P111, 48)
def _():
    R = chow.proj_bundle(chow.lattice_surface(_QL), 2, ["2*h", 2])
    return R.integrate("(2*xi)^3")


@check("degrees/P22", REF_P22, 6)
def _():
    R = chow.proj_bundle(chow.projective_space(2), 3, ["3*H", 3])
    return R.integrate("xi^4")


@check("degrees/P2xP2", REF_P22, 6)
def _():
    R = chow.proj_bundle(chow.projective_space(2), 3, [])
    return R.integrate("(H + xi)^4")


@check("degrees/euler-W", REF_EULER, 8)
def _():
    M = bl3_p3()
    return M.flop("to W+").flop("to W").blow_down_point().euler_number()


# ---------------------------------------------------------------------------
# explicit scenes and trace duality
# ---------------------------------------------------------------------------

for _kind in classify.FiberType:
    check(f"examples/scene{_kind.value}", REF_EXAMPLES, _kind.value)(
        lambda k=_kind: geometry.build_example(k).classified.value
    )


@check("examples/claim-roundtrip", REF_ROUNDTRIP, "20/20")
def _():
    rs = geometry.random_roundtrips(20)
    return f"{sum(r.ok for r in rs)}/{len(rs)}"


@check("examples/discriminant-two-roots", REF_DISCRIMINANT, [2] * 8)
def _():
    return [geometry.build_example(k).discriminant.roots_with_multiplicity for k in classify.FiberType]


@check("trace/corpus", REF_TRACE, "154/154")
def _():
    c = trace.corpus()
    return f"{sum(trace.verify_prop_a4(b).ok for b in c)}/{len(c)}"


@check("trace/dual-numbers", REF_TRACE, "rank 2, preimage ok")
def _():
    r = trace.verify_prop_a4(trace.FiniteAlgebra.from_poly([0, 0, 1]))
    return f"rank {r.rank_c}, preimage {'ok' if r.preimage_ok else 'wrong'}"
