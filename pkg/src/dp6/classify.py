"""Fiber types of a sextic del Pezzo fibration and of the two ambient
fibrations Y (fibers in (P^1)^3 degenerations) and Z (fibers in (P^2)^2
degenerations).

Local data of a fiber over t: whether the quadric Q_t is singular, the number
of reduced points of the length-3 scheme T_t, and how T_t meets the vertex of
Q_t when Q_t is a cone.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import surfaces


class ClassifyError(ValueError):
    pass


class FiberType(str, Enum):
    T23 = "(2,3)"
    T22 = "(2,2)"
    T21 = "(2,1)"
    T13 = "(1,3)"
    T12 = "(1,2)"
    T11 = "(1,1)"
    N2 = "(n2)"
    N4 = "(n4)"

    @classmethod
    def parse(cls, s: str) -> "FiberType":
        key = s.strip()
        if not key.startswith("("):
            key = f"({key})"
        key = key.replace(" ", "")
        for t in cls:
            if t.value == key:
                return t
        raise ClassifyError(f"unknown fiber type {s!r}")

    @property
    def normal(self) -> bool:
        return self not in (FiberType.N2, FiberType.N4)

    @property
    def indices(self) -> tuple[int, int]:
        if not self.normal:
            raise ClassifyError("non-normal types have no (i,j) indices")
        i, j = self.value.strip("()").split(",")
        return int(i), int(j)

    def __str__(self) -> str:
        return self.value


class VertexRelation(str, Enum):
    NOT_APPLICABLE = "not_applicable"
    DISJOINT = "disjoint"
    SIMPLE = "simple_point_at_vertex"
    DOUBLE = "double_point_at_vertex"
    TRIPLE = "triple_point_at_vertex"


# the multiplicity of T_t at the vertex, for each relation
_VERTEX_MULT = {VertexRelation.SIMPLE: 1, VertexRelation.DOUBLE: 2, VertexRelation.TRIPLE: 3}


@dataclass(frozen=True)
class FiberDescriptor:
    q_singular: bool
    t_red: int
    vertex_relation: VertexRelation = VertexRelation.NOT_APPLICABLE

    def __post_init__(self):
        object.__setattr__(self, "vertex_relation", VertexRelation(self.vertex_relation))
        if self.t_red not in (1, 2, 3):
            raise ClassifyError("t_red must be 1, 2 or 3")
        na = self.vertex_relation is VertexRelation.NOT_APPLICABLE
        if na == self.q_singular:
            raise ClassifyError("vertex_relation is not_applicable exactly when Q_t is smooth")
        m = _VERTEX_MULT.get(self.vertex_relation)
        if m is not None:
            # the point at the vertex has multiplicity m; the other 3 - m
            # units of length give at least one and at most 3 - m points
            lo, hi = 1 + (1 if m < 3 else 0), 1 + (3 - m)
            if not lo <= self.t_red <= hi:
                raise ClassifyError(
                    f"t_red = {self.t_red} is incompatible with a point of multiplicity {m} at the vertex"
                )

    @property
    def b_red(self) -> int:
        return 1 if self.q_singular else 2


@dataclass(frozen=True)
class TableRow:
    b_red: int
    t_red: int
    x_types: tuple[FiberType, ...]
    y_type: str
    z_type: str


Y_TYPES = {3: "(P^1)^3", 2: "P^1 x Q^2_0", 1: "P^{1,1,1}"}
Z_TYPES = {False: "(P^2)^2", True: "P^{2,2}"}


def big_fiber_types(t_red: int, q_singular: bool) -> tuple[str, str]:
    if t_red not in Y_TYPES:
        raise ClassifyError("t_red must be 1, 2 or 3")
    return Y_TYPES[t_red], Z_TYPES[bool(q_singular)]


def classify_from_counts(b_red: int, t_red: int) -> TableRow:
    if b_red not in (1, 2) or t_red not in (1, 2, 3):
        raise ClassifyError("out of range: b_red in {1,2}, t_red in {1,2,3}")
    i = b_red
    xs = [FiberType(f"({i},{t_red})")]
    if b_red == 1 and t_red == 2:
        xs.append(FiberType.N2)
    if b_red == 1 and t_red == 1:
        xs.append(FiberType.N4)
    y, z = big_fiber_types(t_red, b_red == 1)
    return TableRow(b_red, t_red, tuple(xs), y, z)


TABLE_ROWS = tuple(classify_from_counts(b, t) for b in (2, 1) for t in (3, 2, 1))


def classify_exact(d: FiberDescriptor) -> FiberType:
    if not d.q_singular:
        return FiberType(f"(2,{d.t_red})")
    rel = d.vertex_relation
    if rel is VertexRelation.DISJOINT:
        return FiberType(f"(1,{d.t_red})")
    if rel is VertexRelation.DOUBLE and d.t_red == 2:
        return FiberType.N2
    if rel is VertexRelation.TRIPLE and d.t_red == 1:
        return FiberType.N4
    raise ClassifyError(
        f"inadmissible configuration: singular quadric, t_red = {d.t_red}, {rel.value}"
    )


def admissible_descriptors() -> list[FiberDescriptor]:
    """All descriptors that satisfy the descriptor invariants."""
    out = []
    for t in (1, 2, 3):
        out.append(FiberDescriptor(False, t))
        for rel in list(VertexRelation)[1:]:
            try:
                out.append(FiberDescriptor(True, t, rel))
            except ClassifyError:
                pass
    return out


# ---------------------------------------------------------------------------
# fact cards
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Normalization:
    surface: str
    hirzebruch_n: int
    pullback_anticanonical: tuple[int, int]  # coefficients of (h, f)
    conductor: str
    conductor_map: str

    def anticanonical_degree(self) -> int:
        L = surfaces.hirzebruch_lattice(self.hirzebruch_n)
        return int(L.square(self.pullback_anticanonical))


NORMALIZATIONS = {
    FiberType.N2: Normalization("F_2", 2, (1, 2), "E = C_0", "double cover"),
    FiberType.N4: Normalization(
        "F_4", 4, (1, 1), "E = E_1 + E_2 with E_1 = C_0 and E_2 ~ f",
        "nu(E) = nu(E_1) = nu(E_2); each E_i -> nu(E) is an isomorphism",
    ),
}


@dataclass(frozen=True)
class FiberCard:
    type: FiberType
    lines: int | str
    singularity: str
    normal: bool
    normalization: Normalization | None = None
    config: surfaces.DelPezzoConfig | None = None


def config_of(t: FiberType) -> surfaces.DelPezzoConfig:
    i, j = t.indices
    chains = {3: (1, 1, 1), 2: (2, 1), 1: (3,)}[j]
    return surfaces.DelPezzoConfig(chains, colinear=(i == 1))


def fiber_card(t: FiberType) -> FiberCard:
    """Card for a fiber type; normal types are computed from the lattice."""
    t = FiberType(t)
    if not t.normal:
        return FiberCard(t, "infinite", "non-normal", False, NORMALIZATIONS[t])
    c = config_of(t)
    n_lines = len(surfaces.lines_of(c))
    i, j = t.indices
    if n_lines != i * j:
        raise AssertionError(f"{t}: {n_lines} lines, expected {i * j}")
    return FiberCard(t, n_lines, surfaces.singularity_of(c), True, None, c)
