import itertools
from fractions import Fraction

import pytest

from dp6 import surfaces
from dp6.surfaces import (
    ALL_CONFIGS, ChernData, DelPezzoConfig, LatticeError, brute_force_minus_one, chern_sum, chern_twist,
    chern_twist_sum, dp6_lattice, hirzebruch_lattice, hrr_chi, lines_of, minus_one_classes, singularity_of,
    tautological_quadric_lattice,
)

EXPECTED = {
    "(2,3)": (6, "smooth"),
    "(2,2)": (4, "A1"),
    "(2,1)": (2, "A2"),
    "(1,3)": (3, "A1"),
    "(1,2)": (2, "A1+A1"),
    "(1,1)": (1, "A1+A2"),
}


def test_minus_one_classes_match_brute_force():
    fast = minus_one_classes()
    assert len(fast) == 6
    assert fast == brute_force_minus_one(3)


@pytest.mark.parametrize("cfg", ALL_CONFIGS, ids=str)
def test_lines_and_singularities(cfg):
    n, sing = EXPECTED[cfg.fiber_type]
    assert len(lines_of(cfg)) == n
    assert singularity_of(cfg) == sing
    i, j = (int(s) for s in cfg.fiber_type.strip("()").split(","))
    assert n == i * j


def test_lines_are_minus_one_curves_orthogonal_filter():
    L = dp6_lattice()
    for cfg in ALL_CONFIGS:
        _, roots = surfaces.build_config(cfg)
        for ln in lines_of(cfg):
            assert L.square(ln.coeffs) == -1
            assert all(L.dot(ln.coeffs, r.coeffs) >= 0 for r in roots)


def test_config_parse_and_print():
    c = DelPezzoConfig.parse("chains=2+1,colinear=true")
    assert c == DelPezzoConfig((1, 2), True)
    assert str(c) == "chains=2+1,colinear=true"
    assert c.fiber_type == "(1,2)"
    for bad in ("chains=2+2,colinear=true", "chains=3", "chains=3,colinear=maybe", "chains=x,colinear=true"):
        with pytest.raises(LatticeError):
            DelPezzoConfig.parse(bad)


def test_lattices():
    assert dp6_lattice().square(dp6_lattice().canonical) == 6
    for n in range(5):
        F = hirzebruch_lattice(n)
        assert F.square(F.canonical) == 8
    Q = tautological_quadric_lattice()
    assert Q.square(Q.canonical) == 8


def test_hrr_against_p1xp1_oracle():
    # h = f1 + f2, f = f2 on P^1 x P^1, so O(a h + b f) = O(a, a + b)
    Q = tautological_quadric_lattice()
    for a, b in itertools.product(range(-3, 4), repeat=2):
        assert hrr_chi(Q, 1, (a, b), 0) == (a + 1) * (a + b + 1)


def test_twist_and_sum_against_split_bundles():
    Q = tautological_quadric_lattice()
    for ls in itertools.product([(1, 0), (0, 1), (-1, 2), (2, -1)], repeat=3):
        a = ChernData(1, ls[0], 0)
        s = chern_sum(Q, chern_sum(Q, a, ChernData(1, ls[1], 0)), ChernData(1, ls[2], 0))
        t = (1, -1)
        tw = chern_twist(Q, 3, s.c1, s.c2, t)
        shifted = [tuple(x + y for x, y in zip(l, t)) for l in ls]
        direct_c2 = sum(Q.dot(shifted[i], shifted[j]) for i, j in [(0, 1), (0, 2), (1, 2)])
        assert tw.c2 == direct_c2
        chi_sum = sum(hrr_chi(Q, 1, l, 0) for l in shifted)
        assert hrr_chi(Q, 3, tw.c1, tw.c2) == chi_sum


def test_chi_values():
    Q = tautological_quadric_lattice()
    assert hrr_chi(Q, 3, (2, 0), 3) == 8
    assert hrr_chi(Q, 1, (1, 0), 0) == 4
    for c2 in range(5):
        assert hrr_chi(Q, 2, (1, 0), c2) == 5 - c2
    t = chern_twist_sum(Q, 2, (1, 0), 0, twist=(-1, 0))
    assert (t.c1, hrr_chi(Q, t.rank, t.c1, t.c2)) == ((-1, 0), 1)
    with pytest.raises(LatticeError):
        chern_twist_sum(Q, 2, (1, 0), 0)
