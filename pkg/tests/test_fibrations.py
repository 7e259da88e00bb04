import itertools

import pytest

from dp6 import fibrations as fb
from dp6.fibrations import CoveringInvariants, InadmissibleError


def test_degree_and_gating():
    assert fb.anticanonical_degree(CoveringInvariants(0, 0, 0)) == 22
    with pytest.raises(InadmissibleError, match="inadmissible"):
        fb.anticanonical_degree(CoveringInvariants(0, 0, 1))
    with pytest.raises(InadmissibleError):
        CoveringInvariants(-1, 0, 0)


def test_spectrum():
    spectrum = fb.degree_spectrum(0)
    assert max(spectrum) == 22 and 20 not in spectrum
    assert spectrum[22] == [(0, 0, 0)]
    assert {v for v in spectrum if 18 <= v <= 22} == {18, 22}
    assert all(v % 2 == 0 for v in spectrum)


def test_spectrum_against_bruteforce():
    brute = set()
    for b, t, c in itertools.product(range(12), range(12), range(4)):
        ci = CoveringInvariants(b, t, c)
        if ci.admissible:
            v = 22 - 6 * b - 4 * t - 12 * c
            if v >= 0:
                brute.add(v)
    assert set(fb.degree_spectrum(0)) == brute


def test_double_projection():
    o = fb.double_projection(22, 0, 0, 0)
    assert (o.kq3, o.kq_dot_T, o.deg_alpha) == (40, 9, -1)
    assert fb.double_projection_system(22, 0, 0, 0) == [40, 9, -1]
    # kq3 does not depend on -K_X.C0
    assert {fb.double_projection(22, 0, 0, k).kq3 for k in (0, 6, 12)} == {40}
    with pytest.raises(InadmissibleError, match="not an integer"):
        fb.double_projection(21, 0, 0, 0)


def test_relative_degree_and_h21():
    assert fb.relative_degree(CoveringInvariants(0, 0, 0)) == -14
    assert fb.hodge_h21(CoveringInvariants(2, 1, 0)) == 3


def test_quadric_degree_gating():
    assert fb.quadric_fibration_degree(0, 0) == 40
    with pytest.raises(InadmissibleError):
        fb.quadric_fibration_degree(0, 1)


def test_hurwitz():
    assert fb.hurwitz_genus(2, 0, 2) == 0
    assert fb.hurwitz_genus(2, 0, 6) == 2
    assert fb.hurwitz_genus(3, 1, 0) == 1
    with pytest.raises(ValueError):
        fb.hurwitz_genus(2, 0, 1)


@pytest.mark.parametrize("convention,alphas", [("minus-alpha", range(-3, 0)), ("adjunction", range(3, 6))])
def test_sliced_quadric_grid(convention, alphas):
    for g, F, a in itertools.product(range(3), range(3), alphas):
        r = fb.sliced_quadric(g, F, a, convention)
        assert r.minus_k_cubed == r.product == r.expected == 40 - 8 * r.g_B - 32 * g


def test_two_ray():
    assert fb.two_ray_solve((5, 2, -1), (5, 1), (-3, 3)) == [(1, -2)]
    assert fb.two_ray_solve((5, 2, -1), (5, 1), (-1, 1)) == [(0, 1)]
    assert fb.two_ray_solve((5, 2, -1), (5, 1), (-2, 2)) == []
    assert fb.two_ray_solve((5, 2, -1), (5, 1), (0, 2)) == []
    with pytest.raises(ValueError):
        fb.two_ray_solve((5, 2, -1), (5, 1), (-3, 3), search_bound=0)


def test_two_ray_against_scan():
    for m in range(-6, 7):
        sols = fb.two_ray_solve((5, 2, -1), (5, 1), (-m, m))
        scan = [(x, y) for x in range(-60, 61) for y in range(-60, 61)
                if 5 * x * x + 2 * x * y - y * y == -m and 5 * x + y == m]
        assert sols == scan


def test_census():
    c = fb.minus_two_census(6)
    assert c.only_m_one and c.solutions
