from fractions import Fraction as Fr

import pytest

from hesse.errors import OnBoundary
from hesse.lseries import hesse_l_data, l_value_s2
from hesse.mahler import (adaptive_gl, cubic_roots, in_curved_triangle, jensen_integrand,
                          mahler_measure, mahler_vs_regulator_defect, root_counts)
from hesse.numerics import PrecisionContext
from hesse.regulator import reg_hesse_zudilin


@pytest.mark.parametrize("t", [Fr(-2), Fr(-1), Fr(2), Fr(5, 3), Fr(-1, 2)])
def test_mahler_equals_minus_regulator(ctx20, t):
    assert mahler_vs_regulator_defect(t, ctx20) < 1e-8


def test_boundary_limit(ctx20):
    with pytest.raises(OnBoundary):
        mahler_measure(Fr(-1, 3), ctx20)
    res = mahler_measure(Fr(-1, 3), ctx20, allow_boundary=True)
    assert res.boundary
    assert mahler_vs_regulator_defect(Fr(-1, 3), ctx20, allow_boundary=True) < 1e-6


@pytest.mark.parametrize("t", [Fr(0), Fr(1, 2), Fr(-1, 4)])
def test_inside_triangle_refused(ctx20, t):
    with pytest.raises(ValueError):
        mahler_measure(t, ctx20)


def test_complex_t_refused(ctx20):
    with pytest.raises(ValueError):
        mahler_measure(2 + 1j, ctx20)


def test_panel_doubling(ctx20):
    a = mahler_measure(Fr(-2), ctx20, panels=1).value
    b = mahler_measure(Fr(-2), ctx20, panels=2).value
    assert abs(a - b) < 1e-10
    assert a > 0


def test_gauss_legendre_polynomial_exact(ctx30):
    mp = ctx30.mp
    v, err = adaptive_gl(lambda x: x ** 7 - 3 * x ** 2, 0, 2, mp, mp.mpf(10) ** -25)
    assert abs(v - (mp.mpf(2) ** 8 / 8 - 8)) < ctx30.tol


def test_cubic_roots(ctx30):
    mp = ctx30.mp
    for p, q in [(mp.mpf(-3), mp.mpf(2)), (mp.mpc(1, 2), mp.mpc(-0.5, 0.25)), (mp.mpf(0), mp.mpf(8))]:
        roots = cubic_roots(p, q, mp)
        assert abs(sum(roots)) < ctx30.tol * 10
        assert abs(roots[0] * roots[1] * roots[2] + q) < ctx30.tol * 10


def test_jensen_integrand_symmetry(ctx20):
    mp = ctx20.mp
    th = mp.mpf("0.07")
    v = jensen_integrand(mp.mpf(-2), th, mp)
    assert abs(jensen_integrand(mp.mpf(-2), th + mp.mpf(1) / 3, mp) - v) < ctx20.tol * 10
    assert abs(jensen_integrand(mp.mpf(-2), 1 - th, mp) - v) < ctx20.tol * 10


@pytest.mark.parametrize("t", [3, -2, 1.5, -0.5])
def test_root_counts_outside(ctx20, t):
    assert set(root_counts(t, ctx20, 90)) == {2}


def test_curved_triangle_membership(ctx20):
    assert in_curved_triangle(0, ctx20)
    assert in_curved_triangle(Fr(1, 2), ctx20)
    assert in_curved_triangle(Fr(-1, 3), ctx20)
    assert not in_curved_triangle(-2, ctx20)
    assert not in_curved_triangle(Fr(11, 10), ctx20)
    assert in_curved_triangle(0.2 + 0.2j, ctx20, samples=400)
    assert not in_curved_triangle(2 + 2j, ctx20, samples=400)


@pytest.mark.parametrize("t,q", [(Fr(5, 3), Fr(49, 2)), (Fr(-2), Fr(81, 4))])
def test_mahler_over_l_value(ctx20, t, q):
    mp = ctx20.mp
    m = mahler_measure(t, ctx20).value
    L = l_value_s2(hesse_l_data(t), ctx20)
    assert abs(m * mp.pi ** 2 / L - mp.mpf(q.numerator) / q.denominator) < 1e-10


def test_mahler_against_zudilin_form(ctx20):
    assert abs(mahler_measure(Fr(-4, 3), ctx20).value + reg_hesse_zudilin(Fr(-4, 3), ctx20)) < 1e-10


def test_log_growth(ctx20):
    mp = ctx20.mp
    vals = [mahler_measure(t, ctx20).value - mp.log(abs(t)) for t in (10, 100, 1000)]
    # m(t) = log 3|t| + o(1)
    assert abs(vals[2] - mp.log(3)) < abs(vals[0] - mp.log(3))
    assert abs(vals[2] - mp.log(3)) < 1e-3
