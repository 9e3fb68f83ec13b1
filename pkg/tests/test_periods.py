from fractions import Fraction as Fr

import mpmath
import pytest

from hesse.errors import DivergentArgument
from hesse.numerics import PrecisionContext, beta_sym
from hesse.periods import gauss_manin_defect, hgr_defect, period_vector, riemann_defect, zeta3


def test_periods_at_zero(ctx40):
    pv = period_vector(0, ctx40)
    B13, B23 = beta_sym(Fr(1, 3), ctx40), beta_sym(Fr(2, 3), ctx40)
    z = zeta3(ctx40)
    assert abs(pv.B_omega - B13) < ctx40.tol
    assert abs(pv.B_eta - B23) < ctx40.tol
    assert abs(pv.A_omega + (1 - z) * B13) < ctx40.tol


@pytest.mark.parametrize("t", [0.4, -0.3 + 0.5j])
def test_periods_against_mpmath_2f1(ctx40, t):
    pv = period_vector(t, ctx40)
    with mpmath.workdps(60):
        t = mpmath.mpmathify(t)
        third = mpmath.mpf(1) / 3
        B13 = mpmath.beta(third, third)
        B23 = mpmath.beta(2 * third, 2 * third)
        f1 = mpmath.hyp2f1(third, third, 2 * third, t ** 3)
        f2 = mpmath.hyp2f1(2 * third, 2 * third, 4 * third, t ** 3)
        z = mpmath.exp(2j * mpmath.pi / 3)
        A_omega = -(1 - z) * B13 * f1 + (1 - z ** 2) * B23 * t * f2
        B_omega = B13 * f1 - B23 * t * f2
        assert abs(pv.A_omega - A_omega) < ctx40.tol
        assert abs(pv.B_omega - B_omega) < ctx40.tol


def test_riemann_relation_points(ctx40):
    mp = ctx40.mp
    assert riemann_defect(0, ctx40) < ctx40.tol
    assert riemann_defect(mp.mpf("0.4"), ctx40) < ctx40.tol
    assert riemann_defect(mp.mpf("0.5"), ctx40) < mp.mpf(10) ** -25
    assert riemann_defect(mp.mpf("0.9") * mp.expjpi(mp.mpf(1) / 5), ctx40) < mp.mpf(10) ** -20


def test_hgr_points(ctx40):
    assert hgr_defect(0, ctx40) == 0
    assert hgr_defect(Fr(7, 10), ctx40) < ctx40.tol
    assert hgr_defect(Fr(-9, 10), ctx40) < ctx40.tol


def test_outside_series_disc(ctx20):
    with pytest.raises(DivergentArgument):
        period_vector(Fr(11, 10), ctx20)
    with pytest.raises(DivergentArgument):
        hgr_defect(1, ctx20)


@pytest.mark.parametrize("t", [0, 0.2])
def test_gauss_manin(ctx40, t):
    assert gauss_manin_defect(t, ctx40.mp.mpf(10) ** -6, ctx40) < 1e-8


def test_gauss_manin_second_order(ctx40):
    mp = ctx40.mp
    h = mp.mpf(10) ** -4
    d1 = gauss_manin_defect(mp.mpf("0.3"), h, ctx40)
    d2 = gauss_manin_defect(mp.mpf("0.3"), h / 2, ctx40)
    assert 3.8 < d1 / d2 < 4.2
