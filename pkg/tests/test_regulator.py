from fractions import Fraction as Fr

import mpmath
import pytest

from hesse import regulator as R
from hesse.errors import BranchUndefined, DivergentArgument, SingularParameter
from hesse.hyper import olsson_fp
from hesse.numerics import PrecisionContext, beta_sym
from hesse.periods import zeta3

B_MINUS2 = "-5.40214356416769755850355621723"
B_MINUS_HALF = "-2.31650091536356314247467082900"
GAMMA_MINUS2 = "-1.80071452138923251950118540574"
GAMMA_PRIME = "14.4089573238768907909417772888"


def test_bundle_vanishes_at_zero(ctx30):
    b = R.h_bundle(0, ctx30)
    assert b.H1 == 0 and b.H2 == 0
    assert all(k == 0 for k in b.K1 + b.K2)


def test_k_function_against_double_sums(ctx30):
    t = ctx30.mp.mpf("0.3")
    K1, _ = R.k_functions(t, 0, ctx30)
    with mpmath.workdps(50):
        third = mpmath.mpf(1) / 3
        x = mpmath.mpf("0.3") ** 3

        def brute(a, c, b1, b2, d):
            s = 0
            for m in range(120):
                for n in range(120 - m):
                    s += (mpmath.rf(a, m + n) * mpmath.rf(b1, m) * mpmath.rf(b2, m) / (
                        mpmath.rf(c, m + n) * mpmath.rf(d, m) * mpmath.factorial(m)) * x ** (m + n))
            return s

        B13 = mpmath.beta(third, third)
        tt = mpmath.mpf("0.3")
        ref = (-mpmath.mpf(3) / 2 * B13 * tt ** 2 * brute(2 * third, 5 * third, third, third, 2 * third)
               + B13 * tt ** 3 * brute(1, 2, third, third, 2 * third))
        assert abs(K1 - ref) < ctx30.tol


def test_c_constants_memoized(ctx30):
    assert R.c_constants(ctx30) == R.c_constants(PrecisionContext(30))


def test_xi_zeta_trivial_at_zero(ctx30):
    assert abs(R.reg_xi_zeta(0, "A", ctx30)) < ctx30.tol
    assert abs(R.reg_xi_zeta(0, "B", ctx30)) < ctx30.tol


@pytest.mark.parametrize("t,ref", [(Fr(-2), B_MINUS2), (Fr(-1, 2), B_MINUS_HALF)])
def test_b_values(ctx30, t, ref):
    mp = ctx30.mp
    r = R.reg_xi_zeta(t, "B", ctx30)
    assert abs(mp.re(r)) < ctx30.tol  # (1/2 pi i) r(B) is real
    assert abs(R.b_value(r, ctx30) - mp.mpf(ref)) < mp.mpf(10) ** -25


def test_zeta_argument_domain(ctx20):
    with pytest.raises(BranchUndefined):
        R.zeta_argument(2, ctx20)
    with pytest.raises(SingularParameter):
        R.zeta_argument(1, ctx20)


def test_xi_rho_at_zero(ctx30):
    C1, C2 = R.c_constants(ctx30)
    z = zeta3(ctx30)
    assert abs(R.reg_xi_rho(0, 0, "B", ctx30) - (C1 + C2)) < ctx30.tol
    assert abs(R.reg_xi_rho(0, 1, "B", ctx30) - (z * C1 + z ** 2 * C2)) < ctx30.tol
    assert abs(sum(R.reg_xi_rho(0, k, "B", ctx30) for k in range(3))) < ctx30.tol


def test_hesse_values(ctx30):
    mp = ctx30.mp
    assert R.reg_hesse(0, ctx30) == 0
    assert abs(R.reg_hesse(Fr(-2), ctx30) - mp.mpf(GAMMA_MINUS2)) < mp.mpf(10) ** -25
    with pytest.raises(SingularParameter):
        R.reg_hesse(1, ctx30)


@pytest.mark.parametrize("t", [Fr(-1, 2), Fr(1, 3), Fr(7, 10)])
def test_hesse_is_average_of_xi_rho(ctx30, t):
    v = sum(R.reg_xi_rho(t, k, "A", ctx30) for k in range(3)) / 3
    assert abs(R.gamma_value(v, ctx30) - R.reg_hesse_series(t, ctx30)) < ctx30.tol


def test_hesse_continuity_at_minus_one(ctx30):
    assert abs(R.reg_hesse_series(-1, ctx30) - R.reg_hesse_zudilin(-1, ctx30)) < ctx30.tol
    with pytest.raises(DivergentArgument):
        R.reg_hesse_series(2, ctx30)
    with pytest.raises(DivergentArgument):
        R.reg_hesse_zudilin(Fr(1, 2), ctx30)


def test_xi_prime_two_routes(ctx30):
    mp = ctx30.mp
    g = R.gamma_value(R.reg_xi_prime(Fr(-1, 2), "A", ctx30), ctx30)
    assert abs(g - mp.mpf(GAMMA_PRIME)) < mp.mpf(10) ** -25
    assert abs(g - R.xi_prime_gamma_closed(Fr(-1, 2), ctx30)) < ctx30.tol


def test_xi_zeta_olsson_form(ctx30):
    mp = ctx30.mp
    t = mp.mpf("0.3")
    z = zeta3(ctx30)
    B13, B23 = beta_sym(Fr(1, 3), ctx30), beta_sym(Fr(2, 3), ctx30)
    lhs = (9 * z ** 2 * B13 * t * olsson_fp(Fr(1, 3), Fr(2, 3), t ** 3, ctx30)
           + mp.mpf(9) / 2 * z * B23 * t ** 2 * olsson_fp(Fr(2, 3), Fr(4, 3), t ** 3, ctx30))
    assert abs(lhs - R.reg_xi_zeta(t, "A", ctx30)) < ctx30.tol


@pytest.mark.parametrize("t,q", [(Fr(-2, 3), Fr(-35, 4)), (Fr(-1, 3), Fr(-7)), (Fr(1, 3), Fr(13, 2)),
                                 (Fr(5, 3), Fr(-49, 2)), (Fr(-2), Fr(-81, 4)), (Fr(-1), Fr(-27, 2))])
def test_q_ratio(ctx20, t, q):
    Q, rec = R.q_ratio(t, ctx20)
    assert rec == q
    assert abs(Q - ctx20.mp.mpf(q.numerator) / q.denominator) < 1e-12 * abs(Q)


def test_regulator_determinants(ctx30):
    from hesse.lseries import hesse_l_value_K

    mp = ctx30.mp
    R2 = R.reg_det("minus2", ctx30)
    assert abs(R2 - 3 ** 9 / (2 * mp.pi) ** 4 * hesse_l_value_K(-2, ctx30)) < ctx30.tol * 10
    assert abs(R2 - abs(mp.mpf(GAMMA_MINUS2) * mp.mpf(B_MINUS2))) < mp.mpf(10) ** -15


def test_r_zero_closed_forms(ctx30):
    mp = ctx30.mp
    closed = R.regulator_zero_closed_form(ctx30)
    L = R.l_j3_closed_form(ctx30)
    assert abs(closed - 3 ** 10 / (2 * mp.pi) ** 4 * L ** 2) < ctx30.tol
    # the symbols give exactly half of the closed form
    assert abs(R.reg_det_from_symbols("zero", ctx30) / closed - mp.mpf(1) / 2) < ctx30.tol


def test_l_j3_against_dirichlet_series():
    # L(j3, 2) for the CM curve 27a: independent check of the closed form
    from hesse.lseries import hesse_l_data, l_value_s2

    ctx = PrecisionContext(20)
    L = l_value_s2(hesse_l_data(0), ctx)
    assert abs(L - R.l_j3_closed_form(ctx)) < ctx.tol * 100


def test_hypergeometric_relations(ctx30):
    vals = R.hypergeometric_relations(ctx30)
    assert abs(vals["at_one"] - vals["at_minus8"]) < ctx30.tol
    assert abs(vals["at_one"] - vals["at_eight_ninths"]) < 1e-15


def test_precision_doubling():
    lo, hi = PrecisionContext(20), PrecisionContext(40)
    for f in (lambda c: R.reg_hesse(Fr(-1, 2), c), lambda c: R.reg_hesse(Fr(-3), c),
              lambda c: R.b_value(R.reg_xi_zeta(Fr(-1, 2), "B", c), c)):
        assert abs(hi.mp.mpf(f(lo)) - f(hi)) < lo.tol
