from fractions import Fraction as Fr

import mpmath
import pytest
from hypothesis import given, strategies as st

from hesse.errors import DivergentArgument, NonConvergentBoundary, PoleAtNonpositiveInteger
from hesse.hyper import KdfSpec, PfqSpec, hyp, kdf, kdf_converges, kdf_excesses, olsson_fp, pfq
from hesse.numerics import PrecisionContext


def brute_kdf(spec, x, y, terms):
    a, c, b1, b2, d, bp = (mpmath.mpf(q.numerator) / q.denominator
                           for q in (spec.a, spec.c, spec.b1, spec.b2, spec.d, spec.bp))
    total = 0
    for m in range(terms):
        for n in range(terms - m):
            total += (mpmath.rf(a, m + n) * mpmath.rf(b1, m) * mpmath.rf(b2, m) * mpmath.rf(bp, n)
                      / (mpmath.rf(c, m + n) * mpmath.rf(d, m) * mpmath.factorial(m) * mpmath.factorial(n))
                      * x ** m * y ** n)
    return total


def test_pfq_at_zero(ctx20):
    assert hyp([Fr(1, 3), Fr(1, 3)], [Fr(2, 3)], 0, ctx20) == 1


def test_pfq_pole_rejected():
    with pytest.raises(PoleAtNonpositiveInteger):
        PfqSpec((1,), (-2,), 0.5)


def test_pfq_outside_disc(ctx20):
    with pytest.raises(DivergentArgument):
        hyp([1, 1], [2], 2, ctx20)


def test_4f3_against_brute_force():
    ctx = PrecisionContext(50)
    with mpmath.workdps(70):
        ref = mpmath.hyper([mpmath.mpf(4) / 3, mpmath.mpf(5) / 3, 1, 1], [2, 2, 2], mpmath.mpf(1) / 8)
    assert abs(hyp([Fr(4, 3), Fr(5, 3), 1, 1], [2, 2, 2], Fr(1, 8), ctx) - ref) < ctx.tol


@pytest.mark.parametrize("x", [0.3, -0.7, 0.5 + 0.4j, -0.2 - 0.85j])
def test_2f1_against_mpmath(ctx40, x):
    with mpmath.workdps(60):
        ref = mpmath.hyp2f1(mpmath.mpf(1) / 3, mpmath.mpf(4) / 3, mpmath.mpf(5) / 3, x)
    assert abs(hyp([Fr(1, 3), Fr(4, 3)], [Fr(5, 3)], x, ctx40) - ref) < ctx40.tol


@pytest.mark.parametrize("upper,lower,ref", [
    ([Fr(1, 3), Fr(1, 3), 1], [Fr(4, 3), Fr(2, 3)], None),
    ([Fr(2, 3), Fr(2, 3), 1], [Fr(5, 3), Fr(4, 3)], None),
])
def test_3f2_at_one_against_mpmath(ctx30, upper, lower, ref):
    with mpmath.workdps(50):
        f = lambda q: mpmath.mpf(q.numerator) / q.denominator
        ref = mpmath.hyper([f(Fr(u)) for u in upper], [f(Fr(v)) for v in lower], 1)
    assert abs(hyp(upper, lower, 1, ctx30) - ref) < ctx30.tol


def test_boundary_divergent_rejected(ctx20):
    with pytest.raises(NonConvergentBoundary):
        hyp([1, 1], [Fr(3, 2)], 1, ctx20)


@pytest.mark.parametrize("t", [0.1, 0.3, 0.5])
def test_contiguity_relation(ctx30, t):
    mp = ctx30.mp
    h = mp.mpf(10) ** -6
    t = mp.mpf(t)
    F = lambda s: hyp([Fr(2, 3), Fr(2, 3)], [Fr(4, 3)], s ** 3, ctx30)
    lhs = t * (F(t + h) - F(t - h)) / (2 * h) + 2 * F(t)
    rhs = 2 * hyp([Fr(2, 3), Fr(5, 3)], [Fr(4, 3)], t ** 3, ctx30)
    assert abs(lhs - rhs) < 1e-8


def test_kdf_at_origin(ctx20):
    assert kdf(KdfSpec(Fr(2, 3), Fr(5, 3), Fr(1, 3), Fr(1, 3), Fr(2, 3), 1, 0, 0), ctx20) == 1


def test_kdf_against_double_sum():
    ctx = PrecisionContext(60)
    spec = KdfSpec(Fr(2, 3), Fr(5, 3), Fr(1, 3), Fr(1, 3), Fr(2, 3), 1, Fr(1, 5), Fr(1, 5))
    with mpmath.workdps(80):
        ref = brute_kdf(spec, mpmath.mpf(1) / 5, mpmath.mpf(1) / 5, 140)
        assert abs(kdf(spec, ctx) - ref) < mpmath.mpf(10) ** -30


def test_kdf_convergence_classification():
    assert kdf_excesses(KdfSpec(Fr(1, 3), Fr(4, 3), Fr(1, 3), Fr(1, 3), Fr(2, 3), 1, 0, 0)) == (1, 0, 0)
    assert not kdf_converges(KdfSpec(Fr(1, 3), Fr(4, 3), Fr(1, 3), Fr(1, 3), Fr(2, 3), 1, 0, 0))
    assert kdf_converges(KdfSpec(0, 2, 0, 0, 1, 0, 0, 0))
    assert not kdf_converges(KdfSpec(Fr(2, 3), Fr(5, 3), Fr(1, 3), Fr(1, 3), Fr(2, 3), 1, 0, 0))


def test_olsson_fp(ctx30):
    assert olsson_fp(Fr(1, 3), Fr(2, 3), 0, ctx30) == 1
    spec = KdfSpec(Fr(1, 3), Fr(4, 3), Fr(1, 3), Fr(1, 3), Fr(2, 3), 1, 0.5, 0.5)
    with mpmath.workdps(50):
        ref = brute_kdf(spec, mpmath.mpf(1) / 2, mpmath.mpf(1) / 2, 200)
    assert abs(olsson_fp(Fr(1, 3), Fr(2, 3), Fr(1, 2), ctx30) - ref) < 1e-25


@given(st.complex_numbers(max_magnitude=0.8, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=0.8, allow_nan=False, allow_infinity=False))
def test_kdf_diagonal_vs_rows(x, y):
    ctx = PrecisionContext(20)
    spec = KdfSpec(1, 2, Fr(2, 3), Fr(2, 3), Fr(4, 3), 1, x, y)
    # rows: sum over m of a 2F1 in y, independent of the anti-diagonal order
    mp = ctx.mp
    total = mp.mpf(0)
    for m in range(400):
        coef = (mp.rf(1, m) * mp.rf(mp.mpf(2) / 3, m) ** 2 / (mp.rf(2, m) * mp.rf(mp.mpf(4) / 3, m)
                * mp.factorial(m)) * mp.mpc(x) ** m)
        if abs(coef) < mp.mpf(10) ** -30:
            break
        total += coef * mp.hyp2f1(1 + m, 1, 2 + m, y)
    assert abs(kdf(spec, ctx) - total) < 1e-12


# (a, b, b - e, c, d, e): the two H sets and the four K sets with e = b - b1
REDUCTION_SETS = [
    (Fr(1, 3), Fr(4, 3), Fr(1, 3), Fr(1, 3), Fr(2, 3), Fr(1)),
    (Fr(2, 3), Fr(5, 3), Fr(2, 3), Fr(2, 3), Fr(4, 3), Fr(1)),
    (Fr(2, 3), Fr(5, 3), Fr(1, 3), Fr(1, 3), Fr(2, 3), Fr(4, 3)),
    (Fr(1), Fr(2), Fr(1, 3), Fr(1, 3), Fr(2, 3), Fr(5, 3)),
    (Fr(1), Fr(2), Fr(2, 3), Fr(2, 3), Fr(4, 3), Fr(4, 3)),
    (Fr(4, 3), Fr(7, 3), Fr(2, 3), Fr(2, 3), Fr(4, 3), Fr(5, 3)),
]


@pytest.mark.parametrize("params", REDUCTION_SETS)
@pytest.mark.parametrize("x", [Fr(-1, 2), Fr(1, 5), Fr(3, 5)])
def test_reduction_formula(ctx30, params, x):
    a, b, bme, c, d, e = params
    mp = ctx30.mp
    xv = ctx30.convert(x)
    lhs = (1 - xv) ** ctx30.convert(a) * kdf(KdfSpec(a, b, bme, c, d, e, xv, xv), ctx30)
    f = lambda q: mpmath.mpf(q.numerator) / q.denominator
    with mpmath.workdps(50):
        rhs = mpmath.hyper([f(a), f(bme), f(d - c)], [f(b), f(d)], f(x / (x - 1)))
        assert abs(lhs - rhs) < ctx30.tol
