"""Regulator values of the Hesse-family symbols.

Conventions (pinned against the printed constants for t = -2 and t = -1/2):

* For an element defined over R and real t, the gamma-value
  (1/2 pi i) r(gamma) with gamma = A - F_inf(A) equals Im r(A) / pi.
* The B-value (1/2 pi i) r(B) is taken modulo imaginary numbers, i.e. as
  Im r(B) / (2 pi).

With these, xi_Hes has gamma-value (sqrt 3 / 2 pi)(H1 + H2), and for |t| > 1
the continuation is the 4F3 form in 1/t^3 with log|t|.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction as Fr
from typing import Dict, Optional, Tuple

from .errors import BranchUndefined, DivergentArgument, SingularParameter
from .hyper import KdfSpec, hyp, kdf
from .numerics import (PrecisionContext, as_fraction, beta_sym, digamma_rational,
                       rational_reconstruct)
from .periods import zeta3

THIRD = Fr(1, 3)
TWO_THIRDS = Fr(2, 3)


# ---------------------------------------------------------------------------
# building blocks


def _betas(ctx):
    return beta_sym(THIRD, ctx), beta_sym(TWO_THIRDS, ctx)


def h1(t, ctx: PrecisionContext):
    """H1(t) = B_{1/3} t 3F2(1/3,1/3,1/3; 4/3,2/3; t^3)."""
    t = ctx.convert(t)
    return _betas(ctx)[0] * t * hyp([THIRD] * 3, [Fr(4, 3), TWO_THIRDS], t ** 3, ctx)


def h2(t, ctx: PrecisionContext):
    """H2(t) = (1/2) B_{2/3} t^2 3F2(2/3,2/3,2/3; 5/3,4/3; t^3)."""
    t = ctx.convert(t)
    return _betas(ctx)[1] * t ** 2 / 2 * hyp([TWO_THIRDS] * 3, [Fr(5, 3), Fr(4, 3)], t ** 3, ctx)


_KDF_PARAMS = {
    "k1a": (TWO_THIRDS, Fr(5, 3), THIRD, THIRD, TWO_THIRDS),
    "k1b": (Fr(1), Fr(2), THIRD, THIRD, TWO_THIRDS),
    "k2a": (Fr(1), Fr(2), TWO_THIRDS, TWO_THIRDS, Fr(4, 3)),
    "k2b": (Fr(4, 3), Fr(7, 3), TWO_THIRDS, TWO_THIRDS, Fr(4, 3)),
}


def _kdf_values(t, ctx):
    mp = ctx.mp
    t3 = t ** 3
    if abs(t3) >= 1:
        raise DivergentArgument("K-functions are only evaluated for |t^3| < 1")
    return {key: kdf(KdfSpec(a, c, b1, b2, d, 1, t3, t3), ctx)
            for key, (a, c, b1, b2, d) in _KDF_PARAMS.items()}


def _k_from_values(t, k: int, vals, ctx):
    z = zeta3(ctx) ** (k % 3)
    B13, B23 = _betas(ctx)
    K1 = -Fr(3, 2) * z * B13 * t ** 2 * vals["k1a"] + z ** 2 * B13 * t ** 3 * vals["k1b"]
    K2 = -z * B23 * t ** 3 * vals["k2a"] + Fr(3, 4) * z ** 2 * B23 * t ** 4 * vals["k2b"]
    return ctx.mp.mpc(K1), ctx.mp.mpc(K2)


def k_functions(t, k: int, ctx: PrecisionContext):
    """(K_{1,z}(t), K_{2,z}(t)) for z = zeta^k."""
    t = ctx.convert(t)
    return _k_from_values(t, k, _kdf_values(t, ctx), ctx)


_C_MEMO: Dict[Tuple[int, int], Tuple[object, object]] = {}
_C_LOCK = threading.Lock()


def c_constants(ctx: PrecisionContext):
    """(C1, C2); computed once per precision."""
    key = (ctx.digits, ctx.guard)
    hit = _C_MEMO.get(key)
    if hit is None:
        with _C_LOCK:
            hit = _C_MEMO.get(key)
            if hit is None:
                B13, B23 = _betas(ctx)
                C1 = 3 * B13 * hyp([THIRD, THIRD, 1], [Fr(4, 3), TWO_THIRDS], 1, ctx)
                C2 = Fr(3, 2) * B23 * hyp([TWO_THIRDS, TWO_THIRDS, 1], [Fr(5, 3), Fr(4, 3)], 1, ctx)
                hit = (C1, C2)
                _C_MEMO[key] = hit
    return ctx.mp.mpf(hit[0]), ctx.mp.mpf(hit[1])


@dataclass(frozen=True)
class HFunctionBundle:
    t: object
    H1: object
    H2: object
    K1: Tuple[object, object, object]  # indexed by k for z = zeta^k
    K2: Tuple[object, object, object]
    C1: object
    C2: object


def h_bundle(t, ctx: PrecisionContext) -> HFunctionBundle:
    t = ctx.convert(t)
    vals = _kdf_values(t, ctx)
    ks = [_k_from_values(t, k, vals, ctx) for k in range(3)]
    C1, C2 = c_constants(ctx)
    return HFunctionBundle(t, h1(t, ctx), h2(t, ctx), tuple(k[0] for k in ks),
                           tuple(k[1] for k in ks), C1, C2)


# ---------------------------------------------------------------------------
# regulator values on A and B


def _cycle(cycle: str) -> str:
    if cycle not in ("A", "B"):
        raise ValueError(f"cycle must be 'A' or 'B', got {cycle!r}")
    return cycle


def zeta_argument(t, ctx: PrecisionContext):
    """u = -t / (1 - t^3)^(1/3) with the principal cube root."""
    mp = ctx.mp
    t = ctx.convert(t)
    w = 1 - t ** 3
    if w == 0:
        raise SingularParameter("t^3 = 1")
    if mp.im(w) == 0 and mp.re(w) < 0:
        raise BranchUndefined("1 - t^3 lies on the negative real axis")
    if mp.im(w) == 0:
        root = mp.cbrt(mp.re(w))
    else:
        root = mp.exp(mp.log(w) / 3)
    u = -t / root
    if abs(u ** 3) > 1 + 64 * mp.eps:
        raise DivergentArgument("|u^3| > 1 for the transformed argument")
    return u


def reg_xi_zeta(t, cycle: str, ctx: PrecisionContext):
    """r(xi(zeta)_t) on cycle A or B."""
    cycle = _cycle(cycle)
    z = zeta3(ctx)
    u = zeta_argument(t, ctx)
    H1, H2 = h1(u, ctx), h2(u, ctx)
    if cycle == "A":
        return -9 * z ** 2 * H1 + 9 * z * H2
    return -3 * z * (1 - z) * (H1 + H2)


def _xi_rho_from_bundle(b: HFunctionBundle, k: int, cycle: str, ctx):
    zeta = zeta3(ctx)
    z = zeta ** (k % 3)
    k2 = (2 * k) % 3
    if cycle == "A":
        return (-(1 - zeta) * (b.H1 + b.K1[k2]) + (1 - zeta ** 2) * (b.H2 + b.K2[k % 3])
                - z * (1 - zeta) * b.C1 - z ** 2 * (1 - zeta ** 2) * b.C2)
    return b.H1 + b.K1[k2] - b.H2 - b.K2[k2] + z * b.C1 + z ** 2 * b.C2


def reg_xi_rho(t, k: int, cycle: str, ctx: PrecisionContext):
    """r(xi(rho z)_t) on cycle A or B, z = zeta^k."""
    return _xi_rho_from_bundle(h_bundle(t, ctx), k, _cycle(cycle), ctx)


def gamma_value(r_A, ctx: PrecisionContext):
    """(1/2 pi i) r(gamma) for an element defined over R, from r(A)."""
    mp = ctx.mp
    return mp.im(r_A) / mp.pi


def b_value(r_B, ctx: PrecisionContext):
    """(1/2 pi i) r(B) modulo imaginary numbers."""
    mp = ctx.mp
    return mp.im(r_B) / (2 * mp.pi)


def reg_xi_prime(t, cycle: str, ctx: PrecisionContext):
    """r(2 xi(rho) - xi(rho zeta) - xi(rho zeta^2)) on cycle A or B."""
    b = h_bundle(t, ctx)
    cycle = _cycle(cycle)
    return (2 * _xi_rho_from_bundle(b, 0, cycle, ctx) - _xi_rho_from_bundle(b, 1, cycle, ctx)
            - _xi_rho_from_bundle(b, 2, cycle, ctx))


def xi_prime_gamma_closed(t, ctx: PrecisionContext):
    """(sqrt 3 / 2 pi)(2K11 - K1z - K1z2 + 2K21 - K2z - K2z2 + 3C1 - 3C2)(t)."""
    mp = ctx.mp
    b = h_bundle(t, ctx)
    s = (2 * b.K1[0] - b.K1[1] - b.K1[2] + 2 * b.K2[0] - b.K2[1] - b.K2[2]
         + 3 * b.C1 - 3 * b.C2)
    return mp.sqrt(3) / (2 * mp.pi) * s


# ---------------------------------------------------------------------------
# xi_Hes


def reg_hesse_series(t, ctx: PrecisionContext):
    """(sqrt 3 / 2 pi)(H1(t) + H2(t)) for real |t| <= 1."""
    mp = ctx.mp
    t = ctx.convert(t)
    if t == 1:
        raise SingularParameter("t = 1")
    if abs(t) > 1:
        raise DivergentArgument("series form needs |t| <= 1")
    return mp.re(mp.sqrt(3) / (2 * mp.pi) * (h1(t, ctx) + h2(t, ctx)))


def reg_hesse_zudilin(t, ctx: PrecisionContext):
    """The 4F3 form in 1/t^3, using log|t| for negative t; needs |t| >= 1."""
    mp = ctx.mp
    t = ctx.convert(t)
    if t == 0:
        raise DivergentArgument("the 4F3 form needs t != 0")
    if t == 1:
        raise SingularParameter("t = 1")
    if abs(t) < 1:
        raise DivergentArgument("the 4F3 form needs |t| >= 1")
    psi = (2 * digamma_rational(1, ctx) - digamma_rational(THIRD, ctx)
           - digamma_rational(TWO_THIRDS, ctx))
    F = hyp([Fr(4, 3), Fr(5, 3), 1, 1], [2, 2, 2], 1 / t ** 3, ctx)
    return -(psi + 3 * mp.log(abs(t)) - 2 / (9 * t ** 3) * F) / 3


def reg_hesse(t, ctx: PrecisionContext):
    """(1/2 pi i) r(xi_Hes,t)(gamma) for real t != 1."""
    tv = ctx.convert(t)
    if tv == 1:
        raise SingularParameter("X_1 is singular")
    if abs(tv) <= 1:
        return reg_hesse_series(tv, ctx)
    return reg_hesse_zudilin(tv, ctx)


def q_ratio(t, ctx: PrecisionContext, cache_dir: Optional[str] = None, max_den: int = 10 ** 4,
            reconstruct_tol=None):
    """(Q_t, rational reconstruction) with Q_t = reg_hesse(t) pi^2 / L(X_t, 2)."""
    from .lseries import curve_l_data, l_value_s2

    t = as_fraction(t)
    if t == 0 or t == 1:
        raise SingularParameter("Q_t is defined for t not in {0, 1}")
    mp = ctx.mp
    data = curve_l_data(t, cache_dir=cache_dir)
    L = l_value_s2(data, ctx, cache_dir=cache_dir)
    Q = reg_hesse(t, ctx) * mp.pi ** 2 / L
    tol = mp.mpf(10) ** -12 if reconstruct_tol is None else reconstruct_tol
    return Q, rational_reconstruct(Q, max_den, tol=tol * max(1, abs(Q)))


# ---------------------------------------------------------------------------
# regulator determinants


def reg_det_parts(which: str, ctx: PrecisionContext):
    """(gamma-value of the real element, B-value of the second element)."""
    if which == "minus2":
        g = reg_hesse(Fr(-2), ctx)
        b = b_value(reg_xi_zeta(-2, "B", ctx), ctx)
    elif which == "minusHalf":
        g = gamma_value(reg_xi_prime(Fr(-1, 2), "A", ctx), ctx)
        b = b_value(reg_xi_zeta(Fr(-1, 2), "B", ctx), ctx)
    elif which == "zero":
        g = gamma_value(reg_xi_rho(0, 0, "A", ctx), ctx)
        b = b_value(reg_xi_rho(0, 1, "B", ctx), ctx)
    else:
        raise ValueError("which must be one of minus2, minusHalf, zero")
    return g, b


def regulator_zero_closed_form(ctx: PrecisionContext):
    """(27 / 4 pi^2) (B13 3F2(..;1) - B23 3F2(..;1)/2)^2, the printed closed form."""
    mp = ctx.mp
    return 27 / (4 * mp.pi ** 2) * fermat_combination(ctx) ** 2


def fermat_combination(ctx: PrecisionContext):
    """B13 3F2(1/3,1/3,1;4/3,2/3;1) - (1/2) B23 3F2(2/3,2/3,1;5/3,4/3;1) = (C1 - C2)/3."""
    C1, C2 = c_constants(ctx)
    return (C1 - C2) / 3


def reg_det(which: str, ctx: PrecisionContext):
    """Regulator determinant R_{-2}, R_{-1/2}, or R_0 (closed form)."""
    if which == "zero":
        return regulator_zero_closed_form(ctx)
    g, b = reg_det_parts(which, ctx)
    return abs(g * b)


def reg_det_from_symbols(which: str, ctx: PrecisionContext):
    """|gamma-value * B-value| assembled from the symbol regulators for every case."""
    g, b = reg_det_parts(which, ctx)
    return abs(g * b)


def l_j3_closed_form(ctx: PrecisionContext):
    """L(j_3, 2) = 2 pi / (27 sqrt 3) times the Fermat combination."""
    mp = ctx.mp
    return 2 * mp.pi / (27 * mp.sqrt(3)) * fermat_combination(ctx)


def hypergeometric_relations(ctx: PrecisionContext):
    """The three 3F2 combinations that agree numerically (arguments 1, -8, 8/9).

    The -8 combination equals -(H1 + H2)(-2), obtained from the 4F3 continuation
    of xi_Hes; the 8/9 combination is (H1 + H2)(u) at u = 2 / 9^(1/3).
    """
    mp = ctx.mp
    at_one = fermat_combination(ctx)
    at_minus8 = -(2 * mp.pi / mp.sqrt(3)) * reg_hesse(Fr(-2), ctx)
    u = 2 / mp.cbrt(9)
    at_eight_ninths = mp.re(h1(u, ctx) + h2(u, ctx))
    return {"at_one": at_one, "at_minus8": at_minus8, "at_eight_ninths": at_eight_ninths}
