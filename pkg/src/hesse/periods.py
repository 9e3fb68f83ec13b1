"""Periods of the holomorphic form omega_t and the second-kind form eta_t over
the symplectic basis {B, A}, as 2F1 combinations in t^3.

Only the principal sheet |t^3| < 1 is implemented; the cycles A and B are the
ones continued from a neighbourhood of t = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Fr

from .errors import DivergentArgument
from .hyper import hyp
from .numerics import PrecisionContext, beta_sym

CYCLES = ("A", "B", "gamma")


@dataclass(frozen=True)
class PeriodVector:
    A_omega: object
    B_omega: object
    A_eta: object
    B_eta: object

    def riemann_product(self):
        """B_omega A_eta - A_omega B_eta (equals -6 pi i)."""
        return self.B_omega * self.A_eta - self.A_omega * self.B_eta


def zeta3(ctx: PrecisionContext):
    mp = ctx.mp
    return mp.mpc(-0.5, mp.sqrt(3) / 2)


def _check_disc(t, ctx):
    mp = ctx.mp
    t3 = t ** 3
    if abs(t3) >= 1:
        raise DivergentArgument(f"|t^3| = {mp.nstr(abs(t3), 8)} >= 1 is outside the series branch")
    return t3


def period_vector(t, ctx: PrecisionContext) -> PeriodVector:
    """The four periods for |t^3| < 1."""
    t = ctx.convert(t)
    t3 = _check_disc(t, ctx)
    z = zeta3(ctx)
    B13, B23 = beta_sym(Fr(1, 3), ctx), beta_sym(Fr(2, 3), ctx)
    f1 = hyp([Fr(1, 3), Fr(1, 3)], [Fr(2, 3)], t3, ctx)
    f2 = hyp([Fr(2, 3), Fr(2, 3)], [Fr(4, 3)], t3, ctx)
    f3 = hyp([Fr(-1, 3), Fr(2, 3)], [Fr(1, 3)], t3, ctx)
    f4 = hyp([Fr(1, 3), Fr(4, 3)], [Fr(5, 3)], t3, ctx)
    A_omega = -(1 - z) * B13 * f1 + (1 - z ** 2) * B23 * t * f2
    B_omega = B13 * f1 - B23 * t * f2
    A_eta = -(1 - z ** 2) * B23 * f3 - (1 - z) / 2 * B13 * t ** 2 * f4
    B_eta = B23 * f3 + B13 * t ** 2 * f4 / 2
    return PeriodVector(A_omega, B_omega, A_eta, B_eta)


def riemann_defect(t, ctx: PrecisionContext):
    """|B_omega A_eta - A_omega B_eta + 6 pi i|."""
    mp = ctx.mp
    pv = period_vector(t, ctx)
    return abs(pv.riemann_product() + 6j * mp.pi)


def hgr_defect(x, ctx: PrecisionContext):
    """Defect of the quadratic 2F1 identity that follows from the period relation."""
    x = ctx.convert(x)
    if abs(x) >= 1:
        raise DivergentArgument("hgr_defect needs |x| < 1")
    p1 = hyp([Fr(1, 3), Fr(1, 3)], [Fr(2, 3)], x, ctx) * hyp([Fr(-1, 3), Fr(2, 3)], [Fr(1, 3)], x, ctx)
    p2 = hyp([Fr(2, 3), Fr(2, 3)], [Fr(4, 3)], x, ctx) * hyp([Fr(1, 3), Fr(4, 3)], [Fr(5, 3)], x, ctx)
    return abs(p1 + x / 2 * p2 - 1)


def gauss_manin_rhs(t, pv: PeriodVector):
    """(d/dt) of (omega, eta) periods predicted by the connection matrix
    (1/(1-t^3)) [[t^2, t], [-1, -t^2]] acting on the row vector."""
    s = 1 / (1 - t ** 3)
    out = {}
    for cyc, (w, e) in {"A": (pv.A_omega, pv.A_eta), "B": (pv.B_omega, pv.B_eta)}.items():
        out[cyc] = ((t ** 2 * w - e) * s, (t * w - t ** 2 * e) * s)
    return out


def gauss_manin_defect(t, h, ctx: PrecisionContext):
    """Max deviation of central differences of the periods from the
    Gauss-Manin prediction."""
    t = ctx.convert(t)
    h = ctx.convert(h)
    plus, minus, mid = period_vector(t + h, ctx), period_vector(t - h, ctx), period_vector(t, ctx)
    rhs = gauss_manin_rhs(t, mid)
    fd = {
        "A": ((plus.A_omega - minus.A_omega) / (2 * h), (plus.A_eta - minus.A_eta) / (2 * h)),
        "B": ((plus.B_omega - minus.B_omega) / (2 * h), (plus.B_eta - minus.B_eta) / (2 * h)),
    }
    return max(abs(fd[c][k] - rhs[c][k]) for c in ("A", "B") for k in (0, 1))
