"""Mahler measure of x^3 + y^3 + 1 - 3t xy and the curved triangle K.

By Jensen's formula in y (the polynomial is monic in y),

    m(t) = int_0^1 sum_{|y_i(x)| > 1} log |y_i(x)| d theta,   x = e^{2 pi i theta},

where y_i(x) are the roots of y^3 - 3t x y + (x^3 + 1).  Replacing x by
zeta x multiplies the roots by zeta^2, and for real t conjugating x
conjugates the roots, so for real t the integral over [0, 1] is six times the
integral over [0, 1/6].
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .errors import Inconclusive, OnBoundary, RootTrackingFailed
from .numerics import PrecisionContext, as_fraction

BOUNDARY_POINTS = (Fraction(-1, 3), Fraction(1))


# ---------------------------------------------------------------------------
# cubic roots


def cubic_roots(p, q, mp) -> List:
    """Roots of y^3 + p y + q by Cardano, each polished by Newton steps."""
    if p == 0 and q == 0:
        return [mp.mpc(0)] * 3
    disc = mp.sqrt(q * q / 4 + p ** 3 / 27)
    w = -q / 2 + disc
    w2 = -q / 2 - disc
    if abs(w2) > abs(w):
        w = w2
    if w == 0:
        u = mp.mpc(0)
    else:
        u = mp.exp(mp.log(w) / 3)
    omega = mp.mpc(-0.5, mp.sqrt(3) / 2)
    roots = []
    for k in range(3):
        uk = u * omega ** k
        y = uk - p / (3 * uk) if uk != 0 else mp.mpc(0)
        for _ in range(4):
            f = (y * y + p) * y + q
            df = 3 * y * y + p
            if df == 0:
                break
            step = f / df
            y -= step
            if abs(step) <= mp.eps * max(1, abs(y)):
                break
        roots.append(y)
    scale = max(1, abs(p), abs(q))
    for y in roots:
        if abs((y * y + p) * y + q) > mp.mpf(10) ** (-mp.dps // 2) * scale * max(1, abs(y)) ** 3:
            raise RootTrackingFailed(f"cubic root residual too large for p={p}, q={q}")
    return roots


def fibre_roots(t, theta, mp):
    x = mp.expjpi(2 * theta)
    return cubic_roots(-3 * t * x, x ** 3 + 1, mp)


def jensen_integrand(t, theta, mp):
    return sum(mp.log(abs(y)) for y in fibre_roots(t, theta, mp) if abs(y) > 1)


# ---------------------------------------------------------------------------
# Gauss-Legendre quadrature


@functools.lru_cache(maxsize=32)
def _gl_nodes(n: int, prec: int):
    import mpmath

    mp = mpmath.MPContext()
    mp.prec = prec
    nodes = []
    for i in range(1, n + 1):
        x = mp.cos(mp.pi * (i - mp.mpf(1) / 4) / (n + mp.mpf(1) / 2))
        for _ in range(100):
            p0, p1 = mp.mpf(1), x
            for k in range(2, n + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = n * (x * p1 - p0) / (x * x - 1)
            dx = p1 / dp
            x -= dx
            if abs(dx) < mp.eps * 4:
                break
        p0, p1 = mp.mpf(1), x
        for k in range(2, n + 1):
            p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
        dp = n * (x * p1 - p0) / (x * x - 1)
        nodes.append((x, 2 / ((1 - x * x) * dp * dp)))
    return tuple(nodes)


def gauss_legendre(f, a, b, mp, n: int = 20):
    nodes = _gl_nodes(n, mp.prec)
    half = (b - a) / 2
    mid = (a + b) / 2
    return half * mp.fsum(w * f(mid + half * x) for x, w in nodes)


def adaptive_gl(f, a, b, mp, tol, n: int = 20, max_depth: int = 30) -> Tuple[object, object]:
    """(integral, error estimate) by bisection until panel and halves agree."""
    total = mp.mpf(0)
    err = mp.mpf(0)
    stack = [(mp.mpf(a), mp.mpf(b), gauss_legendre(f, a, b, mp, n), 0)]
    width = mp.mpf(b) - mp.mpf(a)
    while stack:
        lo, hi, whole, depth = stack.pop()
        mid = (lo + hi) / 2
        left = gauss_legendre(f, lo, mid, mp, n)
        right = gauss_legendre(f, mid, hi, mp, n)
        diff = abs(left + right - whole)
        if diff <= tol * (hi - lo) / width or depth >= max_depth:
            total += left + right
            err += diff
        else:
            stack.append((mid, hi, right, depth + 1))
            stack.append((lo, mid, left, depth + 1))
    return total, err


# ---------------------------------------------------------------------------
# public API


@dataclass(frozen=True)
class MahlerResult:
    t: object
    value: object
    quadrature_error: object
    boundary: bool = False


def _real_t(t, ctx):
    mp = ctx.mp
    tv = ctx.convert(t)
    if mp.im(tv) != 0:
        raise ValueError("mahler_measure needs real t")
    return mp.re(tv)


def mahler_measure(t, ctx: PrecisionContext, tol=None, allow_boundary: bool = False,
                   panels: int = 1) -> MahlerResult:
    """m(t) for real t outside the open segment (-1/3, 1)."""
    mp = ctx.mp
    tv = _real_t(t, ctx)
    on_boundary = any(tv == ctx.convert(b) for b in BOUNDARY_POINTS)
    if on_boundary and not allow_boundary:
        raise OnBoundary(f"t = {t} lies on the boundary of K; pass allow_boundary for the limit")
    if -mp.mpf(1) / 3 < tv < 1:
        raise ValueError("t lies inside the curved triangle; the Jensen sum is not the regulator there")
    tol = mp.mpf(10) ** -14 if tol is None else mp.mpf(tol)
    f = lambda th: jensen_integrand(tv, th, mp)
    total = mp.mpf(0)
    err = mp.mpf(0)
    edges = [mp.mpf(k) / (6 * panels) for k in range(panels + 1)]
    for a, b in zip(edges[:-1], edges[1:]):
        v, e = adaptive_gl(f, a, b, mp, tol / panels)
        total += v
        err += e
    return MahlerResult(t, 6 * total, 6 * err, on_boundary)


def root_counts(t, ctx: PrecisionContext, samples: int = 360) -> List[int]:
    """Number of roots with |y| > 1 at equally spaced theta in [0, 1)."""
    mp = ctx.mp
    tv = ctx.convert(t)
    out = []
    for k in range(samples):
        th = mp.mpf(k) / samples
        out.append(sum(1 for y in fibre_roots(tv, th, mp) if abs(y) > 1))
    return out


def in_curved_triangle(t, ctx: PrecisionContext = None, samples: int = 2000) -> bool:
    """Membership in the image of (x^3 + y^3 + 1)/(3xy) on the torus.

    Real t use the exact rule t in [-1/3, 1].  Other t are decided by sampling:
    t lies in K iff some fibre over the circle has a root on the circle.
    """
    ctx = ctx or PrecisionContext(20)
    mp = ctx.mp
    tv = ctx.convert(t)
    if mp.im(tv) == 0:
        r = mp.re(tv)
        return -mp.mpf(1) / 3 <= r <= 1
    counts = set()
    closest = mp.inf
    for k in range(samples):
        th = mp.mpf(k) / samples
        roots = fibre_roots(tv, th, mp)
        counts.add(sum(1 for y in roots if abs(y) > 1))
        closest = min(closest, min(abs(abs(y) - 1) for y in roots))
    if len(counts) > 1:
        return True
    if closest < mp.mpf(10) ** -6:
        raise Inconclusive(f"t = {t} is within 1e-6 of the sampled boundary")
    # a constant count of 2 roots outside is the unbounded component
    if counts == {2}:
        return False
    raise Inconclusive(f"t = {t}: constant root count {counts} is not decisive")


def mahler_vs_regulator_defect(t, ctx: PrecisionContext, allow_boundary: bool = False):
    """|m(t) + reg_hesse(t)|."""
    from .regulator import reg_hesse

    m = mahler_measure(t, ctx, allow_boundary=allow_boundary).value
    return abs(m + reg_hesse(as_fraction(t), ctx))
