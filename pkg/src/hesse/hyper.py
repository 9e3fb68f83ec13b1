"""Generalized hypergeometric pFq and the Kampe de Feriet double series
F^{1;2;1}_{1;1;0}.

Both are evaluated from their defining series only.  Inside the unit disc the
truncation is certified by a geometric tail bound.  On the unit circle (pFq
with p = q + 1 and positive parameter excess) the tail sum_{n>=N} t_n is
obtained from its asymptotic expansion in 1/N, whose error is estimated by the
first omitted term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (DivergentArgument, NonConvergent, NonConvergentBoundary,
                     PoleAtNonpositiveInteger, PrecisionExhausted)
from .numerics import PrecisionContext, as_fraction, sum_series


def _params(values) -> tuple:
    return tuple(as_fraction(v) for v in values)


def _is_nonpositive_int(q: Fraction) -> bool:
    return q.denominator == 1 and q <= 0


@dataclass(frozen=True)
class PfqSpec:
    upper: tuple
    lower: tuple
    x: object

    def __post_init__(self):
        object.__setattr__(self, "upper", _params(self.upper))
        object.__setattr__(self, "lower", _params(self.lower))
        for b in self.lower:
            if _is_nonpositive_int(b):
                raise PoleAtNonpositiveInteger(f"lower parameter {b} is a nonpositive integer")

    @property
    def pq(self):
        return len(self.upper), len(self.lower)

    @property
    def excess(self) -> Fraction:
        return sum(self.lower, Fraction(0)) - sum(self.upper, Fraction(0))


@dataclass(frozen=True)
class KdfSpec:
    """Parameters of sum (a)_{m+n} (b1)_m (b2)_m (bp)_n / ((c)_{m+n} (d)_m m! n!) x^m y^n."""

    a: Fraction
    c: Fraction
    b1: Fraction
    b2: Fraction
    d: Fraction
    bp: Fraction
    x: object
    y: object

    def __post_init__(self):
        for name in ("a", "c", "b1", "b2", "d", "bp"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        for name in ("c", "d"):
            if _is_nonpositive_int(getattr(self, name)):
                raise PoleAtNonpositiveInteger(f"{name} is a nonpositive integer")


# ---------------------------------------------------------------------------
# pFq


class _RatioFactory:
    """Exact term ratios t_{n+1}/(x t_n) as integer fractions."""

    def __init__(self, upper: Sequence[Fraction], lower: Sequence[Fraction]):
        den = 1
        for v in list(upper) + list(lower):
            den = den * v.denominator // math.gcd(den, v.denominator)
        self.D = den
        self.up = [int(v * den) for v in upper]
        self.lo = [int(v * den) for v in lower]
        # (a+n)/(b+n) = (A + nD)/(B + nD); leftover powers of D
        self.extra = len(self.lo) - len(self.up)

    def __call__(self, n: int):
        D = self.D
        num = 1
        for A in self.up:
            num *= A + n * D
        den = n + 1
        for B in self.lo:
            den *= B + n * D
        if self.extra > 0:
            num *= D ** self.extra
        elif self.extra < 0:
            den *= D ** (-self.extra)
        return num, den


def _ratio_bound(upper, lower, xabs, mp):
    """Return N -> rigorous bound on |t_{n+1}/t_n| for all n >= N."""
    lower_ext = list(lower) + [Fraction(1)]
    pairs = list(zip(upper, lower_ext))
    rest_lower = lower_ext[len(upper):]
    if len(upper) > len(lower_ext):
        return None
    shift = max([-v for v in list(upper) + lower_ext] + [0])

    def bound(N: int):
        if N <= shift:
            return mp.inf
        r = Fraction(1)
        for a, b in pairs:
            f = (a + N) / (b + N)
            if f > 1:
                r *= f
        for b in rest_lower:
            r /= (b + N)
        return xabs * (mp.mpf(r.numerator) / r.denominator)

    return bound


def _terms(upper, lower, x, mp, limit=None):
    ratio = _RatioFactory(upper, lower)
    term = mp.one
    n = 0
    while limit is None or n < limit:
        yield term
        num, den = ratio(n)
        if num == 0:
            return
        term = term * x * num / den
        n += 1


def _is_unit_modulus(x, mp) -> bool:
    return abs(abs(x) - 1) <= 64 * mp.eps


def pfq(spec: PfqSpec, ctx: PrecisionContext):
    """Value of pFq(upper; lower; x) from its series, to ctx.tol."""
    mp = ctx.mp
    upper, lower = spec.upper, spec.lower
    p, q = spec.pq
    x = ctx.convert(spec.x)
    if x == 0:
        return mp.one
    terminating = any(_is_nonpositive_int(a) for a in upper)
    if terminating:
        return sum_series(_terms(upper, lower, x, mp), ctx).value
    xabs = abs(x)
    if p <= q:
        return sum_series(_terms(upper, lower, x, mp), ctx,
                          ratio_bound=_ratio_bound(upper, lower, xabs, mp)).value
    if p > q + 1:
        raise DivergentArgument(f"{p}F{q} has zero radius of convergence")
    if _is_unit_modulus(x, mp):
        if spec.excess <= 0:
            raise NonConvergentBoundary(
                f"parameter excess {spec.excess} <= 0 on |x| = 1")
        return _pfq_boundary(upper, lower, x, ctx)
    if xabs > 1:
        raise DivergentArgument(f"|x| = {mp.nstr(xabs, 8)} > 1 for {p}F{q}")
    return sum_series(_terms(upper, lower, x, mp), ctx,
                      ratio_bound=_ratio_bound(upper, lower, xabs, mp)).value


def hyp(upper, lower, x, ctx: PrecisionContext):
    """Shorthand for ``pfq(PfqSpec(upper, lower, x), ctx)``."""
    return pfq(PfqSpec(tuple(upper), tuple(lower), x), ctx)


def _series_mul(u, v, K):
    out = [0] * (K + 1)
    for i, ui in enumerate(u[:K + 1]):
        if ui == 0:
            continue
        for j, vj in enumerate(v[:K + 1 - i]):
            out[i + j] += ui * vj
    return out


def _ratio_series(upper, lower, K, mp):
    """Coefficients of prod(1 + a h) / (prod(1 + b h) (1 + h)) up to h^K."""
    s = [mp.one] + [mp.zero] * K
    for a in upper:
        s = _series_mul(s, [mp.one, mp.mpf(a.numerator) / a.denominator], K)
    for b in list(lower) + [Fraction(1)]:
        bb = mp.mpf(b.numerator) / b.denominator
        inv = [(-bb) ** j for j in range(K + 1)]
        s = _series_mul(s, inv, K)
    return s


def _div_one_plus_h(s):
    out = []
    prev = 0
    for c in s:
        prev = c - prev
        out.append(prev)
    return out


def _mul_one_plus_h(s):
    return [s[0]] + [s[j] + s[j - 1] for j in range(1, len(s))]


def _tail_expansion(upper, lower, x, N, K, mp, at_one: bool):
    """Asymptotic value of G(N) = T_N / t_N with an error estimate.

    For x != 1 we use G = sum g_k N^-k, for x = 1 G = sum g_k N^(1-k).
    Returns (G, estimate of the first omitted term).
    """
    h = mp.one / N
    R = _ratio_series(upper, lower, K, mp)
    g = []
    total = mp.zero
    best = None
    if not at_one:
        Q = [R]
        for _ in range(K):
            Q.append(_div_one_plus_h(Q[-1]))
        one_minus_x = 1 - x
        for m in range(K + 1):
            acc = mp.one if m == 0 else mp.zero
            for k in range(m):
                acc += x * g[k] * Q[k][m - k]
            g.append(acc / one_minus_x)
            term = g[m] * h ** m
            size = abs(term)
            if best is not None and size > best:
                return total, best
            total += term
            best = size
            if size < mp.eps * abs(total):
                return total, size
        return total, best
    e = sum(lower, Fraction(0)) - sum(upper, Fraction(0))
    e = mp.mpf(e.numerator) / e.denominator
    # S[k] = R (1+h)^(1-k)
    S = [_mul_one_plus_h(R)]
    for _ in range(K + 1):
        S.append(_div_one_plus_h(S[-1]))
    for m in range(1, K + 2):
        acc = mp.one if m == 1 else mp.zero
        for k in range(m - 1):
            acc += g[k] * S[k][m - k]
        g.append(-acc / (1 - e - m))
        k = m - 1
        term = g[k] * h ** (k - 1)
        size = abs(term)
        if best is not None and size > best:
            return total, best
        total += term
        best = size
        if size < mp.eps * abs(total):
            return total, size
    return total, best


def _pfq_boundary(upper, lower, x, ctx: PrecisionContext):
    mp = ctx.mp
    at_one = abs(x - 1) <= 64 * mp.eps
    if not at_one and abs(1 - x) < mp.mpf("1e-3"):
        raise PrecisionExhausted("argument too close to 1 on the unit circle")
    scale = max([abs(v) for v in list(upper) + list(lower)] + [1])
    N = int(3 * mp.dps + 20 * scale)
    if not at_one:
        N = max(N, int(60 / float(abs(1 - x))))
    target = ctx.tol / 10
    while N <= ctx.max_terms:
        K = min(N, 4 * mp.dps + 40)
        s = mp.zero
        term = mp.one
        ratio = _RatioFactory(upper, lower)
        for n in range(N):
            s += term
            num, den = ratio(n)
            term = term * x * num / den
        G, err = _tail_expansion(upper, lower, x, N, K, mp, at_one)
        tail_err = abs(term) * err
        if tail_err <= target:
            return s + term * G
        N *= 2
    raise NonConvergent("boundary tail expansion did not reach the tolerance")


# ---------------------------------------------------------------------------
# Kampe de Feriet


def kdf_excesses(spec: KdfSpec):
    e1 = spec.c + spec.d - spec.a - spec.b1 - spec.b2
    e2 = spec.c - spec.a - spec.bp
    e3 = spec.c + spec.d - spec.a - spec.b1 - spec.b2 - spec.bp
    return e1, e2, e3


def kdf_converges(spec: KdfSpec) -> bool:
    """Absolute convergence on the closed bidisc |x|, |y| <= 1."""
    return all(e > 0 for e in kdf_excesses(spec))


def _mpq(q: Fraction, mp):
    return mp.mpf(q.numerator) / q.denominator


def _sup_factor(alpha: Fraction, beta: Fraction, K: int) -> Fraction:
    """sup_{k>=K} (alpha+k)/(beta+k) for K past both poles/zeros."""
    f = (alpha + K) / (beta + K)
    return max(f, Fraction(1))


def kdf(spec: KdfSpec, ctx: PrecisionContext):
    """Double series summed along anti-diagonals m + n = k."""
    mp = ctx.mp
    x = ctx.convert(spec.x)
    y = ctx.convert(spec.y)
    ax, ay = abs(x), abs(y)
    on_boundary = _is_unit_modulus(x, mp) or _is_unit_modulus(y, mp)
    if (ax > 1 and not _is_unit_modulus(x, mp)) or (ay > 1 and not _is_unit_modulus(y, mp)):
        raise DivergentArgument("Kampe de Feriet series needs |x|, |y| <= 1")
    if on_boundary:
        if not kdf_converges(spec):
            raise NonConvergentBoundary("convergence conditions fail on the boundary")
        raise NonConvergentBoundary(
            "boundary evaluation of the double series has no certified tail; "
            "use an interior argument")
    return _kdf_interior(spec, x, y, ctx)


def _row_sums(coef, z, M: int, sup_ratio, mp):
    """(sum_{j<M} |c_j z^j|, bound on sum_{j>=M} |c_j z^j|) or None without a certificate.

    ``coef(j)`` gives c_{j+1}/c_j and ``sup_ratio`` bounds |c_{j+1}/c_j| for j >= M.
    """
    az = abs(z)
    r = az * sup_ratio
    if r >= 1:
        return None
    term, head = mp.one, mp.zero
    for j in range(M):
        head += term
        term *= abs(coef(j)) * az
    return head, term / (1 - r)


def _product_tail(spec: KdfSpec, x, y, K: int, a_next, mp):
    """Bound on sum_{m+n>K} |term| from |(a)_j/(c)_j| <= |a_next| for j > K (needs a <= c).

    Pairs with m + n > K have m > K/2 or n > K/2, so the tail is at most
    a_next (Tail_B S_P + S_B Tail_P) with one-variable sums S and tails.
    """
    a, c, b1, b2, d, bp = (spec.a, spec.c, spec.b1, spec.b2, spec.d, spec.bp)
    M = K // 2 + 1
    if a > c or min(a + K, c + K) <= 0 or min(b1 + M, b2 + M, d + M, bp + M) <= 0:
        return None
    B1, B2, Dd, BP = (_mpq(v, mp) for v in (b1, b2, d, bp))
    rb = _mpq(_sup_factor(b1, d, M) * _sup_factor(b2, Fraction(1), M), mp)
    rp = _mpq(_sup_factor(bp, Fraction(1), M), mp)
    sb = _row_sums(lambda m: (B1 + m) * (B2 + m) / ((Dd + m) * (m + 1)), x, M, rb, mp)
    sp = _row_sums(lambda n: (BP + n) / (n + 1), y, M, rp, mp)
    if sb is None or sp is None:
        return None
    return abs(a_next) * (sb[1] * (sp[0] + sp[1]) + (sb[0] + sb[1]) * sp[1])


def _kdf_interior(spec: KdfSpec, x, y, ctx: PrecisionContext):
    mp = ctx.mp
    a, c, b1, b2, d, bp = (spec.a, spec.c, spec.b1, spec.b2, spec.d, spec.bp)
    A, C, B1, B2, Dd, BP = (_mpq(v, mp) for v in (a, c, b1, b2, d, bp))
    small = ctx.tol / 10
    ax, ay = abs(x), abs(y)
    shift = int(max([-v for v in (a, c, b1, b2, d, bp)] + [0])) + 1
    bp_sup = max(Fraction(1), abs(bp))

    diag = [mp.one]
    total = mp.one
    run = 0
    max_abs = mp.one
    w = [None]  # w[n] = (bp + n - 1)/n
    k = 0
    count = 1
    a_ratio = mp.one  # (a)_k / (c)_k
    while True:
        # next diagonal k + 1 from diagonal k
        fk = (A + k) / (C + k)
        a_ratio *= fk
        head = diag[0] * fk * (B1 + k) * (B2 + k) / ((Dd + k) * (k + 1)) * x
        fy = fk * y
        w.append((BP + k) / (k + 1))
        new = [head]
        for n in range(1, k + 2):
            new.append(diag[n - 1] * w[n] * fy)
        diag = new
        k += 1
        count += len(diag)
        if count > ctx.max_terms:
            raise NonConvergent("Kampe de Feriet summation exceeded max_terms")
        dsum = mp.zero
        dabs = mp.zero
        for v in diag:
            dsum += v
            dabs += abs(v)
        total += dsum
        if dabs > max_abs:
            max_abs = dabs
        run = run + 1 if dabs < small else 0
        if run >= 3 and k > shift:
            alpha = _sup_factor(a, c, k)
            ry = ay * _mpq(alpha * bp_sup, mp)
            rx = ax * _mpq(alpha * _sup_factor(b1, d, k) * _sup_factor(b2, Fraction(1), k), mp)
            tail = None
            if rx < 1 and ry < 1:
                tail = (ry * dabs + rx * abs(diag[0]) / (1 - rx)) / (1 - ry)
            if tail is None or tail > small:
                alt = _product_tail(spec, x, y, k, a_ratio * (A + k) / (C + k), mp)
                if alt is not None and (tail is None or alt < tail):
                    tail = alt
            if tail is not None:
                if tail <= small:
                    if max_abs * mp.eps * k > ctx.tol / 10:
                        raise PrecisionExhausted("cancellation in Kampe de Feriet sum")
                    return total


def olsson_fp(a, b, x, ctx: PrecisionContext):
    """Olsson's F_P(a, b; x) as the Kampe de Feriet value at (x, x)."""
    a, b = as_fraction(a), as_fraction(b)
    return kdf(KdfSpec(a, a + 1, a, a, b, Fraction(1), x, x), ctx)
