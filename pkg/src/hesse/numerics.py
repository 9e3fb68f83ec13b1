"""Precision policy, certified series summation and special values at
rational arguments (Gamma, Beta, digamma, Bernoulli polynomial B3).

Every numeric routine takes a :class:`PrecisionContext`.  The context owns a
private mpmath context, so concurrent callers with different precisions never
touch the global ``mpmath.mp`` state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, NamedTuple, Optional

import mpmath

from .errors import NonConvergent, PoleAtNonpositiveInteger, PrecisionExhausted

DEFAULT_DIGITS = 40
GUARD_DIGITS = 10


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision and truncation policy.

    ``digits`` is the number of decimal digits the caller wants; arithmetic is
    carried out with ``guard`` extra digits.  ``tol`` is the target absolute
    error of returned values and defaults to ``10**-(digits-5)``.
    """

    digits: int = DEFAULT_DIGITS
    tol: object = None
    max_terms: int = 2_000_000
    guard: int = GUARD_DIGITS
    mp: mpmath.ctx_mp.MPContext = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if int(self.digits) != self.digits or self.digits < 15:
            raise ValueError("digits must be an integer >= 15")
        if self.max_terms < 10:
            raise ValueError("max_terms must be >= 10")
        if self.guard < 0:
            raise ValueError("guard must be >= 0")
        mp = mpmath.MPContext()
        mp.dps = self.digits + self.guard
        object.__setattr__(self, "mp", mp)
        floor = mp.mpf(10) ** (-(self.digits - 5))
        tol = floor if self.tol is None else mp.mpf(self.tol)
        if tol < floor * (1 - mp.mpf(10) ** -8):
            raise ValueError("tol must be >= 10**-(digits-5)")
        object.__setattr__(self, "tol", tol)

    def with_digits(self, digits: int) -> "PrecisionContext":
        """A context at another precision with the default tolerance."""
        return PrecisionContext(digits=digits, max_terms=self.max_terms, guard=self.guard)

    def convert(self, x):
        """Convert ints, Fractions, strings, floats and mpmath numbers."""
        mp = self.mp
        if isinstance(x, Fraction):
            return mp.mpf(x.numerator) / x.denominator
        if isinstance(x, str):
            x = x.strip()
            if "/" in x:
                return self.convert(Fraction(x))
            if "j" in x or "i" in x:
                return mp.mpc(complex(x.replace("i", "j")))
            return mp.mpf(x)
        if isinstance(x, (complex, mpmath.mpc)) or (hasattr(x, "imag") and not isinstance(x, (int, float, mpmath.mpf))):
            z = mp.mpc(x)
            return z.real if z.imag == 0 else z
        return mp.mpf(x)


def as_fraction(x) -> Fraction:
    """Exact rational from an int, Fraction or string like ``"-2/3"``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def mpf_to_fraction(x) -> Fraction:
    """The exact binary value of an mpf as a Fraction."""
    # read the raw mantissa; mpmath.mpf() would round to the global precision
    raw = x._mpf_ if hasattr(x, "_mpf_") else mpmath.mpf(x)._mpf_
    sign, man, exp, _ = raw
    man = -int(man) if sign else int(man)
    if exp >= 0:
        return Fraction(man << exp)
    return Fraction(man, 1 << (-exp))


# ---------------------------------------------------------------------------
# series


class SeriesSum(NamedTuple):
    value: object
    terms: int
    tail_bound: object


def sum_series(terms: Iterable, ctx: PrecisionContext,
               ratio_bound: Optional[Callable[[int], object]] = None,
               tail_bound: Optional[Callable[[int, object], object]] = None) -> SeriesSum:
    """Sum ``terms`` with a certified truncation.

    ``ratio_bound(n)`` must bound ``|t_{k+1}/t_k|`` for every ``k >= n``;
    ``tail_bound(n, t_n)`` may instead bound ``|sum_{k>n} t_k|`` directly
    (e.g. for alternating series).  Summation stops once three consecutive
    terms are below ``tol/10`` and one of the bounds certifies the remainder.
    A finite iterator is summed exactly.
    """
    mp = ctx.mp
    small = ctx.tol / 10
    s = mp.zero
    run = 0
    max_abs = mp.zero
    n = -1
    for n, term in enumerate(terms):
        if n >= ctx.max_terms:
            raise NonConvergent(f"no certified tail after {ctx.max_terms} terms")
        s += term
        a = abs(term)
        if a > max_abs:
            max_abs = a
        run = run + 1 if a < small else 0
        if run < 3:
            continue
        bound = None
        if ratio_bound is not None:
            r = ratio_bound(n)
            if r < 1:
                bound = a * r / (1 - r)
        if tail_bound is not None:
            b = tail_bound(n, term)
            if b is not None and (bound is None or b < bound):
                bound = b
        if bound is not None and bound <= small:
            _check_cancellation(max_abs, n + 1, ctx)
            return SeriesSum(s, n + 1, bound)
    _check_cancellation(max_abs, n + 1, ctx)
    return SeriesSum(s, n + 1, mp.zero)


def _check_cancellation(max_abs, count, ctx: PrecisionContext):
    mp = ctx.mp
    roundoff = max_abs * mp.eps * (1 + mp.sqrt(max(count, 1)))
    if roundoff > ctx.tol / 10:
        raise PrecisionExhausted(
            f"cancellation: largest term {mp.nstr(max_abs, 5)} exceeds the working precision budget")


# ---------------------------------------------------------------------------
# Gamma and friends


@lru_cache(maxsize=None)
def bernoulli_number(n: int) -> Fraction:
    """B_n with B_1 = -1/2, from sum_{k<=n} C(n+1, k) B_k = 0."""
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2:
        return Fraction(0)
    acc = Fraction(0)
    for k in range(n):
        acc += math.comb(n + 1, k) * bernoulli_number(k)
    return -acc / (n + 1)


def bernoulli3(x) -> Fraction:
    """The Bernoulli polynomial B3(x) = x^3 - 3x^2/2 + x/2, exactly."""
    x = as_fraction(x)
    return x ** 3 - Fraction(3, 2) * x ** 2 + x / 2


def _log_gamma_large(x, mp):
    """Stirling series for log Gamma(x), x real and large.

    The truncation error of the Stirling series for real x > 0 is bounded by
    the first omitted term; we stop only once that term is below eps.
    """
    eps = mp.eps * mp.mpf(2) ** -8
    s = (x - mp.mpf(0.5)) * mp.log(x) - x + mp.log(2 * mp.pi) / 2
    inv = 1 / x
    inv2 = inv * inv
    p = inv
    prev = None
    k = 1
    while True:
        term = mp.mpf(bernoulli_number(2 * k).numerator) / bernoulli_number(2 * k).denominator
        term = term / (2 * k * (2 * k - 1)) * p
        if abs(term) < eps:
            return s
        if prev is not None and abs(term) > abs(prev):
            raise PrecisionExhausted("Stirling series diverged before reaching the target error")
        s += term
        prev = term
        p *= inv2
        k += 1


def _gamma_real(x, mp):
    """Gamma(x) for real x by upward shift plus Stirling."""
    threshold = mp.mpf(int(0.5 * mp.dps) + 10)
    k = 0
    if x < threshold:
        k = int(mp.ceil(threshold - x))
    prod = mp.one
    for j in range(k):
        prod *= x + j
    return mp.exp(_log_gamma_large(x + k, mp)) / prod


def gamma_rational(q, ctx: PrecisionContext):
    """Gamma(q) for a rational q that is not a nonpositive integer."""
    q = as_fraction(q)
    if q.denominator == 1 and q <= 0:
        raise PoleAtNonpositiveInteger(f"Gamma has a pole at {q}")
    return ctx.mp.mpf(_gamma_at_prec(q, ctx.mp.prec))


@lru_cache(maxsize=4096)
def _gamma_at_prec(q: Fraction, prec: int):
    mp = mpmath.MPContext()
    mp.prec = prec
    return _gamma_real(mp.mpf(q.numerator) / q.denominator, mp)


def beta(s, t, ctx: PrecisionContext):
    """Euler Beta B(s, t) = Gamma(s)Gamma(t)/Gamma(s+t) at rational s, t."""
    s, t = as_fraction(s), as_fraction(t)
    return gamma_rational(s, ctx) * gamma_rational(t, ctx) / gamma_rational(s + t, ctx)


def beta_sym(s, ctx: PrecisionContext):
    """B_s = B(s, s)."""
    return beta(s, s, ctx)


def digamma_rational(q, ctx: PrecisionContext):
    """psi(q) via Gauss's digamma theorem on (0, 1] plus the recurrence."""
    q = as_fraction(q)
    if q.denominator == 1 and q <= 0:
        raise PoleAtNonpositiveInteger(f"digamma has a pole at {q}")
    mp = ctx.mp
    shift = math.ceil(q) - 1          # q = r + shift with 0 < r <= 1
    r = q - shift
    val = _digamma_unit(r, mp)
    if shift > 0:
        for j in range(shift):
            val += 1 / (mp.mpf(r.numerator) / r.denominator + j)
    else:
        for j in range(1, -shift + 1):
            val -= 1 / (mp.mpf(r.numerator) / r.denominator - j)
    return val


def _digamma_unit(r: Fraction, mp):
    if r == 1:
        return -mp.euler
    p, q = r.numerator, r.denominator
    val = -mp.euler - mp.log(2 * q) - mp.pi / 2 * mp.cot(mp.pi * p / q)
    for n in range(1, (q + 1) // 2):
        val += 2 * mp.cos(2 * mp.pi * n * p / q) * mp.log(mp.sin(mp.pi * n / q))
    return val


def pochhammer_exact(alpha, n: int) -> Fraction:
    """(alpha)_n in exact rational arithmetic."""
    alpha = as_fraction(alpha)
    out = Fraction(1)
    for j in range(n):
        out *= alpha + j
    return out


# ---------------------------------------------------------------------------
# rational reconstruction


def rational_reconstruct(x, max_den: int, tol=None) -> Optional[Fraction]:
    """Recognise ``x`` as a rational with denominator at most ``max_den``.

    Returns p/q when ``|x - p/q| < 1/(2*max_den*q)``; such a p/q is unique and
    equals the continued-fraction best approximation.  When ``tol`` (the
    accuracy of x) is given the fit must additionally satisfy
    ``|x - p/q| <= 10*tol*q``.  Returns None when nothing qualifies.
    """
    if max_den < 1:
        raise ValueError("max_den must be >= 1")
    if isinstance(x, Fraction):
        exact = x
    elif isinstance(x, (int, float)):
        exact = Fraction(x)
    else:
        exact = mpf_to_fraction(x)
    cand = exact.limit_denominator(max_den)
    err = abs(exact - cand)
    if err >= Fraction(1, 2 * max_den * cand.denominator):
        return None
    if tol is not None and err > 10 * mpf_to_fraction(tol) * cand.denominator:
        return None
    return cand
