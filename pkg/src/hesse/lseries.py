"""L(E, 2) for elliptic curves over Q, with a_p from naive point counts.

The value comes from the smoothed functional-equation sum

    L(E, 2) = sum_n a_n [ Gamma(2, n c / A) / n^2 + eps E1(n / (c A)) / A^2 ],

A = sqrt(N) / (2 pi), valid for every cut c > 0.  The root number eps is the
sign for which three cuts agree.
"""

from __future__ import annotations

import math
import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .curve import weierstrass_model
from .errors import RootNumberUnresolved
from .numerics import PrecisionContext, as_fraction
from .tate import AInv, b_invariants, discriminant, minimal_model_data

CUTS = (1, Fraction(13, 10), Fraction(10, 13))
CACHE_ENV = "HESSE_CACHE_DIR"


@dataclass
class CurveLData:
    a_invariants: AInv
    conductor: int
    root_number: Optional[int] = None
    ap: Dict[int, int] = field(default_factory=dict)

    @property
    def discriminant(self) -> int:
        return discriminant(self.a_invariants)


def minimal_model(a4, a6) -> CurveLData:
    """Global minimal model and conductor of y^2 = x^3 + a4 x + a6."""
    g = minimal_model_data(a4, a6)
    return CurveLData(g.model, g.conductor)


def twist_minus3(a4, a6) -> Tuple[Fraction, Fraction]:
    """Short model of the quadratic twist by Q(sqrt(-3))."""
    return 9 * as_fraction(a4), -27 * as_fraction(a6)


# ---------------------------------------------------------------------------
# a_p


def primes_up_to(n: int) -> List[int]:
    if n < 2:
        return []
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, int(n ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = False
    return [int(p) for p in np.nonzero(sieve)[0]]


def count_points(a: Sequence[int], p: int) -> int:
    """#E(F_p) including the point at infinity (singular point counted too)."""
    a1, a2, a3, a4, a6 = (int(x) % p for x in a)
    if p == 2 or p == 3:
        n = 1
        for x in range(p):
            for y in range(p):
                if (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % p == 0:
                    n += 1
        return n
    b2, b4, b6, _ = (b % p for b in b_invariants(a))
    xs = np.arange(p, dtype=np.int64)
    f = (4 * xs + b2) % p
    f = (f * xs + 2 * b4) % p
    f = (f * xs + b6) % p
    squares = np.zeros(p, dtype=np.int64)
    squares[(xs * xs) % p] = 1
    # number of y with (2y + a1 x + a3)^2 = f(x) is 1 + chi(f(x))
    chi = np.where(f == 0, 0, 2 * squares[f] - 1)
    return int(p + 1 + chi.sum())


def ap_value(a: Sequence[int], p: int) -> int:
    """a_p = p + 1 - #E(F_p); for bad p this gives 1, -1 or 0 by reduction type."""
    return p + 1 - count_points(a, p)


def ap(data: CurveLData, p: int) -> int:
    if p not in data.ap:
        data.ap[p] = ap_value(data.a_invariants, p)
    return data.ap[p]


def fill_ap(data: CurveLData, bound: int) -> None:
    for p in primes_up_to(bound):
        if p not in data.ap:
            data.ap[p] = ap_value(data.a_invariants, p)


def an_table(data: CurveLData, n_max: int) -> List[int]:
    """a_1 .. a_{n_max} (index 0 unused)."""
    fill_ap(data, n_max)
    D = data.discriminant
    spf = list(range(n_max + 1))
    for i in range(2, int(n_max ** 0.5) + 1):
        if spf[i] == i:
            for j in range(i * i, n_max + 1, i):
                if spf[j] == j:
                    spf[j] = i
    a = [0] * (n_max + 1)
    if n_max >= 1:
        a[1] = 1
    for n in range(2, n_max + 1):
        p = spf[n]
        m, k = n, 0
        while m % p == 0:
            m //= p
            k += 1
        if m > 1:
            a[n] = a[m] * a[n // m]
            continue
        ap_ = data.ap[p]
        if k == 1:
            a[n] = ap_
        elif D % p == 0:
            a[n] = ap_ * a[n // p]
        else:
            a[n] = ap_ * a[n // p] - p * a[n // (p * p)]
    return a


# ---------------------------------------------------------------------------
# special functions for the weights


def e1(x, mp):
    """Exponential integral E1(x) for x > 0: series below 2, continued fraction above."""
    x = mp.mpf(x)
    if x <= 0:
        raise ValueError("E1 needs x > 0")
    eps = mp.eps
    if x < 2:
        s = mp.mpf(0)
        term = mp.mpf(1)
        k = 1
        while True:
            term *= -x / k
            c = term / k
            s += c
            if abs(c) < eps * abs(s) and k > 2:
                break
            k += 1
        return -mp.euler - mp.log(x) - s
    # modified Lentz on x + 1 - 1^2/(x + 3 - 2^2/(x + 5 - ...)); E1 = e^{-x} / f
    tiny = mp.mpf(10) ** (-2 * mp.dps)
    f = x + 1
    C, Dd = f, mp.mpf(0)
    k = 1
    while True:
        an, bn = -k * k, x + 2 * k + 1
        Dd = bn + an * Dd
        Dd = 1 / (Dd if Dd != 0 else tiny)
        C = bn + an / C
        if C == 0:
            C = tiny
        delta = C * Dd
        f *= delta
        if abs(delta - 1) < eps:
            break
        k += 1
    return mp.exp(-x) / f


def gamma2_upper(x, mp):
    """Gamma(2, x) = (1 + x) e^{-x}."""
    return (1 + x) * mp.exp(-x)


# ---------------------------------------------------------------------------
# L(E, 2)


def _n_max(N: int, ctx: PrecisionContext) -> int:
    A = math.sqrt(N) / (2 * math.pi)
    L = (ctx.digits + ctx.guard) * math.log(10) + 10
    cmax = max(float(c) for c in CUTS)
    return max(20, int(math.ceil(cmax * A * L)) + 1)


def _partial_sums(a: List[int], N: int, c, ctx: PrecisionContext):
    mp = ctx.mp
    A = mp.sqrt(N) / (2 * mp.pi)
    c = mp.mpf(c.numerator) / c.denominator if isinstance(c, Fraction) else mp.mpf(c)
    tol = ctx.tol * mp.mpf(10) ** -3
    S1 = mp.mpf(0)
    S2 = mp.mpf(0)
    for n in range(1, len(a)):
        if a[n] == 0:
            continue
        x1 = n * c / A
        x2 = n / (c * A)
        w1 = gamma2_upper(x1, mp) / n ** 2
        w2 = e1(x2, mp) / A ** 2
        S1 += a[n] * w1
        S2 += a[n] * w2
        if w1 < tol / n and w2 < tol / n:
            break
    return S1, S2


def _cut_values(data: CurveLData, ctx: PrecisionContext):
    a = an_table(data, _n_max(data.conductor, ctx))
    return [_partial_sums(a, data.conductor, c, ctx) for c in CUTS]


def root_number(data: CurveLData, ctx: PrecisionContext) -> int:
    """The sign making the L-value independent of the cut point."""
    sums = _cut_values(data, ctx)
    return _resolve_sign(sums, ctx)


def _resolve_sign(sums, ctx):
    mp = ctx.mp
    spreads = {}
    for eps in (1, -1):
        vals = [S1 + eps * S2 for S1, S2 in sums]
        spreads[eps] = max(vals) - min(vals)
    scale = max(1, max(abs(S1) + abs(S2) for S1, S2 in sums))
    ok = [e for e in (1, -1) if spreads[e] <= mp.mpf(10) ** 4 * ctx.tol * scale]
    if not ok:
        raise RootNumberUnresolved(
            f"cut-point spreads {mp.nstr(spreads[1], 5)} (+1), {mp.nstr(spreads[-1], 5)} (-1)")
    return min(ok, key=lambda e: spreads[e])


def cut_discrepancy(data: CurveLData, eps: int, ctx: PrecisionContext):
    """Max spread of the L-value over the cut points for a given sign."""
    vals = [S1 + eps * S2 for S1, S2 in _cut_values(data, ctx)]
    return max(vals) - min(vals)


def l_value_s2(data: CurveLData, ctx: PrecisionContext, cache_dir: Optional[str] = None):
    """L(E, 2) to ctx.tol."""
    sums = _cut_values(data, ctx)
    eps = _resolve_sign(sums, ctx)
    data.root_number = eps
    if cache_dir is not None or os.environ.get(CACHE_ENV):
        save_cache(data, cache_dir)
    S1, S2 = sums[0]
    return S1 + eps * S2


def l_value_quadratic(data: CurveLData, twist: CurveLData, ctx: PrecisionContext,
                      cache_dir: Optional[str] = None):
    """L(E/K, 2) = L(E, 2) L(E^chi, 2) for K = Q(zeta_3)."""
    return l_value_s2(data, ctx, cache_dir) * l_value_s2(twist, ctx, cache_dir)


def hesse_l_data(t, twisted: bool = False, cache_dir: Optional[str] = None) -> CurveLData:
    """L-data of the Weierstrass model of X_t (or of its -3 twist), cache-backed."""
    a4, a6 = weierstrass_model(as_fraction(t))
    if twisted:
        a4, a6 = twist_minus3(a4, a6)
    data = minimal_model(a4, a6)
    cached = load_cache(data.a_invariants, cache_dir)
    if cached is not None and cached.conductor == data.conductor:
        data.ap.update(cached.ap)
    return data


curve_l_data = hesse_l_data


def hesse_l_value_K(t, ctx: PrecisionContext, cache_dir: Optional[str] = None):
    """L(X_{t,K}, 2) through the -3 twist factorization."""
    return l_value_quadratic(hesse_l_data(t, False, cache_dir), hesse_l_data(t, True, cache_dir),
                             ctx, cache_dir)


# ---------------------------------------------------------------------------
# a_p cache files


def cache_root(cache_dir: Optional[str]) -> Optional[str]:
    return cache_dir or os.environ.get(CACHE_ENV) or None


def cache_path(a: Sequence[int], cache_dir: Optional[str]) -> Optional[str]:
    root = cache_root(cache_dir)
    if root is None:
        return None
    name = "curve_" + "_".join(str(int(x)) for x in a) + ".ap"
    return os.path.join(root, name)


def serialize_cache(data: CurveLData) -> str:
    a = " ".join(str(int(x)) for x in data.a_invariants)
    lines = [f"curve {a} conductor {data.conductor}"]
    lines += [f"{p} {data.ap[p]}" for p in sorted(data.ap)]
    return "\n".join(lines) + "\n"


def parse_cache(text: str) -> CurveLData:
    lines = text.splitlines()
    if not lines:
        raise ValueError("empty cache file")
    head = lines[0].split()
    if len(head) != 8 or head[0] != "curve" or head[6] != "conductor":
        raise ValueError(f"bad cache header: {lines[0]!r}")
    a = tuple(int(x) for x in head[1:6])
    N = int(head[7])
    ap_: Dict[int, int] = {}
    last = 0
    for line in lines[1:]:
        p, v = line.split()
        p = int(p)
        if p <= last:
            raise ValueError("cache primes must be strictly increasing")
        ap_[p] = int(v)
        last = p
    return CurveLData(a, N, None, ap_)


def load_cache(a: Sequence[int], cache_dir: Optional[str]) -> Optional[CurveLData]:
    path = cache_path(a, cache_dir)
    if path is None or not os.path.exists(path):
        return None
    with open(path, "r", encoding="ascii") as fh:
        return parse_cache(fh.read())


def save_cache(data: CurveLData, cache_dir: Optional[str]) -> Optional[str]:
    """Atomic write (temp file then rename); single writer, many readers."""
    path = cache_path(data.a_invariants, cache_dir)
    if path is None:
        return None
    os.makedirs(os.path.dirname(path), exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
    with os.fdopen(fd, "w", encoding="ascii") as fh:
        fh.write(serialize_cache(data))
    os.replace(tmp, path)
    return path
