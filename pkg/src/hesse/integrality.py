"""Boundary maps of the Hesse symbols at primes of K = Q(zeta_3).

For 3t = n/m in lowest terms, X_{t,K} has split multiplicative reduction at v
(v not over 3) in two cases:

* case i:  v does not divide 3m and v | n - 3m zeta^k, N = ord_v(n^3 - 27 m^3);
* case ii: v | m, N = ord_v(m).

The special fibre of the regular model is a Neron 3N-gon whose components
C_0, C_N, C_2N are the strict transforms of the three lines of the reduced
cubic.  Every symbol used here has divisors supported on the nine flexes, and
each flex reduces to a smooth point of exactly one of those lines, so the
component degrees d(nu) are read off from the exact flex divisors.  The
boundary coefficient is then the Schappacher-Scholl sum

    c_v = (1 / 3G) sum_j w_j sum_{mu, nu mod G} d_j(mu) d'_j(mu + nu) B3(<nu / G>),

with G = 3N, up to a global sign that we fix to +.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from sympy import factorint

from .curve import (LABELS, MotivicSymbol, _charts, make_symbol, ratio_divisor,
                    torsion_point)
from .errors import NotMultiplicative
from .field import QZeta
from .numerics import as_fraction, bernoulli3


# ---------------------------------------------------------------------------
# Eisenstein integers


class EisensteinInt:
    """a + b zeta with a, b integers, zeta^2 = -1 - zeta."""

    __slots__ = ("a", "b")

    def __init__(self, a: int = 0, b: int = 0):
        self.a = int(a)
        self.b = int(b)

    @classmethod
    def coerce(cls, x) -> "EisensteinInt":
        if isinstance(x, EisensteinInt):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        if isinstance(x, QZeta):
            if x.a.denominator != 1 or x.b.denominator != 1:
                raise ValueError(f"{x} is not an Eisenstein integer")
            return cls(x.a.numerator, x.b.numerator)
        raise TypeError(f"cannot coerce {x!r}")

    def __add__(self, o):
        o = EisensteinInt.coerce(o)
        return EisensteinInt(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return EisensteinInt(-self.a, -self.b)

    def __sub__(self, o):
        o = EisensteinInt.coerce(o)
        return EisensteinInt(self.a - o.a, self.b - o.b)

    def __rsub__(self, o):
        return EisensteinInt.coerce(o) - self

    def __mul__(self, o):
        o = EisensteinInt.coerce(o)
        bd = self.b * o.b
        return EisensteinInt(self.a * o.a - bd, self.a * o.b + self.b * o.a - bd)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = EisensteinInt(1)
        for _ in range(n):
            out = out * self
        return out

    def conj(self) -> "EisensteinInt":
        return EisensteinInt(self.a - self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def divides(self, x) -> bool:
        return exact_quotient(x, self) is not None

    def __eq__(self, o):
        try:
            o = EisensteinInt.coerce(o)
        except TypeError:
            return False
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash(("EisensteinInt", self.a, self.b))

    def __repr__(self):
        return f"EisensteinInt({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*zeta"
        return f"{self.a}{'+' if self.b > 0 else '-'}{abs(self.b)}*zeta"


ZETA = EisensteinInt(0, 1)
UNITS = [EisensteinInt(1), EisensteinInt(-1), ZETA, -ZETA, ZETA * ZETA, -(ZETA * ZETA)]


def exact_quotient(x, d) -> Optional[EisensteinInt]:
    """x / d if it lies in Z[zeta], else None."""
    x, d = EisensteinInt.coerce(x), EisensteinInt.coerce(d)
    n = d.norm()
    if n == 0:
        raise ZeroDivisionError("division by zero")
    q = x * d.conj()
    if q.a % n or q.b % n:
        return None
    return EisensteinInt(q.a // n, q.b // n)


def ord_v(x, pi) -> int:
    """Valuation of x at the prime generated by pi."""
    x = EisensteinInt.coerce(x)
    if x.is_zero():
        raise ValueError("ord of zero")
    k = 0
    while True:
        q = exact_quotient(x, pi)
        if q is None:
            return k
        x, k = q, k + 1


def split_prime(p: int) -> EisensteinInt:
    """pi with N(pi) = p for a rational prime p = 1 mod 3 (or p = 3)."""
    if p == 3:
        return EisensteinInt(1, -1)
    if p % 3 != 1:
        raise ValueError(f"{p} does not split in Z[zeta]")
    a = 1
    while a * a <= 4 * p:
        # a^2 - ab + b^2 = p  <=>  (2b - a)^2 = 4p - 3a^2
        disc = 4 * p - 3 * a * a
        if disc >= 0:
            r = int(round(disc ** 0.5))
            for rr in (r - 1, r, r + 1):
                if rr >= 0 and rr * rr == disc and (a + rr) % 2 == 0:
                    return EisensteinInt(a, (a + rr) // 2)
        a += 1
    raise ValueError(f"no element of norm {p}")


def primes_above(p: int) -> List[EisensteinInt]:
    if p == 3:
        return [EisensteinInt(1, -1)]
    if p % 3 == 2:
        return [EisensteinInt(p)]
    pi = split_prime(p)
    return [pi, pi.conj()]


def eisenstein_factor(x) -> List[Tuple[EisensteinInt, int]]:
    """Prime factorization of x up to units."""
    x = EisensteinInt.coerce(x)
    if x.is_zero():
        raise ValueError("cannot factor zero")
    out = []
    for p in sorted(factorint(x.norm())):
        for pi in primes_above(p):
            e = ord_v(x, pi)
            if e:
                out.append((pi, e))
    return out


def same_prime(u, v) -> bool:
    u, v = EisensteinInt.coerce(u), EisensteinInt.coerce(v)
    return u.norm() == v.norm() and exact_quotient(u, v) is not None


# ---------------------------------------------------------------------------
# reduction types


@dataclass(frozen=True)
class ReductionReport:
    v: EisensteinInt
    type: str  # good, additive, split_mult_case_i, split_mult_case_ii
    N: int = 0
    k: Optional[int] = None  # case i: v | n - 3m zeta^k


def _nm(t) -> Tuple[int, int]:
    q = 3 * as_fraction(t)
    return q.numerator, q.denominator


def reduction_type(t, v) -> ReductionReport:
    t = as_fraction(t)
    v = EisensteinInt.coerce(v)
    n, m = _nm(t)
    # v | m comes first: for 3 | m the fibre at 1 - zeta is still the triangle xyz = 0
    if v.divides(m):
        return ReductionReport(v, "split_mult_case_ii", ord_v(m, v))
    if v.divides(3):
        return ReductionReport(v, "additive")
    for k in range(3):
        if v.divides(EisensteinInt(n) - EisensteinInt(3 * m) * ZETA ** k):
            return ReductionReport(v, "split_mult_case_i", ord_v(n ** 3 - 27 * m ** 3, v), k)
    return ReductionReport(v, "good")


def multiplicative_primes(t) -> List[ReductionReport]:
    """Every prime of K at which X_{t,K} has split multiplicative reduction."""
    n, m = _nm(t)
    cands: List[EisensteinInt] = []
    for x in (m, n ** 3 - 27 * m ** 3):
        if x == 0:
            continue
        for pi, _ in eisenstein_factor(x):
            if not any(same_prime(pi, c) for c in cands):
                cands.append(pi)
    reports = [reduction_type(t, v) for v in cands]
    return [r for r in reports if r.type.startswith("split_mult")]


# ---------------------------------------------------------------------------
# component degrees


def flex_component(label, report: ReductionReport) -> int:
    """Index j in {0, 1, 2} of the component C_{jN} containing the flex."""
    P = torsion_point(label, QZeta(0))
    x, y, z = P.coords()
    if report.type == "split_mult_case_ii":
        # C_0, C_N, C_2N lie over z0 = 0, x0 = 0, y0 = 0
        hits = [j for j, c in ((0, z), (1, x), (2, y)) if c.is_zero()]
    elif report.type == "split_mult_case_i":
        zeta = QZeta.zeta()
        # lines x + zeta^j y + zeta^(2j + k) z of the reduced cubic
        hits = [j for j in range(3)
                if (x + zeta ** j * y + zeta ** ((2 * j + report.k) % 3) * z).is_zero()]
    else:
        raise NotMultiplicative(f"{report.type} reduction at {report.v}")
    if len(hits) != 1:
        raise AssertionError(f"flex {label} meets {len(hits)} components")
    return hits[0]


def component_degrees(divisor: Dict, report: ReductionReport) -> Dict[int, int]:
    """nu -> deg(D . C_nu) on the 3N-gon."""
    out: Dict[int, int] = {}
    for lab, mult in divisor.items():
        nu = flex_component(lab, report) * report.N
        out[nu] = out.get(nu, 0) + mult
    return {k: v for k, v in out.items() if v}


def degree_tables(sym: MotivicSymbol, report: ReductionReport):
    """[(weight, d, d')] for each term of the symbol."""
    charts = _charts(sym.t)
    return [(term.coef,
             component_degrees(ratio_divisor(term.f, sym.t, charts), report),
             component_degrees(ratio_divisor(term.g, sym.t, charts), report))
            for term in sym.terms]


def schappacher_scholl(tables, gon: int) -> Fraction:
    total = Fraction(0)
    for w, d, dp in tables:
        s = Fraction(0)
        for mu, a in d.items():
            for nu_p, b in dp.items():
                nu = (nu_p - mu) % gon
                s += a * b * bernoulli3(Fraction(nu, gon))
        total += w * s
    return total / (3 * gon)


# ---------------------------------------------------------------------------
# boundary and verdicts

ELEMENTS = ("xi_hesse", "xi_prime_half", "xi_zeta")


def _symbol(t, element: str) -> MotivicSymbol:
    if element not in ELEMENTS:
        raise ValueError(f"element must be one of {ELEMENTS}")
    return make_symbol(element, as_fraction(t))


def boundary(t, element: str, v) -> Fraction:
    """Coefficient of Phi^1_1 in the boundary of the element at v."""
    report = reduction_type(t, v)
    if not report.type.startswith("split_mult"):
        raise NotMultiplicative(f"{report.type} reduction at {report.v}")
    sym = _symbol(t, element)
    return schappacher_scholl(degree_tables(sym, report), 3 * report.N)


@dataclass(frozen=True)
class BoundaryVerdict:
    element: str
    t: Fraction
    coefficients: Tuple[Tuple[ReductionReport, Fraction], ...]
    integral: bool
    reason: str = ""


def _cm_parameter(t3: Fraction) -> bool:
    return t3 in (0, -8)


def _rational_cube_root(c: Fraction) -> Optional[Fraction]:
    def iroot(n):
        s = -1 if n < 0 else 1
        r = round(abs(n) ** (1 / 3))
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand ** 3 == abs(n):
                return s * cand
        return None

    a, b = iroot(c.numerator), iroot(c.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def is_integral(t, element: str) -> BoundaryVerdict:
    """Integrality verdict from the boundary at every multiplicative prime.

    For xi_zeta, t may be r zeta^j with r rational; X_{t,K} is then isomorphic
    to X_{r,K} and the verdict is computed at r.  The CM parameters t^3 = 0, -8
    are integral without any boundary computation.
    """
    if element == "xi_zeta" and isinstance(t, QZeta):
        c = t ** 3
        if not c.is_rational():
            raise ValueError("xi_zeta verdicts need t^3 rational")
        r = _rational_cube_root(c.a)
        if r is None:
            raise ValueError("t^3 is not a rational cube")
        t = r
    t = as_fraction(t)
    if element == "xi_prime_half" and t != Fraction(-1, 2):
        raise ValueError("xi_prime_half is defined at t = -1/2 only")
    if element == "xi_zeta" and _cm_parameter(t ** 3):
        return BoundaryVerdict(element, t, (), True, "CM: potentially good reduction everywhere")
    coeffs = []
    for rep in multiplicative_primes(t):
        sym = _symbol(t, element)
        coeffs.append((rep, schappacher_scholl(degree_tables(sym, rep), 3 * rep.N)))
    integral = all(c == 0 for _, c in coeffs)
    return BoundaryVerdict(element, t, tuple(coeffs), integral)
