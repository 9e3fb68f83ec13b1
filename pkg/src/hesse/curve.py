"""Exact arithmetic on the Hesse cubic x0^3 + y0^3 + z0^3 = 3t x0 y0 z0.

Points are projective triples over Q(zeta_3) (:class:`~hesse.field.QZeta`) or a
prime field (:class:`~hesse.field.Fp`).  The origin is O = [-1 : 1 : 0].  The
automorphisms used throughout are

* rho: [a : b : c] -> [b : c : a]   (so rho(O) = [1 : 0 : -1]),
* zeta: [x : y : z] -> [zeta x : zeta^2 y : z],

and the nine flexes rho^i zeta^j (O) form the 3-torsion subgroup.

Symbols {f, g} are stored as pairs of ratios of linear forms; divisors and
tame symbols are computed exactly from local power-series expansions of the
curve at each flex.
"""

from __future__ import annotations

import functools

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DegenerateFormula, SingularParameter, SupportComputationFailed
from .field import Fp, QZeta, lift, zeta_of
from .numerics import as_fraction

Label = Tuple[int, int]
LABELS: List[Label] = [(i, j) for i in range(3) for j in range(3)]


def field_param(t):
    """Normalise a curve parameter: ints/Fractions/strings become QZeta."""
    if isinstance(t, (QZeta, Fp)):
        return t
    return QZeta(as_fraction(t))


def check_smooth(t):
    t = field_param(t)
    if (t ** 3 - 1).is_zero():
        raise SingularParameter(f"X_t is singular for t = {t} (t^3 = 1)")
    return t


@dataclass(frozen=True)
class HessePoint:
    x: object
    y: object
    z: object

    def coords(self):
        return (self.x, self.y, self.z)

    def normalized(self) -> "HessePoint":
        """Scale so that the last nonzero coordinate is 1."""
        c = self.coords()
        for k in (2, 1, 0):
            if not c[k].is_zero():
                inv = c[k].inverse()
                return HessePoint(*(v * inv for v in c))
        raise ValueError("[0:0:0] is not a projective point")

    def __eq__(self, other):
        if not isinstance(other, HessePoint):
            return NotImplemented
        a, b = self.coords(), other.coords()
        return all((a[i] * b[j] - a[j] * b[i]).is_zero() for i in range(3) for j in range(i + 1, 3))

    def __hash__(self):
        return hash(self.normalized().coords())

    def on_curve(self, t) -> bool:
        x, y, z = self.coords()
        t = lift(t, x) if not isinstance(t, type(x)) else t
        return (x ** 3 + y ** 3 + z ** 3 - 3 * t * x * y * z).is_zero()

    def __repr__(self):
        n = self.normalized()
        return f"[{n.x} : {n.y} : {n.z}]"


def origin(like=None) -> HessePoint:
    like = QZeta(0) if like is None else like
    return HessePoint(lift(-1, like), lift(1, like), lift(0, like))


def _kaneko_candidates(P: HessePoint, Q: HessePoint):
    x, y, z = P.coords()
    u, v, w = Q.coords()
    yield (y * z * w * w - x * x * u * v, x * y * v * v - z * z * u * w, x * z * u * u - y * y * v * w)
    yield (x * y * u * u - z * z * v * w, x * z * w * w - y * y * u * v, y * z * v * v - x * x * u * w)
    yield (x * z * v * v - y * y * u * w, y * z * u * u - x * x * v * w, x * y * w * w - z * z * u * v)


def hesse_add(P: HessePoint, Q: HessePoint, t=None) -> HessePoint:
    """P + Q by the first of the three addition formulas that does not vanish.

    The formulas do not involve t; the argument is accepted for symmetry with
    the other curve operations.  The first expression degenerates exactly when
    one of the points is a multiple of the other in a way that makes all three
    coordinates cancel (for instance P = Q); the later ones cover those cases.
    """
    out = _add_direct(P, Q)
    if out is not None:
        return out
    # on a smooth curve the three formulas cover every pair
    raise DegenerateFormula(f"all addition formulas vanish for {P} + {Q} (singular point?)")


def _add_direct(P: HessePoint, Q: HessePoint) -> Optional[HessePoint]:
    for cand in _kaneko_candidates(P, Q):
        if not all(c.is_zero() for c in cand):
            return HessePoint(*cand)
    return None


def _param_from_point(P: HessePoint):
    x, y, z = P.coords()
    xyz = x * y * z
    if xyz.is_zero():
        raise DegenerateFormula("t cannot be recovered from a point with a zero coordinate")
    return (x ** 3 + y ** 3 + z ** 3) / (3 * xyz)


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def add_chord(P: HessePoint, Q: HessePoint, t=None) -> HessePoint:
    """P + Q = -R with R the third point of the chord (tangent if P = Q).

    O is a flex, so three collinear points sum to zero.  Independent of the
    addition formulas and used to check them.
    """
    like = P.x
    t = _param_from_point(P) if t is None else lift(t, like) if not isinstance(t, type(like)) else t
    three = lift(3, like)

    def grad(X):
        x, y, z = X
        return (three * (x * x - t * y * z), three * (y * y - t * x * z), three * (z * z - t * x * y))

    def F(X):
        x, y, z = X
        return x ** 3 + y ** 3 + z ** 3 - three * t * x * y * z

    p, q = P.coords(), Q.coords()
    if P != Q:
        a, b = _dot(grad(p), q), _dot(grad(q), p)
        R = tuple(b * pi - a * qi for pi, qi in zip(p, q))
    else:
        g = grad(p)
        zero, one = lift(0, like), lift(1, like)
        D = None
        for e in ((one, zero, zero), (zero, one, zero), (zero, zero, one)):
            c = (g[1] * e[2] - g[2] * e[1], g[2] * e[0] - g[0] * e[2], g[0] * e[1] - g[1] * e[0])
            if not all(v.is_zero() for v in c) and HessePoint(*c) != P:
                D = c
                break
        x, y, z = p
        H = ((6 * x, -three * t * z, -three * t * y),
             (-three * t * z, 6 * y, -three * t * x),
             (-three * t * y, -three * t * x, 6 * z))
        quad = _dot(D, tuple(_dot(row, D) for row in H)) / 2
        cub = F(D)
        if quad.is_zero():
            R = p  # inflectional tangent
        else:
            R = tuple(cub * pi - quad * di for pi, di in zip(p, D))
    if all(v.is_zero() for v in R):
        raise DegenerateFormula(f"chord construction failed for {P} + {Q}")
    return hesse_neg(HessePoint(*R))


def hesse_neg(P: HessePoint) -> HessePoint:
    return HessePoint(P.y, P.x, P.z)


def hesse_sub(P: HessePoint, Q: HessePoint, t=None) -> HessePoint:
    return hesse_add(P, hesse_neg(Q), t)


def hesse_mul(n: int, P: HessePoint, t=None) -> HessePoint:
    """n * P by double-and-add."""
    if n < 0:
        return hesse_mul(-n, hesse_neg(P), t)
    result = origin(P.x)
    base = P
    while n:
        if n & 1:
            result = hesse_add(result, base, t)
        base = hesse_add(base, base, t)
        n >>= 1
    return result


def rho(P: HessePoint) -> HessePoint:
    return HessePoint(P.y, P.z, P.x)


def zeta_act(P: HessePoint, zeta=None) -> HessePoint:
    zeta = zeta_of(P.x) if zeta is None else zeta
    return HessePoint(zeta * P.x, zeta * zeta * P.y, P.z)


def torsion_point(label: Label, like=None) -> HessePoint:
    """rho^i zeta^j (O) for label (i, j)."""
    i, j = label
    P = origin(like)
    for _ in range(j % 3):
        P = zeta_act(P)
    for _ in range(i % 3):
        P = rho(P)
    return P


def three_torsion(t) -> Dict[Label, HessePoint]:
    """The nine flexes labelled by (i, j) -> rho^i zeta^j (O)."""
    t = check_smooth(t)
    return {lab: torsion_point(lab, t) for lab in LABELS}


def label_of(P: HessePoint, like=None) -> Label:
    for lab in LABELS:
        if torsion_point(lab, P.x if like is None else like) == P:
            return lab
    raise SupportComputationFailed(f"{P} is not a 3-torsion point")


def label_name(label: Label) -> str:
    i, j = label
    parts = []
    if i:
        parts.append("rho" if i == 1 else "rho^2")
    if j:
        parts.append("zeta" if j == 1 else "zeta^2")
    return ("".join(parts) or "id") + "(O)"


# ---------------------------------------------------------------------------
# Weierstrass model


def weierstrass_model(t) -> Tuple[Fraction, Fraction]:
    """(a4, a6) of y^2 = x^3 + a4 x + a6 birational to X_t."""
    t = as_fraction(t)
    if t ** 3 == 1:
        raise SingularParameter("t^3 = 1")
    a4 = -27 * t * (t ** 3 + 8)
    a6 = 54 * (t ** 6 - 20 * t ** 3 - 8)
    return a4, a6


def short_discriminant(a4, a6) -> Fraction:
    return 16 * (-4 * as_fraction(a4) ** 3 - 27 * as_fraction(a6) ** 2)


# ---------------------------------------------------------------------------
# point counting over F_p (used as an independent check of a_p)


def hesse_point_count(t, p: int) -> int:
    """#X_t(F_p) by enumerating projective points (small p only)."""
    import numpy as np

    tt = Fraction(as_fraction(t))
    if tt.denominator % p == 0:
        raise ValueError("t is not p-integral")
    tv = tt.numerator * pow(tt.denominator, -1, p) % p
    ys = np.arange(p, dtype=np.int64)
    y3 = ys * ys % p * ys % p
    count = 0
    for x in range(p):
        # affine chart z = 1
        val = (x * x * x + 1 + y3 - 3 * tv * x % p * ys) % p
        count += int(np.count_nonzero(val == 0))
    # z = 0: x^3 + y^3 = 0 with y = 1 (y = 0 forces x = 0)
    count += sum(1 for x in range(p) if (x * x * x + 1) % p == 0)
    return count


# ---------------------------------------------------------------------------
# symbols


Linear = Tuple[object, object, object]


@dataclass(frozen=True)
class LinearRatio:
    """scalar * (c . [x0, y0, z0]) / (d . [x0, y0, z0])."""

    scalar: object
    num: Linear
    den: Linear


@dataclass(frozen=True)
class SymbolTerm:
    coef: Fraction
    f: LinearRatio
    g: LinearRatio


@dataclass(frozen=True)
class MotivicSymbol:
    name: str
    t: object
    terms: Tuple[SymbolTerm, ...]


SYMBOL_NAMES = ("xi_zeta", "xi_rho", "xi_hesse", "xi_prime_half", "xy_symbol")


def _xi_zeta_term(t, coef=Fraction(1)) -> SymbolTerm:
    z = zeta_of(t)
    one, zero = lift(1, t), lift(0, t)
    f = LinearRatio(-one, (one, one, t), (one, z * z, z * t))
    g = LinearRatio(-one, (one, z, z * z * t), (one, one, t))
    return SymbolTerm(coef, f, g)


def _xi_rho_term(t, k: int, coef=Fraction(1)) -> SymbolTerm:
    zeta = zeta_of(t)
    zc = zeta ** (k % 3)
    one = lift(1, t)
    f = LinearRatio(-one, (one, one, t), (one, zc * zc * t, zc))
    g = LinearRatio(-one, (t, zc, zc * zc), (one, one, t))
    return SymbolTerm(coef, f, g)


def make_symbol(name: str, t, k: int = 0) -> MotivicSymbol:
    """Build one of the named symbols on X_t.

    ``xi_rho`` uses z = zeta^k.  ``xi_hesse`` is (1/3) sum_z xi(rho z) and
    ``xi_prime_half`` is 2 xi(rho) - xi(rho zeta) - xi(rho zeta^2).
    """
    t = check_smooth(t)
    if name == "xi_zeta":
        terms = (_xi_zeta_term(t),)
    elif name == "xi_rho":
        terms = (_xi_rho_term(t, k),)
    elif name == "xi_hesse":
        terms = tuple(_xi_rho_term(t, j, Fraction(1, 3)) for j in range(3))
    elif name == "xi_prime_half":
        terms = (_xi_rho_term(t, 0, Fraction(2)), _xi_rho_term(t, 1, Fraction(-1)),
                 _xi_rho_term(t, 2, Fraction(-1)))
    elif name == "xy_symbol":
        one, zero = lift(1, t), lift(0, t)
        fx = LinearRatio(one, (one, zero, zero), (zero, zero, one))
        fy = LinearRatio(one, (zero, one, zero), (zero, zero, one))
        terms = (SymbolTerm(Fraction(1), fx, fy),)
    else:
        raise ValueError(f"unknown symbol {name!r}; expected one of {SYMBOL_NAMES}")
    if name == "xi_rho":
        name = f"xi_rho[{k % 3}]"
    return MotivicSymbol(name, t, terms)


# local expansions -----------------------------------------------------------

_ORDER = 8


def _smul(a, b, zero):
    out = [zero] * _ORDER
    for i, ai in enumerate(a):
        if ai.is_zero():
            continue
        for j in range(_ORDER - i):
            out[i + j] = out[i + j] + ai * b[j]
    return out


def _sadd(a, b):
    return [u + v for u, v in zip(a, b)]


def _sscale(c, a):
    return [c * u for u in a]


class _LocalChart:
    """A uniformiser T at a smooth point P of X_t and the coordinates as series."""

    def __init__(self, P: HessePoint, t):
        self.t = t
        coords = list(P.normalized().coords())
        zero, one = lift(0, t), lift(1, t)
        self.zero, self.one = zero, one
        j = next(k for k in (2, 1, 0) if not coords[k].is_zero())
        inv = coords[j].inverse()
        coords = [c * inv for c in coords]
        others = [k for k in range(3) if k != j]
        grad = self._grad(coords)
        # parametrise by the coordinate whose partner has nonzero partial derivative
        if not grad[others[1]].is_zero():
            par, dep = others
        elif not grad[others[0]].is_zero():
            dep, par = others
        else:
            raise SupportComputationFailed(f"point {P} is singular on X_t")
        series = [None, None, None]
        series[j] = [one] + [zero] * (_ORDER - 1)
        series[par] = [coords[par], one] + [zero] * (_ORDER - 2)
        series[dep] = [coords[dep]] + [zero] * (_ORDER - 1)
        dinv = grad[dep].inverse()
        for _ in range(_ORDER + 1):
            F = self._F(series)
            series[dep] = _sadd(series[dep], _sscale(-dinv, F))
        if any(not c.is_zero() for c in self._F(series)):
            raise SupportComputationFailed("local expansion did not converge")
        self.series = series

    def _F(self, s):
        zero = self.zero
        X, Y, Z = s
        cube = lambda a: _smul(_smul(a, a, zero), a, zero)
        xyz = _smul(_smul(X, Y, zero), Z, zero)
        out = _sadd(_sadd(cube(X), cube(Y)), cube(Z))
        return _sadd(out, _sscale(-3 * self.t, xyz))

    def _grad(self, c):
        x, y, z = c
        t = self.t
        return [3 * x * x - 3 * t * y * z, 3 * y * y - 3 * t * x * z, 3 * z * z - 3 * t * x * y]

    def linear(self, coeffs: Linear):
        """(order, leading coefficient) of the linear form along the chart."""
        s = [self.zero] * _ORDER
        for c, ser in zip(coeffs, self.series):
            s = _sadd(s, _sscale(c, ser))
        for k, v in enumerate(s):
            if not v.is_zero():
                return k, v
        raise SupportComputationFailed("linear form vanishes identically on X_t")


@functools.lru_cache(maxsize=64)
def _charts(t) -> Dict[Label, _LocalChart]:
    # charts are read-only once built
    return {lab: _LocalChart(P, t) for lab, P in three_torsion(t).items()}


def linear_divisor(coeffs: Linear, t, charts=None) -> Dict[Label, int]:
    """Divisor of zeros of a linear form, which must be supported on E[3]."""
    charts = _charts(t) if charts is None else charts
    div = {}
    for lab, ch in charts.items():
        k, _ = ch.linear(coeffs)
        if k:
            div[lab] = k
    if sum(div.values()) != 3:
        raise SupportComputationFailed(
            f"line {coeffs} meets X_t outside the 3-torsion (degree {sum(div.values())} on flexes)")
    return div


def ratio_divisor(r: LinearRatio, t, charts=None) -> Dict[Label, int]:
    charts = _charts(t) if charts is None else charts
    out: Dict[Label, int] = {}
    for lab, m in linear_divisor(r.num, t, charts).items():
        out[lab] = out.get(lab, 0) + m
    for lab, m in linear_divisor(r.den, t, charts).items():
        out[lab] = out.get(lab, 0) - m
    return {k: v for k, v in out.items() if v}


def _ratio_local(r: LinearRatio, chart: _LocalChart):
    k1, c1 = chart.linear(r.num)
    k2, c2 = chart.linear(r.den)
    return k1 - k2, r.scalar * c1 / c2


def tame_symbol_values(sym: MotivicSymbol) -> Dict[Label, Tuple[object, int]]:
    """Per flex: (prod_i T_P({f_i, g_i})^(D c_i), D) with D the lcm of the
    coefficient denominators, so the weighted symbol is trivial at P iff the
    value is a root of unity."""
    t = sym.t
    charts = _charts(t)
    for term in sym.terms:  # validates supports
        ratio_divisor(term.f, t, charts)
        ratio_divisor(term.g, t, charts)
    D = 1
    for term in sym.terms:
        D = D * term.coef.denominator // _gcd(D, term.coef.denominator)
    out = {}
    for lab, ch in charts.items():
        value = lift(1, t)
        for term in sym.terms:
            a, fa = _ratio_local(term.f, ch)
            b, gb = _ratio_local(term.g, ch)
            local = fa ** b / gb ** a
            if (a * b) % 2:
                local = -local
            value = value * local ** int(term.coef * D)
        out[lab] = (value, D)
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def tame_symbol_check(sym: MotivicSymbol) -> bool:
    """True iff every tame symbol of ``sym`` is torsion (trivial after tensoring with Q)."""
    for value, _ in tame_symbol_values(sym).values():
        if not (value ** 6 - 1).is_zero():
            return False
    return True


# Bloch map ------------------------------------------------------------------


@dataclass
class TorsionDivisor:
    coefficients: Dict[Label, Fraction] = field(default_factory=dict)

    def add(self, label: Label, c):
        v = self.coefficients.get(label, Fraction(0)) + c
        if v:
            self.coefficients[label] = v
        else:
            self.coefficients.pop(label, None)

    def scaled(self, c) -> "TorsionDivisor":
        return TorsionDivisor({k: v * c for k, v in self.coefficients.items() if v * c})

    def __add__(self, other: "TorsionDivisor") -> "TorsionDivisor":
        out = TorsionDivisor(dict(self.coefficients))
        for k, v in other.coefficients.items():
            out.add(k, v)
        return out

    def reduced(self) -> "TorsionDivisor":
        """Image modulo (P) + (-P) after tensoring with Q.

        For the identity, (O) + (O) = 0 forces (O) = 0.  Other pairs are folded
        onto the lexicographically smaller label of {P, -P}.
        """
        out = TorsionDivisor()
        for lab, c in self.coefficients.items():
            if lab == (0, 0):
                continue
            neg = neg_label(lab)
            if lab <= neg:
                out.add(lab, c)
            else:
                out.add(neg, -c)
        return out

    def __eq__(self, other):
        return isinstance(other, TorsionDivisor) and self.coefficients == other.coefficients

    def __repr__(self):
        parts = [f"{v}*{label_name(k)}" for k, v in sorted(self.coefficients.items())]
        return "TorsionDivisor(" + " + ".join(parts) + ")"


def neg_label(label: Label) -> Label:
    return label_of(hesse_neg(torsion_point(label)))


def sub_label(a: Label, b: Label) -> Label:
    return label_of(hesse_sub(torsion_point(a), torsion_point(b)))


def bloch_beta(sym: MotivicSymbol, reduce: bool = True) -> TorsionDivisor:
    """sum c * m_i n_j (P_i - Q_j); reduced modulo (P) + (-P) unless reduce=False."""
    t = sym.t
    charts = _charts(t)
    out = TorsionDivisor()
    for term in sym.terms:
        df = ratio_divisor(term.f, t, charts)
        dg = ratio_divisor(term.g, t, charts)
        for P, m in df.items():
            for Q, n in dg.items():
                out.add(sub_label(P, Q), term.coef * m * n)
    return out.reduced() if reduce else out
