"""Minimal Weierstrass models and conductors over Q by Tate's algorithm.

Curves are given by integer a-invariants [a1, a2, a3, a4, a6].  Coordinate
changes x = u^2 x' + r, y = u^3 y' + s u^2 x' + t always use integers r, s, t,
so a model made minimal at one prime stays integral at every other prime.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import factorint

from .errors import SingularCurve
from .numerics import as_fraction

AInv = Tuple[int, int, int, int, int]


def b_invariants(a: Sequence[int]):
    a1, a2, a3, a4, a6 = a
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return b2, b4, b6, b8


def c_invariants(a: Sequence[int]):
    b2, b4, b6, b8 = b_invariants(a)
    c4 = b2 * b2 - 24 * b4
    c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
    return c4, c6


def discriminant(a: Sequence[int]):
    b2, b4, b6, b8 = b_invariants(a)
    return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def transform(a: Sequence, r=0, s=0, t=0, u=1):
    """a-invariants after x = u^2 x' + r, y = u^3 y' + s u^2 x' + t."""
    a1, a2, a3, a4, a6 = a
    n1 = a1 + 2 * s
    n2 = a2 - s * a1 + 3 * r - s * s
    n3 = a3 + r * a1 + 2 * t
    n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t
    n6 = a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1
    if u == 1:
        return (n1, n2, n3, n4, n6)
    out = []
    for coef, i in zip((n1, n2, n3, n4, n6), (1, 2, 3, 4, 6)):
        q, rem = divmod(coef, u ** i)
        if rem:
            raise ValueError("scaling does not give an integral model")
        out.append(q)
    return tuple(out)


def val(n: int, p: int) -> int:
    if n == 0:
        return 10 ** 9
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _roots_mod_p(coeffs: List[int], p: int) -> Dict[int, int]:
    """Roots in F_p with multiplicity of a monic polynomial (coefficients high to low)."""
    out: Dict[int, int] = {}
    poly = [c % p for c in coeffs]
    for x in range(p):
        m = 0
        cur = poly
        while len(cur) > 1:
            # synthetic division by (T - x)
            q = [cur[0]]
            for c in cur[1:]:
                q.append((q[-1] * x + c) % p)
            if q[-1] != 0:
                break
            m += 1
            cur = q[:-1]
        if m:
            out[x] = m
    return out


def _quadratic_double_root(a: int, b: int, c: int, p: int) -> Optional[int]:
    """Double root of a X^2 + b X + c mod p (a a unit), or None if the roots are distinct."""
    a, b, c = a % p, b % p, c % p
    if p == 2:
        if b != 0:
            return None
        return c * a % 2
    if (b * b - 4 * a * c) % p != 0:
        return None
    return (-b * pow(2 * a, -1, p)) % p


def _singular_point(a: Sequence[int], p: int) -> Tuple[int, int]:
    a1, a2, a3, a4, a6 = a
    if p > 3:
        b2, b4, b6, _ = b_invariants(a)
        c4, c6 = c_invariants(a)
        if c4 % p == 0:
            x0 = -b2 * pow(12, -1, p) % p
        else:
            x0 = -(c6 + b2 * c4) * pow(12 * c4, -1, p) % p
        g = lambda x: (4 * x ** 3 + b2 * x * x + 2 * b4 * x + b6) % p
        dg = lambda x: (12 * x * x + 2 * b2 * x + 2 * b4) % p
        if g(x0) or dg(x0):
            x0 = next(x for x in range(p) if g(x) == 0 and dg(x) == 0)
        y0 = -(a1 * x0 + a3) * pow(2, -1, p) % p
        return x0, y0
    for x in range(p):
        for y in range(p):
            F = y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6
            Fx = a1 * y - 3 * x * x - 2 * a2 * x - a4
            Fy = 2 * y + a1 * x + a3
            if F % p == 0 and Fx % p == 0 and Fy % p == 0:
                return x, y
    raise SingularCurve(f"no singular point found mod {p}")


@dataclass(frozen=True)
class LocalData:
    p: int
    kodaira: str
    f: int
    model: AInv  # minimal at p


def tate_local(a: Sequence[int], p: int) -> LocalData:
    """Kodaira symbol, conductor exponent and a p-minimal model."""
    a = tuple(int(x) for x in a)
    while True:
        D = discriminant(a)
        if D == 0:
            raise SingularCurve("zero discriminant")
        vD = val(D, p)
        if vD == 0:
            return LocalData(p, "I0", 0, a)
        x0, y0 = _singular_point(a, p)
        a = transform(a, r=x0, t=y0)
        a1, a2, a3, a4, a6 = a
        assert a3 % p == 0 and a4 % p == 0 and a6 % p == 0
        b2, b4, b6, b8 = b_invariants(a)
        if b2 % p:
            return LocalData(p, f"I{vD}", 1, a)
        if a6 % (p * p):
            return LocalData(p, "II", vD, a)
        if b8 % p ** 3:
            return LocalData(p, "III", vD - 1, a)
        if b6 % p ** 3:
            return LocalData(p, "IV", vD - 2, a)
        # move to p | a1, a2; p^2 | a3, a4; p^3 | a6
        if p == 2:
            s = a2 % 2
            t = next(tt for tt in range(8)
                     if transform(a, s=s, t=tt)[2] % 4 == 0 and transform(a, s=s, t=tt)[4] % 8 == 0)
        else:
            s = -a1 * pow(2, -1, p) % p
            t = -a3 * pow(2, -1, p * p) % (p * p)
        a = transform(a, s=s, t=t)
        a1, a2, a3, a4, a6 = a
        assert a1 % p == 0 and a2 % p == 0 and a3 % p ** 2 == 0 and a4 % p ** 2 == 0 and a6 % p ** 3 == 0
        roots = _roots_mod_p([1, a2 // p, a4 // p ** 2, a6 // p ** 3], p)
        mult = max(roots.values(), default=0)
        if mult <= 1:
            return LocalData(p, "I0*", vD - 4, a)
        if mult == 2:
            alpha = next(x for x, m in roots.items() if m == 2)
            a = transform(a, r=alpha * p)
            n = 1
            while True:
                a1, a2, a3, a4, a6 = a
                if n % 2:
                    k = (n + 3) // 2
                    beta = _quadratic_double_root(1, a3 // p ** k, -(a6 // p ** (2 * k)), p)
                    if beta is None:
                        return LocalData(p, f"I{n}*", vD - 4 - n, a)
                    a = transform(a, t=beta * p ** k)
                else:
                    k = (n + 2) // 2
                    alpha = _quadratic_double_root(a2 // p, a4 // p ** (k + 1), a6 // p ** (2 * k + 1), p)
                    if alpha is None:
                        return LocalData(p, f"I{n}*", vD - 4 - n, a)
                    a = transform(a, r=alpha * p ** k)
                n += 1
        alpha = next(iter(roots))
        a = transform(a, r=alpha * p)
        a1, a2, a3, a4, a6 = a
        assert a2 % p ** 2 == 0 and a4 % p ** 3 == 0 and a6 % p ** 4 == 0
        beta = _quadratic_double_root(1, a3 // p ** 2, -(a6 // p ** 4), p)
        if beta is None:
            return LocalData(p, "IV*", vD - 6, a)
        a = transform(a, t=beta * p ** 2)
        a1, a2, a3, a4, a6 = a
        assert a3 % p ** 3 == 0 and a6 % p ** 5 == 0
        if a4 % p ** 4:
            return LocalData(p, "III*", vD - 7, a)
        if a6 % p ** 6:
            return LocalData(p, "II*", vD - 8, a)
        a = transform(a, u=p)


def reduced_model(a: Sequence[int]) -> AInv:
    """The model with a1, a3 in {0, 1} and a2 in {-1, 0, 1} and the same c4, c6."""
    c4, c6 = c_invariants(a)
    b2 = (-c6) % 12
    if b2 > 6:
        b2 -= 12
    b4 = (b2 * b2 - c4) // 24
    b6 = (-b2 ** 3 + 36 * b2 * b4 - c6) // 216
    a1 = b2 % 2
    a3 = b6 % 2
    a2 = (b2 - a1) // 4
    a4 = (b4 - a1 * a3) // 2
    a6 = (b6 - a3) // 4
    out = (a1, a2, a3, a4, a6)
    if c_invariants(out) != (c4, c6):
        raise ValueError("reduction changed the invariants")
    return out


def integral_short_model(a4, a6) -> AInv:
    """Smallest scaling of y^2 = x^3 + a4 x + a6 with integer coefficients."""
    a4, a6 = as_fraction(a4), as_fraction(a6)
    u = 1
    for p in set(factorint(a4.denominator)) | set(factorint(a6.denominator)):
        e = max(-(-val(a4.denominator, p) // 4), -(-val(a6.denominator, p) // 6))
        u *= p ** e
    A4, A6 = a4 * u ** 4, a6 * u ** 6
    assert A4.denominator == 1 and A6.denominator == 1
    return (0, 0, 0, int(A4), int(A6))


@dataclass(frozen=True)
class GlobalData:
    model: AInv
    conductor: int
    local: Tuple[LocalData, ...]

    @property
    def discriminant(self) -> int:
        return discriminant(self.model)


def minimal_model_data(a4, a6) -> GlobalData:
    """Global minimal reduced model and conductor of y^2 = x^3 + a4 x + a6."""
    a = integral_short_model(a4, a6)
    D = discriminant(a)
    if D == 0:
        raise SingularCurve("zero discriminant")
    local = []
    for p in sorted(factorint(abs(D))):
        ld = tate_local(a, p)
        a = ld.model
        local.append(ld)
    a = reduced_model(a)
    N = 1
    for ld in local:
        N *= ld.p ** ld.f
    # the reduced model is only a u = 1 change, so local data stays valid
    return GlobalData(a, N, tuple(LocalData(ld.p, ld.kodaira, ld.f, a) for ld in local if ld.kodaira != "I0"))
