"""Exact fields used by the curve code: Q(zeta_3) and prime fields F_p.

Elements of both types support +, -, *, /, ** (integer exponent), equality and
hashing, and can be combined with Python ints and Fractions.  ``zeta_of(e)``
returns a primitive cube root of unity in the field of ``e``.
"""

from __future__ import annotations

from fractions import Fraction

from .numerics import as_fraction


class QZeta:
    """a + b*zeta with zeta^2 = -1 - zeta, a and b rational."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = a if isinstance(a, Fraction) else as_fraction(a)
        self.b = b if isinstance(b, Fraction) else as_fraction(b)

    @staticmethod
    def zeta() -> "QZeta":
        return QZeta(0, 1)

    def _coerce(self, other):
        if isinstance(other, QZeta):
            return other
        if isinstance(other, (int, Fraction)):
            return QZeta(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QZeta(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QZeta(-self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QZeta(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        # (a + b z)(c + d z) = ac + (ad + bc) z + bd z^2,  z^2 = -1 - z
        a, b, c, d = self.a, self.b, o.a, o.b
        bd = b * d
        return QZeta(a * c - bd, a * d + b * c - bd)

    __rmul__ = __mul__

    def conj(self) -> "QZeta":
        # zeta -> zeta^2 = -1 - zeta
        return QZeta(self.a - self.b, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def inverse(self) -> "QZeta":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        c = self.conj()
        return QZeta(c.a / n, c.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = QZeta(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash(("QZeta", self.a, self.b))

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def to_complex(self, mp):
        z = mp.mpc(-0.5, mp.sqrt(3) / 2)
        return (mp.mpf(self.a.numerator) / self.a.denominator
                + (mp.mpf(self.b.numerator) / self.b.denominator) * z)

    def __repr__(self):
        if self.b == 0:
            return f"QZeta({self.a})"
        return f"QZeta({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*z"
        return f"{self.a}+{self.b}*z" if self.b > 0 else f"{self.a}{self.b}*z"


class Fp:
    """Element of the prime field F_p."""

    __slots__ = ("v", "p")

    def __init__(self, v, p: int):
        if isinstance(v, Fraction):
            v = v.numerator * pow(v.denominator, -1, p)
        self.v = int(v) % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError("mixing different prime fields")
            return other
        if isinstance(other, (int, Fraction)):
            return Fp(other, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v + o.v, self.p)

    __radd__ = __add__

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v - o.v, self.p)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v * o.v, self.p)

    __rmul__ = __mul__

    def inverse(self) -> "Fp":
        if self.v == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return Fp(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return Fp(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fp(other, self.p)
        return isinstance(other, Fp) and other.p == self.p and other.v == self.v

    def __hash__(self):
        return hash(("Fp", self.v, self.p))

    def is_zero(self) -> bool:
        return self.v == 0

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"


def cube_root_of_unity_mod(p: int) -> int:
    """A primitive cube root of unity modulo p (requires p = 1 mod 3)."""
    if p % 3 != 1:
        raise ValueError(f"F_{p} has no primitive cube root of unity")
    for g in range(2, p):
        z = pow(g, (p - 1) // 3, p)
        if z != 1:
            return z
    raise ValueError("no cube root of unity found")


def zeta_of(element):
    """Primitive cube root of unity in the field containing ``element``."""
    if isinstance(element, Fp):
        return Fp(cube_root_of_unity_mod(element.p), element.p)
    return QZeta.zeta()


def lift(value, like):
    """Coerce an int/Fraction/QZeta into the field of ``like``."""
    if isinstance(like, Fp):
        if isinstance(value, QZeta):
            z = zeta_of(like)
            return Fp(value.a, like.p) + Fp(value.b, like.p) * z
        return Fp(value, like.p)
    if isinstance(value, QZeta):
        return value
    return QZeta(value)
