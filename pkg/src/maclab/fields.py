"""Exact scalar fields: the rationals and Q(zeta) with zeta^2 + zeta + 1 = 0."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational


class QZeta:
    """Element ``a + b*zeta`` of the cyclotomic field Q(zeta_3)."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def _coerce(x):
        if isinstance(x, QZeta):
            return x
        if isinstance(x, (int, Rational)):
            return QZeta(x, 0)
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
        a, b, c, d = self.a, self.b, o.a, o.b
        # zeta^2 = -1 - zeta
        return QZeta(a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        a, b = self.a, self.b
        return a * a - a * b + b * b

    def conjugate(self) -> "QZeta":
        return QZeta(self.a - self.b, -self.b)

    def inverse(self) -> "QZeta":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QZeta division by zero")
        c = self.conjugate()
        return QZeta(c.a / n, c.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __pow__(self, n: int):
        out = QZeta(1)
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            out = out * base
        return out

    def __repr__(self):
        if not self.b:
            return f"QZeta({self.a})"
        return f"QZeta({self.a}, {self.b})"

    def __str__(self):
        if not self.b:
            return str(self.a)
        return f"({self.a}+{self.b}z)"


ZETA = QZeta(0, 1)


def root_of_unity(k: int, a: int):
    """``q**a`` for the fixed primitive k-th root of unity ``q = exp(2 pi i/k)``."""
    a %= k
    if k == 1 or a == 0:
        return Fraction(1)
    if k == 2:
        return Fraction(-1)
    if k == 3:
        return ZETA if a == 1 else ZETA * ZETA
    raise ValueError(f"no exact field for roots of unity of order {k}")


def field_name(k: int) -> str:
    return "Q(zeta3)" if k == 3 else "Q"


def to_scalar(x, k: int):
    return QZeta(x) if k == 3 else Fraction(x)
