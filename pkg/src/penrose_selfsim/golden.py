"""Exact arithmetic in the golden field Q(tau), tau**2 = tau + 1.

Every value is stored as ``a + b*tau`` with ``a``, ``b`` rational.  The
textual form used on the command line is ``"a/b+c/dt"`` where ``t``
stands for tau, e.g. ``"1/4"``, ``"2+3t"``, ``"-1-t"``, ``"1/2-3/5t"``.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import total_ordering
from numbers import Rational
from typing import Iterable, Sequence, Union

__all__ = [
    "GoldenNumber",
    "GoldenVector",
    "TAU",
    "TAU_CONJ",
    "ZERO",
    "ONE",
    "SQRT5",
    "as_golden",
    "add",
    "mul",
    "conjugate",
    "signum",
    "galois_norm",
    "to_float",
    "parse_golden",
    "format_golden",
    "vec",
    "vadd",
    "vsub",
    "vscale",
    "dot",
]

_SQRT5_FLOAT = math.sqrt(5.0)
_TAU_FLOAT = (1.0 + _SQRT5_FLOAT) / 2.0

Scalar = Union["GoldenNumber", int, Fraction]


def _sign_of(p: Fraction | int, q: Fraction | int) -> int:
    """Sign of ``p + q*sqrt(5)`` for rationals ``p``, ``q``."""
    if p >= 0 and q >= 0:
        return 0 if (p == 0 and q == 0) else 1
    if p <= 0 and q <= 0:
        return -1
    # opposite signs: compare squares
    d = p * p - 5 * q * q
    if p > 0:
        return 1 if d > 0 else -1
    return -1 if d > 0 else 1


@total_ordering
class GoldenNumber:
    """An element ``a + b*tau`` of Q(tau).

    Instances are immutable and hashable.  Internally the value is kept
    as ``(p + q*tau) / d`` with ``d > 0`` and ``gcd(p, q, d) == 1``, which
    is canonical; :attr:`a` and :attr:`b` expose the coordinates as
    :class:`fractions.Fraction` in lowest terms.
    """

    __slots__ = ("_p", "_q", "_d")

    def __init__(self, a: int | Fraction | str = 0, b: int | Fraction | str = 0) -> None:
        fa, fb = Fraction(a), Fraction(b)
        d = fa.denominator * fb.denominator // math.gcd(fa.denominator, fb.denominator)
        self._p = fa.numerator * (d // fa.denominator)
        self._q = fb.numerator * (d // fb.denominator)
        self._d = d

    @classmethod
    def _make(cls, p: int, q: int, d: int) -> GoldenNumber:
        if d != 1:
            g = math.gcd(p, q, d)
            if g != 1:
                p //= g
                q //= g
                d //= g
        obj = object.__new__(cls)
        obj._p = p
        obj._q = q
        obj._d = d
        return obj

    @property
    def a(self) -> Fraction:
        return Fraction(self._p, self._d)

    @property
    def b(self) -> Fraction:
        return Fraction(self._q, self._d)

    # -- conversions -------------------------------------------------------

    def __repr__(self) -> str:
        return f"GoldenNumber({self.a!s}, {self.b!s})"

    def __str__(self) -> str:
        return format_golden(self)

    def __float__(self) -> float:
        return (self._p + self._q * _TAU_FLOAT) / self._d

    def __bool__(self) -> bool:
        return bool(self._p) or bool(self._q)

    def __hash__(self) -> int:
        if self._q == 0:
            return hash(Fraction(self._p, self._d))
        return hash((self._p, self._q, self._d))

    def is_rational(self) -> bool:
        return self._q == 0

    def is_integer(self) -> bool:
        return self._q == 0 and self._d == 1

    def is_algebraic_integer(self) -> bool:
        """True when both coordinates are integers (element of Z[tau])."""
        return self._d == 1

    # -- arithmetic --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GoldenNumber):
            return self._p == other._p and self._q == other._q and self._d == other._d
        if isinstance(other, int):
            return self._q == 0 and self._d == 1 and self._p == other
        if isinstance(other, Rational):
            return self._q == 0 and Fraction(self._p, self._d) == other
        return NotImplemented

    def __lt__(self, other: Scalar) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).signum() < 0

    def __add__(self, other: Scalar) -> GoldenNumber:
        if isinstance(other, GoldenNumber):
            d1, d2 = self._d, other._d
            if d1 == d2:
                return GoldenNumber._make(self._p + other._p, self._q + other._q, d1)
            return GoldenNumber._make(self._p * d2 + other._p * d1, self._q * d2 + other._q * d1, d1 * d2)
        if isinstance(other, int):
            return GoldenNumber._make(self._p + other * self._d, self._q, self._d)
        if isinstance(other, Fraction):
            return self + GoldenNumber(other)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> GoldenNumber:
        return GoldenNumber._make(-self._p, -self._q, self._d)

    def __pos__(self) -> GoldenNumber:
        return self

    def __abs__(self) -> GoldenNumber:
        return -self if self.signum() < 0 else self

    def __sub__(self, other: Scalar) -> GoldenNumber:
        if isinstance(other, GoldenNumber):
            d1, d2 = self._d, other._d
            if d1 == d2:
                return GoldenNumber._make(self._p - other._p, self._q - other._q, d1)
            return GoldenNumber._make(self._p * d2 - other._p * d1, self._q * d2 - other._q * d1, d1 * d2)
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other: Scalar) -> GoldenNumber:
        if isinstance(other, (int, Fraction)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other: Scalar) -> GoldenNumber:
        if isinstance(other, GoldenNumber):
            a, b, c, d = self._p, self._q, other._p, other._q
            bd = b * d
            return GoldenNumber._make(a * c + bd, a * d + b * c + bd, self._d * other._d)
        if isinstance(other, int):
            return GoldenNumber._make(self._p * other, self._q * other, self._d)
        if isinstance(other, Fraction):
            return GoldenNumber._make(
                self._p * other.numerator, self._q * other.numerator, self._d * other.denominator
            )
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> GoldenNumber:
        # (p + q tau)^-1 = d (p + q - q tau) / N, N = p(p+q) - q^2
        p, q = self._p, self._q
        n = p * (p + q) - q * q
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(tau)")
        if n < 0:
            return GoldenNumber._make(-self._d * (p + q), self._d * q, -n)
        return GoldenNumber._make(self._d * (p + q), -self._d * q, n)

    def __truediv__(self, other: Scalar) -> GoldenNumber:
        if isinstance(other, GoldenNumber):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        return NotImplemented

    def __rtruediv__(self, other: Scalar) -> GoldenNumber:
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int) -> GoldenNumber:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- field structure ---------------------------------------------------

    def conjugate(self) -> GoldenNumber:
        """Galois conjugate, tau -> 1 - tau."""
        return GoldenNumber._make(self._p + self._q, -self._q, self._d)

    def norm(self) -> Fraction:
        """``x * conjugate(x)``, a rational."""
        p, q = self._p, self._q
        return Fraction(p * (p + q) - q * q, self._d * self._d)

    def signum(self) -> int:
        # d > 0; p + q*tau = ((2p + q) + q*sqrt5) / 2
        return _sign_of(2 * self._p + self._q, self._q)

    def floor(self) -> int:
        """Exact floor of the real value."""
        guess = math.floor(float(self))
        # float guess may be off by one near integers
        while self < guess:
            guess -= 1
        while self >= guess + 1:
            guess += 1
        return guess


def _coerce(x: object) -> GoldenNumber:
    if isinstance(x, GoldenNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return GoldenNumber(x)
    return NotImplemented


def as_golden(x: Scalar | str) -> GoldenNumber:
    """Coerce ints, fractions and textual forms to :class:`GoldenNumber`."""
    if isinstance(x, GoldenNumber):
        return x
    if isinstance(x, str):
        return parse_golden(x)
    if isinstance(x, (int, Fraction)):
        return GoldenNumber(x)
    raise TypeError(f"cannot convert {type(x).__name__} to GoldenNumber")


ZERO = GoldenNumber(0)
ONE = GoldenNumber(1)
TAU = GoldenNumber(0, 1)
TAU_CONJ = GoldenNumber(1, -1)
SQRT5 = GoldenNumber(-1, 2)


# -- functional spellings ----------------------------------------------------

def add(x: GoldenNumber, y: GoldenNumber) -> GoldenNumber:
    return x + y


def mul(x: GoldenNumber, y: GoldenNumber) -> GoldenNumber:
    return x * y


def conjugate(x: GoldenNumber) -> GoldenNumber:
    return x.conjugate()


def signum(x: GoldenNumber) -> int:
    return x.signum()


def galois_norm(x: GoldenNumber) -> Fraction:
    return x.norm()


def to_float(x: GoldenNumber) -> float:
    return float(x)


# -- text form -------------------------------------------------------------

_RAT = r"\d+(?:/\d+)?"
_TERM = re.compile(rf"([+-]?)({_RAT})?(t?)")


def parse_golden(text: str) -> GoldenNumber:
    """Parse ``"a/b+c/dt"`` style text.

    Accepted terms are a rational constant and/or a rational multiple of
    ``t``; a bare ``t`` means coefficient one.  Whitespace is ignored.
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty golden number")
    a = Fraction(0)
    b = Fraction(0)
    seen_a = seen_b = False
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"malformed golden number: {text!r}")
        sign, num, t = m.groups()
        if pos > 0 and not sign:
            raise ValueError(f"malformed golden number: {text!r}")
        if not num and not t:
            raise ValueError(f"malformed golden number: {text!r}")
        coeff = Fraction(num) if num else Fraction(1)
        if sign == "-":
            coeff = -coeff
        if t:
            if seen_b:
                raise ValueError(f"duplicate tau term in {text!r}")
            b, seen_b = coeff, True
        else:
            if seen_a:
                raise ValueError(f"duplicate constant term in {text!r}")
            a, seen_a = coeff, True
        pos = m.end()
    return GoldenNumber(a, b)


def format_golden(x: GoldenNumber) -> str:
    a, b = x.a, x.b
    if b == 0:
        return str(a)
    if abs(b) == 1:
        bt = "t"
    else:
        bt = f"{abs(b)}t"
    if a == 0:
        return bt if b > 0 else "-" + bt
    return f"{a}{'+' if b > 0 else '-'}{bt}"


# -- vectors -----------------------------------------------------------------

GoldenVector = tuple  # fixed-length tuple of GoldenNumber


def vec(values: Iterable[Scalar | str]) -> tuple[GoldenNumber, ...]:
    return tuple(as_golden(v) for v in values)


def _check_len(x: Sequence, y: Sequence) -> None:
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")


def vadd(x: Sequence[GoldenNumber], y: Sequence[GoldenNumber]) -> tuple[GoldenNumber, ...]:
    _check_len(x, y)
    return tuple(p + q for p, q in zip(x, y))


def vsub(x: Sequence[GoldenNumber], y: Sequence[GoldenNumber]) -> tuple[GoldenNumber, ...]:
    _check_len(x, y)
    return tuple(p - q for p, q in zip(x, y))


def vscale(s: Scalar, x: Sequence[GoldenNumber]) -> tuple[GoldenNumber, ...]:
    return tuple(s * p for p in x)


def dot(x: Sequence[Scalar], y: Sequence[Scalar]) -> GoldenNumber:
    _check_len(x, y)
    total = ZERO
    for p, q in zip(x, y):
        total = total + p * q
    return total if isinstance(total, GoldenNumber) else GoldenNumber(total)
