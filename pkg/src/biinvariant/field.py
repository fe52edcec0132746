"""Exact arithmetic in the number field Q(i, sqrt 2).

An element is ``a + b*sqrt2 + c*i + d*i*sqrt2`` with rational a, b, c, d.
Internally the four coefficients share one positive integer denominator,
which keeps multiplication down to a handful of integer products.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from numbers import Rational

__all__ = ["Scalar", "ZERO", "ONE", "SQRT2", "I", "as_scalar", "ScalarLike"]


def _normalize(a: int, b: int, c: int, d: int, den: int) -> tuple:
    if den < 0:
        a, b, c, d, den = -a, -b, -c, -d, -den
    if den != 1:
        g = gcd(a, b, c, d, den)
        if g != 1:
            a, b, c, d, den = a // g, b // g, c // g, d // g, den // g
    return a, b, c, d, den


class Scalar:
    """Immutable element of Q(i, sqrt 2)."""

    __slots__ = ("a", "b", "c", "d", "den")

    def __init__(self, a=0, b=0, c=0, d=0):
        fa, fb, fc, fd = (Fraction(x) for x in (a, b, c, d))
        den = fa.denominator * fb.denominator * fc.denominator * fd.denominator
        nums = [int(f * den) for f in (fa, fb, fc, fd)]
        self.a, self.b, self.c, self.d, self.den = _normalize(*nums, den)

    @classmethod
    def _raw(cls, a: int, b: int, c: int, d: int, den: int) -> Scalar:
        obj = object.__new__(cls)
        obj.a, obj.b, obj.c, obj.d, obj.den = _normalize(a, b, c, d, den)
        return obj

    @classmethod
    def from_int(cls, n: int) -> Scalar:
        obj = object.__new__(cls)
        obj.a, obj.b, obj.c, obj.d, obj.den = n, 0, 0, 0, 1
        return obj

    # -- inspection ---------------------------------------------------------

    @property
    def components(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """The four rational coordinates (1, sqrt2, i, i*sqrt2)."""
        return (
            Fraction(self.a, self.den),
            Fraction(self.b, self.den),
            Fraction(self.c, self.den),
            Fraction(self.d, self.den),
        )

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    def __bool__(self) -> bool:
        return bool(self.a or self.b or self.c or self.d)

    def is_real(self) -> bool:
        return self.c == 0 and self.d == 0

    def is_rational(self) -> bool:
        return self.b == 0 and self.c == 0 and self.d == 0

    def real_part(self) -> Scalar:
        return Scalar._raw(self.a, self.b, 0, 0, self.den)

    def imag_part(self) -> Scalar:
        return Scalar._raw(self.c, self.d, 0, 0, self.den)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        if self.den == other.den:
            return Scalar._raw(self.a + other.a, self.b + other.b,
                               self.c + other.c, self.d + other.d, self.den)
        p, q = self.den, other.den
        return Scalar._raw(self.a * q + other.a * p, self.b * q + other.b * p,
                           self.c * q + other.c * p, self.d * q + other.d * p, p * q)

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        obj = object.__new__(Scalar)
        obj.a, obj.b, obj.c, obj.d, obj.den = -self.a, -self.b, -self.c, -self.d, self.den
        return obj

    def __pos__(self) -> Scalar:
        return self

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        if not (b or c or d) and not (f or g or h):
            return Scalar._raw(a * e, 0, 0, 0, self.den * other.den)
        return Scalar._raw(
            a * e + 2 * b * f - c * g - 2 * d * h,
            a * f + b * e - c * h - d * g,
            a * g + 2 * b * h + c * e + 2 * d * f,
            a * h + b * g + c * f + d * e,
            self.den * other.den,
        )

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(i, sqrt2)")
        a, b, c, d = self.a, self.b, self.c, self.d
        # x * conj(x) = u + v*sqrt2 (real), then rationalise sqrt2.
        u = a * a + 2 * b * b + c * c + 2 * d * d
        v = 2 * a * b + 2 * c * d
        norm = u * u - 2 * v * v
        # conj(x) * (u - v sqrt2)
        ca, cb, cc, cd = a, b, -c, -d
        na = ca * u - 2 * cb * v
        nb = cb * u - ca * v
        nc = cc * u - 2 * cd * v
        nd = cd * u - cc * v
        # self = X / den with integral X, so self^-1 = den * conj(X)(u - v sqrt2) / norm
        return Scalar._raw(na * self.den, nb * self.den, nc * self.den, nd * self.den, norm)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> Scalar:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> Scalar:
        """Complex conjugation i -> -i."""
        return Scalar._raw(self.a, self.b, -self.c, -self.d, self.den)

    def sqrt2_conj(self) -> Scalar:
        """The field automorphism sqrt2 -> -sqrt2."""
        return Scalar._raw(self.a, -self.b, self.c, -self.d, self.den)

    # -- order and roots on the real subfield Q(sqrt2) -----------------------

    def sign(self) -> int:
        """Sign of a real element a + b*sqrt2, decided exactly."""
        if not self.is_real():
            raise ValueError(f"sign of non-real scalar {self}")
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if (a > 0) == (b > 0):
            return 1 if a > 0 else -1
        # opposite signs: compare a^2 with 2 b^2
        dominant = a if a * a > 2 * b * b else b
        return 1 if dominant > 0 else -1

    def sqrt(self) -> Scalar | None:
        """Square root in Q(sqrt2) of a non-negative real element, or None."""
        if not self.is_real() or self.sign() < 0:
            return None
        if self.is_zero():
            return ZERO
        x, y = self.real_part().components[:2]
        if y == 0:
            r = _rational_sqrt(x)
            if r is not None:
                return Scalar(r)
            r = _rational_sqrt(x / 2)
            return None if r is None else Scalar(0, r)
        # (u + w sqrt2)^2 = x + y sqrt2  <=>  u^2 + 2w^2 = x, 2uw = y
        disc = _rational_sqrt(x * x - 2 * y * y)
        if disc is None:
            return None
        for w2 in ((x + disc) / 4, (x - disc) / 4):
            w = _rational_sqrt(w2) if w2 > 0 else None
            if w is None:
                continue
            u = y / (2 * w)
            root = Scalar(u, w)
            if root.sign() < 0:
                root = -root
            if root * root == self:
                return root
        return None

    # -- comparison, hashing, display --------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return (self.a == other.a and self.b == other.b and self.c == other.c
                and self.d == other.d and self.den == other.den)

    def __hash__(self) -> int:
        if self.b == 0 and self.c == 0 and self.d == 0:
            return hash(Fraction(self.a, self.den))
        return hash((self.a, self.b, self.c, self.d, self.den))

    def __complex__(self) -> complex:
        r2 = 2 ** 0.5
        return complex((self.a + self.b * r2) / self.den, (self.c + self.d * r2) / self.den)

    def __float__(self) -> float:
        if not self.is_real():
            raise TypeError("cannot convert non-real scalar to float")
        return (self.a + self.b * 2 ** 0.5) / self.den

    def to_literal(self) -> list[str]:
        """Wire format: four rational strings ["a", "b", "c", "d"]."""
        return [str(f) for f in self.components]

    @classmethod
    def from_literal(cls, lit) -> Scalar:
        """Parse the 4-array literal, or a bare rational (string/int)."""
        if isinstance(lit, (list, tuple)):
            if len(lit) != 4:
                raise ValueError(f"scalar literal needs 4 entries, got {len(lit)}")
            return cls(*(_parse_rational(x) for x in lit))
        return cls(_parse_rational(lit))

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"

    def __str__(self) -> str:
        parts = []
        for coeff, unit in zip(self.components, ("", "√2", "i", "i√2")):
            if coeff == 0:
                continue
            if unit and abs(coeff) == 1:
                body = unit
            else:
                body = f"{abs(coeff)}{unit}"
            sign = "-" if coeff < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _parse_rational(x) -> Fraction:
    if isinstance(x, bool):
        raise ValueError("boolean is not a rational literal")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        text = x.strip()
        if not text:
            raise ValueError("empty rational literal")
        try:
            return Fraction(text)
        except ValueError:
            raise ValueError(f"bad rational literal {x!r}") from None
    raise ValueError(f"bad rational literal {x!r}")


def _coerce(x) -> Scalar | None:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, bool):
        return None
    if isinstance(x, int):
        return Scalar.from_int(x)
    if isinstance(x, Rational):
        f = Fraction(x)
        return Scalar._raw(f.numerator, 0, 0, 0, f.denominator)
    return None


ScalarLike = "Scalar | int | Fraction | str"


def as_scalar(x) -> Scalar:
    """Coerce ints, Fractions, rational strings and 4-literals to Scalar."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, str) or isinstance(x, (list, tuple)):
        return Scalar.from_literal(x)
    s = _coerce(x)
    if s is None:
        raise TypeError(f"cannot interpret {x!r} as an element of Q(i, sqrt2)")
    return s


ZERO = Scalar.from_int(0)
ONE = Scalar.from_int(1)
SQRT2 = Scalar(0, 1)
I = Scalar(0, 0, 1)
