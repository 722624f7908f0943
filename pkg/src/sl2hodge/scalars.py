"""Exact arithmetic in the number field Q(i, sqrt 2).

An element is stored as four rationals (a, b, c, d) standing for
a + b*sqrt2 + c*i + d*i*sqrt2.  Every operation is exact.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import isqrt
from typing import Union

Number = Union[int, Fraction, "FieldElement"]


def _add(x: Fraction, y: Fraction) -> Fraction:
    if not y:
        return x
    if not x:
        return y
    return x + y


def _sub(x: Fraction, y: Fraction) -> Fraction:
    if not y:
        return x
    if not x:
        return -y
    return x - y


class FieldElement:
    __slots__ = ("a", "b", "c", "d", "_hash")

    def __init__(self, a=0, b=0, c=0, d=0):
        self.a = a if type(a) is Fraction else Fraction(a)
        self.b = b if type(b) is Fraction else Fraction(b)
        self.c = c if type(c) is Fraction else Fraction(c)
        self.d = d if type(d) is Fraction else Fraction(d)
        self._hash = None

    @classmethod
    def coerce(cls, x: Number) -> FieldElement:
        if isinstance(x, FieldElement):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to FieldElement")

    # --- structure -------------------------------------------------------

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.d)

    def is_real(self) -> bool:
        return not (self.c or self.d)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.a == other and not (self.b or self.c or self.d)
        if isinstance(other, FieldElement):
            return (self.a == other.a and self.b == other.b
                    and self.c == other.c and self.d == other.d)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.b or self.c or self.d:
                self._hash = hash((self.a, self.b, self.c, self.d))
            else:
                self._hash = hash(self.a)
        return self._hash

    # --- ring operations --------------------------------------------------

    def __add__(self, other: Number) -> FieldElement:
        if not isinstance(other, FieldElement):
            if isinstance(other, (int, Fraction)):
                return FieldElement(self.a + other, self.b, self.c, self.d)
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        return FieldElement(_add(self.a, other.a), _add(self.b, other.b),
                            _add(self.c, other.c), _add(self.d, other.d))

    __radd__ = __add__

    def __neg__(self) -> FieldElement:
        return FieldElement(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other: Number) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.is_zero():
                return self
            return FieldElement(_sub(self.a, other.a), _sub(self.b, other.b),
                                _sub(self.c, other.c), _sub(self.d, other.d))
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return FieldElement(self.a - other, self.b, self.c, self.d)

    def __rsub__(self, other: Number) -> FieldElement:
        return FieldElement.coerce(other) - self

    def __mul__(self, other: Number) -> FieldElement:
        if not isinstance(other, FieldElement):
            if isinstance(other, (int, Fraction)):
                return FieldElement(self.a * other, self.b * other,
                                    self.c * other, self.d * other)
            return NotImplemented
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        if not (b2 or c2 or d2):
            return FieldElement(a1 * a2, b1 * a2, c1 * a2, d1 * a2)
        if not (b1 or c1 or d1):
            return FieldElement(a1 * a2, a1 * b2, a1 * c2, a1 * d2)
        # (P1 + i Q1)(P2 + i Q2) with P, Q in Q(sqrt2)
        pp_a = a1 * a2 + 2 * b1 * b2
        pp_b = a1 * b2 + b1 * a2
        qq_a = c1 * c2 + 2 * d1 * d2
        qq_b = c1 * d2 + d1 * c2
        pq_a = a1 * c2 + 2 * b1 * d2
        pq_b = a1 * d2 + b1 * c2
        qp_a = c1 * a2 + 2 * d1 * b2
        qp_b = c1 * b2 + d1 * a2
        return FieldElement(pp_a - qq_a, pp_b - qq_b, pq_a + qp_a, pq_b + qp_b)

    __rmul__ = __mul__

    def conj_sqrt2(self) -> FieldElement:
        """Image under the automorphism sqrt2 -> -sqrt2."""
        return FieldElement(self.a, -self.b, self.c, -self.d)

    def conj_i(self) -> FieldElement:
        """Image under complex conjugation i -> -i."""
        return FieldElement(self.a, self.b, -self.c, -self.d)

    def norm(self) -> Fraction:
        """Product of the four Galois conjugates, a rational number."""
        s = self.conj_sqrt2()
        t = self.conj_i()
        st = s.conj_i()
        n = self * s * t * st
        assert n.is_rational()
        return n.a

    def inv(self) -> FieldElement:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(i, sqrt2)")
        if self.is_rational():
            return FieldElement(1 / self.a)
        s = self.conj_sqrt2()
        others = s * self.conj_i() * s.conj_i()
        return others * (1 / self.norm())

    def __truediv__(self, other: Number) -> FieldElement:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(i, sqrt2)")
            return FieldElement(self.a / other, self.b / other,
                                self.c / other, self.d / other)
        if isinstance(other, FieldElement):
            return self * other.inv()
        return NotImplemented

    def __rtruediv__(self, other: Number) -> FieldElement:
        return FieldElement.coerce(other) * self.inv()

    def __pow__(self, k: int) -> FieldElement:
        if k < 0:
            return self.inv() ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # --- order and roots on the real subfield ----------------------------

    def real_sign(self) -> int:
        """Sign of a + b*sqrt2 for a real element."""
        if not self.is_real():
            raise ValueError(f"{self} is not real")
        return _sign_q_sqrt2(self.a, self.b)

    def sqrt(self) -> FieldElement:
        """An exact square root, when one of the simple shapes applies.

        Handles rationals q with |q| or |q|/2 a rational square; raises
        ValueError otherwise.
        """
        if not self.is_rational():
            raise ValueError(f"no exact square root recognised for {self}")
        q = self.a
        unit = I if q < 0 else ONE
        q = abs(q)
        r = _rational_sqrt(q)
        if r is not None:
            return unit * r
        r = _rational_sqrt(q / 2)
        if r is not None:
            return unit * SQRT2 * r
        raise ValueError(f"sqrt({self}) is outside Q(i, sqrt2)")

    # --- text -------------------------------------------------------------

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"FieldElement({format_scalar(self)!r})"


def _sign_q_sqrt2(a: Fraction, b: Fraction) -> int:
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb if sa == 0 else sa
    # opposite signs: compare a^2 with 2 b^2
    lhs, rhs = a * a, 2 * b * b
    if lhs == rhs:
        return 0
    return sa if lhs > rhs else sb


def _rational_sqrt(q: Fraction) -> Fraction | None:
    num, den = q.numerator, q.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


ZERO = FieldElement(0)
ONE = FieldElement(1)
SQRT2 = FieldElement(0, 1)
I = FieldElement(0, 0, 1)
INV_SQRT2 = FieldElement(0, Fraction(1, 2))


def fe(x) -> FieldElement:
    """Build a field element from an int, Fraction, FieldElement or text."""
    if isinstance(x, str):
        return parse_scalar(x)
    return FieldElement.coerce(x)


# --- text syntax: p/q + p/q*r2 + p/q*i + p/q*i*r2 ---------------------------

_BASIS_NAMES = {(): 0, ("r2",): 1, ("i",): 2, ("i", "r2"): 3}
_TERM = re.compile(r"([+-]?)([^+-]+)")


def parse_scalar(text: str) -> FieldElement:
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty scalar")
    # split on + or - that are not the first character
    coords = [Fraction(0)] * 4
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"malformed scalar {text!r} at offset {pos}")
        sign = -1 if m.group(1) == "-" else 1
        body = m.group(2)
        factors = [f for f in body.split("*")]
        if any(f == "" for f in factors):
            raise ValueError(f"malformed scalar {text!r}: empty factor")
        coef = Fraction(1)
        units = []
        for f in factors:
            if f in ("i", "r2"):
                units.append(f)
            else:
                try:
                    coef *= Fraction(f)
                except (ValueError, ZeroDivisionError):
                    raise ValueError(f"malformed scalar {text!r}: bad factor {f!r}") from None
        units.sort()
        key = tuple(units)
        if key not in _BASIS_NAMES:
            raise ValueError(f"malformed scalar {text!r}: unsupported unit {'*'.join(units)}")
        coords[_BASIS_NAMES[key]] += sign * coef
        pos = m.end()
    return FieldElement(*coords)


def format_scalar(x: FieldElement) -> str:
    parts = []
    for value, unit in zip(x.coords, ("", "r2", "i", "i*r2")):
        if not value:
            continue
        mag = abs(value)
        if unit and mag == 1:
            body = unit
        elif unit:
            body = f"{mag}*{unit}"
        else:
            body = str(mag)
        if not parts:
            parts.append(("-" if value < 0 else "") + body)
        else:
            parts.append((" - " if value < 0 else " + ") + body)
    return "".join(parts) if parts else "0"
