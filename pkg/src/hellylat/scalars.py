"""Exact scalar arithmetic: rationals and real quadratic field elements.

A scalar is an ``int``, a ``fractions.Fraction``, or a :class:`QuadExt`
value ``a + b*sqrt(D)`` with rational ``a``, ``b`` and square-free ``D > 1``.
QuadExt values always have ``b != 0``; arithmetic that lands on a rational
result demotes to ``Fraction``, so equality and hashing across the three
representations just work.  Every predicate in the package bottoms out in
the exact sign computations here; nothing ever rounds through floats.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

from .errors import FieldMismatchError, PreconditionError, ScalarParseError

Scalar = Union[int, Fraction, "QuadExt"]

#: iteration cap for the multiply-and-compare loop in :func:`ceil_log`
CEIL_LOG_MAX_ITER = 10**6


def _is_squarefree_nonsquare(d: int) -> bool:
    if d < 2:
        return False
    if math.isqrt(d) ** 2 == d:
        return False
    f = 2
    while f * f <= d:
        if d % (f * f) == 0:
            return False
        f += 1
    return True


class QuadExt:
    """An element ``a + b*sqrt(d)`` of the real quadratic field Q(sqrt(d)).

    Instances are immutable and always irrational (``b != 0``); use
    :meth:`make` to build values that may simplify to a plain ``Fraction``.
    The comparison operators implement the total order of the real
    embedding, decided exactly by case analysis on the signs of ``a`` and
    ``b`` and an integer comparison of ``a**2`` against ``d*b**2``.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        a = Fraction(a)
        b = Fraction(b)
        if not _is_squarefree_nonsquare(d):
            raise PreconditionError(f"sqrt({d}) is not a square-free surd")
        if b == 0:
            raise PreconditionError("QuadExt requires b != 0; use QuadExt.make")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    @staticmethod
    def make(a, b, d: int) -> Scalar:
        """Build ``a + b*sqrt(d)``, demoting to Fraction when b == 0."""
        b = Fraction(b)
        if b == 0:
            return Fraction(a)
        return QuadExt(a, b, d)

    @staticmethod
    def sqrt(d: int) -> "QuadExt":
        return QuadExt(0, 1, d)

    # -- field structure ---------------------------------------------------

    def _coerce(self, other) -> "tuple[Fraction, Fraction] | None":
        """Return (a, b) parts of `other` in this field, or None."""
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise FieldMismatchError(
                    f"cannot mix sqrt({self.d}) with sqrt({other.d})"
                )
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        parts = self._coerce(other)
        if parts is None:
            return NotImplemented
        oa, ob = parts
        return QuadExt.make(self.a + oa, self.b + ob, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        parts = self._coerce(other)
        if parts is None:
            return NotImplemented
        oa, ob = parts
        return QuadExt.make(self.a - oa, self.b - ob, self.d)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        parts = self._coerce(other)
        if parts is None:
            return NotImplemented
        oa, ob = parts
        return QuadExt.make(
            self.a * oa + self.d * self.b * ob,
            self.a * ob + self.b * oa,
            self.d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """Field norm a**2 - d*b**2 (= self * conjugate)."""
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> "QuadExt":
        n = self.norm()
        # n == 0 would mean sqrt(d) rational; excluded by construction
        return QuadExt(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        parts = self._coerce(other)
        if parts is None:
            return NotImplemented
        oa, ob = parts
        if ob == 0:
            if oa == 0:
                raise ZeroDivisionError("division by zero scalar")
            return QuadExt(self.a / oa, self.b / oa, self.d)
        return self * QuadExt(oa, ob, self.d).inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result: Scalar = Fraction(1)
        base: Scalar = self
        k = n
        while k:
            if k & 1:
                result = base * result if isinstance(base, QuadExt) else result * base
            base = base * base
            k >>= 1
        return result

    def __abs__(self):
        return -self if self._sign() < 0 else self

    # -- exact order -------------------------------------------------------

    def _sign(self) -> int:
        a, b, d = self.a, self.b, self.d
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with d*b^2 (equality impossible)
        lhs = a * a
        rhs = d * b * b
        if a > 0:  # b < 0
            return 1 if lhs > rhs else -1
        return 1 if rhs > lhs else -1

    def _cmp(self, other) -> int:
        parts = self._coerce(other)
        if parts is None:
            return NotImplemented  # type: ignore[return-value]
        oa, ob = parts
        diff = QuadExt.make(self.a - oa, self.b - ob, self.d)
        if isinstance(diff, Fraction):
            return -1 if diff < 0 else (0 if diff == 0 else 1)
        return diff._sign()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return False  # b != 0 means irrational
        if isinstance(other, QuadExt):
            return self.d == other.d and self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c >= 0

    def __repr__(self):
        return f"QuadExt({self.a}, {self.b}, {self.d})"

    def __str__(self):
        return format_scalar(self)


def scalar_sign(x: Scalar) -> int:
    """Exact sign of a scalar: -1, 0, or +1."""
    if isinstance(x, QuadExt):
        return x._sign()
    return -1 if x < 0 else (0 if x == 0 else 1)


def compare(a: Scalar, b: Scalar) -> int:
    """Exact three-way comparison; -1, 0, +1 as the reals order.

    Rationals compare against anything; two QuadExt values must live in
    the same field (same d), else FieldMismatchError.
    """
    if isinstance(a, QuadExt):
        c = a._cmp(b)
        if c is NotImplemented:
            raise FieldMismatchError(f"cannot compare {a!r} with {b!r}")
        return c
    if isinstance(b, QuadExt):
        return -compare(b, a)
    return -1 if a < b else (0 if a == b else 1)


def ceil_log(base: Scalar, value: Scalar, max_iter: int = CEIL_LOG_MAX_ITER) -> int:
    """Smallest integer t with base**t >= value, by exact power comparison.

    Maintains the power incrementally (multiply/divide and compare), so no
    floating point is involved; `max_iter` caps the walk for pathological
    arguments.
    """
    if compare(base, 1) <= 0:
        raise PreconditionError("ceil_log requires base > 1")
    if scalar_sign(value) <= 0:
        raise PreconditionError("ceil_log requires value > 0")
    if compare(value, 1) <= 0:
        # t <= 0: walk down while the next smaller power still dominates
        t = 0
        power: Scalar = Fraction(1)
        for _ in range(max_iter):
            nxt = power / base
            if compare(nxt, value) >= 0:
                power = nxt
                t -= 1
            else:
                return t
        raise PreconditionError(f"ceil_log exceeded {max_iter} iterations")
    t = 0
    power = Fraction(1)
    for _ in range(max_iter):
        if compare(power, value) >= 0:
            return t
        power = power * base
        t += 1
    raise PreconditionError(f"ceil_log exceeded {max_iter} iterations")


def binomial(n: int, r: int) -> int:
    """Exact binomial coefficient; 0 when r > n."""
    if n < 0 or r < 0:
        raise PreconditionError("binomial requires nonnegative arguments")
    if r > n:
        return 0
    return math.comb(n, r)


def gcd_vector(v) -> int:
    """gcd of the absolute values of an integer vector; 0 for the zero vector.

    Equals the number of lattice points on the segment [0, v] minus one.
    """
    ints = []
    for c in v:
        c = as_integer(c)
        ints.append(abs(c))
    return math.gcd(*ints) if ints else 0


def floor_sqrt(x: Scalar) -> int:
    """Largest integer t with t**2 <= x, for x >= 0, computed exactly."""
    if scalar_sign(x) < 0:
        raise PreconditionError("floor_sqrt requires x >= 0")
    if isinstance(x, int):
        return math.isqrt(x)
    if isinstance(x, Fraction):
        return math.isqrt(x.numerator * x.denominator) // x.denominator
    lo, hi = 0, 1
    while compare(hi * hi, x) <= 0:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if compare(mid * mid, x) <= 0:
            lo = mid
        else:
            hi = mid
    return lo


def is_integer(x: Scalar) -> bool:
    if isinstance(x, int):
        return True
    return isinstance(x, Fraction) and x.denominator == 1


def as_integer(x: Scalar) -> int:
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    raise PreconditionError(f"{x!r} is not an integer")


# -- serialization ----------------------------------------------------------

_RAT_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")
_QUAD_RE = re.compile(
    r"^(?P<a>[+-]?\d+(?:/\d+)?)?(?P<sign>[+-])(?P<b>\d+(?:/\d+)?)\*sqrt\((?P<d>\d+)\)$"
)
_PURE_SQRT_RE = re.compile(r"^(?P<b>[+-]?\d+(?:/\d+)?)\*sqrt\((?P<d>\d+)\)$")


def _format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_scalar(x: Scalar) -> str:
    """Canonical string form: "p", "p/q", or "a+b*sqrt(D)" / "a-b*sqrt(D)"."""
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return _format_rational(x)
    if isinstance(x, QuadExt):
        sep = "+" if x.b > 0 else "-"
        return f"{_format_rational(x.a)}{sep}{_format_rational(abs(x.b))}*sqrt({x.d})"
    raise ScalarParseError(f"not a scalar: {x!r}")


def parse_scalar(s: str) -> Scalar:
    """Parse the grammar emitted by :func:`format_scalar` (round-trip exact)."""
    s = s.strip().replace(" ", "")
    if _RAT_RE.match(s):
        return Fraction(s)
    m = _QUAD_RE.match(s)
    if m:
        a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
        b = Fraction(m.group("b"))
        if m.group("sign") == "-":
            b = -b
        return QuadExt.make(a, b, int(m.group("d")))
    m = _PURE_SQRT_RE.match(s)
    if m:
        return QuadExt.make(0, Fraction(m.group("b")), int(m.group("d")))
    raise ScalarParseError(f"cannot parse scalar {s!r}")
