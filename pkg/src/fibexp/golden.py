"""Exact arithmetic in Q(sqrt5).

Every golden-ratio comparison, floor, fractional part and interval test in
this package is decided here with integer arithmetic only; floats appear
solely as scan seeds and display approximations.  A value is stored as
(a + b*sqrt5)/c with c > 0 and gcd(a, b, c) = 1, so equality is plain field
equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, log
from typing import Union

from .fib import fib

__all__ = [
    "GoldenNumber",
    "ModularInterval",
    "PHI",
    "PHI_INV",
    "ZERO",
    "ONE",
    "compare",
    "floor_int",
    "frac_mod",
    "in_interval",
    "phi_power",
    "ceil_log_phi_abs",
    "least_phi_power_exceeding",
    "sign_pair",
]

Coercible = Union[int, Fraction, "GoldenNumber"]


def sign_pair(p: int, q: int) -> int:
    """Exact sign of p + q*sqrt5 for integers p, q."""
    if q == 0:
        return (p > 0) - (p < 0)
    if p == 0:
        return 1 if q > 0 else -1
    if p > 0 and q > 0:
        return 1
    if p < 0 and q < 0:
        return -1
    # opposite signs: compare p^2 with 5 q^2 (never equal since 5 is squarefree)
    if p > 0:
        return 1 if p * p > 5 * q * q else -1
    return 1 if 5 * q * q > p * p else -1


def _floor_sqrt5_mult(b: int) -> int:
    """floor(b * sqrt5) for any integer b."""
    if b >= 0:
        return isqrt(5 * b * b)
    return -isqrt(5 * b * b) - 1  # b != 0 here, so b*sqrt5 is irrational


class GoldenNumber:
    """(a + b*sqrt5)/c in canonical form: c > 0, gcd(a, b, c) = 1."""

    __slots__ = ("a", "b", "c")

    def __init__(self, a: int, b: int = 0, c: int = 1):
        if c == 0:
            raise ZeroDivisionError("denominator must be nonzero")
        if c < 0:
            a, b, c = -a, -b, -c
        g = gcd(a, b, c)
        if g > 1:
            a, b, c = a // g, b // g, c // g
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("GoldenNumber is immutable")

    @classmethod
    def from_fraction(cls, value: Fraction) -> "GoldenNumber":
        return cls(value.numerator, 0, value.denominator)

    # -- coercion ---------------------------------------------------------

    @staticmethod
    def _coerce(x: Coercible) -> "GoldenNumber":
        if isinstance(x, GoldenNumber):
            return x
        if isinstance(x, int):
            return GoldenNumber(x)
        if isinstance(x, Fraction):
            return GoldenNumber(x.numerator, 0, x.denominator)
        raise TypeError(f"cannot interpret {x!r} as a GoldenNumber")

    # -- ring/field operations -------------------------------------------

    def __add__(self, other: Coercible) -> "GoldenNumber":
        o = self._coerce(other)
        return GoldenNumber(self.a * o.c + o.a * self.c, self.b * o.c + o.b * self.c, self.c * o.c)

    __radd__ = __add__

    def __neg__(self) -> "GoldenNumber":
        return GoldenNumber(-self.a, -self.b, self.c)

    def __sub__(self, other: Coercible) -> "GoldenNumber":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Coercible) -> "GoldenNumber":
        return (-self) + other

    def __mul__(self, other: Coercible) -> "GoldenNumber":
        o = self._coerce(other)
        return GoldenNumber(
            self.a * o.a + 5 * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.c * o.c,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Coercible) -> "GoldenNumber":
        o = self._coerce(other)
        norm = o.a * o.a - 5 * o.b * o.b  # (a+b√5)(a-b√5)
        if norm == 0:
            raise ZeroDivisionError("division by zero")
        # 1/o = c(a - b√5)/norm
        return self * GoldenNumber(o.c * o.a, -o.c * o.b, norm)

    def __rtruediv__(self, other: Coercible) -> "GoldenNumber":
        return self._coerce(other) / self

    def __pow__(self, n: int) -> "GoldenNumber":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ONE / (self ** (-n))
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __abs__(self) -> "GoldenNumber":
        return -self if self.sign() < 0 else self

    # -- comparisons -------------------------------------------------------

    def sign(self) -> int:
        return sign_pair(self.a, self.b)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, GoldenNumber)):
            o = self._coerce(other)
            return self.a == o.a and self.b == o.b and self.c == o.c
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(Fraction(self.a, self.c))
        return hash((self.a, self.b, self.c))

    def __lt__(self, other: Coercible) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: Coercible) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: Coercible) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: Coercible) -> bool:
        return (self - other).sign() >= 0

    # -- floors and fractional parts ---------------------------------------

    def floor(self) -> int:
        """Exact floor; uses floor((a + floor(b*sqrt5))/c) = floor(x/c)."""
        return (self.a + _floor_sqrt5_mult(self.b)) // self.c

    def ceil(self) -> int:
        return -(-self).floor()

    def frac_mod(self, modulus: Coercible) -> "GoldenNumber":
        """self - m*floor(self/m), in [0, m)."""
        m = self._coerce(modulus)
        if m.sign() <= 0 or m.b != 0:
            raise ValueError("modulus must be a positive rational")
        return self - m * (self / m).floor()

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    # -- rendering ----------------------------------------------------------

    def to_float(self) -> float:
        """Approximate value; display only, never used for decisions."""
        return float(Fraction(self.a, self.c)) + float(Fraction(self.b, self.c)) * 5 ** 0.5

    def json_dict(self) -> dict[str, str]:
        return {"a": str(self.a), "b": str(self.b), "c": str(self.c)}

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a) if self.c == 1 else f"{self.a}/{self.c}"
        core = f"({self.a} {'+' if self.b >= 0 else '-'} {abs(self.b)}√5)"
        return core if self.c == 1 else f"{core}/{self.c}"

    def __repr__(self) -> str:
        return f"GoldenNumber({self.a}, {self.b}, {self.c})"


ZERO = GoldenNumber(0)
ONE = GoldenNumber(1)
PHI = GoldenNumber(1, 1, 2)
PHI_INV = GoldenNumber(-1, 1, 2)

_PHI_POWER_CACHE: dict[int, GoldenNumber] = {}


def phi_power(n: int) -> GoldenNumber:
    """Exact phi**n for any signed n, via phi**n = (L_n + F_n*sqrt5)/2."""
    cached = _PHI_POWER_CACHE.get(n)
    if cached is None:
        cached = GoldenNumber(2 * fib(n - 1) + fib(n), fib(n), 2)
        if -4096 <= n <= 4096:
            _PHI_POWER_CACHE[n] = cached
    return cached


def compare(x: Coercible, y: Coercible) -> int:
    """Exact sign of x - y: -1, 0 or 1."""
    return (GoldenNumber._coerce(x) - y).sign()


def floor_int(x: GoldenNumber) -> int:
    return GoldenNumber._coerce(x).floor()


def frac_mod(x: GoldenNumber, modulus: Coercible) -> GoldenNumber:
    return GoldenNumber._coerce(x).frac_mod(modulus)


def _log_phi_seed(x: GoldenNumber) -> int:
    """Rough integer estimate of log_phi |x|; exactness comes from the scan."""
    try:
        f = abs(x.to_float())
        if f > 0.0 and f != float("inf"):
            return round(log(f) / log((1 + 5 ** 0.5) / 2))
    except OverflowError:
        pass
    # fall back to bit lengths: |x| ~ 2^(bits(|a| + |b|*2.25) - bits(c))
    num_bits = max(abs(x.a), abs(x.b) * 2).bit_length()
    return round((num_bits - x.c.bit_length()) * 1.4404)


def ceil_log_phi_abs(x: GoldenNumber) -> int:
    """Smallest m with |x| <= phi**m; an exact power phi**m maps to m itself."""
    x = GoldenNumber._coerce(x)
    if x.sign() == 0:
        raise ValueError("log of zero")
    ax = abs(x)
    m = _log_phi_seed(x)
    while phi_power(m) < ax:
        m += 1
    while ax <= phi_power(m - 1):
        m -= 1
    return m


def least_phi_power_exceeding(n: int) -> int:
    """Smallest positive h with n < phi**h (exact; n >= 1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    h = max(1, round(n.bit_length() * 1.4404))

    def exceeds(m: int) -> bool:
        # phi**m > n  <=>  L_m - 2n + F_m*sqrt5 > 0
        return sign_pair(2 * fib(m - 1) + fib(m) - 2 * n, fib(m)) > 0

    while not exceeds(h):
        h += 1
    while h > 1 and exceeds(h - 1):
        h -= 1
    return h


@dataclass(frozen=True)
class ModularInterval:
    """Open interval (lo : hi) taken modulo a positive rational modulus.

    Membership uses circular-arc semantics: when the reduced endpoints wrap
    around, every point strictly inside the arc counts, including 0.  Equal
    reduced endpoints denote the full circle (width = modulus), which only
    arises for unit-width intervals with r = 1.
    """

    lo: GoldenNumber
    hi: GoldenNumber
    modulus: Coercible = 1

    def contains(self, z: Coercible) -> bool:
        m = GoldenNumber._coerce(self.modulus)
        zr = GoldenNumber._coerce(z).frac_mod(m)
        lor = self.lo.frac_mod(m)
        hir = self.hi.frac_mod(m)
        if lor == hir:
            return True
        if lor < hir:
            return lor < zr < hir
        return zr > lor or zr < hir


def in_interval(z: Coercible, interval: ModularInterval) -> bool:
    return interval.contains(z)
