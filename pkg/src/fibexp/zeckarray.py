"""Locating pairs in the extended Fibonacci Zeckendorf array.

A pair (u, v) with v*phi + u > 0 occurs exactly once as adjacent entries of
the array.  The signed gap delta(u, v) = -u + v/phi falls in exactly one of
the alternating-sign intervals (+-phi^-j : +-phi^-(j+2)), which pins the
column of v directly; the row then follows from the negafibonacci closed
form.  Everything here is exact; floats only seed the power scan.

The module keeps integer-only inner loops (2*phi**m = L_m + F_m*sqrt5, so
every comparison is a sign_pair test) because the exhaustive array audit
runs over millions of pairs.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from math import log

from .errors import DegenerateDeltaError, NotAndersonPairError
from .fib import fib, hofstadter_g, zeckendorf_high_to_low
from .golden import GoldenNumber, phi_power, sign_pair

__all__ = [
    "ArrayLocation",
    "ColumnInterval",
    "delta",
    "is_anderson_pair",
    "locate",
    "column_interval",
    "recurse_pair",
    "column_by_recursion",
    "verify_array",
    "ArrayOracleReport",
]

_LOG_PHI = 0.48121182505960347  # ln(phi)

# (L_m, F_m) for the scan range the audits touch; fib() covers the rest.
_LF_OFFSET = 96
_LF: list[tuple[int, int]] = [
    (2 * fib(m - 1) + fib(m), fib(m)) for m in range(-_LF_OFFSET, 160)
]


def _lucas_fib(m: int) -> tuple[int, int]:
    idx = m + _LF_OFFSET
    if 0 <= idx < len(_LF):
        return _LF[idx]
    return 2 * fib(m - 1) + fib(m), fib(m)


def delta(u: int, v: int) -> GoldenNumber:
    """-u + v/phi, exactly: (-(2u + v) + v*sqrt5)/2."""
    return GoldenNumber(-(2 * u + v), v, 2)


def is_anderson_pair(u: int, v: int) -> bool:
    """v*phi + u > 0, tested exactly."""
    return sign_pair(2 * u + v, v) > 0


@dataclass(frozen=True)
class ArrayLocation:
    column: int  # column of v; u sits one column to the left
    row: int


def _ceil_log_phi_ints(p: int, q: int) -> int:
    """Smallest m with (p + q*sqrt5)/2 <= phi**m, for positive p + q*sqrt5."""
    m = 0
    try:
        value = (p + q * 2.2360679774997896) / 2
        if value > 0:
            m = round(log(value) / _LOG_PHI)
    except OverflowError:
        m = round((max(abs(p), 2 * abs(q)).bit_length() - 1) * 1.4404)
    while True:
        lm, fm = _lucas_fib(m)
        if sign_pair(lm - p, fm - q) < 0:
            m += 1
        else:
            break
    while True:
        lm, fm = _lucas_fib(m - 1)
        if sign_pair(lm - p, fm - q) >= 0:
            m -= 1
        else:
            break
    return m


def _locate_core(u: int, v: int) -> tuple[int, int]:
    """(column, row) without validation; callers guarantee an Anderson pair."""
    a, b = -(2 * u + v), v  # 2*delta = a + b*sqrt5
    s = sign_pair(a, b)
    m = _ceil_log_phi_ints(s * a, s * b)
    if s > 0:
        j = 2 * (-m // 2)
    else:
        j = 2 * ((1 - m) // 2) - 1
    return j, u * fib(-1 - j) + v * fib(-j)


def locate(u: int, v: int) -> ArrayLocation:
    """Column and row of (u, v) in O(log) exact comparisons.

    With m = ceil(log_phi |delta|): column j = 2*floor(-m/2) for positive
    delta, 2*floor((1-m)/2) - 1 otherwise; row n = u*F_{-1-j} + v*F_{-j}.
    """
    if u == 0 and v == 0:
        raise DegenerateDeltaError("delta(0, 0) = 0 has no column")
    if not is_anderson_pair(u, v):
        raise NotAndersonPairError(f"({u}, {v}) does not satisfy v*phi + u > 0")
    j, n = _locate_core(u, v)
    return ArrayLocation(j, n)


@dataclass(frozen=True)
class ColumnInterval:
    """Open interval of delta values for a column, with its sign."""

    column: int
    sign: int  # +1 for even columns, -1 for odd
    lo: GoldenNumber
    hi: GoldenNumber

    def contains(self, x: GoldenNumber) -> bool:
        return self.lo < x < self.hi


def column_interval(j: int) -> ColumnInterval:
    """(-phi^-j : -phi^-(j+2)) for odd j, (phi^-(j+2) : phi^-j) for even j."""
    if j % 2 == 0:
        return ColumnInterval(j, 1, phi_power(-(j + 2)), phi_power(-j))
    return ColumnInterval(j, -1, -phi_power(-j), -phi_power(-(j + 2)))


def _delta_in_column_ints(u: int, v: int, j: int) -> bool:
    """Exact test of delta(u, v) against column j's open interval, on integers.

    2*delta = a + b*sqrt5 and 2*phi**m = L_m + F_m*sqrt5, so each bound is a
    sign_pair call.
    """
    a, b = -(2 * u + v), v
    if j % 2 == 0:
        lo_l, lo_f = _lucas_fib(-(j + 2))
        hi_l, hi_f = _lucas_fib(-j)
        return sign_pair(a - lo_l, b - lo_f) > 0 and sign_pair(hi_l - a, hi_f - b) > 0
    lo_l, lo_f = _lucas_fib(-j)
    hi_l, hi_f = _lucas_fib(-(j + 2))
    return sign_pair(a + lo_l, b + lo_f) > 0 and sign_pair(-hi_l - a, -hi_f - b) > 0


def recurse_pair(u: int, v: int, steps: int) -> tuple[int, int]:
    """Apply (u, v) -> (v, u+v) `steps` times (negative steps precurse via
    (u, v) -> (v-u, u)); delta scales by (-1/phi)**steps."""
    if steps >= 0:
        for _ in range(steps):
            u, v = v, u + v
    else:
        for _ in range(-steps):
            u, v = v - u, u
    return u, v


def _column_core(u: int, v: int, g=hofstadter_g) -> tuple[int, int]:
    x, y = u, v
    if x >= 1 and y >= 1 and g(y) == x:
        steps = 0
        while x >= 1 and y >= 1 and g(y) == x:
            x, y = y - x, x
            steps += 1
        # stopped at the column-0 pair: x occupies column -1
        return steps, x
    steps = 0
    while not (x >= 1 and y >= 1 and g(y) == x):
        x, y = y, x + y
        steps += 1
    # (x, y) is the column-1 transition pair; one precursion exposes column -1
    return 1 - steps, y - x


def column_by_recursion(u: int, v: int) -> tuple[int, int]:
    """(column, row) by stepping the pair itself: recurse/precurse until the
    Hofstadter-G boundary between columns 0 and 1, then read the row off the
    column -1 entry.  Independent of locate(); used as its oracle."""
    if u == 0 and v == 0:
        raise DegenerateDeltaError("the zero pair has no column")
    if not is_anderson_pair(u, v):
        raise NotAndersonPairError(f"({u}, {v}) does not satisfy v*phi + u > 0")
    return _column_core(u, v)


@dataclass(frozen=True)
class ArrayOracleReport:
    max_val: int
    pairs_checked: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_array(max_val: int) -> ArrayOracleReport:
    """Exhaustive desk-scale audit over 1 <= u, v <= max_val.

    For every pair: locate() agrees with the recursion oracle, delta lies in
    the located column's open interval, and no two pairs share a location.
    Additionally every Hofstadter G pair (G(v), v) must land in the column
    of v's lowest set Zeckendorf bit.
    """
    if max_val > 5000:
        raise ValueError("max_val is capped at 5000 to keep the sweep tractable")
    violations: list[str] = []
    keys = array("q")
    checked = 0
    # columns for positive pairs <= 5000 stay well inside [-64, 64]
    for u in range(1, max_val + 1):
        for v in range(1, max_val + 1):
            checked += 1
            j, n = _locate_core(u, v)
            if (j, n) != _column_core(u, v):
                violations.append(f"({u},{v}): locate ({j},{n}) != recursion oracle")
                continue
            if not _delta_in_column_ints(u, v, j):
                violations.append(f"({u},{v}): delta outside column {j} interval")
            keys.append(n * 131 + j + 65)
    sorted_keys = sorted(keys)
    for i in range(1, len(sorted_keys)):
        if sorted_keys[i] == sorted_keys[i - 1]:
            key = sorted_keys[i]
            violations.append(f"duplicate location: column {key % 131 - 65}, row {key // 131}")
    for v in range(1, max_val + 1):
        u = hofstadter_g(v)
        j, _ = _locate_core(u, v)
        bits = zeckendorf_high_to_low(v)
        lowest = next(i for i in range(1, len(bits) + 1) if bits.bit(i))
        if j != lowest or j < 1:
            violations.append(f"HG pair ({u},{v}) at column {j}, lowest Zeckendorf bit {lowest}")
    return ArrayOracleReport(max_val, checked, tuple(violations))
