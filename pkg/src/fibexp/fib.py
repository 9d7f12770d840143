"""Fibonacci numbers, Fibonacci bit strings, Zeckendorf conversion, Hofstadter G.

Bit strings are stored low-to-high: bit i (1-based) carries weight F_{i+1},
so ``fib_sum(<1 0 1>) = F_2 + F_4 = 4``.  The extension to negative indices
is the negafibonacci rule F_{-n} = (-1)^{n+1} F_n.
"""

from __future__ import annotations

from math import isqrt
from typing import Iterable, Iterator

__all__ = [
    "BitString",
    "EMPTY",
    "fib",
    "fib_sum",
    "hofstadter_g",
    "zeckendorf_high_to_low",
    "zeckendorf_low_to_high",
    "enumerate_fib_representations",
]

_FIB_CACHE: dict[int, int] = {0: 0, 1: 1, 2: 1}


def _fib_pair(n: int) -> tuple[int, int]:
    """(F_n, F_{n+1}) for n >= 0 by iterative fast doubling."""
    a, b = 0, 1
    for bit in bin(n)[2:]:
        # doubling: F_{2m} = F_m (2F_{m+1} - F_m), F_{2m+1} = F_m^2 + F_{m+1}^2
        c = a * (2 * b - a)
        d = a * a + b * b
        if bit == "1":
            a, b = d, c + d
        else:
            a, b = c, d
    return a, b


def fib(i: int) -> int:
    """F_i for any signed index, via F_{-n} = (-1)^{n+1} F_n."""
    n = -i if i < 0 else i
    value = _FIB_CACHE.get(n)
    if value is None:
        value = _fib_pair(n)[0]
        if n <= 4096:
            _FIB_CACHE[n] = value
    if i < 0 and n % 2 == 0:
        return -value
    return value


def hofstadter_g(x: int) -> int:
    """G(x) = floor((x+1)/phi), computed exactly with an integer square root.

    floor((x+1)(sqrt(5)-1)/2) = (isqrt(5(x+1)^2) - (x+1)) // 2 because
    (x+1)*sqrt(5) is irrational for x >= 0.
    """
    if x < 0:
        raise ValueError("hofstadter_g is defined for x >= 0")
    y = x + 1
    return (isqrt(5 * y * y) - y) // 2


class BitString:
    """Immutable low-to-high bit sequence (index 1 = coefficient of F_2)."""

    __slots__ = ("bits",)

    def __init__(self, bits: Iterable[int] = ()):
        bits = tuple(bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError("bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("BitString is immutable")

    @classmethod
    def from_text(cls, text: str) -> "BitString":
        """Parse the canonical rendering, e.g. '101' -> <1 0 1>."""
        return cls(int(ch) for ch in text.strip())

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)

    def __getitem__(self, i: int) -> int:
        return self.bits[i]

    def bit(self, i: int) -> int:
        """1-based access: bit(1) is the least significant bit."""
        if not 1 <= i <= len(self.bits):
            raise IndexError(f"bit index {i} out of range 1..{len(self.bits)}")
        return self.bits[i - 1]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BitString) and self.bits == other.bits

    def __hash__(self) -> int:
        return hash(self.bits)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)

    def __repr__(self) -> str:
        return f"BitString({str(self)!r})"

    def up_shift(self, i: int) -> "BitString":
        """Insert i zero bits at the low end (multiplies weights by phi-step)."""
        if i < 0:
            raise ValueError("shift count must be >= 0")
        return BitString((0,) * i + self.bits)

    def down_shift(self, i: int) -> "BitString":
        """Drop the i lowest bits; shifting past the end yields the empty string."""
        if i < 0:
            raise ValueError("shift count must be >= 0")
        return BitString(self.bits[i:])

    def pad_to(self, length: int) -> "BitString":
        """Append most-significant zero bits up to exactly `length`."""
        if length < len(self.bits):
            raise ValueError(f"cannot pad length-{len(self.bits)} string to {length}")
        return BitString(self.bits + (0,) * (length - len(self.bits)))

    @property
    def is_zeckendorf(self) -> bool:
        """True for the empty string or: leading bit 1, no two adjacent 1s."""
        bits = self.bits
        if not bits:
            return True
        if bits[-1] != 1:
            return False
        return all(not (bits[i] and bits[i + 1]) for i in range(len(bits) - 1))


EMPTY = BitString()


def fib_sum(v: BitString | Iterable[int]) -> int:
    """Sum of bit_i * F_{i+1} over the string (the empty string sums to 0)."""
    total = 0
    a, b = 1, 2  # F_2, F_3
    for bit in v:
        if bit:
            total += a
        a, b = b, a + b
    return total


def zeckendorf_high_to_low(n: int) -> BitString:
    """Zeckendorf form of n by the greedy high-to-low algorithm."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return EMPTY
    # largest index m with F_m <= n, working over weights F_2..F_m
    fibs = [1, 2]  # F_2, F_3, ...
    while fibs[-1] <= n:
        fibs.append(fibs[-1] + fibs[-2])
    fibs.pop()
    bits = [0] * len(fibs)
    remaining = n
    for idx in range(len(fibs) - 1, -1, -1):
        if fibs[idx] <= remaining:
            bits[idx] = 1
            remaining -= fibs[idx]
    assert remaining == 0
    return BitString(bits)


# Open interval (phi^-2 : 1 - phi^-3) for the fractional part of v/phi decides
# bit 1.  Both endpoint tests reduce to integer square comparisons:
#   frac(v/phi) > phi^-2   <=>  5(v+1)^2 > (v + 2g + 3)^2
#   frac(v/phi) < 1-phi^-3 <=>  5(v+2)^2 < (v + 2g + 6)^2
# where g = floor(v/phi) = G(v-1).  Exact: no floats involved.
def _lowest_bit(v: int) -> int:
    g = hofstadter_g(v - 1)
    lo = v + 2 * g + 3
    if 5 * (v + 1) * (v + 1) <= lo * lo:
        return 0
    hi = v + 2 * g + 6
    if 5 * (v + 2) * (v + 2) >= hi * hi:
        return 0
    return 1


def zeckendorf_low_to_high(n: int) -> BitString:
    """Zeckendorf form of n determined one bit at a time, least significant first.

    Each step tests whether frac(n/phi) falls in the column-1 window of the
    extended Zeckendorf array, subtracts the bit, and down-shifts through the
    Hofstadter G function (G(n) - bit is the down-shifted value).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    bits = []
    while n > 0:
        b = _lowest_bit(n)
        bits.append(b)
        n = hofstadter_g(n) - b
    return BitString(bits)


def enumerate_fib_representations(n: int, max_len: int) -> set[BitString]:
    """All bit strings of length <= max_len whose fib_sum equals n.

    Bounded test oracle: max_len is capped at 40 and n at the largest
    representable sum F_{max_len+3} - 2.  Strings that differ only in
    trailing (most-significant) zeros are distinct.
    """
    if max_len < 0 or max_len > 40:
        raise ValueError("max_len must be in 0..40")
    if n > fib(max_len + 3) - 2:
        raise ValueError(f"n={n} exceeds the enumeration bound for max_len={max_len}")
    if n < 0:
        return set()

    weights = [fib(i + 1) for i in range(1, max_len + 1)]
    # suffix_total[i] = sum of weights[0..i]; prunes branches that cannot reach n
    totals = []
    acc = 0
    for w in weights:
        acc += w
        totals.append(acc)

    found: set[BitString] = set()

    def extend(idx: int, remaining: int, chosen: list[int]) -> None:
        if remaining == 0:
            core = tuple(chosen)
            top = max(core) if core else 0
            base = tuple(1 if i + 1 in chosen else 0 for i in range(top))
            for length in range(top, max_len + 1):
                found.add(BitString(base + (0,) * (length - top)))
            return
        if idx < 0 or remaining > totals[idx]:
            return
        if weights[idx] <= remaining:
            chosen.append(idx + 1)
            extend(idx - 1, remaining - weights[idx], chosen)
            chosen.pop()
        extend(idx - 1, remaining, chosen)

    extend(max_len - 1, n, [])
    return found
