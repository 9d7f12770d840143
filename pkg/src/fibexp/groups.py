"""Finite-group abstraction with two backends.

MOD_MUL is the multiplicative group mod a prime p, restricted to a base of
certified order r.  SYMBOLIC is the exponent-tracking oracle: an element is
an integer exponent, the group law is addition, and two elements are equal
when they agree mod r.  Symbolic elements keep their *raw* (unreduced)
exponent so traces can show intermediate values such as -8055 verbatim;
``canonical`` reduces into [0, r).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .errors import BackendMismatchError, NotInvertibleError, ValidationError

__all__ = [
    "Backend",
    "GroupSpec",
    "GroupElement",
    "symbolic_group",
    "mod_mul_group",
    "mod_inverse",
    "oracle_pow",
    "parse_group_spec",
    "DEFAULT_TRIPLES",
    "random_group_instance",
]


class Backend(Enum):
    MOD_MUL = "mod"
    SYMBOLIC = "sym"


def mod_inverse(k: int, r: int) -> int:
    """k^-1 mod r in [1, r-1]; NotInvertibleError when gcd(k, r) != 1."""
    if r < 1:
        raise ValidationError("modulus must be positive")
    try:
        return pow(k, -1, r)
    except ValueError:
        raise NotInvertibleError(f"{k} is not invertible mod {r}") from None


@dataclass(frozen=True)
class GroupElement:
    group: "GroupSpec"
    value: int

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        if self.group != other.group:
            return False
        return self.group.eq_raw(self.value, other.value)

    def __hash__(self) -> int:
        return hash((self.group.backend, self.group.order, self.canonical))

    @property
    def canonical(self) -> int:
        return self.group.canonical(self.value)

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"GroupElement({self.group.backend.value}, {self.value})"


@dataclass(frozen=True)
class GroupSpec:
    backend: Backend
    order: int  # r
    modulus: int | None = None  # p, MOD_MUL only
    base_value: int = 1  # a

    # -- raw-value operations (hot path of the machine) --------------------

    def op_raw(self, x: int, y: int) -> int:
        if self.backend is Backend.MOD_MUL:
            return x * y % self.modulus
        return x + y

    def inv_raw(self, x: int) -> int:
        if self.backend is Backend.MOD_MUL:
            return pow(x, -1, self.modulus)
        return -x

    def eq_raw(self, x: int, y: int) -> bool:
        if self.backend is Backend.MOD_MUL:
            return x % self.modulus == y % self.modulus
        return (x - y) % self.order == 0

    def is_identity_raw(self, x: int) -> bool:
        if self.backend is Backend.MOD_MUL:
            return x % self.modulus == 1
        return x % self.order == 0

    def canonical(self, x: int) -> int:
        if self.backend is Backend.MOD_MUL:
            return x % self.modulus
        return x % self.order

    # -- element-level API --------------------------------------------------

    def element(self, value: int) -> GroupElement:
        if self.backend is Backend.MOD_MUL:
            value %= self.modulus
            if value == 0:
                raise ValidationError("0 is not a unit mod p")
        return GroupElement(self, value)

    def identity(self) -> GroupElement:
        return GroupElement(self, 1 if self.backend is Backend.MOD_MUL else 0)

    def base(self) -> GroupElement:
        return GroupElement(self, self.base_value)

    def _check(self, x: GroupElement) -> None:
        if x.group != self:
            raise BackendMismatchError("element belongs to a different group")

    def op(self, x: GroupElement, y: GroupElement) -> GroupElement:
        self._check(x)
        self._check(y)
        return GroupElement(self, self.op_raw(x.value, y.value))

    def inverse(self, x: GroupElement) -> GroupElement:
        self._check(x)
        return GroupElement(self, self.inv_raw(x.value))

    def describe(self) -> str:
        if self.backend is Backend.MOD_MUL:
            return f"mod:p={self.modulus},r={self.order},a={self.base_value}"
        return f"sym:r={self.order}"


def symbolic_group(r: int) -> GroupSpec:
    if r < 1:
        raise ValidationError("group order must be >= 1")
    return GroupSpec(Backend.SYMBOLIC, r)


def mod_mul_group(
    p: int, r: int, a: int, r_factors: Iterable[int] | None = None
) -> GroupSpec:
    """Multiplicative group mod prime p with base a of certified order r.

    Certification needs the prime factors of r; if not supplied they are
    computed with sympy.  a must satisfy a^r = 1 and a^(r/q) != 1 for every
    prime q | r.
    """
    if p < 2 or not _is_prime(p):
        raise ValidationError(f"modulus {p} is not prime")
    if r < 1 or (p - 1) % r != 0:
        raise ValidationError(f"order {r} does not divide p-1 = {p - 1}")
    a %= p
    if a == 0:
        raise ValidationError("base must be a unit mod p")
    if pow(a, r, p) != 1:
        raise ValidationError(f"base {a} does not satisfy a^r = 1")
    factors = set(r_factors) if r_factors is not None else _prime_factors(r)
    for q in factors:
        if r % q != 0:
            raise ValidationError(f"{q} is not a factor of {r}")
        if pow(a, r // q, p) == 1:
            raise ValidationError(f"base {a} has order dividing {r // q}, not exactly {r}")
    return GroupSpec(Backend.MOD_MUL, r, p, a)


def _is_prime(n: int) -> bool:
    from sympy import isprime

    return bool(isprime(n))


def _prime_factors(n: int) -> set[int]:
    from sympy import factorint

    return set(factorint(n).keys())


def oracle_pow(x: GroupElement, k: int) -> GroupElement:
    """x**k by plain square-and-multiply over the group op.

    This is the independent reference used to check every Fibonacci-chain
    algorithm; it must never be implemented in terms of them.
    """
    g = x.group
    if k < 0:
        return oracle_pow(g.inverse(x), -k)
    acc = g.identity().value
    base = x.value
    while k:
        if k & 1:
            acc = g.op_raw(acc, base)
        base = g.op_raw(base, base)
        k >>= 1
    return GroupElement(g, acc)


def parse_group_spec(text: str) -> GroupSpec:
    """Parse 'mod:p=<p>,r=<r>,a=<a>' or 'sym:r=<r>'."""
    kind, _, rest = text.partition(":")
    fields: dict[str, int] = {}
    if rest:
        for piece in rest.split(","):
            key, _, val = piece.partition("=")
            if not val:
                raise ValidationError(f"bad group field {piece!r}")
            try:
                fields[key.strip()] = int(val)
            except ValueError:
                raise ValidationError(f"bad integer in group field {piece!r}") from None
    if kind == "sym":
        if set(fields) != {"r"}:
            raise ValidationError("symbolic group needs exactly r=<order>")
        return symbolic_group(fields["r"])
    if kind == "mod":
        if set(fields) != {"p", "r", "a"}:
            raise ValidationError("modular group needs p=<prime>,r=<order>,a=<base>")
        return mod_mul_group(fields["p"], fields["r"], fields["a"])
    raise ValidationError(f"unknown group kind {kind!r} (expected mod: or sym:)")


# Certified (p, r, a) triples for tests and quick experiments.  (359, 179, 4)
# matches the worked r=179 examples: 4 = 2^2 has order 179 in Z_359^*.
DEFAULT_TRIPLES: tuple[tuple[int, int, int], ...] = (
    (359, 179, 4),
    (101, 100, 2),
    (23, 11, 2),
    (7, 3, 2),
)


def _random_prime(rng: random.Random, bits: int) -> int:
    from sympy import isprime

    while True:
        candidate = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if isprime(candidate):
            return candidate


def random_group_instance(
    rng: random.Random, r_bits: int, backend: Backend = Backend.SYMBOLIC
) -> tuple[GroupSpec, int]:
    """A random group of prime order r (r_bits wide) and a valid exponent k."""
    if r_bits < 2:
        raise ValidationError("r_bits must be >= 2")
    from sympy import isprime

    r = _random_prime(rng, r_bits)
    k = rng.randrange(1, r)
    if backend is Backend.SYMBOLIC:
        return symbolic_group(r), k
    m = 2
    while not isprime(m * r + 1):
        m += 2
    p = m * r + 1
    while True:
        g = rng.randrange(2, p - 1)
        a = pow(g, (p - 1) // r, p)
        if a != 1:
            break
    return mod_mul_group(p, r, a, r_factors=(r,)), k
