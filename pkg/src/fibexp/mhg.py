"""Modular Hofstadter G solver.

Given (r, s, t), find a Hofstadter G pair (u, v) with u = s and v = t mod r.
The construction reduces the problem to finding a multiple of 1/phi inside
an open interval of width 1/r modulo 1; with h the least exponent for which
r < phi**h, one of two explicit candidates below F_{h+2} always works, which
also bounds v by F_{2h+2} - 2.  All interval tests are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError
from .fib import fib, hofstadter_g
from .golden import (
    PHI_INV,
    GoldenNumber,
    ModularInterval,
    least_phi_power_exceeding,
)

__all__ = [
    "MHGSolution",
    "find_w",
    "find_w_rational",
    "solve_mhg",
    "is_hg_pair",
]


def is_hg_pair(u: int, v: int) -> bool:
    """u = G(v)?  Both arguments must be >= 0."""
    if u < 0 or v < 0:
        raise ValidationError("Hofstadter G pairs need non-negative entries")
    return hofstadter_g(v) == u


@dataclass(frozen=True)
class _Candidates:
    h: int
    j: int
    w_lo: int
    w_hi: int
    w: int
    fell_back: bool = False


def _candidate_pair(h: int, j: int) -> tuple[int, int]:
    f_h2 = fib(h + 2)
    if h % 2 == 0:
        w_lo = j * fib(h + 1) % f_h2
        w_hi = (j + 1) * fib(h + 1) % f_h2
    else:
        w_lo = j * fib(h) % f_h2
        w_hi = (j - 1) * fib(h) % f_h2
    return w_lo, w_hi


def _target_interval(r: int, gamma: GoldenNumber) -> ModularInterval:
    return ModularInterval(gamma, gamma + Fraction(1, r), 1)


def _check_gamma(gamma: GoldenNumber) -> GoldenNumber:
    gamma = GoldenNumber._coerce(gamma)
    if gamma.sign() < 0 or gamma >= 1:
        raise ValidationError("gamma must lie in [0, 1)")
    return gamma


def _find_w_exact(r: int, gamma: GoldenNumber) -> _Candidates:
    if r < 1:
        raise ValidationError("r must be >= 1")
    gamma = _check_gamma(gamma)
    h = least_phi_power_exceeding(r)
    # smallest grid point j/F_{h+2} strictly above gamma: equals
    # ceil(gamma*F_{h+2}) except when the product is an integer (possible only
    # for rational gamma), where the ceiling would land on the open endpoint
    j = (gamma * fib(h + 2)).floor() + 1
    w_lo, w_hi = _candidate_pair(h, j)
    interval = _target_interval(r, gamma)
    w = w_lo if interval.contains(PHI_INV * w_lo) else w_hi
    return _Candidates(h, j, w_lo, w_hi, w)


def find_w(r: int, gamma: GoldenNumber) -> int:
    """Some w in [0, F_{h+2} - 1] with frac(w/phi) inside (gamma : gamma + 1/r) mod 1.

    Tries the low candidate and falls through to the high one, whose
    membership is guaranteed by the two-interval overlap argument.
    """
    return _find_w_exact(r, gamma).w


def _gamma_for(r: int, s: int, t: int) -> GoldenNumber:
    return ((GoldenNumber(s) - PHI_INV * (t + 1)) / r).frac_mod(1)


def _find_w_rational(r: int, s: int, t: int) -> _Candidates:
    """Integer-only candidate selection: 1/phi is approximated by
    F_{h+1}/F_{h+2} when computing j.  Both candidates are still validated
    with the exact membership test; if neither passes, fall back to the
    exact construction and record it."""
    if r < 1:
        raise ValidationError("r must be >= 1")
    h = least_phi_power_exceeding(r)
    f_h2 = fib(h + 2)
    numerator = s * f_h2 - (t + 1) * fib(h + 1)
    j = -(-numerator // r) % f_h2
    w_lo, w_hi = _candidate_pair(h, j)
    gamma = _gamma_for(r, s, t)
    interval = _target_interval(r, gamma)
    for w in (w_lo, w_hi):
        if interval.contains(PHI_INV * w):
            return _Candidates(h, j, w_lo, w_hi, w)
    return _Candidates(h, j, w_lo, w_hi, find_w(r, gamma), fell_back=True)


def find_w_rational(r: int, s: int, t: int) -> int:
    return _find_w_rational(r, s, t).w


@dataclass(frozen=True)
class MHGSolution:
    """A certified solution of the modular problem, with its search data.

    Invariants: u = G(v); u = s and v = t (mod r); v = w*r + t with
    0 <= w <= F_{h+2} - 1; v <= F_{2h+2} - 2.  Minimality of w or v is not
    claimed.
    """

    r: int
    s: int
    t: int
    u: int
    v: int
    w: int
    h: int
    j: int
    w_lo: int
    w_hi: int
    rational_fallback: bool = False

    def checks(self) -> dict[str, bool]:
        return {
            "congruent_s": self.u % self.r == self.s,
            "congruent_t": self.v % self.r == self.t,
            "hg_pair": is_hg_pair(self.u, self.v),
            "bound": self.v <= fib(2 * self.h + 2) - 2,
        }


def solve_mhg(r: int, s: int, t: int, *, rational: bool = False) -> MHGSolution:
    """Solve MHG(r, s, t): gamma = frac((s - (t+1)/phi)/r), w from find_w,
    v = w*r + t, u = G(v)."""
    if r < 1:
        raise ValidationError("r must be >= 1")
    if not (0 <= s < r and 0 <= t < r):
        raise ValidationError("s and t must lie in [0, r-1]")
    if rational:
        found = _find_w_rational(r, s, t)
    else:
        found = _find_w_exact(r, _gamma_for(r, s, t))
    v = found.w * r + t
    u = hofstadter_g(v)
    return MHGSolution(
        r, s, t, u, v, found.w, found.h, found.j, found.w_lo, found.w_hi,
        rational_fallback=found.fell_back,
    )
