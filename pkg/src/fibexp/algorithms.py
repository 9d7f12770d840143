"""Compilers from (group, exponent, approach) to reversible programs.

Each function builds a ReversibleProgram, runs it from the documented
initial state, and returns (result, program).  Every targeted approach ends
in machine state (identity, a^k, identity[, identity]).

Register conventions follow the three/four-register layouts: (c, d, e) are
registers 0, 1, 2 and f is register 3.  The high-to-low pair exponentiation
multiplies the base into e *before* each chain step; that order is what the
exponent recurrence u_i = v_{i+1} + bit_i, v_i = u_{i+1} + v_{i+1} + bit_i
requires, and what reproduces the worked r=179 traces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

from . import zeckarray
from .errors import ValidationError
from .fib import BitString, fib, fib_sum, zeckendorf_high_to_low
from .golden import least_phi_power_exceeding
from .groups import GroupElement, GroupSpec, mod_inverse
from .machine import (
    ExecutionResult,
    Instruction,
    MachineState,
    ReversibleProgram,
    execute,
    fib_step,
    fib_step_inv,
    mul,
    mul_const,
    mul_inv,
    permute,
)
from .mhg import solve_mhg

__all__ = [
    "Approach",
    "TargetedRequest",
    "fib_exp",
    "fib_exp_dual",
    "hgp_exp",
    "basic_targeted",
    "dual_targeted",
    "hybrid_targeted",
    "hybrid_even_targeted",
    "hybrid_via_mhg",
    "anderson_pair_exp",
    "targeted",
    "reverse_fib_exp_start",
]

RepresentFn = Callable[[int], BitString]


class Approach(Enum):
    BASIC = "basic"
    DUAL = "dual"
    HYBRID = "hybrid"
    HYBRID_EVEN = "hybrid-even"
    HYBRID_MHG = "hybrid-mhg"


@dataclass(frozen=True)
class TargetedRequest:
    """A targeted exponentiation problem: compute base**exponent garbage-free.

    The exponent must lie in [1, r-1] and be coprime to the group order r;
    `represent` maps an integer to the Fibonacci representation used for it
    (Zeckendorf by default, injectable for representation experiments).
    """

    group: GroupSpec
    base: GroupElement
    exponent: int
    approach: Approach = Approach.HYBRID
    represent: RepresentFn = field(default=zeckendorf_high_to_low)

    def __post_init__(self):
        if self.base.group != self.group:
            raise ValidationError("base element does not belong to the group")
        r = self.group.order
        if not 1 <= self.exponent <= r - 1:
            raise ValidationError(f"exponent must be in [1, {r - 1}]")
        mod_inverse(self.exponent, r)  # raises NotInvertibleError when gcd != 1

    @property
    def k_inv(self) -> int:
        return mod_inverse(self.exponent, self.group.order)

    @property
    def h(self) -> int:
        """Least positive h with r < phi**h."""
        return least_phi_power_exceeding(self.group.order)

    def _rep(self, n: int, max_len: int | None = None) -> BitString:
        rep = self.represent(n)
        if fib_sum(rep) != n:
            raise ValidationError(f"representation policy returned bits for {fib_sum(rep)}, not {n}")
        if max_len is not None and len(rep) > max_len:
            raise ValidationError(f"representation of {n} is {len(rep)} bits, limit {max_len}")
        return rep


def _run(program: ReversibleProgram, group: GroupSpec, values: tuple[int, ...]) -> ExecutionResult:
    return execute(program, MachineState.of(group, values))


# -- core chain compilers ----------------------------------------------------


def _fib_exp_forward(kappa: BitString, phase: str, chain=(0, 1), acc=2) -> list[Instruction]:
    """Low-to-high scan: chain step, then conditionally multiply d into e."""
    ins = []
    for i in range(1, len(kappa) + 1):
        bit = kappa.bit(i)
        ins.append(fib_step(*chain, phase=phase, loop_i=i, bit=bit))
        if bit:
            ins.append(mul(acc, chain[1], phase=phase, loop_i=i, bit=bit))
    return ins


def _fib_exp_reverse(kappa: BitString, phase: str, chain=(0, 1), acc=2) -> list[Instruction]:
    """Exact inverse of the forward scan, bit by bit from the top."""
    ins = []
    for i in range(len(kappa), 0, -1):
        bit = kappa.bit(i)
        if bit:
            ins.append(mul_inv(acc, chain[1], phase=phase, loop_i=i, bit=bit))
        ins.append(fib_step_inv(*chain, phase=phase, loop_i=i, bit=bit))
    return ins


def _chain_rewind(length: int, phase: str, chain=(0, 1)) -> list[Instruction]:
    return [fib_step_inv(*chain, phase=phase, loop_i=i) for i in range(length, 0, -1)]


def _chain_forward(length: int, phase: str, chain=(0, 1)) -> list[Instruction]:
    return [fib_step(*chain, phase=phase, loop_i=i) for i in range(1, length + 1)]


def _hgp_forward(beta: BitString, phase: str = "hgp-forward") -> list[Instruction]:
    """High-to-low scan over (c, d, e) = (base, pair): conditional e <- c*e,
    then (d, e) <- (e, d*e)."""
    ins = []
    for i in range(len(beta), 0, -1):
        bit = beta.bit(i)
        if bit:
            ins.append(mul(2, 0, phase=phase, loop_i=i, bit=bit))
        ins.append(fib_step(1, 2, phase=phase, loop_i=i, bit=bit))
    return ins


# -- plain (untargeted) algorithms -------------------------------------------


def fib_exp(a: GroupElement, kappa: BitString) -> tuple[GroupElement, ReversibleProgram]:
    """a**fib_sum(kappa) by the low-to-high scan; final registers
    (a^F_l, a^F_{l+1}, a^k)."""
    program = ReversibleProgram(3, tuple(_fib_exp_forward(kappa, "forward")))
    group = a.group
    result = _run(program, group, (group.identity().value, a.value, group.identity().value))
    return result.state.registers[2], program


def fib_exp_dual(
    a: GroupElement, sigma: BitString, tau: BitString
) -> tuple[tuple[GroupElement, GroupElement], ReversibleProgram]:
    """(a^s, a^t) in one pass over a shared chain; the two bit strings must
    already be padded to a common length."""
    if len(sigma) != len(tau):
        raise ValidationError("sigma and tau must have equal (padded) lengths")
    ins = []
    for i in range(1, len(sigma) + 1):
        s_bit, t_bit = sigma.bit(i), tau.bit(i)
        ins.append(fib_step(0, 1, phase="forward", loop_i=i, bit=s_bit))
        if s_bit:
            ins.append(mul(2, 1, phase="forward", loop_i=i, bit=s_bit))
        if t_bit:
            ins.append(mul(3, 1, phase="forward", loop_i=i, bit=t_bit))
    program = ReversibleProgram(4, tuple(ins))
    group = a.group
    one = group.identity().value
    result = _run(program, group, (one, a.value, one, one))
    regs = result.state.registers
    return (regs[2], regs[3]), program


def hgp_exp(
    a: GroupElement, v: int, representation: BitString | None = None
) -> tuple[tuple[GroupElement, GroupElement], ReversibleProgram]:
    """(a^G(v), a^v) by the high-to-low scan; any Fibonacci representation of
    v gives the same output pair."""
    if v < 0:
        raise ValidationError("v must be >= 0")
    beta = representation if representation is not None else zeckendorf_high_to_low(v)
    if fib_sum(beta) != v:
        raise ValidationError(f"bits sum to {fib_sum(beta)}, not {v}")
    program = ReversibleProgram(3, tuple(_hgp_forward(beta)))
    group = a.group
    one = group.identity().value
    result = _run(program, group, (a.value, one, one))
    regs = result.state.registers
    return (regs[1], regs[2]), program


# -- targeted approaches -------------------------------------------------------


def _finish(req: TargetedRequest, instructions: list[Instruction], registers: int,
            initial: tuple[int, ...]) -> tuple[GroupElement, ReversibleProgram]:
    program = ReversibleProgram(registers, tuple(instructions))
    final = execute(program, MachineState.of(req.group, initial))
    return final.state.registers[1], program


def basic_targeted(req: TargetedRequest) -> tuple[GroupElement, ReversibleProgram]:
    """Forward chain for k, rewind, swap, fast-forward, reverse chain for
    k^-1; profile 3 x ~4h."""
    kappa = req._rep(req.exponent)
    kappa_inv = req._rep(req.k_inv)
    ins = _fib_exp_forward(kappa, "forward")
    ins += _chain_rewind(len(kappa), "rewind")
    ins.append(permute((0, 2, 1), phase="swap"))
    ins += _chain_forward(len(kappa_inv), "fast-forward")
    ins += _fib_exp_reverse(kappa_inv, "reverse")
    one = req.group.identity().value
    return _finish(req, ins, 3, (one, req.base.value, one))


def dual_targeted(req: TargetedRequest) -> tuple[GroupElement, ReversibleProgram]:
    """Two dual chains matched at the midpoint; all four exponents are lifted
    by F_h / F_{h+1} and padded to exactly h bits; profile 4 x 2h."""
    r, k, h = req.group.order, req.exponent, req.h
    k_inv = req.k_inv
    f_h, f_h1 = fib(h), fib(h + 1)
    s, t = k * f_h % r, k * f_h1 % r
    s2, t2 = k_inv * f_h % r, k_inv * f_h1 % r
    sigma = req._rep(s, h).pad_to(h)
    tau = req._rep(t, h).pad_to(h)
    sigma2 = req._rep(s2, h).pad_to(h)
    tau2 = req._rep(t2, h).pad_to(h)

    ins: list[Instruction] = []
    for i in range(1, h + 1):
        ins.append(fib_step(0, 1, phase="forward", loop_i=i, bit=sigma.bit(i)))
        if sigma.bit(i):
            ins.append(mul(2, 1, phase="forward", loop_i=i, bit=1))
        if tau.bit(i):
            ins.append(mul(3, 1, phase="forward", loop_i=i, bit=1))
    ins.append(permute((2, 3, 0, 1), phase="swap"))
    for i in range(h, 0, -1):
        if tau2.bit(i):
            ins.append(mul_inv(3, 1, phase="reverse", loop_i=i, bit=1))
        if sigma2.bit(i):
            ins.append(mul_inv(2, 1, phase="reverse", loop_i=i, bit=1))
        ins.append(fib_step_inv(0, 1, phase="reverse", loop_i=i, bit=sigma2.bit(i)))
    one = req.group.identity().value
    return _finish(req, ins, 4, (one, req.base.value, one, one))


def _hybrid_ell(req: TargetedRequest, kappa_inv: BitString) -> int:
    """Smallest odd l' >= h that also covers the k^-1 representation."""
    ell = max(req.h, len(kappa_inv))
    return ell if ell % 2 == 1 else ell + 1


def hybrid_targeted(req: TargetedRequest) -> tuple[GroupElement, ReversibleProgram]:
    """High-to-low pair exponentiation of v = k*F_{l'+1} joined to a reverse
    low-to-high chain for k^-1; odd l' makes (k F_{l'}, k F_{l'+1}) a
    Hofstadter G pair; profile 3 x ~3h."""
    kappa_inv = req._rep(req.k_inv)
    ell = _hybrid_ell(req, kappa_inv)
    v = req.exponent * fib(ell + 1)
    ins = _hgp_forward(req._rep(v))
    ins.append(permute((1, 2, 0), phase="reorder"))
    ins += _fib_exp_reverse(kappa_inv.pad_to(ell), "reverse")
    one = req.group.identity().value
    return _finish(req, ins, 3, (req.base.value, one, one))


def hybrid_even_targeted(req: TargetedRequest) -> tuple[GroupElement, ReversibleProgram]:
    """Even-l' variant: (k F_{l'}, k F_{l'+1} - 1) is a Hofstadter G pair for
    0 < k < phi**(l'+1), so run the pair exponentiation on v = k F_{l'+1} - 1
    and fix up the second chain register with one multiplication by the base."""
    kappa_inv = req._rep(req.k_inv)
    # smallest even l' with k < phi**(l'+1) that covers the k^-1 representation
    ell = max(least_phi_power_exceeding(req.exponent) - 1, len(kappa_inv))
    if ell % 2 == 1:
        ell += 1
    v = req.exponent * fib(ell + 1) - 1
    ins = _hgp_forward(req._rep(v))
    ins.append(mul_const(2, req.base, phase="adjust"))
    ins.append(permute((1, 2, 0), phase="reorder"))
    ins += _fib_exp_reverse(kappa_inv.pad_to(ell), "reverse")
    one = req.group.identity().value
    return _finish(req, ins, 3, (req.base.value, one, one))


def hybrid_via_mhg(req: TargetedRequest) -> tuple[GroupElement, ReversibleProgram]:
    """Hybrid variant that only matches the join point modulo r: solve the
    modular Hofstadter G problem for (k F_{l'}, k F_{l'+1}) mod r and run the
    pair exponentiation on the congruent v."""
    kappa_inv = req._rep(req.k_inv)
    r, k = req.group.order, req.exponent
    ell = max(req.h, len(kappa_inv))
    s = k * fib(ell) % r
    t = k * fib(ell + 1) % r
    solution = solve_mhg(r, s, t)
    ins = _hgp_forward(req._rep(solution.v))
    ins.append(permute((1, 2, 0), phase="reorder"))
    ins += _fib_exp_reverse(kappa_inv.pad_to(ell), "reverse")
    one = req.group.identity().value
    return _finish(req, ins, 3, (req.base.value, one, one))


_DISPATCH = {
    Approach.BASIC: basic_targeted,
    Approach.DUAL: dual_targeted,
    Approach.HYBRID: hybrid_targeted,
    Approach.HYBRID_EVEN: hybrid_even_targeted,
    Approach.HYBRID_MHG: hybrid_via_mhg,
}


def targeted(req: TargetedRequest) -> tuple[GroupElement, ReversibleProgram]:
    return _DISPATCH[req.approach](req)


def anderson_pair_exp(
    a: GroupElement, u: int, v: int
) -> tuple[tuple[GroupElement, GroupElement], ReversibleProgram]:
    """(a^u, a^v) for any pair with v*phi + u > 0, in three registers.

    Pairs in the right half of the extended array (column >= 1) are
    Hofstadter G pairs and run the high-to-low scan directly; left-half
    pairs run the scan up to the column-1 transition pair and then precurse
    back with inverse chain steps."""
    location = zeckarray.locate(u, v)  # validates the pair
    j = location.column
    if j >= 1:
        beta = zeckendorf_high_to_low(v)
        ins = _hgp_forward(beta)
    else:
        steps = 1 - j
        u1, v1 = zeckarray.recurse_pair(u, v, steps)
        ins = _hgp_forward(zeckendorf_high_to_low(v1))
        ins += [
            fib_step_inv(1, 2, phase="precurse", loop_i=i)
            for i in range(1, steps + 1)
        ]
    program = ReversibleProgram(3, tuple(ins))
    group = a.group
    one = group.identity().value
    result = _run(program, group, (a.value, one, one))
    regs = result.state.registers
    return (regs[1], regs[2]), program


def reverse_fib_exp_start(
    group: GroupSpec, base: GroupElement, k_inv: int
) -> tuple[BitString, int, tuple[int, int, int]]:
    """Padded representation, l', and the (c, d, e) exponents that the hybrid
    approach hands to the reverse chain: (k F_{l'}, k F_{l'+1}, 1).

    Used to trace the reverse chain standalone, starting from the same state
    it sees inside the hybrid run."""
    r = group.order
    k = mod_inverse(k_inv, r)
    kappa_inv = zeckendorf_high_to_low(k_inv)
    ell = max(least_phi_power_exceeding(r), len(kappa_inv))
    if ell % 2 == 0:
        ell += 1
    return kappa_inv.pad_to(ell), ell, (k * fib(ell), k * fib(ell + 1), 1)
