"""Reversible register machine over group elements.

Programs are straight-line instruction sequences (conditional bits are
resolved at compile time), every instruction has an exact inverse, and
execution can capture a per-instruction trace.  The "iteration" count of a
program is its number of Fibonacci chain steps (FIB_STEP / FIB_STEP_INV);
multiplications and permutations are reported separately.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Sequence

from .errors import ValidationError
from .groups import Backend, GroupElement, GroupSpec

__all__ = [
    "Op",
    "Instruction",
    "ReversibleProgram",
    "MachineState",
    "TraceRow",
    "ExecutionResult",
    "ResourceProfile",
    "IdentityInversionError",
    "fib_step",
    "fib_step_inv",
    "mul",
    "mul_inv",
    "mul_const",
    "mul_const_inv",
    "permute",
    "execute",
    "invert",
    "resource_profile",
    "render_trace_table",
    "trace_to_jsonl",
]


class IdentityInversionError(RuntimeError):
    """A debug-mode run inverted the group identity, which targeted runs never do."""


class Op(Enum):
    FIB_STEP = "FIB_STEP"  # (Ri, Rj) <- (Rj, Ri*Rj)
    FIB_STEP_INV = "FIB_STEP_INV"  # (Ri, Rj) <- (Ri^-1*Rj, Ri)
    MUL = "MUL"  # Rt <- Rs*Rt
    MUL_INV = "MUL_INV"  # Rt <- Rs^-1*Rt
    MUL_CONST = "MUL_CONST"  # Rt <- g*Rt
    MUL_CONST_INV = "MUL_CONST_INV"  # Rt <- g^-1*Rt
    PERMUTE = "PERMUTE"  # registers[i] <- registers[perm[i]]


_INVERSE_OP = {
    Op.FIB_STEP: Op.FIB_STEP_INV,
    Op.FIB_STEP_INV: Op.FIB_STEP,
    Op.MUL: Op.MUL_INV,
    Op.MUL_INV: Op.MUL,
    Op.MUL_CONST: Op.MUL_CONST_INV,
    Op.MUL_CONST_INV: Op.MUL_CONST,
}


@dataclass(frozen=True)
class Instruction:
    op: Op
    args: tuple[int, ...] = ()
    const: GroupElement | None = None
    phase: str = ""
    loop_i: int | None = None
    bit: int | None = None

    def inverse(self) -> "Instruction":
        if self.op is Op.PERMUTE:
            inv = [0] * len(self.args)
            for slot, src in enumerate(self.args):
                inv[src] = slot
            return replace(self, args=tuple(inv))
        return replace(self, op=_INVERSE_OP[self.op])

    def __str__(self) -> str:
        if self.op in (Op.MUL_CONST, Op.MUL_CONST_INV):
            return f"{self.op.value}({self.args[0]}, {self.const.value})"
        return f"{self.op.value}({', '.join(map(str, self.args))})"


def fib_step(i: int, j: int, **notes) -> Instruction:
    return Instruction(Op.FIB_STEP, (i, j), **notes)


def fib_step_inv(i: int, j: int, **notes) -> Instruction:
    return Instruction(Op.FIB_STEP_INV, (i, j), **notes)


def mul(t: int, s: int, **notes) -> Instruction:
    return Instruction(Op.MUL, (t, s), **notes)


def mul_inv(t: int, s: int, **notes) -> Instruction:
    return Instruction(Op.MUL_INV, (t, s), **notes)


def mul_const(t: int, g: GroupElement, **notes) -> Instruction:
    return Instruction(Op.MUL_CONST, (t,), const=g, **notes)


def mul_const_inv(t: int, g: GroupElement, **notes) -> Instruction:
    return Instruction(Op.MUL_CONST_INV, (t,), const=g, **notes)


def permute(perm: Sequence[int], **notes) -> Instruction:
    perm = tuple(perm)
    if sorted(perm) != list(range(len(perm))):
        raise ValidationError(f"{perm} is not a permutation")
    return Instruction(Op.PERMUTE, perm, **notes)


@dataclass(frozen=True)
class ReversibleProgram:
    register_count: int
    instructions: tuple[Instruction, ...]

    def __post_init__(self):
        for ins in self.instructions:
            if ins.op is Op.PERMUTE:
                if len(ins.args) != self.register_count:
                    raise ValidationError("permutation size != register count")
            elif any(r >= self.register_count or r < 0 for r in ins.args):
                raise ValidationError(f"register index out of range in {ins}")

    def __len__(self) -> int:
        return len(self.instructions)

    def inverse(self) -> "ReversibleProgram":
        return ReversibleProgram(
            self.register_count,
            tuple(ins.inverse() for ins in reversed(self.instructions)),
        )


def invert(program: ReversibleProgram) -> ReversibleProgram:
    """Run-in-reverse construction: reversed order, each instruction inverted."""
    return program.inverse()


@dataclass(frozen=True)
class ResourceProfile:
    registers: int
    iterations: int  # Fibonacci chain steps
    multiplications: int  # MUL/MUL_INV/MUL_CONST/MUL_CONST_INV
    permutations: int


def resource_profile(program: ReversibleProgram) -> ResourceProfile:
    iterations = multiplications = permutations = 0
    for ins in program.instructions:
        if ins.op in (Op.FIB_STEP, Op.FIB_STEP_INV):
            iterations += 1
        elif ins.op is Op.PERMUTE:
            permutations += 1
        else:
            multiplications += 1
    return ResourceProfile(program.register_count, iterations, multiplications, permutations)


@dataclass(frozen=True)
class MachineState:
    registers: tuple[GroupElement, ...]

    @classmethod
    def of(cls, group: GroupSpec, values: Iterable[int]) -> "MachineState":
        return cls(tuple(GroupElement(group, v) for v in values))

    @property
    def group(self) -> GroupSpec:
        return self.registers[0].group

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(e.value for e in self.registers)


@dataclass(frozen=True)
class TraceRow:
    step: int  # 0 = initial state
    instruction: Instruction | None
    registers: tuple[GroupElement, ...]

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(e.value for e in self.registers)


@dataclass(frozen=True)
class ExecutionResult:
    state: MachineState
    trace: tuple[TraceRow, ...] | None = None


def execute(
    program: ReversibleProgram,
    initial: MachineState,
    *,
    capture_trace: bool = False,
    forbid_identity_inversion: bool = False,
) -> ExecutionResult:
    """Deterministic sequential run; the trace has one row per instruction
    plus the initial row."""
    if len(initial.registers) != program.register_count:
        raise ValidationError(
            f"program wants {program.register_count} registers, state has {len(initial.registers)}"
        )
    group = initial.group
    if any(e.group != group for e in initial.registers):
        raise ValidationError("all registers must belong to one group")

    regs = list(initial.values)
    op_raw = group.op_raw
    inv_raw = group.inv_raw
    guard = group.is_identity_raw if forbid_identity_inversion else None

    trace: list[TraceRow] | None = None
    if capture_trace:
        trace = [TraceRow(0, None, tuple(GroupElement(group, v) for v in regs))]

    for step, ins in enumerate(program.instructions, start=1):
        op = ins.op
        if op is Op.FIB_STEP:
            i, j = ins.args
            ri = regs[i]
            regs[i] = regs[j]
            regs[j] = op_raw(ri, regs[j])
        elif op is Op.FIB_STEP_INV:
            i, j = ins.args
            ri = regs[i]
            if guard is not None and guard(ri):
                raise IdentityInversionError(f"step {step}: {ins} inverts the identity")
            regs[i] = op_raw(inv_raw(ri), regs[j])
            regs[j] = ri
        elif op is Op.MUL:
            t, s = ins.args
            regs[t] = op_raw(regs[s], regs[t])
        elif op is Op.MUL_INV:
            t, s = ins.args
            if guard is not None and guard(regs[s]):
                raise IdentityInversionError(f"step {step}: {ins} inverts the identity")
            regs[t] = op_raw(inv_raw(regs[s]), regs[t])
        elif op is Op.MUL_CONST:
            regs[ins.args[0]] = op_raw(ins.const.value, regs[ins.args[0]])
        elif op is Op.MUL_CONST_INV:
            if guard is not None and guard(ins.const.value):
                raise IdentityInversionError(f"step {step}: {ins} inverts the identity")
            regs[ins.args[0]] = op_raw(inv_raw(ins.const.value), regs[ins.args[0]])
        elif op is Op.PERMUTE:
            regs = [regs[src] for src in ins.args]
        else:  # pragma: no cover
            raise AssertionError(f"unhandled op {op}")
        if trace is not None:
            trace.append(TraceRow(step, ins, tuple(GroupElement(group, v) for v in regs)))

    state = MachineState(tuple(GroupElement(group, v) for v in regs))
    return ExecutionResult(state, tuple(trace) if trace is not None else None)


_REGISTER_NAMES = "cdef"


def _register_labels(n: int, exponent_view: bool) -> list[str]:
    names = [_REGISTER_NAMES[i] if i < len(_REGISTER_NAMES) else f"r{i}" for i in range(n)]
    return [f"{name} exp." if exponent_view else name for name in names]


def _loop_rows(trace: Sequence[TraceRow]) -> list[tuple[str, str, TraceRow]]:
    """Collapse the instruction-level trace to one row per compile-time loop
    iteration (the last machine state of each (phase, loop_i) group)."""
    rows: list[tuple[str, str, TraceRow]] = []
    key = None
    for row in trace[1:]:
        ins = row.instruction
        if ins.loop_i is None:
            key = None
            continue
        this_key = (ins.phase, ins.loop_i)
        bit = "-" if ins.bit is None else str(ins.bit)
        if this_key == key:
            rows[-1] = (str(ins.loop_i), bit, row)
        else:
            rows.append((str(ins.loop_i), bit, row))
            key = this_key
    return rows


def render_trace_table(
    trace: Sequence[TraceRow], *, title: str, exponent_view: bool
) -> str:
    """Aligned-column text table: one row per loop iteration, initial row first."""
    n = len(trace[0].registers)
    header = ["i", "bit"] + _register_labels(n, exponent_view)
    body = [["---", "---"] + [str(v) for v in trace[0].values]]
    for i_label, bit_label, row in _loop_rows(trace):
        body.append([i_label, bit_label] + [str(v) for v in row.values])
    widths = [
        max(len(header[col]), max(len(line[col]) for line in body))
        for col in range(len(header))
    ]
    lines = [title]
    lines.append("  ".join(header[col].rjust(widths[col]) for col in range(len(header))))
    for line in body:
        lines.append("  ".join(line[col].rjust(widths[col]) for col in range(len(header))))
    return "\n".join(lines) + "\n"


def trace_to_jsonl(trace: Sequence[TraceRow]) -> str:
    """One JSON object per line: {step, instr, phase?, i?, bit?, registers[], exponents[]?}."""
    group = trace[0].registers[0].group
    symbolic = group.backend is Backend.SYMBOLIC
    lines = []
    for row in trace:
        ins = row.instruction
        record: dict = {
            "step": row.step,
            "instr": None if ins is None else str(ins),
        }
        if ins is not None:
            if ins.phase:
                record["phase"] = ins.phase
            if ins.loop_i is not None:
                record["i"] = ins.loop_i
            if ins.bit is not None:
                record["bit"] = ins.bit
        record["registers"] = [str(group.canonical(v)) for v in row.values]
        if symbolic:
            record["exponents"] = [str(v) for v in row.values]
        lines.append(json.dumps(record))
    return "\n".join(lines) + "\n"
