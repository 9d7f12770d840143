"""Command-line front end.

Subcommands: exp, trace, solve-mhg, locate, zeck, profile.  Output is
deterministic given the flags (profile takes an explicit --seed) and big
integers are rendered as decimal strings in JSON.  Exit codes: 0 success,
2 validation error, 1 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from statistics import mean

from .algorithms import (
    Approach,
    TargetedRequest,
    anderson_pair_exp,
    fib_exp,
    fib_exp_dual,
    hgp_exp,
    reverse_fib_exp_start,
    targeted,
)
from .errors import ValidationError
from .fib import zeckendorf_high_to_low, zeckendorf_low_to_high
from .golden import ceil_log_phi_abs
from .groups import (
    Backend,
    GroupSpec,
    oracle_pow,
    parse_group_spec,
    random_group_instance,
)
from .machine import (
    MachineState,
    execute,
    render_trace_table,
    resource_profile,
    trace_to_jsonl,
)
from .mhg import solve_mhg
from .zeckarray import delta, locate

_APPROACHES = {a.value: a for a in Approach}

_NOMINAL = {
    Approach.BASIC: "3 x 4h",
    Approach.DUAL: "4 x 2h",
    Approach.HYBRID: "3 x 3h",
    Approach.HYBRID_EVEN: "3 x ~3h",
    Approach.HYBRID_MHG: "3 x ~3h",
}


def _print_pairs(pairs: list[tuple[str, str]]) -> None:
    for key, value in pairs:
        print(f"{key}: {value}")


def _emit(args, table_pairs, record) -> None:
    if args.format == "json":
        print(json.dumps(record))
    elif args.format == "jsonl":
        print(json.dumps(record))
    else:
        _print_pairs(table_pairs)


# -- exp ------------------------------------------------------------------


def cmd_exp(args) -> int:
    group = parse_group_spec(args.group)
    request = TargetedRequest(group, group.base(), args.k, _APPROACHES[args.approach])
    result, program = targeted(request)
    profile = resource_profile(program)
    expected = oracle_pow(group.base(), args.k)
    check = result == expected
    record = {
        "group": group.describe(),
        "approach": args.approach,
        "k": str(args.k),
        "result": str(result.canonical),
        "registers": profile.registers,
        "iterations": profile.iterations,
        "multiplications": profile.multiplications,
        "h": request.h,
        "oracle_check": check,
    }
    pairs = [(key, str(value)) for key, value in record.items()]
    pairs[-1] = ("oracle check", "PASS" if check else "FAIL")
    _emit(args, pairs, record)
    if not check:
        print("internal error: result disagrees with the square-and-multiply oracle", file=sys.stderr)
        return 1
    return 0


# -- trace ------------------------------------------------------------------


def _trace_setup(args, group: GroupSpec):
    """(program, initial state, title) for the requested algorithm."""
    base = group.base()
    one = group.identity().value
    if args.algo == "hgpexp":
        if args.v is None:
            raise ValidationError("hgpexp needs --v")
        _, program = hgp_exp(base, args.v)
        return program, (base.value, one, one), f"hgp-exp trace: v = {args.v}"
    if args.algo == "fibexp":
        if args.k is None:
            raise ValidationError("fibexp needs --k")
        kappa = zeckendorf_high_to_low(args.k)
        _, program = fib_exp(base, kappa)
        return program, (one, base.value, one), f"fib-exp trace: k = {args.k}"
    if args.algo == "fibexp-rev":
        if args.k_inv is None:
            raise ValidationError("fibexp-rev needs --k-inv")
        kappa, _, exponents = reverse_fib_exp_start(group, base, args.k_inv)
        _, forward = fib_exp(base, kappa)
        program = forward.inverse()
        if group.backend is Backend.SYMBOLIC:
            start = exponents
        else:
            start = tuple(oracle_pow(base, e).value for e in exponents)
        return program, start, f"fib-exp reverse trace: k_inv = {args.k_inv}"
    if args.algo == "fibexpdual":
        if args.s is None or args.t is None:
            raise ValidationError("fibexpdual needs --s and --t")
        sigma = zeckendorf_high_to_low(args.s)
        tau = zeckendorf_high_to_low(args.t)
        width = max(len(sigma), len(tau))
        sigma, tau = sigma.pad_to(width), tau.pad_to(width)
        _, program = fib_exp_dual(base, sigma, tau)
        return program, (one, base.value, one, one), f"fib-exp-dual trace: s = {args.s}, t = {args.t}"
    if args.algo == "anderson":
        if args.u is None or args.v is None:
            raise ValidationError("anderson needs --u and --v")
        _, program = anderson_pair_exp(base, args.u, args.v)
        return program, (base.value, one, one), f"anderson pair trace: u = {args.u}, v = {args.v}"
    raise ValidationError(f"unknown algorithm {args.algo!r}")


def cmd_trace(args) -> int:
    group = parse_group_spec(args.group)
    program, start, title = _trace_setup(args, group)
    run = execute(program, MachineState.of(group, start), capture_trace=True)
    if args.format == "table":
        sys.stdout.write(
            render_trace_table(
                run.trace,
                title=title,
                exponent_view=group.backend is Backend.SYMBOLIC,
            )
        )
    elif args.format == "jsonl":
        sys.stdout.write(trace_to_jsonl(run.trace))
    else:
        rows = [json.loads(line) for line in trace_to_jsonl(run.trace).splitlines()]
        print(json.dumps({"title": title, "rows": rows}))
    return 0


# -- solve-mhg -----------------------------------------------------------------


def cmd_solve_mhg(args) -> int:
    solution = solve_mhg(args.r, args.s, args.t, rational=args.rational)
    checks = solution.checks()
    record = {
        "u": str(solution.u),
        "v": str(solution.v),
        "w": str(solution.w),
        "h": solution.h,
        "j": str(solution.j),
        "w_lo": str(solution.w_lo),
        "w_hi": str(solution.w_hi),
        "rational_fallback": solution.rational_fallback,
        "checks": checks,
    }
    pairs = [(k, str(v)) for k, v in record.items() if k != "checks"]
    pairs.append(("checks", " ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in checks.items())))
    _emit(args, pairs, record)
    return 0 if all(checks.values()) else 1


# -- locate ---------------------------------------------------------------------


def cmd_locate(args) -> int:
    location = locate(args.u, args.v)
    gap = delta(args.u, args.v)
    record = {
        "column": location.column,
        "row": str(location.row),
        "delta": gap.json_dict(),
        "m": ceil_log_phi_abs(gap),
    }
    pairs = [
        ("column", str(location.column)),
        ("row", str(location.row)),
        ("delta", str(gap)),
        ("m", str(record["m"])),
    ]
    _emit(args, pairs, record)
    return 0


# -- zeck ------------------------------------------------------------------------


def cmd_zeck(args) -> int:
    bits = zeckendorf_low_to_high(args.n) if args.low_to_high else zeckendorf_high_to_low(args.n)
    record = {
        "n": str(args.n),
        "bits": str(bits),
        "length": len(bits),
        "order": "low-to-high" if args.low_to_high else "high-to-low",
    }
    _emit(args, [(k, str(v)) for k, v in record.items()], record)
    return 0


# -- profile -----------------------------------------------------------------------


def cmd_profile(args) -> int:
    names = [name for name in args.approaches.split(",") if name]
    if not names:
        raise ValidationError("no approaches requested")
    for name in names:
        if name not in _APPROACHES:
            raise ValidationError(f"unknown approach {name!r}")
    rng = random.Random(args.seed)
    instances = [
        random_group_instance(rng, args.r_bits, Backend.SYMBOLIC)
        for _ in range(args.trials)
    ]
    rows = []
    for name in names:
        approach = _APPROACHES[name]
        iterations = []
        registers = set()
        h_values = []
        for group, k in instances:
            request = TargetedRequest(group, group.base(), k, approach)
            _, program = targeted(request)
            profile = resource_profile(program)
            iterations.append(profile.iterations)
            registers.add(profile.registers)
            h_values.append(request.h)
        rows.append(
            {
                "approach": name,
                "registers": max(registers),
                "iterations_mean": round(mean(iterations), 1),
                "iterations_max": max(iterations),
                "h_mean": round(mean(h_values), 1),
                "nominal": _NOMINAL[approach],
            }
        )
    if args.format in ("json", "jsonl"):
        payload = {"r_bits": args.r_bits, "trials": args.trials, "seed": args.seed, "rows": rows}
        if args.format == "json":
            print(json.dumps(payload))
        else:
            for row in rows:
                print(json.dumps(row))
        return 0
    print(f"profile over {args.trials} instances, r_bits={args.r_bits}, seed={args.seed}")
    header = ["approach", "registers", "iter_mean", "iter_max", "h_mean", "nominal"]
    table = [header] + [
        [
            row["approach"],
            str(row["registers"]),
            str(row["iterations_mean"]),
            str(row["iterations_max"]),
            str(row["h_mean"]),
            row["nominal"],
        ]
        for row in rows
    ]
    widths = [max(len(line[col]) for line in table) for col in range(len(header))]
    for line in table:
        print("  ".join(line[col].ljust(widths[col]) for col in range(len(header))).rstrip())
    return 0


# -- parser --------------------------------------------------------------------------


def _add_format(parser: argparse.ArgumentParser, default: str = "table") -> None:
    parser.add_argument("--format", choices=("table", "json", "jsonl"), default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fibexp",
        description="Targeted Fibonacci-chain exponentiation on a reversible register machine",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_exp = sub.add_parser("exp", help="targeted exponentiation with an oracle cross-check")
    p_exp.add_argument("--group", required=True, help="mod:p=..,r=..,a=.. or sym:r=..")
    p_exp.add_argument("--k", type=int, required=True)
    p_exp.add_argument("--approach", choices=sorted(_APPROACHES), default="hybrid")
    _add_format(p_exp)
    p_exp.set_defaults(func=cmd_exp)

    p_trace = sub.add_parser("trace", help="step-by-step trace of one algorithm")
    p_trace.add_argument("--group", required=True)
    p_trace.add_argument(
        "--algo",
        choices=("fibexp", "fibexp-rev", "fibexpdual", "hgpexp", "anderson"),
        required=True,
    )
    p_trace.add_argument("--k", type=int)
    p_trace.add_argument("--k-inv", dest="k_inv", type=int)
    p_trace.add_argument("--v", type=int)
    p_trace.add_argument("--s", type=int)
    p_trace.add_argument("--t", type=int)
    p_trace.add_argument("--u", type=int)
    _add_format(p_trace)
    p_trace.set_defaults(func=cmd_trace)

    p_mhg = sub.add_parser("solve-mhg", help="solve the modular Hofstadter G problem")
    p_mhg.add_argument("--r", type=int, required=True)
    p_mhg.add_argument("--s", type=int, required=True)
    p_mhg.add_argument("--t", type=int, required=True)
    p_mhg.add_argument("--rational", action="store_true")
    _add_format(p_mhg, default="json")
    p_mhg.set_defaults(func=cmd_solve_mhg)

    p_locate = sub.add_parser("locate", help="locate a pair in the extended Zeckendorf array")
    p_locate.add_argument("--u", type=int, required=True)
    p_locate.add_argument("--v", type=int, required=True)
    _add_format(p_locate, default="json")
    p_locate.set_defaults(func=cmd_locate)

    p_zeck = sub.add_parser("zeck", help="Zeckendorf representation of n")
    p_zeck.add_argument("--n", type=int, required=True)
    p_zeck.add_argument("--low-to-high", dest="low_to_high", action="store_true")
    _add_format(p_zeck, default="json")
    p_zeck.set_defaults(func=cmd_zeck)

    p_profile = sub.add_parser("profile", help="measured register x iteration profiles")
    p_profile.add_argument("--r-bits", dest="r_bits", type=int, required=True)
    p_profile.add_argument(
        "--approaches",
        default=",".join(sorted(_APPROACHES)),
        help="comma-separated approach list",
    )
    p_profile.add_argument("--trials", type=int, default=20)
    p_profile.add_argument("--seed", type=int, default=0)
    _add_format(p_profile)
    p_profile.set_defaults(func=cmd_profile)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
