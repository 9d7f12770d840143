import math
import random

import pytest

from fibexp.algorithms import (
    Approach,
    TargetedRequest,
    anderson_pair_exp,
    basic_targeted,
    dual_targeted,
    fib_exp,
    fib_exp_dual,
    hgp_exp,
    hybrid_even_targeted,
    hybrid_targeted,
    hybrid_via_mhg,
    reverse_fib_exp_start,
    targeted,
)
from fibexp.errors import NotInvertibleError, ValidationError
from fibexp.fib import (
    BitString,
    EMPTY,
    enumerate_fib_representations,
    fib,
    hofstadter_g,
    zeckendorf_high_to_low,
)
from fibexp.golden import floor_int, phi_power
from fibexp.groups import Backend, oracle_pow, random_group_instance, symbolic_group
from fibexp.machine import MachineState, execute, invert, resource_profile
from fibexp.mhg import is_hg_pair


def request(group, k, approach=Approach.HYBRID, **kw):
    return TargetedRequest(group, group.base(), k, approach, **kw)


def final_state(program, group, initial):
    return execute(program, MachineState.of(group, initial)).state


def phase_endpoints(program, group, initial):
    """Canonical register values at the last instruction of each phase."""
    run = execute(program, MachineState.of(group, initial), capture_trace=True)
    ends = {}
    for row in run.trace[1:]:
        ends[row.instruction.phase] = tuple(e.canonical for e in row.registers)
    return ends


# -- fib_exp ------------------------------------------------------------------


def test_fib_exp_empty(sym179):
    result, program = fib_exp(sym179.base(), EMPTY)
    assert result == sym179.identity()
    assert len(program) == 0


def test_fib_exp_mod101(mod101):
    result, program = fib_exp(mod101.base(), zeckendorf_high_to_low(7))
    assert result.value == 27
    assert result == oracle_pow(mod101.base(), 7)


def test_fib_exp_final_registers_and_iterations(sym179):
    kappa = zeckendorf_high_to_low(76)
    result, program = fib_exp(sym179.base(), kappa)
    profile = resource_profile(program)
    assert profile.iterations == len(kappa)
    state = final_state(program, sym179, (0, 1, 0))
    ell = len(kappa)
    assert state.values == (fib(ell), fib(ell + 1), 76)


def test_fib_exp_reverse_descends_through_known_states(sym179):
    kappa = zeckendorf_high_to_low(106).pad_to(11)
    _, forward = fib_exp(sym179.base(), kappa)
    run = execute(
        invert(forward),
        MachineState.of(sym179, (6764, 10944, 1)),
        capture_trace=True,
    )
    states = [row.values for row in run.trace]
    assert states[0] == (6764, 10944, 1)
    assert (4180, 6764, 1) in states
    assert (2584, 4180, -6763) in states
    assert states[-1] == (0, 76, -8055)


# -- fib_exp_dual -----------------------------------------------------------


def test_fib_exp_dual_duplicated_exponent(sym179):
    kappa = zeckendorf_high_to_low(60)
    single, _ = fib_exp(sym179.base(), kappa)
    (e, f), program = fib_exp_dual(sym179.base(), kappa, kappa)
    assert e == f == single
    assert resource_profile(program).registers == 4


def test_fib_exp_dual_zero_one(sym179):
    sigma = zeckendorf_high_to_low(0).pad_to(1)
    tau = zeckendorf_high_to_low(1)
    (e, f), _ = fib_exp_dual(sym179.base(), sigma, tau)
    assert e == sym179.identity()
    assert f == sym179.base()


def test_fib_exp_dual_lifted_pair(sym179):
    sigma = zeckendorf_high_to_low(141).pad_to(11)
    tau = zeckendorf_high_to_low(25).pad_to(11)
    (e, f), _ = fib_exp_dual(sym179.base(), sigma, tau)
    assert e.canonical == 141 and f.canonical == 25


def test_fib_exp_dual_length_mismatch(sym179):
    with pytest.raises(ValidationError):
        fib_exp_dual(sym179.base(), BitString((1,)), BitString((1, 0)))


# -- hgp_exp -------------------------------------------------------------------


def test_hgp_exp_trivial(sym179):
    (d, e), program = hgp_exp(sym179.base(), 0)
    assert d == e == sym179.identity()
    assert len(program) == 0
    (d, e), _ = hgp_exp(sym179.base(), 1)
    assert d == e == sym179.base()


def test_hgp_exp_main_example(sym179):
    (d, e), program = hgp_exp(sym179.base(), 10944)
    assert (d.value, e.value) == (6764, 10944)
    state = final_state(program, sym179, (1, 0, 0))
    assert state.values == (1, 6764, 10944)


def test_hgp_exp_rejects_wrong_bits(sym179):
    with pytest.raises(ValidationError):
        hgp_exp(sym179.base(), 5, representation=BitString((1,)))


def test_hgp_exp_representation_independence():
    group = symbolic_group(10**9)
    a = group.base()
    for v in list(range(0, 60)) + [144, 200, 233, 377, 500]:
        expected = (hofstadter_g(v), v)
        for rep in enumerate_fib_representations(v, 16):
            (d, e), _ = hgp_exp(a, v, representation=rep)
            assert (d.value, e.value) == expected, (v, str(rep))


# -- targeted approaches ---------------------------------------------------------


def test_request_validation(sym179):
    with pytest.raises(ValidationError):
        request(sym179, 0)
    with pytest.raises(ValidationError):
        request(sym179, 179)
    with pytest.raises(NotInvertibleError):
        request(symbolic_group(4), 2)
    with pytest.raises(ValidationError):
        TargetedRequest(sym179, symbolic_group(5).base(), 3)
    req = request(sym179, 76)
    assert req.k_inv == 106 and req.h == 11


def test_basic_targeted_example(sym179, mod101):
    result, program = basic_targeted(request(sym179, 76, Approach.BASIC))
    assert result.canonical == 76
    state = final_state(program, sym179, (0, 1, 0))
    assert tuple(e.canonical for e in state.registers) == (0, 76, 0)
    result, _ = basic_targeted(request(mod101, 7, Approach.BASIC))
    assert result.value == 27
    with pytest.raises(NotInvertibleError):
        request(mod101, 2, Approach.BASIC)


def test_basic_targeted_k1(sym179):
    result, program = basic_targeted(request(sym179, 1, Approach.BASIC))
    assert result == sym179.base()
    state = final_state(program, sym179, (0, 1, 0))
    assert state.values == (0, 1, 0)


def test_basic_checkpoints(sym179):
    k = 76
    program = basic_targeted(request(sym179, k, Approach.BASIC))[1]
    ends = phase_endpoints(program, sym179, (0, 1, 0))
    ell = len(zeckendorf_high_to_low(k))
    ell2 = len(zeckendorf_high_to_low(106))
    assert ends["forward"] == (fib(ell) % 179, fib(ell + 1) % 179, k)
    assert ends["rewind"] == (0, 1, k)
    assert ends["swap"] == (0, k, 1)
    assert ends["fast-forward"] == (k * fib(ell2) % 179, k * fib(ell2 + 1) % 179, 1)
    assert ends["reverse"] == (0, k, 0)


def test_dual_targeted_lift_values(sym179):
    req = request(sym179, 76, Approach.DUAL)
    assert req.h == 11
    assert 76 * fib(11) % 179 == 141
    assert 76 * fib(12) % 179 == 25
    result, program = dual_targeted(req)
    assert result.canonical == 76
    profile = resource_profile(program)
    assert profile.registers == 4
    assert profile.iterations == 2 * req.h
    state = final_state(program, sym179, (0, 1, 0, 0))
    assert tuple(e.canonical for e in state.registers) == (0, 76, 0, 0)


def test_dual_checkpoints(sym179):
    req = request(sym179, 76, Approach.DUAL)
    program = dual_targeted(req)[1]
    ends = phase_endpoints(program, sym179, (0, 1, 0, 0))
    h = req.h
    assert ends["forward"] == (fib(h) % 179, fib(h + 1) % 179, 141, 25)
    assert ends["swap"] == (141, 25, fib(h) % 179, fib(h + 1) % 179)
    assert ends["reverse"] == (0, 76, 0, 0)


def test_dual_targeted_k1(sym179):
    result, program = dual_targeted(request(sym179, 1, Approach.DUAL))
    assert result == sym179.base()
    state = final_state(program, sym179, (0, 1, 0, 0))
    assert tuple(e.canonical for e in state.registers) == (0, 1, 0, 0)


def test_hybrid_targeted_example(sym179):
    req = request(sym179, 76)
    result, program = hybrid_targeted(req)
    assert result.canonical == 76
    state = final_state(program, sym179, (1, 0, 0))
    assert state.values == (0, 76, -8055)
    assert tuple(e.canonical for e in state.registers) == (0, 76, 0)


def test_hybrid_checkpoints(sym179):
    program = hybrid_targeted(request(sym179, 76))[1]
    ends = phase_endpoints(program, sym179, (1, 0, 0))
    assert ends["hgp-forward"] == (1, 6764 % 179, 10944 % 179)
    assert ends["reorder"] == (6764 % 179, 10944 % 179, 1)
    assert ends["reverse"] == (0, 76, 0)


def test_hybrid_k1(sym179):
    result, program = hybrid_targeted(request(sym179, 1))
    assert result == sym179.base()
    state = final_state(program, sym179, (1, 0, 0))
    assert tuple(e.canonical for e in state.registers) == (0, 1, 0)


def test_hybrid_even_example(sym179):
    req = request(sym179, 76, Approach.HYBRID_EVEN)
    result, program = hybrid_even_targeted(req)
    assert result.canonical == 76
    ends = phase_endpoints(program, sym179, (1, 0, 0))
    assert ends["adjust"] == (1, 4180 % 179, 6764 % 179)
    assert ends["reorder"] == (4180 % 179, 6764 % 179, 1)
    assert ends["reverse"] == (0, 76, 0)


def test_hybrid_even_k1_checkpoint(sym179):
    # l' = 2, v = F_3 - 1 = 1, checkpoint (a^F_2, a^F_3, a)
    program = hybrid_even_targeted(request(sym179, 1, Approach.HYBRID_EVEN))[1]
    ends = phase_endpoints(program, sym179, (1, 0, 0))
    assert ends["reorder"] == (1, 2, 1)
    assert ends["reverse"] == (0, 1, 0)


def test_even_corollary_pairs_exhaustive():
    # for even l' and 0 < k < phi^(l'+1), (k F_l', k F_{l'+1} - 1) is a
    # Hofstadter G pair -- and the variant the printed remark suggests,
    # (k F_l' - 1, k F_{l'+1} - 1), is not
    for ell in (2, 4, 6, 8):
        k_max = floor_int(phi_power(ell + 1))
        for k in range(1, k_max + 1):
            assert is_hg_pair(k * fib(ell), k * fib(ell + 1) - 1), (ell, k)
        assert not is_hg_pair(fib(ell) - 1, fib(ell + 1) - 1)


def test_odd_hg_pair_lemma_exhaustive():
    for ell in (1, 3, 5, 7, 9, 11, 13, 15):
        k_max = floor_int(phi_power(ell))
        for k in range(1, k_max + 1):
            assert is_hg_pair(k * fib(ell), k * fib(ell + 1)), (ell, k)


def test_hybrid_mhg_coincides_on_example(sym179):
    req = request(sym179, 76, Approach.HYBRID_MHG)
    result, program = hybrid_via_mhg(req)
    assert result.canonical == 76
    # the solved v equals k*F_12 = 10944 here, so the compiled program is
    # identical to the plain hybrid one
    assert program == hybrid_targeted(request(sym179, 76))[1]


def test_hybrid_mhg_v_length_bound():
    rng = random.Random(11)
    for _ in range(40):
        r = rng.randrange(3, 10**4)
        k = rng.randrange(1, r)
        if math.gcd(k, r) != 1:
            continue
        group = symbolic_group(r)
        req = request(group, k, Approach.HYBRID_MHG)
        _, program = hybrid_via_mhg(req)
        # Zeckendorf length of the solved v stays within 2h
        beta_len = max(
            (ins.loop_i for ins in program.instructions if ins.phase == "hgp-forward"),
            default=0,
        )
        assert beta_len <= 2 * req.h


def test_targeted_dispatch(sym179):
    for approach in Approach:
        result, _ = targeted(request(sym179, 76, approach))
        assert result.canonical == 76


def test_targeting_random_sweep_small():
    rng = random.Random(12)
    for _ in range(25):
        backend = rng.choice((Backend.SYMBOLIC, Backend.MOD_MUL))
        group, k = random_group_instance(rng, rng.randrange(3, 20), backend)
        expected = oracle_pow(group.base(), k)
        for approach in Approach:
            result, program = targeted(request(group, k, approach))
            assert result == expected, (group.describe(), k, approach)
            registers = program.register_count
            initial = [group.identity().value] * registers
            initial[1 if approach is not Approach.HYBRID else 0] = group.base().value
            if approach in (Approach.HYBRID, Approach.HYBRID_EVEN, Approach.HYBRID_MHG):
                initial = [group.base().value] + [group.identity().value] * (registers - 1)
            else:
                initial = [group.identity().value, group.base().value] + [
                    group.identity().value
                ] * (registers - 2)
            state = final_state(program, group, tuple(initial))
            ident = group.identity()
            assert state.registers[0] == ident
            assert state.registers[1] == expected
            assert all(r == ident for r in state.registers[2:])


def test_fibonacci_prime_order_still_targets():
    # r = 233 = F_13 forces the hybrid reverse chain through the identity
    group = symbolic_group(233)
    for approach in Approach:
        result, _ = targeted(request(group, 5, approach))
        assert result == oracle_pow(group.base(), 5)


def test_alternative_representation_policy():
    # any valid Fibonacci representation policy must still hit the target
    def widest(n):
        zeck = zeckendorf_high_to_low(n)
        reps = enumerate_fib_representations(n, len(zeck) + 2)
        return max(reps, key=lambda r: (sum(r), len(r), str(r)))

    group = symbolic_group(23)
    for k in range(1, 23):
        for approach in (Approach.BASIC, Approach.HYBRID):
            result, _ = targeted(request(group, k, approach, represent=widest))
            assert result == oracle_pow(group.base(), k), (k, approach)


def test_bad_representation_policy_rejected(sym179):
    with pytest.raises(ValidationError):
        basic_targeted(
            request(sym179, 76, Approach.BASIC, represent=lambda n: BitString((1,)))
        )


def test_profile_bounds_small_primes():
    for r in (3, 5, 7, 11, 89, 97, 179, 233, 521):
        group = symbolic_group(r)
        for k in (1, 2, r - 1):
            if math.gcd(k, r) != 1:
                continue
            req = request(group, k)
            h = req.h
            checks = {
                Approach.BASIC: (3, lambda it: it <= 4 * h + 4),
                Approach.DUAL: (4, lambda it: it == 2 * h),
                Approach.HYBRID: (3, lambda it: it <= 3 * h + 3),
                Approach.HYBRID_EVEN: (3, lambda it: it <= 3 * h + 3),
                Approach.HYBRID_MHG: (3, lambda it: it <= 3 * h + 3),
            }
            for approach, (registers, ok) in checks.items():
                _, program = targeted(request(group, k, approach))
                profile = resource_profile(program)
                assert profile.registers == registers
                assert ok(profile.iterations), (r, k, approach, profile.iterations, h)


def test_reverse_fib_exp_start(sym179):
    kappa, ell, exponents = reverse_fib_exp_start(sym179, sym179.base(), 106)
    assert ell == 11
    assert str(kappa) == "10100100010"
    assert exponents == (6764, 10944, 1)


# -- anderson pair exponentiation -------------------------------------------------


def test_anderson_pair_examples(sym179):
    a = sym179.base()
    (du, dv), program = anderson_pair_exp(a, 6764, 10944)
    assert (du.value, dv.value) == (6764, 10944)
    assert all(ins.phase == "hgp-forward" for ins in program.instructions)
    (du, dv), program = anderson_pair_exp(a, 76, 76)
    assert du == oracle_pow(a, 76) and dv == oracle_pow(a, 76)
    assert sum(1 for i in program.instructions if i.phase == "precurse") == 8
    (du, dv), _ = anderson_pair_exp(a, 1, 1)
    assert du == a and dv == a


def test_anderson_pair_errors(sym179):
    with pytest.raises(ValidationError):
        anderson_pair_exp(sym179.base(), 0, 0)
    with pytest.raises(ValidationError):
        anderson_pair_exp(sym179.base(), -5, 1)


def test_anderson_pair_sweep(mod101):
    a = mod101.base()
    for u in range(0, 30):
        for v in range(0, 30):
            if (u, v) == (0, 0) or not (2 * u + v > 0 or v > 0):
                continue
            from fibexp.zeckarray import is_anderson_pair

            if not is_anderson_pair(u, v):
                continue
            (du, dv), program = anderson_pair_exp(a, u, v)
            assert du == oracle_pow(a, u), (u, v)
            assert dv == oracle_pow(a, v), (u, v)
            assert program.register_count == 3


def test_symbolic_trace_is_discrete_log_of_modular_trace(sym179, mod359):
    # matched specs: on every step of the worked traces, the modular register
    # equals the base raised to the symbolic register's exponent
    a_mod = mod359.base()
    programs = []
    _, hgp = hgp_exp(sym179.base(), 10944)
    programs.append((hgp, (1, 0, 0), (a_mod.value, 1, 1)))
    kappa, _, exponents = reverse_fib_exp_start(sym179, sym179.base(), 106)
    _, forward = fib_exp(sym179.base(), kappa)
    mod_start = tuple(oracle_pow(a_mod, e).value for e in exponents)
    programs.append((invert(forward), exponents, mod_start))
    for program, sym_start, modular_start in programs:
        sym_run = execute(
            program, MachineState.of(sym179, sym_start), capture_trace=True
        )
        mod_program = program
        mod_run = execute(
            mod_program, MachineState.of(mod359, modular_start), capture_trace=True
        )
        for sym_row, mod_row in zip(sym_run.trace, mod_run.trace):
            for exponent, value in zip(sym_row.values, mod_row.values):
                assert oracle_pow(a_mod, exponent).value == value


def test_identity_inversion_guard_on_targeted_runs(sym179, mod101):
    # when no chain Fibonacci number vanishes mod r, targeted runs never
    # invert the identity; r = F_13 = 233 is the documented exception
    from fibexp.machine import IdentityInversionError

    for group, k in ((sym179, 76), (mod101, 7), (sym179, 178)):
        for approach in Approach:
            _, program = targeted(request(group, k, approach))
            registers = program.register_count
            if approach in (Approach.HYBRID, Approach.HYBRID_EVEN, Approach.HYBRID_MHG):
                initial = (group.base().value,) + (group.identity().value,) * (registers - 1)
            else:
                initial = (
                    group.identity().value,
                    group.base().value,
                ) + (group.identity().value,) * (registers - 2)
            execute(
                program,
                MachineState.of(group, initial),
                forbid_identity_inversion=True,
            )
    fib_prime = symbolic_group(233)
    _, program = targeted(request(fib_prime, 5, Approach.HYBRID))
    with pytest.raises(IdentityInversionError):
        execute(
            program,
            MachineState.of(fib_prime, (1, 0, 0)),
            forbid_identity_inversion=True,
        )
