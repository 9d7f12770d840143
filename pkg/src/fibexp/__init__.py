"""Targeted (garbage-free) group exponentiation via Fibonacci addition chains.

The package bundles the supporting number theory (Zeckendorf forms in both
scan orders, exact Q(sqrt5) arithmetic, the Hofstadter G function and its
modular solver, the extended Zeckendorf-array locator) with a reversible
register machine and compilers for the targeted exponentiation approaches.
"""

from .algorithms import (
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
    targeted,
)
from .errors import (
    BackendMismatchError,
    DegenerateDeltaError,
    NotAndersonPairError,
    NotInvertibleError,
    ValidationError,
)
from .fib import (
    BitString,
    enumerate_fib_representations,
    fib,
    fib_sum,
    hofstadter_g,
    zeckendorf_high_to_low,
    zeckendorf_low_to_high,
)
from .golden import (
    PHI,
    PHI_INV,
    GoldenNumber,
    ModularInterval,
    ceil_log_phi_abs,
    compare,
    floor_int,
    frac_mod,
    in_interval,
    least_phi_power_exceeding,
    phi_power,
)
from .groups import (
    Backend,
    GroupElement,
    GroupSpec,
    mod_inverse,
    mod_mul_group,
    oracle_pow,
    parse_group_spec,
    symbolic_group,
)
from .machine import (
    ExecutionResult,
    Instruction,
    MachineState,
    ResourceProfile,
    ReversibleProgram,
    TraceRow,
    execute,
    invert,
    render_trace_table,
    resource_profile,
    trace_to_jsonl,
)
from .mhg import MHGSolution, find_w, find_w_rational, is_hg_pair, solve_mhg
from .zeckarray import (
    ArrayLocation,
    ColumnInterval,
    column_interval,
    delta,
    is_anderson_pair,
    locate,
    recurse_pair,
    verify_array,
)

__version__ = "0.1.0"
