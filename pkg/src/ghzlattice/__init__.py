"""ghzlattice: GHZ-like encoding and state transfer in power-law lattices.

An analytic recursion scheduler (merge factors, step times, total-time
envelopes, comparison curves, gate-count bounds) paired with an exact dense
statevector simulator that executes the recursive protocol at desk scale.
"""

from .errors import (
    DivisibilityError,
    GhzLatticeError,
    MemoryCapError,
    OutOfBoundsError,
    PlanMismatchError,
    PoleError,
    PreconditionError,
    StatePreconditionError,
    UnreachableTargetError,
    UnsupportedRegimeError,
)
from .geometry import LatticeSpec, Region, euclidean_diameter_bound, partition, site_mask
from .scheduler import (
    RegimeParams,
    ScheduleNode,
    SchedulePlan,
    bound_kernel,
    bound_t,
    choose_m,
    gate_count_upper,
    k_alpha_min,
    make_params,
    merge_duration,
    plan,
    protocol_time,
    regime,
    step2_time,
    t_star,
    table1_curves,
)
from .simulator import (
    DEFAULT_AMP_CAP,
    Gate,
    PhaseCoupling,
    StateVector,
    apply_controlled_increment,
    apply_gate,
    basis_vector,
    dft_matrix,
    dump_amplitudes,
    evolve_phase,
    expected_ghz,
    fidelity,
    hadamard_matrix,
    init_product,
    zero_state,
)
from .protocol import (
    EncodeRequest,
    ProtocolTrace,
    StepRecord,
    decode,
    encode,
    expected_states,
    state_transfer,
    verify_step,
)
from .analysis import (
    ScalingRow,
    decade_exponents,
    fit_loglog_slope,
    fit_sqrtlog_slope,
    fitted_exponent,
    gate_bound_table,
    scaling_sweep,
    speedup_crossover,
    speedup_report,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_AMP_CAP",
    "DivisibilityError",
    "EncodeRequest",
    "Gate",
    "GhzLatticeError",
    "LatticeSpec",
    "MemoryCapError",
    "OutOfBoundsError",
    "PhaseCoupling",
    "PlanMismatchError",
    "PoleError",
    "PreconditionError",
    "ProtocolTrace",
    "Region",
    "RegimeParams",
    "ScalingRow",
    "ScheduleNode",
    "SchedulePlan",
    "StatePreconditionError",
    "StateVector",
    "StepRecord",
    "UnreachableTargetError",
    "UnsupportedRegimeError",
    "apply_controlled_increment",
    "apply_gate",
    "basis_vector",
    "bound_kernel",
    "bound_t",
    "choose_m",
    "decade_exponents",
    "decode",
    "dft_matrix",
    "dump_amplitudes",
    "encode",
    "euclidean_diameter_bound",
    "evolve_phase",
    "expected_ghz",
    "expected_states",
    "fidelity",
    "fit_loglog_slope",
    "fit_sqrtlog_slope",
    "fitted_exponent",
    "gate_bound_table",
    "gate_count_upper",
    "hadamard_matrix",
    "init_product",
    "k_alpha_min",
    "make_params",
    "merge_duration",
    "partition",
    "plan",
    "protocol_time",
    "regime",
    "scaling_sweep",
    "site_mask",
    "speedup_crossover",
    "speedup_report",
    "state_transfer",
    "step2_time",
    "t_star",
    "t_star",
    "table1_curves",
    "verify_step",
    "zero_state",
]
