"""The recursive encode / decode / transfer routine run on a statevector.

Execution is level-synchronous: all base cubes encode first, then each merge
level runs its four steps (phase merge, target decode, single-site gate,
target re-encode) across every cube of that level at once.  Operations on
disjoint regions commute, so this is the same unitary as the depth-first
recursion, and it makes the intermediate state after every step a simple
product over same-level cubes that can be constructed analytically and
checked by fidelity.

Time accounting matches the schedule: the base record costs ``t_base`` and a
merge level's records cost ``(t2, t_child, 0, t_child)``, which telescopes to
the plan root's ``t_total = 3*t1 + t2`` recursion exactly.

Within a cube, the control child is the one containing the cube's information
site (the global source site if the cube contains it, the cube's anchor
otherwise); each target child concentrates onto its anchor site.  The applied
operation stream depends on that geometry but never on the encoded
coefficients, so encoding is exactly linear in the input state.
"""
from __future__ import annotations

import cmath
import csv
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    OutOfBoundsError,
    PlanMismatchError,
    PreconditionError,
    StatePreconditionError,
)
from .geometry import LatticeSpec, Region, euclidean_diameter_bound, partition, site_mask
from .scheduler import SchedulePlan, merge_duration
from .simulator import (
    Gate,
    PhaseCoupling,
    StateVector,
    apply_gate,
    basis_vector,
    controlled_increment_cascade,
    dft_matrix,
    evolve_phase,
    fidelity,
    hadamard_matrix,
    init_product,
    _level_sum,
)

GATE_DFT = "dft"
GATE_HADAMARD = "hadamard"


@dataclass(frozen=True)
class EncodeRequest:
    """What to encode: which region, from which site, with which amplitudes."""

    lattice: LatticeSpec
    region: Region
    c: int  # flat site index holding the unknown state
    coefficients: np.ndarray
    plan: SchedulePlan

    def __post_init__(self):
        coeffs = np.asarray(self.coefficients, dtype=np.complex128).reshape(-1)
        if coeffs.size != self.lattice.levels:
            raise PreconditionError(
                f"need {self.lattice.levels} coefficients, got {coeffs.size}"
            )
        if abs(np.sum(np.abs(coeffs) ** 2) - 1.0) > 1e-9:
            raise PreconditionError("coefficients are not normalized")
        object.__setattr__(self, "coefficients", coeffs)
        if not self.region.contains(self.lattice.coord(self.c)):
            raise OutOfBoundsError(f"site {self.c} lies outside the region")
        p = self.plan
        if p.mode != "integer-exact":
            raise PlanMismatchError("simulation needs an integer-exact plan")
        if p.root.r != self.region.side:
            raise PlanMismatchError(
                f"plan side {p.root.r} != region side {self.region.side}"
            )
        if p.params.d != self.lattice.dimension:
            raise PlanMismatchError("plan and lattice dimensions differ")
        if p.q != self.lattice.levels:
            raise PlanMismatchError(
                f"plan q={p.q} != lattice levels {self.lattice.levels}"
            )


@dataclass(frozen=True)
class StepRecord:
    level: int
    step: int
    inverse: bool
    elapsed: float
    fidelity: float | None
    regions: tuple[Region, ...]

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "step": self.step,
            "inverse": self.inverse,
            "elapsed": self.elapsed,
            "fidelity": self.fidelity,
            "regions": [{"anchor": list(r.anchor), "side": r.side} for r in self.regions],
        }


@dataclass
class ProtocolTrace:
    """Per-step record of one protocol run."""

    records: list = field(default_factory=list)
    total_time: float = 0.0
    final_fidelity: float | None = None
    forced: bool = False

    def elapsed_sum(self) -> float:
        return sum(rec.elapsed for rec in self.records)

    def to_dict(self) -> dict:
        return {
            "total_time": self.total_time,
            "final_fidelity": self.final_fidelity,
            "forced": self.forced,
            "records": [rec.to_dict() for rec in self.records],
        }

    def write_csv(self, fh) -> None:
        writer = csv.writer(fh)
        writer.writerow(["step", "level", "inverse", "time", "fidelity"])
        for rec in self.records:
            writer.writerow(
                [
                    rec.step,
                    rec.level,
                    int(rec.inverse),
                    repr(rec.elapsed),
                    "" if rec.fidelity is None else repr(rec.fidelity),
                ]
            )


@dataclass(frozen=True)
class _CubeOps:
    """Precomputed merge data for one cube of one level."""

    cube: Region
    control: Region
    targets: tuple[Region, ...]
    coupling: PhaseCoupling
    duration: float
    gate_sites: tuple[int, ...]  # designated site of each target


class _Machine:
    """Geometry, couplings and gate matrices for one (lattice, region, c, plan).

    Independent of the encoded coefficients, so instances are cached on the
    plan and reused across runs (which also reuses the couplings' phase-vector
    caches).
    """

    def __init__(self, lattice: LatticeSpec, region: Region, c: int,
                 plan: SchedulePlan, gate_mode: str = GATE_DFT,
                 check_legality: bool = True):
        self.lattice = lattice
        self.region = region
        self.c = c
        self.plan = plan
        self.q = lattice.levels
        self.alpha = plan.params.alpha
        self.d = plan.params.d
        self.c_coord = lattice.coord(c)
        if gate_mode not in (GATE_DFT, GATE_HADAMARD):
            raise PreconditionError(f"unknown gate mode {gate_mode!r}")
        if gate_mode == GATE_HADAMARD and self.q != 2:
            raise PreconditionError("the Hadamard gate path needs q = 2")
        self.gate = hadamard_matrix() if gate_mode == GATE_HADAMARD else dft_matrix(self.q)
        self.gate_inv = self.gate.conj().T
        self.check_legality = check_legality
        self._ops_cache: dict = {}

        # nodes[level]: level 0 is the base case, level L the plan root
        self.nodes = list(reversed(plan.nodes()))
        self.n_levels = len(self.nodes) - 1
        # cubes[level]: every cube of that side inside the region, and the
        # merge structure of each cube above the base level
        self.cubes: list[list[Region]] = [[] for _ in range(self.n_levels + 1)]
        self.ops: list[list[_CubeOps]] = [[] for _ in range(self.n_levels + 1)]
        self.cubes[self.n_levels] = [region]
        for level in range(self.n_levels, 0, -1):
            for cube in self.cubes[level]:
                ops = self._merge_ops(cube, level)
                self.ops[level].append(ops)
                self.cubes[level - 1].extend([ops.control, *ops.targets])

    def info_site(self, cube: Region) -> tuple[int, ...]:
        return self.c_coord if cube.contains(self.c_coord) else cube.anchor

    def _merge_ops(self, cube: Region, level: int) -> _CubeOps:
        key = (cube.anchor, cube.side, level)
        cached = self._ops_cache.get(key)
        if cached is not None:
            return cached
        kids = partition(cube, self.nodes[level].m, c=self.info_site(cube))
        control, targets = kids[0], tuple(kids[1:])
        strength = 1.0 / euclidean_diameter_bound(cube) ** self.alpha
        coupling = PhaseCoupling(
            control_mask=site_mask(control, self.lattice),
            target_masks=tuple(site_mask(t, self.lattice) for t in targets),
            strength=strength,
        )
        if self.check_legality:
            coupling.check_power_law(self.lattice, self.alpha)
        duration = merge_duration(
            self.alpha, self.d, self.nodes[level].m, self.nodes[level].r1,
            q=self.plan.q,
        )
        gate_sites = tuple(self.lattice.flat_index(t.anchor) for t in targets)
        ops = _CubeOps(cube, control, targets, coupling, duration, gate_sites)
        self._ops_cache[key] = ops
        return ops

    # -- depth-first unitaries used inside a sweep step -------------------

    def apply_cube(self, state: StateVector, cube: Region, level: int,
                   inverse: bool = False) -> StateVector:
        """The bare encode unitary U_j of one cube, or its inverse.

        U_j turns (sum_l psi_l |l>) at the cube's information site, rest |0>,
        into the GHZ-like sum over the cube.  Its step 1 prepares the target
        children symmetrically (gate on the child origin, then the child's own
        U), while the control child just runs its U on the incoming state.
        """
        origin = self.lattice.flat_index(self.info_site(cube))
        if level == 0:
            sites = site_mask(cube, self.lattice).tolist()
            return controlled_increment_cascade(state, origin, sites, inverse=inverse)
        ops = self._merge_ops(cube, level)
        if not inverse:
            # step 1: encode the control child, prepare the targets
            state = self.apply_cube(state, ops.control, level - 1)
            for t, s in zip(ops.targets, ops.gate_sites):
                state = apply_gate(state, Gate(self.gate, s))
                state = self.apply_cube(state, t, level - 1)
            # step 2: controlled-phase merge
            state = evolve_phase(state, ops.coupling, ops.duration)
            # steps 3-5: concentrate, rotate, redistribute
            for t in ops.targets:
                state = self.apply_cube(state, t, level - 1, inverse=True)
            for s in ops.gate_sites:
                state = apply_gate(state, Gate(self.gate, s))
            for t in ops.targets:
                state = self.apply_cube(state, t, level - 1)
            return state
        # exact mirror: steps 5, 4, 3, 2, 1 inverted
        for t in ops.targets:
            state = self.apply_cube(state, t, level - 1, inverse=True)
        for s in ops.gate_sites:
            state = apply_gate(state, Gate(self.gate_inv, s))
        for t in ops.targets:
            state = self.apply_cube(state, t, level - 1)
        state = evolve_phase(state, ops.coupling, -ops.duration)
        for t, s in zip(ops.targets, ops.gate_sites):
            state = self.apply_cube(state, t, level - 1, inverse=True)
            state = apply_gate(state, Gate(self.gate_inv, s))
        state = self.apply_cube(state, ops.control, level - 1, inverse=True)
        return state

    def prepare_base(self, state: StateVector, cube: Region,
                     inverse: bool = False) -> StateVector:
        """Base-case encode of one cube: symmetric cubes first rotate their
        origin site into the uniform superposition, the source cube does not."""
        origin = self.lattice.flat_index(self.info_site(cube))
        symmetric = not cube.contains(self.c_coord)
        sites = site_mask(cube, self.lattice).tolist()
        if not inverse:
            if symmetric:
                state = apply_gate(state, Gate(self.gate, origin))
            return controlled_increment_cascade(state, origin, sites)
        state = controlled_increment_cascade(state, origin, sites, inverse=True)
        if symmetric:
            state = apply_gate(state, Gate(self.gate_inv, origin))
        return state


def _get_machine(req: EncodeRequest, gate_mode: str, check_legality: bool) -> _Machine:
    key = (req.lattice, req.region, req.c, gate_mode, check_legality)
    cache = req.plan.__dict__.setdefault("_machine_cache", {})
    machine = cache.get(key)
    if machine is None:
        machine = _Machine(req.lattice, req.region, req.c, req.plan,
                           gate_mode=gate_mode, check_legality=check_legality)
        if len(cache) < 32:
            cache[key] = machine
    return machine


class ExpectedStates:
    """Analytic intermediate states of the sweep, built term by term.

    The state after any step is a product over that level's cubes, each cube a
    small sum of all-same-level blocks (or the target-site phase ladder right
    after the merge).  Terms are assembled directly into flat amplitude
    indices, with everything outside the region in |0>.
    """

    def __init__(self, machine: _Machine, coefficients: np.ndarray):
        self.m = machine
        self.coefficients = np.asarray(coefficients, dtype=np.complex128)
        q, lattice = machine.q, machine.lattice
        self.powers = [q**s for s in range(lattice.n_sites)]
        self.omega = [cmath.exp(-2j * math.pi * k / q) for k in range(q)]

    def _cube_coeffs(self, cube: Region) -> np.ndarray:
        if cube.contains(self.m.c_coord):
            return self.coefficients
        q = self.m.q
        return np.full(q, 1.0 / math.sqrt(q), dtype=np.complex128)

    def _block_index(self, region: Region, level_value: int) -> int:
        if level_value == 0:
            return 0
        mask = site_mask(region, self.m.lattice)
        return int(sum(self.powers[int(s)] for s in mask)) * level_value

    def _cube_terms(self, cube: Region, level: int, step: int) -> list[tuple[int, complex]]:
        """(flat-index contribution, coefficient) pairs for one cube."""
        q = self.m.q
        coeffs = self._cube_coeffs(cube)
        if step == 5 or level == 0:
            return [
                (self._block_index(cube, lv), complex(coeffs[lv]))
                for lv in range(q)
                if coeffs[lv] != 0
            ]
        ops = self.m._merge_ops(cube, level)
        ctrl_idx = [self._block_index(ops.control, lv) for lv in range(q)]
        terms = []
        norm = (1.0 / math.sqrt(q)) ** len(ops.targets)
        if step == 2 or step == 3:
            tgt_idx = []
            for j, t in enumerate(ops.targets):
                if step == 2:
                    tgt_idx.append([self._block_index(t, x) for x in range(q)])
                else:
                    site = ops.gate_sites[j]
                    tgt_idx.append([self.powers[site] * x for x in range(q)])
            for lv in range(q):
                if coeffs[lv] == 0:
                    continue
                for combo in itertools.product(range(q), repeat=len(ops.targets)):
                    idx = ctrl_idx[lv] + sum(tgt_idx[j][x] for j, x in enumerate(combo))
                    w = complex(coeffs[lv]) * norm
                    for x in combo:
                        w *= self.omega[(lv * x) % q]
                    terms.append((idx, w))
            return terms
        if step == 4:
            for lv in range(q):
                if coeffs[lv] == 0:
                    continue
                idx = ctrl_idx[lv] + sum(self.powers[s] * lv for s in ops.gate_sites)
                terms.append((idx, complex(coeffs[lv])))
            return terms
        raise PreconditionError(f"unknown step id {step}")

    def initial(self) -> StateVector:
        """Coefficients at the source site, |0> everywhere else."""
        lattice, q = self.m.lattice, self.m.q
        states = [basis_vector(q, 0) for _ in range(lattice.n_sites)]
        states[self.m.c] = self.coefficients
        return init_product(lattice, states)

    def after(self, level: int, step: int) -> StateVector:
        """Expected state once every cube of ``level`` finished ``step``."""
        if not 0 <= level <= self.m.n_levels:
            raise PreconditionError(f"level {level} outside 0..{self.m.n_levels}")
        if level == 0 and step != 1:
            raise PreconditionError("the base level only has step 1")
        if level > 0 and step not in (2, 3, 4, 5):
            raise PreconditionError(f"unknown step id {step}")
        size = self.m.q ** self.m.lattice.n_sites
        amps = np.zeros(size, dtype=np.complex128)
        term_lists = [
            self._cube_terms(cube, level, step) for cube in self.m.cubes[level]
        ]
        for combo in itertools.product(*term_lists):
            idx = sum(t[0] for t in combo)
            w = 1.0 + 0.0j
            for t in combo:
                w *= t[1]
            amps[idx] += w
        return StateVector(self.m.q, self.m.lattice.n_sites, amps)


_BAD_MASK_CACHE: dict = {}


def _bad_index_mask(q: int, n: int, sites: tuple, kind: str) -> np.ndarray:
    """Boolean mask of disallowed basis states, cached across runs.

    kind "nonzero": any listed site away from |0>.
    kind "unequal": listed sites not all at the same level (outside GHZ span).
    """
    key = (q, n, sites, kind)
    bad = _BAD_MASK_CACHE.get(key)
    if bad is None:
        if kind == "nonzero":
            bad = _level_sum(q, n, np.asarray(sites)) > 0
        else:
            idx = np.arange(q**n, dtype=np.int64)
            first = (idx // q ** int(sites[0])) % q
            bad = np.zeros(q**n, dtype=bool)
            for s in sites[1:]:
                bad |= ((idx // q ** int(s)) % q) != first
        bad.setflags(write=False)
        if len(_BAD_MASK_CACHE) < 64:
            _BAD_MASK_CACHE[key] = bad
    return bad


def _check_encode_preconditions(state: StateVector, req: EncodeRequest) -> None:
    others = tuple(s for s in site_mask(req.region, req.lattice).tolist() if s != req.c)
    if not others:
        return
    bad = _bad_index_mask(state.q, state.n, others, "nonzero")
    mass = float(np.sum(np.abs(state.amps[bad]) ** 2))
    if mass > 1e-10:
        raise StatePreconditionError(
            f"region sites other than c are not in |0>: stray mass {mass:.3e}"
        )


def _check_decode_preconditions(state: StateVector, req: EncodeRequest) -> None:
    mask = tuple(site_mask(req.region, req.lattice).tolist())
    bad = _bad_index_mask(state.q, state.n, mask, "unequal")
    mass = float(np.sum(np.abs(state.amps[bad]) ** 2))
    if mass > 1e-10:
        raise StatePreconditionError(
            f"region is not in the GHZ-like span: stray mass {mass:.3e}"
        )


def encode(
    state: StateVector,
    req: EncodeRequest,
    verify: bool = True,
    gate_mode: str = GATE_DFT,
    check_legality: bool = True,
    on_step=None,
) -> tuple[StateVector, ProtocolTrace]:
    """Encode the source site's state into a GHZ-like state over the region.

    Returns the new statevector and a trace whose step times sum to the plan's
    total.  With ``verify`` each step is checked against its analytic expected
    state; ``on_step(record, state)`` is called after each step if given.
    """
    _check_encode_preconditions(state, req)
    machine = _get_machine(req, gate_mode, check_legality)
    expected = ExpectedStates(machine, req.coefficients) if verify else None
    trace = ProtocolTrace(total_time=req.plan.t_total, forced=req.plan.forced)

    def record(level, step, elapsed, regions, state):
        fid = fidelity(state, expected.after(level, step)) if verify else None
        rec = StepRecord(level, step, False, elapsed, fid, tuple(regions))
        trace.records.append(rec)
        if on_step is not None:
            on_step(rec, state)

    # base level: every base cube encodes at once (symmetric cubes include
    # the origin rotation into the uniform superposition)
    for cube in machine.cubes[0]:
        state = machine.prepare_base(state, cube)
    record(0, 1, machine.nodes[0].t_total, machine.cubes[0], state)

    for level in range(1, machine.n_levels + 1):
        node, child = machine.nodes[level], machine.nodes[level - 1]
        ops_here = machine.ops[level]
        for ops in ops_here:
            state = evolve_phase(state, ops.coupling, ops.duration)
        record(level, 2, node.t2, [o.cube for o in ops_here], state)
        for ops in ops_here:
            for t in ops.targets:
                state = machine.apply_cube(state, t, level - 1, inverse=True)
        record(level, 3, child.t_total,
               [t for o in ops_here for t in o.targets], state)
        for ops in ops_here:
            for s in ops.gate_sites:
                state = apply_gate(state, Gate(machine.gate, s))
        record(level, 4, 0.0, [t for o in ops_here for t in o.targets], state)
        for ops in ops_here:
            for t in ops.targets:
                state = machine.apply_cube(state, t, level - 1)
        record(level, 5, child.t_total,
               [t for o in ops_here for t in o.targets], state)

    if verify:
        target = expected.after(machine.n_levels, 5) if machine.n_levels else \
            expected.after(0, 1)
        trace.final_fidelity = fidelity(state, target)
    return state, trace


def decode(
    state: StateVector,
    req: EncodeRequest,
    verify: bool = True,
    gate_mode: str = GATE_DFT,
    check_legality: bool = True,
    on_step=None,
) -> tuple[StateVector, ProtocolTrace]:
    """Concentrate a GHZ-like region onto the request's site c (encode inverse).

    Works by linearity when the region is entangled with the outside, in which
    case the recorded fidelities against unentangled expected states are not
    meaningful and ``verify`` should be switched off.
    """
    _check_decode_preconditions(state, req)
    machine = _get_machine(req, gate_mode, check_legality)
    expected = ExpectedStates(machine, req.coefficients) if verify else None
    trace = ProtocolTrace(total_time=req.plan.t_total, forced=req.plan.forced)

    def record(level, step, elapsed, regions, state):
        fid = None
        if verify:
            if level == 0:
                target = expected.initial()
            elif step == 2:
                target = expected.after(level - 1, 5) if level > 1 else \
                    expected.after(0, 1)
            else:
                target = expected.after(level, step - 1)
            fid = fidelity(state, target)
        rec = StepRecord(level, step, True, elapsed, fid, tuple(regions))
        trace.records.append(rec)
        if on_step is not None:
            on_step(rec, state)

    for level in range(machine.n_levels, 0, -1):
        node, child = machine.nodes[level], machine.nodes[level - 1]
        ops_here = machine.ops[level]
        for ops in ops_here:
            for t in ops.targets:
                state = machine.apply_cube(state, t, level - 1, inverse=True)
        record(level, 5, child.t_total,
               [t for o in ops_here for t in o.targets], state)
        for ops in ops_here:
            for s in ops.gate_sites:
                state = apply_gate(state, Gate(machine.gate_inv, s))
        record(level, 4, 0.0, [t for o in ops_here for t in o.targets], state)
        for ops in ops_here:
            for t in ops.targets:
                state = machine.apply_cube(state, t, level - 1)
        record(level, 3, child.t_total,
               [t for o in ops_here for t in o.targets], state)
        for ops in ops_here:
            state = evolve_phase(state, ops.coupling, -ops.duration)
        record(level, 2, node.t2, [o.cube for o in ops_here], state)

    for cube in machine.cubes[0]:
        state = machine.prepare_base(state, cube, inverse=True)
    record(0, 1, machine.nodes[0].t_total, machine.cubes[0], state)

    if verify:
        trace.final_fidelity = fidelity(state, expected.initial())
    return state, trace


def verify_step(state: StateVector, level: int, step_id: int, context) -> float:
    """Fidelity of the live state against the analytic state after one step.

    ``context`` is an EncodeRequest (or a prebuilt ExpectedStates).
    """
    if isinstance(context, ExpectedStates):
        expected = context
    else:
        expected = ExpectedStates(
            _get_machine(context, GATE_DFT, False), context.coefficients
        )
    return fidelity(state, expected.after(level, step_id))


def expected_states(req: EncodeRequest, gate_mode: str = GATE_DFT) -> ExpectedStates:
    """Expected-state builder for the request (reusable across verify_step calls)."""
    return ExpectedStates(_get_machine(req, gate_mode, False), req.coefficients)


def _extract_site_coefficients(state: StateVector, site: int) -> np.ndarray:
    """Read off the source-site amplitudes when the rest of the region is |0>."""
    coeffs = np.array(
        [state.amps[state.q**site * lv] for lv in range(state.q)], dtype=np.complex128
    )
    norm = math.sqrt(float(np.sum(np.abs(coeffs) ** 2)))
    if abs(norm - 1.0) > 1e-8:
        raise StatePreconditionError(
            "cannot read source coefficients: region is not a product state "
            f"with |0> elsewhere (norm {norm:.6f})"
        )
    return coeffs / norm


def state_transfer(
    state: StateVector,
    c: int,
    c_prime: int,
    region: Region,
    plan: SchedulePlan,
    lattice: LatticeSpec | None = None,
    verify: bool = True,
    gate_mode: str = GATE_DFT,
) -> tuple[StateVector, ProtocolTrace]:
    """Move the (possibly unknown) state of site c to site c_prime in time 2t.

    Encodes from c into the GHZ-like state over the region, then runs the
    inverse encode targeted at c_prime.  The coefficients are read from the
    statevector only to build verification targets; the applied unitaries
    never depend on them.
    """
    if lattice is None:
        if plan.lattice is None:
            raise PlanMismatchError("state_transfer needs a lattice")
        lattice = plan.lattice
    for s in (c, c_prime):
        if not region.contains(lattice.coord(s)):
            raise OutOfBoundsError(f"site {s} lies outside the region")
    if c == c_prime:
        return state, ProtocolTrace(total_time=0.0, forced=plan.forced)
    coeffs = _extract_site_coefficients(state, c)
    req_in = EncodeRequest(lattice, region, c, coeffs, plan)
    state, trace_enc = encode(state, req_in, verify=verify, gate_mode=gate_mode)
    req_out = EncodeRequest(lattice, region, c_prime, coeffs, plan)
    state, trace_dec = decode(state, req_out, verify=verify, gate_mode=gate_mode)
    trace = ProtocolTrace(
        records=trace_enc.records + trace_dec.records,
        total_time=2 * plan.t_total,
        forced=plan.forced,
    )
    if verify:
        trace.final_fidelity = trace_dec.final_fidelity
    return state, trace
