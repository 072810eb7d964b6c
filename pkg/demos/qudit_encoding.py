"""Qudit generalization: encode a three-level state into a GHZ-like state.

The merge coupling weights level pairs by l*l' and runs until each cube pair
accumulates phase 2*pi/3; the single-site rotation is the 3-point discrete
Fourier transform.  At q=2 the same machinery reduces to the qubit protocol
with the Hadamard.
"""
import numpy as np

from ghzlattice import (
    EncodeRequest,
    LatticeSpec,
    basis_vector,
    dft_matrix,
    encode,
    expected_ghz,
    fidelity,
    init_product,
    plan,
)

q = 3
lattice = LatticeSpec(dimension=1, side=8, levels=q)
schedule = plan(alpha=2.5, d=1, target_r=8, r0=2, forced_m=[2, 2], q=q)

rng = np.random.default_rng(11)
raw = rng.standard_normal(q) + 1j * rng.standard_normal(q)
coeffs = raw / np.linalg.norm(raw)
print("qutrit coefficients:", np.round(coeffs, 5))
print("DFT gate (q=3):")
print(np.round(dft_matrix(q), 4))

sites = [basis_vector(q, 0) for _ in range(lattice.n_sites)]
sites[0] = coeffs
state = init_product(lattice, sites)

request = EncodeRequest(lattice, lattice.full_region(), 0, coeffs, schedule)
state, trace = encode(state, request)

target = expected_ghz(lattice.full_region(), lattice, coeffs)
print(f"final fidelity vs sum_l a_l |l...l>: {fidelity(state, target):.12f}")
print(f"per-step fidelities: {[round(r.fidelity, 10) for r in trace.records]}")
