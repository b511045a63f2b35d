"""Prepare a two-qubit state with chosen Schmidt coefficients and check it.

The circuit is CNOT, a rotation carrying the coefficients, CNOT again, and
one local orthogonal gate per qubit for the Schmidt bases.
"""

import numpy as np

from schmidtgen import (
    BipartiteSplit,
    RngState,
    build_two_qubit_schmidt,
    entanglement_entropy,
    haar_orthogonal,
    schmidt_decompose,
    simulate,
)

rng = RngState(2024)
coeffs = (0.8, 0.6)
u = haar_orthogonal(rng.child(0), 2)
v = haar_orthogonal(rng.child(1), 2)

circuit = build_two_qubit_schmidt(coeffs, u, v)
for gate in circuit.gates:
    print(f"{gate.kind:16s} targets={gate.targets} controls={gate.controls}")

psi = simulate(circuit)
print("amplitudes:", np.round(psi, 6))

split = BipartiteSplit(1, 1)
recovered = schmidt_decompose(psi, split).coefficients
print("recovered coefficients:", recovered)
print(f"entanglement entropy: {entanglement_entropy(psi, split):.6f} bits")
