import math

import numpy as np
import pytest

from schmidtgen.circuit import (
    Circuit,
    Gate,
    block,
    circuit_matrix,
    cx,
    gate_matrix,
    mcx,
    rot,
    simulate,
    state_from_json,
    state_to_json,
    x,
)
from schmidtgen.errors import DimensionError, TooLargeError, ValidationError
from schmidtgen.linalg import is_orthogonal
from schmidtgen.sampling import RngState, haar_orthogonal

from oracles import gate_action_bits


def basis(n, i):
    e = np.zeros(1 << n)
    e[i] = 1.0
    return e


def random_gate(rng, n):
    kind = int(rng.uniform(1)[0] * 5)
    qs = [int(q) for q in np.argsort(rng.uniform(n))]
    if kind == 0:
        return x(qs[0])
    if kind == 1:
        return cx(qs[0], qs[1], polarity=int(rng.uniform(1)[0] < 0.5))
    if kind == 2:
        a = float(rng.normal(1)[0])
        b = float(rng.normal(1)[0])
        r = math.hypot(a, b)
        return rot(qs[0], a / r, b / r, controls=((qs[1], 0), (qs[2], 1)))
    if kind == 3:
        return block((qs[0], qs[1]), haar_orthogonal(rng, 4))
    return mcx([(qs[0], 1), (qs[1], 0), (qs[2], 1)], qs[3])


def test_x_gate():
    np.testing.assert_array_equal(simulate(Circuit(1, (x(0),))), [0.0, 1.0])
    np.testing.assert_array_equal(simulate(Circuit(2, (x(1),))), basis(2, 1))
    np.testing.assert_array_equal(simulate(Circuit(2, (x(0),))), basis(2, 2))


def test_cnot_truth_table():
    c = Circuit(2, (cx(0, 1),))
    for i, j in ((0, 0), (1, 1), (2, 3), (3, 2)):
        np.testing.assert_array_equal(simulate(c, basis(2, i)), basis(2, j))
    zc = Circuit(2, (cx(0, 1, polarity=0),))
    for i, j in ((0, 1), (1, 0), (2, 2), (3, 3)):
        np.testing.assert_array_equal(simulate(zc, basis(2, i)), basis(2, j))


def test_rotation_sends_zero_to_column():
    psi = simulate(Circuit(1, (rot(0, 0.6, 0.8),)))
    np.testing.assert_allclose(psi, [0.6, 0.8], atol=1e-15)


def test_controlled_rotation_only_on_active_branch():
    g = rot(1, 0.0, 1.0, controls=((0, 0),))
    np.testing.assert_allclose(simulate(Circuit(2, (g,)), basis(2, 0)), basis(2, 1), atol=1e-15)
    np.testing.assert_array_equal(simulate(Circuit(2, (g,)), basis(2, 2)), basis(2, 2))


def test_block_target_order():
    # payload's first target is the most significant bit of its index
    m = np.eye(4)[:, [0, 2, 1, 3]]
    psi = simulate(Circuit(3, (block((2, 0), m),)), basis(3, 1))  # q2 = 1
    np.testing.assert_array_equal(psi, basis(3, 4))  # -> q0 = 1


def test_empty_circuit_is_identity():
    for n in (1, 3, 5):
        c = Circuit(n)
        np.testing.assert_array_equal(simulate(c), basis(n, 0))
        np.testing.assert_array_equal(circuit_matrix(c), np.eye(1 << n))


def test_gate_validation():
    with pytest.raises(ValidationError):
        Gate("Toffoli", (0,))
    with pytest.raises(ValidationError):
        Gate("X", (0,), ((1, 1),))
    with pytest.raises(ValidationError):
        Gate("ControlledX", (0,))
    with pytest.raises(ValidationError):
        cx(0, 0)
    with pytest.raises(ValidationError):
        Gate("Rotation", (0,), (), np.array([[1.0, 0.0], [0.0, -1.0]]))
    with pytest.raises(ValidationError):
        block((0,), np.array([[1.0, 1.0], [0.0, 1.0]]))
    with pytest.raises(DimensionError):
        block((0, 1), np.eye(2))
    with pytest.raises(ValidationError):
        Circuit(2, (x(2),))
    with pytest.raises(ValidationError):
        cx(0, 1, polarity=2)


@pytest.mark.parametrize("seed", range(6))
def test_random_circuit_three_routes_agree(seed):
    n = 4
    rng = RngState(500 + seed)
    gates = tuple(random_gate(rng.child(i), n) for i in range(25))
    c = Circuit(n, gates)
    psi0 = rng.child(99).normal(1 << n)
    psi0 /= np.linalg.norm(psi0)

    ref = psi0.copy()
    for g in gates:
        ref = gate_action_bits(g, n, ref)
    sim = simulate(c, psi0)
    mat = circuit_matrix(c) @ psi0
    assert np.abs(sim - ref).max() < 1e-12
    assert np.abs(mat - ref).max() < 1e-12
    assert is_orthogonal(circuit_matrix(c), 1e-12)


def test_gate_matrix_matches_bits_oracle_column_by_column():
    rng = RngState(3)
    for i in range(10):
        g = random_gate(rng.child(i), 5)
        m = gate_matrix(g, 5)
        for col in range(32):
            np.testing.assert_allclose(m[:, col], gate_action_bits(g, 5, basis(5, col)), atol=1e-14)


def test_simulation_preserves_norm():
    rng = RngState(4)
    c = Circuit(10, tuple(random_gate(rng.child(i), 10) for i in range(60)))
    assert np.linalg.norm(simulate(c)) == pytest.approx(1.0, abs=1e-12)


def test_size_guards():
    with pytest.raises(TooLargeError):
        circuit_matrix(Circuit(13))
    with pytest.raises(TooLargeError):
        simulate(Circuit(25))


def test_circuit_json_round_trip():
    rng = RngState(6)
    c = Circuit(4, tuple(random_gate(rng.child(i), 4) for i in range(15)))
    back = Circuit.from_json(c.to_json())
    assert back.n_qubits == c.n_qubits
    assert [g.kind for g in back.gates] == [g.kind for g in c.gates]
    assert [(g.targets, g.controls) for g in back.gates] == [(g.targets, g.controls) for g in c.gates]
    np.testing.assert_array_equal(circuit_matrix(back), circuit_matrix(c))


def test_state_json_round_trip():
    psi = RngState(1).normal(16)
    psi /= np.linalg.norm(psi)
    np.testing.assert_array_equal(state_from_json(state_to_json(psi)), psi)
    with pytest.raises(DimensionError):
        state_from_json('{"n_qubits": 2, "amplitudes": [1.0, 0.0]}')


def test_concatenation():
    a = Circuit(2, (x(0),))
    b = Circuit(2, (cx(0, 1),))
    np.testing.assert_array_equal(simulate(a + b), basis(2, 3))
    with pytest.raises(DimensionError):
        a + Circuit(3)
