import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schmidtgen.errors import DimensionError, ValidationError
from schmidtgen.sampling import RngState, haar_orthogonal
from schmidtgen.schmidt import (
    BipartiteSplit,
    coefficients_for_entropy,
    entanglement_entropy,
    max_qubit_entropy,
    permute_qubits,
    reduced_density,
    schmidt_decompose,
    subset_entropy,
    von_neumann_entropy,
)

from oracles import entropy_reference, jacobi_eigh, partial_trace_loops

# high-precision references (mpmath, 50 digits)
H_09_01_NATS = 0.32508297339144824
K1SQ_HALF_BIT = 0.8899721355616404
K2SQ_HALF_BIT = 0.1100278644383596

SPLITS = [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (3, 3)]


def random_state(rng, dim):
    z = rng.normal(dim)
    return z / np.linalg.norm(z)


def test_split_parse_and_sizes():
    sp = BipartiteSplit.parse("2:3")
    assert (sp.d_a, sp.d_b, sp.k, sp.dim, sp.n_qubits) == (4, 8, 4, 32, 5)
    assert str(sp) == "2:3"
    for bad in ("0:2", "2", "a:b", "2:-1"):
        with pytest.raises(ValidationError):
            BipartiteSplit.parse(bad)


def test_product_state():
    psi = np.zeros(4)
    psi[0] = 1.0
    d = schmidt_decompose(psi, BipartiteSplit(1, 1))
    np.testing.assert_allclose(d.coefficients, [1.0, 0.0], atol=1e-15)
    assert entanglement_entropy(psi, BipartiteSplit(1, 1)) == 0.0


def test_bell_state():
    psi = np.array([1.0, 0.0, 0.0, 1.0]) / math.sqrt(2)
    sp = BipartiteSplit(1, 1)
    d = schmidt_decompose(psi, sp)
    np.testing.assert_allclose(d.coefficients, [math.sqrt(0.5)] * 2, atol=1e-14)
    assert entanglement_entropy(psi, sp) == pytest.approx(1.0, abs=1e-14)
    assert entanglement_entropy(psi, sp, "e") == pytest.approx(math.log(2), abs=1e-14)
    np.testing.assert_allclose(reduced_density(psi, sp), 0.5 * np.eye(2), atol=1e-15)


def test_bad_dimension_and_norm():
    with pytest.raises(DimensionError):
        schmidt_decompose(np.ones(8) / math.sqrt(8), BipartiteSplit(1, 1))
    with pytest.raises(ValidationError):
        schmidt_decompose(np.ones(4), BipartiteSplit(1, 1))


@pytest.mark.parametrize("qa,qb", SPLITS)
def test_decomposition_contract(qa, qb):
    rng = RngState(100 + 10 * qa + qb)
    sp = BipartiteSplit(qa, qb)
    for i in range(40):
        psi = random_state(rng.child(i), sp.dim)
        d = schmidt_decompose(psi, sp).check()
        assert d.rank == sp.k
        assert np.linalg.norm(d.reconstruct() - psi) < 1e-10


@pytest.mark.parametrize("qa,qb", SPLITS)
def test_reduced_density_against_loops(qa, qb):
    sp = BipartiteSplit(qa, qb)
    psi = random_state(RngState(qa * 7 + qb), sp.dim)
    for keep, d in (("A", sp.d_a), ("B", sp.d_b)):
        rho = reduced_density(psi, sp, keep)
        np.testing.assert_allclose(rho, partial_trace_loops(psi, sp.d_a, sp.d_b, keep), atol=1e-14)
        assert np.trace(rho) == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_array_equal(rho, rho.T)
        assert jacobi_eigh(rho).min() > -1e-14


def test_squared_coefficients_are_density_eigenvalues():
    sp = BipartiteSplit(2, 3)
    psi = random_state(RngState(5), sp.dim)
    s = schmidt_decompose(psi, sp).coefficients
    for keep in "AB":
        ev = jacobi_eigh(partial_trace_loops(psi, sp.d_a, sp.d_b, keep))[: sp.k]
        np.testing.assert_allclose(ev, s * s, atol=1e-12)


def test_reduced_density_of_chain_is_diagonal_in_local_basis():
    # s1 k1 (u1 v1 w1) + s1 k2 ... built directly: the A-marginal is diag(s1^2, s2^2)
    s1, s2, k1, k2 = 0.8, 0.6, math.sqrt(0.7), math.sqrt(0.3)
    psi = np.zeros(8)
    for (a, b, c), amp in {(0, 0, 0): s1 * k1, (0, 1, 1): s1 * k2, (1, 0, 1): -s2 * k2, (1, 1, 0): s2 * k1}.items():
        psi[4 * a + 2 * b + c] = amp
    np.testing.assert_allclose(reduced_density(psi, BipartiteSplit(1, 2), "A"), np.diag([s1**2, s2**2]), atol=1e-15)
    np.testing.assert_allclose(reduced_density(psi, BipartiteSplit(2, 1), "B"), np.diag([k1**2, k2**2]), atol=1e-15)


def test_entropy_examples():
    assert von_neumann_entropy([0.5, 0.5]) == pytest.approx(1.0, abs=1e-15)
    assert von_neumann_entropy([1.0, 0.0]) == 0.0
    assert von_neumann_entropy([0.9, 0.1], "e") == pytest.approx(H_09_01_NATS, abs=1e-14)
    assert von_neumann_entropy([0.25] * 4) == pytest.approx(2.0, abs=1e-14)
    assert von_neumann_entropy([1.0, 1e-13]) == 0.0
    assert von_neumann_entropy([1.0, -1e-17]) == 0.0
    assert max_qubit_entropy() == 1.0 and max_qubit_entropy("e") == pytest.approx(math.log(2))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(1e-6, 1.0), min_size=1, max_size=16))
def test_entropy_matches_reference_and_bounds(w):
    lam = np.array(w) / sum(w)
    h = von_neumann_entropy(lam)
    assert h == pytest.approx(entropy_reference(lam, 2), abs=1e-7)
    assert -1e-15 <= h <= math.log2(len(lam)) + 1e-12


def test_entropy_symmetric_across_split():
    for qa, qb in SPLITS:
        sp = BipartiteSplit(qa, qb)
        psi = random_state(RngState(qa + 31 * qb), sp.dim)
        ra = jacobi_eigh(reduced_density(psi, sp, "A"))
        rb = jacobi_eigh(reduced_density(psi, sp, "B"))
        assert von_neumann_entropy(ra) == pytest.approx(von_neumann_entropy(rb), abs=1e-12)


def test_entropy_local_orthogonal_invariance():
    sp = BipartiteSplit(2, 2)
    rng = RngState(8)
    psi = random_state(rng.child(0), sp.dim)
    u = haar_orthogonal(rng.child(1), 4)
    v = haar_orthogonal(rng.child(2), 4)
    moved = np.kron(u, v) @ psi
    assert entanglement_entropy(moved, sp) == pytest.approx(entanglement_entropy(psi, sp), abs=1e-12)


def test_permute_and_subset_entropy():
    # qubit 0 is maximally entangled with qubit 2; qubit 1 is a spectator
    bell = np.array([1.0, 0.0, 0.0, 1.0]) / math.sqrt(2)
    psi = np.kron(bell, [1.0, 0.0]).reshape(2, 2, 2).transpose(0, 2, 1).reshape(-1)
    assert subset_entropy(psi, 3, [0]) == pytest.approx(1.0, abs=1e-14)
    assert subset_entropy(psi, 3, [1]) == pytest.approx(0.0, abs=1e-14)
    assert subset_entropy(psi, 3, [0, 2]) == pytest.approx(0.0, abs=1e-14)
    assert subset_entropy(psi, 3, [0, 1, 2]) == 0.0
    back = permute_qubits(permute_qubits(psi, 3, [2, 0, 1]), 3, [1, 2, 0])
    np.testing.assert_array_equal(back, psi)


def test_inverse_entropy_examples():
    assert coefficients_for_entropy(0.0) == (1.0, 0.0)
    k1, k2 = coefficients_for_entropy(1.0)
    assert k1 == pytest.approx(math.sqrt(0.5)) and k2 == pytest.approx(math.sqrt(0.5))
    k1, k2 = coefficients_for_entropy(0.5)
    assert k1**2 == pytest.approx(K1SQ_HALF_BIT, abs=1e-12)
    assert k2**2 == pytest.approx(K2SQ_HALF_BIT, abs=1e-12)
    for bad in (-0.1, 1.1, math.nan):
        with pytest.raises(ValidationError):
            coefficients_for_entropy(bad)
    with pytest.raises(ValidationError):
        coefficients_for_entropy(0.9, "e")


@pytest.mark.parametrize("base", [2, "e"])
def test_inverse_entropy_round_trip(base):
    wmax = max_qubit_entropy(base)
    for w in np.linspace(0.0, wmax, 100):
        k1, k2 = coefficients_for_entropy(w, base)
        assert k1 >= k2 >= 0.0
        assert k1 * k1 + k2 * k2 == pytest.approx(1.0, abs=1e-15)
        assert abs(von_neumann_entropy([k1 * k1, k2 * k2], base) - w) < 1e-10


def test_inverse_entropy_tiny_targets():
    for w in (1e-14, 1e-10, 1e-6):
        k1, k2 = coefficients_for_entropy(w)
        q = k2 * k2
        h = -(q * math.log2(q) + (1 - q) * math.log2(1 - q))
        assert abs(h - w) < 1e-3 * w
