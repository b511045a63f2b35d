"""Circuits that prepare a state from its Schmidt decomposition.

The general construction prepares ``(U (x) V) P (S (x) I) P |0>``:

* ``S`` acts on subsystem A and puts the Schmidt coefficients in its first
  column;
* ``P`` moves the amplitude at index ``i*d_b`` to ``i*d_b + i``;
* ``U`` and ``V`` rotate the computational basis into the Schmidt bases.
"""

import math

import numpy as np

from . import constants as C
from .circuit import Circuit, block, cx, rot, rotation
from .errors import DimensionError, ValidationError
from .linalg import PermutationMap, as_vector, complete_basis, is_orthogonal
from .schmidt import BipartiteSplit, SchmidtDecomposition


def _check_orthogonal(m, name):
    m = np.asarray(m, dtype=float)
    if not is_orthogonal(m, C.DECOMP_NORM_TOL):
        raise ValidationError(f"{name} is not orthogonal")
    return m


def schmidt_pair_gates(a, b, k1, k2, u=None, v=None):
    """Gates entangling qubit ``a`` with a fresh qubit ``b`` at coefficients ``(k1, k2)``.

    CNOT(a->b), R(k1, k2) on a, CNOT(a->b), then the optional local
    orthogonal gates ``u`` on ``a`` and ``v`` on ``b``.
    """
    gates = [cx(a, b), rot(a, k1, k2), cx(a, b)]
    if u is not None:
        gates.append(block((a,), u))
    if v is not None:
        gates.append(block((b,), v))
    return gates


def build_two_qubit_schmidt(s, u, v):
    s1, s2 = (float(x) for x in s)
    if abs(s1 * s1 + s2 * s2 - 1.0) > C.DECOMP_NORM_TOL or s2 < 0 or s1 < s2:
        raise ValidationError("need s1 >= s2 >= 0 with s1^2 + s2^2 = 1")
    u = _check_orthogonal(u, "U")
    v = _check_orthogonal(v, "V")
    if u.shape != (2, 2) or v.shape != (2, 2):
        raise DimensionError("U and V must be 2x2")
    return Circuit(2, tuple(schmidt_pair_gates(0, 1, s1, s2, u, v)))


def _split_pair(x, y):
    k = math.hypot(x, y)
    if k == 0.0:
        return 0.0, (1.0, 0.0)
    return k, (x / k, y / k)


def s_block_rotations(coeffs):
    """``(R1, R2, R3)`` of the two-qubit coefficient network."""
    s = as_vector(coeffs, "coeffs")
    if s.shape != (4,):
        raise DimensionError("S-block needs exactly four coefficients")
    if abs(float(s @ s) - 1.0) > C.DECOMP_NORM_TOL or np.any(s < 0):
        raise ValidationError("coefficients must be nonnegative with unit norm")
    k1, (a1, b1) = _split_pair(s[0], s[1])
    k2, (a2, b2) = _split_pair(s[2], s[3])
    kn = math.hypot(k1, k2)
    return rotation(a1, b1), rotation(a2, b2), rotation(k1 / kn, k2 / kn)


def s_block_matrix(coeffs):
    """Dense ``block_diag(R1, R2) @ kron(R3, I)``."""
    r1, r2, r3 = s_block_rotations(coeffs)
    sel = np.zeros((4, 4))
    sel[:2, :2] = r1
    sel[2:, 2:] = r2
    return sel @ np.kron(r3, np.eye(2))


def s_block_gates(coeffs, hi=0, lo=1):
    r1, r2, r3 = s_block_rotations(coeffs)
    return [
        rot(hi, r3[0, 0], r3[1, 0]),
        rot(lo, r1[0, 0], r1[1, 0], controls=((hi, 0),)),
        rot(lo, r2[0, 0], r2[1, 0], controls=((hi, 1),)),
    ]


def build_s_block(coeffs):
    return Circuit(2, tuple(s_block_gates(coeffs)))


def first_column_block(col):
    """Orthogonal (Householder) matrix whose first column is the unit vector ``col``."""
    c = as_vector(col, "col")
    d = c.shape[0]
    e0 = np.zeros(d)
    e0[0] = 1.0
    w = e0 - c
    nw = np.linalg.norm(w)
    if nw < 1e-15:
        return np.eye(d)
    w /= nw
    return np.eye(d) - 2.0 * np.outer(w, w)


def permutation_p_map(qubits_a, qubits_b):
    """``P`` as an index map: ``(i_a, i_b) -> (i_a, i_b XOR (i_a mod k))``.

    This sends ``i*d_b`` to ``i*d_b + i`` for ``i < k = min(d_a, d_b)`` and
    fixes ``0``.
    """
    split = BipartiteSplit(qubits_a, qubits_b)
    d_b, k = split.d_b, split.k
    image = []
    for idx in range(split.dim):
        i_a, i_b = divmod(idx, d_b)
        image.append(i_a * d_b + (i_b ^ (i_a % k)))
    return PermutationMap(tuple(image))


def permutation_p_gates(qubits_a, qubits_b):
    """CNOT from each of the low ``min(qa, qb)`` A-qubits to the matching B-qubit."""
    n = qubits_a + qubits_b
    gates = []
    for r in range(min(qubits_a, qubits_b)):
        gates.append(cx(qubits_a - 1 - r, n - 1 - r))
    return gates


def build_permutation_p(qubits_a, qubits_b):
    return (permutation_p_map(qubits_a, qubits_b),
            Circuit(qubits_a + qubits_b, tuple(permutation_p_gates(qubits_a, qubits_b))))


def coefficient_gates(coeffs, qubits_a, dense=False):
    """Gates on qubits ``0..qubits_a-1`` whose matrix has first column ``coeffs`` (zero-padded)."""
    d_a = 1 << qubits_a
    s = np.zeros(d_a)
    c = as_vector(coeffs, "coeffs")
    s[: c.shape[0]] = c
    if not dense and qubits_a == 1:
        return [rot(0, s[0], s[1])]
    if not dense and qubits_a == 2:
        return s_block_gates(s, 0, 1)
    return [block(tuple(range(qubits_a)), first_column_block(s))]


def build_general_schmidt(decomp, split, dense_s=False):
    """Circuit preparing ``sum_i s_i u_i (x) v_i`` from ``|0...0>``.

    Gate order: P, S on subsystem A, P, U on A, V on B. With ``dense_s`` the
    coefficient stage is always a single orthogonal block instead of the
    rotation network used for one- and two-qubit A subsystems.
    """
    s = as_vector(decomp.coefficients, "coefficients")
    k = s.shape[0]
    if k > split.d_a or k > split.d_b:
        raise DimensionError(f"{k} Schmidt coefficients do not fit split {split}")
    if abs(float(s @ s) - 1.0) > C.DECOMP_NORM_TOL or np.any(s < 0):
        raise ValidationError("Schmidt coefficients must be nonnegative with unit norm")
    ua = np.asarray(decomp.basis_a, dtype=float)
    vb = np.asarray(decomp.basis_b, dtype=float)
    if ua.shape != (split.d_a, k) or vb.shape != (split.d_b, k):
        raise DimensionError("Schmidt basis shapes do not match the split")
    u_full = complete_basis(ua, split.d_a)
    v_full = complete_basis(vb, split.d_b)

    qa, qb = split.qubits_a, split.qubits_b
    p_gates = permutation_p_gates(qa, qb)
    gates = (
        p_gates
        + coefficient_gates(s, qa, dense=dense_s)
        + p_gates
        + [block(tuple(range(qa)), u_full), block(tuple(range(qa, qa + qb)), v_full)]
    )
    return Circuit(split.n_qubits, tuple(gates))


def decomposition_from_parts(coeffs, u, v):
    """Assemble a ``SchmidtDecomposition`` from coefficients and square bases (first k columns used)."""
    s = as_vector(coeffs, "coeffs")
    k = s.shape[0]
    return SchmidtDecomposition(s, np.asarray(u, dtype=float)[:, :k], np.asarray(v, dtype=float)[:, :k])
