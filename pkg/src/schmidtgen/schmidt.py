"""Schmidt decomposition, reduced density matrices and entanglement entropy.

Basis ordering: a state on ``qubits_a + qubits_b`` qubits is indexed as
``i_a * d_b + i_b``, subsystem A holding the most significant qubits. The
circuit simulator uses the same convention (qubit 0 is the most
significant bit), so a reshape to ``(d_a, d_b)`` is all that is needed.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import constants as C
from .errors import DimensionError, ValidationError
from .linalg import as_state, svd_small


@dataclass(frozen=True)
class BipartiteSplit:
    qubits_a: int
    qubits_b: int

    def __post_init__(self):
        if self.qubits_a < 1 or self.qubits_b < 1:
            raise ValidationError("both sides of a split need at least one qubit")

    @property
    def d_a(self):
        return 1 << self.qubits_a

    @property
    def d_b(self):
        return 1 << self.qubits_b

    @property
    def n_qubits(self):
        return self.qubits_a + self.qubits_b

    @property
    def dim(self):
        return self.d_a * self.d_b

    @property
    def k(self):
        return min(self.d_a, self.d_b)

    @classmethod
    def parse(cls, text):
        """``"2:3"`` -> ``BipartiteSplit(2, 3)``."""
        try:
            a, b = (int(x) for x in str(text).split(":"))
        except ValueError:
            raise ValidationError(f"split must look like 'a:b', got {text!r}") from None
        return cls(a, b)

    def __str__(self):
        return f"{self.qubits_a}:{self.qubits_b}"


@dataclass(frozen=True)
class SchmidtDecomposition:
    """``psi = sum_i coefficients[i] * kron(basis_a[:, i], basis_b[:, i])``."""

    coefficients: np.ndarray
    basis_a: np.ndarray
    basis_b: np.ndarray

    @property
    def rank(self):
        return len(self.coefficients)

    def reconstruct(self):
        return np.einsum("i,ai,bi->ab", self.coefficients, self.basis_a, self.basis_b).reshape(-1)

    def check(self, tol=C.DECOMP_NORM_TOL):
        s = self.coefficients
        if np.any(s < 0) or np.any(np.diff(s) > 0):
            raise ValidationError("Schmidt coefficients must be nonnegative and descending")
        if abs(float(s @ s) - 1.0) > tol:
            raise ValidationError("Schmidt coefficients are not normalised")
        k = len(s)
        for name, basis in (("basis_a", self.basis_a), ("basis_b", self.basis_b)):
            if basis.shape[1] != k:
                raise DimensionError(f"{name} has {basis.shape[1]} columns, expected {k}")
            if np.linalg.norm(basis.T @ basis - np.eye(k)) > C.BASIS_ORTHO_TOL:
                raise ValidationError(f"{name} columns are not orthonormal")
        return self


def _check_dim(state, split):
    if state.shape[0] != split.dim:
        raise DimensionError(f"state has dimension {state.shape[0]}, split {split} needs {split.dim}")


def schmidt_decompose(state, split):
    psi = as_state(state, tol=C.DECOMP_NORM_TOL)
    _check_dim(psi, split)
    u, s, v = svd_small(psi.reshape(split.d_a, split.d_b))
    return SchmidtDecomposition(s, u, v)


def reduced_density(state, split, keep="A"):
    """Partial trace of ``|psi><psi|`` onto subsystem ``keep`` (``"A"`` or ``"B"``)."""
    psi = as_state(state, tol=C.DECOMP_NORM_TOL)
    _check_dim(psi, split)
    m = psi.reshape(split.d_a, split.d_b)
    if keep in ("A", "a"):
        rho = m @ m.T
    elif keep in ("B", "b"):
        rho = m.T @ m
    else:
        raise ValidationError(f"keep must be 'A' or 'B', got {keep!r}")
    return 0.5 * (rho + rho.T)


def permute_qubits(state, n_qubits, order):
    """Reorder qubits so that new qubit ``j`` is old qubit ``order[j]``."""
    psi = np.asarray(state, dtype=float)
    if psi.shape[0] != 1 << n_qubits:
        raise DimensionError(f"state dimension {psi.shape[0]} does not match {n_qubits} qubits")
    if sorted(order) != list(range(n_qubits)):
        raise ValidationError("order must be a permutation of the qubit indices")
    return psi.reshape((2,) * n_qubits).transpose(order).reshape(-1)


def von_neumann_entropy(eigs, base=C.DEFAULT_ENTROPY_BASE):
    """``-sum(l * log(l))`` with ``0 log 0 = 0``; eigenvalue dust is clamped to ``[0, 1]``."""
    lam = np.clip(np.asarray(eigs, dtype=float).reshape(-1), 0.0, 1.0)
    lam = lam[lam > C.EIG_DUST]
    if lam.size == 0:
        return 0.0
    h = -float(np.sum(lam * np.log(lam))) / C.log_base(base)
    return max(h, 0.0)


def entanglement_entropy(state, split, base=C.DEFAULT_ENTROPY_BASE):
    s = schmidt_decompose(state, split).coefficients
    return von_neumann_entropy(s * s, base)


def subset_entropy(state, n_qubits, subset, base=C.DEFAULT_ENTROPY_BASE):
    """Entanglement entropy between the qubits in ``subset`` and all others."""
    subset = sorted(set(int(q) for q in subset))
    rest = [q for q in range(n_qubits) if q not in subset]
    if not subset or not rest:
        return 0.0
    psi = permute_qubits(state, n_qubits, subset + rest)
    return entanglement_entropy(psi, BipartiteSplit(len(subset), len(rest)), base)


def max_qubit_entropy(base=C.DEFAULT_ENTROPY_BASE):
    """Largest entropy of a single qubit (1 bit, or ln 2 nats)."""
    return math.log(2.0) / C.log_base(base)


def _binary_entropy(q, base):
    h = 0.0
    for x in (q, 1.0 - q):
        if x > 0.0:
            h -= x * math.log(x)
    return h / C.log_base(base)


def coefficients_for_entropy(w, base=C.DEFAULT_ENTROPY_BASE):
    """Two Schmidt coefficients ``k1 >= k2 >= 0`` whose entropy is ``w``.

    Bisection on the smaller squared coefficient ``k2**2`` in ``[0, 1/2]``,
    where the binary entropy is increasing.
    """
    w = float(w)
    wmax = max_qubit_entropy(base)
    if not (0.0 <= w <= wmax + 1e-15) or math.isnan(w):
        raise ValidationError(f"entropy {w} outside [0, {wmax}]")
    if w == 0.0:
        return 1.0, 0.0
    if w >= wmax:
        r = math.sqrt(0.5)
        return r, r
    lo, hi = 0.0, 0.5
    for _ in range(C.BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if _binary_entropy(mid, base) < w:
            lo = mid
        else:
            hi = mid
    q = 0.5 * (lo + hi)
    return math.sqrt(1.0 - q), math.sqrt(q)
