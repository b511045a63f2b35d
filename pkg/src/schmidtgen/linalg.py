"""Dense real linear algebra primitives.

Matrices and vectors are plain ``numpy.ndarray`` objects of dtype float64.
The SVD is a one-sided (Hestenes) Jacobi iteration, which is accurate and
fast enough for the <= 32x32 coefficient matrices that appear here.
"""

from dataclasses import dataclass

import numpy as np

from . import constants as C
from .errors import DimensionError, NumericalError, RankDeficientError, TooLargeError, ValidationError


def as_matrix(a, name="matrix"):
    """Coerce to a finite 2-D float64 array."""
    m = np.asarray(a, dtype=float)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValidationError(f"{name} has non-finite entries")
    return m


def as_vector(v, name="vector"):
    x = np.asarray(v, dtype=float).reshape(-1)
    if not np.all(np.isfinite(x)):
        raise ValidationError(f"{name} has non-finite entries")
    return x


def as_state(v, tol=C.STATE_NORM_TOL, name="state"):
    """Coerce to a unit-norm real vector; raise if the norm is off by more than ``tol``."""
    x = as_vector(v, name)
    nrm = np.linalg.norm(x)
    if abs(nrm - 1.0) > tol:
        raise ValidationError(f"{name} is not normalised (norm {nrm!r})")
    return x


def is_orthogonal(m, tol=C.ORTHO_TOL):
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return frobenius_norm(m.T @ m - np.eye(m.shape[0])) <= tol


def kron(a, b):
    """Kronecker product; column ``i*b.cols + j`` is ``a[:, i] (x) b[:, j]``."""
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    rows, cols = a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]
    if max(rows, cols) > C.MAX_DENSE_DIM:
        raise TooLargeError(f"kron result {rows}x{cols} exceeds {C.MAX_DENSE_DIM}")
    return np.kron(a, b)


def frobenius_norm(m):
    m = np.asarray(m, dtype=float)
    return float(np.sqrt(np.sum(m * m)))


def qr_orthonormalize(g):
    """Orthogonal factor of ``g = QR`` with the convention ``diag(R) > 0``.

    The sign fix makes ``Q`` Haar distributed when ``g`` has i.i.d. Gaussian
    entries. Raises ``RankDeficientError`` when ``g`` is numerically singular.
    """
    g = as_matrix(g, "g")
    n, m = g.shape
    if n != m:
        raise DimensionError(f"qr_orthonormalize needs a square matrix, got {g.shape}")
    sv = np.linalg.svd(g, compute_uv=False)
    if sv[0] == 0.0 or sv[-1] <= C.QR_RANK_RTOL * sv[0]:
        raise RankDeficientError("matrix is numerically rank deficient")
    q, r = np.linalg.qr(g)
    d = np.sign(np.diag(r))
    d[d == 0] = 1.0
    return q * d


def qr_with_r(g):
    """Return ``(Q, R)`` under the same sign convention as ``qr_orthonormalize``."""
    q = qr_orthonormalize(g)
    return q, q.T @ np.asarray(g, dtype=float)


def complete_basis(q, ncols=None):
    """Extend orthonormal columns ``q`` with further orthonormal columns.

    Existing columns are kept in place; new ones are taken from the standard
    basis vectors with the largest residual, orthogonalised twice.
    """
    q = as_matrix(q, "q")
    n, k = q.shape
    ncols = n if ncols is None else ncols
    if ncols > n or ncols < k:
        raise DimensionError(f"cannot complete {n}x{k} basis to {ncols} columns")
    out = np.zeros((n, ncols))
    out[:, :k] = q
    for j in range(k, ncols):
        basis = out[:, :j]
        cand = np.eye(n)
        for _ in range(2):
            cand = cand - basis @ (basis.T @ cand)
        best = int(np.argmax(np.sum(cand * cand, axis=0)))
        v = cand[:, best]
        v = v - basis @ (basis.T @ v)
        out[:, j] = v / np.linalg.norm(v)
    return out


def _round_robin(n):
    """Pairings of ``0..n-1`` such that each round holds disjoint pairs."""
    idx = list(range(n)) + ([-1] if n % 2 else [])
    m = len(idx)
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            a, b = idx[i], idx[m - 1 - i]
            if a >= 0 and b >= 0:
                ps.append(min(a, b))
                qs.append(max(a, b))
        if ps:
            rounds.append((np.array(ps), np.array(qs)))
        idx = [idx[0]] + [idx[-1]] + idx[1:-1]
    return rounds


def _jacobi_tall(a):
    """One-sided Jacobi on a tall matrix; returns rotated columns and V."""
    rows, cols = a.shape
    a = a.copy()
    v = np.eye(cols)
    if cols == 1:
        return a, v
    rel_tol = max(rows, cols) * C.SVD_ROTATION_EPS
    floor = (C.SVD_OFFDIAG_TOL * frobenius_norm(a)) ** 2
    rounds = _round_robin(cols)
    for _ in range(C.SVD_MAX_SWEEPS):
        rotated = False
        for p, q in rounds:
            ap, aq = a[:, p], a[:, q]
            alpha = np.einsum("ij,ij->j", ap, ap)
            beta = np.einsum("ij,ij->j", aq, aq)
            gamma = np.einsum("ij,ij->j", ap, aq)
            scale = np.sqrt(alpha * beta)
            act = (np.abs(gamma) > rel_tol * scale) & (np.minimum(alpha, beta) > floor)
            if not act.any():
                continue
            rotated = True
            p, q = p[act], q[act]
            ap, aq = ap[:, act], aq[:, act]
            alpha, beta, gamma = alpha[act], beta[act], gamma[act]
            zeta = (beta - alpha) / (2.0 * gamma)
            t = np.where(zeta >= 0, 1.0, -1.0) / (np.abs(zeta) + np.sqrt(1.0 + zeta * zeta))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = c * t
            a[:, p], a[:, q] = c * ap - s * aq, s * ap + c * aq
            vp, vq = v[:, p], v[:, q]
            v[:, p], v[:, q] = c * vp - s * vq, s * vp + c * vq
        if not rotated:
            return a, v
    sv = np.sqrt(np.einsum("ij,ij->j", a, a))
    cond = sv.max() / sv.min() if sv.min() > 0 else np.inf
    raise NumericalError(
        f"Jacobi SVD did not converge in {C.SVD_MAX_SWEEPS} sweeps (condition ~ {cond:.3g})"
    )


def svd_small(m, full=False):
    """Singular value decomposition ``m = u @ diag(sigma) @ v.T``.

    Parameters
    ----------
    m : array_like, shape (r, c)
    full : bool
        If True, ``u`` and ``v`` are square orthogonal matrices; otherwise
        they carry ``min(r, c)`` columns.

    Returns
    -------
    u, sigma, v
        ``sigma`` is sorted descending. Each column of ``u`` has its
        largest-magnitude entry positive (with ``v`` flipped to match).
    """
    m = as_matrix(m, "m")
    if frobenius_norm(m) == 0.0:
        raise ValidationError("svd_small needs a nonzero matrix")
    rows, cols = m.shape
    transposed = rows < cols
    a = m.T if transposed else m
    r, c = a.shape

    rot, vt = _jacobi_tall(a)
    sigma = np.sqrt(np.einsum("ij,ij->j", rot, rot))
    order = np.argsort(-sigma, kind="stable")
    sigma, rot, vt = sigma[order], rot[:, order], vt[:, order]

    zero = C.SVD_OFFDIAG_TOL * frobenius_norm(m)
    live = int(np.sum(sigma > zero))
    ut = np.zeros((r, c))
    ut[:, :live] = rot[:, :live] / sigma[:live]
    if live < c:
        ut = complete_basis(ut[:, :live], c)
        sigma[live:] = 0.0
    if full:
        ut = complete_basis(ut, r)

    u, v = (vt, ut) if transposed else (ut, vt)
    k = min(rows, cols)
    for j in range(k):
        i = int(np.argmax(np.abs(u[:, j])))
        if u[i, j] < 0:
            u[:, j] = -u[:, j]
            v[:, j] = -v[:, j]
    return u, sigma, v


@dataclass(frozen=True)
class PermutationMap:
    """Bijection on ``0..size-1``; ``image[i]`` is where index ``i`` is sent."""

    image: tuple

    def __post_init__(self):
        img = tuple(int(i) for i in self.image)
        if sorted(img) != list(range(len(img))):
            raise ValidationError("permutation image is not a bijection")
        object.__setattr__(self, "image", img)

    @property
    def size(self):
        return len(self.image)

    def inverse(self):
        inv = [0] * self.size
        for i, j in enumerate(self.image):
            inv[j] = i
        return PermutationMap(tuple(inv))

    def apply(self, v):
        """Return ``w`` with ``w[image[i]] = v[i]``."""
        v = np.asarray(v)
        out = np.empty_like(v)
        out[list(self.image)] = v
        return out

    @classmethod
    def identity(cls, size):
        return cls(tuple(range(size)))


def permutation_matrix(p):
    """Dense 0/1 matrix ``P`` with ``(P v)[p.image[i]] = v[i]``."""
    n = p.size
    out = np.zeros((n, n))
    out[list(p.image), np.arange(n)] = 1.0
    return out
