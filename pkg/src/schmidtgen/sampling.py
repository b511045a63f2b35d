"""Seedable, splittable randomness.

Every ``RngState`` wraps a Philox counter-based generator whose 128-bit key
is built from ``(seed, path)``. Children are addressed by integer index, so
an ensemble can hand state ``i`` the stream ``root.child(i)`` and get the
same numbers no matter how the work is scheduled.
"""

import numpy as np

from . import constants as C
from .errors import NumericalError, RankDeficientError, ValidationError
from .linalg import qr_orthonormalize

_MASK64 = (1 << 64) - 1


def _splitmix64(x):
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def _path_word(path):
    h = 0
    for idx in path:
        h = _splitmix64(h ^ _splitmix64(int(idx) & _MASK64))
        h = h or 1
    return h


class RngState:
    """Counter-based random stream keyed by ``(seed, path)``.

    >>> a = RngState(7).child(3)
    >>> b = RngState(7).child(3)
    >>> bool((a.uniform(4) == b.uniform(4)).all())
    True
    """

    def __init__(self, seed=C.DEFAULT_SEED, path=()):
        seed = int(seed)
        if not 0 <= seed <= _MASK64:
            raise ValidationError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.seed = seed
        self.path = tuple(int(i) for i in path)
        key = seed | (_path_word(self.path) << 64)
        self._gen = np.random.Generator(np.random.Philox(key=key))

    def __repr__(self):
        return f"RngState(seed={self.seed:#x}, path={self.path})"

    def child(self, index):
        """Independent stream for sub-task ``index`` (does not advance ``self``)."""
        return RngState(self.seed, self.path + (int(index),))

    def uniform(self, size=None):
        """Doubles in ``[0, 1)``."""
        return self._gen.random(size)

    def normal(self, size):
        """Standard normals by the Box-Muller transform."""
        size = int(np.prod(size)) if np.ndim(size) else int(size)
        npairs = (size + 1) // 2
        u1 = 1.0 - self._gen.random(npairs)  # (0, 1], keeps log finite
        u2 = self._gen.random(npairs)
        r = np.sqrt(-2.0 * np.log(u1))
        theta = 2.0 * np.pi * u2
        z = np.empty(2 * npairs)
        z[0::2] = r * np.cos(theta)
        z[1::2] = r * np.sin(theta)
        return z[:size]


def as_rng(rng):
    if isinstance(rng, RngState):
        return rng
    if rng is None:
        return RngState()
    return RngState(int(rng))


def gauss_matrix(rng, m, n):
    """``m x n`` matrix of i.i.d. standard normal entries."""
    if m < 1 or n < 1:
        raise ValidationError("gauss_matrix needs m, n >= 1")
    return as_rng(rng).normal(m * n).reshape(m, n)


def haar_orthogonal(rng, n, group="O"):
    """Haar-random ``n x n`` orthogonal matrix via sign-corrected QR.

    ``group="SO"`` restricts to rotations: a draw with determinant -1 has its
    first column negated, which maps Haar measure on O(n) onto Haar measure
    on SO(n).
    """
    if n < 1:
        raise ValidationError("haar_orthogonal needs n >= 1")
    if group not in ("O", "SO"):
        raise ValidationError(f"group must be 'O' or 'SO', got {group!r}")
    rng = as_rng(rng)
    for _ in range(1 + C.HAAR_MAX_RESAMPLE):
        try:
            q = qr_orthonormalize(gauss_matrix(rng, n, n))
        except RankDeficientError:
            continue
        if group == "SO" and np.linalg.det(q) < 0:
            q[:, 0] = -q[:, 0]
        return q
    raise NumericalError(f"haar_orthogonal: {1 + C.HAAR_MAX_RESAMPLE} rank-deficient draws in a row")


def random_schmidt_coefficients(rng, k, law="abs-gauss"):
    """Random nonnegative unit vector of length ``k``, sorted descending.

    ``law="abs-gauss"`` normalises ``|z|`` for standard normal ``z`` (the
    squares are then Dirichlet(1/2, ..., 1/2)); ``law="simplex"`` draws the
    squares uniformly from the probability simplex.
    """
    if k < 1:
        raise ValidationError("need k >= 1")
    rng = as_rng(rng)
    if law == "abs-gauss":
        s = np.abs(rng.normal(k))
    elif law == "simplex":
        s = np.sqrt(-np.log(1.0 - rng.uniform(k)))
    else:
        raise ValidationError(f"unknown coefficient law {law!r}")
    nrm = np.linalg.norm(s)
    if nrm == 0.0:
        s = np.zeros(k)
        s[0] = 1.0
    else:
        s = s / nrm
    return np.sort(s)[::-1].copy()
