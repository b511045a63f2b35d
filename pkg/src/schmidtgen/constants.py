"""Numerical tolerances and defaults shared across the package.

All thresholds live here so that the contracts of the individual modules
can be audited in one place.
"""

import math

# orthogonality / normalisation checks
ORTHO_TOL = 1e-12
STATE_NORM_TOL = 1e-12
DECOMP_NORM_TOL = 1e-10
BASIS_ORTHO_TOL = 1e-11

# linear algebra
QR_RANK_RTOL = 1e-10
SVD_MAX_SWEEPS = 100
SVD_OFFDIAG_TOL = 1e-14
SVD_ROTATION_EPS = 2.0**-52
MAX_DENSE_DIM = 2**14

# circuit assembly guards
MAX_MATRIX_QUBITS = 12
MAX_SIM_QUBITS = 24

# entropy
EIG_DUST = 1e-12
BISECT_MAX_ITER = 200
BISECT_ARG_TOL = 1e-12

# sampling
DEFAULT_SEED = 0xC0FFEE
HAAR_MAX_RESAMPLE = 3

# ensembles and CLI
DEFAULT_ENTROPY_BASE = 2
DEFAULT_BINS = 20
DEFAULT_COUNT = 1000
HIST_DEGENERATE_WIDEN = 1e-9


def log_base(base):
    """Return ``ln(base)`` for an entropy base given as ``2``, ``"2"``, ``"e"`` or ``math.e``."""
    if base in (2, 2.0, "2"):
        return math.log(2.0)
    if base in ("e", math.e):
        return 1.0
    raise ValueError(f"unsupported entropy base {base!r}; use 2 or 'e'")
