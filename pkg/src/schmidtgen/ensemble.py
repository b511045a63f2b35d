"""Random-state ensembles and the statistics of their pairwise angles."""

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy import stats as sps

from . import constants as C
from .builders import build_general_schmidt, decomposition_from_parts
from .circuit import simulate
from .errors import DimensionError, ValidationError
from .graphs import WeightedGraph, build_graph_circuit, plan_traversal, verify_cut_entropies
from .sampling import RngState, haar_orthogonal, random_schmidt_coefficients
from .schmidt import BipartiteSplit, entanglement_entropy


def pairwise_angles(states, abs_overlap=False):
    """``arccos`` of the overlap for every pair ``a < b``, in lexicographic order."""
    x = np.asarray(states, dtype=float)
    if x.ndim != 2:
        raise DimensionError("states must form a 2-D array (one state per row)")
    gram = x @ x.T
    iu = np.triu_indices(x.shape[0], k=1)
    ov = gram[iu]
    if abs_overlap:
        ov = np.abs(ov)
    return np.arccos(np.clip(ov, -1.0, 1.0))


class HistogramRow(NamedTuple):
    bin_lo: float
    bin_hi: float
    count: int


def histogram(values, bins=C.DEFAULT_BINS):
    """Equal-width bins over ``[min, max]``; bins are right-open except the last."""
    v = np.asarray(values, dtype=float).reshape(-1)
    if v.size == 0:
        raise ValidationError("histogram of an empty sample")
    if bins < 1:
        raise ValidationError("need at least one bin")
    lo, hi = float(v.min()), float(v.max())
    if hi == lo:
        hi = lo + C.HIST_DEGENERATE_WIDEN
    edges = np.linspace(lo, hi, bins + 1)
    counts, _ = np.histogram(v, bins=edges)
    return [HistogramRow(float(edges[i]), float(edges[i + 1]), int(counts[i])) for i in range(bins)]


MIN_STATS_VALUES = 4


class MomentStats(NamedTuple):
    n: int
    mean: float
    std: float
    skewness: float
    excess_kurtosis: float
    ks_gaussian: float
    degenerate: bool


def moment_stats(values):
    """Mean, std (``n-1``), moment skewness and excess kurtosis, and KS distance to ``N(mean, std)``.

    Skewness and kurtosis use the plain moment estimators ``m3/m2**1.5`` and
    ``m4/m2**2 - 3``. A constant sample is flagged degenerate and gets NaN
    shape statistics.
    """
    v = np.asarray(values, dtype=float).reshape(-1)
    if v.size < MIN_STATS_VALUES:
        raise ValidationError(f"moment_stats needs at least {MIN_STATS_VALUES} values")
    mean = float(v.mean())
    std = float(v.std(ddof=1))
    if std == 0.0 or np.ptp(v) == 0.0:
        return MomentStats(v.size, mean, 0.0, math.nan, math.nan, math.nan, True)
    skew = float(sps.skew(v, bias=True))
    kurt = float(sps.kurtosis(v, fisher=True, bias=True))
    ks = float(sps.kstest(v, "norm", args=(mean, std)).statistic)
    return MomentStats(v.size, mean, std, skew, kurt, ks, False)


@dataclass(frozen=True)
class EnsembleSpec:
    """``generator`` is ``"general-split"`` or ``"graph"``.

    With ``fixed_coefficients`` one coefficient set is shared by every state
    (the graph weights in graph mode, ``coefficients`` or a single random
    draw in split mode) and only the local bases change.

    Local bases default to Haar rotations (``basis_group="SO"``). Reflections
    are excluded because an O(2) draw with determinant -1 makes near-maximally
    entangled pairs almost orthogonal, piling the angles up at pi/2.
    """

    generator: str = "graph"
    count: int = C.DEFAULT_COUNT
    fixed_coefficients: bool = False
    seed: int = C.DEFAULT_SEED
    base: object = C.DEFAULT_ENTROPY_BASE
    bins: int = C.DEFAULT_BINS
    abs_overlap: bool = False
    threads: int = 1
    coefficients: tuple = None
    basis_group: str = "SO"

    def __post_init__(self):
        if self.generator not in ("general-split", "graph"):
            raise ValidationError(f"unknown generator {self.generator!r}")
        if self.count < 2:
            raise ValidationError("an ensemble needs at least 2 states")
        if self.threads < 1:
            raise ValidationError("threads must be >= 1")
        if self.basis_group not in ("O", "SO"):
            raise ValidationError("basis_group must be 'O' or 'SO'")


@dataclass
class EnsembleReport:
    angles: np.ndarray
    histogram: list
    stats: MomentStats
    s_bar: float
    entropies: np.ndarray
    overlap: str
    basis_group: str = "SO"
    states: np.ndarray = field(repr=False, default=None)

    def stats_dict(self):
        d = {k: getattr(self.stats, k) for k in ("mean", "std", "skewness", "excess_kurtosis", "ks_gaussian")}
        d = {k: (None if isinstance(x, float) and math.isnan(x) else x) for k, x in d.items()}
        d["s_bar"] = self.s_bar
        d["n_angles"] = int(self.angles.size)
        d["degenerate"] = self.stats.degenerate
        d["overlap"] = self.overlap
        d["basis_group"] = self.basis_group
        return d


def _graph_state(g, rng, fixed, group):
    plan = plan_traversal(g, rng, random_basis=True, random_coefficients=not fixed, basis_group=group)
    psi = simulate(build_graph_circuit(plan))
    checks = verify_cut_entropies(psi, g)
    h = float(np.mean([c.measured for c in checks])) if checks else 0.0
    return psi, h


def _split_state(split, rng, coeffs, base, group):
    if coeffs is None:
        coeffs = random_schmidt_coefficients(rng.child(0), split.k)
    u = haar_orthogonal(rng.child(1), split.d_a, group)
    v = haar_orthogonal(rng.child(2), split.d_b, group)
    psi = simulate(build_general_schmidt(decomposition_from_parts(coeffs, u, v), split))
    return psi, entanglement_entropy(psi, split, base)


def generate_states(spec, source):
    """States and their mean cut entropies; state ``i`` uses stream ``(seed, 1, i)``."""
    root = RngState(spec.seed)
    streams = root.child(1)
    if spec.generator == "graph":
        if not isinstance(source, WeightedGraph):
            raise ValidationError("graph ensembles need a WeightedGraph source")

        def one(i):
            return _graph_state(source, streams.child(i), spec.fixed_coefficients, spec.basis_group)
    else:
        if not isinstance(source, BipartiteSplit):
            raise ValidationError("general-split ensembles need a BipartiteSplit source")
        coeffs = None
        if spec.coefficients is not None:
            coeffs = np.asarray(spec.coefficients, dtype=float)
            if coeffs.shape[0] > source.k or abs(float(coeffs @ coeffs) - 1.0) > C.DECOMP_NORM_TOL:
                raise ValidationError("explicit coefficients must be a unit vector of length <= k")
        elif spec.fixed_coefficients:
            coeffs = random_schmidt_coefficients(root.child(0), source.k)

        def one(i):
            return _split_state(source, streams.child(i), coeffs, spec.base, spec.basis_group)

    if spec.threads == 1:
        results = [one(i) for i in range(spec.count)]
    else:
        with ThreadPoolExecutor(max_workers=spec.threads) as pool:
            results = list(pool.map(one, range(spec.count)))
    states = np.stack([r[0] for r in results])
    entropies = np.array([r[1] for r in results])
    return states, entropies


def run_ensemble(spec, source):
    states, entropies = generate_states(spec, source)
    angles = pairwise_angles(states, spec.abs_overlap)
    if angles.size < MIN_STATS_VALUES:
        # two or three states: too few angles for shape statistics
        st = MomentStats(angles.size, float(angles.mean()), math.nan, math.nan, math.nan, math.nan, True)
    else:
        st = moment_stats(angles)
    return EnsembleReport(
        angles=angles,
        histogram=histogram(angles, spec.bins),
        stats=st,
        s_bar=float(entropies.mean()),
        entropies=entropies,
        overlap="abs" if spec.abs_overlap else "signed",
        basis_group=spec.basis_group,
        states=states,
    )


def histogram_csv(report):
    buf = io.StringIO()
    buf.write(f"# overlap={report.overlap}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["bin_lo", "bin_hi", "count"])
    for row in report.histogram:
        w.writerow([repr(row.bin_lo), repr(row.bin_hi), row.count])
    return buf.getvalue()


def angles_csv(report):
    lines = [f"# overlap={report.overlap}"] + [repr(float(a)) for a in report.angles]
    return "\n".join(lines) + "\n"


def stats_json(report):
    return json.dumps(report.stats_dict(), indent=2, sort_keys=True) + "\n"


def read_histogram_csv(text):
    rows = csv.reader(line for line in io.StringIO(text) if not line.startswith("#"))
    header = next(rows)
    if header != ["bin_lo", "bin_hi", "count"]:
        raise ValidationError(f"unexpected histogram header {header}")
    return [HistogramRow(float(a), float(b), int(c)) for a, b, c in rows]
