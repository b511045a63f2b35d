"""How the spread of pairwise angles depends on the amount of entanglement.

Two fixed-coefficient ensembles on the 5-qubit star: in one every edge carries
0.94 bits and in the other 0.08 bits. Only the local bases change from one
state to the next.
"""

from schmidtgen import EnsembleSpec, WeightedGraph, run_ensemble

for w in (0.94, 0.08):
    report = run_ensemble(EnsembleSpec(count=300, fixed_coefficients=True, seed=7), WeightedGraph.star((w,) * 4))
    st = report.stats
    print(f"S_bar {report.s_bar:.3f}: mean {st.mean:.4f} std {st.std:.4f} "
          f"skewness {st.skewness:+.3f} excess kurtosis {st.excess_kurtosis:+.3f}")
    peak = max(r.count for r in report.histogram)
    for row in report.histogram:
        print(f"  [{row.bin_lo:5.3f}, {row.bin_hi:5.3f}) {'#' * round(40 * row.count / peak)}")
