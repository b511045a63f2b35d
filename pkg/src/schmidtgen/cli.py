"""Command line interface: ``gen``, ``graph`` and ``ensemble`` subcommands.

Exit codes: 0 success, 1 invalid input, 2 numerical failure.
"""

import argparse
import os
import sys

import numpy as np

from . import constants as C
from .builders import build_general_schmidt, decomposition_from_parts
from .circuit import simulate, state_to_json
from .ensemble import EnsembleSpec, angles_csv, histogram_csv, run_ensemble, stats_json
from .errors import NumericalError, ValidationError
from .graphs import build_graph_circuit, parse_graph, plan_traversal, verify_cut_entropies
from .sampling import RngState, haar_orthogonal, random_schmidt_coefficients
from .schmidt import BipartiteSplit, entanglement_entropy

VERIFY_TOL = 1e-9


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(f"{self.prog}: {message}")


def _seed(text):
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _base(text):
    if text not in ("2", "e"):
        raise argparse.ArgumentTypeError("entropy base must be 2 or e")
    return 2 if text == "2" else "e"


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


def _coeffs(text):
    try:
        c = np.array([float(x) for x in text.split(",")])
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse coefficients {text!r}") from None
    if np.any(c < 0) or not np.any(c > 0):
        raise argparse.ArgumentTypeError("coefficients must be nonnegative and not all zero")
    return tuple(np.sort(c / np.linalg.norm(c))[::-1])


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _read_graph(path, base):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read graph file {path!r}: {exc.strerror}") from None
    return parse_graph(data, base)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=_seed, default=C.DEFAULT_SEED,
                        help="unsigned 64-bit seed (default 0xC0FFEE)")
    common.add_argument("--entropy-base", type=_base, default=C.DEFAULT_ENTROPY_BASE,
                        help="log base of entropies and weights: 2 or e (default 2)")

    p = _Parser(prog="schmidtgen", description="Random states with prescribed bipartite entanglement.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common], help="random state for a bipartite split")
    g.add_argument("--qubits", type=_positive)
    g.add_argument("--split", type=str, help="qubits in A and B, e.g. 2:2")
    g.add_argument("--coeffs", type=_coeffs, help="comma-separated Schmidt coefficients (normalised)")
    g.add_argument("--basis-group", choices=("O", "SO"), default="O")
    g.add_argument("--out", help="state JSON path (default stdout)")
    g.add_argument("--circuit", help="also write the circuit JSON here")

    r = sub.add_parser("graph", parents=[common], help="state for a weighted acyclic graph")
    r.add_argument("--in", dest="infile", required=True, help="graph text file")
    r.add_argument("--random-basis", action="store_true", help="Haar-random local bases per edge")
    r.add_argument("--basis-group", choices=("O", "SO"), default="O")
    r.add_argument("--verify", action="store_true", help="print per-edge cut entropies")
    r.add_argument("--out", help="state JSON path")
    r.add_argument("--circuit", help="circuit JSON path")

    e = sub.add_parser("ensemble", parents=[common], help="pairwise-angle statistics of an ensemble")
    src = e.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help="graph text file")
    src.add_argument("--split", type=str, help="bipartite split a:b")
    e.add_argument("--count", type=_positive, default=C.DEFAULT_COUNT)
    e.add_argument("--fixed-coeffs", action="store_true",
                   help="share one coefficient set across the ensemble; only bases vary")
    e.add_argument("--coeffs", type=_coeffs, help="explicit coefficients for --split (implies --fixed-coeffs)")
    e.add_argument("--bins", type=_positive, default=C.DEFAULT_BINS)
    e.add_argument("--abs-overlap", action="store_true", help="use arccos|<a,b>| in [0, pi/2]")
    e.add_argument("--basis-group", choices=("O", "SO"), default="SO")
    e.add_argument("--threads", type=_positive, default=os.cpu_count() or 1,
                   help="worker threads (outputs do not depend on it)")
    e.add_argument("--hist", help="histogram CSV path")
    e.add_argument("--angles", help="angles CSV path")
    e.add_argument("--stats", help="statistics JSON path")
    return p


def _resolve_split(qubits, split):
    if split is None:
        if qubits is None or qubits < 2:
            raise ValidationError("give --split a:b or --qubits N with N >= 2")
        return BipartiteSplit(qubits // 2, qubits - qubits // 2)
    sp = BipartiteSplit.parse(split)
    if qubits is not None and qubits != sp.n_qubits:
        raise ValidationError(f"--qubits {qubits} does not match --split {split}")
    return sp


def cmd_gen(args):
    split = _resolve_split(args.qubits, args.split)
    rng = RngState(args.seed)
    if args.coeffs is not None:
        if len(args.coeffs) > split.k:
            raise ValidationError(f"split {split} holds at most {split.k} coefficients")
        coeffs = np.array(args.coeffs)
    else:
        coeffs = random_schmidt_coefficients(rng.child(0), split.k)
    u = haar_orthogonal(rng.child(1), split.d_a, args.basis_group)
    v = haar_orthogonal(rng.child(2), split.d_b, args.basis_group)
    circ = build_general_schmidt(decomposition_from_parts(coeffs, u, v), split)
    psi = simulate(circ)
    _write(args.out, state_to_json(psi) + "\n")
    if args.circuit:
        _write(args.circuit, circ.to_json(indent=1) + "\n")
    if args.out not in (None, "-"):
        h = entanglement_entropy(psi, split, args.entropy_base)
        print(f"split {split}: {psi.size} amplitudes, entanglement entropy {h:.10f}")
    return 0


def cmd_graph(args):
    g = _read_graph(args.infile, args.entropy_base)
    plan = plan_traversal(g, RngState(args.seed), random_basis=args.random_basis,
                          basis_group=args.basis_group)
    circ = build_graph_circuit(plan)
    psi = simulate(circ)
    if args.out:
        _write(args.out, state_to_json(psi) + "\n")
    if args.circuit:
        _write(args.circuit, circ.to_json(indent=1) + "\n")
    if not args.verify:
        if not args.out:
            _write(None, state_to_json(psi) + "\n")
        return 0
    checks = verify_cut_entropies(psi, g, args.entropy_base)
    print(f"{'edge':>9}  {'weight':>14}  {'measured':>14}  {'error':>10}")
    for c in checks:
        u, v = c.edge
        print(f"{u + 1:>4}-{v + 1:<4}  {c.weight:14.10f}  {c.measured:14.10f}  {c.abs_error:10.3e}")
    worst = max((c.abs_error for c in checks), default=0.0)
    print(f"max error {worst:.3e}")
    if worst >= VERIFY_TOL:
        raise NumericalError(f"cut entropy error {worst:.3e} exceeds {VERIFY_TOL:g}")
    return 0


def cmd_ensemble(args):
    fixed = args.fixed_coeffs or args.coeffs is not None
    if args.graph is not None:
        if args.coeffs is not None:
            raise ValidationError("--coeffs applies to --split ensembles; graph weights set the coefficients")
        source = _read_graph(args.graph, args.entropy_base)
        generator = "graph"
    else:
        source = BipartiteSplit.parse(args.split)
        generator = "general-split"
    spec = EnsembleSpec(generator=generator, count=args.count, fixed_coefficients=fixed, seed=args.seed,
                        base=args.entropy_base, bins=args.bins, abs_overlap=args.abs_overlap,
                        threads=args.threads, coefficients=args.coeffs, basis_group=args.basis_group)
    report = run_ensemble(spec, source)
    if args.hist:
        _write(args.hist, histogram_csv(report))
    if args.angles:
        _write(args.angles, angles_csv(report))
    if args.stats:
        _write(args.stats, stats_json(report))
    st = report.stats
    print(f"states {spec.count}, angles {report.angles.size}, overlap {report.overlap}, "
          f"bases {report.basis_group}")
    print(f"mean {st.mean:.6f}  std {st.std:.6f}  skewness {st.skewness:.4f}  "
          f"excess kurtosis {st.excess_kurtosis:.4f}  KS {st.ks_gaussian:.4f}  S_bar {report.s_bar:.4f}")
    return 0


COMMANDS = {"gen": cmd_gen, "graph": cmd_graph, "ensemble": cmd_ensemble}


def cli_main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(cli_main())
