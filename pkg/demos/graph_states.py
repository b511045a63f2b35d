"""Build states whose edge-cut entropies equal the weights of a tree.

Each edge entangles an attached qubit with a fresh one. Deleting that edge
splits the tree in two, and the entropy across that cut is the edge weight.
"""

from pathlib import Path

from schmidtgen import RngState, build_graph_circuit, parse_graph, plan_traversal, simulate, verify_cut_entropies

here = Path(__file__).resolve().parent.parent / "graphs"

for name in ("linear8.txt", "star8.txt"):
    g = parse_graph((here / name).read_text())
    plan = plan_traversal(g, RngState(7), random_basis=True)
    psi = simulate(build_graph_circuit(plan))
    print(f"{name}: {g.n_vertices} qubits, edge order",
          [(s.attached + 1, s.fresh + 1) for s in plan.steps])
    for check in verify_cut_entropies(psi, g):
        u, v = check.edge
        print(f"  {u + 1}-{v + 1}: weight {check.weight:.4f} measured {check.measured:.10f}")
