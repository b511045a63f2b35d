"""Weighted acyclic graphs and their sequential Schmidt-circuit states.

Each vertex is one qubit and each edge weight is the entanglement entropy
across the cut obtained by deleting that edge. A tree is built edge by edge:
the qubit already in the circuit is entangled with a fresh ``|0>`` qubit by
the two-qubit Schmidt circuit, which leaves every earlier cut untouched.
"""

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import constants as C
from .builders import schmidt_pair_gates
from .circuit import Circuit
from .errors import DimensionError, GraphError, ValidationError
from .sampling import as_rng, haar_orthogonal, random_schmidt_coefficients
from .schmidt import coefficients_for_entropy, max_qubit_entropy, subset_entropy


@dataclass(frozen=True)
class WeightedGraph:
    """Forest on ``n_vertices`` qubits. Vertices are 0-based; files use 1-based labels."""

    n_vertices: int
    edges: tuple  # of (u, v, w) with u < v
    base: object = C.DEFAULT_ENTROPY_BASE

    def __post_init__(self):
        if self.n_vertices < 1:
            raise GraphError("graph needs at least one vertex")
        wmax = max_qubit_entropy(self.base)
        seen = set()
        parent = list(range(self.n_vertices))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        norm = []
        for u, v, w in self.edges:
            u, v, w = int(u), int(v), float(w)
            if u == v:
                raise GraphError(f"self-loop on vertex {u + 1}")
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise GraphError(f"edge ({u + 1}, {v + 1}) outside {self.n_vertices} vertices")
            u, v = min(u, v), max(u, v)
            if (u, v) in seen:
                raise GraphError(f"duplicate edge ({u + 1}, {v + 1})")
            if not (0.0 <= w <= wmax):
                raise GraphError(f"weight {w} of edge ({u + 1}, {v + 1}) outside [0, {wmax:.6g}]")
            ru, rv = find(u), find(v)
            if ru == rv:
                raise GraphError(f"edge ({u + 1}, {v + 1}) closes a cycle")
            parent[ru] = rv
            seen.add((u, v))
            norm.append((u, v, w))
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def weights(self):
        return np.array([w for _, _, w in self.edges])

    def neighbours(self, vertex):
        out = []
        for u, v, w in self.edges:
            if u == vertex:
                out.append((v, w))
            elif v == vertex:
                out.append((u, w))
        return sorted(out)

    def degree(self, vertex):
        return len(self.neighbours(vertex))

    def _reach(self, start, cut=None):
        side, todo = {start}, [start]
        while todo:
            a = todo.pop()
            for b, _ in self.neighbours(a):
                if b not in side and {a, b} != cut:
                    side.add(b)
                    todo.append(b)
        return sorted(side)

    def component(self, vertex):
        return self._reach(vertex)

    def side_of(self, edge):
        """Vertices on the ``v`` side after deleting ``edge = (u, v, ...)``."""
        return self._reach(edge[1], {edge[0], edge[1]})

    def to_text(self):
        lines = [f"vertices {self.n_vertices}"]
        lines += [f"{u + 1} {v + 1} {w!r}" for u, v, w in self.edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def path(cls, weights, base=C.DEFAULT_ENTROPY_BASE):
        return cls(len(weights) + 1, tuple((i, i + 1, w) for i, w in enumerate(weights)), base)

    @classmethod
    def star(cls, weights, base=C.DEFAULT_ENTROPY_BASE):
        return cls(len(weights) + 1, tuple((0, i + 1, w) for i, w in enumerate(weights)), base)


def parse_graph(text, base=C.DEFAULT_ENTROPY_BASE):
    """Parse ``u v w`` edge lines (1-based labels, ``#`` comments, optional ``vertices N``)."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise GraphError(f"graph input is not UTF-8: {exc}") from None
    edges, n_header, max_label = [], None, 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0].lower() == "vertices":
            if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) < 1:
                raise GraphError("expected 'vertices N' with N >= 1", lineno)
            n_header = int(parts[1])
            continue
        if len(parts) != 3:
            raise GraphError(f"expected 'u v w', got {line!r}", lineno)
        try:
            u, v, w = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise GraphError(f"cannot parse {line!r}", lineno) from None
        if u < 1 or v < 1:
            raise GraphError("vertex labels are 1-based", lineno)
        edges.append((u - 1, v - 1, w, lineno))
        max_label = max(max_label, u, v)
    n = n_header if n_header is not None else max_label
    if n < max_label:
        raise GraphError(f"'vertices {n}' is smaller than the largest label {max_label}")
    if n == 0:
        raise GraphError("graph has no vertices")
    # validate incrementally so errors carry the offending line number
    accepted = []
    for u, v, w, lineno in edges:
        try:
            WeightedGraph(n, tuple(accepted) + ((u, v, w),), base)
        except GraphError as exc:
            raise GraphError(str(exc), lineno) from None
        accepted.append((u, v, w))
    return WeightedGraph(n, tuple(accepted), base)


class PlanStep(NamedTuple):
    attached: int
    fresh: int
    k1: float
    k2: float
    u: np.ndarray
    v: np.ndarray
    weight: float


@dataclass(frozen=True)
class GenerationPlan:
    n_qubits: int
    steps: tuple
    roots: tuple


def component_roots(g):
    """One root per connected component: its smallest vertex label."""
    roots, seen = [], set()
    for r in range(g.n_vertices):
        if r not in seen:
            roots.append(r)
            seen.update(g.component(r))
    return roots


def plan_traversal(g, rng=None, random_basis=False, random_coefficients=False, root=None,
                   basis_group="O"):
    """Breadth-first edge order with per-step Schmidt coefficients and local bases.

    Each component is rooted at its smallest vertex (or at ``root`` for the
    component containing it); neighbours are visited in ascending order.
    Coefficients come from the edge weight unless ``random_coefficients``
    asks for fresh random ones (the weights are then ignored). Random local
    bases are Haar draws from ``basis_group`` (``"O"`` or ``"SO"``).
    """
    rng = as_rng(rng)
    roots = component_roots(g)
    if root is not None:
        root = int(root)
        if not 0 <= root < g.n_vertices:
            raise ValidationError(f"root {root + 1} is not a vertex")
        comp = set(g.component(root))
        roots = [root if r in comp else r for r in roots]
    eye = np.eye(2)
    steps, visited = [], set()
    for r in roots:
        visited.add(r)
        queue = deque([r])
        while queue:
            a = queue.popleft()
            for b, w in g.neighbours(a):
                if b in visited:
                    continue
                visited.add(b)
                queue.append(b)
                j = len(steps)
                if random_coefficients:
                    k1, k2 = (float(x) for x in random_schmidt_coefficients(rng.child(3 * j), 2))
                else:
                    k1, k2 = coefficients_for_entropy(w, g.base)
                if random_basis:
                    u = haar_orthogonal(rng.child(3 * j + 1), 2, basis_group)
                    v = haar_orthogonal(rng.child(3 * j + 2), 2, basis_group)
                else:
                    u, v = eye, eye
                steps.append(PlanStep(a, b, k1, k2, u, v, w))
    return GenerationPlan(g.n_vertices, tuple(steps), tuple(roots))


def build_graph_circuit(plan, n=None):
    n = plan.n_qubits if n is None else n
    gates = []
    for st in plan.steps:
        if max(st.attached, st.fresh) >= n:
            raise DimensionError(f"plan vertex outside {n} qubits")
        identity_u = np.array_equal(st.u, np.eye(2))
        identity_v = np.array_equal(st.v, np.eye(2))
        gates += schmidt_pair_gates(st.attached, st.fresh, st.k1, st.k2,
                                    None if identity_u else st.u, None if identity_v else st.v)
    return Circuit(n, tuple(gates))


class CutCheck(NamedTuple):
    edge: tuple
    measured: float
    weight: float
    abs_error: float


def verify_cut_entropies(state, g, base=None):
    """Measured entropy across every edge-deletion cut, next to the edge weight."""
    base = g.base if base is None else base
    psi = np.asarray(state, dtype=float)
    if psi.shape[0] != 1 << g.n_vertices:
        raise DimensionError(f"state dimension {psi.shape[0]} does not match {g.n_vertices} vertices")
    out = []
    for e in g.edges:
        h = subset_entropy(psi, g.n_vertices, g.side_of(e), base)
        out.append(CutCheck((e[0], e[1]), h, e[2], abs(h - e[2])))
    return out
