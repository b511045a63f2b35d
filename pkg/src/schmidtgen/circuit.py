"""Real-amplitude circuits: gate list, statevector simulation, dense matrices.

Qubit 0 is the most significant bit of the basis index. A gate acts on its
``targets`` (first target = most significant bit of the payload) when every
control qubit equals its polarity; polarity 0 is a zero-control.

Two independent evaluation routes exist on purpose: ``simulate`` works on
strided views of the amplitude tensor, while ``gate_matrix`` /
``circuit_matrix`` assemble dense operators from Kronecker products.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from . import constants as C
from .errors import DimensionError, TooLargeError, ValidationError
from .linalg import as_matrix, as_state, frobenius_norm, kron, permutation_matrix, PermutationMap

KINDS = ("X", "ControlledX", "Rotation", "OrthogonalBlock")
_X = np.array([[0.0, 1.0], [1.0, 0.0]])


def rotation(a, b):
    """``[[a, -b], [b, a]]``: sends ``|0>`` to ``a|0> + b|1>``."""
    return np.array([[a, -b], [b, a]], dtype=float)


@dataclass(frozen=True)
class Gate:
    kind: str
    targets: tuple
    controls: tuple = ()
    matrix: np.ndarray = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown gate kind {self.kind!r}")
        targets = tuple(int(t) for t in self.targets)
        controls = tuple((int(q), int(p)) for q, p in self.controls)
        object.__setattr__(self, "targets", targets)
        object.__setattr__(self, "controls", controls)
        if not targets or len(set(targets)) != len(targets):
            raise ValidationError("gate targets must be distinct and non-empty")
        cq = [q for q, _ in controls]
        if len(set(cq)) != len(cq) or set(cq) & set(targets):
            raise ValidationError("control qubits must be distinct and disjoint from targets")
        if any(p not in (0, 1) for _, p in controls):
            raise ValidationError("control polarity must be 0 or 1")
        if self.kind in ("X", "ControlledX"):
            if len(targets) != 1:
                raise ValidationError(f"{self.kind} acts on exactly one target")
            if (self.kind == "X") != (not controls):
                raise ValidationError("X takes no controls; ControlledX needs at least one")
            object.__setattr__(self, "matrix", _X)
            return
        if self.matrix is None:
            raise ValidationError(f"{self.kind} needs a payload matrix")
        m = as_matrix(self.matrix, "gate payload")
        dim = 1 << len(targets)
        if m.shape != (dim, dim):
            raise DimensionError(f"payload shape {m.shape} does not match {len(targets)} target(s)")
        if self.kind == "Rotation" and (dim != 2 or abs(m[0, 0] - m[1, 1]) > C.ORTHO_TOL
                                         or abs(m[0, 1] + m[1, 0]) > C.ORTHO_TOL):
            raise ValidationError("Rotation payload must have the form [[a, -b], [b, a]]")
        if frobenius_norm(m.T @ m - np.eye(dim)) > C.ORTHO_TOL * dim:
            raise ValidationError(f"{self.kind} payload is not orthogonal")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def qubits(self):
        return tuple(q for q, _ in self.controls) + self.targets

    def to_dict(self):
        d = {"kind": self.kind, "targets": list(self.targets),
             "controls": [[q, p] for q, p in self.controls]}
        if self.kind in ("Rotation", "OrthogonalBlock"):
            d["matrix"] = self.matrix.tolist()
        return d

    @classmethod
    def from_dict(cls, d):
        return cls(d["kind"], tuple(d["targets"]), tuple(tuple(c) for c in d.get("controls", [])),
                   None if d.get("matrix") is None else np.array(d["matrix"], dtype=float))


def x(target):
    return Gate("X", (target,))


def cx(control, target, polarity=1):
    return Gate("ControlledX", (target,), ((control, polarity),))


def mcx(controls, target):
    """Multi-controlled X; ``controls`` is a list of ``(qubit, polarity)``."""
    return Gate("ControlledX", (target,), tuple(controls))


def rot(target, a, b, controls=()):
    return Gate("Rotation", (target,), tuple(controls), rotation(a, b))


def block(targets, matrix, controls=()):
    return Gate("OrthogonalBlock", tuple(targets), tuple(controls), np.asarray(matrix, dtype=float))


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    gates: tuple = ()

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValidationError("a circuit needs at least one qubit")
        gates = tuple(self.gates)
        for g in gates:
            if not isinstance(g, Gate):
                raise ValidationError(f"not a Gate: {g!r}")
            if max(g.qubits) >= self.n_qubits or min(g.qubits) < 0:
                raise ValidationError(f"gate {g.kind} on {g.qubits} outside {self.n_qubits} qubits")
        object.__setattr__(self, "gates", gates)

    def __len__(self):
        return len(self.gates)

    def __add__(self, other):
        if other.n_qubits != self.n_qubits:
            raise DimensionError("cannot concatenate circuits of different width")
        return Circuit(self.n_qubits, self.gates + other.gates)

    def to_dict(self):
        return {"n_qubits": self.n_qubits, "gates": [g.to_dict() for g in self.gates]}

    def to_json(self, indent=None):
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, d):
        return cls(int(d["n_qubits"]), tuple(Gate.from_dict(g) for g in d["gates"]))

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def apply_gate(psi, gate, n_qubits):
    """Apply ``gate`` in place to an amplitude tensor of shape ``(2,)*n [+ (batch,)]``."""
    idx = [slice(None)] * psi.ndim
    for q, p in gate.controls:
        idx[q] = p
    idx = tuple(idx)
    sub = psi[idx]
    cset = sorted(q for q, _ in gate.controls)
    # axis positions of the targets inside the control-sliced view
    axes = [t - sum(1 for c in cset if c < t) for t in gate.targets]
    nt = len(axes)
    moved = np.moveaxis(sub, axes, range(nt))
    shape = moved.shape
    out = (gate.matrix @ moved.reshape(1 << nt, -1)).reshape(shape)
    psi[idx] = np.moveaxis(out, range(nt), axes)
    return psi


def simulate(circuit, initial=None):
    """Statevector after applying all gates in order (default input ``|0...0>``)."""
    n = circuit.n_qubits
    if n > C.MAX_SIM_QUBITS:
        raise TooLargeError(f"{n} qubits exceeds simulation limit {C.MAX_SIM_QUBITS}")
    dim = 1 << n
    if initial is None:
        psi = np.zeros(dim)
        psi[0] = 1.0
    else:
        psi = as_state(initial, tol=C.DECOMP_NORM_TOL).copy()
        if psi.shape[0] != dim:
            raise DimensionError(f"initial state has dimension {psi.shape[0]}, circuit needs {dim}")
    t = psi.reshape((2,) * n)
    for g in circuit.gates:
        apply_gate(t, g, n)
    return t.reshape(-1)


def qubit_order_permutation(order):
    """Permutation sending the basis index of a register ordered as ``order`` to natural order.

    ``order[j]`` is the physical qubit that sits at position ``j``.
    """
    n = len(order)
    image = []
    for i in range(1 << n):
        bits = [(i >> (n - 1 - j)) & 1 for j in range(n)]
        dest = 0
        for j, q in enumerate(order):
            dest |= bits[j] << (n - 1 - q)
        image.append(dest)
    return PermutationMap(tuple(image))


def gate_matrix(gate, n_qubits):
    """Dense ``2**n x 2**n`` operator of one gate, assembled by Kronecker products."""
    if n_qubits > C.MAX_MATRIX_QUBITS:
        raise TooLargeError(f"dense assembly limited to {C.MAX_MATRIX_QUBITS} qubits")
    nc, nt = len(gate.controls), len(gate.targets)
    # operator on the register ordered (controls..., targets...)
    local = np.zeros((1 << (nc + nt),) * 2)
    eye_t = np.eye(1 << nt)
    active = 0
    for q_pos, (_, pol) in enumerate(gate.controls):
        active |= pol << (nc - 1 - q_pos)
    for pattern in range(1 << nc):
        proj = np.zeros((1 << nc, 1 << nc))
        proj[pattern, pattern] = 1.0
        local += kron(proj, gate.matrix if pattern == active else eye_t)
    used = list(gate.qubits)
    rest = [q for q in range(n_qubits) if q not in used]
    full = kron(local, np.eye(1 << len(rest)))
    p = permutation_matrix(qubit_order_permutation(used + rest))
    return p @ full @ p.T


def circuit_matrix(circuit):
    if circuit.n_qubits > C.MAX_MATRIX_QUBITS:
        raise TooLargeError(f"dense assembly limited to {C.MAX_MATRIX_QUBITS} qubits")
    m = np.eye(1 << circuit.n_qubits)
    for g in circuit.gates:
        m = gate_matrix(g, circuit.n_qubits) @ m
    return m


def state_to_dict(state):
    psi = np.asarray(state, dtype=float)
    n = int(psi.shape[0]).bit_length() - 1
    if 1 << n != psi.shape[0]:
        raise DimensionError("state length is not a power of two")
    return {"n_qubits": n, "amplitudes": [float(a) for a in psi]}


def state_to_json(state, indent=None):
    return json.dumps(state_to_dict(state), indent=indent)


def state_from_json(text):
    d = json.loads(text)
    psi = np.array(d["amplitudes"], dtype=float)
    if psi.shape[0] != 1 << int(d["n_qubits"]):
        raise DimensionError("amplitude count does not match n_qubits")
    return psi
