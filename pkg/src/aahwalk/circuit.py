"""Gate circuits: Trotter compilation, two-qubit block lowering, QASM export.

The two-qubit block TBLOCK(alpha, beta, gamma) stands for
exp[-i(alpha XX + beta YY + gamma ZZ)] on a pair of neighboring sites.
Its lowering uses three CNOTs with the rotation angles
theta = pi/2 - 2*gamma, phi = 2*alpha - pi/2, lam = pi/2 - 2*beta;
the resulting unitary matches the exponential up to a global phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import LoweringRequiredError, ResourceLimitError
from .model import FLAVOR_EXACT_JW, ModelParams, bond_coefficient

KIND_X = "X"
KIND_RX = "RX"
KIND_RY = "RY"
KIND_RZ = "RZ"
KIND_CNOT = "CNOT"
KIND_TBLOCK = "TBLOCK"
PRIMITIVE_KINDS = (KIND_X, KIND_RX, KIND_RY, KIND_RZ, KIND_CNOT)

SCHEME_SEQUENTIAL = "sequential"
SCHEME_EVEN_ODD = "even-odd-1"
SCHEME_STRANG = "strang-2"
SCHEMES = (SCHEME_SEQUENTIAL, SCHEME_EVEN_ODD, SCHEME_STRANG)

MAX_UNITARY_SITES = 6


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]
    angles: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"duplicate qubits in gate {self.kind}")


@dataclass
class Circuit:
    L: int
    gates: list[Gate] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def append(self, gate: Gate) -> None:
        for q in gate.qubits:
            if not 0 <= q < self.L:
                raise IndexError(f"qubit {q} out of range [0, {self.L - 1}]")
        self.gates.append(gate)

    def is_lowered(self) -> bool:
        return all(g.kind in PRIMITIVE_KINDS for g in self.gates)


def two_qubit_block(alpha: float, beta: float, gamma: float,
                    qubits: tuple[int, int]) -> list[Gate]:
    """Lowered gate sequence for exp[-i(alpha XX + beta YY + gamma ZZ)].

    Three CNOTs; equality with the exact exponential holds up to a
    global phase.
    """
    i, j = qubits
    theta = math.pi / 2 - 2 * gamma
    phi = 2 * alpha - math.pi / 2
    lam = math.pi / 2 - 2 * beta
    return [
        Gate(KIND_RZ, (i,), (math.pi / 2,)),
        Gate(KIND_CNOT, (i, j)),
        Gate(KIND_RZ, (j,), (-theta,)),
        Gate(KIND_RY, (i,), (phi,)),
        Gate(KIND_CNOT, (j, i)),
        Gate(KIND_RY, (i,), (lam,)),
        Gate(KIND_CNOT, (i, j)),
        Gate(KIND_RZ, (j,), (-math.pi / 2,)),
    ]


def lower(circuit: Circuit) -> Circuit:
    """Replace every TBLOCK by its CNOT + rotation decomposition."""
    out = Circuit(circuit.L, [], dict(circuit.metadata))
    for g in circuit.gates:
        if g.kind == KIND_TBLOCK:
            for gg in two_qubit_block(*g.angles, (g.qubits[0], g.qubits[1])):
                out.append(gg)
        else:
            out.append(g)
    out.metadata["lowered"] = True
    return out


def _bond_gates(params: ModelParams, b: int, dt: float) -> list[Gate]:
    """Gates realizing exp(-i H_b dt) for bond b at step size dt."""
    jb = bond_coefficient(params, b)
    alpha = beta = jb * dt / 2.0
    gates: list[Gate] = []
    if params.flavor == FLAVOR_EXACT_JW:
        # V n_b n_{b+1} = (V/4)(ZZ - Z_b - Z_{b+1} + I); the linear Z
        # parts become Rz rotations, the constant is a global phase.
        gamma = params.V * dt / 4.0
        gates.append(Gate(KIND_TBLOCK, (b, b + 1), (alpha, beta, gamma)))
        if params.V != 0.0:
            gates.append(Gate(KIND_RZ, (b,), (-params.V * dt / 2.0,)))
            gates.append(Gate(KIND_RZ, (b + 1,), (-params.V * dt / 2.0,)))
    else:
        gamma = params.V * dt / 2.0
        gates.append(Gate(KIND_TBLOCK, (b, b + 1), (alpha, beta, gamma)))
    return gates


def trotter_circuit(params: ModelParams, t: float, n: int,
                    scheme: str = SCHEME_SEQUENTIAL) -> Circuit:
    """Compile exp(-iHt) into n identical Trotter steps.

    sequential applies bonds 0..L-2 in order within each step;
    even-odd-1 applies all even bonds then all odd bonds; strang-2 is
    the symmetric odd/2, even, odd/2 product.
    """
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")
    if n < 1:
        raise ValueError("need at least one Trotter step")
    if t < 0:
        raise ValueError("negative evolution time")
    L = params.L
    dt = t / n
    even = list(range(0, L - 1, 2))
    odd = list(range(1, L - 1, 2))
    c = Circuit(L, [], {"steps": n, "scheme": scheme, "t": t, "dt": dt,
                        "flavor": params.flavor})
    for _ in range(n):
        if scheme == SCHEME_SEQUENTIAL:
            order = [(b, dt) for b in range(L - 1)]
        elif scheme == SCHEME_EVEN_ODD:
            order = [(b, dt) for b in even] + [(b, dt) for b in odd]
        else:  # strang-2
            order = ([(b, dt / 2) for b in odd] + [(b, dt) for b in even]
                     + [(b, dt / 2) for b in odd])
        for b, step_dt in order:
            for g in _bond_gates(params, b, step_dt):
                c.append(g)
    return c


_RX = lambda t: np.array([[math.cos(t / 2), -1j * math.sin(t / 2)],
                          [-1j * math.sin(t / 2), math.cos(t / 2)]], dtype=complex)
_RY = lambda t: np.array([[math.cos(t / 2), -math.sin(t / 2)],
                          [math.sin(t / 2), math.cos(t / 2)]], dtype=complex)
_RZ = lambda t: np.array([[np.exp(-1j * t / 2), 0],
                          [0, np.exp(1j * t / 2)]], dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)


def gate_matrix_1q(gate: Gate) -> np.ndarray:
    if gate.kind == KIND_X:
        return _X
    if gate.kind == KIND_RX:
        return _RX(gate.angles[0])
    if gate.kind == KIND_RY:
        return _RY(gate.angles[0])
    if gate.kind == KIND_RZ:
        return _RZ(gate.angles[0])
    raise ValueError(f"not a single-qubit primitive: {gate.kind}")


def _embed_1q(m: np.ndarray, q: int, L: int) -> np.ndarray:
    full = np.array([[1.0]], dtype=complex)
    for i in range(L - 1, -1, -1):
        full = np.kron(full, m if i == q else np.eye(2, dtype=complex))
    return full


def _cnot_matrix(control: int, target: int, L: int) -> np.ndarray:
    dim = 2**L
    idx = np.arange(dim)
    flipped = np.where((idx >> control) & 1 == 1, idx ^ (1 << target), idx)
    m = np.zeros((dim, dim), dtype=complex)
    m[flipped, idx] = 1.0
    return m


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Dense unitary of a circuit (application order), L <= 6 only."""
    if circuit.L > MAX_UNITARY_SITES:
        raise ResourceLimitError(f"circuit_unitary limited to L <= {MAX_UNITARY_SITES}")
    c = circuit if circuit.is_lowered() else lower(circuit)
    U = np.eye(2**c.L, dtype=complex)
    for g in c.gates:
        if g.kind == KIND_CNOT:
            m = _cnot_matrix(g.qubits[0], g.qubits[1], c.L)
        else:
            m = _embed_1q(gate_matrix_1q(g), g.qubits[0], c.L)
        U = m @ U
    return U


def export_qasm(circuit: Circuit) -> str:
    """OpenQASM 2.0 text for a lowered circuit, with a trailing measure-all."""
    if not circuit.is_lowered():
        raise LoweringRequiredError("circuit contains TBLOCK gates; lower() it first")
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{circuit.L}];",
        f"creg c[{circuit.L}];",
    ]
    for g in circuit.gates:
        if g.kind == KIND_X:
            lines.append(f"x q[{g.qubits[0]}];")
        elif g.kind == KIND_RX:
            lines.append(f"rx({g.angles[0]!r}) q[{g.qubits[0]}];")
        elif g.kind == KIND_RY:
            lines.append(f"ry({g.angles[0]!r}) q[{g.qubits[0]}];")
        elif g.kind == KIND_RZ:
            lines.append(f"rz({g.angles[0]!r}) q[{g.qubits[0]}];")
        elif g.kind == KIND_CNOT:
            lines.append(f"cx q[{g.qubits[0]}],q[{g.qubits[1]}];")
    lines.append("measure q -> c;")
    return "\n".join(lines) + "\n"
