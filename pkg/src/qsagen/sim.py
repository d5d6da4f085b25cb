"""Dense state-vector/matrix simulator for the gate IR (<= 12 qubits).

This is the numerical oracle the rest of the package is tested against.
Basis index bit b is qubit b (bit 0 least significant).  With r denoting an
angle converted from degrees to radians, the gate unitaries are:

    SIGX SIGY SIGZ   Pauli matrices            HAD2   Hadamard
    ROTX/ROTY/ROTZ   exp(+i*(r/2)*sigma_axis)
    ROTN a b c       exp(+i/2 * (ra*sx + rb*sy + rc*sz))
    PHAS             scalar exp(i*r) on the control-selected subspace
    P0PH / P1PH      diag(exp(i*r), 1) / diag(1, exp(i*r)) on the target
    MP_Y             exp(+i*r_w*sigma_y) on the target, where the word w is
                     read off the mux control bits (control named j gives
                     bit j of w)
    SWAP             exchange of the two target qubit lines

Plain controls restrict any gate to the matching computational subspace.
Loops are unrolled.  All operations are pure; inputs are never mutated.
"""
from __future__ import annotations

import math

import numpy as np

from .ir import Circuit, Instruction, Opcode, unrolled

MAX_SIM_QUBITS = 12

_SIGX = np.array([[0, 1], [1, 0]], dtype=complex)
_SIGY = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SIGZ = np.array([[1, 0], [0, -1]], dtype=complex)
_HAD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)


def _roty_full(angle_deg: float) -> np.ndarray:
    """exp(+i*r*sigma_y): the multiplexor kernel (no half-angle)."""
    r = math.radians(angle_deg)
    c, s = math.cos(r), math.sin(r)
    return np.array([[c, s], [-s, c]], dtype=complex)


def _single_qubit_unitary(op: Opcode, angles_deg: tuple[float, ...]) -> np.ndarray:
    if op is Opcode.SIGX:
        return _SIGX
    if op is Opcode.SIGY:
        return _SIGY
    if op is Opcode.SIGZ:
        return _SIGZ
    if op is Opcode.HAD2:
        return _HAD
    if op is Opcode.P0PH:
        return np.diag([np.exp(1j * math.radians(angles_deg[0])), 1.0])
    if op is Opcode.P1PH:
        return np.diag([1.0, np.exp(1j * math.radians(angles_deg[0]))])
    if op in (Opcode.ROTX, Opcode.ROTY, Opcode.ROTZ):
        half = math.radians(angles_deg[0]) / 2
        c, s = math.cos(half), math.sin(half)
        if op is Opcode.ROTX:
            return np.array([[c, 1j * s], [1j * s, c]])
        if op is Opcode.ROTY:
            return np.array([[c, s], [-s, c]], dtype=complex)
        return np.diag([np.exp(1j * half), np.exp(-1j * half)])
    # ROTN: exp(i/2 * v . sigma) with v the angle vector in radians
    v = np.radians(np.asarray(angles_deg, dtype=float))
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        return np.eye(2, dtype=complex)
    axis = v / norm
    n_sigma = axis[0] * _SIGX + axis[1] * _SIGY + axis[2] * _SIGZ
    half = norm / 2
    return math.cos(half) * np.eye(2) + 1j * math.sin(half) * n_sigma


def _control_select(idx: np.ndarray, ins: Instruction) -> np.ndarray:
    sel = np.ones(idx.shape, dtype=bool)
    for c in ins.controls:
        sel &= ((idx >> c.bit) & 1) == int(c.on)
    return sel


def _mix(amp: np.ndarray, u: np.ndarray, target: int,
         sel: np.ndarray, idx: np.ndarray) -> None:
    rows0 = idx[sel & (((idx >> target) & 1) == 0)]
    rows1 = rows0 | (1 << target)
    a0 = amp[rows0].copy()
    a1 = amp[rows1]
    amp[rows0] = u[0, 0] * a0 + u[0, 1] * a1
    amp[rows1] = u[1, 0] * a0 + u[1, 1] * a1


def _apply_inplace(amp: np.ndarray, ins: Instruction, idx: np.ndarray) -> None:
    sel = _control_select(idx, ins)
    op = ins.opcode
    if op is Opcode.PHAS:
        amp[sel] *= np.exp(1j * math.radians(ins.angles_deg[0]))
    elif op is Opcode.SWAP:
        hi, lo = ins.targets
        src = sel & (((idx >> hi) & 1) == 1) & (((idx >> lo) & 1) == 0)
        rows10 = idx[src]
        rows01 = rows10 ^ ((1 << hi) | (1 << lo))
        tmp = amp[rows10].copy()
        amp[rows10] = amp[rows01]
        amp[rows01] = tmp
    elif op is Opcode.MP_Y:
        target = ins.targets[0]
        for word, angle in enumerate(ins.angles_deg):
            sub = sel.copy()
            for m in ins.mux_controls:
                sub &= ((idx >> m.bit) & 1) == ((word >> m.name) & 1)
            _mix(amp, _roty_full(angle), target, sub, idx)
    else:
        _mix(amp, _single_qubit_unitary(op, ins.angles_deg), ins.targets[0], sel, idx)


def apply(circuit: Circuit, state: np.ndarray) -> np.ndarray:
    """Apply a circuit to a state vector of matching dimension."""
    dim = 1 << circuit.num_qubits
    amp = np.array(state, dtype=complex)
    if amp.shape[0] != dim:
        raise ValueError(f"state has dimension {amp.shape[0]}, circuit needs {dim}")
    idx = np.arange(dim)
    for ins in unrolled(circuit.body):
        _apply_inplace(amp, ins, idx)
    return amp


def to_matrix(circuit: Circuit) -> np.ndarray:
    """Full unitary of a circuit; column k is the image of basis state k."""
    if circuit.num_qubits > MAX_SIM_QUBITS:
        raise ValueError(
            f"to_matrix supports at most {MAX_SIM_QUBITS} qubits, "
            f"got {circuit.num_qubits}")
    dim = 1 << circuit.num_qubits
    amp = np.eye(dim, dtype=complex)
    idx = np.arange(dim)
    for ins in unrolled(circuit.body):
        _apply_inplace(amp, ins, idx)
    return amp


def basis_state(num_qubits: int, index: int = 0) -> np.ndarray:
    state = np.zeros(1 << num_qubits, dtype=complex)
    state[index] = 1.0
    return state


def unitarity_defect(op: np.ndarray) -> float:
    op = np.asarray(op)
    return float(np.abs(op @ op.conj().T - np.eye(op.shape[0])).max())


def eig_unitary(op: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    """Eigenphases of a unitary matrix, sorted ascending in (-pi, pi]."""
    op = np.asarray(op, dtype=complex)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {op.shape}")
    defect = unitarity_defect(op)
    if defect > tol:
        raise ValueError(f"matrix is not unitary (defect {defect:.3e} > {tol:.1e})")
    return np.sort(np.angle(np.linalg.eigvals(op)))


def phases_match(actual, expected, tol: float = 1e-8) -> bool:
    """Multiset equality of two eigenphase lists, compared on the unit circle."""
    actual = np.asarray(actual, dtype=float)
    expected = np.asarray(expected, dtype=float)
    if actual.shape[0] != expected.shape[0]:
        return False
    remaining = list(np.exp(1j * actual))
    for z in np.exp(1j * expected):
        dists = [abs(z - w) for w in remaining]
        best = int(np.argmin(dists))
        if dists[best] > tol:
            return False
        remaining.pop(best)
    return True
