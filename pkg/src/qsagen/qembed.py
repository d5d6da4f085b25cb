"""Unitary embedding of a column-stochastic matrix as multiplexor cascades.

Given a 2**nb dimensional matrix q with columns that are probability
distributions, the cascade built here acts on 2*nb qubits: the low register
(bits 0..nb-1) carries the input state x, the high register (bits nb..2nb-1)
starts at |0> and receives a fresh sample.  Stage s rotates bit nb+s,
multiplexed over all previously fixed bits, so that

    <y~ y| U |0 x> = delta(y, x) * sqrt(q[y~, x])

holds exactly: the amplitudes of the high register reproduce column x of q.

Stage angles are conditional-marginal splits: with the low bits of the
sample already pinned to a prefix, cos^2(theta) is the probability that the
next sample bit is 0 given the prefix and the input x.  A prefix of total
probability zero gets angle 0 (the branch is unreachable, any angle works).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ir import Circuit, Instruction, MuxControl, mp_y


@dataclass(frozen=True)
class MuxAngleTable:
    """Rotation angles of one multiplexor: entry w is used when the control
    bits (control_bits[j] supplies bit j of w) spell the word w."""

    target: int
    control_bits: tuple[int, ...]
    angles_rad: tuple[float, ...]

    def __post_init__(self):
        if len(self.angles_rad) != 1 << len(self.control_bits):
            raise ValueError(
                f"{len(self.control_bits)} controls need "
                f"{1 << len(self.control_bits)} angles, got {len(self.angles_rad)}")


def validate_stochastic(q: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Check q is square, 2**nb dimensional, and column-stochastic."""
    q = np.asarray(q, dtype=float)
    if q.ndim != 2 or q.shape[0] != q.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {q.shape}")
    ns = q.shape[0]
    if ns < 2 or ns & (ns - 1):
        raise ValueError(f"dimension must be a power of two >= 2, got {ns}")
    if q.min() < -tol:
        raise ValueError(f"negative entry {q.min()} in probability matrix")
    defect = np.abs(q.sum(axis=0) - 1.0).max()
    if defect > tol:
        raise ValueError(f"columns do not sum to 1 (defect {defect:.3e})")
    return q


def qembed_angles(q: np.ndarray) -> list[MuxAngleTable]:
    """Multiplexor angle tables (radians), one per sample bit, in time order."""
    q = validate_stochastic(q)
    ns = q.shape[0]
    nb = ns.bit_length() - 1
    tables = []
    for s in range(nb):
        k = nb + s
        angles = []
        for word in range(1 << k):
            x = word & (ns - 1)
            prefix = word >> nb
            step = 1 << (s + 1)
            stay = max(q[prefix::step, x].sum(), 0.0)
            flip = max(q[prefix | (1 << s)::step, x].sum(), 0.0)
            angles.append(math.atan2(math.sqrt(flip), math.sqrt(stay)))
        tables.append(MuxAngleTable(nb + s, tuple(range(k)), tuple(angles)))
    return tables


def file_angle_deg(theta_rad: float) -> float:
    """Convert an embedding rotation exp(-i*theta*sigma_y) to the angle a
    multiplexor line carries, whose kernel is exp(+i*(pi/180)*angle*sigma_y)."""
    return -math.degrees(theta_rad)


def mux_from_table(table: MuxAngleTable) -> Instruction:
    controls = [MuxControl(bit, name) for name, bit in enumerate(table.control_bits)]
    return mp_y(table.target, controls, [file_angle_deg(t) for t in table.angles_rad])


def qembed_circuit(q: np.ndarray, num_qubits: int | None = None) -> Circuit:
    """The embedding cascade as a circuit: nb multiplexor lines, smallest first."""
    tables = qembed_angles(q)
    nb = q.shape[0].bit_length() - 1
    if num_qubits is None:
        num_qubits = 2 * nb
    if num_qubits < 2 * nb:
        raise ValueError(f"need at least {2 * nb} qubits, got {num_qubits}")
    return Circuit(num_qubits, tuple(mux_from_table(t) for t in tables))
