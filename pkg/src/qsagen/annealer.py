"""Assembly of the full annealing circuit.

The circuit runs on 2*nb + a*c qubits: the two walk registers low, then c
probe blocks of a qubits each.  Per inverse temperature the building blocks
are

    V(beta)     c sequential phase-estimation blocks against the walk
                operator W(beta): Hadamards on the block, controlled
                W^(2^j) powers (emitted as LOOPs), inverse Fourier
                transform on the block;
    Q           exp(i*pi/3) on the all-zero probe subspace;
    R(beta)     V(beta)^dagger . Q . V(beta), a soft reflection about the
                stationary state;

and the per-temperature operator follows the fixed-point recursion

    G(t, 0)   = identity
    G(t, d+1) = G(t, d) . R(beta_t) . G(t, d)^dagger . R(beta_{t+1}) . G(t, d)

applied right to left.  The full circuit is the product of G(t, depth) over
the schedule, t = 0 first.

The inverse Fourier stage is emitted swap-free, so probe outcomes appear
bit-reversed; the all-zeros outcome (the only one Q rewards) is fixed by the
reversal, hence R(beta) is unchanged by this choice.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .ir import (Circuit, Control, Instruction, dagger, end_loop, had2, loop,
                 p1ph, phas, with_control)
from .markov import AnnealingSchedule, ProblemSpec, metropolis
from .szegedy import WalkLayout, emit_W

Q_ANGLE_DEG = 60.0


@dataclass(frozen=True)
class PEParams:
    """Phase-estimation sizing: a probe bits per step, c steps, and the
    recursion depth of the fixed-point search."""

    probe_bits: int
    pe_steps: int
    grover_depth: int

    def __post_init__(self):
        if self.probe_bits < 1:
            raise ValueError(f"probe_bits must be >= 1, got {self.probe_bits}")
        if self.pe_steps < 1:
            raise ValueError(f"pe_steps must be >= 1, got {self.pe_steps}")
        if self.grover_depth < 0:
            raise ValueError(f"grover_depth must be >= 0, got {self.grover_depth}")


@dataclass(frozen=True)
class GeneratorConfig:
    problem: ProblemSpec
    pe: PEParams
    schedule: AnnealingSchedule
    conjugate_q: bool = False
    file_prefix: str = "test"

    @property
    def nb(self) -> int:
        return self.problem.nb

    @property
    def num_qubits(self) -> int:
        return 2 * self.nb + self.pe.probe_bits * self.pe.pe_steps

    @property
    def layout(self) -> WalkLayout:
        return WalkLayout(self.nb, self.num_qubits)

    @property
    def probe_bit_list(self) -> tuple[int, ...]:
        return tuple(range(2 * self.nb, self.num_qubits))


def emit_controlled(circuit: Circuit, control: Control) -> Circuit:
    """Every gate line gains the extra control; LOOP/NEXT pass through."""
    if control.bit >= circuit.num_qubits:
        raise ValueError(
            f"control bit {control.bit} outside a {circuit.num_qubits}-qubit circuit")
    return Circuit(circuit.num_qubits, with_control(circuit.body, control))


def inverse_qft(bits: Sequence[int]) -> tuple[Instruction, ...]:
    """Swap-free inverse Fourier transform on the given bits (LSB first).

    Maps the phase state sum_p exp(2*pi*i*m*p/2**a) |p> to the bit-reversed
    basis state |rev(m)>; in particular the uniform state goes to |0...0>.
    """
    bits = tuple(bits)
    a = len(bits)
    out: list[Instruction] = []
    for j in reversed(range(a)):
        out.append(had2(bits[j]))
        for k in reversed(range(j)):
            out.append(p1ph(-180.0 / (1 << (j - k)), bits[j],
                            [Control(bits[k], on=True)]))
    return tuple(out)


def _v_body(beta: float, config: GeneratorConfig) -> tuple[Instruction, ...]:
    layout = config.layout
    w = emit_W(metropolis(config.problem, beta), layout).body
    a = config.pe.probe_bits
    body: list[Instruction] = []
    for block in range(config.pe.pe_steps):
        base = 2 * config.nb + block * a
        block_bits = range(base, base + a)
        body.extend(had2(b) for b in block_bits)
        for j in range(a):
            controlled = with_control(w, Control(base + j, on=True))
            if j == 0:
                body.extend(controlled)
            else:
                body.append(loop(1 << j))
                body.extend(controlled)
                body.append(end_loop())
        body.extend(inverse_qft(block_bits))
    return tuple(body)


def emit_V(beta: float, config: GeneratorConfig) -> Circuit:
    """The c-step phase-estimation operator against W(beta)."""
    return Circuit(config.num_qubits, _v_body(beta, config))


def _q_gate(config: GeneratorConfig, angle_deg: float) -> Instruction:
    return phas(angle_deg, [Control(b, on=False) for b in config.probe_bit_list])


def _r_body(beta: float, config: GeneratorConfig,
            q_angle_deg: float) -> tuple[Instruction, ...]:
    v = _v_body(beta, config)
    return v + (_q_gate(config, q_angle_deg),) + dagger(v)


def emit_R_tilde(beta: float, config: GeneratorConfig,
                 q_angle_deg: float = Q_ANGLE_DEG) -> Circuit:
    """V(beta)^dagger . Q . V(beta); Q's phase angle is overridable."""
    return Circuit(config.num_qubits, _r_body(beta, config, q_angle_deg))


def _grover_body(t: int, d: int, config: GeneratorConfig) -> tuple[Instruction, ...]:
    if not 0 <= t < config.schedule.t_f:
        raise ValueError(f"schedule index {t} outside 0..{config.schedule.t_f - 1}")
    if d < 0:
        raise ValueError(f"recursion depth must be >= 0, got {d}")
    r_here = _r_body(config.schedule.beta(t), config, Q_ANGLE_DEG)
    next_angle = -Q_ANGLE_DEG if config.conjugate_q else Q_ANGLE_DEG
    r_next = _r_body(config.schedule.beta(t + 1), config, next_angle)
    seq: tuple[Instruction, ...] = ()
    for _ in range(d):
        seq = seq + r_next + dagger(seq) + r_here + seq
    return seq


def emit_U_grover(t: int, d: int, config: GeneratorConfig) -> Circuit:
    """Fixed-point recursion at schedule index t, unrolled to depth d."""
    return Circuit(config.num_qubits, _grover_body(t, d, config))


def emit_full(config: GeneratorConfig, prep: bool = False) -> Circuit:
    """Product of per-temperature operators over the whole schedule.

    With prep=True, Hadamards preparing the uniform (beta_0 = 0) stationary
    state on the beta register are prepended; by default preparation is the
    caller's job, as the operator product starts from it either way.
    """
    body: tuple[Instruction, ...] = ()
    if prep:
        body += tuple(had2(config.nb + j) for j in range(config.nb))
    for t in range(config.schedule.t_f):
        body += _grover_body(t, config.pe.grover_depth, config)
    return Circuit(config.num_qubits, body)
