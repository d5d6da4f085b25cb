"""Exact expansion of multiplexor lines into rotations and CNOTs.

A multiplexor with k named controls becomes a ladder of 2**k y-rotations on
its target, interleaved with 2**k CNOTs.  The CNOT after rotation r sits on
the control bit whose name is the position where consecutive Gray-code
words g(r), g(r+1) differ (cyclically, so the ladder returns to word 0 and
the expansion equals the multiplexor exactly, not merely up to phase).

For control word m the CNOTs conjugate rotation r to the sign
(-1)^popcount(m & g(r)), so the ladder angles solve a Hadamard-like linear
system with the closed form

    phi[r] = 2**-k * sum_m (-1)^popcount(m & g(r)) * theta[m].

Angles are solved in the multiplexor's kernel convention and doubled when
written on ROTY lines (whose kernel carries a half angle).  Plain controls
of the original line are attached to every emitted instruction.
"""
from __future__ import annotations

from .ir import (Circuit, Control, Instruction, Opcode, count_elementary_ops,
                 parse_english, roty, sigx, write_english, write_picture)


def gray_code(i: int) -> int:
    return i ^ (i >> 1)


def expand_mux(ins: Instruction) -> list[Instruction]:
    """Replace one MP_Y instruction by its exact rotation/CNOT ladder."""
    if ins.opcode is not Opcode.MP_Y:
        raise ValueError(f"expected an MP_Y instruction, got {ins.opcode.value}")
    k = len(ins.mux_controls)
    words = 1 << k
    bit_of_name = {m.name: m.bit for m in ins.mux_controls}
    target = ins.targets[0]
    plain = ins.controls
    out: list[Instruction] = []
    for r in range(words):
        g = gray_code(r)
        acc = sum(theta if (m & g).bit_count() % 2 == 0 else -theta
                  for m, theta in enumerate(ins.angles_deg))
        out.append(roty(2.0 * acc / words, target, plain))
        flip = g ^ gray_code((r + 1) % words)
        name = flip.bit_length() - 1
        out.append(sigx(target, (Control(bit_of_name[name], on=True),) + plain))
    return out


def expand_body(body) -> tuple[Instruction, ...]:
    out: list[Instruction] = []
    for ins in body:
        if ins.opcode is Opcode.MP_Y:
            out.extend(expand_mux(ins))
        else:
            out.append(ins)
    return tuple(out)


def expand_circuit(circuit: Circuit) -> Circuit:
    return Circuit(circuit.num_qubits, expand_body(circuit.body))


def expand_file(eng_text: str, pic_text: str) -> tuple[str, str, str]:
    """Expand every multiplexor of a parsed file pair.

    The picture input is validated only for line count (the english file
    fully determines the circuit).  Returns (log tail, english, picture),
    with loop labels recomputed for the new line numbering.
    """
    circuit = parse_english(eng_text)
    pic_lines = len(pic_text.splitlines())
    if pic_lines != len(circuit.body):
        raise ValueError(
            f"picture file has {pic_lines} line(s) but english file has "
            f"{len(circuit.body)}")
    expanded = expand_circuit(circuit)
    log = (f"Compilation Mode: Exact SEO\n"
           f"Number of Elementary Operations: {count_elementary_ops(expanded)}\n")
    return log, write_english(expanded), write_picture(expanded)
