"""Simulator gate semantics against hand matrices and scipy's expm."""
import math

import numpy as np
import pytest
from scipy.linalg import expm

from qsagen import sim
from qsagen.ir import (Circuit, Control, MuxControl, end_loop, had2, loop, mp_y,
                       p0ph, p1ph, phas, rotn, rotx, roty, rotz, sigx, sigy, sigz,
                       swap)

from helpers import random_circuit

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def one_qubit_matrix(ins):
    return sim.to_matrix(Circuit(1, (ins,)))


def test_had2_on_zero():
    out = sim.apply(Circuit(1, (had2(0),)), sim.basis_state(1))
    np.testing.assert_allclose(out, [1 / math.sqrt(2), 1 / math.sqrt(2)], atol=1e-15)


def test_swap_on_01():
    # |01> = qubit 0 set, qubit 1 clear -> index 1, swaps to index 2
    out = sim.apply(Circuit(2, (swap(1, 0),)), sim.basis_state(2, 1))
    np.testing.assert_allclose(out, sim.basis_state(2, 2), atol=1e-15)


def test_phas_all_false_controls():
    circuit = Circuit(3, (phas(60.0, (Control(2, False), Control(1, False))),))
    out = sim.apply(circuit, sim.basis_state(3, 0))
    np.testing.assert_allclose(out[0], np.exp(1j * np.pi / 3), atol=1e-15)
    out1 = sim.apply(circuit, sim.basis_state(3, 2))
    np.testing.assert_allclose(out1[2], 1.0, atol=1e-15)


@pytest.mark.parametrize("ctor,generator", [
    (rotx, SX), (roty, SY), (rotz, SZ),
])
def test_axis_rotations_match_expm(ctor, generator):
    for angle in (23.7, -118.0, 360.0):
        got = one_qubit_matrix(ctor(angle, 0))
        want = expm(0.5j * math.radians(angle) * generator)
        np.testing.assert_allclose(got, want, atol=1e-12)


def test_rotn_matches_expm():
    rng = np.random.default_rng(3)
    for _ in range(5):
        a, b, c = rng.uniform(-180, 180, size=3)
        got = one_qubit_matrix(rotn(a, b, c, 0))
        gen = math.radians(a) * SX + math.radians(b) * SY + math.radians(c) * SZ
        np.testing.assert_allclose(got, expm(0.5j * gen), atol=1e-12)
    np.testing.assert_allclose(one_qubit_matrix(rotn(0, 0, 0, 0)), np.eye(2))


def test_pauli_and_phase_gates():
    np.testing.assert_allclose(one_qubit_matrix(sigx(0)), SX)
    np.testing.assert_allclose(one_qubit_matrix(sigy(0)), SY)
    np.testing.assert_allclose(one_qubit_matrix(sigz(0)), SZ)
    np.testing.assert_allclose(
        one_qubit_matrix(p0ph(90.0, 0)), np.diag([1j, 1]), atol=1e-15)
    np.testing.assert_allclose(
        one_qubit_matrix(p1ph(90.0, 0)), np.diag([1, 1j]), atol=1e-15)


def test_mp_y_matches_translation_row():
    """The multiplexor kernel carries the full angle (ROTY carries half)."""
    angles = (30.0, 10.5, 11.0, 83.1)
    ins = mp_y(3, (MuxControl(2, 1), MuxControl(1, 0)), angles, (Control(0, True),))
    got = sim.to_matrix(Circuit(4, (ins,)))
    want = np.eye(16, dtype=complex)
    for idx in range(16):
        if idx & 1 == 0 or idx & 8:  # plain control off, or target already set
            continue
        word = ((idx >> 2) & 1) << 1 | ((idx >> 1) & 1)
        kernel = expm(1j * math.radians(angles[word]) * SY)
        src, dst = idx, idx | 8
        want[src, src], want[dst, src] = kernel[0, 0], kernel[1, 0]
        want[src, dst], want[dst, dst] = kernel[0, 1], kernel[1, 1]
    np.testing.assert_allclose(got, want, atol=1e-12)


def test_mp_y_zero_angles_is_identity():
    circuit = Circuit(2, (mp_y(1, (MuxControl(0, 0),), (0.0, 0.0)),))
    np.testing.assert_allclose(sim.to_matrix(circuit), np.eye(4), atol=1e-15)


def test_controlled_gate_is_block_diagonal():
    angle = 77.0
    circuit = Circuit(2, (roty(angle, 0, (Control(1, True),)),))
    got = sim.to_matrix(circuit)
    want = np.eye(4, dtype=complex)
    want[2:, 2:] = one_qubit_matrix(roty(angle, 0))
    np.testing.assert_allclose(got, want, atol=1e-15)


def test_to_matrix_is_multiplicative():
    rng = np.random.default_rng(4)
    for _ in range(10):
        n = int(rng.integers(1, 4))
        a = random_circuit(rng, num_qubits=n, loops=False)
        b = random_circuit(rng, num_qubits=n, loops=False)
        combined = Circuit(n, a.body + b.body)
        np.testing.assert_allclose(
            sim.to_matrix(combined), sim.to_matrix(b) @ sim.to_matrix(a), atol=1e-12)


def test_loops_unroll_in_simulation():
    looped = Circuit(1, (loop(3), sigx(0), end_loop()))
    np.testing.assert_allclose(sim.to_matrix(looped), SX, atol=1e-15)
    nested = Circuit(1, (loop(2), loop(2), rotz(10.0, 0), end_loop(), end_loop()))
    np.testing.assert_allclose(
        sim.to_matrix(nested), one_qubit_matrix(rotz(40.0, 0)), atol=1e-13)


def test_apply_preserves_norm():
    rng = np.random.default_rng(5)
    for _ in range(10):
        circuit = random_circuit(rng)
        state = rng.normal(size=1 << circuit.num_qubits) * (1 + 0j)
        state += 1j * rng.normal(size=state.shape)
        state /= np.linalg.norm(state)
        out = sim.apply(circuit, state)
        assert abs(np.linalg.norm(out) - 1) < 1e-10


def test_circuit_matrices_are_unitary():
    rng = np.random.default_rng(6)
    for _ in range(10):
        circuit = random_circuit(rng)
        assert sim.unitarity_defect(sim.to_matrix(circuit)) < 1e-10


def test_apply_dimension_mismatch():
    with pytest.raises(ValueError, match="dimension"):
        sim.apply(Circuit(2, (had2(0),)), sim.basis_state(3))


def test_to_matrix_qubit_cap():
    with pytest.raises(ValueError, match="at most 12"):
        sim.to_matrix(Circuit(13))


def test_eig_unitary_identity_and_reflection():
    assert np.allclose(sim.eig_unitary(np.eye(4)), 0.0)
    circuit = Circuit(2, (phas(180.0, (Control(1, False), Control(0, False))),))
    phases = sim.eig_unitary(sim.to_matrix(circuit))
    np.testing.assert_allclose(sorted(np.abs(phases)), [0, 0, 0, np.pi], atol=1e-12)


def test_eig_unitary_rejects_nonunitary():
    with pytest.raises(ValueError, match="not unitary"):
        sim.eig_unitary(np.diag([1.0, 0.5]))


def test_phases_match():
    assert sim.phases_match([0.0, 1.0, -1.0], [1.0, 0.0, -1.0])
    assert sim.phases_match([np.pi, 0.0], [-np.pi, 0.0])  # same point on the circle
    assert not sim.phases_match([0.0, 1.0], [0.0, 1.1])
    assert not sim.phases_match([0.0], [0.0, 0.0])
