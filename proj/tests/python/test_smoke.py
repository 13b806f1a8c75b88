"""Smoke tests for the Python bindings."""

import math

import numpy as np
import pytest

import qchan


def test_linear_algebra_basics():
    i2 = np.eye(2, dtype=complex)
    assert np.allclose(qchan.tensor(i2, i2), np.eye(4))

    bell = np.zeros(4, dtype=complex)
    bell[0] = bell[3] = 1 / math.sqrt(2)
    proj = np.outer(bell, bell.conj())
    reduced = qchan.partial_trace(proj, [2, 2], [0])
    assert np.allclose(reduced, i2 / 2)

    values, vectors = qchan.hermitian_eig(np.diag([0.25, 0.75]).astype(complex))
    assert values[0] == pytest.approx(0.75)
    assert vectors.shape == (2, 2)

    assert qchan.binary_entropy(0.5) == pytest.approx(1.0)
    assert qchan.trace_norm(np.diag([0.3, -0.3]).astype(complex)) == pytest.approx(0.6)


def test_density_operator_and_purification():
    rho = qchan.DensityOperator(np.eye(2, dtype=complex) / 2)
    assert rho.dim == 2
    assert qchan.von_neumann_entropy(rho) == pytest.approx(1.0)

    psi = qchan.purify(rho)
    joint = np.outer(psi, psi.conj())
    assert np.allclose(qchan.partial_trace(joint, [2, 2], [1]), rho.matrix)

    with pytest.raises(ValueError):
        qchan.DensityOperator(np.eye(2, dtype=complex))  # trace 2


def test_measures_known_values():
    half = qchan.DensityOperator.maximally_mixed(2)
    fp = qchan.four_pauli_channel()
    assert qchan.entanglement_fidelity(half, fp) == pytest.approx(0.25)
    assert qchan.entropy_exchange(half, fp) == pytest.approx(2.0)
    assert qchan.coherent_information(half, fp) == pytest.approx(-1.0)

    out, weight = qchan.apply(fp, half)
    assert weight == pytest.approx(1.0)
    assert np.allclose(out, np.eye(2) / 2)

    tight, loose = qchan.quantum_fano_bound(0.5, 2)
    assert tight == pytest.approx(1 + 0.5 * math.log2(3))
    assert loose == pytest.approx(2.0)


def test_channel_algebra():
    ident = qchan.QuantumOperation.identity(2)
    fp = qchan.four_pauli_channel()
    composed = qchan.compose(ident, fp)
    assert composed.is_trace_preserving
    assert len(qchan.tensor_pow(fp, 2).kraus) == 16

    u, env_dim, env_state = qchan.dilate_tp(fp)
    assert env_dim == 4
    assert u.shape == (8, 8)


def test_capacity_bounds():
    value, argmax = qchan.max_coherent_info(
        qchan.QuantumOperation.identity(2), restarts=6
    )
    assert value == pytest.approx(1.0, abs=1e-6)
    assert argmax.shape == (2, 2)

    value_er, _ = qchan.max_coherent_info(qchan.erasure_channel(0.25), restarts=8)
    assert value_er == pytest.approx(0.5, abs=1e-3)

    obs_value, _ = qchan.max_avg_coherent_info(
        qchan.phase_erasure_channel(0.3), restarts=8
    )
    assert obs_value == pytest.approx(0.7, abs=1e-3)

    est = qchan.capacity_bound_unitary(
        qchan.completely_decohering_channel(2), n_max=1, restarts=4
    )
    assert est["per_n"][0]["clipped"] == pytest.approx(0.0)


def test_classical_capacity():
    p = 0.11
    bsc = qchan.ClassicalChannel(2, 2, np.array([[1 - p, p], [p, 1 - p]]))
    capacity, dist = qchan.shannon_capacity(bsc)
    assert capacity == pytest.approx(1 - qchan.binary_entropy(p), abs=1e-6)
    assert sum(dist) == pytest.approx(1.0)


def test_check_reports():
    rep = qchan.verify_example2()
    assert rep.passed
    assert rep.min_slack >= -1e-9

    # the pipelining closed form is reported as failing, by design
    rep1 = qchan.verify_example1()
    assert not rep1.passed
    assert rep1.witnesses

    suite = qchan.additivity_suite(25, 7)
    assert suite.passed
    assert suite.trials == 25
