"""Finite-N Floquet evolution against dense-matrix and full-Pauli-space oracles."""

import numpy as np
import pytest
from scipy.linalg import expm

from lmg_dtc import (
    DriveParams,
    QuantumModel,
    apply_floquet,
    apply_floquet_inverse,
    brute_force_reference,
    build_floquet_factors,
    build_spin_matrices,
    expectations,
    fotoc_series,
    init_coherent,
    init_polarized,
    polarized_pair,
    run_quantum_trajectory,
    run_trajectory,
    time_averaged_fotoc,
)


def dense_pauli_floquet(n_spins, j_coupling, h1, h2):
    """Independent oracle: assemble U_F in the full 2^N space via expm.

    Hamiltonians built from explicit Pauli kroneckers, exponentiated as
    dense matrices; shares nothing with the package's factored evolution.
    """
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)

    def site_op(op, site):
        mats = [np.eye(2, dtype=complex)] * n_spins
        mats[site] = op
        out = mats[0]
        for m in mats[1:]:
            out = np.kron(out, m)
        return out

    z_total = sum(site_op(sz, s) for s in range(n_spins))
    x_region1 = sum(site_op(sx, s) for s in range(n_spins // 2))
    x_region2 = sum(site_op(sx, s) for s in range(n_spins // 2, n_spins))
    h_coupling = (2.0 * j_coupling / n_spins) * (z_total @ z_total)
    h_drive = 2.0 * np.pi * (h1 * x_region1 + h2 * x_region2)
    return expm(-0.5j * h_drive) @ expm(-0.5j * h_coupling), z_total, x_region1, x_region2


def dense_pauli_series(n_spins, j_coupling, h1, h2, n_cycles):
    sy = np.array([[0, -1j], [1j, 0]])
    u, z_total, _, _ = dense_pauli_floquet(n_spins, j_coupling, h1, h2)

    def site_op(op, site):
        mats = [np.eye(2, dtype=complex)] * n_spins
        mats[site] = op
        out = mats[0]
        for m in mats[1:]:
            out = np.kron(out, m)
        return out

    ops = {}
    for name, op in (("x", np.array([[0, 1], [1, 0]], dtype=complex)), ("y", sy),
                     ("z", np.array([[1, 0], [0, -1]], dtype=complex))):
        ops[name + "1"] = sum(site_op(op, s) for s in range(n_spins // 2))
        ops[name + "2"] = sum(site_op(op, s) for s in range(n_spins // 2, n_spins))
    psi = np.zeros(2**n_spins, dtype=complex)
    psi[0] = 1.0
    rows = []
    scale = 2.0 / n_spins
    for _ in range(n_cycles + 1):
        e = {k: scale * float(np.real(np.vdot(psi, op @ psi))) for k, op in ops.items()}
        rows.append((e["z1"], e["z2"], 0.5 * (e["z1"] + e["z2"]), e["x1"], e["x2"], e["y1"], e["y2"]))
        psi = u @ psi
    return np.array(rows)


def test_model_validation():
    with pytest.raises(ValueError):
        QuantumModel(3, 0.5, 0.1, 0.2)
    with pytest.raises(ValueError):
        QuantumModel(0, 0.5, 0.1, 0.2)
    model = QuantumModel(100, 0.5, 0.1, 0.2)
    assert model.j_region == 25.0
    assert model.dim == 51**2


def test_polarized_state():
    model = QuantumModel(4, 0.5, 0.1, 0.2)
    psi = init_polarized(model)
    assert psi.shape == (9,)
    assert psi[0] == 1.0 and np.count_nonzero(psi) == 1
    e = expectations(psi, model)
    assert e.lz1 == pytest.approx(1.0) and e.lz2 == pytest.approx(1.0) and e.lz == pytest.approx(1.0)
    assert np.linalg.norm(psi) == pytest.approx(1.0)


def test_coherent_state_points_along_bloch_angles():
    model = QuantumModel(8, 0.3, 0.1, 0.2)
    angles = (0.7, 1.1, 2.0, -0.4)
    psi = init_coherent(model, *angles)
    assert np.linalg.norm(psi) == pytest.approx(1.0, abs=1e-12)
    e = expectations(psi, model)
    t1, p1, t2, p2 = angles
    assert e.lz1 == pytest.approx(np.cos(t1), abs=1e-10)
    assert e.lx1 == pytest.approx(np.sin(t1) * np.cos(p1), abs=1e-10)
    assert e.ly1 == pytest.approx(np.sin(t1) * np.sin(p1), abs=1e-10)
    assert e.lz2 == pytest.approx(np.cos(t2), abs=1e-10)
    assert e.lx2 == pytest.approx(np.sin(t2) * np.cos(p2), abs=1e-10)
    assert np.allclose(init_coherent(model), init_polarized(model))


def test_trivial_factors():
    model = QuantumModel(6, 0.0, 0.0, 0.0)
    factors = build_floquet_factors(model)
    assert np.allclose(factors.r1, np.eye(4), atol=1e-14)
    assert np.allclose(factors.phases.values, 1.0)
    psi = init_coherent(model, 0.5, 0.2, 1.1, 0.9)
    assert np.allclose(apply_floquet(psi, factors), psi, atol=1e-13)


def test_pi_pulse_inverts_polarization():
    model = QuantumModel(8, 0.7, 0.5, 0.5)
    factors = build_floquet_factors(model)
    psi = apply_floquet(init_polarized(model), factors)
    assert abs(psi[-1]) == pytest.approx(1.0, abs=1e-12)  # (m1,m2)=(-j,-j) corner
    assert expectations(psi, model).lz == pytest.approx(-1.0, abs=1e-12)


def test_superposition_has_zero_lz():
    model = QuantumModel(8, 0.5, 0.1, 0.2)
    psi = np.zeros(model.dim, dtype=complex)
    psi[0] = psi[-1] = 1.0 / np.sqrt(2.0)
    assert expectations(psi, model).lz == pytest.approx(0.0, abs=1e-14)


def test_factored_application_matches_dense_product():
    model = QuantumModel(8, 0.62, 0.31, 0.77)
    factors = build_floquet_factors(model)
    dense = np.kron(factors.r1, factors.r2) @ np.diag(factors.phases.values)
    rng = np.random.default_rng(11)
    for _ in range(4):
        psi = rng.normal(size=model.dim) + 1j * rng.normal(size=model.dim)
        psi /= np.linalg.norm(psi)
        assert np.max(np.abs(apply_floquet(psi, factors) - dense @ psi)) < 1e-12


def test_floquet_norm_and_inverse():
    model = QuantumModel(20, 0.83, 0.21, 0.66)
    factors = build_floquet_factors(model)
    psi0 = init_coherent(model, 0.9, 0.4, 1.7, -0.8)
    psi = psi0
    for _ in range(100):
        psi = apply_floquet(psi, factors)
    assert abs(np.linalg.norm(psi) - 1.0) < 1e-12
    for _ in range(100):
        psi = apply_floquet_inverse(psi, factors)
    assert np.max(np.abs(psi - psi0)) < 1e-11


def test_alternating_lz_at_half_drive():
    model = QuantumModel(8, 0.5, 0.5, 0.5)
    series = run_quantum_trajectory(model, 100)
    assert np.allclose(series.lz, (-1.0) ** np.arange(101), atol=1e-10)


def test_decoupled_region_precesses():
    series = run_quantum_trajectory(QuantumModel(4, 0.0, 0.25, 0.0), 8)
    expected = np.cos(2 * np.pi * 0.25 * np.arange(9))
    assert np.allclose(series.lz1, expected, atol=1e-12)
    assert np.allclose(series.lz2, 1.0, atol=1e-12)


def test_mean_field_limit_reached_at_large_n():
    sc = run_trajectory(polarized_pair(), DriveParams(0.5, 0.17, 0.5), 10)
    q = run_quantum_trajectory(QuantumModel(512, 0.5, 0.17, 0.5), 10)
    assert np.max(np.abs(q.lz - sc.total[:, 2])) < 6e-3  # O(1/N) at N=512


@pytest.mark.parametrize("n_spins", [4, 6, 8])
def test_collective_sector_matches_pauli_space(n_spins):
    rng = np.random.default_rng(100 + n_spins)
    for _ in range(2):
        j, h1, h2 = rng.uniform(0.0, 1.0, 3)
        collective = run_quantum_trajectory(QuantumModel(n_spins, j, h1, h2), 30)
        dense = dense_pauli_series(n_spins, j, h1, h2, 30)
        for idx, series in enumerate(collective):
            assert np.max(np.abs(series - dense[:, idx])) < 1e-10


def test_brute_force_reference_basics():
    flat = brute_force_reference(2, 0.0, 0.0, 0.0, 5)
    assert np.allclose(flat.lz, 1.0)
    alt = brute_force_reference(4, 0.7, 0.5, 0.5, 6)
    assert np.allclose(alt.lz, (-1.0) ** np.arange(7), atol=1e-12)
    with pytest.raises(ValueError):
        brute_force_reference(14, 0.5, 0.1, 0.2, 2)
    with pytest.raises(ValueError):
        brute_force_reference(5, 0.5, 0.1, 0.2, 2)


def test_brute_force_agrees_with_collective():
    series = run_quantum_trajectory(QuantumModel(4, 0.5, 0.17, 0.5), 50)
    brute = brute_force_reference(4, 0.5, 0.17, 0.5, 50)
    for a, b in zip(series, brute):
        assert np.max(np.abs(a - b)) < 1e-10


def test_fotoc_zero_epsilon_and_start():
    model = QuantumModel(8, 0.5, 0.3, 0.3)
    # W = identity; only unitarity rounding (1 - |<psi|psi>|^2) remains
    assert np.allclose(fotoc_series(model, 0.0, 20), 0.0, atol=1e-12)
    # W only contributes a global phase on the polarized Sz eigenstate
    assert fotoc_series(model, 0.37, 0)[0] == pytest.approx(0.0, abs=1e-13)


def test_fotoc_bounds():
    series = fotoc_series(QuantumModel(10, 0.9, 0.23, 0.71), 0.05, 200)
    assert np.all(series >= -1e-10)
    assert np.all(series <= 1.0 + 1e-10)


def test_fotoc_matches_dense_echo_protocol():
    # Literal echo in the full 2^6 space: forward n, W, backward n, overlap.
    n_spins, j, h, eps, n_max = 6, 0.5, 0.3, 0.01, 10
    u, z_total, _, _ = dense_pauli_floquet(n_spins, j, h, h)
    w = np.diag(np.exp(0.5j * eps * np.diag(z_total)))  # exp(i*eps*(Sz1+Sz2))
    psi0 = np.zeros(2**n_spins, dtype=complex)
    psi0[0] = 1.0
    expected = []
    for n in range(n_max + 1):
        fwd = np.linalg.matrix_power(u, n)
        amp = psi0.conj() @ np.linalg.matrix_power(u.conj().T, n) @ w @ fwd @ psi0
        expected.append(1.0 - abs(amp) ** 2)
    series = fotoc_series(QuantumModel(n_spins, j, h, h), eps, n_max)
    assert np.max(np.abs(series - np.array(expected))) < 1e-10


def test_fotoc_time_average():
    model = QuantumModel(8, 0.5, 0.5, 0.5)
    assert time_averaged_fotoc(model, 0.0, (5, 20)) == pytest.approx(0.0, abs=1e-12)
    assert time_averaged_fotoc(model, 0.01, (100, 300)) < 1e-8  # rigid orbit
    series = fotoc_series(model, 0.01, 30)
    assert time_averaged_fotoc(model, 0.01, (10, 30)) == pytest.approx(float(series[10:31].mean()))
    with pytest.raises(ValueError):
        time_averaged_fotoc(model, 0.01, (30, 10))


def test_sector_is_preserved():
    model = QuantumModel(8, 0.83, 0.37, 0.51)
    mats = build_spin_matrices(model.j_region)
    s_squared = mats.sx @ mats.sx + mats.sy @ mats.sy + mats.sz @ mats.sz
    factors = build_floquet_factors(model)
    psi = init_coherent(model, 1.1, 0.2, 0.4, 2.5)
    j = model.j_region
    d = model.dim_region
    for _ in range(50):
        psi = apply_floquet(psi, factors)
    grid = psi.reshape(d, d)
    s1 = float(np.real(np.vdot(grid, s_squared @ grid)))
    s2 = float(np.real(np.vdot(grid, grid @ s_squared.T)))
    assert s1 == pytest.approx(j * (j + 1), abs=1e-9)
    assert s2 == pytest.approx(j * (j + 1), abs=1e-9)


def test_dimension_mismatch_rejected():
    factors = build_floquet_factors(QuantumModel(6, 0.5, 0.1, 0.2))
    with pytest.raises(ValueError):
        apply_floquet(np.ones(9, dtype=complex), factors)
