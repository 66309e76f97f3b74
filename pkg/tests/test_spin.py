import numpy as np
import pytest

from spindiv.errors import DimensionMismatchError
from spindiv.linalg import hermitian_eigenvalues
from spindiv.spin import (CouplingSpec, DriveParameters, SpinQuantumNumber, build_hs,
                          build_model, coupling_coefficients, eigenframe, spin_operators)


def drive(alpha, phi, omega_s=1.0):
    return DriveParameters(omega_s=omega_s, alpha=alpha, phi=phi)


def test_spin_parsing():
    assert SpinQuantumNumber.from_string("1/2").twice_s == 1
    assert SpinQuantumNumber.from_string("3").d == 7
    with pytest.raises(ValueError):
        SpinQuantumNumber.from_string("1/3")


def test_spin_half_ladder():
    ops = spin_operators(SpinQuantumNumber(1))
    assert np.allclose(ops["sz"], np.diag([0.5, -0.5]), atol=0)
    assert np.allclose(ops["splus"], [[0, 1], [0, 0]], atol=0)


def test_spin_one_raising_element():
    ops = spin_operators(SpinQuantumNumber(2))
    # |0> -> sqrt(2) |1>: entry (row m=1, col m=0)
    assert ops["splus"][0, 1] == pytest.approx(np.sqrt(2.0), abs=1e-15)


@pytest.mark.parametrize("twice_s", [1, 2, 3, 4, 5, 6])
def test_angular_momentum_algebra(twice_s):
    ops = spin_operators(SpinQuantumNumber(twice_s))
    comm = ops["sx"] @ ops["sy"] - ops["sy"] @ ops["sx"]
    assert np.max(np.abs(comm - 1j * ops["sz"])) <= 1e-12


def test_hs_no_tunneling():
    s = SpinQuantumNumber(3)
    ops = spin_operators(s)
    h = build_hs(s, drive(0.0, 1.3, omega_s=2.0))
    assert np.allclose(h, 2.0 * ops["sz"], atol=1e-15)


def test_hs_pure_transverse():
    s = SpinQuantumNumber(2)
    ops = spin_operators(s)
    h = build_hs(s, drive(np.pi / 2, 0.0))
    assert np.allclose(h, ops["sx"], atol=1e-15)


def test_hs_spectrum_is_ladder(rng):
    for twice_s in (1, 2, 3, 4):
        s = SpinQuantumNumber(twice_s)
        for _ in range(10):
            d = drive(rng.uniform(0, np.pi * 0.999), rng.uniform(0, 2 * np.pi * 0.999))
            w = hermitian_eigenvalues(build_hs(s, d))
            assert np.max(np.abs(w - s.m_values())) <= 1e-10


def test_eigenframe_no_tunneling_is_diagonal():
    s = SpinQuantumNumber(2)
    dr = drive(0.0, 2.2)
    frame = eigenframe(build_hs(s, dr), dr, s)
    assert np.allclose(np.abs(frame.u), np.eye(3), atol=1e-14)


def test_eigenframe_spin1_closed_form_magnitudes(rng):
    s = SpinQuantumNumber(2)
    for _ in range(10):
        a = rng.uniform(0, np.pi * 0.999)
        dr = drive(a, rng.uniform(0, 2 * np.pi * 0.999))
        frame = eigenframe(build_hs(s, dr), dr, s)
        c2, s2 = np.cos(a / 2) ** 2, np.sin(a / 2) ** 2
        t = np.sqrt(2) / 2 * abs(np.sin(a))
        ref = np.array([[c2, t, s2], [t, abs(np.cos(a)), t], [s2, t, c2]])
        assert np.max(np.abs(np.abs(frame.u) - ref)) <= 1e-10


def test_eigenframe_diagonalizes_descending(rng):
    s = SpinQuantumNumber(3)
    dr = drive(1.1, 0.4, omega_s=1.7)
    h = build_hs(s, dr)
    frame = eigenframe(h, dr, s)
    diag = frame.u.conj().T @ h @ frame.u
    assert np.max(np.abs(diag - np.diag(np.diag(diag)))) <= 1e-10
    assert np.all(np.diff(np.diag(diag).real) < 0)


def test_eigenframe_ladder_eigenvalues(rng):
    for twice_s in (1, 2, 3, 4, 5, 6):
        s = SpinQuantumNumber(twice_s)
        dr = drive(rng.uniform(0, np.pi * 0.999), rng.uniform(0, 2 * np.pi * 0.999), omega_s=0.7)
        frame = eigenframe(build_hs(s, dr), dr, s)
        assert np.max(np.abs(frame.eigenvalues - 0.7 * s.m_values())) <= 1e-9


def test_coupling_spin_half_sz(rng):
    s = SpinQuantumNumber(1)
    for _ in range(10):
        a = rng.uniform(0, np.pi * 0.999)
        model = build_model(s, drive(a, rng.uniform(0, 2 * np.pi * 0.999)), CouplingSpec.sz())
        c = model.c.c
        assert abs(abs(c[0, 0]) - abs(np.cos(a)) / 2) <= 1e-12
        assert abs(abs(c[1, 1]) - abs(np.cos(a)) / 2) <= 1e-12
        assert abs(abs(c[0, 1]) - abs(np.sin(a)) / 2) <= 1e-12
        assert abs(abs(c[1, 0]) - abs(np.sin(a)) / 2) <= 1e-12


def test_coupling_spin_half_sminus(rng):
    # |c| magnitudes of U^dag S_- U; the lowering direction connects the
    # upper dressed state to the lower one with the cos^2(alpha/2) weight
    s = SpinQuantumNumber(1)
    for _ in range(10):
        a = rng.uniform(0, np.pi * 0.999)
        model = build_model(s, drive(a, rng.uniform(0, 2 * np.pi * 0.999)), CouplingSpec.sminus())
        c = model.c.c
        assert abs(abs(c[0, 0]) - abs(np.sin(a)) / 2) <= 1e-12
        assert abs(abs(c[1, 1]) - abs(np.sin(a)) / 2) <= 1e-12
        assert abs(abs(c[0, 1]) - np.sin(a / 2) ** 2) <= 1e-12
        assert abs(abs(c[1, 0]) - np.cos(a / 2) ** 2) <= 1e-12


def test_coupling_spin_one_sz(rng):
    s = SpinQuantumNumber(2)
    for _ in range(10):
        a = rng.uniform(0, np.pi * 0.999)
        model = build_model(s, drive(a, rng.uniform(0, 2 * np.pi * 0.999)), CouplingSpec.sz())
        c = model.c.c
        assert np.max(np.abs(np.diag(c) - np.array([1.0, 0.0, -1.0]) * np.cos(a))) <= 1e-12
        for pos in ((0, 1), (1, 0), (1, 2), (2, 1)):
            assert abs(abs(c[pos]) - np.sqrt(2) / 2 * abs(np.sin(a))) <= 1e-12
        assert abs(c[0, 2]) <= 1e-12 and abs(c[2, 0]) <= 1e-12


def test_coupling_phase_invariance(rng):
    s = SpinQuantumNumber(3)
    dr = drive(0.9, 2.1)
    model = build_model(s, dr, CouplingSpec.sminus())
    pi_op = CouplingSpec.sminus().resolve(s)
    for _ in range(10):
        phases = np.exp(1j * rng.uniform(0, 2 * np.pi, size=s.d))
        u2 = model.frame.u * phases[None, :]
        c2 = u2.conj().T @ pi_op @ u2
        assert np.max(np.abs(np.abs(c2) - np.abs(model.c.c))) <= 1e-12


@pytest.mark.parametrize("twice_s", [1, 2, 3, 4, 5, 6])
def test_sz_coupling_band_limited(rng, twice_s):
    # S_z is a rank-1 spherical tensor: no |l - m| >= 2 matrix elements
    s = SpinQuantumNumber(twice_s)
    dr = drive(rng.uniform(0, np.pi * 0.999), rng.uniform(0, 2 * np.pi * 0.999))
    c = build_model(s, dr, CouplingSpec.sz()).c.c
    for i in range(s.d):
        for j in range(s.d):
            if abs(i - j) >= 2:
                assert abs(c[i, j]) <= 1e-12


def test_hermitian_coupling_hermitian_c(rng):
    s = SpinQuantumNumber(4)
    dr = drive(0.6, 1.9)
    c = build_model(s, dr, CouplingSpec.sz()).c.c
    assert np.max(np.abs(c - c.conj().T)) <= 1e-10


def test_custom_coupling_dimension_check():
    s = SpinQuantumNumber(2)
    dr = drive(0.3, 0.0)
    frame = eigenframe(build_hs(s, dr), dr, s)
    with pytest.raises(DimensionMismatchError):
        coupling_coefficients(frame, CouplingSpec.custom(np.eye(2)), s)
