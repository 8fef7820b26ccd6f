import cmath
import math

import numpy as np
import pytest

from kfermion.fockrep import build_rep
from kfermion.phase import (
    PhaseConfig,
    exp_phase,
    periodicity_check,
    phase_operator,
    phase_states,
    quon_phase,
    quon_phase_check,
)
from kfermion.qcore import DeformationParams, qfactorial, qfactorial_sqrt, rel_residual

KS = list(range(2, 9))
ANGLES = [0.0, 0.3, math.pi / 7]


class TestPhaseStates:
    def test_k2_states(self):
        basis = phase_states(PhaseConfig(2, 0.0))
        s = 1 / math.sqrt(2)
        assert np.allclose(basis.vectors[0], [s, s])
        assert np.allclose(basis.vectors[1], [s, -s])

    @pytest.mark.parametrize("k", KS)
    @pytest.mark.parametrize("theta0", ANGLES)
    def test_orthonormal(self, k, theta0):
        basis = phase_states(PhaseConfig(k, theta0))
        gram = basis.vectors.conj() @ basis.vectors.T
        assert rel_residual(gram, np.eye(k)) < 1e-13

    @pytest.mark.parametrize("k", KS)
    def test_round_trip(self, k):
        basis = phase_states(PhaseConfig(k, 0.3))
        rebuilt = np.zeros((k, k), dtype=complex)
        for n in range(k):
            for m in range(k):
                rebuilt[:, n] += (
                    np.exp(-1j * n * basis.thetas[m]) / math.sqrt(k) * basis.vectors[m]
                )
        assert rel_residual(rebuilt, np.eye(k)) < 1e-13

    def test_wrap_factors(self):
        cfg = PhaseConfig(5, 0.3)
        assert abs(cfg.omega_plus * cfg.omega_minus - 1) < 1e-15
        assert abs(abs(cfg.omega_plus) - 1) < 1e-15

    def test_small_k_rejected(self):
        with pytest.raises(ValueError):
            PhaseConfig(1, 0.0)


class TestPhaseOperator:
    def test_k3_spectrum(self):
        basis = phase_states(PhaseConfig(3, 0.0))
        phi = phase_operator(basis)
        eigs = np.sort(np.linalg.eigvalsh(phi))
        assert np.allclose(eigs, [0.0, 2 * math.pi / 3, 4 * math.pi / 3], atol=1e-12)

    @pytest.mark.parametrize("k", KS)
    def test_hermitean(self, k):
        phi = phase_operator(phase_states(PhaseConfig(k, 0.3)))
        assert rel_residual(phi, phi.conj().T) < 1e-13

    def test_expectation_on_eigenstates(self):
        basis = phase_states(PhaseConfig(4, 0.2))
        phi = phase_operator(basis)
        for m in range(4):
            v = basis.vectors[m]
            value = v.conj() @ phi @ v
            assert abs(value - basis.thetas[m]) < 1e-12


class TestExpPhase:
    def test_k3_is_the_cyclic_down_shift(self):
        basis = phase_states(PhaseConfig(3, 0.0))
        op = exp_phase(basis, PhaseConfig(3, 0.0), +1)
        expected = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=complex)
        assert np.allclose(op, expected, atol=1e-14)

    @pytest.mark.parametrize("k", KS)
    @pytest.mark.parametrize("theta0", ANGLES)
    def test_spectral_equals_shift(self, k, theta0):
        cfg = PhaseConfig(k, theta0)
        basis = phase_states(cfg)
        for sign in (+1, -1):
            exp_phase(basis, cfg, sign, tol=1e-10)  # raises on disagreement

    def test_against_truncated_series(self):
        # independent oracle: sum the exponential series of the hermitean
        # generator itself
        cfg = PhaseConfig(4, 0.3)
        basis = phase_states(cfg)
        phi = phase_operator(basis)
        series = np.zeros((4, 4), dtype=complex)
        term = np.eye(4, dtype=complex)
        for r in range(1, 60):
            series += term
            term = term @ (1j * phi) / r
        assert rel_residual(series, exp_phase(basis, cfg, +1)) < 1e-12

    def test_wrap_action(self):
        cfg = PhaseConfig(5, 0.3)
        basis = phase_states(cfg)
        op = exp_phase(basis, cfg, +1)
        e0 = np.eye(5)[:, 0]
        image = op @ e0
        expected = cfg.omega_plus * np.eye(5)[:, 4]
        assert np.allclose(image, expected, atol=1e-14)

    @pytest.mark.parametrize("k", KS)
    def test_unitary_inverse_pair(self, k):
        cfg = PhaseConfig(k, 0.3)
        basis = phase_states(cfg)
        plus = exp_phase(basis, cfg, +1)
        minus = exp_phase(basis, cfg, -1)
        assert rel_residual(plus @ minus, np.eye(k)) < 1e-13

    def test_bad_sign_rejected(self):
        cfg = PhaseConfig(3, 0.0)
        with pytest.raises(ValueError):
            exp_phase(phase_states(cfg), cfg, 0)


class TestPeriodicity:
    @pytest.mark.parametrize("k", KS)
    @pytest.mark.parametrize("theta0", ANGLES)
    def test_unitary_exponentials(self, k, theta0):
        cfg = PhaseConfig(k, theta0)
        basis = phase_states(cfg)
        for sign, omega in ((+1, cfg.omega_plus), (-1, cfg.omega_minus)):
            op = exp_phase(basis, cfg, sign)
            assert periodicity_check(op, k, omega, 1e-9).passed

    def test_zero_angle_gives_identity_power(self):
        cfg = PhaseConfig(4, 0.0)
        op = exp_phase(phase_states(cfg), cfg, +1)
        assert rel_residual(np.linalg.matrix_power(op, 4), np.eye(4)) < 1e-13

    @pytest.mark.parametrize("k", KS)
    def test_negative_control_shorter_power(self, k):
        cfg = PhaseConfig(k, 0.0)
        op = exp_phase(phase_states(cfg), cfg, +1)
        report = periodicity_check(
            np.linalg.matrix_power(op, k - 1), 1, cfg.omega_plus, 1e-9
        )
        # (k-1)-th power is a genuine shift, never a multiple of the identity
        short = np.linalg.matrix_power(op, k - 1)
        assert rel_residual(short, cfg.omega_plus * np.eye(k)) > 0.5


class TestQuonPhase:
    def test_k2_is_the_symmetric_flip(self):
        p = DeformationParams(2)
        rep = build_rep(p)
        op = quon_phase(rep, PhaseConfig(2, 0.0), +1)
        assert np.allclose(op, [[0, 1], [1, 0]], atol=1e-14)
        assert rel_residual(op @ op, np.eye(2)) < 1e-14
        assert rel_residual(op, op.conj().T) < 1e-14

    @pytest.mark.parametrize("k", KS)
    def test_wrap_coefficient(self, k):
        p = DeformationParams(k)
        rep = build_rep(p)
        cfg = PhaseConfig(k, 0.3)
        op = quon_phase(rep, cfg, +1)
        expected = (
            qfactorial(k - 1, p.q) ** (-1.0 / k)
            * qfactorial_sqrt(k - 1, p.q)
            * cfg.omega_plus
        )
        assert abs(op[k - 1, 0] - expected) < 1e-12

    @pytest.mark.parametrize("k", KS)
    @pytest.mark.parametrize("theta0", [0.0, 0.3])
    def test_check_suite_passes(self, k, theta0):
        p = DeformationParams(k)
        rep = build_rep(p)
        report = quon_phase_check(rep, PhaseConfig(k, theta0))
        assert report.passed
        assert report.max_residual < 1e-10

    @pytest.mark.parametrize("k", KS)
    def test_periodicity_telescopes(self, k):
        p = DeformationParams(k)
        rep = build_rep(p)
        cfg = PhaseConfig(k, 0.3)
        for sign, omega in ((+1, cfg.omega_plus), (-1, cfg.omega_minus)):
            op = quon_phase(rep, cfg, sign)
            powered = np.linalg.matrix_power(op, k)
            assert rel_residual(powered, omega * np.eye(k)) < 1e-11

    @pytest.mark.parametrize("k", KS)
    def test_products_are_diagonal(self, k):
        p = DeformationParams(k)
        rep = build_rep(p)
        cfg = PhaseConfig(k, 0.3)
        plus = quon_phase(rep, cfg, +1)
        minus = quon_phase(rep, cfg, -1)
        for product in (plus @ minus, minus @ plus):
            off = product - np.diag(np.diag(product))
            assert np.linalg.norm(off) < 1e-12

    @pytest.mark.parametrize("k", [4, 5, 6, 7, 8])
    def test_not_unitary_above_k3(self, k):
        # the modulus profile of the ladder weights is non-constant once
        # k > 3, so these polynomials cannot be unitary there
        p = DeformationParams(k)
        rep = build_rep(p)
        op = quon_phase(rep, PhaseConfig(k, 0.0), +1)
        assert rel_residual(op.conj().T @ op, np.eye(k)) > 1e-3

    @pytest.mark.parametrize("k", [2, 3])
    def test_low_orders_happen_to_be_unitary(self, k):
        # at k = 2 and k = 3 every ladder weight has unit modulus
        p = DeformationParams(k)
        rep = build_rep(p)
        op = quon_phase(rep, PhaseConfig(k, 0.4), +1)
        assert rel_residual(op.conj().T @ op, np.eye(k)) < 1e-12
