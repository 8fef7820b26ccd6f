"""Reference-angle phase basis, its hermitean phase operator, and the ladder
polynomials that reproduce the same cyclic periodicity.

The exponentials of the phase operator are weighted cyclic shifts whose wrap
entry carries exp(+-i*k*theta0).  The ladder-side polynomials are built from
the generators alone, are generally not unitary, and still close the same
k-step periodicity exactly thanks to the per-factor root policy.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .fockrep import QuonRep
from .qcore import DeformationParams, qfactorial, qfactorial_sqrt, qnum, rel_residual
from .report import VerificationReport

# Agreement bound between the spectral and shift-matrix constructions; both
# are exact up to roundoff of a k-term unitary sum.
CONSTRUCTION_AGREEMENT_TOL = 1e-10


@dataclass(frozen=True)
class PhaseConfig:
    """Order k and the real reference angle, with the derived wrap factors."""

    k: int
    theta0: float = 0.0

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"order k must be >= 2, got {self.k}")

    @property
    def omega_plus(self) -> complex:
        return cmath.exp(1j * self.k * self.theta0)

    @property
    def omega_minus(self) -> complex:
        return cmath.exp(-1j * self.k * self.theta0)


@dataclass(frozen=True, eq=False)
class PhaseBasis:
    """The k phase states as rows of a unitary k x k array."""

    k: int
    theta0: float
    thetas: np.ndarray
    vectors: np.ndarray


def phase_states(cfg: PhaseConfig) -> PhaseBasis:
    """Equally spaced phase states starting at the reference angle.

    State m has number-basis entries exp(i*n*theta_m)/sqrt(k).  The basis
    change is unitary; the round trip back to the number basis is checked
    on construction.
    """
    k = cfg.k
    thetas = cfg.theta0 + 2.0 * math.pi * np.arange(k) / k
    n = np.arange(k)
    vectors = np.exp(1j * np.outer(thetas, n)) / math.sqrt(k)
    round_trip = (vectors.conj().T @ vectors)
    if rel_residual(round_trip, np.eye(k)) > 1e-12:
        raise RuntimeError("phase basis failed the unitarity round trip")
    return PhaseBasis(k, cfg.theta0, thetas, vectors)


def phase_operator(basis: PhaseBasis) -> np.ndarray:
    """Hermitean operator with the phase states as eigenvectors."""
    k = basis.k
    phi = np.zeros((k, k), dtype=complex)
    for m in range(k):
        v = basis.vectors[m]
        phi += basis.thetas[m] * np.outer(v, v.conj())
    return phi


def _exp_phase_both(basis: PhaseBasis, cfg: PhaseConfig, sign: int):
    """Spectral and shift-matrix forms of the phase exponential."""
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    if abs(basis.theta0 - cfg.theta0) > 0 or basis.k != cfg.k:
        raise ValueError("basis and config disagree on order or reference angle")
    k = basis.k
    spectral = np.zeros((k, k), dtype=complex)
    for m in range(k):
        v = basis.vectors[m]
        spectral += cmath.exp(sign * 1j * basis.thetas[m]) * np.outer(v, v.conj())
    shift = np.zeros((k, k), dtype=complex)
    if sign > 0:
        shift[k - 1, 0] = cfg.omega_plus
        for i in range(1, k):
            shift[i - 1, i] = 1.0
    else:
        shift[0, k - 1] = cfg.omega_minus
        for i in range(1, k):
            shift[i, i - 1] = 1.0
    return spectral, shift


def exp_phase(basis: PhaseBasis, cfg: PhaseConfig, sign: int,
              tol: float = CONSTRUCTION_AGREEMENT_TOL) -> np.ndarray:
    """Phase exponential, built two ways and cross-checked.

    Returns the shift-matrix form (exact entries) after asserting it agrees
    with the spectral construction to tol.
    """
    spectral, shift = _exp_phase_both(basis, cfg, sign)
    res = rel_residual(spectral, shift)
    if res > tol:
        raise ValueError(
            f"spectral and shift constructions disagree (residual {res:.3e});\n"
            f"spectral=\n{spectral}\nshift=\n{shift}"
        )
    return shift


def periodicity_check(op: np.ndarray, k: int, expected: complex,
                      tol: float, tag: str = "Eq.81", params=None) -> VerificationReport:
    """Assert op**k equals expected times the identity."""
    report = VerificationReport()
    powered = np.linalg.matrix_power(op, k)
    res = rel_residual(powered, expected * np.eye(k))
    report.add(tag, k, res, tol, params)
    return report


def quon_phase(rep: QuonRep, cfg: PhaseConfig, sign: int) -> np.ndarray:
    """Ladder-side phase polynomial with principal k-th-root normalization."""
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    p = rep.params
    k = p.k
    if cfg.k != k:
        raise ValueError("config order does not match the representation")
    mpow = np.linalg.matrix_power
    if sign > 0:
        scale = qfactorial(k - 1, p.q) ** (-1.0 / k)
        return scale * (rep.a_minus + cfg.omega_plus * mpow(rep.a_plus, k - 1))
    scale = qfactorial(k - 1, p.q_bar) ** (-1.0 / k)
    return scale * (rep.a_minus_dag + cfg.omega_minus * mpow(rep.a_plus_dag, k - 1))


def quon_phase_check(rep: QuonRep, cfg: PhaseConfig) -> VerificationReport:
    """Explicit actions, diagonal products, and periodicity of the polynomials."""
    p = rep.params
    k = p.k
    tol = p.tol
    report = VerificationReport()
    e_plus = quon_phase(rep, cfg, +1)
    e_minus = quon_phase(rep, cfg, -1)

    scale_p = qfactorial(k - 1, p.q) ** (-1.0 / k)
    expect_p = np.zeros((k, k), dtype=complex)
    for n in range(1, k):
        expect_p[n - 1, n] = scale_p * cmath.sqrt(qnum(n, p.q))
    expect_p[k - 1, 0] = scale_p * qfactorial_sqrt(k - 1, p.q) * cfg.omega_plus
    report.add("Eq.84", k, rel_residual(e_plus, expect_p), tol)

    scale_m = qfactorial(k - 1, p.q_bar) ** (-1.0 / k)
    expect_m = np.zeros((k, k), dtype=complex)
    for n in range(k - 1):
        expect_m[n + 1, n] = scale_m * cmath.sqrt(qnum(n + 1, p.q_bar))
    expect_m[0, k - 1] = scale_m * qfactorial_sqrt(k - 1, p.q_bar) * cfg.omega_minus
    report.add("Eq.85", k, rel_residual(e_minus, expect_m), tol)

    for order, product in (("+-", e_plus @ e_minus), ("-+", e_minus @ e_plus)):
        off_diag = product - np.diag(np.diag(product))
        report.add(
            "Eq.85+", k, float(np.linalg.norm(off_diag)), tol, {"order": order}
        )

    report.extend(
        periodicity_check(e_plus, k, cfg.omega_plus, tol, "Eq.86", {"sign": "+"})
    )
    report.extend(
        periodicity_check(e_minus, k, cfg.omega_minus, tol, "Eq.86", {"sign": "-"})
    )
    return report
