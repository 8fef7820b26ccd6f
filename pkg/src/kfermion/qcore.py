"""Root-of-unity arithmetic: deformed numbers, factorials, and branch policy.

All fractional powers of the primitive root q are taken as integer powers of
the fixed half root q_half = exp(i*pi/k), and factorial square roots are
products of per-factor principal roots.  Those two conventions make every
phase chain downstream (cross-algebra exchange, wrap periodicity) an exact
telescoping identity instead of an identity up to sign.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .report import VerificationReport

DEFAULT_TOL = 1e-9
# Beyond this order the factorial products are too ill-conditioned for the
# default tolerance; harness runs relax to EXTENDED_TOL up to EXTENDED_MAX_K.
DEFAULT_MAX_K = 16
EXTENDED_TOL = 1e-6
EXTENDED_MAX_K = 64


def rel_residual(lhs, rhs) -> float:
    """Scale-guarded relative residual ||lhs - rhs|| / max(1, ||rhs||).

    Works for scalars, vectors and matrices (Frobenius norm).
    """
    lhs = np.asarray(lhs, dtype=complex)
    rhs = np.asarray(rhs, dtype=complex)
    diff = float(np.linalg.norm(lhs - rhs))
    scale = max(1.0, float(np.linalg.norm(rhs)))
    return diff / scale


@dataclass(frozen=True)
class DeformationParams:
    """Order k plus every branch convention the rest of the package uses."""

    k: int
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 2:
            raise ValueError(f"order k must be an integer >= 2, got {self.k!r}")
        if not self.tol > 0:
            raise ValueError(f"tolerance must be positive, got {self.tol!r}")

    @property
    def q(self) -> complex:
        return cmath.exp(2j * math.pi / self.k)

    @property
    def q_bar(self) -> complex:
        return cmath.exp(-2j * math.pi / self.k)

    @property
    def q_half(self) -> complex:
        return cmath.exp(1j * math.pi / self.k)

    def q_half_pow(self, m: int) -> complex:
        """q_half**m for integer m, with the exponent reduced mod 2k first.

        Keeping the exponent as an integer until this single evaluation is
        what stops long rewrite chains from accumulating phase drift.
        """
        e = m % (2 * self.k)
        return cmath.exp(1j * math.pi * e / self.k)

    def q_pow(self, m: int) -> complex:
        """Integer power q**m via the same reduced-exponent path."""
        return self.q_half_pow(2 * m)


def qnum(x, Q) -> complex:
    """Deformed number (1 - Q**x) / (1 - Q), principal power for real x."""
    Q = complex(Q)
    if Q == 1:
        raise ValueError("deformation base Q = 1 is rejected (zero denominator)")
    return (1 - Q**x) / (1 - Q)


def qnum_polar(x, params: DeformationParams) -> complex:
    """The deformed number at the primitive root, in modulus-phase form.

    Equals qnum(x, params.q) for every real x; the phase factor makes the
    argument structure explicit: arg grows linearly with x while the modulus
    is a ratio of sines.
    """
    k = params.k
    return cmath.exp(1j * (x - 1) * math.pi / k) * (
        math.sin(x * math.pi / k) / math.sin(math.pi / k)
    )


def qfactorial(n: int, Q) -> complex:
    """Product of the deformed numbers 1..n; empty product for n = 0."""
    if n < 0:
        raise ValueError("factorial order must be non-negative")
    out = 1 + 0j
    for j in range(1, n + 1):
        out *= qnum(j, Q)
    return out


def qfactorial_sqrt(n: int, Q) -> complex:
    """Product of per-factor principal roots sqrt([1]) * ... * sqrt([n]).

    This is deliberately NOT the principal root of the full product: the
    per-factor version squares back to qfactorial exactly and telescopes
    through k-step ladder chains without branch jumps.
    """
    if n < 0:
        raise ValueError("factorial order must be non-negative")
    out = 1 + 0j
    for j in range(1, n + 1):
        out *= cmath.sqrt(qnum(j, Q))
    return out


def conj_qnum_identity_check(n: int, params: DeformationParams) -> VerificationReport:
    """Check the conjugate-factorial twist and conjugation symmetry at level n."""
    if not 0 <= n <= params.k:
        raise ValueError(f"level must satisfy 0 <= n <= k, got {n}")
    report = VerificationReport()
    lhs = qfactorial(n, params.q_bar)
    rhs = params.q_pow(-(n * (n - 1)) // 2) * qfactorial(n, params.q)
    report.add("Eq.44", params.k, rel_residual(lhs, rhs), params.tol, {"n": n})
    for x in (float(n), n + 0.5):
        res = rel_residual(qnum(x, params.q_bar), qnum(x, params.q).conjugate())
        report.add(
            "Eq.A.3",
            params.k,
            res,
            params.tol,
            {"x": x, "check": "conjugate"},
        )
    return report
