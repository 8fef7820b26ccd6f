"""Finite ladder-operator representation truncated at order k.

The k-dimensional number basis carries two generator triples: the plain pair
(a_minus, a_plus) with deformed matrix elements at the primitive root, and
the conjugate pair (a_plus_dag, a_minus_dag) with conjugated elements.  Both
are nilpotent of order exactly k.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .qcore import DeformationParams, qfactorial_sqrt, qnum, rel_residual
from .report import VerificationReport

# The representation is the symmetric-shift specialization: the number shift
# in the ladder coefficients is fixed to 1/2, which collapses them to the
# deformed numbers at levels n and n+1.
LADDER_SHIFT = 0.5


@dataclass(frozen=True, eq=False)
class QuonRep:
    """Matrices of both generator triples on the k-level number basis."""

    params: DeformationParams
    a_minus: np.ndarray
    a_plus: np.ndarray
    a_plus_dag: np.ndarray
    a_minus_dag: np.ndarray
    number_op: np.ndarray
    s: float = LADDER_SHIFT


def build_rep(params: DeformationParams) -> QuonRep:
    """Construct the nilpotent representation of order k.

    a_minus |n> = sqrt([n]) |n-1>, a_plus |n> = sqrt([n+1]) |n+1>, and the
    conjugate pair uses the conjugated deformed numbers.  All square roots
    are principal; the conjugate matrices come out equal to the adjoints of
    the plain ones because the deformed numbers never sit on the negative
    real axis.
    """
    k = params.k
    root = [cmath.sqrt(qnum(n, params.q)) for n in range(k)]
    root_bar = [cmath.sqrt(qnum(n, params.q_bar)) for n in range(k)]
    a_minus = np.zeros((k, k), dtype=complex)
    a_plus = np.zeros((k, k), dtype=complex)
    a_plus_dag = np.zeros((k, k), dtype=complex)
    a_minus_dag = np.zeros((k, k), dtype=complex)
    for n in range(1, k):
        a_minus[n - 1, n] = root[n]
        a_plus[n, n - 1] = root[n]
        a_plus_dag[n - 1, n] = root_bar[n]
        a_minus_dag[n, n - 1] = root_bar[n]
    number_op = np.diag(np.arange(k)).astype(complex)
    return QuonRep(params, a_minus, a_plus, a_plus_dag, a_minus_dag, number_op)


def verify_defining_relations(rep: QuonRep) -> VerificationReport:
    """Check the exchange and number-shift relations of both triples."""
    p = rep.params
    k = p.k
    eye = np.eye(k)
    am, ap = rep.a_minus, rep.a_plus
    apd, amd = rep.a_plus_dag, rep.a_minus_dag
    num = rep.number_op
    report = VerificationReport()
    report.add("Eq.1", k, rel_residual(am @ ap - p.q * (ap @ am), eye), p.tol)
    report.add("Eq.2a", k, rel_residual(num @ am - am @ num, -am), p.tol)
    report.add("Eq.2b", k, rel_residual(num @ ap - ap @ num, ap), p.tol)
    report.add("Eq.16", k, rel_residual(apd @ amd - p.q_bar * (amd @ apd), eye), p.tol)
    report.add("Eq.17a", k, rel_residual(num @ apd - apd @ num, -apd), p.tol)
    report.add("Eq.17b", k, rel_residual(num @ amd - amd @ num, amd), p.tol)
    return report


def verify_derived_relations(rep: QuonRep) -> VerificationReport:
    """Check everything the defining relations imply on the truncated basis."""
    p = rep.params
    k = p.k
    tol = p.tol
    am, ap = rep.a_minus, rep.a_plus
    apd, amd = rep.a_plus_dag, rep.a_minus_dag
    num = rep.number_op
    mpow = np.linalg.matrix_power
    report = VerificationReport()

    diag_up = np.diag([qnum(n + 1, p.q) for n in range(k)])
    diag_dn = np.diag([qnum(n, p.q) for n in range(k)])
    report.add("Eq.4a", k, rel_residual(am @ ap, diag_up), tol)
    report.add("Eq.4b", k, rel_residual(ap @ am, diag_dn), tol)

    for ell in range(1, k):
        lhs = am @ mpow(ap, ell)
        rhs = qnum(ell, p.q) * mpow(ap, ell - 1) + p.q_pow(ell) * (mpow(ap, ell) @ am)
        report.add("Eq.6a", k, rel_residual(lhs, rhs), tol, {"l": ell})
        lhs = mpow(am, ell) @ ap
        rhs = qnum(ell, p.q) * mpow(am, ell - 1) + p.q_pow(ell) * (ap @ mpow(am, ell))
        report.add("Eq.6b", k, rel_residual(lhs, rhs), tol, {"l": ell})

    report.add("Eq.7a", k, rel_residual(am @ mpow(ap, k), mpow(ap, k) @ am), tol)
    report.add("Eq.7b", k, rel_residual(mpow(am, k) @ ap, ap @ mpow(am, k)), tol)

    for ell in range(1, k + 1):
        shifted = num + ell * np.eye(k)
        report.add(
            "Eq.8a", k, rel_residual(num @ mpow(ap, ell), mpow(ap, ell) @ shifted),
            tol, {"l": ell},
        )
        report.add(
            "Eq.8b", k, rel_residual(mpow(am, ell) @ num, shifted @ mpow(am, ell)),
            tol, {"l": ell},
        )

    zero = np.zeros((k, k))
    report.add("Eq.9a", k, rel_residual(mpow(ap, k), zero), tol)
    report.add("Eq.9b", k, rel_residual(mpow(am, k), zero), tol)

    vacuum = np.zeros(k, dtype=complex)
    vacuum[0] = 1.0
    worst = 0.0
    for n in range(k):
        built = mpow(ap, n) @ vacuum / qfactorial_sqrt(n, p.q)
        expected = np.zeros(k, dtype=complex)
        expected[n] = 1.0
        worst = max(worst, rel_residual(built, expected))
    report.add("Eq.14", k, worst, tol)

    report.add(
        "Eq.20", k,
        rel_residual(am @ apd, p.q_half_pow(-1) * (apd @ am)), tol, {"side": "lower"},
    )
    report.add(
        "Eq.20", k,
        rel_residual(ap @ amd, p.q_half_pow(+1) * (amd @ ap)), tol, {"side": "raise"},
    )
    return report
