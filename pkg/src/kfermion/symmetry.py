"""Clock/shift operator pair, integer-lattice generators, and the
quantum-group triple built from them.

The clock U is the diagonal of successive root powers, the shift V is the
ladder phase polynomial; they exchange as VU = q UV, which extends to all
integer powers through the stored inverses.  The adjoint pair (X, Y)
satisfies the conjugated exchange XY = qbar YX, i.e. YX = q XY with the
letters swapped, so its lattice generators obey the identical composition
and bracket laws as the plain ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fockrep import QuonRep
from .phase import PhaseConfig, quon_phase
from .qcore import DeformationParams, rel_residual
from .report import VerificationReport


def cross(m, n) -> int:
    """Antisymmetric lattice cross product m1*n2 - m2*n1."""
    return m[0] * n[1] - m[1] * n[0]


@dataclass(frozen=True, eq=False)
class SymmetryPair:
    """Clock/shift pair, its adjoint image, and validated inverses."""

    params: DeformationParams
    U: np.ndarray
    V: np.ndarray
    X: np.ndarray
    Y: np.ndarray
    U_inv: np.ndarray
    V_inv: np.ndarray
    X_inv: np.ndarray
    Y_inv: np.ndarray


def build_pair(rep: QuonRep, cfg: PhaseConfig) -> SymmetryPair:
    """Assemble the pair from the ladder generators and invert everything.

    U = a- a+ - a+ a- comes out as the diagonal of root powers, hence
    invertible; V is a weighted cyclic shift with nonzero weights, hence
    invertible as well.  A conditioning guard aborts before inversion if V
    is numerically singular.
    """
    p = rep.params
    k = p.k
    u_mat = rep.a_minus @ rep.a_plus - rep.a_plus @ rep.a_minus
    v_mat = quon_phase(rep, cfg, +1)
    x_mat = rep.a_plus_dag @ rep.a_minus_dag - rep.a_minus_dag @ rep.a_plus_dag
    y_mat = quon_phase(rep, cfg, -1)
    if np.linalg.cond(v_mat) > 1.0 / p.tol:
        raise np.linalg.LinAlgError(
            f"shift operator numerically singular (cond={np.linalg.cond(v_mat):.3e})"
        )
    eye = np.eye(k)
    inverses = []
    for name, mat in (("U", u_mat), ("V", v_mat), ("X", x_mat), ("Y", y_mat)):
        inv = np.linalg.inv(mat)
        if rel_residual(mat @ inv, eye) > p.tol:
            raise np.linalg.LinAlgError(f"inverse of {name} failed validation")
        inverses.append(inv)
    return SymmetryPair(p, u_mat, v_mat, x_mat, y_mat, *inverses)


def _int_power(mat, mat_inv, n: int) -> np.ndarray:
    return np.linalg.matrix_power(mat if n >= 0 else mat_inv, abs(n))


def t_generator(pair: SymmetryPair, n) -> np.ndarray:
    """Lattice generator: half-phase times U^n1 V^n2, indices in Z^2."""
    n1, n2 = n
    return pair.params.q_half_pow(n1 * n2) * (
        _int_power(pair.U, pair.U_inv, n1) @ _int_power(pair.V, pair.V_inv, n2)
    )


def t_generator_bar(pair: SymmetryPair, n) -> np.ndarray:
    """Adjoint-side lattice generator; equals the adjoint of t_generator."""
    n1, n2 = n
    return pair.params.q_half_pow(n1 * n2) * (
        _int_power(pair.X, pair.X_inv, n1) @ _int_power(pair.Y, pair.Y_inv, n2)
    )


def exchange_check(pair: SymmetryPair, max_power: int = 3) -> VerificationReport:
    """Basic and iterated exchange for the pair, plus the adjoint image."""
    p = pair.params
    k = p.k
    report = VerificationReport()
    report.add(
        "Eq.89", k, rel_residual(pair.V @ pair.U, p.q * (pair.U @ pair.V)), p.tol
    )
    report.add(
        "Eq.89*", k, rel_residual(pair.X @ pair.Y, p.q_bar * (pair.Y @ pair.X)), p.tol
    )
    mpow = np.linalg.matrix_power
    worst = 0.0
    for nn in range(max_power + 1):
        for mm in range(max_power + 1):
            lhs = mpow(pair.V, nn) @ mpow(pair.U, mm)
            rhs = p.q_pow(nn * mm) * (mpow(pair.U, mm) @ mpow(pair.V, nn))
            worst = max(worst, rel_residual(lhs, rhs))
    report.add("Eq.90", k, worst, p.tol, {"max_power": max_power})
    return report


def product_law_check(pair: SymmetryPair, m, n, conjugate: bool = False) -> VerificationReport:
    """Composition law of two lattice generators.

    The adjoint lattice obeys the identical law: its exchange constant is
    again q (with the roles of clock and shift letters swapped), so taking
    adjoints maps the composition law onto itself.
    """
    p = pair.params
    gen = t_generator_bar if conjugate else t_generator
    tag = "Eq.93*" if conjugate else "Eq.93"
    lhs = gen(pair, m) @ gen(pair, n)
    rhs = p.q_half_pow(-cross(m, n)) * gen(pair, (m[0] + n[0], m[1] + n[1]))
    report = VerificationReport()
    report.add(tag, p.k, rel_residual(lhs, rhs), p.tol, {"m": m, "n": n})
    return report


def sine_commutator_check(pair: SymmetryPair, m, n, conjugate: bool = False) -> VerificationReport:
    """Lattice bracket closes on the sum index with a sine coefficient."""
    p = pair.params
    gen = t_generator_bar if conjugate else t_generator
    tag = "Eq.95*" if conjugate else "Eq.95"
    t_m, t_n = gen(pair, m), gen(pair, n)
    lhs = t_m @ t_n - t_n @ t_m
    coeff = -2j * math.sin(math.pi * cross(m, n) / p.k)
    rhs = coeff * gen(pair, (m[0] + n[0], m[1] + n[1]))
    report = VerificationReport()
    report.add(tag, p.k, rel_residual(lhs, rhs), p.tol, {"m": m, "n": n})
    return report


@dataclass(frozen=True, eq=False)
class UqSl2Generators:
    """Quantum-group triple: ladder pair plus the clock square and inverse."""

    params: DeformationParams
    j_plus: np.ndarray
    j_minus: np.ndarray
    k_op: np.ndarray
    k_inv: np.ndarray


def uqsl2_generators(pair: SymmetryPair) -> UqSl2Generators:
    """Build the quantum-group generators from the lattice.

    Rejected for k = 2, where q equals its own inverse and the ladder
    normalization q - 1/q vanishes.
    """
    p = pair.params
    if p.k == 2:
        raise ValueError(
            "k = 2 rejected: q - 1/q = 0, the ladder normalization divides by zero"
        )
    denom = p.q_pow(1) - p.q_pow(-1)
    j_plus = (t_generator(pair, (1, 1)) - t_generator(pair, (-1, 1))) / denom
    j_minus = (t_generator(pair, (-1, -1)) - t_generator(pair, (1, -1))) / denom
    k_op = t_generator(pair, (-2, 0))
    k_inv = t_generator(pair, (2, 0))
    if rel_residual(k_op @ k_inv, np.eye(p.k)) > p.tol:
        raise np.linalg.LinAlgError("clock square and its inverse fail to cancel")
    return UqSl2Generators(p, j_plus, j_minus, k_op, k_inv)


def uqsl2_relations_check(gens: UqSl2Generators) -> VerificationReport:
    """Defining relations of the quantum-group triple."""
    p = gens.params
    k = p.k
    denom = p.q_pow(1) - p.q_pow(-1)
    report = VerificationReport()
    lhs = gens.j_plus @ gens.j_minus - gens.j_minus @ gens.j_plus
    rhs = (gens.k_op - gens.k_inv) / denom
    report.add("Eq.99", k, rel_residual(lhs, rhs), p.tol)
    for sign, j_op in (("+", gens.j_plus), ("-", gens.j_minus)):
        lhs = gens.k_op @ j_op @ gens.k_inv
        rhs = p.q_pow(2 if sign == "+" else -2) * j_op
        report.add("Eq.100", k, rel_residual(lhs, rhs), p.tol, {"sign": sign})
    return report
