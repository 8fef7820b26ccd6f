"""Coherent kets over the nilpotent pair, overlaps, resolution of identity,
correlation factors, and the off-circle limit toward the primitive root.

The limit machinery approaches the root radially, Q = q*(1-eps), which is
the simplest path off the unit circle; the limits themselves do not depend
on the path.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .fockrep import QuonRep
from .grassmann import (
    GrassmannElement,
    berezin_z,
    berezin_zbar,
    element_residual,
    z_var,
    zbar_var,
)
from .qcore import DeformationParams, qfactorial, qfactorial_sqrt, qnum, rel_residual
from .report import VerificationReport

# Linear-rate envelope for the radial-path traces: the leading error of both
# ratio families is C*eps with C bounded by r*k / (2 sin(pi/k)), well under
# this slope for every sweep the harness runs.
LINEAR_RATE_ENVELOPE = 50.0
# Errors below this are floating-point floor, exempt from monotonicity.
CONVERGENCE_FLOOR = 1e-13


@dataclass(frozen=True, eq=False)
class GrassmannState:
    """Number-basis ket whose components are normal-form elements."""

    params: DeformationParams
    components: tuple


def apply_matrix(mat: np.ndarray, state: GrassmannState) -> GrassmannState:
    """Act with a k x k matrix on the component vector."""
    k = state.params.k
    comps = []
    for m in range(k):
        acc = GrassmannElement.zero(state.params)
        for n in range(k):
            c = complex(mat[m, n])
            if c != 0:
                acc = acc + c * state.components[n]
        comps.append(acc)
    return GrassmannState(state.params, tuple(comps))


def _monomial_state(params, conjugate: bool) -> GrassmannState:
    base = params.q_bar if conjugate else params.q
    comps = []
    for n in range(params.k):
        norm = qfactorial_sqrt(n, base)
        if conjugate:
            comps.append(GrassmannElement.monomial(params, 0, n, 1.0 / norm))
        else:
            comps.append(GrassmannElement.monomial(params, n, 0, 1.0 / norm))
    return GrassmannState(params, tuple(comps))


def coherent_ket(params) -> GrassmannState:
    """|z): component n is z^n over the per-factor root of [n]!."""
    return _monomial_state(params, conjugate=False)


def coherent_ket_bar(params) -> GrassmannState:
    """|zb): component n is zb^n with the conjugated normalization."""
    return _monomial_state(params, conjugate=True)


def coherent_bra(params) -> GrassmannState:
    """(z|: dual coefficients, which carry the conjugate monomials."""
    return _monomial_state(params, conjugate=True)


def coherent_bra_bar(params) -> GrassmannState:
    """(zb|: dual coefficients, which carry the plain monomials."""
    return _monomial_state(params, conjugate=False)


def eigenstate_check(rep: QuonRep, state: GrassmannState, variable: str = "z") -> VerificationReport:
    """Componentwise eigenvector check of the coherent kets.

    variable="z" checks the lowering generator against left multiplication
    by z; variable="zbar" checks the conjugate annihilator against zb.
    """
    params = state.params
    if rep.params.k != params.k:
        raise ValueError("representation and state orders differ")
    if variable == "z":
        op, mult, tag = rep.a_minus, z_var(params), "Eq.39"
    elif variable == "zbar":
        op, mult, tag = rep.a_plus_dag, zbar_var(params), "Eq.40"
    else:
        raise ValueError(f"variable must be 'z' or 'zbar', got {variable!r}")
    acted = apply_matrix(op, state)
    report = VerificationReport()
    for n in range(params.k):
        res = element_residual(acted.components[n], mult * state.components[n])
        report.add(tag, params.k, res, params.tol, {"component": n})
    return report


def scalar_product(bra_kind: str, ket_kind: str, params) -> GrassmannElement:
    """Overlap of a dual/ket pair as a normal-form element.

    The dual coefficient multiplies from the left, matching the written
    order of the overlap sums.
    """
    if bra_kind not in ("z", "zbar") or ket_kind not in ("z", "zbar"):
        raise ValueError("kinds must be 'z' or 'zbar'")
    bra = coherent_bra(params) if bra_kind == "z" else coherent_bra_bar(params)
    ket = coherent_ket(params) if ket_kind == "z" else coherent_ket_bar(params)
    total = GrassmannElement.zero(params)
    for bc, kc in zip(bra.components, ket.components):
        total = total + bc * kc
    return total


def qexp(x: GrassmannElement, params, base=None) -> GrassmannElement:
    """Truncated deformed exponential sum x^n / [n]! over n = 0..k-1."""
    base = params.q if base is None else base
    total = GrassmannElement.zero(params)
    for n in range(params.k):
        total = total + (x**n) * (1.0 / qfactorial(n, base))
    return total


def scalar_product_check(params) -> VerificationReport:
    """Self-overlaps must equal the matching truncated exponentials."""
    report = VerificationReport()
    zbz = zbar_var(params) * z_var(params)
    res = element_residual(scalar_product("z", "z", params), qexp(zbz, params))
    report.add("Eq.49", params.k, res, params.tol, {"family": "z"})
    zzb = z_var(params) * zbar_var(params)
    res = element_residual(
        scalar_product("zbar", "zbar", params), qexp(zzb, params, base=params.q_bar)
    )
    report.add("Eq.49", params.k, res, params.tol, {"family": "zbar"})
    return report


def measure_mu(params) -> GrassmannElement:
    """Integration weight: descending balanced monomials with real factors.

    The factor at n is the per-factor root product for both bases, i.e. the
    positive modulus of the deformed factorial.
    """
    total = GrassmannElement.zero(params)
    k = params.k
    for n in range(k):
        c = qfactorial_sqrt(n, params.q) * qfactorial_sqrt(n, params.q_bar)
        total = total + GrassmannElement.monomial(params, k - 1 - n, k - 1 - n, c)
    return total


# Integrand assembly rule for the resolution of identity, recorded in every
# report entry: the factor carrying z powers sits left of the weight, the
# factor carrying zb powers sits right of it, and the top coefficient is
# extracted from the z slot first.  With this order both variable families
# resolve the identity exactly.
OVERCOMPLETENESS_CONVENTION = (
    "z-power factor left of weight, conjugate factor right; z slot extracted first"
)


def overcompleteness_check(params) -> VerificationReport:
    """Both coherent families must resolve the identity under the weight."""
    k = params.k
    eye = np.eye(k)
    mu = measure_mu(params)
    report = VerificationReport()
    ket, bra = coherent_ket(params), coherent_bra(params)
    ket_b, bra_b = coherent_ket_bar(params), coherent_bra_bar(params)
    for family in ("z", "zbar"):
        mat = np.zeros((k, k), dtype=complex)
        for n in range(k):
            for n2 in range(k):
                if family == "z":
                    integrand = ket.components[n] * mu * bra.components[n2]
                else:
                    integrand = bra_b.components[n2] * mu * ket_b.components[n]
                mat[n, n2] = berezin_zbar(berezin_z(integrand)).coeff(0, 0)
        res = rel_residual(mat, eye)
        detail = OVERCOMPLETENESS_CONVENTION
        if res > params.tol:
            detail += "; matrix=" + np.array2string(mat, precision=6)
        report.add("Eq.51", k, res, params.tol, {"family": family}, detail)
    return report


def coherence_factor(m: int, params) -> complex:
    """Closed-form order-m correlation factor: a pure phase below the cutoff."""
    if m < 1:
        raise ValueError("correlation order must be >= 1")
    if m > params.k - 1:
        return 0j
    return params.q_half_pow(-(m * (m - 1)) // 2)


def coherence_factor_oracle(m: int, params) -> complex:
    """Same factor read off the rewrite engine as a proportionality scalar.

    It is the scalar c with zb^m z^m = c * (zb z)^m in normal form; both
    sides vanish at or above the cutoff, where c is defined as 0.
    """
    if m < 1:
        raise ValueError("correlation order must be >= 1")
    num = (zbar_var(params) ** m) * (z_var(params) ** m)
    den = (zbar_var(params) * z_var(params)) ** m
    if num.is_zero() and den.is_zero():
        return 0j
    return num.coeff(m, m) / den.coeff(m, m)


def coherence_check(params) -> VerificationReport:
    """Closed form against the engine oracle, plus the modulus step."""
    report = VerificationReport()
    k = params.k
    for m in range(1, k + 2):
        closed = coherence_factor(m, params)
        oracle = coherence_factor_oracle(m, params)
        report.add("Eq.57", k, abs(closed - oracle), params.tol, {"m": m})
        expected_mod = 1.0 if m <= k - 1 else 0.0
        report.add("Eq.56", k, abs(abs(closed) - expected_mod), params.tol, {"m": m})
    if k == 2:
        report.add("Eq.58", k, abs(coherence_factor(1, params) - 1), params.tol, {"m": 1})
        report.add("Eq.58", k, abs(coherence_factor(2, params)), params.tol, {"m": 2})
    return report


def limit_ratios(r: int, s: int, eps_schedule, params) -> VerificationReport:
    """Radial-path traces of the two block-ratio limits.

    The block ratio [k]_Q/[rk]_Q tends to 1/r and the offset ratio
    [s]_Q/[rk+s]_Q tends to 1; each trace entry records the error at one
    eps, and a final entry asserts the errors decrease monotonically.
    s = 0 makes the offset ratio 0/0 and is excluded by convention.
    """
    k = params.k
    if r < 1:
        raise ValueError("block multiplicity r must be >= 1")
    if not 0 <= s <= k - 1:
        raise ValueError(f"offset must satisfy 0 <= s <= k-1, got {s}")
    schedule = list(eps_schedule)
    if not schedule or any(not 0 < e <= 0.1 for e in schedule):
        raise ValueError("eps values must lie in (0, 0.1]")
    if any(b >= a for a, b in zip(schedule, schedule[1:])):
        raise ValueError("eps schedule must be strictly decreasing")

    report = VerificationReport()
    errs_a, errs_b = [], []
    for eps in schedule:
        big_q = params.q * (1 - eps)
        ratio_a = qnum(k, big_q) / qnum(r * k, big_q)
        err_a = abs(ratio_a - 1.0 / r)
        errs_a.append(err_a)
        report.add(
            "Eq.64a", k, err_a, LINEAR_RATE_ENVELOPE * eps,
            {"r": r, "eps": repr(eps)},
        )
        if s:
            ratio_b = qnum(s, big_q) / qnum(r * k + s, big_q)
            err_b = abs(ratio_b - 1.0)
            errs_b.append(err_b)
            report.add(
                "Eq.64b", k, err_b, LINEAR_RATE_ENVELOPE * eps,
                {"r": r, "s": s, "eps": repr(eps)},
            )
    if s == 0:
        report.add(
            "Eq.64b", k, 0.0, params.tol, {"r": r, "s": 0},
            detail="degenerate offset: the ratio is 0/0 and is excluded by convention",
        )

    def worst_increase(errs):
        worst = 0.0
        for prev, nxt in zip(errs, errs[1:]):
            if nxt > CONVERGENCE_FLOOR:
                worst = max(worst, nxt - prev)
        return max(0.0, worst)

    report.add(
        "Eq.64a", k, worst_increase(errs_a), 0.0, {"r": r, "check": "monotone"}
    )
    if s:
        report.add(
            "Eq.64b", k, worst_increase(errs_b), 0.0,
            {"r": r, "s": s, "check": "monotone"},
        )
    return report


@dataclass(frozen=True, eq=False)
class QCoherentTruncation:
    """Leading coefficients of an off-circle coherent expansion."""

    Q: complex
    Z: complex
    n_max: int
    coefficients: np.ndarray


def q_coherent_truncation(Q, Z, n_max: int, k: int) -> QCoherentTruncation:
    """Coefficients Z^n / sqrt([n]!) for n = 0..n_max at an off-circle base."""
    Q = complex(Q)
    if abs(abs(Q) - 1.0) < 1e-12:
        raise ValueError("base Q must lie off the unit circle")
    if n_max < k:
        raise ValueError("truncation must cover at least one full block (n_max >= k)")
    coeffs = np.array([Z**n / qfactorial_sqrt(n, Q) for n in range(n_max + 1)])
    return QCoherentTruncation(Q, complex(Z), int(n_max), coeffs)


@dataclass(frozen=True, eq=False)
class SupercoherentState:
    """Rank-one coefficient grid of the factorized limit state.

    grid[r, s] is the scalar coefficient of the level r*k + s; the nilpotent
    monomial z^s stays implicit in the column index.
    """

    params: DeformationParams
    alpha: complex
    r_max: int
    grid: np.ndarray


def supercoherent_limit(alpha, r_max: int, params) -> SupercoherentState:
    """Construct the factorized limit grid and verify its structure.

    Checks that the level regrouping n = r*k + s is a bijection on the
    truncated range and that the outer-product grid reproduces the
    level-by-level expansion coefficient by coefficient.
    """
    if r_max < 1:
        raise ValueError("bosonic truncation must be >= 1")
    k = params.k
    alpha = complex(alpha)
    boson = np.array(
        [alpha**r / math.sqrt(math.factorial(r)) for r in range(r_max + 1)]
    )
    fermi = np.array([1.0 / qfactorial_sqrt(s, params.q) for s in range(k)])
    grid = np.outer(boson, fermi)

    total = (r_max + 1) * k
    seen = set()
    levelwise = np.zeros_like(grid)
    for n in range(total):
        r, s = divmod(n, k)
        if (r, s) in seen or r * k + s != n:
            raise RuntimeError("level regrouping is not a bijection")
        seen.add((r, s))
        levelwise[r, s] = (
            alpha**r / math.sqrt(math.factorial(r)) / qfactorial_sqrt(s, params.q)
        )
    if len(seen) != total:
        raise RuntimeError("level regrouping missed indices")
    if rel_residual(levelwise, grid) > params.tol:
        raise ValueError("outer-product grid does not match the level expansion")

    tail = abs(alpha) ** r_max / math.sqrt(math.factorial(r_max))
    if tail > params.tol:
        warnings.warn(
            f"bosonic tail magnitude {tail:.3g} exceeds tol={params.tol:g}; "
            "increase r_max for tighter truncation",
            stacklevel=2,
        )
    return SupercoherentState(params, alpha, int(r_max), grid)
