"""Normal-ordered calculus for a nilpotent variable pair with a fixed swap phase.

Elements are finite sums sum c_ab z^a zb^b with 0 <= a, b < k, kept in the
canonical order with all z factors left of all zb factors.  Moving one zb
past one z costs a single factor q**(-1/2); a monomial product therefore
carries the integer phase exponent -(a2*b1) of the half root, evaluated once
per term.  Any exponent reaching k annihilates the term.
"""

from __future__ import annotations

import numpy as np

from .qcore import DeformationParams, qfactorial_sqrt, qnum
from .report import VerificationReport

REALIZATION_KINDS = ("z", "d_z", "zbar", "d_zbar")


class GrassmannElement:
    """Immutable normal-form polynomial in the nilpotent pair."""

    __slots__ = ("params", "coeffs")

    def __init__(self, params: DeformationParams, coeffs=None):
        k = params.k
        clean = {}
        for (a, b), c in (coeffs or {}).items():
            if not (0 <= a < k and 0 <= b < k):
                raise ValueError(f"exponent pair ({a}, {b}) out of range for k={k}")
            c = complex(c)
            if c != 0:
                clean[(a, b)] = c
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("GrassmannElement is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, params):
        return cls(params, {})

    @classmethod
    def one(cls, params):
        return cls(params, {(0, 0): 1.0 + 0j})

    @classmethod
    def monomial(cls, params, a, b, coeff=1.0 + 0j):
        """c * z^a zb^b; exponents at or above k give the zero element."""
        if a < 0 or b < 0:
            raise ValueError("exponents must be non-negative")
        if a >= params.k or b >= params.k:
            return cls.zero(params)
        return cls(params, {(a, b): coeff})

    # -- ring operations ---------------------------------------------------

    def _require_same_algebra(self, other):
        if self.params.k != other.params.k:
            raise ValueError(
                f"operands live in different algebras (k={self.params.k} vs k={other.params.k})"
            )

    def __add__(self, other):
        self._require_same_algebra(other)
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, 0j) + c
        return GrassmannElement(self.params, out)

    def __sub__(self, other):
        return self + (-1.0) * other

    def __neg__(self):
        return (-1.0) * self

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return GrassmannElement(
                self.params, {key: c * other for key, c in self.coeffs.items()}
            )
        self._require_same_algebra(other)
        k = self.params.k
        out = {}
        for (a1, b1), c1 in self.coeffs.items():
            for (a2, b2), c2 in other.coeffs.items():
                a, b = a1 + a2, b1 + b2
                if a >= k or b >= k:
                    continue
                c = c1 * c2 * self.params.q_half_pow(-a2 * b1)
                key = (a, b)
                out[key] = out.get(key, 0j) + c
        return GrassmannElement(self.params, out)

    def __rmul__(self, scalar):
        return self * scalar

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("powers are non-negative integers")
        out = GrassmannElement.one(self.params)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        return self.params.k == other.params.k and self.coeffs == other.coeffs

    __hash__ = None

    # -- access and rendering ----------------------------------------------

    def coeff(self, a, b) -> complex:
        return self.coeffs.get((a, b), 0j)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for a, b in sorted(self.coeffs):
            c = self.coeffs[(a, b)]
            factors = []
            if a:
                factors.append(f"z^{a}")
            if b:
                factors.append(f"z̄^{b}")
            mono = " ".join(factors)
            parts.append(f"({c:.6g})" + (f"·{mono}" if mono else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"GrassmannElement(k={self.params.k}, {self})"

    def to_terms(self) -> list:
        """JSON-ready term list [[a, b], [re, im]], sorted by exponents."""
        return [
            [[a, b], [self.coeffs[(a, b)].real, self.coeffs[(a, b)].imag]]
            for a, b in sorted(self.coeffs)
        ]


def z_var(params) -> GrassmannElement:
    return GrassmannElement.monomial(params, 1, 0)


def zbar_var(params) -> GrassmannElement:
    return GrassmannElement.monomial(params, 0, 1)


def element_residual(x: GrassmannElement, y: GrassmannElement) -> float:
    """Largest absolute coefficient difference between two normal forms."""
    keys = set(x.coeffs) | set(y.coeffs)
    return max((abs(x.coeff(*key) - y.coeff(*key)) for key in keys), default=0.0)


# -- derivatives and integrals ----------------------------------------------

def d_z(f: GrassmannElement) -> GrassmannElement:
    """Left z-derivative: z^a zb^b -> [a] z^(a-1) zb^b."""
    p = f.params
    out = {}
    for (a, b), c in f.coeffs.items():
        if a == 0:
            continue
        key = (a - 1, b)
        out[key] = out.get(key, 0j) + c * qnum(a, p.q)
    return GrassmannElement(p, out)


def d_zbar(f: GrassmannElement) -> GrassmannElement:
    """Conjugate derivative; crossing z^a costs the phase q**(-a/2)."""
    p = f.params
    out = {}
    for (a, b), c in f.coeffs.items():
        if b == 0:
            continue
        key = (a, b - 1)
        out[key] = out.get(key, 0j) + c * qnum(b, p.q_bar) * p.q_half_pow(-a)
    return GrassmannElement(p, out)


def berezin_z(f: GrassmannElement) -> GrassmannElement:
    """Keep only top-degree-in-z terms and strip that factor."""
    k = f.params.k
    out = {(0, b): c for (a, b), c in f.coeffs.items() if a == k - 1}
    return GrassmannElement(f.params, out)


def berezin_zbar(f: GrassmannElement) -> GrassmannElement:
    """Keep only top-degree-in-zb terms and strip that factor."""
    k = f.params.k
    out = {(a, 0): c for (a, b), c in f.coeffs.items() if b == k - 1}
    return GrassmannElement(f.params, out)


# -- matrix realization ------------------------------------------------------

def realization_matrix(kind: str, params: DeformationParams) -> np.ndarray:
    """Matrix of a generator on the normalized monomial basis it acts on.

    The z side acts on z^n / sqrt([n]!), the conjugate side on zb^n with the
    conjugated normalization; multiplication by the variable realizes the
    creator of its algebra and the matching derivative the annihilator.
    """
    if kind not in REALIZATION_KINDS:
        raise ValueError(f"kind must be one of {REALIZATION_KINDS}, got {kind!r}")
    k = params.k
    plain_side = kind in ("z", "d_z")
    base = params.q if plain_side else params.q_bar
    norms = [qfactorial_sqrt(n, base) for n in range(k)]
    mat = np.zeros((k, k), dtype=complex)
    for n in range(k):
        if plain_side:
            vec = GrassmannElement.monomial(params, n, 0, 1.0 / norms[n])
            img = z_var(params) * vec if kind == "z" else d_z(vec)
        else:
            vec = GrassmannElement.monomial(params, 0, n, 1.0 / norms[n])
            img = zbar_var(params) * vec if kind == "zbar" else d_zbar(vec)
        for m in range(k):
            c = img.coeff(m, 0) if plain_side else img.coeff(0, m)
            mat[m, n] = c * norms[m]
    return mat


def reorder_identity_check(n: int, params: DeformationParams) -> VerificationReport:
    """Pull n conjugate factors through n plain factors two different ways.

    Both the direct product zb^n z^n and the phased power of the single pair
    product must land on the same normal form, and both must equal the
    single-phase closed form q**(-n^2/2) z^n zb^n.
    """
    if not 0 <= n <= params.k - 1:
        raise ValueError(f"need 0 <= n <= k-1, got n={n}")
    report = VerificationReport()
    z = z_var(params)
    zb = zbar_var(params)
    lhs = (zb**n) * (z**n)
    rhs = params.q_half_pow(-(n * (n - 1)) // 2) * ((zb * z) ** n)
    report.add(
        "Eq.45", params.k, element_residual(lhs, rhs), params.tol, {"n": n}
    )
    closed = GrassmannElement.monomial(params, n, n, params.q_half_pow(-n * n))
    report.add(
        "Eq.45", params.k, element_residual(lhs, closed), params.tol,
        {"n": n, "check": "closed-form"},
    )
    return report
