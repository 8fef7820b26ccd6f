"""Structured pass/fail records shared by every verification suite.

A check entry records one identity check: a stable tag, the order k it ran
at, the measured residual and the tolerance it was held to.  Reports are
plain lists of entries so suites can be merged and serialized verbatim.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

# Fixed registry of check tags.  Tags are opaque identifiers on the wire
# (JSON/CSV); the values give a short functional description of what each
# check asserts.
IDENTITY_TAGS = {
    "Eq.1": "lowering/raising exchange: a- a+ - q a+ a- = 1",
    "Eq.2a": "number operator shifts the lowering generator by -1",
    "Eq.2b": "number operator shifts the raising generator by +1",
    "Eq.4a": "a- a+ acts as the deformed number at level n+1",
    "Eq.4b": "a+ a- acts as the deformed number at level n",
    "Eq.6a": "ladder commutation through an l-fold raising power",
    "Eq.6b": "ladder commutation through an l-fold lowering power",
    "Eq.7a": "k-fold raising power commutes with the lowering generator",
    "Eq.7b": "k-fold lowering power commutes with the raising generator",
    "Eq.8a": "number shift through an l-fold raising power",
    "Eq.8b": "number shift through an l-fold lowering power",
    "Eq.9a": "raising generator is nilpotent of order k",
    "Eq.9b": "lowering generator is nilpotent of order k",
    "Eq.14": "every basis vector is a normalized raising chain from the vacuum",
    "Eq.16": "conjugate-side exchange with phase 1/q",
    "Eq.17a": "number operator shifts the conjugate annihilator by -1",
    "Eq.17b": "number operator shifts the conjugate creator by +1",
    "Eq.19": "independently built conjugate generators equal the adjoints",
    "Eq.20": "cross-algebra exchange with the fixed half phase",
    "Eq.21": "z is nilpotent of order k under multiplication",
    "Eq.22": "conjugate variable is nilpotent of order k under multiplication",
    "Eq.25": "z-derivative power rule with deformed coefficient",
    "Eq.26": "conjugate-derivative power rule with conjugate coefficient",
    "Eq.31": "z-derivative is nilpotent of order k",
    "Eq.32": "conjugate derivative is nilpotent of order k",
    "Eq.33": "z-side realization matrices equal the ladder matrices",
    "Eq.34": "conjugate-side realization matrices equal the conjugate ladder",
    "Eq.35": "swap rule: moving z left past the conjugate costs one half phase",
    "Eq.36": "the two derivatives exchange with the inverse half phase",
    "Eq.39": "coherent ket is an eigenvector of the lowering generator",
    "Eq.40": "conjugate coherent ket is an eigenvector of the conjugate annihilator",
    "Eq.44": "conjugate factorial equals a pure phase times the factorial",
    "Eq.45": "reordering n conjugate factors past n plain factors",
    "Eq.49": "self-overlap equals the truncated deformed exponential",
    "Eq.50a": "integral of sub-top powers vanishes",
    "Eq.50b": "integral of the top power is one",
    "Eq.51": "weighted double integral resolves the identity",
    "Eq.56": "correlation-factor modulus follows the cutoff step",
    "Eq.57": "closed-form correlation factor matches the monomial-ratio oracle",
    "Eq.58": "order-2 correlation values: first factor one, higher vanish",
    "Eq.63": "level index regroups uniquely into block and offset",
    "Eq.64a": "block ratio tends to 1/r along the radial path",
    "Eq.64b": "offset ratio tends to 1 along the radial path",
    "Eq.65": "grid entries are the radial limits of the truncated coefficients",
    "Eq.67": "coefficient grid equals the level-by-level expansion",
    "Eq.69": "coefficient grid factorizes as an outer product",
    "Eq.70": "phase states are orthonormal",
    "Eq.73": "phase-basis round trip reconstructs the number basis",
    "Eq.74": "phase operator is hermitean with the reference angles as spectrum",
    "Eq.76": "forward phase exponential shifts down with the wrap factor",
    "Eq.77": "backward phase exponential shifts up with the wrap factor",
    "Eq.79": "spectral forward exponential equals the cyclic shift matrix",
    "Eq.80": "spectral backward exponential equals the cyclic shift matrix",
    "Eq.81": "k-th power of the phase exponential is the wrap factor",
    "Eq.84": "ladder phase polynomial acts as a weighted down shift",
    "Eq.85": "conjugate ladder phase polynomial acts as a weighted up shift",
    "Eq.85+": "products of the two ladder phase polynomials are diagonal",
    "Eq.86": "k-th power of the ladder phase polynomial is the wrap factor",
    "Eq.89": "clock/shift exchange with phase q",
    "Eq.89*": "adjoint pair exchange with the conjugate phase",
    "Eq.90": "iterated clock/shift exchange",
    "Eq.93": "lattice generators compose with a half cross-product phase",
    "Eq.93*": "adjoint lattice generators compose with the identical phase law",
    "Eq.95": "lattice commutator closes with a sine coefficient",
    "Eq.95*": "adjoint lattice commutator closes with the identical sine law",
    "Eq.96": "quantum-group build rejects the degenerate order 2",
    "Eq.98": "clock square and its inverse multiply to the identity",
    "Eq.99": "quantum-group ladder commutator",
    "Eq.100": "clock square conjugation rescales the ladder generators",
    "Eq.A.2": "deformed integer equals the geometric sum",
    "Eq.A.3": "polar form and conjugation symmetry of the deformed number",
    "prop.assoc": "normal-form product is associative",
    "run.conditioning": "suite aborted by a numeric conditioning failure",
}


@dataclass(frozen=True)
class CheckEntry:
    """One identity check: residual against tolerance, plus context."""

    equation_tag: str
    k: int
    params: dict
    residual: float
    tol: float
    passed: bool
    detail: str | None = None


def make_entry(tag, k, residual, tol, params=None, detail=None) -> CheckEntry:
    if tag not in IDENTITY_TAGS:
        raise KeyError(f"unknown check tag {tag!r}")
    residual = float(residual)
    tol = float(tol)
    return CheckEntry(
        equation_tag=tag,
        k=int(k),
        params={str(a): str(b) for a, b in (params or {}).items()},
        residual=residual,
        tol=tol,
        passed=residual <= tol,
        detail=detail,
    )


@dataclass
class VerificationReport:
    """Ordered collection of check entries from one or more suites."""

    entries: list[CheckEntry] = field(default_factory=list)

    def add(self, tag, k, residual, tol, params=None, detail=None) -> CheckEntry:
        entry = make_entry(tag, k, residual, tol, params, detail)
        self.entries.append(entry)
        return entry

    def extend(self, other: "VerificationReport") -> None:
        self.entries.extend(other.entries)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def max_residual(self) -> float:
        finite = [e.residual for e in self.entries if math.isfinite(e.residual)]
        return max(finite, default=0.0)

    def failures(self) -> list[CheckEntry]:
        return [e for e in self.entries if not e.passed]

    def summary(self) -> dict:
        total = len(self.entries)
        good = sum(1 for e in self.entries if e.passed)
        return {"total": total, "passed": good, "failed": total - good}
