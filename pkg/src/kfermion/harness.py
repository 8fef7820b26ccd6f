"""Suite orchestration, machine-readable reports, and the command line.

Reports are deterministic: the same run configuration produces byte-identical
JSON.  CSV tables print floating values with 17 significant digits so they
round-trip bit-exactly.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import coherent as coh
from . import grassmann as gr
from .fockrep import build_rep, verify_defining_relations, verify_derived_relations
from .phase import (
    PhaseConfig,
    _exp_phase_both,
    exp_phase,
    periodicity_check,
    phase_operator,
    phase_states,
    quon_phase,
    quon_phase_check,
)
from .qcore import (
    DEFAULT_MAX_K,
    DEFAULT_TOL,
    EXTENDED_MAX_K,
    EXTENDED_TOL,
    DeformationParams,
    qfactorial,
    qfactorial_sqrt,
    qnum,
    rel_residual,
)
from .report import CheckEntry, VerificationReport, make_entry
from .symmetry import (
    build_pair,
    cross,
    exchange_check,
    t_generator,
    t_generator_bar,
    uqsl2_generators,
    uqsl2_relations_check,
)

SUITE_NAMES = ("fockrep", "grassmann", "coherent", "phase", "symmetry")
OUTPUT_FORMATS = ("json", "csv", "text")
OUTPUT_DIR_ENV = "KFERMION_OUTPUT_DIR"
DEFAULT_K_LIST = (2, 3, 4, 5, 6, 7, 8)
DEFAULT_EPS_SCHEDULE = (1e-2, 1e-3, 1e-4, 1e-5)
LATTICE_SWEEP_BOUND = 3
SUPERCOHERENT_ALPHA = 0.6 + 0.3j


@dataclass
class RunConfig:
    """Everything a verification run depends on."""

    k_list: tuple = DEFAULT_K_LIST
    theta0: float = 0.0
    tol: float = DEFAULT_TOL
    n_max: int | None = None
    r_max: int = 8
    eps_schedule: tuple = DEFAULT_EPS_SCHEDULE
    suites: tuple = SUITE_NAMES
    output_format: str = "text"
    output_path: str | None = None

    def __post_init__(self):
        self.k_list = tuple(int(k) for k in self.k_list)
        self.eps_schedule = tuple(float(e) for e in self.eps_schedule)
        self.suites = tuple(self.suites)
        if not self.k_list:
            raise ValueError("k_list must not be empty")
        for k in self.k_list:
            if k < 2:
                raise ValueError(f"every k must be >= 2, got {k}")
            if k > EXTENDED_MAX_K:
                raise ValueError(f"k={k} exceeds the supported maximum {EXTENDED_MAX_K}")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.n_max is not None and self.n_max < max(self.k_list):
            raise ValueError("n_max must be at least the largest k")
        if self.r_max < 1:
            raise ValueError("r_max must be >= 1")
        if not self.eps_schedule or any(not 0 < e <= 0.1 for e in self.eps_schedule):
            raise ValueError("eps values must lie in (0, 0.1]")
        if any(b >= a for a, b in zip(self.eps_schedule, self.eps_schedule[1:])):
            raise ValueError("eps schedule must be strictly decreasing")
        bad = [s for s in self.suites if s not in SUITE_NAMES]
        if bad:
            raise ValueError(f"unknown suites {bad}; choose from {SUITE_NAMES}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"output format must be one of {OUTPUT_FORMATS}")

    def to_dict(self) -> dict:
        return {
            "k_list": list(self.k_list),
            "theta0": self.theta0,
            "tol": self.tol,
            "n_max": self.n_max,
            "r_max": self.r_max,
            "eps_schedule": list(self.eps_schedule),
            "suites": list(self.suites),
            "output_format": self.output_format,
            "output_path": self.output_path,
        }


# -- per-module suites --------------------------------------------------------

def suite_fockrep(params: DeformationParams, cfg: RunConfig) -> list[CheckEntry]:
    rep = build_rep(params)
    report = verify_defining_relations(rep)
    report.extend(verify_derived_relations(rep))
    adjoint_res = max(
        rel_residual(rep.a_plus_dag, rep.a_plus.conj().T),
        rel_residual(rep.a_minus_dag, rep.a_minus.conj().T),
    )
    report.add("Eq.19", params.k, adjoint_res, params.tol)
    return report.entries


def suite_grassmann(params: DeformationParams, cfg: RunConfig) -> list[CheckEntry]:
    k = params.k
    tol = params.tol
    report = VerificationReport()
    z = gr.z_var(params)
    zb = gr.zbar_var(params)
    monomials = [
        gr.GrassmannElement.monomial(params, a, b)
        for a in range(k)
        for b in range(k)
    ]

    report.add("Eq.21", k, 0.0 if ((z ** (k - 1)) * z).is_zero() else 1.0, tol)
    report.add("Eq.22", k, 0.0 if ((zb ** (k - 1)) * zb).is_zero() else 1.0, tol)

    worst = max(
        gr.element_residual(
            gr.d_z(z**n),
            gr.GrassmannElement.monomial(params, n - 1, 0, qnum(n, params.q)),
        )
        for n in range(1, k)
    )
    report.add("Eq.25", k, worst, tol)
    worst = max(
        gr.element_residual(
            gr.d_zbar(zb**n),
            gr.GrassmannElement.monomial(params, 0, n - 1, qnum(n, params.q_bar)),
        )
        for n in range(1, k)
    )
    report.add("Eq.26", k, worst, tol)

    report.add(
        "Eq.35", k,
        gr.element_residual(zb * z, params.q_half_pow(-1) * (z * zb)), tol,
    )

    worst = max(
        gr.element_residual(
            gr.d_z(gr.d_zbar(mono)),
            params.q_half_pow(-1) * gr.d_zbar(gr.d_z(mono)),
        )
        for mono in monomials
    )
    report.add("Eq.36", k, worst, tol)

    for tag, deriv in (("Eq.31", gr.d_z), ("Eq.32", gr.d_zbar)):
        worst = 0.0
        for mono in monomials:
            out = mono
            for _ in range(k):
                out = deriv(out)
            if not out.is_zero():
                worst = max(worst, max(abs(c) for c in out.coeffs.values()))
        report.add(tag, k, worst, tol)

    for n in range(k):
        report.extend(gr.reorder_identity_check(n, params))

    worst_low = max(
        (
            max(
                abs(gr.berezin_z(z**p_).coeff(0, 0)),
                abs(gr.berezin_zbar(zb**p_).coeff(0, 0)),
            )
            for p_ in range(k - 1)
        ),
        default=0.0,
    )
    report.add("Eq.50a", k, worst_low, tol)
    top = max(
        abs(gr.berezin_z(z ** (k - 1)).coeff(0, 0) - 1),
        abs(gr.berezin_zbar(zb ** (k - 1)).coeff(0, 0) - 1),
    )
    report.add("Eq.50b", k, top, tol)

    rep = build_rep(params)
    report.add(
        "Eq.33", k,
        max(
            rel_residual(gr.realization_matrix("z", params), rep.a_plus),
            rel_residual(gr.realization_matrix("d_z", params), rep.a_minus),
        ),
        tol,
    )
    report.add(
        "Eq.34", k,
        max(
            rel_residual(gr.realization_matrix("zbar", params), rep.a_minus_dag),
            rel_residual(gr.realization_matrix("d_zbar", params), rep.a_plus_dag),
        ),
        tol,
    )

    rng = np.random.default_rng(20240 + k)
    worst = 0.0
    for _ in range(5):
        trio = []
        for _ in range(3):
            coeffs = {
                (a, b): complex(rng.standard_normal(), rng.standard_normal())
                for a in range(k)
                for b in range(k)
            }
            trio.append(gr.GrassmannElement(params, coeffs))
        x, y, w = trio
        worst = max(worst, gr.element_residual((x * y) * w, x * (y * w)))
    report.add("prop.assoc", k, worst, max(tol, 1e-10), {"trials": 5})
    return report.entries


def suite_coherent(params: DeformationParams, cfg: RunConfig) -> list[CheckEntry]:
    k = params.k
    rep = build_rep(params)
    report = VerificationReport()
    report.extend(coh.eigenstate_check(rep, coh.coherent_ket(params), "z"))
    report.extend(coh.eigenstate_check(rep, coh.coherent_ket_bar(params), "zbar"))
    report.extend(coh.scalar_product_check(params))
    report.extend(coh.overcompleteness_check(params))
    report.extend(coh.coherence_check(params))
    for r in (1, 2, 3):
        for s in (0, 1):
            if s < k:
                report.extend(coh.limit_ratios(r, s, cfg.eps_schedule, params))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        state = coh.supercoherent_limit(SUPERCOHERENT_ALPHA, cfg.r_max, params)
    singular = np.linalg.svd(state.grid, compute_uv=False)
    rank_one = float(singular[1] / singular[0]) if len(singular) > 1 else 0.0
    report.add("Eq.69", k, rank_one, params.tol, {"r_max": cfg.r_max})
    report.add(
        "Eq.63", k, 0.0, params.tol, {"levels": (cfg.r_max + 1) * k},
        detail="level regrouping bijection verified during construction",
    )
    levelwise = np.array(
        [
            [
                state.alpha**r / math.sqrt(math.factorial(r))
                / qfactorial_sqrt(s, params.q)
                for s in range(k)
            ]
            for r in range(cfg.r_max + 1)
        ]
    )
    report.add("Eq.67", k, rel_residual(state.grid, levelwise), params.tol)

    # radial oracle for the grid entries: at a base slightly off the circle,
    # the squared truncated coefficients must already sit close to the grid
    n_max = cfg.n_max if cfg.n_max is not None else 3 * k
    max_r = n_max // k - 1
    if max_r >= 1:
        eps = 1e-4
        big_q = params.q * (1 - eps)
        worst = 0.0
        for r in range(1, min(2, max_r) + 1):
            for s in range(k):
                squared = (
                    state.alpha ** (2 * r)
                    * qfactorial(k, big_q) ** r
                    * qfactorial(s, big_q)
                    / qfactorial(r * k + s, big_q)
                )
                entry = state.grid[r, s] * qfactorial_sqrt(s, params.q)
                worst = max(worst, rel_residual(squared, entry**2))
        report.add(
            "Eq.65", k, worst, 1e-2,
            {"eps": repr(eps), "n_max": n_max},
            detail="squared-coefficient comparison at one radial offset",
        )
    return report.entries


def suite_phase(params: DeformationParams, cfg: RunConfig) -> list[CheckEntry]:
    k = params.k
    tol = params.tol
    pcfg = PhaseConfig(k, cfg.theta0)
    basis = phase_states(pcfg)
    report = VerificationReport()
    eye = np.eye(k)

    gram = basis.vectors.conj() @ basis.vectors.T
    report.add("Eq.70", k, rel_residual(gram, eye), tol)

    rebuilt = np.zeros((k, k), dtype=complex)
    for n in range(k):
        for m in range(k):
            rebuilt[:, n] += (
                np.exp(-1j * n * basis.thetas[m]) / math.sqrt(k) * basis.vectors[m]
            )
    report.add("Eq.73", k, rel_residual(rebuilt, eye), tol)

    phi = phase_operator(basis)
    herm = rel_residual(phi, phi.conj().T)
    spectrum = rel_residual(np.sort(np.linalg.eigvalsh(phi)), np.sort(basis.thetas))
    report.add("Eq.74", k, max(herm, spectrum), tol)

    for sign, shift_tag, action_tag, omega in (
        (+1, "Eq.79", "Eq.76", pcfg.omega_plus),
        (-1, "Eq.80", "Eq.77", pcfg.omega_minus),
    ):
        spectral, shift = _exp_phase_both(basis, pcfg, sign)
        report.add(shift_tag, k, rel_residual(spectral, shift), tol)
        action = np.zeros((k, k), dtype=complex)
        if sign > 0:
            for n in range(1, k):
                action[n - 1, n] = 1.0
            action[k - 1, 0] = omega
        else:
            for n in range(k - 1):
                action[n + 1, n] = 1.0
            action[0, k - 1] = omega
        report.add(action_tag, k, rel_residual(shift, action), tol)
        op = exp_phase(basis, pcfg, sign)
        report.extend(
            periodicity_check(op, k, omega, tol, "Eq.81", {"sign": "+" if sign > 0 else "-"})
        )

    rep = build_rep(params)
    report.extend(quon_phase_check(rep, pcfg))
    return report.entries


def _t_table(pair, bound: int, conjugate: bool) -> dict:
    gen = t_generator_bar if conjugate else t_generator
    return {
        (n1, n2): gen(pair, (n1, n2))
        for n1 in range(-bound, bound + 1)
        for n2 in range(-bound, bound + 1)
    }


def lattice_sweep_residuals(pair, bound: int = LATTICE_SWEEP_BOUND,
                            conjugate: bool = False):
    """Worst product-law and bracket residuals over |n1|, |n2| <= bound."""
    p = pair.params
    table = _t_table(pair, 2 * bound, conjugate)
    worst_product = 0.0
    worst_bracket = 0.0
    indices = [
        (n1, n2)
        for n1 in range(-bound, bound + 1)
        for n2 in range(-bound, bound + 1)
    ]
    for m in indices:
        t_m = table[m]
        for n in indices:
            t_n = table[n]
            t_sum = table[(m[0] + n[0], m[1] + n[1])]
            prod = t_m @ t_n
            phase = p.q_half_pow(-cross(m, n))
            worst_product = max(worst_product, rel_residual(prod, phase * t_sum))
            bracket = prod - t_n @ t_m
            coeff = -2j * math.sin(math.pi * cross(m, n) / p.k)
            worst_bracket = max(worst_bracket, rel_residual(bracket, coeff * t_sum))
    return worst_product, worst_bracket


def suite_symmetry(params: DeformationParams, cfg: RunConfig) -> list[CheckEntry]:
    k = params.k
    rep = build_rep(params)
    pair = build_pair(rep, PhaseConfig(k, cfg.theta0))
    report = VerificationReport()
    report.extend(exchange_check(pair))
    sweep = {"sweep": f"|n1|,|n2|<={LATTICE_SWEEP_BOUND}"}
    for conjugate, prod_tag, sine_tag in (
        (False, "Eq.93", "Eq.95"),
        (True, "Eq.93*", "Eq.95*"),
    ):
        worst_product, worst_bracket = lattice_sweep_residuals(
            pair, LATTICE_SWEEP_BOUND, conjugate
        )
        report.add(prod_tag, k, worst_product, params.tol, sweep)
        report.add(sine_tag, k, worst_bracket, params.tol, sweep)
    if k == 2:
        try:
            uqsl2_generators(pair)
        except ValueError as exc:
            report.add("Eq.96", k, 0.0, params.tol, detail=str(exc))
        else:
            report.add(
                "Eq.96", k, 1.0, params.tol,
                detail="degenerate order was not rejected",
            )
    else:
        gens = uqsl2_generators(pair)
        report.add(
            "Eq.98", k,
            rel_residual(gens.k_op @ gens.k_inv, np.eye(k)), params.tol,
        )
        report.extend(uqsl2_relations_check(gens))
    return report.entries


_SUITES = {
    "fockrep": suite_fockrep,
    "grassmann": suite_grassmann,
    "coherent": suite_coherent,
    "phase": suite_phase,
    "symmetry": suite_symmetry,
}


def run_suites(cfg: RunConfig) -> VerificationReport:
    """Run every selected suite for every k, trapping conditioning failures."""
    report = VerificationReport()
    for k in cfg.k_list:
        tol = cfg.tol if k <= DEFAULT_MAX_K else max(cfg.tol, EXTENDED_TOL)
        params = DeformationParams(k, tol)
        for name in SUITE_NAMES:
            if name not in cfg.suites:
                continue
            try:
                report.entries.extend(_SUITES[name](params, cfg))
            except Exception as exc:  # conditioning guard: record and continue
                report.entries.append(
                    make_entry(
                        "run.conditioning", k, float("inf"), tol,
                        {"suite": name}, detail=f"conditioning: {exc}",
                    )
                )
    return report


# -- serialization --------------------------------------------------------------

def _fmt17(x: float) -> str:
    return format(x, ".17g")


def report_to_dict(cfg: RunConfig, report: VerificationReport) -> dict:
    return {
        "config": cfg.to_dict(),
        "entries": [
            {
                "equation_tag": e.equation_tag,
                "k": e.k,
                "params": e.params,
                "residual": e.residual,
                "tol": e.tol,
                "passed": e.passed,
                "detail": e.detail,
            }
            for e in report.entries
        ],
        "summary": report.summary(),
    }


def report_to_json(cfg: RunConfig, report: VerificationReport) -> str:
    return json.dumps(report_to_dict(cfg, report), indent=2) + "\n"


def report_to_text(cfg: RunConfig, report: VerificationReport) -> str:
    lines = []
    for e in report.entries:
        extras = " ".join(f"{a}={b}" for a, b in e.params.items())
        mark = "PASS" if e.passed else "FAIL"
        line = (
            f"[{mark}] {e.equation_tag:<8s} k={e.k:<3d} "
            f"residual={e.residual:.3e} tol={e.tol:.1e}"
        )
        if extras:
            line += f"  ({extras})"
        lines.append(line)
    s = report.summary()
    lines.append(f"summary: {s['passed']}/{s['total']} checks passed, {s['failed']} failed")
    return "\n".join(lines) + "\n"


def report_to_csv(report: VerificationReport) -> str:
    lines = ["k,equation_tag,params,residual,tol,passed"]
    for e in sorted(
        report.entries,
        key=lambda e: (e.k, e.equation_tag, sorted(e.params.items())),
    ):
        extras = ";".join(f"{a}={b}" for a, b in sorted(e.params.items()))
        lines.append(
            f"{e.k},{e.equation_tag},{extras},{_fmt17(e.residual)},"
            f"{_fmt17(e.tol)},{str(e.passed).lower()}"
        )
    return "\n".join(lines) + "\n"


def render_report(cfg: RunConfig, report: VerificationReport) -> str:
    if cfg.output_format == "json":
        return report_to_json(cfg, report)
    if cfg.output_format == "csv":
        return report_to_csv(report)
    return report_to_text(cfg, report)


# -- tables ----------------------------------------------------------------------

def coherence_table(cfg: RunConfig) -> str:
    lines = ["k,m,re,im,abs,expected"]
    for k in cfg.k_list:
        params = DeformationParams(k, cfg.tol)
        for m in range(1, k + 1):
            g = coh.coherence_factor(m, params)
            expected = 1.0 if m <= k - 1 else 0.0
            lines.append(
                f"{k},{m},{_fmt17(g.real)},{_fmt17(g.imag)},"
                f"{_fmt17(abs(g))},{_fmt17(expected)}"
            )
    return "\n".join(lines) + "\n"


def limits_table(cfg: RunConfig) -> str:
    lines = ["k,kind,r,s,eps,ratio_re,ratio_im,expected,abs_err"]
    for k in cfg.k_list:
        params = DeformationParams(k, cfg.tol)
        for r in (1, 2, 3):
            for s in sorted({1, k - 1}):
                for eps in cfg.eps_schedule:
                    big_q = params.q * (1 - eps)
                    ratio = qnum(k, big_q) / qnum(r * k, big_q)
                    expected = 1.0 / r
                    lines.append(
                        f"{k},block,{r},{s},{_fmt17(eps)},{_fmt17(ratio.real)},"
                        f"{_fmt17(ratio.imag)},{_fmt17(expected)},"
                        f"{_fmt17(abs(ratio - expected))}"
                    )
                    ratio = qnum(s, big_q) / qnum(r * k + s, big_q)
                    lines.append(
                        f"{k},offset,{r},{s},{_fmt17(eps)},{_fmt17(ratio.real)},"
                        f"{_fmt17(ratio.imag)},{_fmt17(1.0)},"
                        f"{_fmt17(abs(ratio - 1.0))}"
                    )
    return "\n".join(lines) + "\n"


def residuals_table(cfg: RunConfig) -> str:
    return report_to_csv(run_suites(cfg))


TABLE_BUILDERS = {
    "coherence": coherence_table,
    "limits": limits_table,
    "residuals": residuals_table,
}


# -- matrix export ----------------------------------------------------------------

def _matrix_to_json(mat: np.ndarray) -> list:
    return [[[float(v.real), float(v.imag)] for v in row] for row in np.asarray(mat, dtype=complex)]


def export_matrices_payload(k: int, theta0: float, tol: float = DEFAULT_TOL) -> dict:
    """All constructed operators for one order, as nested [re, im] lists."""
    params = DeformationParams(k, tol)
    rep = build_rep(params)
    pcfg = PhaseConfig(k, theta0)
    basis = phase_states(pcfg)
    pair = build_pair(rep, pcfg)
    operators = {
        "a_minus": rep.a_minus,
        "a_plus": rep.a_plus,
        "a_plus_dag": rep.a_plus_dag,
        "a_minus_dag": rep.a_minus_dag,
        "number_op": rep.number_op,
        "phase_operator": phase_operator(basis),
        "exp_phase_plus": exp_phase(basis, pcfg, +1),
        "exp_phase_minus": exp_phase(basis, pcfg, -1),
        "quon_phase_plus": quon_phase(rep, pcfg, +1),
        "quon_phase_minus": quon_phase(rep, pcfg, -1),
        "U": pair.U,
        "V": pair.V,
        "X": pair.X,
        "Y": pair.Y,
        "realization_z": gr.realization_matrix("z", params),
        "realization_d_z": gr.realization_matrix("d_z", params),
        "realization_zbar": gr.realization_matrix("zbar", params),
        "realization_d_zbar": gr.realization_matrix("d_zbar", params),
    }
    return {
        "k": k,
        "theta0": theta0,
        "format": "rows of [re, im] pairs",
        "operators": {name: _matrix_to_json(mat) for name, mat in sorted(operators.items())},
    }


# -- CLI ---------------------------------------------------------------------------

def _parse_k_list(text: str) -> tuple:
    out = []
    for piece in text.split(","):
        piece = piece.strip()
        if ".." in piece:
            lo, hi = piece.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif piece:
            out.append(int(piece))
    return tuple(out)


def _resolve_out(path: str | None, default_name: str) -> str:
    base = os.environ.get(OUTPUT_DIR_ENV, "")
    if path is None:
        return os.path.join(base, default_name) if base else default_name
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _config_from_args(args) -> RunConfig:
    return RunConfig(
        k_list=_parse_k_list(args.k),
        theta0=args.theta0,
        tol=args.tol,
        eps_schedule=tuple(float(e) for e in args.eps.split(",")) if args.eps else DEFAULT_EPS_SCHEDULE,
        r_max=args.r_max,
        suites=tuple(args.suite.split(",")) if args.suite else SUITE_NAMES,
        output_format=args.format,
        output_path=args.out,
    )


def _add_common_options(parser):
    parser.add_argument("--k", default="2,3,4,5,6,7,8",
                        help="comma list of orders; ranges like 2..8 allowed")
    parser.add_argument("--theta0", type=float, default=0.0,
                        help="reference angle in radians")
    parser.add_argument("--tol", type=float, default=DEFAULT_TOL,
                        help="relative residual tolerance")
    parser.add_argument("--eps", default=None,
                        help="comma list of radial offsets, strictly decreasing")
    parser.add_argument("--r-max", type=int, default=8, dest="r_max",
                        help="bosonic truncation for the factorized limit state")
    parser.add_argument("--suite", default=None,
                        help=f"comma subset of {','.join(SUITE_NAMES)}")
    parser.add_argument("--out", default=None, help="output file path")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="kfermion",
        description="Verify the identities of the root-of-unity ladder algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run the verification suites")
    _add_common_options(p_verify)
    p_verify.add_argument("--format", choices=OUTPUT_FORMATS, default="text")

    p_table = sub.add_parser("table", help="emit a CSV table")
    p_table.add_argument("kind", choices=sorted(TABLE_BUILDERS))
    _add_common_options(p_table)
    p_table.add_argument("--format", choices=OUTPUT_FORMATS, default="csv",
                         help=argparse.SUPPRESS)

    p_export = sub.add_parser("export-matrices", help="dump all operators as JSON")
    p_export.add_argument("--k", type=int, required=True)
    p_export.add_argument("--theta0", type=float, default=0.0)
    p_export.add_argument("--out", required=True)

    args = parser.parse_args(argv)

    if args.command == "export-matrices":
        if args.k < 2 or args.k > EXTENDED_MAX_K:
            print(f"error: k must be in 2..{EXTENDED_MAX_K}", file=sys.stderr)
            return 2
        payload = export_matrices_payload(args.k, args.theta0)
        out = _resolve_out(args.out, f"matrices_k{args.k}.json")
        try:
            with open(out, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, indent=2, sort_keys=True)
                fh.write("\n")
        except OSError as exc:
            print(f"error: cannot write {out}: {exc}", file=sys.stderr)
            return 2
        print(f"wrote {out}")
        return 0

    try:
        cfg = _config_from_args(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.command == "table":
        try:
            text = TABLE_BUILDERS[args.kind](cfg)
        except Exception as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        out = _resolve_out(cfg.output_path, f"{args.kind}.csv")
        try:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {out}: {exc}", file=sys.stderr)
            return 2
        print(f"wrote {out}")
        return 0

    report = run_suites(cfg)
    rendered = render_report(cfg, report)
    if cfg.output_path:
        out = _resolve_out(cfg.output_path, "report.txt")
        try:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(rendered)
        except OSError as exc:
            print(f"error: cannot write {out}: {exc}", file=sys.stderr)
            return 2
        print(f"wrote {out}")
    else:
        sys.stdout.write(rendered)
    return 0 if report.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
