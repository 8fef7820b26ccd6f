"""Verification toolkit for root-of-unity deformed ladder algebras.

Builds the finite nilpotent representation of the deformed ladder pair, the
matching calculus of nilpotent variables, coherent states and their
resolution of identity, finite phase operators, and the clock/shift lattice
generators, and mechanically checks every identity they satisfy.
"""

from .coherent import (
    GrassmannState,
    QCoherentTruncation,
    SupercoherentState,
    apply_matrix,
    coherence_factor,
    coherence_factor_oracle,
    coherent_bra,
    coherent_bra_bar,
    coherent_ket,
    coherent_ket_bar,
    eigenstate_check,
    limit_ratios,
    measure_mu,
    overcompleteness_check,
    q_coherent_truncation,
    qexp,
    scalar_product,
    scalar_product_check,
    supercoherent_limit,
)
from .fockrep import QuonRep, build_rep, verify_defining_relations, verify_derived_relations
from .grassmann import (
    GrassmannElement,
    berezin_z,
    berezin_zbar,
    d_z,
    d_zbar,
    element_residual,
    realization_matrix,
    reorder_identity_check,
    z_var,
    zbar_var,
)
from .harness import RunConfig, export_matrices_payload, main, run_suites
from .phase import (
    PhaseBasis,
    PhaseConfig,
    exp_phase,
    periodicity_check,
    phase_operator,
    phase_states,
    quon_phase,
    quon_phase_check,
)
from .qcore import (
    DeformationParams,
    conj_qnum_identity_check,
    qfactorial,
    qfactorial_sqrt,
    qnum,
    qnum_polar,
    rel_residual,
)
from .report import CheckEntry, VerificationReport
from .symmetry import (
    SymmetryPair,
    UqSl2Generators,
    build_pair,
    cross,
    exchange_check,
    product_law_check,
    sine_commutator_check,
    t_generator,
    t_generator_bar,
    uqsl2_generators,
    uqsl2_relations_check,
)

__version__ = "0.1.0"
