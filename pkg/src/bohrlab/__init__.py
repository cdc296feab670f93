"""bohrlab: powered Bohr radii on polydisks and l_t balls.

Exact closed-form radii, powered-majorant evaluation, per-family bisection
solvers, certified lower/witness upper bounds, and scaling-exponent sweeps.
"""

from .asymptotics import FitResult, SweepRecord, fit_exponent, h2_limit_check, sweep
from .bounds import (
    BoundPair,
    CertificateInput,
    ball_certificate,
    certified_lower_bound,
    coefficient_bound_check,
    sandwich_check,
    witness_upper_linear_form,
)
from .family import (
    AnalyticTail,
    CoefficientFamily,
    LqVector,
    build,
    explicit,
    extremal_g,
    h2_norm,
    linear_form,
    lq_norm,
    moebius,
    normalized_monomial,
    rescale,
)
from .majorant import (
    DomainSpec,
    MajorantValue,
    per_degree_l2,
    powered_majorant,
    powered_majorant_ball,
    powered_majorant_polydisk,
    torus_sup_lower_bound,
)
from .multiindex import (
    count_and_bound,
    enumerate_degree,
    multinomial_identity_residual,
    multinomial_weight,
)
from .radius import (
    PluriharmonicFamily,
    RadiusResult,
    exact_h2_radius,
    h2_defining_residual,
    pluriharmonic_radius,
    solve_bohr_radius,
)

__all__ = [
    "AnalyticTail",
    "BoundPair",
    "CertificateInput",
    "CoefficientFamily",
    "DomainSpec",
    "FitResult",
    "LqVector",
    "MajorantValue",
    "PluriharmonicFamily",
    "RadiusResult",
    "SweepRecord",
    "ball_certificate",
    "build",
    "certified_lower_bound",
    "coefficient_bound_check",
    "count_and_bound",
    "enumerate_degree",
    "exact_h2_radius",
    "explicit",
    "extremal_g",
    "fit_exponent",
    "h2_defining_residual",
    "h2_limit_check",
    "h2_norm",
    "linear_form",
    "lq_norm",
    "moebius",
    "multinomial_identity_residual",
    "multinomial_weight",
    "normalized_monomial",
    "per_degree_l2",
    "pluriharmonic_radius",
    "powered_majorant",
    "powered_majorant_ball",
    "powered_majorant_polydisk",
    "rescale",
    "sandwich_check",
    "solve_bohr_radius",
    "sweep",
    "torus_sup_lower_bound",
    "witness_upper_linear_form",
]
