"""Radius solvers: monotone bisection on the powered majorant, the exact
H^2 closed form, its defining-equation residual, and the pluriharmonic
radius via the per-index weight (|a|^p + |b|^p)^(1/p)."""

import math
from dataclasses import dataclass

from . import family as fam
from . import majorant as maj
from .errors import ParameterError, TailDivergenceError

DEFAULT_TOL = 1e-10
TOP_RADIUS = 1.0 - 1e-9


@dataclass(frozen=True)
class RadiusResult:
    value: float
    method: str  # closed_form | bisection | saturated_at_one | certified_lower | witness_upper
    residual: float
    bracket: tuple
    evaluations: int = 0

    def to_dict(self):
        return {
            "value": self.value,
            "method": self.method,
            "residual": self.residual,
            "bracket": list(self.bracket),
            "evaluations": self.evaluations,
        }


def bisect_unit_crossing(evaluate, tol=DEFAULT_TOL):
    """Largest r in [0,1] with evaluate(r) <= 1, for nondecreasing evaluate.

    evaluate(r) may raise TailDivergenceError, treated as a value above 1.
    """
    evals = 0

    def safe(r):
        nonlocal evals
        evals += 1
        try:
            return evaluate(r)
        except TailDivergenceError:
            return math.inf

    top = safe(TOP_RADIUS)
    if top <= 1.0:
        return RadiusResult(
            value=1.0,
            method="saturated_at_one",
            residual=0.0,
            bracket=(TOP_RADIUS, 1.0),
            evaluations=evals,
        )
    lo, hi = 0.0, TOP_RADIUS
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if safe(mid) <= 1.0:
            lo = mid
        else:
            hi = mid
    value = 0.5 * (lo + hi)
    residual = abs(safe(value) - 1.0)
    return RadiusResult(
        value=value,
        method="bisection",
        residual=residual,
        bracket=(lo, hi),
        evaluations=evals,
    )


def solve_bohr_radius(f, p, domain, tol=DEFAULT_TOL, seed=0):
    """Per-family radius: the crossing of S_p(f, r, domain) through 1."""
    if not f.has_degree_mass():
        return RadiusResult(1.0, "saturated_at_one", 0.0, (TOP_RADIUS, 1.0), 0)
    return bisect_unit_crossing(
        lambda r: maj.powered_majorant(f, p, domain, r, seed=seed).value, tol=tol
    )


def exact_h2_radius(n, p):
    """(1 - 2^(-1/n))^(1/p - 1/2): the exact norm-1 H^2 class radius, p < 2.

    For p >= 2 the class radius is of order 1 with no exact value; refused.
    """
    if not 0.0 < p < 2.0:
        raise ParameterError(f"exact H^2 radius is defined only for p in (0,2), got {p}")
    if n < 1:
        raise ParameterError(f"need n >= 1, got {n}")
    return fam.stable_half_root_gap(n) ** (1.0 / p - 0.5)


def h2_defining_residual(n, p, r):
    """((1 - r^(2p/(2-p)))^(-n) - 1)^(1-p/2) - 1; zero exactly at the radius."""
    if not 0.0 < p < 2.0:
        raise ParameterError(f"need p in (0,2), got {p}")
    if not 0.0 <= r < 1.0:
        raise ParameterError(f"need r in [0,1), got {r}")
    x = r ** (2.0 * p / (2.0 - p))
    if x >= 1.0:
        raise ParameterError(f"r^(2p/(2-p)) = {x} is outside [0,1)")
    inner = math.expm1(-n * math.log1p(-x))
    return inner ** (1.0 - p / 2.0) - 1.0


@dataclass(frozen=True)
class PluriharmonicFamily:
    holo: fam.CoefficientFamily
    anti: fam.CoefficientFamily

    def __post_init__(self):
        if self.holo.dimension != self.anti.dimension:
            raise ParameterError("holomorphic and anti parts must share the dimension")
        zero = (0,) * self.anti.dimension
        if self.anti.entries.get(zero, 0.0) != 0.0:
            raise ParameterError("anti part must have zero constant term (g(0) = 0)")


def merged_weight_family(pf, p):
    """Entries (|a_alpha|^p + |b_alpha|^p)^(1/p) over the union of indices.

    Requires both parts tail-free; tails are handled by the caller through
    the one-sided polydisk closed forms.
    """
    if pf.holo.tail is not None or pf.anti.tail is not None:
        raise ParameterError("merged family needs tail-free parts")
    keys = set(pf.holo.entries) | set(pf.anti.entries)
    entries = {}
    for alpha in keys:
        a = pf.holo.entries.get(alpha, 0.0)
        b = pf.anti.entries.get(alpha, 0.0)
        entries[alpha] = (a**p + b**p) ** (1.0 / p)
    return fam.explicit(pf.holo.dimension, entries, label="pluriharmonic merge")


def pluriharmonic_radius(pf, p, t, tol=DEFAULT_TOL, seed=0):
    """Largest r with sup sum (|a|^p + |b|^p)|z^alpha|^p <= 1 over r B(l_t^n)."""
    anti_empty = pf.anti.tail is None and not any(
        v > 0.0 for v in pf.anti.entries.values()
    )
    domain = maj.DomainSpec.from_t(t)
    if anti_empty:
        return solve_bohr_radius(pf.holo, p, domain, tol=tol, seed=seed)
    if domain.kind == "polydisk":
        # separable sup: the combined sum splits exactly into the two parts
        def evaluate(r):
            return (
                maj.powered_majorant_polydisk(pf.holo, p, r).value
                + maj.powered_majorant_polydisk(pf.anti, p, r).value
            )

    else:
        merged = merged_weight_family(pf, p)

        def evaluate(r):
            return maj.powered_majorant_ball(merged, p, t, r, seed=seed).value

    if not (pf.holo.has_degree_mass() or pf.anti.has_degree_mass()):
        return RadiusResult(1.0, "saturated_at_one", 0.0, (TOP_RADIUS, 1.0), 0)
    return bisect_unit_crossing(evaluate, tol=tol)
