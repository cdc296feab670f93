"""Coefficient families: the scalar-norm view of f(z) = sum x_alpha z^alpha.

A family stores the norms ||x_alpha|| for |alpha| <= truncation_degree and
optionally an analytic tail covering every higher degree.  Tail kind
"geometric_uniform" puts the value v^k on every multi-index of degree k,
which is exactly the structure of the uniform extremal family, so that
family needs no explicit entries at all.
"""

import json
import math
from dataclasses import dataclass, field

from . import multiindex
from .errors import ParameterError, TailDivergenceError

DEFAULT_TRUNCATION = 64


def stable_half_root_gap(n):
    """1 - 2**(-1/n) without cancellation, via expm1."""
    if n < 1:
        raise ParameterError(f"need n >= 1, got {n}")
    return -math.expm1(-math.log(2.0) / n)


def geometric_block_total(n, s):
    """sum_{k>=1} C(n+k-1,k) s^k = (1-s)^{-n} - 1, for 0 <= s < 1."""
    if not 0.0 <= s < 1.0:
        raise TailDivergenceError(f"geometric block sum needs 0 <= s < 1, got s={s}")
    return math.expm1(-n * math.log1p(-s))


@dataclass(frozen=True)
class AnalyticTail:
    """Per-degree model v^k on every index of degree k, for all k > K."""

    parameter: float
    kind: str = "geometric_uniform"

    def __post_init__(self):
        if self.kind != "geometric_uniform":
            raise ParameterError(f"unknown tail kind: {self.kind}")
        if not 0.0 <= self.parameter < 1.0:
            raise ParameterError(f"tail parameter must be in [0,1), got {self.parameter}")


@dataclass(frozen=True)
class LqVector:
    coordinates: tuple
    q: float

    def __post_init__(self):
        if not (self.q >= 1.0):
            raise ParameterError(f"q must be >= 1, got {self.q}")

    def norm(self):
        return lq_norm(self.coordinates, self.q)


def lq_norm(coordinates, q):
    """The l_q norm of a coordinate vector; q = inf gives the max modulus."""
    if not (q >= 1.0):
        raise ParameterError(f"q must be >= 1, got {q}")
    mods = [abs(c) for c in coordinates]
    if not mods:
        return 0.0
    if math.isinf(q):
        return max(mods)
    return sum(m**q for m in mods) ** (1.0 / q)


@dataclass(frozen=True)
class CoefficientFamily:
    dimension: int
    entries: dict  # multi-index tuple -> nonnegative norm
    truncation_degree: int
    tail: AnalyticTail | None = None
    label: str = ""
    sup_norm_certified: bool = False
    payload: dict | None = None  # optional multi-index -> LqVector witnesses

    def __post_init__(self):
        if self.dimension < 1:
            raise ParameterError(f"dimension must be >= 1, got {self.dimension}")
        if self.truncation_degree < 0:
            raise ParameterError("truncation_degree must be >= 0")
        for alpha, value in self.entries.items():
            multiindex.validate(alpha)
            if len(alpha) != self.dimension:
                raise ParameterError(f"index {alpha} does not match dimension {self.dimension}")
            if sum(alpha) > self.truncation_degree:
                raise ParameterError(
                    f"index {alpha} exceeds truncation degree {self.truncation_degree}"
                )
            if value < 0:
                raise ParameterError(f"entry at {alpha} is negative: {value}")

    def degree_power_sums(self, p):
        """Map k -> sum of ||x_alpha||^p over explicit entries of degree k >= 1."""
        sums = {}
        for alpha, value in self.entries.items():
            k = sum(alpha)
            if k == 0 or value == 0.0:
                continue
            sums[k] = sums.get(k, 0.0) + value**p
        return sums

    def has_degree_mass(self):
        """True if any degree >= 1 coefficient (explicit or tail) is positive."""
        if any(v > 0.0 and sum(a) >= 1 for a, v in self.entries.items()):
            return True
        return self.tail is not None and self.tail.parameter > 0.0


def explicit(dimension, entries, tail=None, label="explicit", certified=False):
    trunc = max([sum(a) for a in entries], default=0)
    return CoefficientFamily(
        dimension=dimension,
        entries=dict(entries),
        truncation_degree=trunc,
        tail=tail,
        label=label,
        sup_norm_certified=certified,
    )


def moebius(a, truncation=4 * DEFAULT_TRUNCATION):
    """Coefficient norms of the disk automorphism (a - z)/(1 - a z).

    c_0 = a and c_k = (1 - a^2) a^(k-1) for k >= 1, sup-norm 1 on the disk.
    The geometric tail model a^k overstates the true coefficients by the
    constant (1 - a^2)/a, so the default truncation is deep enough that the
    surplus is far below solver tolerance even for a near 1.
    """
    if not 0.0 < a < 1.0:
        raise ParameterError(f"moebius needs a in (0,1), got {a}")
    entries = {(0,): a}
    for k in range(1, truncation + 1):
        entries[(k,)] = (1.0 - a * a) * a ** (k - 1)
    return CoefficientFamily(
        dimension=1,
        entries=entries,
        truncation_degree=truncation,
        tail=AnalyticTail(parameter=a),
        label=f"moebius(a={a})",
        sup_norm_certified=True,
    )


def moebius_signed_coefficients(a, truncation=DEFAULT_TRUNCATION):
    """Signed Taylor coefficients of (a - z)/(1 - a z), for sampling checks."""
    if not 0.0 < a < 1.0:
        raise ParameterError(f"moebius needs a in (0,1), got {a}")
    coeffs = {(0,): complex(a)}
    for k in range(1, truncation + 1):
        coeffs[(k,)] = complex(-(1.0 - a * a) * a ** (k - 1))
    return coeffs


def extremal_g(n, p):
    """The uniform family with value v^k on every index of degree k >= 1.

    v = sqrt(1 - 2^(-1/n)); its H^2 norm is exactly 1 and its powered
    majorant crosses 1 exactly at the closed-form radius for exponent p.
    """
    if not 0.0 < p < 2.0:
        raise ParameterError(f"extremal_g needs p in (0,2), got {p}")
    if n < 1:
        raise ParameterError(f"need n >= 1, got {n}")
    v = math.sqrt(stable_half_root_gap(n))
    return CoefficientFamily(
        dimension=n,
        entries={(0,) * n: 0.0},
        truncation_degree=0,
        tail=AnalyticTail(parameter=v),
        label=f"extremal_g(n={n}, p={p})",
    )


def linear_form_scale(n, q, t):
    """sup of ||z||_q over the unit l_t ball: max(1, n^(1/q - 1/t))."""
    inv_q = 0.0 if math.isinf(q) else 1.0 / q
    inv_t = 0.0 if math.isinf(t) else 1.0 / t
    return max(1.0, n ** (inv_q - inv_t))


def linear_form(n, q, t):
    """Degree-1 family for F(z) = sum e_k z_k / M, sup-norm 1 on B(l_t^n).

    Values live in l_q^n; M = linear_form_scale(n, q, t) normalizes.
    """
    if n < 1:
        raise ParameterError(f"need n >= 1, got {n}")
    if not (q >= 1.0) or not (t >= 1.0):
        raise ParameterError(f"need q, t >= 1, got q={q}, t={t}")
    m = linear_form_scale(n, q, t)
    entries = {}
    payload = {}
    for i in range(n):
        e_i = tuple(1 if j == i else 0 for j in range(n))
        entries[e_i] = 1.0 / m
        payload[e_i] = LqVector(
            coordinates=tuple(1.0 / m if j == i else 0.0 for j in range(n)), q=q
        )
    return CoefficientFamily(
        dimension=n,
        entries=entries,
        truncation_degree=1,
        label=f"linear_form(n={n}, q={q}, t={t})",
        sup_norm_certified=True,
        payload=payload,
    )


def normalized_monomial(alpha, t):
    """z^alpha divided by its sup over B(l_t^n); single entry, sup-norm 1."""
    multiindex.validate(alpha)
    k = sum(alpha)
    if k < 1:
        raise ParameterError("normalized monomial needs degree >= 1")
    if not (t >= 1.0):
        raise ParameterError(f"need t >= 1, got t={t}")
    if math.isinf(t):
        value = 1.0  # sup over the polydisk is 1
    else:
        # sup over the ball of |z^alpha| is prod (alpha_i / k)^(alpha_i / t)
        log_sup = sum(a * (math.log(a) - math.log(k)) for a in alpha if a > 0) / t
        value = math.exp(-log_sup)
    return CoefficientFamily(
        dimension=len(alpha),
        entries={tuple(alpha): value},
        truncation_degree=k,
        label=f"monomial(alpha={tuple(alpha)}, t={t})",
        sup_norm_certified=True,
    )


_PRESETS = {
    "moebius": lambda **kw: moebius(kw["a"], kw.get("truncation", DEFAULT_TRUNCATION)),
    "extremal_g": lambda **kw: extremal_g(kw["n"], kw["p"]),
    "linear_form": lambda **kw: linear_form(kw["n"], kw["q"], kw["t"]),
    "monomial": lambda **kw: normalized_monomial(kw["alpha"], kw["t"]),
    "explicit": lambda **kw: explicit(kw["dimension"], kw["entries"]),
}


def build(preset, **params):
    """Construct one of the named presets; see _PRESETS for the parameter sets."""
    if preset not in _PRESETS:
        raise ParameterError(f"unknown preset: {preset}")
    return _PRESETS[preset](**params)


def rescale(f, sigma):
    """The family with entry sigma^alpha * ||x_alpha|| at each alpha.

    A tail survives only a constant sigma (parameter scales by that constant);
    non-constant sigma with a tail present is refused.
    """
    if len(sigma) != f.dimension:
        raise ParameterError(
            f"sigma has length {len(sigma)}, family dimension is {f.dimension}"
        )
    if any(s <= 0 for s in sigma):
        raise ParameterError("sigma entries must be positive")
    constant = all(s == sigma[0] for s in sigma)
    tail = f.tail
    if tail is not None:
        if not constant:
            raise ParameterError("cannot rescale a tailed family by non-constant sigma")
        scaled = sigma[0] * tail.parameter
        if scaled >= 1.0:
            raise ParameterError(f"rescaled tail parameter {scaled} leaves [0,1)")
        tail = AnalyticTail(parameter=scaled)
    entries = {}
    for alpha, value in f.entries.items():
        factor = 1.0
        for s, a in zip(sigma, alpha):
            factor *= s**a
        entries[alpha] = factor * value
    return CoefficientFamily(
        dimension=f.dimension,
        entries=entries,
        truncation_degree=f.truncation_degree,
        tail=tail,
        label=f.label + " (rescaled)",
    )


def h2_norm(f):
    """(sum_alpha ||x_alpha||^2)^(1/2) including degree 0 and the tail."""
    total = sum(v * v for v in f.entries.values())
    if f.tail is not None:
        s = f.tail.parameter**2
        tail_total = geometric_block_total(f.dimension, s)
        for k in range(1, f.truncation_degree + 1):
            tail_total -= multiindex.count(f.dimension, k) * s**k
        total += max(tail_total, 0.0)
    return math.sqrt(total)


def to_json(f):
    doc = {
        "dimension": f.dimension,
        "truncation_degree": f.truncation_degree,
        "entries": [[list(alpha), value] for alpha, value in sorted(f.entries.items())],
        "tail": None
        if f.tail is None
        else {"kind": f.tail.kind, "parameter": f.tail.parameter},
        "label": f.label,
    }
    return json.dumps(doc)


def from_json(text):
    doc = json.loads(text)
    tail = doc.get("tail")
    return CoefficientFamily(
        dimension=doc["dimension"],
        entries={tuple(parts): value for parts, value in doc["entries"]},
        truncation_degree=doc["truncation_degree"],
        tail=None if tail is None else AnalyticTail(parameter=tail["parameter"], kind=tail["kind"]),
        label=doc.get("label", ""),
    )
