"""Dimension sweeps, log-log scaling-exponent fits, and the limit-constant
check n^(1/p-1/2) r(n) -> (ln 2)^(1/p-1/2) for the exact H^2 radius."""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError, SweepError
from .radius import exact_h2_radius


@dataclass(frozen=True)
class SweepRecord:
    n: int
    value: float
    generator: str
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class FitResult:
    exponent: float
    constant: float
    model: str  # "power" | "log_power"
    r_squared: float
    window: tuple


def sweep(generator, n_list, label="", params=None):
    """One record per dimension; generator is a callable n -> positive value."""
    ns = sorted(set(int(n) for n in n_list))
    if any(n < 1 for n in ns):
        raise ParameterError("dimensions must be >= 1")
    records = []
    for n in ns:
        try:
            value = float(generator(n))
        except Exception as exc:
            raise SweepError(f"generator failed at n={n}: {exc}", partial=records) from exc
        if value <= 0.0:
            raise SweepError(f"generator returned nonpositive value at n={n}", partial=records)
        records.append(SweepRecord(n=n, value=value, generator=label, params=params or {}))
    return records


def fit_exponent(records, model="power"):
    """Least squares on log(value) against the model's single regressor.

    power: regressor log(n); log_power: regressor log(log(n)/n) (n >= 2).
    """
    if len(records) < 3:
        raise ParameterError(f"need at least 3 records, got {len(records)}")
    ns = np.array([rec.n for rec in records], dtype=float)
    values = np.array([rec.value for rec in records], dtype=float)
    if np.any(values <= 0.0):
        raise ParameterError("all values must be positive")
    if model == "power":
        x = np.log(ns)
    elif model == "log_power":
        if np.any(ns < 2):
            raise ParameterError("log_power model needs n >= 2")
        x = np.log(np.log(ns) / ns)
    else:
        raise ParameterError(f"unknown model: {model}")
    if np.ptp(x) == 0.0:
        raise ParameterError("degenerate design: all dimensions equal")
    y = np.log(values)
    slope, intercept = np.polyfit(x, y, 1)
    residuals = y - (slope * x + intercept)
    ss_res = float(np.sum(residuals**2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else max(0.0, 1.0 - ss_res / ss_tot)
    return FitResult(
        exponent=float(slope),
        constant=float(math.exp(intercept)),
        model=model,
        r_squared=min(r_squared, 1.0),
        window=(int(ns.min()), int(ns.max())),
    )


def h2_limit_check(p, n):
    """lhs = n^(1/p-1/2) r(n, p) against rhs = (ln 2)^(1/p-1/2); returns
    (lhs, rhs, relative error)."""
    beta = 1.0 / p - 0.5
    lhs = n**beta * exact_h2_radius(n, p)
    rhs = math.log(2.0) ** beta
    return lhs, rhs, abs(lhs - rhs) / rhs
