"""Independent oracles for the test suite.

The grid oracle evaluates the ball majorant by dense simplex sampling plus
SLSQP refinement and never touches the multiplicative-update path.
"""

import numpy as np
from scipy.optimize import minimize

from bohrlab import explicit
from bohrlab.multiindex import enumerate_degree


def random_sparse_family(rng, n, max_degree, n_terms, lo=0.1, hi=1.5):
    pool = [a for k in range(1, max_degree + 1) for a in enumerate_degree(n, k)]
    idx = rng.choice(len(pool), size=min(n_terms, len(pool)), replace=False)
    return explicit(n, {pool[i]: float(rng.uniform(lo, hi)) for i in idx})


def grid_oracle_ball(f, p, t, r, grid=400):
    """Max of sum ||x_alpha||^p |z^alpha|^p over the l_t ball of radius r.

    Works in u_i = |z_i|^t simplex coordinates for dimensions up to 3.
    """
    n = f.dimension
    if n > 3:
        raise ValueError("grid oracle covers n <= 3 only")
    terms = sorted((a, v) for a, v in f.entries.items() if sum(a) >= 1 and v > 0)
    if not terms:
        return 0.0
    exponents = np.array([a for a, _ in terms], dtype=float) * (p / t)
    coeffs = np.array([v for _, v in terms]) ** p
    budget = r**t

    if n == 1:
        grid_points = np.array([[budget]])
    elif n == 2:
        u1 = np.linspace(0.0, budget, grid)
        grid_points = np.stack([u1, budget - u1], axis=1)
    else:
        u1, u2 = np.meshgrid(np.linspace(0.0, budget, grid), np.linspace(0.0, budget, grid))
        mask = u1 + u2 <= budget
        grid_points = np.stack([u1[mask], u2[mask], budget - u1[mask] - u2[mask]], axis=1)

    def value(points):
        logs = np.log(np.maximum(points, 1e-300))
        return np.exp(logs @ exponents.T) @ coeffs

    grid_values = value(grid_points)
    best_point = grid_points[int(np.argmax(grid_values))]
    best = float(grid_values.max())

    res = minimize(
        lambda u: -float(value(u[None, :])[0]),
        best_point,
        method="SLSQP",
        bounds=[(0.0, budget)] * n,
        constraints=[{"type": "eq", "fun": lambda u: u.sum() - budget}],
        options={"ftol": 1e-14, "maxiter": 500},
    )
    if res.success:
        best = max(best, -float(res.fun))
    return best
