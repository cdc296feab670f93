import math

import numpy as np
import pytest

from bohrlab import family, majorant
from bohrlab.errors import ParameterError, TailDivergenceError
from bohrlab.majorant import (
    DomainSpec,
    per_degree_l2,
    powered_majorant_ball,
    powered_majorant_polydisk,
    torus_sup_lower_bound,
)
from oracles import grid_oracle_ball, random_sparse_family

Z_ONLY = family.explicit(1, {(1,): 1.0})


def test_polydisk_single_variable():
    for p in [0.5, 1.0, 2.0]:
        for r in [0.0, 0.3, 0.9]:
            assert powered_majorant_polydisk(Z_ONLY, p, r).value == pytest.approx(r**p)


def test_polydisk_extremal_g_crosses_one_at_radius():
    from bohrlab.radius import exact_h2_radius

    for n, p in [(1, 1.0), (2, 1.0), (5, 0.5)]:
        g = family.extremal_g(n, p)
        r0 = exact_h2_radius(n, p)
        assert powered_majorant_polydisk(g, p, r0).value == pytest.approx(1.0, abs=1e-10)


def test_polydisk_moebius_closed_form():
    # (1 - a^2) r / (1 - a r) = 1 at r = 4/5 for a = 1/2
    val = powered_majorant_polydisk(family.moebius(0.5), 1.0, 0.8).value
    assert val == pytest.approx(1.0, abs=1e-12)


def test_polydisk_monotone_in_r():
    f = family.explicit(2, {(1, 0): 0.4, (1, 1): 0.7})
    values = [powered_majorant_polydisk(f, 1.0, r).value for r in np.linspace(0, 0.95, 30)]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_tail_divergence():
    with pytest.raises(TailDivergenceError):
        family.geometric_block_total(2, 1.0)


def test_ball_single_monomial_amgm():
    f = family.explicit(2, {(1, 1): 1.0})
    res = powered_majorant_ball(f, 1.0, 2.0, 0.999999)
    assert res.value == pytest.approx(0.5 * 0.999999**2, rel=1e-9)
    assert res.maximizer[0] == pytest.approx(res.maximizer[1])


def test_ball_degree_one_equal_coordinates():
    f = family.explicit(3, {(1, 0, 0): 1.0, (0, 1, 0): 1.0, (0, 0, 1): 1.0})
    for r in [0.2, 0.7]:
        res = powered_majorant_ball(f, 1.0, 2.0, r)
        assert res.value == pytest.approx(math.sqrt(3) * r, rel=1e-12)
        assert res.exactness == "exact"


def test_ball_degree_one_vertex_when_p_at_least_t():
    f = family.explicit(2, {(1, 0): 0.5, (0, 1): 0.8})
    res = powered_majorant_ball(f, 2.0, 2.0, 0.5)
    # convex case: all the budget goes to the larger coefficient
    assert res.value == pytest.approx(0.8**2 * 0.5**2, rel=1e-12)


def test_ball_random_against_grid_oracle():
    rng = np.random.default_rng(20240819)
    for _ in range(50):
        n = int(rng.integers(1, 4))
        f = random_sparse_family(rng, n, int(rng.integers(1, 5)), int(rng.integers(2, 7)))
        t = float(rng.choice([1.0, 1.5, 2.0, 3.0]))
        p = float(rng.choice([0.5, 1.0, 1.5]))
        r = float(rng.uniform(0.3, 0.9))
        got = powered_majorant_ball(f, p, t, r).value
        want = grid_oracle_ball(f, p, t, r)
        assert got == pytest.approx(want, rel=1e-4)


def test_ball_maximizer_is_feasible_and_attains_value():
    rng = np.random.default_rng(7)
    for _ in range(10):
        n = int(rng.integers(2, 4))
        f = random_sparse_family(rng, n, 3, 5)
        t = float(rng.choice([1.5, 2.0]))
        r = 0.6
        res = powered_majorant_ball(f, 1.0, t, r)
        z = np.array(res.maximizer)
        assert float(np.sum(z**t)) <= r**t + 1e-12
        attained = sum(
            v * np.prod(z ** np.array(a)) for a, v in f.entries.items() if sum(a) >= 1
        )
        assert attained == pytest.approx(res.value, abs=1e-10)


def test_ball_below_polydisk():
    rng = np.random.default_rng(11)
    for _ in range(20):
        n = int(rng.integers(1, 4))
        f = random_sparse_family(rng, n, 3, 4)
        t = float(rng.choice([1.0, 2.0, 4.0]))
        r = float(rng.uniform(0.2, 0.9))
        ball = powered_majorant_ball(f, 1.0, t, r).value
        poly = powered_majorant_polydisk(f, 1.0, r).value
        assert ball <= poly + 1e-10


def test_ball_deterministic_in_seed():
    f = family.explicit(2, {(2, 1): 0.8, (1, 0): 0.3, (0, 2): 0.5})
    a = powered_majorant_ball(f, 1.0, 2.0, 0.7, seed=3)
    b = powered_majorant_ball(f, 1.0, 2.0, 0.7, seed=3)
    assert a.value == b.value and a.maximizer == b.maximizer


def test_torus_sampling_single_variable():
    val = torus_sup_lower_bound({(1,): 1.0 + 0j}, 1, samples=1000, seed=0)
    assert 0.999 < val <= 1.0 + 1e-12


def test_torus_sampling_moebius_inner():
    coeffs = family.moebius_signed_coefficients(0.5)
    val = torus_sup_lower_bound(coeffs, 1, samples=10_000, seed=1)
    assert val <= 1.0 + 1e-12
    assert val > 0.99


def test_torus_sampling_zero_family():
    assert torus_sup_lower_bound({}, 2, samples=10, seed=0) == 0.0


def test_torus_sampling_ball_boundary_feasible():
    # degree-1 sum on the l_2 sphere is bounded by sqrt(n)
    coeffs = {(1, 0): 1.0 + 0j, (0, 1): 1.0 + 0j}
    val = torus_sup_lower_bound(coeffs, 2, samples=5000, seed=2, domain=DomainSpec.lt_ball(2))
    assert val <= math.sqrt(2) + 1e-9


def test_per_degree_l2():
    assert per_degree_l2(Z_ONLY, 1) == 1.0
    assert per_degree_l2(Z_ONLY, 2) == 0.0
    g = family.extremal_g(2, 1.0)
    v = g.tail.parameter
    assert per_degree_l2(g, 1) == pytest.approx(math.sqrt(2 * v * v))
    m = family.moebius(0.5)
    assert per_degree_l2(m, 3) == pytest.approx((1 - 0.25) * 0.25)


def test_per_degree_blocks_of_unit_norm_family():
    from bohrlab.family import h2_norm

    for f in [family.moebius(0.3), family.extremal_g(3, 1.0)]:
        assert h2_norm(f) <= 1.0 + 1e-12
        for k in range(0, 30):
            assert per_degree_l2(f, k) <= 1.0 + 1e-12


def test_domain_spec_validation():
    with pytest.raises(ParameterError):
        DomainSpec(kind="lt_ball", t=0.5)
    with pytest.raises(ParameterError):
        DomainSpec(kind="weird")
    assert DomainSpec.from_t(math.inf).kind == "polydisk"
    assert DomainSpec.from_t(2.0).t == 2.0
