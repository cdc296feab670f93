import math

import pytest

from bohrlab import family
from bohrlab.bounds import (
    CertificateInput,
    ball_certificate,
    certified_lower_bound,
    coefficient_bound_check,
    sandwich_check,
    witness_upper_linear_form,
)
from bohrlab.errors import NotCertifiedError, ParameterError
from bohrlab.majorant import DomainSpec
from bohrlab.multiindex import enumerate_degree, multinomial_weight
from bohrlab.radius import exact_h2_radius, solve_bohr_radius


def test_closed_form_values():
    got = certified_lower_bound(CertificateInput(1, 1.0, 2.0, 1.0)).value
    assert got == pytest.approx(1.0 / (2.0 * math.sqrt(2.0 * math.e)), abs=1e-12)
    # p = q: the n-independent bound 2^(-1/p)
    for n in [1, 10, 500]:
        got = certified_lower_bound(CertificateInput(n, 1.5, 1.5, 1.0)).value
        assert got == pytest.approx(2.0 ** (-1.0 / 1.5), abs=1e-12)


def test_numeric_geometric_case():
    got = certified_lower_bound(CertificateInput(1, 1.0, 2.0, 1.0), mode="numeric").value
    assert got == pytest.approx(0.5, abs=1e-10)


def test_numeric_dominates_closed_form():
    for n in [1, 5, 50, 1000]:
        for p in [0.5, 1.0, 1.5]:
            for q in [2.0, 3.0]:
                for c in [0.5, 1.0, 2.0]:
                    cert = CertificateInput(n, p, q, c)
                    closed = certified_lower_bound(cert).value
                    numeric = certified_lower_bound(cert, mode="numeric").value
                    assert numeric >= closed - 1e-9, (n, p, q, c)


def test_certificate_monotonicity():
    base = CertificateInput(10, 1.0, 2.0, 1.0)
    for mode in ["closed_form", "numeric"]:
        v = certified_lower_bound(base, mode=mode).value
        assert certified_lower_bound(CertificateInput(20, 1.0, 2.0, 1.0), mode=mode).value <= v + 1e-12
        assert certified_lower_bound(CertificateInput(10, 1.0, 2.0, 2.0), mode=mode).value <= v + 1e-12
        # larger q is a weaker hypothesis, so the certified radius shrinks
        assert certified_lower_bound(CertificateInput(10, 1.0, 3.0, 1.0), mode=mode).value <= v + 1e-12


def test_certificate_below_exact_class_radius():
    for n in range(1, 101):
        for p in [0.5, 1.0, 1.5]:
            exact = exact_h2_radius(n, p)
            cert = CertificateInput(n, p, 2.0, 1.0)
            for mode in ["closed_form", "numeric"]:
                assert certified_lower_bound(cert, mode=mode).value <= exact + 1e-12


def test_certificate_validation():
    with pytest.raises(ParameterError):
        CertificateInput(1, 2.0, 1.0, 1.0)  # p > q
    with pytest.raises(ParameterError):
        certified_lower_bound(CertificateInput(1, 1.0, 2.0, 1.0), mode="weird")


def test_ball_certificate_preset():
    cert = ball_certificate(5, 1.0, 2.0, 1.5)
    assert cert.q == 1.5
    assert cert.C == pytest.approx(math.exp(1.0 / 1.5))


def test_witness_values():
    assert witness_upper_linear_form(4, 1.0, 2.0, math.inf).value == pytest.approx(0.5)
    assert witness_upper_linear_form(7, 1.5, 1.5, 1.5).value == pytest.approx(1.0)
    assert witness_upper_linear_form(9, 1.0, 2.0, 2.0).value == pytest.approx(1.0 / 3.0)


def test_witness_matches_solver_on_built_family():
    for n in [4, 9]:
        for q in [2.0, 3.0]:
            for t in [2.0, math.inf]:
                f = family.linear_form(n, q, t)
                solved = solve_bohr_radius(f, 1.0, DomainSpec.from_t(t), tol=1e-11).value
                witness = witness_upper_linear_form(n, 1.0, q, t).value
                assert solved == pytest.approx(witness, abs=1e-8), (n, q, t)


def test_coefficient_bound_certified_presets():
    ok, worst = coefficient_bound_check(family.moebius(0.5), 2.0)
    assert ok and worst <= 1.0 + 1e-12
    ok, _ = coefficient_bound_check(family.linear_form(4, 2.0, 2.0), 2.0)
    assert ok
    for t in [1.0, 2.0, 3.0]:
        for n in range(1, 5):
            for alpha in enumerate_degree(n, 4):
                ok, _ = coefficient_bound_check(family.normalized_monomial(alpha, t), t)
                assert ok, (alpha, t)


def test_coefficient_bound_violation_detected():
    alpha = (2, 1)
    k = sum(alpha)
    t = 2.0
    bound = math.exp(k / t) * multinomial_weight(alpha) ** (1 / t)
    bad = family.explicit(2, {alpha: 2.0 * bound}, certified=True)
    ok, worst = coefficient_bound_check(bad, t)
    assert not ok
    assert worst == pytest.approx(2.0, rel=1e-12)


def test_uncertified_family_refused():
    with pytest.raises(NotCertifiedError):
        coefficient_bound_check(family.explicit(1, {(1,): 1.0}), 2.0)


def test_sandwich():
    lower = certified_lower_bound(CertificateInput(1, 1.0, 2.0, 1.0))
    from bohrlab.radius import RadiusResult

    upper = RadiusResult(exact_h2_radius(1, 1.0), "closed_form", 0.0, (0, 1))
    assert sandwich_check(lower, upper)
    assert sandwich_check(upper, upper)  # equal values pass
    assert not sandwich_check(upper, lower, dump=None)
    with pytest.raises(ParameterError):
        sandwich_check(lower, upper, lower_config=(1, 1.0), upper_config=(2, 1.0))
