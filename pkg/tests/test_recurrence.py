"""The backbone map phi(t) = alpha + gamma/t and its orbit taxonomy."""

import pytest

from deflap.recurrence import classify_orbit, phi, recurrence_params
from deflap.scalar import DomainError, PrecisionContext

CTX = PrecisionContext(50)


def _params(s_text, lam_text):
    return recurrence_params(CTX.scalar(s_text), CTX.scalar(lam_text))


def test_adapted_examples():
    assert _params("0.17", "1.5").adapted
    assert not _params("0.3", "1.5").adapted
    # boundary: lam exactly (1+|s|)^2 is not adapted
    assert not _params("0.5", "2.25").adapted
    assert _params("1", "4.382975768").adapted


def test_rejects_lambda_at_or_below_one():
    with pytest.raises(DomainError):
        _params("0.3", "1")
    with pytest.raises(DomainError):
        _params("0.3", "0.7")


def test_fixed_point_residuals():
    tol = CTX.power_of_ten(-45)
    for s_text, lam_text in (("0.17", "1.5"), ("0.3359489", "5.4"), ("1", "4.382975768")):
        p = _params(s_text, lam_text)
        assert abs(phi(p, p.theta) - p.theta) < tol
        assert abs(phi(p, p.theta_prime) - p.theta_prime) < tol


def test_fixed_point_algebra():
    p = _params("0.17", "1.5")
    tol = CTX.power_of_ten(-45)
    # product of the roots of t^2 - alpha t - gamma
    assert abs(p.theta * p.theta_prime - p.s * p.s) < tol
    assert p.theta < p.theta_prime
    assert p.theta_prime < 0
    assert 1 - p.lam < p.theta
    assert p.theta_prime < p.c1
    assert p.c1 < 0
    # delta is the per-leaf increment s^2 lam/(lam - 1)
    s2 = p.s * p.s
    assert abs(p.delta - s2 * p.lam / (p.lam - 1)) < tol


def test_unit_s_fixed_points_multiply_to_one():
    p = _params("1", "4.382975768")
    assert abs(p.theta * p.theta_prime - 1) < CTX.power_of_ten(-45)


def test_sign_of_s_is_irrelevant():
    a = _params("0.17", "1.5")
    b = _params("-0.17", "1.5")
    assert a.theta == b.theta
    assert a.theta_prime == b.theta_prime
    assert a.delta == b.delta


def test_not_adapted_has_no_fixed_points():
    p = _params("0.3", "1.5")
    assert p.theta is None and p.theta_prime is None and p.c1 is None
    with pytest.raises(DomainError):
        classify_orbit(p, CTX.scalar("-0.5"), 10)


def test_phi_pole():
    p = _params("0.17", "1.5")
    with pytest.raises(DomainError):
        phi(p, CTX.scalar(0))


def test_orbit_stays_at_fixed_points():
    p = _params("0.17", "1.5")
    assert classify_orbit(p, p.theta, 20).behavior == "stays-at-theta"
    assert classify_orbit(p, p.theta_prime, 20).behavior == "stays-at-theta-prime"


def test_orbit_null_set_hits_zero():
    p = _params("0.17", "1.5")
    rep = classify_orbit(p, p.c1, 20)
    assert rep.behavior == "hits-zero"
    assert rep.limit is None


def test_orbit_from_one_minus_lambda_increases():
    p = _params("0.17", "1.5")
    rep = classify_orbit(p, 1 - p.lam, 400)
    assert rep.behavior == "increases-to-theta"
    assert rep.converged
    assert abs(rep.steps[-1] - p.theta) < CTX.power_of_ten(-40)
    values = rep.steps
    assert all(a < b for a, b in zip(values, values[1:]))


def test_orbit_between_fixed_points_decreases():
    p = _params("0.17", "1.5")
    start = (p.theta + p.theta_prime).halved()
    rep = classify_orbit(p, start, 400)
    assert rep.behavior == "decreases-to-theta"
    assert rep.converged
    values = rep.steps
    assert all(a > b for a, b in zip(values, values[1:]))


def test_orbit_above_null_point_escapes_then_returns():
    p = _params("0.17", "1.5")
    start = p.c1.halved()  # inside (c1, 0), above the null set
    rep = classify_orbit(p, start, 400)
    assert rep.behavior == "crosses-positive-then-increases-to-theta"
    assert rep.escape_step is not None
    assert rep.steps[rep.escape_step].sign() > 0
    assert rep.converged


def test_orbit_classification_is_even_in_s():
    a = _params("0.17", "1.5")
    b = _params("-0.17", "1.5")
    x1 = CTX.scalar("-0.3")
    ra = classify_orbit(a, x1, 100)
    rb = classify_orbit(b, x1, 100)
    assert ra.behavior == rb.behavior
    assert ra.steps == rb.steps
