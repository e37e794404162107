import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcverify.constants import (bochner_coefficient_check, hessian_estimate_check,
                                lichnerowicz_bound, p_max, qc_constants, rtu_coefficients)
from qcverify.rational import QQ


def test_values_at_two():
    k = qc_constants(2)
    assert k.c == QQ(1, 7)
    assert k.alpha_n == QQ(26, 5)
    assert k.beta_n == QQ(51, 5)
    assert k.cn_sq == QQ(3, 2)
    assert k.p_max_radicand == 77
    assert abs(k.p_max - 3.0289) < 1e-4
    assert abs(k.p_max - (2 + (2 + 2 * math.sqrt(77)) / 19)) < 1e-12


@pytest.mark.parametrize("n", [1, 0])
def test_rejects_small_n(n):
    with pytest.raises(ValueError):
        qc_constants(n)
    with pytest.raises(ValueError):
        bochner_coefficient_check(n)


@pytest.mark.parametrize("n", range(2, 11))
def test_lichnerowicz_sharp(n):
    assert lichnerowicz_bound(n, 4 * (n + 2)) == 4 * n


def test_lichnerowicz_examples():
    assert lichnerowicz_bound(2, 16) == 8
    assert lichnerowicz_bound(3, 1) == QQ(3, 5)
    with pytest.raises(ValueError):
        lichnerowicz_bound(2, 0)


@given(st.integers(2, 200))
def test_reciprocal_constants(n):
    k = qc_constants(n)
    assert k.cn_sq * k.hess_coeff == 1
    assert hessian_estimate_check(n)


def test_p_max_limit():
    assert all(p_max(n) > 2 for n in (2, 10, 1000, 10**6))
    # (n + n sqrt(16n^2 + ...)) / (4n^2 + ...) tends to 1, so p_max tends to 3
    assert abs(p_max(10**6) - 3) < 1e-5


@pytest.mark.parametrize("n", range(2, 11))
def test_first_three_identities(n):
    r = bochner_coefficient_check(n)
    assert r.identity_passed(1) and r.identity_passed(2) and r.identity_passed(3)


@pytest.mark.parametrize("n", range(2, 11))
def test_repackaging_ric_and_t0(n):
    r = bochner_coefficient_check(n)
    by_name = {c.name: c for c in r.checks}
    assert by_name["Ric coefficient"].passed
    assert by_name["T0 coefficient"].passed
    assert by_name["eigenvalue reduction"].passed


@pytest.mark.parametrize("n", range(2, 11))
def test_u_coefficient_is_twice_stated_beta(n):
    r = bochner_coefficient_check(n)
    assert r.notes["beta_from_substitution"] == 2 * r.notes["beta_stated"]
    assert r.notes["beta_stated"] == r.notes["beta_alternate_form"]
    assert not r.identity_passed(4)


def test_perturbed_c_breaks_first_identity():
    r = bochner_coefficient_check(2, c=QQ(2, 7))
    assert not r.identity_passed(1)


def test_rtu_ric_factor():
    n = 2
    assert rtu_coefficients(n)["Ric"] == QQ(2 * (n - 1) * (2 * n + 1), (4 * n - 1) * (n + 2))
