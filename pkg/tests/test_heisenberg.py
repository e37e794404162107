import dataclasses

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcverify.heisenberg import (REEB_SCALE, build_group_model, check_bochner_pointwise,
                                 check_ricci_identities, check_trace_identity,
                                 frame_structure_selfcheck, grad_norm2, horizontal_gradient,
                                 horizontal_hessian, sub_laplacian, vertical_derivative,
                                 with_rescaled_reeb, xi_hessian_term)
from qcverify.poly import apply_field, bracket, random_poly
from qcverify.quaternion import frob2, make_hypercomplex_triple

seeds = st.integers(0, 2**32 - 1)


def test_model_shape(group1):
    assert len(group1.horizontal_frame) + len(group1.reeb) == 7
    assert group1.nvars == 7
    with pytest.raises(ValueError):
        build_group_model(0)


@pytest.mark.parametrize("n", [1, 2])
def test_selfcheck_passes(n):
    r = frame_structure_selfcheck(build_group_model(n))
    assert r.passed and r.first_failure is None and r.checked > 0


def test_bracket_T1_X1(group2):
    m = group2
    br = bracket(m.field("T1"), m.field("X1"))
    assert all(c.is_zero() for c in br.coeffs[: m.hdim])
    assert m.triple.omega[0][0, 1] == 1
    # [e_a, e_b] = -2 sum_s omega_s(e_a, e_b) xi_s
    assert br.coeffs[m.hdim] == -2 * REEB_SCALE
    assert br.coeffs[m.hdim + 1] == 0 and br.coeffs[m.hdim + 2] == 0


def test_center_commutes(group2):
    m = group2
    assert bracket(m.field("xi1"), m.field("xi2")).is_zero()
    for e in m.horizontal_frame:
        assert bracket(e, m.field("xi3")).is_zero()


def test_rescaled_reeb_fails_first_at_normalization(group1):
    r = frame_structure_selfcheck(with_rescaled_reeb(group1, 1, 2))
    assert not r.passed
    assert "eta" in r.first_failure and "xi" in r.first_failure


def test_swapped_structures_fail():
    t = make_hypercomplex_triple(1)
    swapped = dataclasses.replace(t, I2=t.I3, I3=t.I2, omega=(t.omega[0], t.omega[2], t.omega[1]))
    with pytest.raises(AssertionError):
        build_group_model(1, swapped)


def test_field_application_examples(group1):
    m = group1
    t1, v1 = m.coord("t1"), m.coord("v1")
    assert apply_field(m.field("T1"), t1) == 1
    assert apply_field(m.field("xi1"), t1) == 0
    p = apply_field(m.field("X1"), v1)
    assert p.degree() == 1 and p == m.triple.omega[0][1, 0] * t1


def test_gradient_examples(group2):
    m = group2
    g = horizontal_gradient(m, m.coord("t1"))
    assert g[0] == 1 and all(p == 0 for p in g[1:])
    g = horizontal_gradient(m, m.coord("v1"))
    assert all(p.degree() <= 1 for p in g)
    assert grad_norm2(g).degree() == 2
    assert all(p == 0 for p in horizontal_gradient(m, m.const(5)))


def test_hessian_examples(group2):
    m = group2
    t1, x1, v1 = m.coord("t1"), m.coord("x1"), m.coord("v1")
    H = horizontal_hessian(m, t1 * t1)
    assert H[0, 0] == 2 and sum(1 for p in np.ravel(H) if not p.is_zero()) == 1
    H = horizontal_hessian(m, v1)
    w1 = m.triple.omega[0]
    assert all((H + H.T).ravel() == 0)
    xi = vertical_derivative(m, v1, 1)
    assert all((H - H.T + w1 * (2 * xi)).ravel() == 0)
    assert all((H + w1).ravel() == 0)
    H = horizontal_hessian(m, t1 * x1)
    assert all(r.is_zero() for r in check_trace_identity(m, t1 * x1, H))


def test_sub_laplacian_examples(group2):
    m = group2
    assert sub_laplacian(m, m.coord("t1") ** 2) == -2
    q2 = sum((m.coord(i) ** 2 for i in range(m.hdim)), m.const(0))
    assert sub_laplacian(m, q2) == -8 * m.n
    assert sub_laplacian(m, m.coord("v1")) == 0


def test_vertical_derivative_examples(group2):
    m = group2
    assert vertical_derivative(m, m.coord("t1"), 1) == 0
    assert vertical_derivative(m, m.coord("v2"), 2) == REEB_SCALE != 0
    assert vertical_derivative(m, m.coord("v2"), 3) == 0
    with pytest.raises(ValueError):
        vertical_derivative(m, m.coord("v2"), 0)


def test_identities_for_v1(group2):
    m = group2
    v1 = m.coord("v1")
    assert all(r.is_zero() for r in check_trace_identity(m, v1))
    assert check_ricci_identities(m, v1).all_zero()
    H = horizontal_hessian(m, v1)
    assert frob2(H) == 4 * m.n
    assert check_bochner_pointwise(m, v1).is_zero()


def test_linear_function_terms_vanish(group2):
    m = group2
    f = 3 * m.coord("t1") - m.coord("z2")
    H = horizontal_hessian(m, f)
    assert all(p.is_zero() for p in np.ravel(H))
    assert xi_hessian_term(m, horizontal_gradient(m, f)).is_zero()
    assert check_bochner_pointwise(m, f).is_zero()


@pytest.mark.parametrize("n", [1, 2])
@given(seed=seeds)
def test_pointwise_identities_random(n, seed):
    m = build_group_model(n)
    f = random_poly(m.nvars, 4, np.random.default_rng(seed))
    H = horizontal_hessian(m, f)
    assert all(r.is_zero() for r in check_trace_identity(m, f, H))
    assert check_ricci_identities(m, f, H).all_zero()
    assert check_bochner_pointwise(m, f).is_zero()
    assert check_bochner_pointwise(m, f, form="boh").is_zero()


@given(seeds, seeds)
def test_operators_linear(s1, s2):
    m = build_group_model(1)
    f = random_poly(m.nvars, 3, np.random.default_rng(s1))
    g = random_poly(m.nvars, 3, np.random.default_rng(s2))
    assert sub_laplacian(m, 2 * f - g) == 2 * sub_laplacian(m, f) - sub_laplacian(m, g)
    assert all((horizontal_hessian(m, f + g) == horizontal_hessian(m, f) + horizontal_hessian(m, g)).ravel())


def test_constants_are_harmless(group1):
    c = group1.const(7)
    assert sub_laplacian(group1, c) == 0
    assert check_bochner_pointwise(group1, c).is_zero()


def test_opposite_sign_of_bochner_left_side_fails(group2):
    # with +1/2 Lap|grad f|^2 on the left the residual for v1 is a nonzero constant
    m = group2
    f = m.coord("v1")
    res = check_bochner_pointwise(m, f)
    g2 = grad_norm2(horizontal_gradient(m, f))
    flipped = res + sub_laplacian(m, g2)
    assert res.is_zero() and not flipped.is_zero()
