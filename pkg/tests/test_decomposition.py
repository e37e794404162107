import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcverify.decomposition import (casimir_apply, casimir_apply_endomorphism, four_part_decompose,
                                    hessian_sp_decompose, inner, omega_trace, projector_trace,
                                    sandwich, sp_decompose, trace)
from qcverify.quaternion import frob2, is_zero, random_rational_matrix
from qcverify.rational import QQ

seeds = st.integers(0, 2**32 - 1)


def rand(n, seed):
    return random_rational_matrix(np.random.default_rng(seed), 4 * n)


def test_four_part_examples(triples):
    t = triples[2]
    d = four_part_decompose(t, t.g)
    assert (d.ppp == t.g).all() and is_zero(d.pmm) and is_zero(d.mpm) and is_zero(d.mmp)
    d = four_part_decompose(t, t.I1)
    assert (d.pmm == t.I1).all() and is_zero(d.ppp) and is_zero(d.mpm) and is_zero(d.mmp)
    d = four_part_decompose(t, t.I2)
    assert (d.mpm == t.I2).all()


@pytest.mark.parametrize("n", [1, 2])
@given(seed=seeds)
def test_four_parts_reassemble_and_commute(triples, n, seed):
    t = triples[n]
    P = rand(n, seed)
    d = four_part_decompose(t, P)
    assert (d.ppp + d.pmm + d.mpm + d.mmp == P).all()
    signs = {"+++": (1, 1, 1), "+--": (1, -1, -1), "-+-": (-1, 1, -1), "--+": (-1, -1, 1)}
    for key, part in d.parts.items():
        for A, sg in zip(t.Is, signs[key]):
            assert is_zero(A.dot(part) - sg * part.dot(A))


def test_sp_examples(triples):
    t = triples[2]
    d = sp_decompose(t, t.g)
    assert (d.part3 == t.g).all() and is_zero(d.partm1)
    d = sp_decompose(t, t.omega[0])
    assert is_zero(d.part3) and (d.partm1 == t.omega[0]).all()


@pytest.mark.parametrize("n", [1, 2])
@given(seed=seeds)
def test_sp_projection_properties(triples, n, seed):
    t = triples[n]
    P = rand(n, seed)
    d = sp_decompose(t, P)
    assert (d.part3 + d.partm1 == P).all()
    assert inner(d.part3, d.partm1) == 0
    c3 = sum(sandwich(A, d.part3, A) for A in t.Is)
    assert is_zero(3 * d.part3 + c3)
    cm = sum(sandwich(A, d.partm1, A) for A in t.Is)
    assert is_zero(d.partm1 - cm)
    again = sp_decompose(t, d.part3)
    assert (again.part3 == d.part3).all() and is_zero(again.partm1)


def test_orthogonality_over_fifty_matrices(triples):
    t = triples[2]
    rng = np.random.default_rng(5)
    for _ in range(50):
        d = sp_decompose(t, random_rational_matrix(rng, 8))
        assert trace(d.part3.dot(d.partm1.T)) == 0


def test_casimir_eigenvalues(triples):
    t = triples[2]
    assert (casimir_apply(t, t.g) == 3 * t.g).all()
    for w in t.omega:
        assert (casimir_apply(t, w) == -w).all()


@given(seed=seeds)
def test_casimir_minimal_polynomial(triples, seed):
    t = triples[1]
    P = rand(1, seed)
    U = casimir_apply(t, P)
    assert is_zero(casimir_apply(t, U) - 2 * U - 3 * P)


@pytest.mark.parametrize("n", [1, 2])
@given(seed=seeds)
def test_form_and_endomorphism_routes_agree(triples, n, seed):
    t = triples[n]
    Psi = rand(n, seed)
    assert (casimir_apply(t, Psi.T) == casimir_apply_endomorphism(t, Psi).T).all()


def test_hessian_decomposition_examples(triples):
    t = triples[2]
    assert (hessian_sp_decompose(t, t.g).part3 == t.g).all()
    assert (hessian_sp_decompose(t, t.omega[2]).partm1 == t.omega[2]).all()


@given(seed=seeds)
def test_pythagoras_and_lower_bounds(triples, seed):
    n = 2
    t = triples[n]
    h = rand(n, seed)
    d = hessian_sp_decompose(t, h)
    assert frob2(h) == frob2(d.part3) + frob2(d.partm1)
    assert frob2(d.part3) >= QQ(1, 4 * n) * trace(h) ** 2
    assert frob2(d.partm1) >= QQ(1, 4 * n) * sum(omega_trace(t, h, s) ** 2 for s in (1, 2, 3))


def test_hessian_and_form_decompositions_agree_on_symmetric(triples):
    t = triples[2]
    h = rand(2, 9)
    h = h + h.T
    a, b = hessian_sp_decompose(t, h), sp_decompose(t, h)
    assert (a.part3 == b.part3).all() and (a.partm1 == b.partm1).all()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_projector_traces(triples, n):
    assert projector_trace(triples[n], "3") == 4 * n * n
    assert projector_trace(triples[n], "-1") == 12 * n * n


def test_symmetric_three_part_in_dimension_seven(triples):
    # n = 1: the [3] part of a symmetric endomorphism is (trace / 4) Id
    t = triples[1]
    rng = np.random.default_rng(3)
    for _ in range(20):
        P = random_rational_matrix(rng, 4)
        P = P + P.T
        part3 = sp_decompose(t, P).part3
        assert (part3 == QQ(trace(P), 4) * t.g).all()
    P = np.diag([QQ(2), QQ(0), QQ(0), QQ(0)]).astype(object)
    assert (sp_decompose(t, P).part3 != frob2(P) / 4 * t.g).any()


def test_float_inputs_take_float_path(triples):
    t = triples[2].to_float()
    P = np.random.default_rng(0).normal(size=(8, 8))
    d = sp_decompose(t, P)
    assert d.part3.dtype == float
    assert np.allclose(d.part3 + d.partm1, P)


def test_dimension_mismatch(triples):
    with pytest.raises(ValueError):
        sp_decompose(triples[2], np.eye(4, dtype=object))
