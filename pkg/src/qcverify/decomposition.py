"""Sp(n)- and Sp(n)Sp(1)-invariant splittings of (0,2)-tensors on H and the
Casimir operator Upsilon = I1 x I1 + I2 x I2 + I3 x I3.

All projections are the closed averaging formulas; no eigen-solver is used.
The functions accept square matrices whose entries are anything supporting
``+``, ``-`` and multiplication by rationals: exact rationals, floats,
:class:`~qcverify.poly.Poly` or :class:`~qcverify.gaussian.GaussFn`.

A bilinear form ``P`` and the endomorphism ``Psi`` with ``P(X, Y) = g(Psi X, Y)``
are related by ``P = Psi^T``.  Because every ``I_s`` is antisymmetric, the
four-part formulas give the same matrices in both pictures, so one
implementation serves both.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .quaternion import HypercomplexTriple, as_form
from .rational import QQ


@dataclass(frozen=True, eq=False)
class FourPartDecomposition:
    ppp: np.ndarray
    pmm: np.ndarray
    mpm: np.ndarray
    mmp: np.ndarray

    @property
    def parts(self):
        return {"+++": self.ppp, "+--": self.pmm, "-+-": self.mpm, "--+": self.mmp}


@dataclass(frozen=True, eq=False)
class SpSpDecomposition:
    part3: np.ndarray
    partm1: np.ndarray


def _nonzeros(A):
    return [(i, j, A[i, j]) for i, j in np.ndindex(*A.shape) if A[i, j] != 0]


def sandwich(A, P, B):
    """A @ P @ B for a generic-entry P and sparse exact A, B."""
    P = np.asarray(P)
    if P.dtype.kind == "f":
        return np.asarray(A, dtype=float) @ P @ np.asarray(B, dtype=float)
    m = P.shape[0]
    out = np.empty((m, m), dtype=object)
    out[...] = 0
    nzA = _nonzeros(A)
    nzB = _nonzeros(B)
    for i, j, a in nzA:
        for k, l, b in nzB:
            entry = P[j, k]
            if a * b == 1:
                out[i, l] = out[i, l] + entry
            elif a * b == -1:
                out[i, l] = out[i, l] - entry
            else:
                out[i, l] = out[i, l] + (a * b) * entry
    return out


def _scale(P, c):
    P = np.asarray(P)
    if P.dtype.kind == "f":
        return float(c) * P
    return np.vectorize(lambda v: QQ(c) * v, otypes=[object])(P) if P.size else P


def _combine(*terms):
    """Sum of (sign, matrix) pairs."""
    total = None
    for sign, M in terms:
        M = np.asarray(M)
        if total is None:
            total = M if sign > 0 else -M
        else:
            total = total + M if sign > 0 else total - M
    return total


def conjugations(t: HypercomplexTriple, P):
    """The three matrices I_s P I_s (endomorphism picture)."""
    return [sandwich(A, P, A) for A in t.Is]


def four_part_decompose(t: HypercomplexTriple, P) -> FourPartDecomposition:
    P = as_form(P, t.n)
    c1, c2, c3 = conjugations(t, P)
    quarter = QQ(1, 4)
    ppp = _scale(_combine((1, P), (-1, c1), (-1, c2), (-1, c3)), quarter)
    pmm = _scale(_combine((1, P), (-1, c1), (1, c2), (1, c3)), quarter)
    mpm = _scale(_combine((1, P), (1, c1), (-1, c2), (1, c3)), quarter)
    mmp = _scale(_combine((1, P), (1, c1), (1, c2), (-1, c3)), quarter)
    return FourPartDecomposition(ppp, pmm, mpm, mmp)


def sp_decompose(t: HypercomplexTriple, P) -> SpSpDecomposition:
    """[3]- and [-1]-components: part3 = P^{+++}, partm1 = the other three."""
    P = as_form(P, t.n)
    c1, c2, c3 = conjugations(t, P)
    s = _combine((1, c1), (1, c2), (1, c3))
    part3 = _scale(_combine((1, P), (-1, s)), QQ(1, 4))
    partm1 = _scale(_combine((1, _scale(P, 3)), (1, s)), QQ(1, 4))
    return SpSpDecomposition(part3, partm1)


def casimir_apply(t: HypercomplexTriple, P):
    """Upsilon on a bilinear form: P -> sum_s P(I_s., I_s.) = sum_s I_s^T P I_s."""
    P = as_form(P, t.n)
    return _combine(*[(1, sandwich(A.T, P, A)) for A in t.Is])


def casimir_apply_endomorphism(t: HypercomplexTriple, Psi):
    """Upsilon on an endomorphism: Psi -> -sum_s I_s Psi I_s.

    Agrees with :func:`casimir_apply` through P = Psi^T.
    """
    Psi = as_form(Psi, t.n)
    return -_combine(*[(1, c) for c in conjugations(t, Psi)])


def hessian_sp_decompose(t: HypercomplexTriple, h) -> SpSpDecomposition:
    """Split a (not necessarily symmetric) horizontal Hessian.

    part3(X, Y)  = 1/4 [h(X, Y) + sum_s h(I_s X, I_s Y)]
    partm1(X, Y) = 1/4 [3 h(X, Y) - sum_s h(I_s X, I_s Y)]
    """
    h = as_form(h, t.n)
    u = casimir_apply(t, h)
    part3 = _scale(_combine((1, h), (1, u)), QQ(1, 4))
    partm1 = _scale(_combine((1, _scale(h, 3)), (-1, u)), QQ(1, 4))
    return SpSpDecomposition(part3, partm1)


def trace(h):
    total = 0
    for a in range(h.shape[0]):
        total = total + h[a, a]
    return total


def inner(A, B):
    """Trace inner product sum_ab A_ab B_ab."""
    A = np.asarray(A)
    B = np.asarray(B)
    if A.dtype.kind == "f" and B.dtype.kind == "f":
        return float(np.sum(A * B))
    total = 0
    for a, b in zip(np.ravel(A), np.ravel(B)):
        total = total + a * b
    return total


def omega_trace(t: HypercomplexTriple, h, s: int):
    """sum_a h(e_a, I_s e_a) = <h, omega_s>."""
    return inner(h, t.omega[s - 1])


def projector_trace(t: HypercomplexTriple, which: str = "3") -> int:
    """Trace of the [3] (or [-1]) projector on the 16n^2-dim matrix space,
    summed over matrix units."""
    m = t.dim
    total = 0
    for i, j in np.ndindex(m, m):
        E = np.empty((m, m), dtype=object)
        E[...] = 0
        E[i, j] = 1
        d = sp_decompose(t, E)
        total += (d.part3 if which == "3" else d.partm1)[i, j]
    return total
