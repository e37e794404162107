"""Exact integration over G(H) for the Gaussian test ring p * exp(-a rho),
rho = sum of squares of all 4n+3 coordinates, and the integral identities
that rest on integration by parts.

Every integral of ``q * exp(-b rho)`` is carried as an :class:`ExactIntegral`
``coeff * (pi / b)^(N/2)``; identities are checked on ``coeff`` alone, so the
transcendental factor is never evaluated on the pass/fail path.  Lebesgue
measure stands in for Vol_eta, which differs from it by a constant factor on
G(H).
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .decomposition import hessian_sp_decompose, inner
from .heisenberg import GroupModel
from .poly import Poly, PolyVectorField, apply_field, random_poly
from .rational import QQ, to_qq


class MixedRateError(ValueError):
    pass


class GaussFn:
    """``p * exp(-a * rho)`` with an exact polynomial ``p`` and rational ``a > 0``."""

    __slots__ = ("p", "a")

    def __init__(self, p: Poly, a):
        a = to_qq(a)
        if a <= 0:
            raise ValueError("decay rate must be positive")
        self.p = p
        self.a = a

    def __repr__(self):
        return f"GaussFn({self.p!r}, a={self.a})"

    def is_zero(self):
        return self.p.is_zero()

    def __eq__(self, other):
        if isinstance(other, GaussFn):
            if self.p.is_zero() and other.p.is_zero():
                return True
            return self.a == other.a and self.p == other.p
        if other == 0:
            return self.p.is_zero()
        return NotImplemented

    __hash__ = None

    def _check(self, other):
        if self.a != other.a and not (self.p.is_zero() or other.p.is_zero()):
            raise MixedRateError(f"cannot add rates {self.a} and {other.a}")

    def __add__(self, other):
        if not isinstance(other, GaussFn):
            if other == 0:
                return self
            return NotImplemented
        self._check(other)
        a = self.a if not self.p.is_zero() else other.a
        return GaussFn(self.p + other.p, a)

    __radd__ = __add__

    def __neg__(self):
        return GaussFn(-self.p, self.a)

    def __sub__(self, other):
        if not isinstance(other, GaussFn):
            if other == 0:
                return self
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GaussFn):
            return GaussFn(self.p * other.p, self.a + other.a)
        return GaussFn(self.p * other, self.a)

    __rmul__ = __mul__

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return self.p(x) * np.exp(-float(self.a) * np.sum(x * x, axis=-1))


def _rho_half_derivative(V: PolyVectorField) -> Poly:
    """V(rho) / 2 = sum_i V_i u_i."""
    total = Poly.zero(V.nvars)
    for i, c in V._support:
        total = total + c * Poly.var(V.nvars, i)
    return total


def apply_field_gauss(V: PolyVectorField, F: GaussFn) -> GaussFn:
    """V(p e^{-a rho}) = (V p - 2a p V(rho)/2) e^{-a rho}."""
    return GaussFn(apply_field(V, F.p) - (2 * F.a) * (F.p * _rho_half_derivative(V)), F.a)


@dataclass(frozen=True)
class ExactIntegral:
    """The number ``coeff * (pi / rate)^(dim / 2)``."""

    coeff: object
    rate: object
    dim: int

    def _check(self, other):
        if not isinstance(other, ExactIntegral):
            raise TypeError("ExactIntegral arithmetic needs ExactIntegral operands")
        if (self.rate, self.dim) != (other.rate, other.dim) and self.coeff != 0 and other.coeff != 0:
            raise MixedRateError("integrals carry different transcendental factors")

    def _like(self, other, coeff):
        base = self if self.coeff != 0 else other
        return ExactIntegral(coeff, base.rate, base.dim)

    def __add__(self, other):
        self._check(other)
        return self._like(other, self.coeff + other.coeff)

    def __sub__(self, other):
        self._check(other)
        return self._like(other, self.coeff - other.coeff)

    def __neg__(self):
        return ExactIntegral(-self.coeff, self.rate, self.dim)

    def __mul__(self, c):
        return ExactIntegral(self.coeff * to_qq(c), self.rate, self.dim)

    __rmul__ = __mul__

    def is_zero(self):
        return self.coeff == 0

    @property
    def value(self) -> float:
        return float(self.coeff) * (math.pi / float(self.rate)) ** (self.dim / 2)


@lru_cache(maxsize=None)
def _moment_1d(k: int, b) -> object:
    """int x^k e^{-b x^2} dx / sqrt(pi / b) = (k-1)!! / (2b)^(k/2) for even k."""
    if k % 2:
        return QQ(0)
    num = 1
    for j in range(k - 1, 0, -2):
        num *= j
    return QQ(num) / (2 * b) ** (k // 2)


def gaussian_moment(mono, b) -> ExactIntegral:
    b = to_qq(b)
    if b <= 0:
        raise ValueError("Gaussian rate must be positive")
    coeff = QQ(1)
    for k in mono:
        if k % 2:
            return ExactIntegral(QQ(0), b, len(mono))
        if k:
            coeff *= _moment_1d(k, b)
    return ExactIntegral(coeff, b, len(mono))


def _poly_moment(p: Poly, b) -> object:
    total = QQ(0)
    for mono, c in p.terms.items():
        if any(k % 2 for k in mono):
            continue
        w = c
        for k in mono:
            if k:
                w = w * _moment_1d(k, b)
        total += w
    return total


def integrate_exact(m: GroupModel, q: GaussFn, rate=None) -> ExactIntegral:
    """Exact integral of ``q``; a literal 0 integrand needs ``rate``."""
    if not isinstance(q, GaussFn):
        if q == 0 and rate is not None:
            return ExactIntegral(QQ(0), to_qq(rate), m.nvars)
        raise TypeError("integrand must be a GaussFn")
    if q.p.nvars != m.nvars:
        raise ValueError("integrand lives on a different group")
    return ExactIntegral(_poly_moment(q.p, q.a), q.a, m.nvars)


def integrate_sum(m: GroupModel, terms) -> ExactIntegral:
    """Integral of a sum of GaussFn sharing one rate."""
    total = None
    for q in terms:
        if isinstance(q, GaussFn):
            I = integrate_exact(m, q)
            total = I if total is None else total + I
    if total is None:
        raise ValueError("empty integrand")
    return total


# --------------------------------------------------------------- frame calculus


def horizontal_gradient_gauss(m: GroupModel, f: GaussFn) -> list:
    return [apply_field_gauss(e, f) for e in m.horizontal_frame]


def horizontal_hessian_gauss(m: GroupModel, f: GaussFn, grad=None) -> np.ndarray:
    grad = horizontal_gradient_gauss(m, f) if grad is None else grad
    hd = m.hdim
    H = np.empty((hd, hd), dtype=object)
    for a in range(hd):
        for b in range(hd):
            H[a, b] = apply_field_gauss(m.horizontal_frame[a], grad[b])
    return H


def vertical_derivative_gauss(m: GroupModel, f: GaussFn, s: int) -> GaussFn:
    return apply_field_gauss(m.reeb[s - 1], f)


def sub_laplacian_gauss(m: GroupModel, f: GaussFn, H=None) -> GaussFn:
    if H is not None:
        return -sum((H[a, a] for a in range(m.hdim)), GaussFn(Poly.zero(m.nvars), f.a))
    total = GaussFn(Poly.zero(m.nvars), f.a)
    for e in m.horizontal_frame:
        total = total - apply_field_gauss(e, apply_field_gauss(e, f))
    return total


def _sum_squares(entries):
    total = 0
    for v in entries:
        total = total + v * v
    return total


def integrate_sum_of_squares(m: GroupModel, entries, rate) -> ExactIntegral:
    """Exact ``int sum_i F_i^2`` without expanding the products.

    Only monomial pairs with equal parity vectors have an even product, so the
    double sum runs within parity classes.
    """
    total = QQ(0)
    b = None
    for F in entries:
        if not isinstance(F, GaussFn) or F.is_zero():
            continue
        b = 2 * F.a
        classes = {}
        for mono, c in F.p.terms.items():
            classes.setdefault(tuple(k & 1 for k in mono), []).append((mono, c))
        for items in classes.values():
            for i, (m1, c1) in enumerate(items):
                for j in range(i, len(items)):
                    m2, c2 = items[j]
                    w = c1 * c2 if i == j else 2 * c1 * c2
                    for k1, k2 in zip(m1, m2):
                        if k1 or k2:
                            w = w * _moment_1d(k1 + k2, b)
                    total += w
    if b is not None and b != to_qq(rate):
        raise MixedRateError("entries do not have the requested rate")
    return ExactIntegral(total, to_qq(rate), m.nvars)


class _FnData:
    """Frame derivatives of one test function, computed once."""

    def __init__(self, m: GroupModel, f: GaussFn):
        self.m = m
        self.f = f
        self.grad = horizontal_gradient_gauss(m, f)
        self.H = horizontal_hessian_gauss(m, f, self.grad)
        self.lap = sub_laplacian_gauss(m, f, self.H)
        self.xif = [vertical_derivative_gauss(m, f, s) for s in (1, 2, 3)]

    def xi_hessian_term(self):
        """sum_s nabla^2 f(xi_s, I_s grad f) as a GaussFn of rate 2a."""
        m = self.m
        total = 0
        for s in range(3):
            xig = [apply_field_gauss(m.reeb[s], g) for g in self.grad]
            om = m.triple.omega[s]
            for a in range(m.hdim):
                for b in range(m.hdim):
                    w = om[a, b]
                    if w:
                        total = total + w * (self.grad[a] * xig[b])
        return total


def verify_divergence(m: GroupModel, sigma) -> ExactIntegral:
    """Integral of the horizontal divergence -sum_a e_a(sigma_a); exactly zero."""
    if len(sigma) != m.hdim:
        raise ValueError(f"need {m.hdim} components")
    rates = {s.a for s in sigma if not s.is_zero()}
    if len(rates) > 1:
        raise MixedRateError("components must share one rate")
    div = 0
    for e, s in zip(m.horizontal_frame, sigma):
        div = div - apply_field_gauss(e, s)
    if not isinstance(div, GaussFn):
        return ExactIntegral(QQ(0), sigma[0].a, m.nvars)
    return integrate_exact(m, div)


def vertical_energy_lemma_sides(m: GroupModel, f: GaussFn, data: _FnData | None = None):
    """(lhs, rhs) of  int sum_s nabla^2 f(xi_s, I_s grad f) = -int 4n sum_s (xi_s f)^2
    (torsion term T(xi_s, .) = 0 on the flat group)."""
    d = data or _FnData(m, f)
    lhs = integrate_exact(m, d.xi_hessian_term(), 2 * f.a)
    rhs = integrate_sum_of_squares(m, d.xif, 2 * f.a) * (-4 * m.n)
    return lhs, rhs


def verify_vertical_energy_lemma(m: GroupModel, f: GaussFn, data=None) -> ExactIntegral:
    lhs, rhs = vertical_energy_lemma_sides(m, f, data)
    return lhs - rhs


def hessian_split_lemma_sides(m: GroupModel, f: GaussFn, data: _FnData | None = None):
    """(lhs, rhs) of  int sum_s nabla^2 f(xi_s, I_s grad f)
    = int 3/(4n) |Hess_[3]|^2 - 1/(4n) |Hess_[-1]|^2  (tau_s = 0 on the flat group)."""
    d = data or _FnData(m, f)
    dec = hessian_sp_decompose(m.triple, d.H)
    lhs = integrate_exact(m, d.xi_hessian_term(), 2 * f.a)
    n4 = 4 * m.n
    rhs = integrate_sum_of_squares(m, np.ravel(dec.part3), 2 * f.a) * QQ(3, n4) \
        - integrate_sum_of_squares(m, np.ravel(dec.partm1), 2 * f.a) * QQ(1, n4)
    return lhs, rhs


def verify_hessian_split_lemma(m: GroupModel, f: GaussFn, data=None) -> ExactIntegral:
    lhs, rhs = hessian_split_lemma_sides(m, f, data)
    return lhs - rhs


def vertical_energy_identity(m: GroupModel, f: GaussFn, data=None) -> ExactIntegral:
    """16 n^2 int sum_s (xi_s f)^2 - int sum_s (sum_a nabla^2 f(e_a, I_s e_a))^2."""
    d = data or _FnData(m, f)
    left = integrate_sum_of_squares(m, d.xif, 2 * f.a) * (16 * m.n ** 2)
    traces = [inner(d.H, m.triple.omega[s]) for s in range(3)]
    return left - integrate_sum_of_squares(m, traces, 2 * f.a)


def hessian_laplacian_integrals(m: GroupModel, f: GaussFn, data=None):
    """(int |nabla^2 f|^2, int |Lap f|^2) as ExactIntegrals."""
    d = data or _FnData(m, f)
    hess2 = integrate_sum_of_squares(m, np.ravel(d.H), 2 * f.a)
    lap2 = integrate_sum_of_squares(m, [d.lap], 2 * f.a)
    return hess2, lap2


def verify_hessian_laplacian_bound(m: GroupModel, f: GaussFn, data=None):
    """Exact ratio int |nabla^2 f|^2 / int |Lap f|^2, or None when Lap f == 0.

    The sharp bound on G(H) is (n + 1) / n.
    """
    hess2, lap2 = hessian_laplacian_integrals(m, f, data)
    if lap2.coeff == 0:
        return None
    return hess2.coeff / lap2.coeff


def integration_by_parts_residual(m: GroupModel, a: int, F: GaussFn, G: GaussFn) -> ExactIntegral:
    """int e_a(F) G + int F e_a(G); exactly zero."""
    e = m.horizontal_frame[a]
    return integrate_exact(m, apply_field_gauss(e, F) * G) + integrate_exact(m, F * apply_field_gauss(e, G))


# --------------------------------------------------------------------- test family

DEFAULT_RATES = (QQ(1, 2), QQ(1), QQ(2))


def random_gauss_family(m: GroupModel, count: int, degree: int = 3, seed: int = 0,
                        terms: int = 3, rates=DEFAULT_RATES) -> list:
    """Seeded GaussFn family; the i-th member depends only on (seed, i)."""
    out = []
    for i in range(count):
        rng = np.random.default_rng([seed, i])
        p = random_poly(m.nvars, degree, rng, terms=terms)
        out.append(GaussFn(p, rates[i % len(rates)]))
    return out


# ------------------------------------------------------------------ Monte Carlo


@dataclass(frozen=True)
class MCEstimate:
    """Estimate of ``coeff`` in ``integral = coeff * (pi / rate)^(dim/2)``."""

    coeff: float
    stderr: float
    rate: float
    dim: int
    samples: int

    @property
    def value(self):
        return self.coeff * (math.pi / self.rate) ** (self.dim / 2)

    def agrees(self, exact: ExactIntegral, nsigma: float = 3.0) -> bool:
        return abs(self.coeff - float(exact.coeff)) <= nsigma * self.stderr + 1e-15 * abs(self.coeff)


MC_CHUNK = 1 << 15


def _mc_chunk(args):
    q, rate, dim, size, seed_seq, callable_q = args
    rng = np.random.default_rng(seed_seq)
    x = rng.normal(0.0, math.sqrt(1.0 / (2.0 * rate)), size=(size, dim))
    if callable_q:
        # importance weight q(x) / density(x), normalised by (pi / rate)^(dim/2)
        vals = np.asarray(q(x), dtype=float) * np.exp(rate * np.sum(x * x, axis=1))
    else:
        vals = q.p(x)
    return float(np.sum(vals)), float(np.sum(vals * vals))


def mc_integrate(m: GroupModel, q, N: int, seed: int = 0, rate=None, workers: int | None = None) -> MCEstimate:
    """Monte Carlo estimate of int q over G(H), sampling the Gaussian weight.

    ``q`` is a GaussFn (its own rate is the proposal) or a callable on arrays of
    shape (k, 4n+3) together with an explicit proposal ``rate``.  Samples are
    drawn in fixed-size chunks with seeds spawned from ``seed``, so the result
    is bit-identical for any worker count.
    """
    if not isinstance(N, (int, np.integer)) or N < 10_000:
        raise ValueError("Monte Carlo needs N >= 10^4 samples")
    callable_q = not isinstance(q, GaussFn)
    if callable_q:
        if rate is None:
            raise ValueError("a proposal rate is required for callable integrands")
        b = float(rate)
    else:
        b = float(q.a)
    dim = m.nvars
    sizes = [MC_CHUNK] * (N // MC_CHUNK)
    if N % MC_CHUNK:
        sizes.append(N % MC_CHUNK)
    seqs = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = [(q, b, dim, sz, ss, callable_q) for sz, ss in zip(sizes, seqs)]
    workers = workers or int(os.environ.get("QCVERIFY_WORKERS", "1"))
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            parts = list(ex.map(_mc_chunk, jobs))
    else:
        parts = [_mc_chunk(j) for j in jobs]
    s1 = sum(p[0] for p in parts)
    s2 = sum(p[1] for p in parts)
    mean = s1 / N
    var = max(s2 / N - mean * mean, 0.0) * N / (N - 1)
    return MCEstimate(mean, math.sqrt(var / N), b, dim, N)
