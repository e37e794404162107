"""Numerical model of the round 3-Sasakian sphere S^{4n+3} in R^{4n+4} = H^{n+1}.

The Reeb fields are ``xi_s(x) = J_s x`` with ``J_s`` the hypercomplex triple of
size n+1.  The contact forms ``eta_s = <J_s x, .>`` satisfy
``d eta_s(X, Y) = 2 <J_s X, Y>`` on H, so the horizontal complex structures
are the restrictions of ``J_s``.

Horizontal frames are built quaternion-block by block, ``v, J1 v, J2 v, J3 v``,
from projections of a fixed list of ambient basis vectors (pivots chosen at
the base point).  Reusing the pivot list at nearby points extends the frame
smoothly, which is what the mixed second derivatives need.

Biquard and Levi-Civita connections agree on horizontal components for
horizontal arguments, and ``nabla_{xi_s} xi_s = 0``: the Reeb flows are great
circles, hence geodesics.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .decomposition import hessian_sp_decompose
from .quaternion import HypercomplexTriple, make_hypercomplex_triple

FD_STEP = 1e-4  # first derivatives and the nested (route B) second derivatives
FD_STEP2 = 1e-2  # pure second derivatives along circles, 5-point stencil


class FrameError(RuntimeError):
    pass


class RouteDisagreement(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class SphereModel:
    n: int
    J: tuple  # three (4n+4)x(4n+4) float matrices
    fd_step: float = FD_STEP
    fd_step2: float = FD_STEP2
    structure: dict = field(default_factory=dict)

    @property
    def ambient_dim(self):
        return 4 * self.n + 4

    @property
    def hdim(self):
        return 4 * self.n


@dataclass(frozen=True, eq=False)
class HorizontalFrameAtPoint:
    x: np.ndarray
    vectors: np.ndarray  # (4n, 4n+4), rows are the frame vectors
    I: tuple  # I_s in the frame: I[s][b, a] = <J_s e_a, e_b>
    pivots: tuple

    @property
    def omega(self):
        """omega_s[a, b] = <J_s e_a, e_b>."""
        return tuple(A.T for A in self.I)

    def triple(self) -> HypercomplexTriple:
        n = self.vectors.shape[0] // 4
        I1, I2, I3 = self.I
        return HypercomplexTriple(n, I1, I2, I3, np.eye(4 * n), self.omega)


def build_sphere_model(n: int, fd_step: float = FD_STEP, fd_step2: float = FD_STEP2,
                       check_points: int = 100, seed: int = 0) -> SphereModel:
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ValueError(f"the sphere model needs n >= 2 (dimension 4n+3 > 7), got n={n!r}")
    n = int(n)
    J = tuple(np.asarray(A, dtype=float) for A in make_hypercomplex_triple(n + 1).Is)
    structure = {"S": 2, "T0": 0, "U": 0, "Ric": 4 * (n + 2), "k0": 4 * (n + 2),
                 "scal_qc": 16 * n * (n + 2), "scal_riem": (4 * n + 2) * (4 * n + 3)}
    m = SphereModel(n, J, fd_step, fd_step2, structure)
    rng = np.random.default_rng(seed)
    for x in random_points(m, check_points, rng):
        xi = reeb_at(m, x)
        G = xi @ xi.T
        if np.max(np.abs(G - np.eye(3))) > 1e-12 or np.max(np.abs(xi @ x)) > 1e-12:
            raise AssertionError("Reeb fields are not orthonormal and tangent")
        P = horizontal_projector(m, x)
        if abs(np.trace(P) - 4 * n) > 1e-10:
            raise AssertionError("horizontal space has the wrong rank")
    return m


def random_points(m: SphereModel, N: int, rng: np.random.Generator) -> np.ndarray:
    x = rng.normal(size=(N, m.ambient_dim))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def reeb_at(m: SphereModel, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return np.stack([A @ x for A in m.J])


def horizontal_projector(m: SphereModel, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    xi = reeb_at(m, x)
    return np.eye(m.ambient_dim) - np.outer(x, x) - xi.T @ xi


def _check_unit(x):
    if abs(np.linalg.norm(x) - 1.0) > 1e-12:
        raise ValueError("base point must be a unit vector")


def _frame_vectors(m: SphereModel, y, pivots) -> np.ndarray:
    P = horizontal_projector(m, y)
    V = []
    for idx in pivots:
        w = P[:, idx].copy()
        for v in V:
            w -= (v @ w) * v
        nrm = np.linalg.norm(w)
        if nrm < 1e-6:
            raise FrameError(f"near-singular pivot {idx}")
        v = w / nrm
        V.extend([v, m.J[0] @ v, m.J[1] @ v, m.J[2] @ v])
    return np.array(V)


def _choose_pivots(m: SphereModel, x, order=None):
    P = horizontal_projector(m, x)
    cand = list(range(m.ambient_dim)) if order is None else list(order)
    V = []
    pivots = []
    for _ in range(m.n):
        best, best_norm = None, -1.0
        for idx in cand:
            if idx in pivots:
                continue
            w = P[:, idx].copy()
            for v in V:
                w -= (v @ w) * v
            nrm = np.linalg.norm(w)
            if nrm > best_norm + 1e-12:
                best, best_norm = idx, nrm
        if best is None or best_norm < 1e-3:
            raise FrameError("no well-conditioned pivot left")
        pivots.append(best)
        v = P[:, best].copy()
        for u in V:
            v -= (u @ v) * u
        v /= np.linalg.norm(v)
        V.extend([v, m.J[0] @ v, m.J[1] @ v, m.J[2] @ v])
    return tuple(pivots)


def horizontal_frame_at(m: SphereModel, x, pivots=None) -> HorizontalFrameAtPoint:
    x = np.asarray(x, dtype=float)
    _check_unit(x)
    if pivots is None:
        try:
            pivots = _choose_pivots(m, x)
        except FrameError:
            order = np.random.default_rng(0).permutation(m.ambient_dim)
            pivots = _choose_pivots(m, x, order)
    E = _frame_vectors(m, x, pivots)
    I = tuple(E @ A @ E.T for A in m.J)  # I[b, a] = <J e_a, e_b>
    return HorizontalFrameAtPoint(x, E, I, tuple(pivots))


# ------------------------------------------------------------ finite differences


def _values(f, y):
    return np.asarray(f(y), dtype=float)


def _dir_deriv(f, y, v, h):
    return (_values(f, y + h * v) - _values(f, y - h * v)) / (2 * h)


def _circle_second(f, x, v, h):
    """d^2/dt^2 f(x cos t + v sin t) at 0; 5-point central stencil."""
    g = [_values(f, x * math.cos(k * h) + v * math.sin(k * h)) for k in (-2, -1, 0, 1, 2)]
    return (-g[0] + 16 * g[1] - 30 * g[2] + 16 * g[3] - g[4]) / (12 * h * h)


def reeb_second_derivative(m: SphereModel, f, x, s: int, h=None):
    """xi_s^2 f at x, along the Reeb circle x cos t + J_s x sin t."""
    x = np.asarray(x, dtype=float)
    return _circle_second(f, x, m.J[s - 1] @ x, m.fd_step2 if h is None else h)


def riemannian_laplacian_at(m: SphereModel, f, x, h=None, frame=None):
    """Positive Laplace-Beltrami operator from geodesic second derivatives."""
    x = np.asarray(x, dtype=float)
    _check_unit(x)
    h = m.fd_step2 if h is None else h
    frame = horizontal_frame_at(m, x) if frame is None else frame
    total = 0.0
    for v in list(frame.vectors) + list(reeb_at(m, x)):
        total = total - _circle_second(f, x, v, h)
    if not np.all(np.isfinite(total)):
        raise FloatingPointError("non-finite second difference")
    return total


@dataclass(frozen=True, eq=False)
class HessianData:
    frame: HorizontalFrameAtPoint
    hessian: np.ndarray  # (4n, 4n, ...) Biquard horizontal Hessian
    grad: np.ndarray  # (4n, ...) e_c f
    xi_f: np.ndarray  # (3, ...) xi_s f


def biquard_hessian_data(m: SphereModel, f, x, h=None, frame=None) -> HessianData:
    """Entries ``e_a(e_b f) - df((nabla^g_{e_a} e_b)_H)`` by nested central differences.

    ``f`` may return a vector; derivatives then carry a trailing axis.
    """
    x = np.asarray(x, dtype=float)
    _check_unit(x)
    h = m.fd_step if h is None else h
    frame = horizontal_frame_at(m, x) if frame is None else frame
    E = frame.vectors
    hd = m.hdim
    grad = np.array([_dir_deriv(f, x, E[c], h) for c in range(hd)])
    xi_f = np.array([_dir_deriv(f, x, A @ x, h) for A in m.J])
    EE = []
    gamma = np.empty((hd, hd, hd))
    for a in range(hd):
        cp = x * math.cos(h) + E[a] * math.sin(h)
        cm = x * math.cos(h) - E[a] * math.sin(h)
        Fp = _frame_vectors(m, cp, frame.pivots)
        Fm = _frame_vectors(m, cm, frame.pivots)
        row = [(_dir_deriv(f, cp, Fp[b], h) - _dir_deriv(f, cm, Fm[b], h)) / (2 * h)
               for b in range(hd)]
        EE.append(row)
        dE = (Fp - Fm) / (2 * h)  # derivative of each e_b along e_a
        gamma[a] = dE @ E.T  # gamma[a, b, c] = <d_{e_a} e_b, e_c>
    EE = np.array(EE)
    H = EE - np.tensordot(gamma, grad, axes=([2], [0]))
    if not np.all(np.isfinite(H)):
        raise FloatingPointError("non-finite Hessian entry")
    return HessianData(frame, H, grad, xi_f)


def biquard_horizontal_hessian_at(m: SphereModel, f, x, h=None, frame=None) -> np.ndarray:
    return biquard_hessian_data(m, f, x, h, frame).hessian


def sub_laplacian_routes(m: SphereModel, f, x, frame=None):
    """(route A, route B) values of the sub-Laplacian at x.

    A: Riemannian Laplacian plus sum_s xi_s^2 f (the nabla_{xi_s} xi_s term vanishes).
    B: minus the trace of the Biquard horizontal Hessian.
    """
    x = np.asarray(x, dtype=float)
    frame = horizontal_frame_at(m, x) if frame is None else frame
    route_a = riemannian_laplacian_at(m, f, x, frame=frame) \
        + sum(reeb_second_derivative(m, f, x, s) for s in (1, 2, 3))
    H = biquard_hessian_data(m, f, x, frame=frame).hessian
    route_b = -np.trace(H, axis1=0, axis2=1)
    return route_a, route_b


def sub_laplacian_at(m: SphereModel, f, x, tol: float = 1e-4):
    a, b = sub_laplacian_routes(m, f, x)
    if np.max(np.abs(np.asarray(a) - np.asarray(b))) > tol:
        raise RouteDisagreement(f"route A {a} and route B {b} differ by more than {tol}")
    return a


def coordinate_function(A: int):
    return lambda y: y[A]


def all_coordinates(y):
    return np.asarray(y, dtype=float)


# --------------------------------------------------------------- verifications


@dataclass(frozen=True)
class EigenReport:
    coordinate: int
    eigenvalue: float
    samples: int
    max_residual: float
    tol: float

    @property
    def passed(self):
        return self.max_residual <= self.tol


def verify_eigenfunction(m: SphereModel, A: int, samples: int = 200, seed: int = 0,
                         eigenvalue: float | None = None, tol: float = 1e-4) -> EigenReport:
    """max over random points of |Lap x_A - lambda x_A|, lambda = 4n by default."""
    if not 0 <= A < m.ambient_dim:
        raise ValueError(f"coordinate index out of range: {A}")
    lam = 4 * m.n if eigenvalue is None else eigenvalue
    f = coordinate_function(A)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for x in random_points(m, samples, rng):
        a, b = sub_laplacian_routes(m, f, x)
        worst = max(worst, abs(a - lam * x[A]), abs(b - lam * x[A]))
    return EigenReport(A, lam, samples, float(worst), tol)


def equality_hessian_residual(m: SphereModel, f, x, data: HessianData | None = None):
    """Max-norm of  Hess f + (k0 / (4(n+2))) f g + sum_s (xi_s f) omega_s  at x."""
    x = np.asarray(x, dtype=float)
    d = biquard_hessian_data(m, f, x) if data is None else data
    fx = _values(f, x)
    scale = m.structure["k0"] / (4 * (m.n + 2))
    target = -scale * np.multiply.outer(np.eye(m.hdim), fx)
    for s in range(3):
        target = target - np.multiply.outer(d.frame.omega[s], d.xi_f[s])
    return float(np.max(np.abs(d.hessian - target)))


@dataclass(frozen=True)
class SphereRatios:
    vertical_energy_ratio: float
    rayleigh_quotient: float
    riemannian_rayleigh: float
    samples: int


MC_CHUNK = 1 << 16


def _ratio_chunk(args):
    J, A, D, size, seq = args
    rng = np.random.default_rng(seq)
    x = rng.normal(size=(size, D))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    f2 = x[:, A] ** 2
    vert = sum((x @ Js[A]) ** 2 for Js in J)  # (J_s x)_A
    riem = 1.0 - f2  # |grad^g x_A|^2 on the unit sphere
    return float(f2.sum()), float(vert.sum()), float((riem - vert).sum()), float(riem.sum())


def sphere_ratios_mc(m: SphereModel, A: int, N: int, seed: int = 0,
                     workers: int | None = None) -> SphereRatios:
    """Monte Carlo ratios int sum_s (xi_s f)^2 / int f^2, int |grad_H f|^2 / int f^2 and
    int |grad^g f|^2 / int f^2 for f = x_A over uniform points of the sphere."""
    if not isinstance(N, (int, np.integer)) or N < 100_000:
        raise ValueError("sphere_ratios_mc needs N >= 10^5")
    if not 0 <= A < m.ambient_dim:
        raise ValueError(f"coordinate index out of range: {A}")
    sizes = [MC_CHUNK] * (N // MC_CHUNK) + ([N % MC_CHUNK] if N % MC_CHUNK else [])
    seqs = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = [(m.J, A, m.ambient_dim, sz, sq) for sz, sq in zip(sizes, seqs)]
    workers = workers or int(os.environ.get("QCVERIFY_WORKERS", "1"))
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            parts = list(ex.map(_ratio_chunk, jobs))
    else:
        parts = [_ratio_chunk(j) for j in jobs]
    f2, vert, hor, riem = (sum(p[i] for p in parts) for i in range(4))
    return SphereRatios(vert / f2, hor / f2, riem / f2, N)


def hessian_decomposition_residual(m: SphereModel, A: int, x) -> float:
    """For f = x_A: distance of the [3]/[-1] parts of the Hessian from
    -f g and -sum_s (xi_s f) omega_s."""
    f = coordinate_function(A)
    d = biquard_hessian_data(m, f, x)
    dec = hessian_sp_decompose(d.frame.triple(), d.hessian)
    fx = float(x[A])
    want3 = -fx * np.eye(m.hdim)
    wantm1 = -sum(d.xi_f[s] * d.frame.omega[s] for s in range(3))
    return float(max(np.max(np.abs(dec.part3 - want3)), np.max(np.abs(dec.partm1 - wantm1))))
