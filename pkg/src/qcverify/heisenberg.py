"""Exact model of the flat quaternionic Heisenberg group G(H) = H^n x Im H.

Coordinates: ``u_0 .. u_{4n-1}`` are the horizontal coordinates
``(t_1, x_1, y_1, z_1, ..., z_n)`` and ``u_{4n+s-1} = v_s`` are the vertical
ones.  The left-invariant frame is

    e_a  = d/du_a + sum_s (sum_b omega_s(e_a, e_b) u_b) d/dv_s
    xi_s = REEB_SCALE * d/dv_s

which gives ``[e_a, e_b] = -2 sum_s omega_s(e_a, e_b) xi_s``.  The contact
forms are ``eta_s = (dv_s - sum_a c_{a,s} du_a) / REEB_SCALE``; the
normalisation ``eta_s(xi_k) = delta_sk`` together with ``d eta_s = 2 omega_s``
on H pins REEB_SCALE = 1 (see :func:`frame_structure_selfcheck`).

The Biquard connection of G(H) has this frame parallel, so second covariant
derivatives are iterated frame derivatives, ``nabla^2 f(A, B) = A(B f)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .decomposition import inner
from .poly import Poly, PolyVectorField, apply_field, bracket
from .quaternion import HypercomplexTriple, make_hypercomplex_triple
from .rational import QQ

REEB_SCALE = 1

FLAT_STRUCTURE = {"S": 0, "T0": 0, "U": 0, "Ric": 0, "tau": 0, "rho": 0, "alpha": 0}


def coordinate_names(n: int):
    names = [f"{c}{a}" for a in range(1, n + 1) for c in "txyz"]
    return names + ["v1", "v2", "v3"]


@dataclass(frozen=True, eq=False)
class GroupModel:
    n: int
    horizontal_frame: tuple
    reeb: tuple
    eta: tuple  # three 1-forms, each a list of nvars Poly coefficients
    triple: HypercomplexTriple
    structure: dict = field(default_factory=lambda: dict(FLAT_STRUCTURE))

    @property
    def nvars(self):
        return 4 * self.n + 3

    @property
    def hdim(self):
        return 4 * self.n

    def coord(self, name_or_index) -> Poly:
        """Coordinate function by index or name (``"t1"``, ``"x2"``, ``"v3"``...)."""
        i = name_or_index
        if isinstance(i, str):
            i = coordinate_names(self.n).index(i)
        return Poly.var(self.nvars, i)

    def const(self, c) -> Poly:
        return Poly.const(self.nvars, c)

    def field(self, name: str) -> PolyVectorField:
        """Frame field by name: ``"T1"``, ``"X1"``, ``"Y2"``, ``"Z1"``, ``"xi1"``."""
        if name.startswith("xi"):
            return self.reeb[int(name[2:]) - 1]
        k = "TXYZ".index(name[0])
        return self.horizontal_frame[4 * (int(name[1:]) - 1) + k]


@dataclass(frozen=True)
class SelfCheckReport:
    passed: bool
    first_failure: str | None
    checked: int


def build_group_model(n: int, triple: HypercomplexTriple | None = None) -> GroupModel:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    t = make_hypercomplex_triple(n) if triple is None else triple
    N = 4 * n + 3
    hd = 4 * n
    zero = Poly.zero(N)
    # c[a][s] = sum_b omega_s(e_a, e_b) u_b
    c = [[sum((t.omega[s][a, b] * Poly.var(N, b) for b in range(hd) if t.omega[s][a, b] != 0),
              zero) for s in range(3)] for a in range(hd)]
    names = coordinate_names(n)
    frame = []
    for a in range(hd):
        coeffs = [zero] * N
        coeffs[a] = Poly.const(N, 1)
        for s in range(3):
            coeffs[hd + s] = c[a][s]
        frame.append(PolyVectorField(coeffs, name=names[a].upper()))
    reeb = []
    eta = []
    for s in range(3):
        coeffs = [zero] * N
        coeffs[hd + s] = Poly.const(N, REEB_SCALE)
        reeb.append(PolyVectorField(coeffs, name=f"xi{s + 1}"))
        form = [zero] * N
        form[hd + s] = Poly.const(N, QQ(1, REEB_SCALE))
        for a in range(hd):
            form[a] = c[a][s] * QQ(-1, REEB_SCALE)
        eta.append(form)
    model = GroupModel(n, tuple(frame), tuple(reeb), tuple(eta), t)
    report = frame_structure_selfcheck(model)
    if not report.passed:
        raise AssertionError(f"frame structure self-check failed: {report.first_failure}")
    return model


def _d_eta(m: GroupModel, s: int, A: PolyVectorField, B: PolyVectorField) -> Poly:
    """d eta_s(A, B) = A(eta_s(B)) - B(eta_s(A)) - eta_s([A, B])."""
    form = m.eta[s]
    return apply_field(A, B.contract(form)) - apply_field(B, A.contract(form)) \
        - bracket(A, B).contract(form)


def frame_structure_selfcheck(m: GroupModel) -> SelfCheckReport:
    """Recompute brackets and dual forms; report the first violated relation."""
    checked = 0
    hd = m.hdim
    E = m.horizontal_frame
    xi = m.reeb
    om = m.triple.omega

    def fail(name):
        return SelfCheckReport(False, name, checked)

    for s in range(3):
        for k in range(3):
            checked += 1
            if xi[k].contract(m.eta[s]) != (1 if s == k else 0):
                return fail(f"eta{s + 1}(xi{k + 1}) = delta")
        for a in range(hd):
            checked += 1
            if E[a].contract(m.eta[s]) != 0:
                return fail(f"eta{s + 1}({E[a].name}) = 0")
    for a in range(hd):
        for b in range(hd):
            checked += 1
            # horizontal components of the frame are the coordinate unit vectors
            if E[a].coeffs[b] != (1 if a == b else 0):
                return fail(f"orthonormal frame at {E[a].name}")
    for a in range(hd):
        for b in range(a + 1, hd):
            br = bracket(E[a], E[b])
            checked += 1
            if any(not br.coeffs[i].is_zero() for i in range(hd)):
                return fail(f"[{E[a].name},{E[b].name}] horizontal part = 0")
            expected = [Poly.zero(m.nvars)] * m.nvars
            for s in range(3):
                w = om[s][a, b]
                for i in range(m.nvars):
                    expected[i] = expected[i] + (-2 * w) * xi[s].coeffs[i]
            checked += 1
            if list(br.coeffs) != expected:
                return fail(f"[{E[a].name},{E[b].name}] = -2 sum_s omega_s xi_s")
            for s in range(3):
                checked += 1
                if _d_eta(m, s, E[a], E[b]) != 2 * om[s][a, b]:
                    return fail(f"d eta{s + 1}({E[a].name},{E[b].name}) = 2 omega{s + 1}")
    for a in range(hd):
        for s in range(3):
            checked += 1
            if not bracket(E[a], xi[s]).is_zero():
                return fail(f"[{E[a].name},xi{s + 1}] = 0")
            for k in range(3):
                checked += 1
                if _d_eta(m, k, xi[s], E[a]) != 0:
                    return fail(f"(xi{s + 1} _| d eta{k + 1})|H = 0")
    for s in range(3):
        for k in range(s + 1, 3):
            checked += 1
            if not bracket(xi[s], xi[k]).is_zero():
                return fail(f"[xi{s + 1},xi{k + 1}] = 0")
    bad = m.triple.check()
    checked += 1
    if bad is not None:
        return fail(bad)
    return SelfCheckReport(True, None, checked)


def with_rescaled_reeb(m: GroupModel, s: int, factor) -> GroupModel:
    """Copy of ``m`` with xi_s multiplied by ``factor`` (for negative tests)."""
    reeb = list(m.reeb)
    reeb[s - 1] = reeb[s - 1].scaled(factor)
    return replace(m, reeb=tuple(reeb))


# ---------------------------------------------------------------- calculus


def horizontal_gradient(m: GroupModel, f: Poly) -> list:
    return [apply_field(e, f) for e in m.horizontal_frame]


def horizontal_hessian(m: GroupModel, f: Poly, grad=None) -> np.ndarray:
    """Matrix with entries ``e_a(e_b f)``."""
    grad = horizontal_gradient(m, f) if grad is None else grad
    hd = m.hdim
    H = np.empty((hd, hd), dtype=object)
    for a in range(hd):
        for b in range(hd):
            H[a, b] = apply_field(m.horizontal_frame[a], grad[b])
    return H


def sub_laplacian(m: GroupModel, f: Poly) -> Poly:
    """Positive sub-Laplacian -sum_a e_a(e_a f)."""
    total = Poly.zero(m.nvars)
    for e in m.horizontal_frame:
        total = total - apply_field(e, apply_field(e, f))
    return total


def vertical_derivative(m: GroupModel, f: Poly, s: int) -> Poly:
    if s not in (1, 2, 3):
        raise ValueError(f"s must be 1, 2 or 3, got {s!r}")
    return apply_field(m.reeb[s - 1], f)


def grad_norm2(grad) -> Poly:
    return sum((g * g for g in grad[1:]), grad[0] * grad[0])


def check_trace_identity(m: GroupModel, f: Poly, H=None) -> list:
    """Residuals ``sum_a nabla^2 f(e_a, I_s e_a) + 4n xi_s f`` for s = 1, 2, 3."""
    H = horizontal_hessian(m, f) if H is None else H
    return [inner(H, m.triple.omega[s]) + 4 * m.n * vertical_derivative(m, f, s + 1)
            for s in range(3)]


@dataclass(frozen=True, eq=False)
class RicciResiduals:
    horizontal: np.ndarray  # (4n, 4n) Poly residuals of the order-two identity
    mixed: np.ndarray  # (4n, 3) residuals e_a(xi_s f) - xi_s(e_a f) - T(xi_s, e_a, grad f)

    def all_zero(self):
        return all(p.is_zero() for p in np.ravel(self.horizontal)) and \
            all(p.is_zero() for p in np.ravel(self.mixed))


def check_ricci_identities(m: GroupModel, f: Poly, H=None, grad=None) -> RicciResiduals:
    grad = horizontal_gradient(m, f) if grad is None else grad
    H = horizontal_hessian(m, f, grad) if H is None else H
    hd = m.hdim
    xif = [vertical_derivative(m, f, s) for s in (1, 2, 3)]
    om = m.triple.omega
    horiz = np.empty((hd, hd), dtype=object)
    for a in range(hd):
        for b in range(hd):
            r = H[a, b] - H[b, a]
            for s in range(3):
                w = om[s][a, b]
                if w:
                    r = r + (2 * w) * xif[s]
            horiz[a, b] = r
    # T(xi_s, .) = 0 on the flat group
    mixed = np.empty((hd, 3), dtype=object)
    for a in range(hd):
        for s in range(3):
            mixed[a, s] = apply_field(m.horizontal_frame[a], xif[s]) \
                - apply_field(m.reeb[s], grad[a])
    return RicciResiduals(horiz, mixed)


def xi_hessian_term(m: GroupModel, grad) -> Poly:
    """sum_s nabla^2 f(xi_s, I_s grad f) = sum_s sum_ab omega_s(e_a, e_b) (e_a f) xi_s(e_b f)."""
    total = Poly.zero(m.nvars)
    hd = m.hdim
    for s in range(3):
        xig = [apply_field(m.reeb[s], g) for g in grad]
        om = m.triple.omega[s]
        for a in range(hd):
            for b in range(hd):
                w = om[a, b]
                if w:
                    total = total + w * (grad[a] * xig[b])
    return total


def check_bochner_pointwise(m: GroupModel, f: Poly, form: str = "bohh") -> Poly:
    """Residual of the Bochner formula on G(H); zero polynomial for every f.

    With the positive sub-Laplacian the identity reads

        -1/2 Lap|grad f|^2 = |nabla^2 f|^2 - g(grad Lap f, grad f) + Ric(grad f, grad f)
                             + 2 sum_s T(xi_s, I_s grad f, grad f)
                             + 4 sum_s nabla^2 f(xi_s, I_s grad f)

    (the sign of the left side follows from expanding Lap|grad f|^2 directly).
    ``form="bohh"`` uses the torsion term 2 sum_s T(xi_s, I_s grad f, grad f);
    ``form="boh"`` uses its rewriting 2 T0(grad f, grad f) - 6 U(grad f, grad f).
    Curvature and torsion enter as multiples of g taken from ``m.structure``;
    on the flat group they are all zero.
    """
    grad = horizontal_gradient(m, f)
    H = horizontal_hessian(m, f, grad)
    lap = sub_laplacian(m, f)
    g2 = grad_norm2(grad)
    hess2 = sum((H[a, b] * H[a, b] for a in range(m.hdim) for b in range(m.hdim)),
                Poly.zero(m.nvars))
    dlap = sum((apply_field(e, lap) * g for e, g in zip(m.horizontal_frame, grad)),
               Poly.zero(m.nvars))
    st = m.structure
    if form == "bohh":
        torsion = 2 * QQ(st["T0"] - 3 * st["U"]) * g2
    elif form == "boh":
        torsion = (2 * QQ(st["T0"]) - 6 * QQ(st["U"])) * g2
    else:
        raise ValueError(f"unknown form {form!r}")
    rhs = hess2 - dlap + QQ(st["Ric"]) * g2 + torsion + 4 * xi_hessian_term(m, grad)
    return QQ(-1, 2) * sub_laplacian(m, g2) - rhs
