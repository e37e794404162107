"""Quaternions and the hypercomplex triple (I1, I2, I3) on H^n = R^{4n}.

Coordinates of H^n are ordered ``(t_1, x_1, y_1, z_1, ..., t_n, x_n, y_n, z_n)``
where ``q_a = t_a + x_a i + y_a j + z_a k``.  The complex structures act by
multiplication with the unit quaternions; :data:`CHIRALITY` selects the side.
With ``"left"`` the basis vector of ``t_a`` is mapped by ``I_s`` onto the basis
vector of ``x_a, y_a, z_a`` respectively, so the coordinate ordering is already
the pattern ``e, I1 e, I2 e, I3 e``.  Every module that needs the triple takes it
from here, so flipping the constant flips the whole package consistently.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .rational import QQ, to_qq

#: ``"left"``: I_s q = u_s q.  ``"right"``: I_s q = q conj(u_s).  Both satisfy
#: I1 I2 = I3; they differ by an orientation of the horizontal frame.
CHIRALITY = "left"


@dataclass(frozen=True)
class Quat:
    w: object = 0
    x: object = 0
    y: object = 0
    z: object = 0

    def __post_init__(self):
        for name in ("w", "x", "y", "z"):
            object.__setattr__(self, name, to_qq(getattr(self, name)))

    def __add__(self, other):
        return Quat(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other):
        return Quat(self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self):
        return Quat(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if not isinstance(other, Quat):
            other = to_qq(other)
            return Quat(self.w * other, self.x * other, self.y * other, self.z * other)
        return quat_mul(self, other)

    __rmul__ = __mul__

    def conj(self):
        return Quat(self.w, -self.x, -self.y, -self.z)

    def norm2(self):
        return self.w**2 + self.x**2 + self.y**2 + self.z**2

    def as_tuple(self):
        return (self.w, self.x, self.y, self.z)

    def left_matrix(self):
        """4x4 matrix of ``p -> self * p`` on (w, x, y, z) coordinates."""
        w, x, y, z = self.as_tuple()
        return np.array([[w, -x, -y, -z],
                         [x, w, -z, y],
                         [y, z, w, -x],
                         [z, -y, x, w]], dtype=object)

    def right_matrix(self):
        """4x4 matrix of ``p -> p * self``."""
        w, x, y, z = self.as_tuple()
        return np.array([[w, -x, -y, -z],
                         [x, w, z, -y],
                         [y, -z, w, x],
                         [z, y, -x, w]], dtype=object)


ONE = Quat(1, 0, 0, 0)
I = Quat(0, 1, 0, 0)
J = Quat(0, 0, 1, 0)
K = Quat(0, 0, 0, 1)
UNITS = (I, J, K)


def quat_mul(a: Quat, b: Quat) -> Quat:
    """Hamilton product with ij = k."""
    return Quat(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )


def _unit_block(s, chirality):
    u = UNITS[s - 1]
    if chirality == "left":
        return u.left_matrix()
    if chirality == "right":
        return u.conj().right_matrix()
    raise ValueError(f"unknown chirality {chirality!r}")


@dataclass(frozen=True, eq=False)
class HypercomplexTriple:
    """Exact matrices of I1, I2, I3 on R^{4n}, the metric g = Id and the
    fundamental forms ``omega[s-1][a, b] = g(I_s e_a, e_b)``."""

    n: int
    I1: np.ndarray
    I2: np.ndarray
    I3: np.ndarray
    g: np.ndarray = field(repr=False)
    omega: tuple = field(repr=False)

    @property
    def dim(self):
        return 4 * self.n

    @property
    def Is(self):
        return (self.I1, self.I2, self.I3)

    def I(self, s):
        return self.Is[s - 1]

    def to_float(self) -> "HypercomplexTriple":
        """Lossy float copy (entries are 0, +-1, so nothing is actually lost)."""
        conv = lambda A: np.asarray(A, dtype=float)
        return HypercomplexTriple(self.n, conv(self.I1), conv(self.I2), conv(self.I3),
                                  conv(self.g), tuple(conv(w) for w in self.omega))

    def relation_residuals(self):
        """Named residual matrices of the quaternion relations; all vanish."""
        I1, I2, I3 = self.Is
        Id = self.g
        out = {}
        for s, A in enumerate(self.Is, 1):
            out[f"I{s}^2 = -Id"] = A.dot(A) + Id
            out[f"I{s}^T I{s} = Id"] = A.T.dot(A) - Id
            out[f"omega{s} antisymmetric"] = self.omega[s - 1] + self.omega[s - 1].T
        out["I1 I2 = I3"] = I1.dot(I2) - I3
        out["I2 I3 = I1"] = I2.dot(I3) - I1
        out["I3 I1 = I2"] = I3.dot(I1) - I2
        out["I2 I1 = -I3"] = I2.dot(I1) + I3
        out["I1 I2 I3 = -Id"] = I1.dot(I2).dot(I3) + Id
        return out

    def check(self):
        """Return the name of the first violated relation, or None."""
        for name, R in self.relation_residuals().items():
            if any(v != 0 for v in np.ravel(R)):
                return name
        return None


def make_hypercomplex_triple(n: int, chirality: str | None = None) -> HypercomplexTriple:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    chirality = CHIRALITY if chirality is None else chirality
    mats = []
    for s in (1, 2, 3):
        block = _unit_block(s, chirality)
        A = np.zeros((4 * n, 4 * n), dtype=object)
        A[...] = 0
        for a in range(n):
            A[4 * a:4 * a + 4, 4 * a:4 * a + 4] = block
        mats.append(np.vectorize(int, otypes=[object])(A))
    g = np.zeros((4 * n, 4 * n), dtype=object)
    g[...] = 0
    for a in range(4 * n):
        g[a, a] = 1
    # g(I_s e_a, e_b) = (I_s)_{ba}
    omega = tuple(A.T.copy() for A in mats)
    return HypercomplexTriple(int(n), mats[0], mats[1], mats[2], g, omega)


def omega_form(t: HypercomplexTriple, s: int) -> np.ndarray:
    """Fundamental 2-form ``omega_s(X, Y) = g(I_s X, Y)`` as a 4n x 4n matrix."""
    if s not in (1, 2, 3):
        raise ValueError(f"s must be 1, 2 or 3, got {s!r}")
    return t.omega[s - 1].copy()


def as_form(P, n: int) -> np.ndarray:
    """Validate a bilinear form / endomorphism matrix of shape 4n x 4n.

    Float arrays stay float; anything else becomes an exact object array.
    """
    A = np.asarray(P)
    if A.shape[:2] != (4 * n, 4 * n) or A.ndim != 2:
        raise ValueError(f"expected a {4 * n}x{4 * n} matrix, got shape {A.shape}")
    if A.dtype.kind == "f":
        return A
    if A.dtype != object:
        A = A.astype(object)
    return A


def is_zero(A) -> bool:
    return all(v == 0 for v in np.ravel(A))


def frob2(A):
    """Squared Frobenius norm sum_ab A_ab^2 (exact for exact entries)."""
    A = np.asarray(A)
    if A.dtype.kind == "f":
        return float(np.sum(A * A))
    total = 0
    for v in np.ravel(A):
        total = total + v * v
    return total


def random_rational_matrix(rng: np.random.Generator, size: int, num=6, den=5) -> np.ndarray:
    """Random exact matrix with entries p/q, |p| <= num, 1 <= q <= den."""
    P = np.empty((size, size), dtype=object)
    for idx in np.ndindex(size, size):
        P[idx] = QQ(int(rng.integers(-num, num + 1)), int(rng.integers(1, den + 1)))
    return P


def random_quat(rng: np.random.Generator, num=9, den=7) -> Quat:
    return Quat(*(Fraction(int(rng.integers(-num, num + 1)), int(rng.integers(1, den + 1)))
                  for _ in range(4)))
