"""Exact sparse multivariate polynomials over Q and first-order differential
operators with polynomial coefficients.

A :class:`Poly` stores ``{exponent tuple: coefficient}`` with no zero
coefficients, so the zero polynomial is exactly the empty map.
"""
from __future__ import annotations

from collections import defaultdict

import numpy as np

from .rational import QQ, to_qq


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for mono, c in terms.items():
                if c != 0:
                    if len(mono) != nvars:
                        raise ValueError("monomial length does not match nvars")
                    clean[tuple(mono)] = to_qq(c)
        self.terms = clean

    # construction helpers
    @classmethod
    def _raw(cls, nvars, terms):
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def const(cls, nvars, c):
        c = to_qq(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c != 0 else {})

    @classmethod
    def var(cls, nvars, i, power=1):
        e = [0] * nvars
        e[i] = power
        return cls._raw(nvars, {tuple(e): QQ(1)})

    @classmethod
    def zero(cls, nvars):
        return cls._raw(nvars, {})

    # queries
    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            c = to_qq(other)
        except TypeError:
            return NotImplemented
        return self.terms == ({(0,) * self.nvars: c} if c != 0 else {})

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, QQ(0))

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        parts = []
        for mono, c in sorted(self.terms.items(), reverse=True):
            fac = "*".join(f"u{i}^{k}" if k > 1 else f"u{i}" for i, k in enumerate(mono) if k)
            parts.append(f"{c}*{fac}" if fac else f"{c}")
        return "Poly(" + " + ".join(parts) + ")"

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        return Poly.const(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = to_qq(other)
            if c == 0:
                return Poly.zero(self.nvars)
            return Poly._raw(self.nvars, {m: c * v for m, v in self.terms.items()})
        if other.nvars != self.nvars:
            raise ValueError("polynomials live in different rings")
        acc = defaultdict(QQ)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                acc[tuple(a + b for a, b in zip(m1, m2))] += c1 * c2
        return Poly._raw(self.nvars, {m: c for m, c in acc.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def diff(self, i: int) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            k = m[i]
            if k:
                mm = list(m)
                mm[i] = k - 1
                out[tuple(mm)] = c * k
        return Poly._raw(self.nvars, out)

    def __call__(self, x):
        """Float evaluation; ``x`` has shape (..., nvars)."""
        x = np.asarray(x, dtype=float)
        total = np.zeros(x.shape[:-1])
        for m, c in self.terms.items():
            term = np.full(x.shape[:-1], float(c))
            for i, k in enumerate(m):
                if k:
                    term = term * x[..., i] ** k
            total = total + term
        return total


class PolyVectorField:
    """``sum_i coeffs[i] * d/du_i`` with polynomial coefficients."""

    __slots__ = ("nvars", "coeffs", "name", "_support")

    def __init__(self, coeffs, name=""):
        self.coeffs = tuple(coeffs)
        self.nvars = len(self.coeffs)
        if any(c.nvars != self.nvars for c in self.coeffs):
            raise ValueError("coefficient rings do not match the field dimension")
        self.name = name
        self._support = [(i, c) for i, c in enumerate(self.coeffs) if not c.is_zero()]

    def __call__(self, f: Poly) -> Poly:
        return apply_field(self, f)

    def __repr__(self):
        return f"PolyVectorField({self.name or '?'})"

    def __eq__(self, other):
        return isinstance(other, PolyVectorField) and self.coeffs == other.coeffs

    __hash__ = None

    def scaled(self, c):
        return PolyVectorField([c * p for p in self.coeffs], self.name)

    def is_zero(self):
        return not self._support

    def contract(self, form):
        """Pair with a 1-form given as a coefficient list (sum_i form_i du_i)."""
        total = Poly.zero(self.nvars)
        for i, c in self._support:
            total = total + c * form[i]
        return total


def apply_field(V: PolyVectorField, f: Poly) -> Poly:
    """Directional derivative sum_i V_i * df/du_i."""
    if V.nvars != f.nvars:
        raise ValueError(f"field on {V.nvars} variables applied to polynomial on {f.nvars}")
    total = Poly.zero(f.nvars)
    for i, c in V._support:
        d = f.diff(i)
        if d:
            total = total + c * d
    return total


def bracket(V: PolyVectorField, W: PolyVectorField) -> PolyVectorField:
    """Lie bracket [V, W] = V(W_i) - W(V_i) componentwise."""
    if V.nvars != W.nvars:
        raise ValueError("fields on different spaces")
    return PolyVectorField([apply_field(V, wi) - apply_field(W, vi)
                            for vi, wi in zip(V.coeffs, W.coeffs)],
                           name=f"[{V.name},{W.name}]")


def random_poly(nvars: int, degree: int, rng: np.random.Generator, terms: int = 6,
                num: int = 5, den: int = 3) -> Poly:
    """Random polynomial of total degree <= ``degree`` with rational coefficients."""
    out = Poly.zero(nvars)
    for _ in range(terms):
        d = int(rng.integers(0, degree + 1))
        e = [0] * nvars
        for i in rng.integers(0, nvars, size=d):
            e[int(i)] += 1
        c = 0
        while c == 0:
            c = int(rng.integers(-num, num + 1))
        out = out + Poly._raw(nvars, {tuple(e): QQ(c, int(rng.integers(1, den + 1)))})
    return out
