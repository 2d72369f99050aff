"""Matrix-valued polynomial paths ``u(t) = sum_k C_k t^k`` with NilMat coefficients."""
from __future__ import annotations

from math import comb
from typing import Sequence

import numpy as np

from .errors import DegreeOverflow, DimensionMismatch, ModeMismatch
from .matgroup import NilMat, as_nilmat
from .scalars import convert

DEGREE_CAP = 16


class PolyPath:
    """Immutable polynomial path in the strictly upper-triangular algebra.

    Trailing zero coefficients are trimmed, so the zero path has no
    coefficients at all and degree -1.
    """

    __slots__ = ("_coeffs", "_dim", "_exact")

    def __init__(self, coeffs: Sequence, dim: int | None = None, exact: bool | None = None):
        cs = [as_nilmat(c) if not isinstance(c, NilMat) else c for c in coeffs]
        if dim is None:
            if not cs:
                raise DimensionMismatch("an empty path needs an explicit dim")
            dim = cs[0].dim
        if exact is None:
            exact = cs[0].exact if cs else True
        for c in cs:
            if c.dim != dim:
                raise DimensionMismatch("all coefficients must share one dimension")
            if c.exact != exact:
                raise ModeMismatch("mixed exact and float coefficients")
        while cs and cs[-1] == NilMat.zeros(dim, exact):
            cs.pop()
        if len(cs) - 1 > DEGREE_CAP:
            raise DegreeOverflow(f"degree {len(cs) - 1} exceeds the cap {DEGREE_CAP}")
        self._coeffs = tuple(cs)
        self._dim = dim
        self._exact = exact

    @classmethod
    def constant(cls, c: NilMat) -> "PolyPath":
        return cls([c], c.dim, c.exact)

    @classmethod
    def zero(cls, dim: int, exact: bool = True) -> "PolyPath":
        return cls([], dim, exact)

    @classmethod
    def monomial(cls, c: NilMat, k: int) -> "PolyPath":
        z = NilMat.zeros(c.dim, c.exact)
        return cls([z] * k + [c], c.dim, c.exact)

    @property
    def coeffs(self) -> tuple[NilMat, ...]:
        return self._coeffs

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def exact(self) -> bool:
        return self._exact

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def coeff(self, k: int) -> NilMat:
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return NilMat.zeros(self._dim, self._exact)

    def _zero(self) -> NilMat:
        return NilMat.zeros(self._dim, self._exact)

    def _check(self, other: "PolyPath") -> None:
        if other.dim != self.dim:
            raise DimensionMismatch(f"path dimensions {self.dim} and {other.dim} differ")
        if other.exact != self.exact:
            raise ModeMismatch("exact and float paths cannot be combined")

    def __call__(self, t) -> NilMat:
        return self.eval(t)

    def eval(self, t) -> NilMat:
        # Horner
        t = convert(t, self._exact)
        acc = self._zero()
        for c in reversed(self._coeffs):
            acc = acc * t + c
        return acc

    def eval_batch(self, ts: np.ndarray) -> np.ndarray:
        """Float evaluation at many times; returns an array ``(len(ts), d, d)``."""
        ts = np.asarray(ts, dtype=float)
        out = np.zeros((ts.shape[0], self._dim, self._dim))
        for c in reversed(self._coeffs):
            out = out * ts[:, None, None] + c.to_float().array
        return out

    def __add__(self, other: "PolyPath") -> "PolyPath":
        self._check(other)
        n = max(len(self._coeffs), len(other._coeffs))
        return PolyPath([self.coeff(k) + other.coeff(k) for k in range(n)], self._dim, self._exact)

    def __sub__(self, other: "PolyPath") -> "PolyPath":
        return self + (-other)

    def __neg__(self) -> "PolyPath":
        return PolyPath([-c for c in self._coeffs], self._dim, self._exact)

    def __mul__(self, s) -> "PolyPath":
        return PolyPath([c * s for c in self._coeffs], self._dim, self._exact)

    __rmul__ = __mul__

    def __truediv__(self, s) -> "PolyPath":
        return PolyPath([c / s for c in self._coeffs], self._dim, self._exact)

    def __eq__(self, other):
        if not isinstance(other, PolyPath):
            return NotImplemented
        return self._dim == other._dim and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self._dim, self._coeffs))

    def bracket(self, other: "PolyPath") -> "PolyPath":
        """Pointwise commutator; coefficient of ``t^m`` is ``sum_{i+j=m} [C_i, D_j]``."""
        self._check(other)
        if not self._coeffs or not other._coeffs:
            return PolyPath.zero(self._dim, self._exact)
        n = len(self._coeffs) + len(other._coeffs) - 1
        out = [self._zero() for _ in range(n)]
        for i, c in enumerate(self._coeffs):
            for j, d in enumerate(other._coeffs):
                out[i + j] = out[i + j] + c.bracket(d)
        while out and out[-1] == self._zero():
            out.pop()
        return PolyPath(out, self._dim, self._exact)

    def conjugate_by(self, w: "PolyPath") -> "PolyPath":
        """Pointwise ``Ad_{exp w(t)} self(t) = sum_k ad_w^k(self)/k!`` (finite)."""
        self._check(w)
        term = self
        acc = self
        for k in range(1, self._dim):
            term = _div(w.bracket(term), k)
            acc = acc + term
        return acc

    def antiderivative(self) -> "PolyPath":
        """Antiderivative with zero constant term."""
        out = [self._zero()] + [c / (k + 1) for k, c in enumerate(self._coeffs)]
        return PolyPath(out if self._coeffs else [], self._dim, self._exact)

    def derivative(self) -> "PolyPath":
        return PolyPath([c * k for k, c in enumerate(self._coeffs)][1:], self._dim, self._exact)

    def shift(self, y) -> "PolyPath":
        """The path ``t -> self(t + y)``, expanded binomially."""
        y = convert(y, self._exact)
        n = len(self._coeffs)
        out = [self._zero() for _ in range(n)]
        for k, c in enumerate(self._coeffs):
            # (t + y)^k = sum_j binom(k, j) y^(k-j) t^j
            for j in range(k + 1):
                out[j] = out[j] + c * (comb(k, j) * y ** (k - j))
        return PolyPath(out, self._dim, self._exact)

    def to_float(self) -> "PolyPath":
        return PolyPath([c.to_float() for c in self._coeffs], self._dim, False)

    def to_exact(self) -> "PolyPath":
        return PolyPath([c.to_exact() for c in self._coeffs], self._dim, True)

    def to_json(self) -> dict:
        return {"dim": self._dim, "coeffs": [c.to_json() for c in self._coeffs]}

    def __repr__(self):
        terms = ", ".join(repr(c) for c in self._coeffs)
        return f"PolyPath(dim={self._dim}, [{terms}])"


def _div(p: PolyPath, k: int) -> PolyPath:
    return p / k


def bracket(p: PolyPath, q: PolyPath) -> PolyPath:
    return p.bracket(q)


def antiderivative(p: PolyPath) -> PolyPath:
    return p.antiderivative()


def derivative(p: PolyPath) -> PolyPath:
    return p.derivative()
