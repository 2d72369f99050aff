"""Linear operators on small matrix Lie algebras, stored in coordinates.

A :class:`LieOperator` acts on the span of a fixed list of matrix units.
The Heisenberg algebra uses the ordered basis ``(E12, E23, E13)``, so a
coordinate vector ``(a, b, c)`` stands for ``a E12 + b E23 + c E13``.
Brackets are matrix commutators, which keeps the structure constants in one
place: matrix multiplication.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .convergence import Schedule
from .errors import DimensionMismatch, DomainError, ModeMismatch
from .matgroup import Mat, NilMat
from .scalars import ONE, ZERO, format_scalar, to_exact

# 0-based (row, col) positions
HEIS_BASIS = ((0, 1), (1, 2), (0, 2))
GL2_BASIS = ((0, 0), (0, 1), (1, 0), (1, 1))


def _matrix(rows, exact: bool) -> np.ndarray:
    rows = [list(r) for r in (rows.tolist() if isinstance(rows, np.ndarray) else rows)]
    if exact:
        arr = np.empty((len(rows), len(rows)), dtype=object)
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                arr[i, j] = to_exact(x)
        return arr
    return np.array(rows, dtype=float)


@dataclass(frozen=True, eq=False)
class LieOperator:
    """Linear map on ``span{E_p : p in basis}`` given by a coordinate matrix."""

    matrix: np.ndarray
    basis: tuple[tuple[int, int], ...] = HEIS_BASIS
    dim: int = 3

    def __post_init__(self):
        k = len(self.basis)
        if isinstance(self.matrix, np.ndarray):
            exact = self.matrix.dtype == object
        else:
            exact = all(not isinstance(x, float) for r in self.matrix for x in r)
        arr = _matrix(self.matrix, exact)
        if arr.shape != (k, k):
            raise DimensionMismatch(f"coordinate matrix must be {k}x{k}")
        arr.flags.writeable = False
        object.__setattr__(self, "matrix", arr)

    # constructors ------------------------------------------------------
    @classmethod
    def heisenberg(cls, rows) -> "LieOperator":
        return cls(rows)

    @classmethod
    def zero(cls, basis=HEIS_BASIS, dim: int = 3) -> "LieOperator":
        k = len(basis)
        return cls(np.full((k, k), ZERO, dtype=object), basis, dim)

    @classmethod
    def identity(cls, basis=HEIS_BASIS, dim: int = 3) -> "LieOperator":
        k = len(basis)
        m = np.full((k, k), ZERO, dtype=object)
        for i in range(k):
            m[i, i] = ONE
        return cls(m, basis, dim)

    @classmethod
    def from_linear_map(cls, fn, basis=HEIS_BASIS, dim: int = 3, exact: bool = True) -> "LieOperator":
        """Coordinate matrix of ``fn`` read off column by column on the basis."""
        probe = cls.zero(basis, dim)
        cols = [probe.coords(fn(probe.element(j, exact))) for j in range(len(basis))]
        arr = np.empty((len(basis), len(basis)), dtype=object if exact else float)
        for j, col in enumerate(cols):
            arr[:, j] = col
        return cls(arr, basis, dim)

    @classmethod
    def ad(cls, x: Mat) -> "LieOperator":
        """``ad_x = [x, .]`` on the Heisenberg algebra."""
        return cls.from_linear_map(lambda y: x.bracket(y), exact=x.exact)

    # coordinates --------------------------------------------------------
    @property
    def exact(self) -> bool:
        return self.matrix.dtype == object

    def element(self, j: int, exact: bool = True) -> Mat:
        """The ``j``-th basis matrix."""
        z = np.full((self.dim, self.dim), ZERO, dtype=object) if exact else np.zeros((self.dim, self.dim))
        z[self.basis[j]] = ONE if exact else 1.0
        return self._wrap(z)

    def basis_elements(self, exact: bool = True) -> list[Mat]:
        return [self.element(j, exact) for j in range(len(self.basis))]

    def _wrap(self, arr: np.ndarray) -> Mat:
        if all(i < j for i, j in self.basis):
            return NilMat._wrap(arr)
        return Mat._wrap(arr)

    def coords(self, u: Mat) -> np.ndarray:
        if u.dim != self.dim:
            raise DimensionMismatch(f"expected a {self.dim}x{self.dim} matrix")
        a = u.array
        covered = set(self.basis)
        for idx in np.ndindex(a.shape):
            if idx not in covered and a[idx] != 0:
                raise DomainError("matrix lies outside the operator's algebra")
        return np.array([a[p] for p in self.basis], dtype=a.dtype)

    def from_coords(self, vec: np.ndarray, exact: bool) -> Mat:
        z = np.full((self.dim, self.dim), ZERO, dtype=object) if exact else np.zeros((self.dim, self.dim))
        for p, x in zip(self.basis, vec):
            z[p] = x
        return self._wrap(z)

    def __call__(self, u: Mat) -> Mat:
        vec = self.coords(u)
        if u.exact and not self.exact:
            raise ModeMismatch("float operator applied to an exact matrix")
        m = self.matrix if u.exact else self.matrix.astype(float)
        return self.from_coords(m @ vec, u.exact)

    # structure ------------------------------------------------------------
    def is_center_stable(self) -> bool:
        """Image of ``E13`` stays in ``span{E13}`` (Heisenberg basis only)."""
        if self.basis != HEIS_BASIS:
            raise DomainError("center stability is defined for the Heisenberg basis")
        return self.matrix[0, 2] == 0 and self.matrix[1, 2] == 0

    def compose(self, other: "LieOperator") -> "LieOperator":
        return LieOperator(self.matrix @ other.matrix, self.basis, self.dim)

    def scaled(self, s) -> "LieOperator":
        s = to_exact(s) if self.exact else float(s)
        return LieOperator(self.matrix * s, self.basis, self.dim)

    def distance(self, other: "LieOperator") -> float:
        """Largest entrywise difference of the coordinate matrices."""
        d = self.matrix.astype(float) - other.matrix.astype(float)
        return float(np.max(np.abs(d)))

    def __eq__(self, other):
        if not isinstance(other, LieOperator):
            return NotImplemented
        return self.basis == other.basis and bool(np.all(self.matrix == other.matrix))

    def __hash__(self):
        return hash((self.basis, tuple(self.matrix.ravel().tolist())))

    def to_json(self) -> list[list]:
        return [[format_scalar(x) for x in r] for r in self.matrix.tolist()]


class LieDerivation(LieOperator):
    """A LieOperator meant to satisfy the Leibniz rule for brackets."""

    def is_derivation(self) -> bool:
        from .differential import lie_derivation_residual

        return all(
            lie_derivation_residual(self, ZERO_WEIGHT, u, v).is_zero
            for u in self.basis_elements(self.exact)
            for v in self.basis_elements(self.exact)
        )

    @classmethod
    def ad(cls, x: Mat) -> "LieDerivation":
        op = LieOperator.ad(x)
        return cls(op.matrix, op.basis, op.dim)


@dataclass(frozen=True)
class LieWeight:
    """Weight of a Lie-level identity.

    ``zero`` is the plain weight-zero identity, ``pair`` uses linear maps
    ``L`` and ``H``, ``limit`` sweeps ``L = id/n`` and ``H = n id`` along a
    schedule and extrapolates.
    """

    kind: str
    L: LieOperator | None = None
    H: LieOperator | None = None
    schedule: Schedule | None = None

    def __post_init__(self):
        if self.kind not in ("zero", "pair", "limit"):
            raise DomainError(f"unknown Lie weight {self.kind!r}")
        if self.kind == "pair" and (self.L is None or self.H is None):
            raise DomainError("pair weights need L and H")


ZERO_WEIGHT = LieWeight("zero")


def pair_weight(L: LieOperator, H: LieOperator) -> LieWeight:
    return LieWeight("pair", L, H)


def limit_weight(schedule: Schedule | None = None) -> LieWeight:
    return LieWeight("limit", schedule=schedule or Schedule(kmin=1, kmax=6))


def scalar_pair(n, basis=HEIS_BASIS, dim: int = 3) -> tuple[LieOperator, LieOperator]:
    """The linear pair ``(id/n, n id)``."""
    ident = LieOperator.identity(basis, dim)
    return ident.scaled(to_exact(1) / n), ident.scaled(n)


def heisenberg_basis(exact: bool = True) -> list[NilMat]:
    return LieOperator.zero().basis_elements(exact)


def basis_pairs(basis: Sequence[Mat]):
    return [(u, v) for u in basis for v in basis]
