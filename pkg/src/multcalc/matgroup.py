"""Small dense matrices, the nilpotent/unipotent exact kernel and matrix exp/log.

Two scalar modes share one code path.  Exact matrices hold ``gmpy2.mpq``
entries in numpy object arrays, float matrices hold ``float64``.  Mixing the
two in a single operation raises :class:`ModeMismatch`.

The group law of every matrix type is ``@``; ``inverse()`` and ``identity()``
complete the group interface shared with the other element types in
:mod:`multcalc.groups`.
"""
from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, DomainError, ModeMismatch
from .scalars import ONE, ZERO, convert, format_scalar, is_exact_scalar, to_exact

MAX_DIM = 8


def _infer_exact(rows) -> bool:
    return all(is_exact_scalar(x) for row in rows for x in row)


class Mat:
    """Immutable square matrix over the rationals or the floats."""

    __slots__ = ("_a",)
    _sum_closed = True
    _product_closed = True
    _scalar_closed = True

    def __init__(self, rows: Sequence[Sequence] | np.ndarray, exact: bool | None = None):
        if isinstance(rows, Mat):
            rows = rows.rows
        if isinstance(rows, np.ndarray):
            if exact is None:
                exact = rows.dtype == object
            rows = rows.tolist()
        rows = [list(r) for r in rows]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise DimensionMismatch("matrix must be square and non-empty")
        if n > MAX_DIM:
            raise DimensionMismatch(f"dimension {n} exceeds the cap {MAX_DIM}")
        if exact is None:
            exact = _infer_exact(rows)
        if exact:
            arr = np.empty((n, n), dtype=object)
            for i, r in enumerate(rows):
                for j, x in enumerate(r):
                    arr[i, j] = to_exact(x)
        else:
            arr = np.array([[convert(x, False) for x in r] for r in rows], dtype=float)
        self._validate(arr)
        arr.flags.writeable = False
        self._a = arr

    @classmethod
    def _wrap(cls, arr: np.ndarray):
        obj = object.__new__(cls)
        if arr.flags.writeable:
            arr.flags.writeable = False
        obj._a = arr
        return obj

    @classmethod
    def _validate(cls, arr: np.ndarray) -> None:
        if arr.dtype != object and not np.all(np.isfinite(arr)):
            raise DomainError("matrix entries must be finite")

    # construction helpers
    @classmethod
    def identity_of(cls, dim: int, exact: bool = True):
        arr = _eye(dim, exact)
        return cls._wrap(arr)

    @classmethod
    def zeros(cls, dim: int, exact: bool = True):
        return cls._wrap(_zeros(dim, exact))

    # basic properties
    @property
    def dim(self) -> int:
        return self._a.shape[0]

    @property
    def exact(self) -> bool:
        return self._a.dtype == object

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the underlying array."""
        return self._a

    @property
    def rows(self) -> list[list]:
        return self._a.tolist()

    def __getitem__(self, ij):
        return self._a[ij]

    def to_float(self) -> "Mat":
        if not self.exact:
            return self
        return type(self)._wrap(self._a.astype(float))

    def to_exact(self) -> "Mat":
        if self.exact:
            return self
        arr = np.empty(self._a.shape, dtype=object)
        for idx, x in np.ndenumerate(self._a):
            arr[idx] = to_exact(float(x))
        return type(self)._wrap(arr)

    def as_mat(self) -> "Mat":
        return Mat._wrap(self._a)

    # arithmetic
    def _check(self, other: "Mat") -> None:
        if other.dim != self.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")
        if other.exact != self.exact:
            raise ModeMismatch("exact and float matrices cannot be combined")

    def _result_cls(self, other, closed_attr: str):
        if type(self) is type(other) and getattr(type(self), closed_attr):
            return type(self)
        return Mat

    def __add__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        self._check(other)
        return self._result_cls(other, "_sum_closed")._wrap(self._a + other._a)

    def __sub__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        self._check(other)
        return self._result_cls(other, "_sum_closed")._wrap(self._a - other._a)

    def __neg__(self):
        cls = type(self) if type(self)._scalar_closed else Mat
        return cls._wrap(-self._a)

    def __mul__(self, s):
        if isinstance(s, Mat):
            raise TypeError("use @ for matrix products")
        cls = type(self) if type(self)._scalar_closed else Mat
        return cls._wrap(self._a * convert(s, self.exact))

    __rmul__ = __mul__

    def __truediv__(self, s):
        if isinstance(s, Mat):
            return NotImplemented
        s = convert(s, self.exact)
        if s == 0:
            raise ZeroDivisionError("division of a matrix by zero")
        cls = type(self) if type(self)._scalar_closed else Mat
        return cls._wrap(self._a / s)

    def __matmul__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        self._check(other)
        return self._result_cls(other, "_product_closed")._wrap(self._a @ other._a)

    def bracket(self, other: "Mat") -> "Mat":
        """Commutator ``[self, other] = self@other - other@self``."""
        self._check(other)
        cls = NilMat if isinstance(self, NilMat) and isinstance(other, NilMat) else Mat
        return cls._wrap(self._a @ other._a - other._a @ self._a)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.dim == other.dim and bool(np.all(self._a == other._a))

    def __hash__(self):
        return hash(tuple(self._a.ravel().tolist()))

    def frobenius(self) -> float:
        if self.exact:
            s = sum((x * x for x in self._a.ravel()), ZERO)
            return math.sqrt(float(s))
        return float(np.linalg.norm(self._a))

    def distance(self, other: "Mat") -> float:
        """Frobenius distance; exactly 0.0 iff the matrices are equal."""
        self._check(other)
        return Mat._wrap(self._a - other._a).frobenius()

    # group interface
    def identity(self) -> "Mat":
        return Mat.identity_of(self.dim, self.exact)

    def inverse(self) -> "Mat":
        if self.exact:
            return Mat._wrap(_exact_inverse(self._a))
        try:
            inv = np.linalg.inv(self._a)
        except np.linalg.LinAlgError as exc:
            raise DomainError("matrix is singular") from exc
        return Mat._wrap(inv)

    def is_strictly_upper(self) -> bool:
        n = self.dim
        return all(self._a[i, j] == 0 for i in range(n) for j in range(i + 1))

    def is_unipotent(self) -> bool:
        n = self.dim
        return all(self._a[i, i] == 1 for i in range(n)) and all(
            self._a[i, j] == 0 for i in range(n) for j in range(i)
        )

    def to_json(self) -> dict:
        return {"dim": self.dim, "rows": [[format_scalar(x) for x in r] for r in self._a.tolist()]}

    def __repr__(self):
        name = type(self).__name__
        body = [[format_scalar(x) for x in r] for r in self._a.tolist()]
        return f"{name}({body})"


class NilMat(Mat):
    """Strictly upper-triangular matrix, an element of the nilpotent Lie algebra."""

    __slots__ = ()

    @classmethod
    def _validate(cls, arr):
        super()._validate(arr)
        n = arr.shape[0]
        for i in range(n):
            for j in range(i + 1):
                if arr[i, j] != 0:
                    raise DomainError("NilMat entries on or below the diagonal must vanish")


class UnipotentElt(Mat):
    """Unit upper-triangular matrix ``I + N`` with ``N`` strictly upper."""

    __slots__ = ()
    _sum_closed = False
    _scalar_closed = False

    @classmethod
    def _validate(cls, arr):
        super()._validate(arr)
        n = arr.shape[0]
        for i in range(n):
            if arr[i, i] != 1:
                raise DomainError("unipotent elements need a unit diagonal")
            for j in range(i):
                if arr[i, j] != 0:
                    raise DomainError("unipotent elements are upper triangular")

    def nilpart(self) -> NilMat:
        return NilMat._wrap(self._a - _eye(self.dim, self.exact))

    def inverse(self) -> "UnipotentElt":
        if self.dim == 3:
            a, b, c = self._a[0, 1], self._a[1, 2], self._a[0, 2]
            out = _eye(3, self.exact)
            out[0, 1], out[1, 2], out[0, 2] = -a, -b, a * b - c
            return UnipotentElt._wrap(out)
        # (I+N)^{-1} = I - N + N^2 - ..., finite because N^dim = 0
        n = self._a - _eye(self.dim, self.exact)
        term = _eye(self.dim, self.exact)
        acc = term.copy()
        for _ in range(1, self.dim):
            term = -(term @ n)
            acc = acc + term
        return UnipotentElt._wrap(acc)

    def identity(self) -> "UnipotentElt":
        return UnipotentElt.identity_of(self.dim, self.exact)

    def log(self) -> NilMat:
        return log_unipotent(self)

    def power(self, r) -> "UnipotentElt":
        return power_real(self, r)


_EYE_EXACT: dict[int, np.ndarray] = {}


def _eye(dim: int, exact: bool) -> np.ndarray:
    """Fresh identity array."""
    if not exact:
        return np.eye(dim)
    if dim not in _EYE_EXACT:
        arr = np.full((dim, dim), ZERO, dtype=object)
        for i in range(dim):
            arr[i, i] = ONE
        _EYE_EXACT[dim] = arr
    return _EYE_EXACT[dim].copy()


def _zeros(dim: int, exact: bool) -> np.ndarray:
    return np.full((dim, dim), ZERO, dtype=object) if exact else np.zeros((dim, dim))


def _exact_inverse(a: np.ndarray) -> np.ndarray:
    # Gauss-Jordan over the rationals
    n = a.shape[0]
    m = np.concatenate([a.copy(), _eye(n, True)], axis=1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r, col] != 0), None)
        if piv is None:
            raise DomainError("matrix is singular")
        if piv != col:
            m[[col, piv]] = m[[piv, col]]
        m[col] = m[col] / m[col, col]
        for r in range(n):
            if r != col and m[r, col] != 0:
                m[r] = m[r] - m[r, col] * m[col]
    return m[:, n:].copy()


# constructors --------------------------------------------------------------

def identity(dim: int, exact: bool = True) -> UnipotentElt:
    return UnipotentElt.identity_of(dim, exact)


def basis(i: int, j: int, dim: int = 3, exact: bool = True) -> Mat:
    """Matrix unit ``E_ij`` (1-based).  Strictly upper units come back as NilMat."""
    if not (1 <= i <= dim and 1 <= j <= dim):
        raise DimensionMismatch(f"E{i}{j} does not fit in dimension {dim}")
    arr = _zeros(dim, exact)
    arr[i - 1, j - 1] = ONE if exact else 1.0
    return NilMat._wrap(arr) if i < j else Mat._wrap(arr)


def nil3(a, b, c, exact: bool | None = None) -> NilMat:
    """``a E12 + b E23 + c E13`` in the 3x3 strictly upper algebra."""
    if exact is None:
        exact = all(is_exact_scalar(x) for x in (a, b, c))
    z = ZERO if exact else 0.0
    return NilMat([[z, a, c], [z, z, b], [z, z, z]], exact=exact)


def heis(a, b, c, exact: bool | None = None) -> UnipotentElt:
    """Heisenberg element with entries (1,2)=a, (2,3)=b, (1,3)=c."""
    if exact is None:
        exact = all(is_exact_scalar(x) for x in (a, b, c))
    arr = _eye(3, exact)
    arr[0, 1], arr[1, 2], arr[0, 2] = (convert(x, exact) for x in (a, b, c))
    if not exact and not np.all(np.isfinite(arr)):
        raise DomainError("matrix entries must be finite")
    return UnipotentElt._wrap(arr)


def coords3(m: Mat) -> tuple:
    """Coordinates ``(a, b, c)`` read from positions (1,2), (2,3), (1,3)."""
    if m.dim != 3:
        raise DimensionMismatch("coordinates are defined for dimension 3")
    return (m[0, 1], m[1, 2], m[0, 2])


def as_unipotent(g: Mat) -> UnipotentElt:
    if isinstance(g, UnipotentElt):
        return g
    if not isinstance(g, Mat) or not g.is_unipotent():
        raise DomainError("expected a unipotent matrix")
    return UnipotentElt._wrap(g.array)


def as_nilmat(x: Mat) -> NilMat:
    if isinstance(x, NilMat):
        return x
    if not isinstance(x, Mat) or not x.is_strictly_upper():
        raise DomainError("expected a strictly upper-triangular matrix")
    return NilMat._wrap(x.array)


# exact kernel --------------------------------------------------------------

def exp_nilpotent(x: Mat) -> UnipotentElt:
    """Finite exponential series of a strictly upper-triangular matrix."""
    x = as_nilmat(x)
    a = x.array
    term = _eye(x.dim, x.exact)
    acc = term.copy()
    for k in range(1, x.dim):
        term = (term @ a) / k
        acc = acc + term
    return UnipotentElt._wrap(acc)


def log_unipotent(g: Mat) -> NilMat:
    """Finite Mercator series ``sum (-1)^(k+1) N^k / k`` for ``g = I + N``."""
    g = as_unipotent(g)
    n = g.array - _eye(g.dim, g.exact)
    term = n
    acc = n.copy()
    for k in range(2, g.dim):
        term = term @ n
        acc = acc + term * ((-1) ** (k + 1)) / k
    return NilMat._wrap(acc)


def power_real(g: Mat, r) -> UnipotentElt:
    """``g**r = exp(r log g)`` along the one-parameter subgroup through ``g``."""
    g = as_unipotent(g)
    return exp_nilpotent(log_unipotent(g) * r)


# general matrices ----------------------------------------------------------

_TAYLOR_TERMS = 30


def exp_general(x: Mat) -> Mat:
    """Matrix exponential by scaling and squaring a truncated Taylor series.

    Exact strictly upper input is handled by the finite series and stays
    exact; any other input is evaluated in floating point.
    """
    if x.exact:
        if x.is_strictly_upper():
            return exp_nilpotent(x)
        x = x.to_float()
    a = x.array
    if x.is_strictly_upper():
        return exp_nilpotent(x)
    norm = float(np.linalg.norm(a, 1))
    s = max(0, math.ceil(math.log2(norm / 0.5))) if norm > 0.5 else 0
    if s > 1000:
        raise DomainError("matrix norm too large for the exponential")
    b = a / (2.0 ** s)
    term = np.eye(x.dim)
    acc = term.copy()
    for k in range(1, _TAYLOR_TERMS):
        term = term @ b / k
        acc = acc + term
        if np.linalg.norm(term, 1) <= 1e-18 * np.linalg.norm(acc, 1):
            break
    for _ in range(s):
        acc = acc @ acc
    if not np.all(np.isfinite(acc)):
        raise DomainError("matrix exponential overflowed")
    return Mat._wrap(acc)


def log_near_identity(g: Mat) -> Mat:
    """Principal logarithm for unipotent ``g`` or for ``||g - I||_2 < 1``."""
    if g.is_unipotent():
        return log_unipotent(g)
    gf = g.to_float().array
    if float(np.linalg.norm(gf - np.eye(g.dim), 2)) >= 1.0:
        raise DomainError("log_near_identity needs ||g - I|| < 1 or a unipotent g")
    out = scipy.linalg.logm(gf)
    out = np.real_if_close(out, tol=1000)
    if np.iscomplexobj(out):
        raise DomainError("logarithm is not real")
    return Mat._wrap(np.asarray(out, dtype=float))


# batched float helpers (used by the sampling engines) ---------------------

def exp_nilpotent_batch(x: np.ndarray) -> np.ndarray:
    """Exponentials of a stack ``(m, d, d)`` of strictly upper float matrices."""
    d = x.shape[-1]
    term = np.broadcast_to(np.eye(d), x.shape).copy()
    acc = term.copy()
    for k in range(1, d):
        term = term @ x / k
        acc += term
    return acc


def log_unipotent_batch(g: np.ndarray) -> np.ndarray:
    d = g.shape[-1]
    n = g - np.eye(d)
    term = n
    acc = n.copy()
    for k in range(2, d):
        term = term @ n
        acc += ((-1) ** (k + 1)) / k * term
    return acc


def ordered_product(factors: np.ndarray) -> np.ndarray:
    """Product ``F[0] @ F[1] @ ... @ F[m-1]`` of a stack, by pairwise reduction."""
    f = factors
    if f.shape[0] == 0:
        raise ValueError("empty product needs an explicit identity")
    while f.shape[0] > 1:
        m = f.shape[0]
        paired = f[0:m - 1:2] @ f[1:m:2]
        if m % 2:
            paired = np.concatenate([paired, f[m - 1:m]], axis=0)
        f = paired
    return f[0]


def stack_mats(mats: Iterable[Mat]) -> np.ndarray:
    return np.stack([m.to_float().array for m in mats])
