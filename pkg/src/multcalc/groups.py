"""Group instances beyond plain matrices.

Every element type here follows the same small interface as the matrix
types: ``a @ b`` is the group product, ``a.inverse()``, ``a.identity()`` and
``a.distance(b)`` (zero exactly when the elements are equal).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Any

from .errors import DimensionMismatch, DomainError, SupportOverflow
from .matgroup import Mat, UnipotentElt, as_unipotent

SUPPORT_CAP = 64


def mul(a, b):
    """Group product, with an explicit check that both factors share a group."""
    if type(a) is not type(b) and not (isinstance(a, Mat) and isinstance(b, Mat)):
        raise DimensionMismatch(f"cannot multiply {type(a).__name__} by {type(b).__name__}")
    return a @ b


def distance(a, b) -> float:
    return a.distance(b)


@dataclass(frozen=True)
class SignedUnipotentElt:
    """``sign * body`` with ``sign`` in {+1, -1} and a unipotent body."""

    sign: int
    body: UnipotentElt

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError("sign must be +1 or -1")
        object.__setattr__(self, "body", as_unipotent(self.body))

    def __matmul__(self, other):
        if not isinstance(other, SignedUnipotentElt):
            return NotImplemented
        return SignedUnipotentElt(self.sign * other.sign, self.body @ other.body)

    def inverse(self) -> "SignedUnipotentElt":
        return SignedUnipotentElt(self.sign, self.body.inverse())

    def identity(self) -> "SignedUnipotentElt":
        return SignedUnipotentElt(1, self.body.identity())

    def matrix(self) -> Mat:
        return self.body * self.sign

    def distance(self, other: "SignedUnipotentElt") -> float:
        return self.matrix().distance(other.matrix())

    def to_json(self) -> dict:
        return {"sign": self.sign, "body": self.body.to_json()}


@dataclass(frozen=True)
class Perm:
    """Permutation of ``{0..n-1}``; ``(p @ q)(i) = p(q(i))``."""

    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(i) for i in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise DomainError(f"{imgs} is not a permutation")
        object.__setattr__(self, "images", imgs)

    def __matmul__(self, other):
        if not isinstance(other, Perm):
            return NotImplemented
        if len(other.images) != len(self.images):
            raise DimensionMismatch("permutations of different degree")
        return Perm(tuple(self.images[i] for i in other.images))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def identity(self) -> "Perm":
        return Perm(tuple(range(len(self.images))))

    def distance(self, other: "Perm") -> float:
        # discrete metric
        return 0.0 if self == other else 1.0

    def to_json(self) -> list[int]:
        return list(self.images)


def symmetric_group(n: int) -> list[Perm]:
    return [Perm(p) for p in permutations(range(n))]


@dataclass(frozen=True)
class SeqElt:
    """Finitely supported sequence ``(g_0, g_1, ...)`` over a base group.

    Components past the stored ones equal ``unit``.  Trailing identities are
    trimmed so equal sequences compare equal.
    """

    items: tuple[Any, ...]
    unit: Any

    def __post_init__(self):
        items = tuple(self.items)
        while items and items[-1] == self.unit:
            items = items[:-1]
        if len(items) > SUPPORT_CAP:
            raise SupportOverflow(f"support {len(items)} exceeds the cap {SUPPORT_CAP}")
        object.__setattr__(self, "items", items)

    @property
    def support(self) -> int:
        return len(self.items)

    def component(self, i: int):
        return self.items[i] if i < len(self.items) else self.unit

    def _check(self, other: "SeqElt") -> None:
        if self.unit != other.unit:
            raise DimensionMismatch("sequences over different base groups")

    def __matmul__(self, other):
        if not isinstance(other, SeqElt):
            return NotImplemented
        self._check(other)
        n = max(self.support, other.support)
        return SeqElt(tuple(self.component(i) @ other.component(i) for i in range(n)), self.unit)

    def inverse(self) -> "SeqElt":
        return SeqElt(tuple(g.inverse() for g in self.items), self.unit)

    def identity(self) -> "SeqElt":
        return SeqElt((), self.unit)

    def head(self):
        return self.component(0)

    def tail(self) -> "SeqElt":
        return SeqElt(self.items[1:], self.unit)

    def prepend(self, g) -> "SeqElt":
        return SeqElt((g,) + self.items, self.unit)

    def distance(self, other: "SeqElt") -> float:
        self._check(other)
        n = max(self.support, other.support)
        return float(sum(self.component(i).distance(other.component(i)) for i in range(n)))

    def to_json(self) -> list:
        return [g.to_json() for g in self.items]
