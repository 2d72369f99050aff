"""Two-sided identity checks reported as a distance between both sides."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .groups import Perm, SeqElt, SignedUnipotentElt
from .matgroup import Mat


def is_exact_element(x) -> bool:
    if isinstance(x, Mat):
        return x.exact
    if isinstance(x, SignedUnipotentElt):
        return x.body.exact
    if isinstance(x, SeqElt):
        return all(is_exact_element(g) for g in x.items) and is_exact_element(x.unit)
    if isinstance(x, Perm):
        return True
    return False


@dataclass(frozen=True)
class Residual:
    """Both sides of an identity and their distance.

    ``exact`` records whether both sides were computed in exact arithmetic,
    in which case ``distance == 0`` is equivalent to entrywise equality.
    """

    lhs: Any
    rhs: Any
    distance: float
    exact: bool

    @classmethod
    def between(cls, lhs, rhs) -> "Residual":
        return cls(lhs, rhs, float(lhs.distance(rhs)), is_exact_element(lhs) and is_exact_element(rhs))

    @property
    def is_zero(self) -> bool:
        return self.distance == 0.0

    def to_json(self) -> dict:
        return {
            "distance": self.distance,
            "exact": self.exact,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
        }
