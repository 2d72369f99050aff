"""Parametrized pairs ``(L_lam, H_lam)`` of group self-maps with ``L o H = id``."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping

from .errors import DomainError
from .groups import SeqElt, SignedUnipotentElt
from .matgroup import Mat, power_real
from .scalars import to_exact

KINDS = ("identity", "inverse", "power", "shift", "signed-power", "custom-table")

# (bijective, unital, inverse-preserving) for the kinds whose flags do not
# depend on data
_FLAGS = {
    "identity": (True, True, True),
    "inverse": (True, True, True),
    "power": (True, True, True),
    "shift": (False, True, True),
    "signed-power": (True, False, True),
}


def _scaled(lam, g: Mat):
    return to_exact(lam) if g.exact else float(lam)


@dataclass(frozen=True)
class PairWeightFamily:
    """A family of pair weights.

    ``lam`` is the default parameter; every map also accepts an explicit
    ``lam`` so limit schedules can sweep it.  For ``custom-table`` the maps
    are given as dictionaries over a finite carrier.
    """

    kind: str
    lam: Any = 1
    table_L: Mapping | None = field(default=None, compare=False)
    table_H: Mapping | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown pair-weight kind {self.kind!r}")
        if self.kind == "custom-table":
            if self.table_L is None or self.table_H is None:
                raise DomainError("custom-table families need both tables")
            carrier = set(self.table_L)
            if set(self.table_H) != carrier:
                raise DomainError("L and H tables must share one carrier")
            for g in carrier:
                if self.table_L[g] not in carrier or self.table_H[g] not in carrier:
                    raise DomainError("tables must map the carrier into itself")

    # flags ------------------------------------------------------------
    def _table_flags(self):
        carrier = list(self.table_L)
        e = next(g for g in carrier if g == g.identity())
        bij = len({self.table_L[g] for g in carrier}) == len(carrier)
        unital = self.table_L[e] == e and self.table_H[e] == e
        inv = all(
            self.table_L[g.inverse()] == self.table_L[g].inverse()
            and self.table_H[g.inverse()] == self.table_H[g].inverse()
            for g in carrier
        )
        return bij, unital, inv

    @property
    def flags(self) -> tuple[bool, bool, bool]:
        if self.kind == "custom-table":
            return self._table_flags()
        return _FLAGS[self.kind]

    @property
    def bijective(self) -> bool:
        return self.flags[0]

    @property
    def unital(self) -> bool:
        return self.flags[1]

    @property
    def inverse_preserving(self) -> bool:
        return self.flags[2]

    # domain -----------------------------------------------------------
    def in_domain(self, g) -> bool:
        """Membership in the subset on which ``L o H = id`` is claimed."""
        if self.kind in ("identity", "inverse"):
            return True
        if self.kind == "power":
            return isinstance(g, Mat) and g.is_unipotent()
        if self.kind == "shift":
            return isinstance(g, SeqElt)
        if self.kind == "signed-power":
            return isinstance(g, SignedUnipotentElt) and g.sign == -1
        return g in self.table_L

    # maps -------------------------------------------------------------
    def L(self, g, lam=None):
        lam = self.lam if lam is None else lam
        k = self.kind
        if k == "identity":
            return g
        if k == "inverse":
            return g.inverse()
        if k == "power":
            if lam == 0:
                return g.identity()
            return power_real(g, _scaled(lam, g))
        if k == "shift":
            if not isinstance(g, SeqElt):
                raise DomainError("shift family acts on SeqElt")
            return g.tail()
        if k == "signed-power":
            if not isinstance(g, SignedUnipotentElt):
                raise DomainError("signed-power family acts on SignedUnipotentElt")
            if lam == 0:
                return g.identity()
            # on S: P_lam(-I a); off S: -I P_lam(a); both flip the sign
            return SignedUnipotentElt(-g.sign, power_real(g.body, _scaled(lam, g.body)))
        return self._lookup(self.table_L, g)

    def H(self, g, lam=None):
        lam = self.lam if lam is None else lam
        k = self.kind
        if k == "identity":
            return g
        if k == "inverse":
            return g.inverse()
        if k == "power":
            if lam == 0:
                raise DomainError("H of the power family needs lam != 0")
            return power_real(g, 1 / _scaled(lam, g))
        if k == "shift":
            if not isinstance(g, SeqElt):
                raise DomainError("shift family acts on SeqElt")
            return g.prepend(g.unit)
        if k == "signed-power":
            if not isinstance(g, SignedUnipotentElt):
                raise DomainError("signed-power family acts on SignedUnipotentElt")
            if lam == 0:
                raise DomainError("H of the signed-power family needs lam != 0")
            return SignedUnipotentElt(-g.sign, power_real(g.body, 1 / _scaled(lam, g.body)))
        return self._lookup(self.table_H, g)

    @staticmethod
    def _lookup(table, g):
        try:
            return table[g]
        except KeyError:
            raise DomainError("element outside the table carrier") from None

    def with_lam(self, lam) -> "PairWeightFamily":
        return PairWeightFamily(self.kind, lam, self.table_L, self.table_H)


def apply_pair_weight(family: PairWeightFamily, which: str, lam, g):
    """Apply ``L_lam`` or ``H_lam`` of ``family`` to ``g``."""
    if which == "L":
        return family.L(g, lam)
    if which == "H":
        return family.H(g, lam)
    raise DomainError(f"which must be 'L' or 'H', not {which!r}")


IDENTITY = PairWeightFamily("identity")
INVERSE = PairWeightFamily("inverse")


def power_family(lam=1) -> PairWeightFamily:
    return PairWeightFamily("power", lam)
