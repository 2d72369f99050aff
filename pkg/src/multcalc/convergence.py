"""Doubling schedules, Richardson extrapolation and order estimates.

A limit ``lim_{n -> oo} v_n`` is evaluated on ``n = 2^k`` for
``k = kmin..kmax``.  Consecutive deltas ``||v_{2n} - v_n||_F`` give an order
estimate, and first-order Richardson extrapolation ``2 v_{2n} - v_n`` gives
the reported limit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import DomainError
from .matgroup import Mat

# deltas below this (relative to the iterate size) count as exactly zero;
# repeated squaring up to n = 2^12 accumulates rounding near 1e-12
NOISE_FLOOR = 1e-10


@dataclass(frozen=True)
class Schedule:
    kmin: int = 2
    kmax: int = 12
    tol: float = 1e-3
    decay: float = 1.0

    def __post_init__(self):
        if not (0 <= self.kmin < self.kmax):
            raise DomainError("schedule needs 0 <= kmin < kmax")
        if not self.tol > 0:
            raise DomainError("schedule tolerance must be positive")
        if not self.decay > 0:
            raise DomainError("decay factor must be positive")

    @property
    def ns(self) -> tuple[int, ...]:
        return tuple(2 ** k for k in range(self.kmin, self.kmax + 1))

    def to_json(self) -> dict:
        return {"kmin": self.kmin, "kmax": self.kmax, "tol": self.tol}


def richardson(v_coarse, v_fine, order: int = 1):
    """Eliminate the leading ``h^order`` error term between ``h`` and ``h/2``."""
    f = 2 ** order
    return (v_fine * f - v_coarse) / (f - 1)


def order_from_deltas(deltas, floor: float = 0.0, levels: int = 3) -> float | None:
    """Mean of ``log2(d_k / d_{k+1})`` over the last ``levels`` ratios.

    Ratios whose deltas sit at or below ``floor`` carry no information and
    are skipped; ``None`` means no usable ratio was left.
    """
    ratios = []
    for a, b in zip(deltas[:-1], deltas[1:]):
        if a > floor and b > floor:
            ratios.append(math.log2(a / b))
        else:
            ratios.append(None)
    usable = [r for r in ratios[-levels:] if r is not None]
    if not usable:
        return None
    return sum(usable) / len(usable)


@dataclass(frozen=True)
class ConvergenceReport:
    """Iterates over a doubling schedule together with their diagnostics."""

    ns: tuple[int, ...]
    values: tuple
    deltas: tuple[float, ...]
    limit: object
    order: float | None
    converged: bool
    tol: float
    reference: object = None

    @property
    def iterates(self):
        return list(zip(self.ns, self.values))

    @property
    def final_delta(self) -> float:
        return self.deltas[-1]

    @property
    def errors(self) -> tuple[float, ...] | None:
        """Distances of every iterate to the reference, when one was given."""
        if self.reference is None:
            return None
        return tuple(v.distance(self.reference) for v in self.values)

    @property
    def limit_error(self) -> float | None:
        if self.reference is None:
            return None
        return self.limit.distance(self.reference)

    def level_orders(self) -> list[float | None]:
        """Per-level ``log2(d_{k-1}/d_k)``; the first level has none."""
        out: list[float | None] = [None, None]
        for a, b in zip(self.deltas[:-1], self.deltas[1:]):
            out.append(math.log2(a / b) if a > 0 and b > 0 else None)
        return out[: len(self.ns)]

    def table(self) -> list[dict]:
        """Rows ``n, value_frobnorm, delta, order_est`` for CSV output."""
        deltas = [None] + list(self.deltas)
        orders = self.level_orders()
        return [
            {"n": n, "value_frobnorm": v.frobenius(), "delta": d, "order_est": p}
            for n, v, d, p in zip(self.ns, self.values, deltas, orders)
        ]

    def to_json(self) -> dict:
        out = {
            "ns": list(self.ns),
            "deltas": list(self.deltas),
            "order": self.order,
            "converged": self.converged,
            "tol": self.tol,
            "limit": self.limit.to_json(),
        }
        if self.reference is not None:
            out["reference"] = self.reference.to_json()
            out["errors"] = list(self.errors)
            out["limit_error"] = self.limit_error
        return out


def _monotone(deltas, floor: float) -> bool:
    tail = [max(d, floor) for d in deltas[-3:]]
    return all(b <= a for a, b in zip(tail[:-1], tail[1:]))


def run_schedule(
    fn: Callable[[int], Mat],
    schedule: Schedule,
    reference: Mat | None = None,
    order: int = 1,
) -> ConvergenceReport:
    """Evaluate ``fn(n)`` on the schedule and summarise the convergence.

    ``converged`` requires the deltas to be non-increasing over the last
    three levels and the final delta to be within the tolerance.
    """
    ns = schedule.ns
    values = tuple(fn(n) for n in ns)
    return report_from_values(ns, values, schedule, reference, order)


def report_from_values(ns, values, schedule: Schedule, reference=None, order: int = 1):
    deltas = tuple(b.distance(a) for a, b in zip(values[:-1], values[1:]))
    scale = max(1.0, max(v.frobenius() for v in values))
    floor = NOISE_FLOOR * scale
    est = order_from_deltas(deltas, floor)
    limit = richardson(values[-2], values[-1], order)
    final = deltas[-1]
    converged = _monotone(deltas, floor) and (final <= schedule.tol or final <= floor)
    return ConvergenceReport(ns, values, deltas, limit, est, converged, schedule.tol, reference)
