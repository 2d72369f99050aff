"""Product integrals and multiplicative derivatives.

Numeric engines evaluate the defining limits on a doubling schedule.  Closed
forms cover the 3x3 strictly upper algebra, where every bracket is central
and the exponential of a path integral has a two-term expression.

Product integrals multiply factors in time-descending order: the factor of
the latest sample sits leftmost.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .convergence import ConvergenceReport, Schedule, report_from_values, run_schedule
from .errors import DimensionMismatch, DomainError
from .groups import SignedUnipotentElt
from .matgroup import (
    Mat,
    NilMat,
    UnipotentElt,
    as_nilmat,
    as_unipotent,
    exp_nilpotent,
    exp_nilpotent_batch,
    log_unipotent_batch,
    ordered_product,
    power_real,
)
from .polypath import PolyPath
from .residual import Residual
from .scalars import convert
from .weights import PairWeightFamily, power_family

RULES = ("right", "left", "midpoint")


@dataclass(frozen=True)
class Partition:
    """Uniform partition of ``[start, stop]`` into ``n`` cells with one tag each."""

    start: float
    stop: float
    n: int
    rule: str = "right"

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("a partition needs at least one cell")
        if self.rule not in RULES:
            raise DomainError(f"unknown sampling rule {self.rule!r}")

    @property
    def mesh(self) -> float:
        return (self.stop - self.start) / self.n

    def points(self) -> np.ndarray:
        return self.start + self.mesh * np.arange(self.n + 1)

    def tags(self) -> np.ndarray:
        """Sample points ``xi_1..xi_n`` in increasing time."""
        k = np.arange(1, self.n + 1, dtype=float)
        offset = {"right": 0.0, "left": 1.0, "midpoint": 0.5}[self.rule]
        return self.start + self.mesh * (k - offset)


def _check_dim3(*paths: PolyPath) -> None:
    for p in paths:
        if p.dim != 3:
            raise DimensionMismatch("closed forms are implemented for the 3x3 algebra only")


# numeric engines -----------------------------------------------------------

def _exp_path_value(a, t):
    if isinstance(a, PolyPath):
        return exp_nilpotent(a.to_float().eval(float(t)) if a.exact else a.eval(float(t)))
    return a(t)


def _product_once(a, family: PairWeightFamily, part: Partition, time_order: str):
    tags = part.tags()
    lam = part.mesh
    if time_order == "descending":
        tags = tags[::-1]
    elif time_order != "ascending":
        raise DomainError("time_order must be 'descending' or 'ascending'")
    if family.kind == "power":
        if isinstance(a, PolyPath):
            logs = lam * a.to_float().eval_batch(tags) if a.exact else lam * a.eval_batch(tags)
        else:
            samples = [as_unipotent(a(float(t))).to_float().array for t in tags]
            logs = lam * log_unipotent_batch(np.stack(samples))
        return UnipotentElt._wrap(ordered_product(exp_nilpotent_batch(logs)))
    factors = [family.L(_exp_path_value(a, float(t)), lam) for t in tags]
    acc = factors[0]
    for f in factors[1:]:
        acc = acc @ f
    return acc


def _as_matrix(x):
    return x.matrix() if isinstance(x, SignedUnipotentElt) else x


def product_integral_numeric(
    a,
    family: PairWeightFamily | None = None,
    interval: tuple[float, float] = (0.0, 1.0),
    schedule: Schedule | None = None,
    rule: str = "right",
    time_order: str = "descending",
    reference: Mat | None = None,
) -> ConvergenceReport:
    """Riemann products ``prod_{k=1}^{n} L_Delta(a(xi_{n+1-k}))`` over a doubling schedule.

    ``a`` is either a callable ``t -> group element`` or a PolyPath ``u``,
    read as the group-valued path ``exp(u(t))``.  For the power family and a
    PolyPath the factors are ``exp(Delta u(xi))`` directly.
    """
    family = family or power_family()
    schedule = schedule or Schedule()
    start, stop = (float(v) for v in interval)

    def iterate(n: int):
        return _as_matrix(_product_once(a, family, Partition(start, stop, n, rule), time_order))

    return run_schedule(iterate, schedule, reference)


def mult_derivative_numeric(
    a,
    x: float,
    family: PairWeightFamily | None = None,
    schedule: Schedule | None = None,
    reference: Mat | None = None,
) -> ConvergenceReport:
    """Difference quotients ``H_lam(a(x+lam) a(x)^-1)`` for ``lam = 2^-k``."""
    family = family or power_family()
    schedule = schedule or Schedule(kmin=2, kmax=12)
    x = float(x)
    ax = _exp_path_value(a, x)
    ax_inv = ax.inverse()

    def iterate(n: int):
        lam = 1.0 / n
        return _as_matrix(family.H(_exp_path_value(a, x + lam) @ ax_inv, lam))

    return run_schedule(iterate, schedule, reference)


# closed forms on the 3x3 algebra ------------------------------------------

def integral_log_path(u: PolyPath) -> PolyPath:
    """Path ``W`` with ``exp(W(x)) = integral_0^x exp(u)``, i.e. ``A + C/2``."""
    _check_dim3(u)
    A = u.antiderivative()
    C = u.bracket(A).antiderivative()
    return A + C / 2


def derivative_log_path(u: PolyPath) -> PolyPath:
    """Path ``V`` with ``exp(V(x))`` the multiplicative derivative of ``exp(u)``."""
    _check_dim3(u)
    du = u.derivative()
    return du + u.bracket(du) / 2


def product_integral_closed_nilpotent(u: PolyPath, x, start=0) -> UnipotentElt:
    """Closed form of ``integral_start^x exp(u(t))`` for a 3x3 path ``u``."""
    _check_dim3(u)
    shifted = u.shift(start) if start != 0 else u
    length = convert(x, u.exact) - convert(start, u.exact)
    return exp_nilpotent(integral_log_path(shifted).eval(length))


def mult_derivative_closed_nilpotent(u: PolyPath, x) -> UnipotentElt:
    """Closed form ``exp(u'(x) + [u(x), u'(x)]/2)``."""
    return exp_nilpotent(derivative_log_path(u).eval(x))


def bch2(u: PolyPath, v: PolyPath) -> PolyPath:
    """Pointwise ``log(exp(u) exp(v)) = u + v + [u, v]/2`` (class 2)."""
    _check_dim3(u, v)
    return u + v + u.bracket(v) / 2


@dataclass(frozen=True)
class FTCResidual:
    """Residuals of the two directions of the fundamental theorem."""

    derivative_of_integral: Residual
    integral_of_derivative: Residual

    @property
    def distances(self) -> tuple[float, float]:
        return (self.derivative_of_integral.distance, self.integral_of_derivative.distance)


def ftc_check(u: PolyPath, x) -> FTCResidual:
    """Both directions of the multiplicative fundamental theorem, in closed form.

    Differentiating ``x -> integral_0^x exp(u)`` recovers ``exp(u(x))``.
    Integrating the derivative of ``exp(u)`` from 0 to ``x`` recovers
    ``exp(u(x)) exp(u(0))^-1``, which is ``exp(u(x))`` whenever ``u(0) = 0``.
    """
    _check_dim3(u)
    target = exp_nilpotent(u.eval(x))
    d_int = exp_nilpotent(derivative_log_path(integral_log_path(u)).eval(x))
    int_d = exp_nilpotent(integral_log_path(derivative_log_path(u)).eval(x))
    start = exp_nilpotent(u.eval(0))
    return FTCResidual(
        Residual.between(d_int, target),
        Residual.between(int_d, target @ start.inverse()),
    )


@dataclass(frozen=True)
class IBPResult:
    residual: Residual
    reports: tuple[ConvergenceReport, ...] = ()

    @property
    def distance(self) -> float:
        return self.residual.distance

    @property
    def converged(self) -> bool:
        return all(r.converged for r in self.reports)


def ibp_check(
    a: PolyPath,
    b: PolyPath,
    x,
    mode: str = "closed",
    schedule: Schedule | None = None,
) -> IBPResult:
    """Integration by parts for product integrals.

    Compares ``(int e^a)(int e^b)`` with ``int exp(a + G b G^-1)`` where
    ``G(t) = int_0^t e^a``.
    """
    _check_dim3(a, b)
    if mode == "closed":
        wa = integral_log_path(a)
        w = a + b.conjugate_by(wa)
        lhs = exp_nilpotent(wa.eval(x)) @ exp_nilpotent(integral_log_path(b).eval(x))
        rhs = exp_nilpotent(integral_log_path(w).eval(x))
        return IBPResult(Residual.between(lhs, rhs))
    if mode != "numeric":
        raise DomainError("mode must be 'closed' or 'numeric'")
    schedule = schedule or Schedule()
    af, bf = a.to_float(), b.to_float()
    x = float(x)
    rep_a = product_integral_numeric(af, interval=(0.0, x), schedule=schedule)
    rep_b = product_integral_numeric(bf, interval=(0.0, x), schedule=schedule)

    def rhs_iterate(n: int) -> Mat:
        part = Partition(0.0, x, n)
        tags = part.tags()
        sa = af.eval_batch(tags)
        sb = bf.eval_batch(tags)
        fa = exp_nilpotent_batch(part.mesh * sa)
        g = np.eye(3)
        conj = np.empty_like(sb)
        for k in range(n):
            # G(t_k) includes the factor sampled at t_k (right endpoints)
            g = fa[k] @ g
            conj[k] = g @ sb[k] @ np.linalg.inv(g)
        factors = exp_nilpotent_batch(part.mesh * (sa + conj))
        return UnipotentElt._wrap(ordered_product(factors[::-1]))

    rep_rhs = run_schedule(rhs_iterate, schedule)
    lhs = rep_a.limit @ rep_b.limit
    return IBPResult(Residual.between(lhs, rep_rhs.limit), (rep_a, rep_b, rep_rhs))


def leibniz_check(a: PolyPath, b: PolyPath, x) -> Residual:
    """Product rule: derivative of ``e^a e^b`` against
    ``exp(log d(e^a) + Ad_{e^a} log d(e^b))``.
    """
    _check_dim3(a, b)
    lhs = exp_nilpotent(derivative_log_path(bch2(a, b)).eval(x))
    da = derivative_log_path(a).eval(x)
    db = derivative_log_path(b).eval(x)
    g = exp_nilpotent(a.eval(x))
    rhs = exp_nilpotent(da + as_nilmat(g @ db @ g.inverse()))
    return Residual.between(lhs, rhs)


# synchronized limits ------------------------------------------------------

def trotter_pair_map(n: int, a: Mat, b: Mat) -> UnipotentElt:
    """``(a^(1/n) b^(1/n))^n`` on unipotent elements."""
    r = Fraction(1, n)
    return power_n(power_real(a, r) @ power_real(b, r), n)


def power_n(g: Mat, n: int):
    """``g^n`` for a positive integer ``n`` by repeated squaring."""
    if n < 1:
        raise DomainError("power_n needs n >= 1")
    result = None
    base = g
    while n:
        if n & 1:
            result = base if result is None else result @ base
        n >>= 1
        if n:
            base = base @ base
    return result


@dataclass(frozen=True)
class SyncReport:
    """Deviation between a map family evaluated on fixed and on drifting inputs."""

    report: ConvergenceReport
    deviations: tuple[float, ...]
    passed: bool

    def to_json(self) -> dict:
        return {"deviations": list(self.deviations), "passed": self.passed, "report": self.report.to_json()}


def synchronized_limit_check(
    f: Callable[[int, Mat, Mat], Mat],
    a: Mat,
    b: Mat,
    delta: float,
    schedule: Schedule,
    direction: NilMat,
) -> SyncReport:
    """Compare ``f_n(a, b)`` with ``f_n(a_n, b_n)``, ``a_n = a exp(delta/n R)``.

    The deviation must shrink along the schedule and its extrapolated limit
    must fall within the tolerance.
    """
    direction = as_nilmat(direction).to_float()
    a, b = a.to_float(), b.to_float()
    values = []
    for n in schedule.ns:
        drift = exp_nilpotent(direction * (delta / n))
        values.append(f(n, a, b).as_mat() - f(n, a @ drift, b @ drift).as_mat())
    values = tuple(values)
    report = report_from_values(schedule.ns, values, schedule)
    devs = tuple(v.frobenius() for v in values)
    tail = devs[-3:]
    decaying = all(q <= p for p, q in zip(tail[:-1], tail[1:]))
    passed = decaying and report.limit.frobenius() <= schedule.tol
    return SyncReport(report, devs, passed)
