"""Rota-Baxter operators on groups and Lie algebras, and their residual checks.

Group-level identities checked here, for an operator ``B`` and a pair weight
``(L, H)``:

* pair weight: ``B(a) B(b) = B(H(L(a) B(a) L(b) B(a)^-1))``
* weight one: the same with ``L = H = id``
* limit weight zero: ``B(a) B(b) = B(lim (a^(1/n) B(a) b^(1/n) B(a)^-1)^n)``
* finite form on ``exp(g)``: ``B(e^u) B(e^v) = B(exp(u + B(e^u) v B(e^u)^-1))``

and at the Lie level ``[Bu, Bv] = B(H([Bu, Lv] + [Lu, Bv] + [Lu, Lv]))``
with the weight-zero case ``[Bu, Bv] = B([Bu, v] + [u, Bv])``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Mapping, Sequence

from .calculus import power_n
from .convergence import ConvergenceReport, Schedule, report_from_values, richardson
from .errors import DomainError
from .groups import SeqElt
from .lie import HEIS_BASIS, LieOperator, LieWeight, scalar_pair
from .matgroup import (
    Mat,
    UnipotentElt,
    as_nilmat,
    as_unipotent,
    coords3,
    exp_general,
    exp_nilpotent,
    heis,
    log_unipotent,
)
from .residual import Residual
from .scalars import convert
from .weights import IDENTITY, PairWeightFamily, power_family


@dataclass(frozen=True)
class GroupOperator:
    """A map ``B: G -> G`` with a label describing how it was built."""

    name: str
    fn: Callable[[Any], Any] = field(compare=False, repr=False)
    rule: str = "custom"
    lie: LieOperator | None = field(default=None, compare=False)

    def __call__(self, g):
        return self.fn(g)

    def fixes_identity(self, e) -> bool:
        return self(e) == e


def weight1_inverse() -> GroupOperator:
    """``a -> a^-1``, a weight-one operator on every group."""
    return GroupOperator("inverse", lambda g: g.inverse(), "weight1-inverse")


def constant_identity() -> GroupOperator:
    return GroupOperator("constant-e", lambda g: g.identity(), "constant")


def table_operator(table: Mapping, name: str = "table") -> GroupOperator:
    def fn(g):
        try:
            return table[g]
        except KeyError:
            raise DomainError("element outside the table carrier") from None

    return GroupOperator(name, fn, "custom-table")


def shift_example() -> GroupOperator:
    """``(a, w) -> w^-1`` on finitely supported sequences."""

    def fn(g: SeqElt) -> SeqElt:
        if not isinstance(g, SeqElt):
            raise DomainError("the shift operator acts on SeqElt")
        return g.tail().inverse()

    return GroupOperator("shift-example", fn, "shift-example")


SHIFT_FAMILY = PairWeightFamily("shift")


# factorizations ----------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    """Exact factorization ``g = g_plus g_minus`` with trivially intersecting factors."""

    name: str
    split: Callable[[Any], tuple[Any, Any]] = field(compare=False, repr=False)
    in_plus: Callable[[Any], bool] = field(compare=False, repr=False)
    in_minus: Callable[[Any], bool] = field(compare=False, repr=False)


def _heis_split(g: Mat):
    if g.dim != 3 or not g.is_unipotent():
        raise DomainError("the Heisenberg split needs a 3x3 unipotent element")
    a, b, c = coords3(g)
    return heis(a, 0 * a, c - a * b, exact=g.exact), heis(0 * a, b, 0 * a, exact=g.exact)


HEISENBERG_SPLIT = Decomposition(
    "heisenberg",
    _heis_split,
    lambda g: g.is_unipotent() and g[1, 2] == 0,
    lambda g: g.is_unipotent() and g[0, 1] == 0 and g[0, 2] == 0,
)


def _gauss_split(g: Mat):
    # g = U Lo with U upper triangular and Lo lower unitriangular
    if g.dim != 2:
        raise DomainError("the Gauss split is implemented for 2x2 matrices")
    p, q = g[0, 0], g[0, 1]
    r, s = g[1, 0], g[1, 1]
    if s == 0 or p * s - q * r == 0:
        raise DomainError("the Gauss split needs an invertible matrix with nonzero (2,2) entry")
    el = r / s
    one, zero = convert(1, g.exact), convert(0, g.exact)
    lower = Mat([[one, zero], [el, one]], exact=g.exact)
    upper = Mat([[p - q * el, q], [zero, s]], exact=g.exact)
    return upper, lower


GL2_GAUSS_SPLIT = Decomposition(
    "gl2-gauss",
    _gauss_split,
    lambda g: g[1, 0] == 0 and g[0, 0] != 0 and g[1, 1] != 0,
    lambda g: g[0, 0] == 1 and g[1, 1] == 1 and g[0, 1] == 0,
)


def factorize(g, decomposition: Decomposition = HEISENBERG_SPLIT):
    """Split ``g`` as ``g_plus @ g_minus``; the result is checked, not assumed."""
    plus, minus = decomposition.split(g)
    if not (decomposition.in_plus(plus) and decomposition.in_minus(minus)):
        raise DomainError("factors left their subgroups")
    if g.exact and plus @ minus != g:
        raise DomainError("factorization does not reproduce g")
    return plus, minus


def factorization_operator(
    decomposition: Decomposition = HEISENBERG_SPLIT, family: PairWeightFamily = IDENTITY
) -> GroupOperator:
    """``a -> (L(a)_minus)^-1``."""

    def fn(a):
        return decomposition.split(family.L(a))[1].inverse()

    return GroupOperator(f"factorization[{decomposition.name}]", fn, "factorization")


def induced_operator(op: GroupOperator, family: PairWeightFamily = IDENTITY) -> GroupOperator:
    """``a -> L(a^-1) B(a^-1)``; needs an inverse-preserving family."""
    if not family.inverse_preserving:
        raise DomainError("the induced operator needs an inverse-preserving family")

    def fn(a):
        ai = a.inverse()
        return family.L(ai) @ op(ai)

    return GroupOperator(f"induced[{op.name}]", fn, "induced")


# residuals ---------------------------------------------------------------

def rb_pair_residual(op: GroupOperator, family: PairWeightFamily, a, b) -> Residual:
    """``B(a)B(b)`` against ``B(H(L(a) B(a) L(b) B(a)^-1))``."""
    ba = op(a)
    inner = family.L(a) @ ba @ family.L(b) @ ba.inverse()
    return Residual.between(ba @ op(b), op(family.H(inner)))


def rb_weight1_residual(op: GroupOperator, a, b) -> Residual:
    """``B(a)B(b)`` against ``B(a B(a) b B(a)^-1)``."""
    return rb_pair_residual(op, IDENTITY, a, b)


@dataclass(frozen=True)
class Scan:
    """Outcome of an exhaustive residual scan over a finite carrier."""

    pairs: int
    max_pair_residual: float
    max_weight1_residual: float
    pair_witness: tuple | None = None
    weight1_witness: tuple | None = None

    @property
    def is_pair_weight(self) -> bool:
        return self.max_pair_residual == 0.0

    @property
    def is_weight1(self) -> bool:
        return self.max_weight1_residual == 0.0


def scan(op: GroupOperator, family: PairWeightFamily, carrier: Sequence) -> Scan:
    worst_p, worst_w = 0.0, 0.0
    wit_p = wit_w = None
    for a, b in product(carrier, repeat=2):
        rp = rb_pair_residual(op, family, a, b).distance
        rw = rb_weight1_residual(op, a, b).distance
        if rp > worst_p:
            worst_p, wit_p = rp, (a, b)
        if rw > worst_w:
            worst_w, wit_w = rw, (a, b)
    return Scan(len(carrier) ** 2, worst_p, worst_w, wit_p, wit_w)


@dataclass(frozen=True)
class Precomposition:
    operator: GroupOperator
    scan: Scan | None


def precompose(
    direction: str,
    op: GroupOperator,
    family: PairWeightFamily,
    carrier: Sequence | None = None,
) -> Precomposition:
    """``B o L`` (``with_L``) or ``B o H`` (``with_H``), scanned over ``carrier``.

    ``B o L`` turns weight-one operators into pair-weight operators and
    ``B o H`` turns pair-weight operators into weight-one operators; the scan
    reports which identities the result satisfies on the carrier.
    """
    if direction == "with_L":
        new = GroupOperator(f"{op.name}*L", lambda g: op(family.L(g)), "precomposed")
    elif direction == "with_H":
        new = GroupOperator(f"{op.name}*H", lambda g: op(family.H(g)), "precomposed")
    else:
        raise DomainError("direction must be 'with_L' or 'with_H'")
    return Precomposition(new, scan(new, family, carrier) if carrier is not None else None)


# Trotter products and limit-weight identities ---------------------------

def trotter_mul(x: Mat, y: Mat, schedule: Schedule | None = None) -> ConvergenceReport:
    """Iterates ``(exp(x/n) exp(y/n))^n`` compared with ``exp(x + y)``."""
    schedule = schedule or Schedule()
    xf, yf = x.to_float().as_mat(), y.to_float().as_mat()
    reference = exp_general(xf + yf).as_mat()

    def iterate(n: int) -> Mat:
        step = exp_general(xf / n).as_mat() @ exp_general(yf / n).as_mat()
        return power_n(step, n)

    values = tuple(iterate(n) for n in schedule.ns)
    return report_from_values(schedule.ns, values, schedule, reference)


@dataclass(frozen=True)
class LimitEval:
    """Inner limit report, the resulting residual and the weight-zero check."""

    report: ConvergenceReport
    residual: Residual
    weight_norms: tuple[float, ...]
    limit_weight_zero: bool

    def to_json(self) -> dict:
        return {
            "report": self.report.to_json(),
            "residual": self.residual.distance,
            "weight_norms": list(self.weight_norms),
            "limit_weight_zero": self.limit_weight_zero,
        }


def _decays_to_identity(norms: Sequence[float]) -> bool:
    # halving n^-1 should shrink ||L_{1/n}(a) - e|| by roughly half
    return all(b == 0.0 or b <= 0.75 * a for a, b in zip(norms[:-1], norms[1:]))


def rb_limit_eval(
    op: GroupOperator,
    a: Mat,
    b: Mat,
    family: PairWeightFamily | None = None,
    schedule: Schedule | None = None,
) -> LimitEval:
    """Evaluate ``lim H_{1/n}(L_{1/n}(a) B(a) L_{1/n}(b) B(a)^-1)`` and compare.

    The default family is the power family, for which the inner expression
    is ``(a^(1/n) B(a) b^(1/n) B(a)^-1)^n``.
    """
    family = family or power_family()
    schedule = schedule or Schedule(kmin=2, kmax=12, tol=1e-3)
    a, b = as_unipotent(a.to_float()), as_unipotent(b.to_float())
    ba = op(a)
    ba_inv = ba.inverse()
    values, norms = [], []
    for n in schedule.ns:
        lam = 1.0 / n
        la = family.L(a, lam)
        norms.append(la.distance(a.identity()))
        values.append(family.H(la @ ba @ family.L(b, lam) @ ba_inv, lam))
    report = report_from_values(schedule.ns, tuple(values), schedule)
    limit = as_unipotent(report.limit)
    residual = Residual.between(ba @ op(b), op(limit))
    return LimitEval(report, residual, tuple(norms), _decays_to_identity(norms))


def rb_zero_closed_form(B: LieOperator) -> GroupOperator:
    """``exp(u) -> exp(B(u) + B([u, B(u)])/2)`` for a weight-zero Lie operator ``B``.

    ``B`` must keep the center in the center and satisfy the weight-zero
    identity on every basis pair; both are checked here.
    """
    if B.basis != HEIS_BASIS:
        raise DomainError("the closed form is implemented on the Heisenberg algebra")
    if not B.is_center_stable():
        raise DomainError("B must map the center into the center")
    basis = B.basis_elements(B.exact)
    worst = max(rb_lie_residual(B, LieWeight("zero"), u, v).distance for u in basis for v in basis)
    if worst != 0.0:
        raise DomainError("B is not a weight-zero Rota-Baxter operator")

    def fn(g: Mat) -> UnipotentElt:
        u = log_unipotent(g)
        bu = B(u)
        return exp_nilpotent(bu + B(u.bracket(bu)) / 2)

    return GroupOperator("rb-zero-closed-form", fn, "nilpotent-closed-form", B)


# weight-zero Lie operators shipped with closed-form group operators
CENTER_PROJECTION = LieOperator([[0, 0, 0], [0, 0, 0], [0, 0, 1]])
NEG_FIRST = LieOperator([[-1, 0, 0], [0, 0, 0], [0, 0, 0]])
SHIPPED_RB_ZERO = {"projection-to-center": CENTER_PROJECTION, "neg-first": NEG_FIRST}


def rboze_finite_residual(op: GroupOperator, u: Mat, v: Mat) -> Residual:
    """``B(e^u)B(e^v)`` against ``B(exp(u + B(e^u) v B(e^u)^-1))``."""
    u, v = as_nilmat(u), as_nilmat(v)
    g = op(exp_nilpotent(u))
    inner = u + as_nilmat(g @ v @ g.inverse())
    return Residual.between(g @ op(exp_nilpotent(v)), op(exp_nilpotent(inner)))


def _pair_rhs(B: LieOperator, L: LieOperator, H: LieOperator, u: Mat, v: Mat) -> Mat:
    bu, bv, lu, lv = B(u), B(v), L(u), L(v)
    return B(H(bu.bracket(lv) + lu.bracket(bv) + lu.bracket(lv)))


def rb_lie_residual(B: LieOperator, weight: LieWeight, u: Mat, v: Mat) -> Residual:
    """``[Bu, Bv]`` against the right-hand side selected by ``weight``."""
    lhs = B(u).bracket(B(v))
    if weight.kind == "zero":
        bu, bv = B(u), B(v)
        return Residual.between(lhs, B(bu.bracket(v) + u.bracket(bv)))
    if weight.kind == "pair":
        return Residual.between(lhs, _pair_rhs(B, weight.L, weight.H, u, v))
    rhs = _extrapolate(lambda n: _pair_rhs(B, *scalar_pair(n, B.basis, B.dim), u, v), weight.schedule, u.exact)
    return Residual.between(lhs, rhs)


def _extrapolate(fn: Callable[[int], Mat], schedule: Schedule, exact: bool) -> Mat:
    """First-order Richardson limit of ``fn(n)`` over the schedule.

    Lie-level limit expressions are affine in ``1/n``, so in exact arithmetic
    the extrapolated value is the limit itself.
    """
    ns = schedule.ns
    vals = [fn(n) for n in ns[-2:]]
    out = richardson(vals[0], vals[1])
    return as_nilmat(out) if out.is_strictly_upper() else out
