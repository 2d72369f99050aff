"""Differential operators with limit weight zero and Lie-level derivation checks.

For a derivation ``D`` of the Heisenberg algebra the group operator
``exp(u) -> exp(Du + [u, Du]/2)`` satisfies

    D(ab) = lim (D(a)^(1/n) a D(b)^(1/n) a^-1)^n

and, with ``Dt(w) = log D(exp w)``, the finite form
``D(e^u e^v) = exp(Dt(u) + Ad_{e^u} Dt(v))``.
"""
from __future__ import annotations

from typing import Mapping

from .convergence import Schedule, report_from_values
from .errors import DomainError
from .lie import HEIS_BASIS, LieDerivation, LieOperator, LieWeight, ZERO_WEIGHT, scalar_pair
from .matgroup import Mat, UnipotentElt, as_nilmat, as_unipotent, exp_nilpotent, log_unipotent
from .residual import Residual
from .rota_baxter import GroupOperator, LimitEval, _decays_to_identity, _extrapolate, table_operator
from .weights import PairWeightFamily, power_family

GroupDiffOperator = GroupOperator


def diff_closed_form(D: LieOperator) -> GroupDiffOperator:
    """``exp(u) -> exp(Du + [u, Du]/2)``; ``D`` must be a derivation (checked)."""
    if D.basis != HEIS_BASIS:
        raise DomainError("the closed form is implemented on the Heisenberg algebra")
    basis = D.basis_elements(D.exact)
    if any(not lie_derivation_residual(D, ZERO_WEIGHT, u, v).is_zero for u in basis for v in basis):
        raise DomainError("D is not a derivation")

    def fn(g: Mat) -> UnipotentElt:
        u = log_unipotent(g)
        du = D(u)
        return exp_nilpotent(du + u.bracket(du) / 2)

    return GroupOperator("diff-closed-form", fn, "nilpotent-closed-form", D)


def diff_table_operator(table: Mapping) -> GroupDiffOperator:
    return table_operator(table, "diff-table")


def log_of_operator(op: GroupDiffOperator, w: Mat) -> Mat:
    """``Dt(w) = log op(exp w)``."""
    return log_unipotent(op(exp_nilpotent(as_nilmat(w))))


def diffg0e_residual(op: GroupDiffOperator, u: Mat, v: Mat) -> Residual:
    """``D(e^u e^v)`` against ``exp(Dt(u) + e^u Dt(v) e^-u)``."""
    u, v = as_nilmat(u), as_nilmat(v)
    eu = exp_nilpotent(u)
    lhs = op(eu @ exp_nilpotent(v))
    rhs = exp_nilpotent(log_of_operator(op, u) + as_nilmat(eu @ log_of_operator(op, v) @ eu.inverse()))
    return Residual.between(lhs, rhs)


def diff_limit_residual(
    op: GroupDiffOperator,
    a: Mat,
    b: Mat,
    family: PairWeightFamily | None = None,
    schedule: Schedule | None = None,
) -> LimitEval:
    """Evaluate ``lim H_{1/n}(L_{1/n}(D a) a L_{1/n}(D b) a^-1)`` against ``D(ab)``."""
    family = family or power_family()
    schedule = schedule or Schedule(kmin=2, kmax=12, tol=1e-3)
    a, b = as_unipotent(a.to_float()), as_unipotent(b.to_float())
    da, db = op(a), op(b)
    a_inv = a.inverse()
    values, norms = [], []
    for n in schedule.ns:
        lam = 1.0 / n
        lda = family.L(da, lam)
        norms.append(lda.distance(a.identity()))
        values.append(family.H(lda @ a @ family.L(db, lam) @ a_inv, lam))
    report = report_from_values(schedule.ns, tuple(values), schedule)
    residual = Residual.between(op(a @ b), as_unipotent(report.limit))
    return LimitEval(report, residual, tuple(norms), _decays_to_identity(norms))


def _limit_rhs(D: LieOperator, L: LieOperator, H: LieOperator, u: Mat, v: Mat) -> Mat:
    ldu, ldv = L(D(u)), L(D(v))
    return H(ldu.bracket(v) + u.bracket(ldv) + ldu.bracket(ldv))


def lie_derivation_residual(D: LieOperator, weight: LieWeight, u: Mat, v: Mat) -> Residual:
    """``D[u, v]`` against ``[Du, v] + [u, Dv]`` or its limit-weight version."""
    lhs = D(u.bracket(v))
    if weight.kind == "zero":
        return Residual.between(lhs, D(u).bracket(v) + u.bracket(D(v)))
    if weight.kind == "pair":
        return Residual.between(lhs, _limit_rhs(D, weight.L, weight.H, u, v))
    rhs = _extrapolate(lambda n: _limit_rhs(D, *scalar_pair(n, D.basis, D.dim), u, v), weight.schedule, u.exact)
    return Residual.between(lhs, rhs)


def ad_derivation(x: Mat) -> LieDerivation:
    return LieDerivation.ad(x)
