"""Finite-difference tangent maps at the identity.

The tangent of a group operator ``op`` in direction ``u`` is read off the
curve ``t -> log op(exp(t u))``, which lives in the Lie algebra, so the
extracted operator can be fed straight into the Lie-level identities.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .convergence import order_from_deltas, richardson
from .differential import diff_closed_form, lie_derivation_residual
from .errors import DomainError
from .lie import (
    GL2_BASIS,
    LieDerivation,
    LieOperator,
    ZERO_WEIGHT,
    limit_weight,
    pair_weight,
)
from .matgroup import Mat, basis, exp_general, exp_nilpotent, log_near_identity, log_unipotent, power_real
from .rota_baxter import (
    CENTER_PROJECTION,
    NEG_FIRST,
    GL2_GAUSS_SPLIT,
    HEISENBERG_SPLIT,
    GroupOperator,
    factorization_operator,
    rb_lie_residual,
    rb_zero_closed_form,
)
from .scalars import convert

STENCILS = ("central-2", "central-4")
DEFAULT_LADDER = (3, 4, 5, 6, 7)
MAX_FLOAT_EXP = 7


@dataclass(frozen=True)
class CurveProbe:
    """A direction, a step and a difference stencil."""

    direction: Mat | None = None
    h: object = Fraction(1, 8)
    stencil: str = "central-2"

    def __post_init__(self):
        if self.stencil not in STENCILS:
            raise DomainError(f"unknown stencil {self.stencil!r}")
        if not self.h > 0:
            raise DomainError("step must be positive")


def _log_curve(op: Callable, u: Mat, t) -> Mat:
    return log_near_identity(op(exp_general(u * t)))


def tangent_of_operator(op: Callable, u: Mat, probe: CurveProbe) -> Mat:
    """Central-difference estimate of ``d/dt|0 log op(exp(t u))``."""
    e = exp_general(u * 0)
    if op(e).distance(e) > (0.0 if u.exact else 1e-12):
        raise DomainError("the operator must fix the identity")
    h = convert(probe.h, u.exact)
    f = lambda t: _log_curve(op, u, t)  # noqa: E731
    if probe.stencil == "central-2":
        return (f(h) - f(-h)) / (2 * h)
    return ((f(h) - f(-h)) * 8 - (f(2 * h) - f(-2 * h))) / (12 * h)


def mixed_second_bracket(opA: Callable, opB: Callable, u: Mat, v: Mat, probe: CurveProbe) -> Mat:
    """Mixed difference of ``log(opA(e^{tu}) opB(e^{sv}) opA(e^{tu})^-1)`` at 0.

    Converges to ``[Bu, Bv]`` where ``B`` are the tangents of the operators.
    """
    h = convert(probe.h, u.exact)

    def F(t, s):
        g = opA(exp_general(u * t))
        return log_near_identity(g @ opB(exp_general(v * s)) @ g.inverse())

    return (F(h, h) - F(h, -h) - F(-h, h) + F(-h, -h)) / (4 * h * h)


def extract_operator(op: Callable, basis_ops: LieOperator, probe: CurveProbe, exact: bool) -> LieOperator:
    """Coordinate matrix of the tangent map, column by column."""
    return LieOperator.from_linear_map(
        lambda u: tangent_of_operator(op, u, probe), basis_ops.basis, basis_ops.dim, exact
    )


# fixtures ------------------------------------------------------------------

@dataclass(frozen=True)
class TangentFixture:
    """A group operator and the Lie operator its tangent should equal."""

    name: str
    operator: GroupOperator = field(repr=False)
    expected: LieOperator
    exact_capable: bool = True


def _fixtures() -> dict[str, TangentFixture]:
    out = {}
    for name, B in (("center-projection", CENTER_PROJECTION), ("neg-first", NEG_FIRST)):
        out[name] = TangentFixture(name, rb_zero_closed_form(B), B)
    for name, (i, j) in (("ad-E12", (1, 2)), ("ad-E23", (2, 3)), ("ad-E13", (1, 3))):
        D = LieDerivation.ad(basis(i, j))
        out[name] = TangentFixture(name, diff_closed_form(D), D)
    out["heis-factorization"] = TangentFixture(
        "heis-factorization", factorization_operator(HEISENBERG_SPLIT), LieOperator([[0, 0, 0], [0, -1, 0], [0, 0, 0]])
    )
    # B(g) = (g_minus)^-1 for g = U Lo: tangent is minus the strictly lower part
    gl2 = [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, -1, 0], [0, 0, 0, 0]]
    out["gl2-gauss"] = TangentFixture(
        "gl2-gauss", factorization_operator(GL2_GAUSS_SPLIT), LieOperator(gl2, GL2_BASIS, 2), exact_capable=False
    )
    return out


FIXTURES = _fixtures()

# which fixtures each statement is exercised on, and the Lie identity used
THEOREMS = {
    "tgop": (("gl2-gauss", "heis-factorization"), "rb-weight1"),
    "tanglim": (("center-projection", "neg-first"), "rb-limit"),
    "rbg2rbl0": (("center-projection", "neg-first"), "rb-zero"),
    "diffgLie1": (("ad-E12", "ad-E23", "ad-E13"), "diff-limit"),
    "dgpl0": (("ad-E12", "ad-E23", "ad-E13"), "diff-zero"),
}


def lie_identity_residual(kind: str, B: LieOperator, exact: bool) -> float:
    """Largest residual of the named Lie identity over all basis pairs."""
    basis_elts = B.basis_elements(exact)
    ident = LieOperator.identity(B.basis, B.dim)
    worst = 0.0
    for u in basis_elts:
        for v in basis_elts:
            if kind == "rb-zero":
                r = rb_lie_residual(B, ZERO_WEIGHT, u, v)
            elif kind == "rb-weight1":
                r = rb_lie_residual(B, pair_weight(ident, ident), u, v)
            elif kind == "rb-limit":
                r = rb_lie_residual(B, limit_weight(), u, v)
            elif kind == "diff-zero":
                r = lie_derivation_residual(B, ZERO_WEIGHT, u, v)
            elif kind == "diff-limit":
                r = lie_derivation_residual(B, limit_weight(), u, v)
            else:
                raise DomainError(f"unknown identity {kind!r}")
            worst = max(worst, r.distance)
    return worst


@dataclass(frozen=True)
class FixtureReport:
    """Error ladder and verdicts for one fixture."""

    fixture: str
    hs: tuple[float, ...]
    errors: tuple[float, ...]
    slope: float | None
    tangent_error: float
    identity_residual: float
    identity_exact: bool
    tangent_ok: bool
    identity_ok: bool
    order_ok: bool
    extracted: LieOperator

    @property
    def passed(self) -> bool:
        return self.tangent_ok and self.identity_ok and self.order_ok

    def to_json(self) -> dict:
        return {
            "fixture": self.fixture,
            "hs": list(self.hs),
            "errors": list(self.errors),
            "slope": self.slope,
            "tangent_error": self.tangent_error,
            "identity_residual": self.identity_residual,
            "identity_exact": self.identity_exact,
            "tangent_ok": self.tangent_ok,
            "identity_ok": self.identity_ok,
            "order_ok": self.order_ok,
            "extracted": self.extracted.to_json(),
        }


@dataclass(frozen=True)
class TangentReport:
    theorem: str
    identity: str
    fixtures: tuple[FixtureReport, ...]

    @property
    def passed(self) -> bool:
        return all(f.passed for f in self.fixtures)

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "identity": self.identity,
            "passed": self.passed,
            "fixtures": [f.to_json() for f in self.fixtures],
        }


def probe_directions(B: LieOperator) -> list[Mat]:
    """Basis directions plus two generic combinations of them.

    Along a single basis direction the log-curve of many operators is
    linear in ``t``; the generic directions make the ladder see the
    curvature whenever there is any.
    """
    k = len(B.basis)
    generic = [[1] * k, [Fraction((-1) ** j, j + 2) for j in range(k)]]
    return B.basis_elements(False) + [B.from_coords([float(c) for c in g], False) for g in generic]


def error_ladder(fixture: TangentFixture, exps, stencil: str = "central-2"):
    """Float tangents at ``h = 2^-k``.

    Returns the steps, the largest entrywise error over the probe
    directions at each step, the error of the second-order Richardson
    combination of the two smallest steps, and the operator extracted on
    the basis at the smallest step.
    """
    dirs = probe_directions(fixture.expected)
    expected = [fixture.expected(u) for u in dirs]
    hs, errs, tangents = [], [], []
    for k in exps:
        h = 2.0 ** -k
        probe = CurveProbe(None, h, stencil)
        ts = [tangent_of_operator(fixture.operator, u, probe) for u in dirs]
        hs.append(h)
        errs.append(max(_max_abs(t - e) for t, e in zip(ts, expected)))
        tangents.append(ts)
    order = 2 if stencil == "central-2" else 4
    extrap = [richardson(c, f, order) for c, f in zip(tangents[-2], tangents[-1])]
    extrap_err = max(_max_abs(t - e) for t, e in zip(extrap, expected))
    op = extract_operator(fixture.operator, fixture.expected, CurveProbe(None, hs[-1], stencil), exact=False)
    return tuple(hs), tuple(errs), extrap_err, op


def _max_abs(m: Mat) -> float:
    return float(abs(m.to_float().array).max())


def verify_fixture(
    identity: str,
    fixture: TangentFixture,
    hmin_exp: int = 7,
    tol: float = 1e-6,
    stencil: str = "central-2",
    slope_target: float = 2.0,
    slope_band: float = 0.2,
) -> FixtureReport:
    if hmin_exp > MAX_FLOAT_EXP:
        raise DomainError(f"steps below 2^-{MAX_FLOAT_EXP} are rejected in float mode")
    if hmin_exp < 5:
        raise DomainError("the ladder needs at least three levels starting at 2^-3")
    exps = range(DEFAULT_LADDER[0], hmin_exp + 1)
    hs, errs, extrap_err, last_op = error_ladder(fixture, exps, stencil)
    slope = order_from_deltas(errs[-3:], 0.0, levels=2)
    order_ok = slope is not None and abs(slope - slope_target) <= slope_band
    # the Lie identity is checked on an exact extraction when one is available
    if fixture.exact_capable:
        probe = CurveProbe(None, Fraction(1, 8), stencil)
        extracted = extract_operator(fixture.operator, fixture.expected, probe, True)
        identity_residual = lie_identity_residual(identity, extracted, True)
        identity_ok = identity_residual == 0.0
    else:
        extracted = last_op
        identity_residual = lie_identity_residual(identity, extracted, False)
        identity_ok = identity_residual <= tol
    return FixtureReport(
        fixture=fixture.name,
        hs=hs,
        errors=errs,
        slope=slope,
        tangent_error=extrap_err,
        identity_residual=identity_residual,
        identity_exact=fixture.exact_capable,
        tangent_ok=extrap_err <= tol,
        identity_ok=identity_ok,
        order_ok=order_ok,
        extracted=extracted,
    )


def verify_tangent_theorem(
    theorem: str,
    fixtures: tuple[str, ...] | str | None = None,
    hmin_exp: int = 7,
    tol: float = 1e-6,
    stencil: str = "central-2",
) -> TangentReport:
    """Check a group-to-Lie correspondence on its fixtures.

    Per fixture: (i) the float tangent at the smallest step matches the
    expected operator within ``tol``; (ii) the Lie identity holds for the
    extracted operator; (iii) the error ladder has slope ``2 +- 0.2``.
    """
    if theorem not in THEOREMS:
        raise DomainError(f"unknown theorem {theorem!r}")
    default, identity = THEOREMS[theorem]
    if fixtures is None or fixtures == "all":
        names = default
    elif isinstance(fixtures, str):
        names = (fixtures,)
    else:
        names = tuple(fixtures)
    for n in names:
        if n not in FIXTURES:
            raise DomainError(f"unknown fixture {n!r}")
    reports = tuple(verify_fixture(identity, FIXTURES[n], hmin_exp, tol, stencil) for n in names)
    return TangentReport(theorem, identity, reports)


def power_tangent(lam, u: Mat, h: float = 2.0 ** -7) -> Mat:
    """Tangent of ``g -> g^lam`` in direction ``u``."""
    return tangent_of_operator(lambda g: power_real(g, lam), u, CurveProbe(None, h))


def log_power_decay(u: Mat, ns) -> tuple[float, ...]:
    """``||log L_{1/n}(exp u)||`` for the power family along ``ns``."""
    g = exp_nilpotent(u)
    return tuple(log_unipotent(power_real(g, Fraction(1, n))).frobenius() for n in ns)


def slope_in_inverse_n(values, ns) -> float:
    """Fitted exponent ``p`` in ``values ~ C n^-p`` from the last two levels."""
    return math.log2(values[-2] / values[-1]) / math.log2(ns[-1] / ns[-2])

