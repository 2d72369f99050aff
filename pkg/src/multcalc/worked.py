"""Worked examples bundled as the ``paper-examples`` scenario.

Every example computes a value with the library and compares it with an
independently stated expectation.  Results are plain JSON so the scenario
report is deterministic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Any, Callable

import numpy as np

from .calculus import (
    ftc_check,
    ibp_check,
    leibniz_check,
    mult_derivative_closed_nilpotent,
    mult_derivative_numeric,
    product_integral_closed_nilpotent,
    product_integral_numeric,
    synchronized_limit_check,
    trotter_pair_map,
)
from .convergence import Schedule
from .differential import diff_closed_form, diff_limit_residual, diffg0e_residual, lie_derivation_residual
from .groups import Perm, SeqElt, SignedUnipotentElt, symmetric_group
from .lie import LieDerivation, LieOperator, ZERO_WEIGHT, pair_weight
from .matgroup import (
    Mat,
    basis,
    exp_general,
    exp_nilpotent,
    heis,
    identity,
    log_near_identity,
    log_unipotent,
    power_real,
)
from .polypath import PolyPath
from .rng import SplitMix64, random_heis, random_nil3, random_polypath, random_seq
from .rota_baxter import (
    CENTER_PROJECTION,
    HEISENBERG_SPLIT,
    NEG_FIRST,
    SHIFT_FAMILY,
    constant_identity,
    factorization_operator,
    factorize,
    induced_operator,
    precompose,
    rb_lie_residual,
    rb_limit_eval,
    rb_pair_residual,
    rb_weight1_residual,
    rb_zero_closed_form,
    rboze_finite_residual,
    shift_example,
    trotter_mul,
    weight1_inverse,
)
from .scalars import to_exact
from .tangent import CurveProbe, mixed_second_bracket, power_tangent, tangent_of_operator, verify_tangent_theorem
from .weights import IDENTITY, PairWeightFamily, apply_pair_weight, power_family

SEED = 5
E12, E23, E13 = basis(1, 2), basis(2, 3), basis(1, 3)
Z = E12 * 0
I3 = identity(3)
H7 = 2.0 ** -7


@dataclass(frozen=True)
class ExampleResult:
    name: str
    passed: bool
    value: Any

    def to_json(self) -> dict:
        return {"name": self.name, "status": "pass" if self.passed else "fail", "value": self.value}


EXAMPLES: list[tuple[str, Callable[[], tuple[bool, Any]]]] = []


def example(name: str):
    def deco(fn):
        EXAMPLES.append((name, fn))
        return fn

    return deco


def _path(*coeffs) -> PolyPath:
    return PolyPath(list(coeffs), 3, True)


def _q(s) -> Any:
    return to_exact(s)


def _eq(got: Mat, want: Mat) -> tuple[bool, Any]:
    return got == want, got.to_json()


def _close(got: Mat, want: Mat, tol: float) -> tuple[bool, float]:
    d = got.to_float().distance(want.to_float())
    return d <= tol, d


def _rng(k: int) -> SplitMix64:
    return SplitMix64(SEED * 1000 + k)


# matgroup ---------------------------------------------------------------

@example("mul: (I+E12)(I+E23) = I+E12+E23+E13")
def _():
    return _eq((I3 + E12) @ (I3 + E23), I3 + E12 + E23 + E13)


@example("mul: a e = a and a a^-1 = e")
def _():
    a = heis(1, _q("2/3"), -2)
    return a @ a.identity() == a and a @ a.inverse() == a.identity(), None


@example("exp_nilpotent: 0, E12, E12+E23")
def _():
    ok = exp_nilpotent(Z) == I3 and exp_nilpotent(E12) == I3 + E12
    ok &= exp_nilpotent(E12 + E23) == I3 + E12 + E23 + E13 / 2
    return ok, None


@example("log_unipotent: I, I+E12, I+E12+E23+E13")
def _():
    ok = log_unipotent(I3) == Z and log_unipotent(I3 + E12) == E12
    ok &= log_unipotent(I3 + E12 + E23 + E13) == E12 + E23 + E13 / 2
    return ok, None


@example("power_real: (I+E12)^(5/2), g^0, g^1")
def _():
    g = heis(1, 2, 3)
    ok = power_real(I3 + E12, _q("5/2")) == I3 + E12 * _q("5/2")
    ok &= power_real(g, 0) == I3 and power_real(g, 1) == g
    return ok, None


@example("exp_general: [[0,1],[1,0]] -> cosh/sinh")
def _():
    c, s = math.cosh(1.0), math.sinh(1.0)
    return _close(exp_general(Mat([[0.0, 1.0], [1.0, 0.0]])), Mat([[c, s], [s, c]]), 1e-12)


@example("exp_general: agrees with exp_nilpotent on strictly upper input")
def _():
    u = (E12 * 3 + E23 * _q("-1/2") + E13).to_float()
    return _close(exp_general(u), exp_nilpotent(u), 1e-14)


@example("log_near_identity: round trip of exp(0.1 [[0,1],[1,0]])")
def _():
    x = Mat([[0.0, 0.1], [0.1, 0.0]])
    ok, d = _close(log_near_identity(exp_general(x)), x, 1e-10)
    return ok and log_near_identity(identity(2, False)).frobenius() == 0.0, d


@example("pair weights: power L_(1/2), shift L then H, signed-power L o H")
def _():
    ok = apply_pair_weight(power_family(), "L", _q("1/2"), exp_nilpotent(E12)) == exp_nilpotent(E12 / 2)
    s3 = symmetric_group(3)
    a = SeqElt((s3[1], s3[3], s3[4]), s3[0])
    w = a.tail()
    ok &= SHIFT_FAMILY.H(SHIFT_FAMILY.L(a)) == w.prepend(s3[0])
    fam = PairWeightFamily("signed-power")
    g = SignedUnipotentElt(-1, exp_nilpotent(E12))
    ok &= fam.L(fam.H(g, _q("1/3")), _q("1/3")) == g
    return ok, None


# polypath ----------------------------------------------------------------

@example("polypath eval: E12+tE23 at 0 and 1, t^2 E13 at 2")
def _():
    p = _path(E12, E23)
    ok = p.eval(0) == E12 and p.eval(1) == E12 + E23 and _path(Z, Z, E13).eval(2) == E13 * 4
    return ok, None


@example("polypath bracket: [E12, tE23], [p, p], [E12+tE23, tE12+t^2/2 E23]")
def _():
    p = _path(E12, E23)
    ok = _path(E12).bracket(_path(Z, E23)) == _path(Z, E13)
    ok &= p.bracket(p) == _path(Z)
    ok &= p.bracket(_path(Z, E12, E23 / 2)) == _path(Z, Z, -E13 / 2)
    return ok, None


@example("polypath calculus: antiderivative and derivative")
def _():
    p = _path(E12, E23)
    ok = _path(E12).antiderivative() == _path(Z, E12)
    ok &= _path(Z, E23).antiderivative() == _path(Z, Z, E23 / 2)
    ok &= p.antiderivative().derivative() == p
    ok &= _path(E12).derivative() == _path(Z) and _path(E12, E23, E13).derivative() == _path(E23, E13 * 2)
    return ok, None


# product integrals and derivatives -------------------------------------------

@example("product integral: constant exp(E12) path")
def _():
    rep = product_integral_numeric(_path(E12).to_float(), schedule=Schedule(2, 6))
    return _close(rep.values[-1], exp_nilpotent(E12), 1e-12)


@example("product integral: E12+tE23 numeric within 1e-3 at n=4096")
def _():
    want = exp_nilpotent(E12 + E23 / 2 - E13 / 12)
    rep = product_integral_numeric(_path(E12, E23).to_float(), schedule=Schedule(2, 12))
    return _close(rep.values[-1], want, 1e-3)


@example("product integral: empty interval gives the identity")
def _():
    rep = product_integral_numeric(_path(E12, E23).to_float(), interval=(0.0, 0.0), schedule=Schedule(2, 4))
    return _close(rep.values[-1], I3, 0.0)


@example("closed integral: constant, E12+tE23, tE12")
def _():
    x = _q("3/2")
    ok = product_integral_closed_nilpotent(_path(E12 + E23), x) == exp_nilpotent((E12 + E23) * x)
    ok &= product_integral_closed_nilpotent(_path(E12, E23), 1) == exp_nilpotent(E12 + E23 / 2 - E13 / 12)
    ok &= product_integral_closed_nilpotent(_path(Z, E12), x) == exp_nilpotent(E12 * x * x / 2)
    return ok, None


@example("mult derivative numeric: exp(xU) gives exp(U) at every step")
def _():
    rep = mult_derivative_numeric(_path(Z, E12 + E23).to_float(), 1.0, schedule=Schedule(2, 8))
    want = exp_nilpotent(E12 + E23).to_float()
    return max(v.distance(want) for v in rep.values) <= 1e-12, rep.values[-1].distance(want)


@example("mult derivative numeric: exp(xE12+x^2E23) at 1 within 1e-4")
def _():
    want = exp_nilpotent(E12 + E23 * 2 + E13 / 2)
    rep = mult_derivative_numeric(_path(Z, E12, E23).to_float(), 1.0, schedule=Schedule(2, 12), reference=want.to_float())
    return rep.limit_error <= 1e-4, rep.limit_error


@example("mult derivative numeric: constant path gives the identity")
def _():
    rep = mult_derivative_numeric(_path(E12 + E13).to_float(), 0.5, schedule=Schedule(2, 6))
    return _close(rep.values[-1], I3, 1e-12)


@example("closed derivative: xU, xE12+x^2E23, constant")
def _():
    x = _q("3/2")
    ok = mult_derivative_closed_nilpotent(_path(Z, E12 + E23), x) == exp_nilpotent(E12 + E23)
    ok &= mult_derivative_closed_nilpotent(_path(Z, E12, E23), x) == exp_nilpotent(E12 + E23 * 2 * x + E13 * x * x / 2)
    ok &= mult_derivative_closed_nilpotent(_path(E12), x) == I3
    return ok, None


@example("ftc: E12+tE23, constant and t^2 E13 paths")
def _():
    ds = [ftc_check(p, 1).distances for p in (_path(E12, E23), _path(E12 + E23), _path(Z, Z, E13))]
    return all(d == (0.0, 0.0) for d in ds), [list(d) for d in ds]


@example("ibp: constant E12 and E23 give I+E12+E23+E13")
def _():
    res = ibp_check(_path(E12), _path(E23), 1)
    return res.residual.lhs == I3 + E12 + E23 + E13 and res.distance == 0.0, res.distance


@example("ibp: zero b and random degree-2 pairs")
def _():
    rng = _rng(1)
    ds = [ibp_check(_path(E12, E23), _path(Z), 1).distance]
    ds += [ibp_check(random_polypath(rng, 2), random_polypath(rng, 2), rng.rational(0, 2)).distance for _ in range(20)]
    return max(ds) == 0.0, max(ds)


@example("leibniz: a=xE12, b=xE23 gives exp(E12+E23+xE13)")
def _():
    x = _q("7/3")
    r = leibniz_check(_path(Z, E12), _path(Z, E23), x)
    return r.lhs == exp_nilpotent(E12 + E23 + E13 * x) and r.distance == 0.0, r.distance


@example("leibniz: constant b and a=b")
def _():
    rng = _rng(2)
    ds = []
    for _ in range(10):
        a = random_polypath(rng, 3)
        ds += [leibniz_check(a, random_polypath(rng, 0), 1).distance, leibniz_check(a, a, _q("1/2")).distance]
    return max(ds) == 0.0, max(ds)


@example("synchronized limits: Trotter map with zero and positive drift")
def _():
    a, b = heis(1, 0, 0), heis(0, 1, 0)
    sched = Schedule(2, 10, 1e-3)
    still = synchronized_limit_check(trotter_pair_map, a, b, 0.0, sched, E23)
    moving = synchronized_limit_check(trotter_pair_map, a, b, 0.5, sched, E12 + E23)
    ok = max(still.deviations) == 0.0 and moving.passed
    ok &= moving.report.order is not None and abs(moving.report.order - 1) <= 0.25
    return ok, moving.report.order


@example("synchronized limits: n-independent map")
def _():
    rep = synchronized_limit_check(lambda n, a, b: a @ b, heis(1, 2, 0), heis(0, 1, 1), 0.5, Schedule(2, 10), E13)
    return rep.passed, rep.deviations[-1]


# Rota-Baxter operators ------------------------------------------------------

@example("shift example satisfies the pair-weight identity")
def _():
    rng, s3, op = _rng(3), symmetric_group(3), shift_example()
    ds = [rb_pair_residual(op, SHIFT_FAMILY, random_seq(rng, s3), random_seq(rng, s3)).distance for _ in range(200)]
    return max(ds) == 0.0, max(ds)


@example("inverse map is weight one on an abelian carrier")
def _():
    c3 = [Perm((0, 1, 2)), Perm((1, 2, 0)), Perm((2, 0, 1))]
    op = weight1_inverse()
    ds = [rb_pair_residual(op, IDENTITY, a, b).distance for a, b in product(c3, repeat=2)]
    e = c3[0]
    ds.append(rb_pair_residual(op, PairWeightFamily("inverse"), e, e).distance)
    return max(ds) == 0.0, max(ds)


@example("factorization operator is weight one on Heisenberg")
def _():
    rng, op = _rng(4), factorization_operator(HEISENBERG_SPLIT)
    ds = [rb_weight1_residual(op, random_heis(rng), random_heis(rng)).distance for _ in range(200)]
    ds.append(rb_weight1_residual(op, I3, I3).distance)
    return max(ds) == 0.0, max(ds)


@example("shift example is not weight one (witness)")
def _():
    s3 = symmetric_group(3)
    e, x, y = s3[0], Perm((0, 2, 1)), Perm((1, 0, 2))
    d = rb_weight1_residual(shift_example(), SeqElt((e, x), e), SeqElt((e, y), e)).distance
    return d > 0.0, d


@example("factorize: (1,1,1), e and (0,b,0)")
def _():
    b = _q("5/7")
    ok = factorize(heis(1, 1, 1)) == (heis(1, 0, 0), heis(0, 1, 0))
    ok &= factorize(I3) == (I3, I3)
    ok &= factorize(heis(0, b, 0)) == (I3, heis(0, b, 0))
    return ok, None


@example("induced operator: weight one, constant base, double application")
def _():
    rng = _rng(5)
    op = factorization_operator(HEISENBERG_SPLIT)
    ind = induced_operator(op)
    ds = [rb_weight1_residual(ind, random_heis(rng), random_heis(rng)).distance for _ in range(1000)]
    g = random_heis(rng)
    ok = ind(g) == g.inverse() @ op(g.inverse())
    ok &= induced_operator(constant_identity())(g) == g.inverse()
    c3 = [Perm((0, 1, 2)), Perm((1, 2, 0)), Perm((2, 0, 1))]
    base = weight1_inverse()
    twice = induced_operator(induced_operator(base))
    ok &= all(twice(p) == base(p) for p in c3)
    return ok and max(ds) == 0.0, max(ds)


@example("precompose: weight one with L, pair weight with H, identity family")
def _():
    s3 = symmetric_group(3)
    e = s3[0]
    carrier = [SeqElt(t, e) for t in product(s3, repeat=2)]
    with_l = precompose("with_L", weight1_inverse(), SHIFT_FAMILY, carrier)
    with_h = precompose("with_H", shift_example(), SHIFT_FAMILY, carrier)
    same = precompose("with_L", weight1_inverse(), IDENTITY, carrier)
    ok = with_l.scan.is_pair_weight and with_h.scan.is_weight1
    ok &= all(same.operator(g) == g.inverse() for g in carrier)
    return ok, None


@example("trotter: E12, E23 -> I+E12+E23+E13/2 at order 1")
def _():
    rep = trotter_mul(E12, E23, Schedule(2, 12))
    want = exp_nilpotent(E12 + E23).to_float()
    ok = rep.limit.distance(want) <= 1e-9 and abs(rep.order - 1) <= 0.25
    return ok, rep.order


@example("trotter: y = 0 gives exp(x) at every n")
def _():
    x = Mat([[0.3, -1.0], [0.5, 0.2]])
    rep = trotter_mul(x, x * 0, Schedule(2, 8))
    return max(rep.errors) <= 1e-12, max(rep.errors)


@example("trotter: [[0,1],[0,0]] and [[0,0],[1,0]] within 1e-6 at 2^12")
def _():
    c, s = math.cosh(1.0), math.sinh(1.0)
    rep = trotter_mul(Mat([[0.0, 1.0], [0.0, 0.0]]), Mat([[0.0, 0.0], [1.0, 0.0]]), Schedule(2, 12))
    return _close(rep.limit, Mat([[c, s], [s, c]]), 1e-6)


@example("rb limit: projection to center, b = e and a = e")
def _():
    rng, op = _rng(6), rb_zero_closed_form(CENTER_PROJECTION)
    ds = [rb_limit_eval(op, random_heis(rng, False, 2), random_heis(rng, False, 2)).residual.distance for _ in range(5)]
    a = random_heis(rng, False, 2)
    ds += [rb_limit_eval(op, a, I3).residual.distance, rb_limit_eval(op, I3, a).residual.distance]
    return max(ds) <= 1e-6, max(ds)


@example("rb zero closed form: projection, zero map, first-coordinate map")
def _():
    a, b, c = _q("2/3"), -3, _q("5/4")
    g = exp_nilpotent(E12 * a + E23 * b + E13 * c)
    ok = rb_zero_closed_form(CENTER_PROJECTION)(g) == exp_nilpotent(E13 * c)
    ok &= rb_zero_closed_form(LieOperator.zero())(g) == I3
    ok &= rb_zero_closed_form(NEG_FIRST)(g) == exp_nilpotent(-E12 * a)
    return ok, None


@example("rboze finite form: projection, v = 0, random pairs")
def _():
    rng, op = _rng(7), rb_zero_closed_form(CENTER_PROJECTION)
    ds = [rboze_finite_residual(op, random_nil3(rng), random_nil3(rng)).distance for _ in range(200)]
    u = random_nil3(rng)
    r = rboze_finite_residual(op, u, Z)
    ok = r.lhs == op(exp_nilpotent(u)) and r.rhs == op(exp_nilpotent(u))
    return ok and max(ds) == 0.0, max(ds)


@example("rb lie residual: projection, zero, identity witness 2")
def _():
    basis3 = CENTER_PROJECTION.basis_elements()
    ds = [rb_lie_residual(B, ZERO_WEIGHT, u, v).distance
          for B in (CENTER_PROJECTION, LieOperator.zero()) for u in basis3 for v in basis3]
    ident = LieOperator.identity()
    w = rb_lie_residual(ident, pair_weight(ident, ident), E12, E23).distance
    return max(ds) == 0.0 and w == 2.0, w


# differential operators -----------------------------------------------------

AD12 = LieDerivation.ad(E12)


@example("diff closed form: ad_E12 on exp E23 and exp E12, zero map")
def _():
    op = diff_closed_form(AD12)
    ok = op(exp_nilpotent(E23)) == exp_nilpotent(E13) and op(exp_nilpotent(E12)) == I3
    ok &= diff_closed_form(LieDerivation.zero())(heis(1, 2, 3)) == I3
    return ok, None


@example("diffg0e: (E12, E23), (E23, E23), v = 0")
def _():
    op = diff_closed_form(AD12)
    r1 = diffg0e_residual(op, E12, E23)
    r2 = diffg0e_residual(op, E23, E23)
    r3 = diffg0e_residual(op, E12 + E13, Z)
    ok = r1.lhs == exp_nilpotent(E13) and r1.distance == 0.0
    ok &= r2.lhs == exp_nilpotent(E13 * 2) and r2.distance == 0.0
    ok &= r3.distance == 0.0
    return ok, None


@example("diff limit: ad_E12 random pairs, b = e, a = e")
def _():
    rng, op = _rng(8), diff_closed_form(AD12)
    ds = [diff_limit_residual(op, random_heis(rng, False, 2), random_heis(rng, False, 2)).residual.distance for _ in range(5)]
    a = random_heis(rng, False, 2)
    ds += [diff_limit_residual(op, a, I3).residual.distance, diff_limit_residual(op, I3, a).residual.distance]
    return max(ds) <= 1e-6, max(ds)


@example("lie derivation: ad_E12, zero map, identity witness 1")
def _():
    ok = lie_derivation_residual(AD12, ZERO_WEIGHT, E12, E23).distance == 0.0
    ok &= lie_derivation_residual(LieOperator.zero(), ZERO_WEIGHT, E12, E23).distance == 0.0
    w = lie_derivation_residual(LieOperator.identity(), ZERO_WEIGHT, E12, E23).distance
    return ok and w == 1.0, w


# tangents -------------------------------------------------------------------

@example("tangent: projection op along E13 and E12, identity op exact")
def _():
    op = rb_zero_closed_form(CENTER_PROJECTION)
    probe = CurveProbe(None, H7)
    e1 = tangent_of_operator(op, E13.to_float(), probe).distance(E13.to_float())
    e2 = tangent_of_operator(op, E12.to_float(), probe).frobenius()
    exact = tangent_of_operator(lambda g: g, E12 + E23, CurveProbe(None, Fraction(1, 8))) == E12 + E23
    return exact and max(e1, e2) <= 10 * H7**2, max(e1, e2)


@example("mixed bracket: identity ops, u = v, projection op")
def _():
    probe = CurveProbe(None, H7)
    ident = lambda g: g  # noqa: E731
    proj = rb_zero_closed_form(CENTER_PROJECTION)
    u, v = E12.to_float(), E23.to_float()
    d1 = mixed_second_bracket(ident, ident, u, v, probe).distance(E13.to_float())
    d2 = mixed_second_bracket(ident, ident, u, u, probe).frobenius()
    d3 = mixed_second_bracket(proj, proj, u, v, probe).frobenius()
    return max(d1, d2, d3) <= 10 * H7**2, max(d1, d2, d3)


@example("verify tangent: rbg2rbl0 fixture with slope 2 +- 0.2")
def _():
    rep = verify_tangent_theorem("rbg2rbl0", "center-projection")
    f = rep.fixtures[0]
    return f.passed, {"slope": f.slope, "tangent_error": f.tangent_error}


@example("verify tangent: dgpl0 extracts ad_E12")
def _():
    f = verify_tangent_theorem("dgpl0", "ad-E12").fixtures[0]
    return f.tangent_ok and f.identity_ok and f.extracted == AD12, f.tangent_error


@example("tangent of the identity operator is exact at every h")
def _():
    errs = [tangent_of_operator(lambda g: g, E12 + E23, CurveProbe(None, Fraction(1, 2**k))) - (E12 + E23)
            for k in range(3, 8)]
    return all(e.frobenius() == 0.0 for e in errs), None


@example("power tangent is lam times the direction")
def _():
    u = (E12 + E23 * 2 - E13).to_float()
    d = power_tangent(0.5, u).distance(u * 0.5)
    return d <= 1e-8, d


# CLI jobs -------------------------------------------------------------------

def _cli_jobs():
    from .cli import run

    rows = lambda m: m.to_json()["rows"]  # noqa: E731
    ftc = {"op": "ftc", "path": {"dim": 3, "coeffs": [rows(E12), rows(E23)]}, "x": 1, "mode": "closed"}
    trot = {"op": "trotter", "x": rows(E12), "y": rows(E23), "kmax": 12}
    rb = {"op": "verify-rb", "kind": "weight1", "operator": {"rule": "shift-example"}, "samples": 20}
    return run(ftc)[0], run(trot)[0], run(rb)[0]


@example("cli jobs: ftc pass, trotter pass, shift weight1 fail with witness")
def _():
    ftc, trot, rb = _cli_jobs()
    ok = ftc["status"] == "pass" and ftc["results"]["residual"] == [0.0, 0.0]
    ok &= trot["status"] == "pass" and abs(trot["results"]["report"]["order"] - 1) <= 0.25
    ok &= rb["status"] == "fail" and "witness" in rb["results"]
    return ok, None


def run_examples() -> list[ExampleResult]:
    out = []
    for name, fn in EXAMPLES:
        passed, value = fn()
        out.append(ExampleResult(name, bool(passed), _jsonable(value)))
    return out


def _jsonable(v):
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, bool) or v is None or isinstance(v, (int, float, str)):
        return v
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)
