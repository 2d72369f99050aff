"""The acceptance criteria as runnable, seeded checks.

Each ``criterion_k(seed)`` returns a :class:`CriterionResult` whose
``checks`` name every sub-condition.  Runtimes are not part of the result
so that reports stay byte-identical between runs; the test-suite times
each call separately.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from .calculus import (
    ftc_check,
    ibp_check,
    leibniz_check,
    product_integral_closed_nilpotent,
    product_integral_numeric,
)
from .convergence import Schedule
from .differential import diff_closed_form, diff_limit_residual, diffg0e_residual
from .groups import Perm, SeqElt, symmetric_group
from .jsonio import dumps
from .lie import LieDerivation
from .matgroup import basis, exp_nilpotent
from .polypath import PolyPath
from .rng import MASK64, SplitMix64, random_heis, random_matrix, random_nil3, random_polypath, random_seq
from .rota_baxter import (
    HEISENBERG_SPLIT,
    SHIFT_FAMILY,
    SHIPPED_RB_ZERO,
    factorization_operator,
    induced_operator,
    rb_limit_eval,
    rb_pair_residual,
    rb_weight1_residual,
    rb_zero_closed_form,
    rboze_finite_residual,
    shift_example,
    trotter_mul,
)
from .scalars import to_exact
from .tangent import verify_tangent_theorem

DEFAULT_SEED = 20240917

# runtime bounds in seconds, checked by the test-suite
RUNTIME_BOUNDS = {1: 1.0, 2: 1.0, 3: 10.0, 4: 1.0, 5: 5.0, 6: 5.0, 8: 10.0, 9: 5.0, 10: 5.0}

# shift operator on S3-sequences: a = (e, (0 2 1)), b = (e, (1 0 2)) breaks
# the weight-one identity; found by exhaustive search over support <= 2
SHIFT_WEIGHT1_WITNESS = (((0, 1, 2), (0, 2, 1)), ((0, 1, 2), (1, 0, 2)))


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    checks: dict[str, bool]
    metrics: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed,
            "checks": dict(self.checks),
            "metrics": dict(self.metrics),
        }


def _rng(seed: int, number: int) -> SplitMix64:
    return SplitMix64((seed ^ (number * 0x9E3779B97F4A7C15)) & MASK64)


def _e(i: int, j: int):
    return basis(i, j)


def criterion_1(seed: int = DEFAULT_SEED) -> CriterionResult:
    u = PolyPath([_e(1, 2), _e(2, 3)], 3, True)
    closed = product_integral_closed_nilpotent(u, 1)
    oracle = exp_nilpotent(_e(1, 2) + _e(2, 3) / 2 - _e(1, 3) / 12)
    rep = product_integral_numeric(u.to_float(), schedule=Schedule(2, 12, 1e-3), reference=oracle.to_float())
    err = rep.errors[-1]
    return CriterionResult(
        1,
        "product-integral closed form",
        {
            "closed_form_matches_oracle": closed == oracle,
            "error_at_4096": rep.ns[-1] == 4096 and err <= 1e-3,
            "order_in_band": rep.order is not None and 0.75 <= rep.order <= 1.25,
        },
        {"error_at_4096": err, "order": rep.order, "extrapolated_error": rep.limit_error},
    )


def criterion_2(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _rng(seed, 2)
    worst = [0.0, 0.0]
    for _ in range(50):
        u = random_polypath(rng, rng.randint(0, 3))
        x = rng.rational(0, 2, 4)
        d = ftc_check(u, x).distances
        worst = [max(worst[0], d[0]), max(worst[1], d[1])]
    return CriterionResult(
        2,
        "fundamental theorem, both directions",
        {"derivative_of_integral_zero": worst[0] == 0.0, "integral_of_derivative_zero": worst[1] == 0.0},
        {"samples": 50, "max_residuals": worst},
    )


def ibp_fixtures(seed: int = DEFAULT_SEED) -> list[tuple[PolyPath, PolyPath, Any]]:
    """Five path pairs for the numeric integration-by-parts check."""
    e12, e23, e13 = _e(1, 2), _e(2, 3), _e(1, 3)
    z = e12 * 0
    p = lambda *cs: PolyPath(list(cs), 3, True)  # noqa: E731
    rng = _rng(seed, 103)
    return [
        (p(e12), p(e23), 1),
        (p(e12, e23), p(z, e12, e23 / 2), 1),
        (p(e23, e12), p(e12, -e13), to_exact("3/2")),
        (p(e13, e12, e23), p(e23, -e12), 1),
        (random_polypath(rng, 2, 1), random_polypath(rng, 2, 1), 1),
    ]


def criterion_3(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _rng(seed, 3)
    worst_closed = 0.0
    for _ in range(200):
        a = random_polypath(rng, rng.randint(0, 2))
        b = random_polypath(rng, rng.randint(0, 2))
        worst_closed = max(worst_closed, ibp_check(a, b, rng.rational(0, 2, 4)).distance)
    numeric = [ibp_check(a, b, x, "numeric", Schedule(2, 12, 1e-3)).distance for a, b, x in ibp_fixtures(seed)]
    return CriterionResult(
        3,
        "integration by parts",
        {"closed_zero": worst_closed == 0.0, "numeric_within_1e-4": max(numeric) <= 1e-4},
        {"closed_samples": 200, "max_closed_residual": worst_closed, "numeric_residuals": numeric},
    )


def criterion_4(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _rng(seed, 4)
    e12, e23, e13 = _e(1, 2), _e(2, 3), _e(1, 3)
    z = e12 * 0
    a0, b0 = PolyPath([z, e12], 3, True), PolyPath([z, e23], 3, True)
    fixture_ok, worst = True, 0.0
    for x in (to_exact(v) for v in ("0", "1", "-2", "5/3")):
        r = leibniz_check(a0, b0, x)
        fixture_ok &= r.lhs == exp_nilpotent(e12 + e23 + e13 * x)
        worst = max(worst, r.distance)
    for _ in range(200):
        a = random_polypath(rng, rng.randint(0, 3))
        b = random_polypath(rng, rng.randint(0, 3))
        worst = max(worst, leibniz_check(a, b, rng.rational(-2, 2, 4)).distance)
    return CriterionResult(
        4,
        "Leibniz rule",
        {"fixture_value": bool(fixture_ok), "residual_zero": worst == 0.0},
        {"samples": 204, "max_residual": worst},
    )


def criterion_5(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _rng(seed, 5)
    ratios = []
    for k in range(20):
        dim = 2 if k < 10 else 3
        x, y = random_matrix(rng, dim), random_matrix(rng, dim)
        errs = trotter_mul(x, y, Schedule(4, 12, 1e-3)).errors
        ratios.append([b / a for a, b in zip(errs[:-1], errs[1:])])
    flat = [r for rs in ratios for r in rs]
    return CriterionResult(
        5,
        "Lie-Trotter halving",
        {"halves_within_25pct": all(0.375 <= r <= 0.625 for r in flat)},
        {"samples": 20, "min_ratio": min(flat), "max_ratio": max(flat)},
    )


def criterion_6(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _rng(seed, 6)
    op = factorization_operator(HEISENBERG_SPLIT)
    worst = 0.0
    for _ in range(10_000):
        worst = max(worst, rb_weight1_residual(op, random_heis(rng), random_heis(rng)).distance)
    ind = induced_operator(op)
    worst_ind = 0.0
    for _ in range(1_000):
        worst_ind = max(worst_ind, rb_weight1_residual(ind, random_heis(rng), random_heis(rng)).distance)
    return CriterionResult(
        6,
        "factorization operator",
        {"factorization_zero": worst == 0.0, "induced_zero": worst_ind == 0.0},
        {"samples": 10_000, "induced_samples": 1_000, "max_residual": worst, "max_induced_residual": worst_ind},
    )


def shift_witness() -> tuple[SeqElt, SeqElt]:
    e = Perm((0, 1, 2))
    a, b = SHIFT_WEIGHT1_WITNESS
    return SeqElt(tuple(Perm(p) for p in a), e), SeqElt(tuple(Perm(p) for p in b), e)


def criterion_7(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _rng(seed, 7)
    op, s3 = shift_example(), symmetric_group(3)
    worst = 0.0
    for _ in range(1_000):
        a, b = random_seq(rng, s3), random_seq(rng, s3)
        worst = max(worst, rb_pair_residual(op, SHIFT_FAMILY, a, b).distance)
    wa, wb = shift_witness()
    w1 = rb_weight1_residual(op, wa, wb)
    return CriterionResult(
        7,
        "shift example",
        {"pair_weight_zero": worst == 0.0, "witness_breaks_weight1": w1.distance > 0.0},
        {
            "samples": 1_000,
            "max_pair_residual": worst,
            "witness": {"a": wa.to_json(), "b": wb.to_json()},
            "witness_weight1_residual": w1.distance,
        },
    )


def criterion_8(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _rng(seed, 8)
    finite, limit = {}, {}
    for name, B in SHIPPED_RB_ZERO.items():
        op = rb_zero_closed_form(B)
        finite[name] = max(
            rboze_finite_residual(op, random_nil3(rng), random_nil3(rng)).distance for _ in range(200)
        )
        limit[name] = max(
            rb_limit_eval(op, random_heis(rng, False, 2), random_heis(rng, False, 2)).residual.distance
            for _ in range(20)
        )
    return CriterionResult(
        8,
        "limit-weight-zero Rota-Baxter",
        {"finite_form_zero": all(v == 0.0 for v in finite.values()),
         "limit_within_1e-6": all(v <= 1e-6 for v in limit.values())},
        {"samples": 200, "limit_samples": 20, "max_finite_residual": finite, "max_limit_residual": limit},
    )


def criterion_9(seed: int = DEFAULT_SEED) -> CriterionResult:
    reports = [verify_tangent_theorem(t) for t in ("rbg2rbl0", "dgpl0")]
    fixtures = [f for r in reports for f in r.fixtures]
    return CriterionResult(
        9,
        "tangent theorems",
        {
            "tangents_match": all(f.tangent_ok for f in fixtures),
            "identities_exact": all(f.identity_ok and f.identity_exact for f in fixtures),
            "slope_2_within_0.2": all(f.order_ok for f in fixtures),
        },
        {"slopes": {f.fixture: f.slope for f in fixtures}, "errors": {f.fixture: list(f.errors) for f in fixtures}},
    )


def criterion_10(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _rng(seed, 10)
    finite, limit = {}, {}
    for name, (i, j) in (("ad_E12", (1, 2)), ("ad_E23", (2, 3)), ("ad_E13", (1, 3))):
        op = diff_closed_form(LieDerivation.ad(basis(i, j)))
        finite[name] = max(
            diffg0e_residual(op, random_nil3(rng), random_nil3(rng)).distance for _ in range(200)
        )
        limit[name] = max(
            diff_limit_residual(op, random_heis(rng, False, 2), random_heis(rng, False, 2)).residual.distance
            for _ in range(20)
        )
    return CriterionResult(
        10,
        "differential closed form",
        {"finite_form_zero": all(v == 0.0 for v in finite.values()),
         "limit_within_1e-6": all(v <= 1e-6 for v in limit.values())},
        {"samples": 200, "limit_samples": 20, "max_finite_residual": finite, "max_limit_residual": limit},
    )


CRITERIA: dict[int, Callable[[int], CriterionResult]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
}


def run_bundle(seed: int = DEFAULT_SEED) -> list[CriterionResult]:
    return [fn(seed) for fn in CRITERIA.values()]


def criterion_11(seed: int = DEFAULT_SEED, first: list[CriterionResult] | None = None) -> CriterionResult:
    """Two evaluations of criteria 1-10 serialize to identical bytes."""
    first = first if first is not None else run_bundle(seed)
    a = dumps([r.to_json() for r in first])
    b = dumps([r.to_json() for r in run_bundle(seed)])
    return CriterionResult(11, "determinism", {"byte_identical": a == b}, {"bytes": len(a)})


__all__ = ["CRITERIA", "CriterionResult", "DEFAULT_SEED", "RUNTIME_BOUNDS", "criterion_11", "run_bundle"]
