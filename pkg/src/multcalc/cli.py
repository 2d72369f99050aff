"""Batch entry point: run one JSON job or a named scenario and print a report.

Usage::

    multcalc job.json            # or job on stdin
    multcalc --scenario acceptance-all --seed 7 --format json

Exit codes: 0 pass, 1 fail, 2 non-convergent, 3 spec error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Callable

import jsonschema

from . import acceptance, worked
from .calculus import (
    ftc_check,
    ibp_check,
    leibniz_check,
    mult_derivative_closed_nilpotent,
    mult_derivative_numeric,
    product_integral_closed_nilpotent,
    product_integral_numeric,
)
from .convergence import ConvergenceReport, Schedule
from .differential import diff_closed_form, diff_limit_residual, diffg0e_residual, lie_derivation_residual
from .errors import DomainError, MultcalcError, SpecError
from .groups import symmetric_group
from .jsonio import dumps, has_float, parse_matrix, parse_polypath, parse_scalar, summary_csv, tables_csv
from .lie import LieDerivation, LieOperator, LieWeight, ZERO_WEIGHT, limit_weight, pair_weight
from .matgroup import identity
from .rng import SplitMix64, random_heis, random_matrix, random_nil3, random_perm, random_seq, random_signed
from .rota_baxter import (
    GL2_GAUSS_SPLIT,
    HEISENBERG_SPLIT,
    constant_identity,
    factorization_operator,
    induced_operator,
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
from .tangent import FIXTURES, STENCILS, THEOREMS, verify_tangent_theorem
from .weights import PairWeightFamily

EXIT_CODES = {"pass": 0, "fail": 1, "non-convergent": 2}
EXIT_SPEC_ERROR = 3
DEFAULT_SAMPLES = 100

# schema -------------------------------------------------------------------

_SCALAR = {"oneOf": [{"type": "number"}, {"type": "string", "pattern": r"^\s*[-+]?\d+(\.\d+)?(/\d+)?\s*$"}]}
_ROWS = {"type": "array", "minItems": 1, "items": {"type": "array", "minItems": 1, "items": _SCALAR}}
_MATRIX = {
    "oneOf": [
        _ROWS,
        {
            "type": "object",
            "properties": {"dim": {"type": "integer", "minimum": 1}, "rows": _ROWS},
            "required": ["rows"],
            "additionalProperties": False,
        },
    ]
}
_PATH = {
    "type": "object",
    "properties": {"dim": {"type": "integer", "minimum": 1}, "coeffs": {"type": "array", "minItems": 1, "items": _MATRIX}},
    "required": ["coeffs"],
    "additionalProperties": False,
}
_COORDS = {
    "type": "array",
    "minItems": 3,
    "maxItems": 3,
    "items": {"type": "array", "minItems": 3, "maxItems": 3, "items": _SCALAR},
}
_SCHEDULE = {
    "type": "object",
    "properties": {
        "kmin": {"type": "integer", "minimum": 0, "maximum": 20},
        "kmax": {"type": "integer", "minimum": 1, "maximum": 20},
        "tol": {"type": "number", "exclusiveMinimum": 0},
    },
    "additionalProperties": False,
}
_FAMILY = {
    "type": "object",
    "properties": {
        "kind": {"enum": ["identity", "inverse", "power", "shift", "signed-power"]},
        "lam": _SCALAR,
    },
    "required": ["kind"],
    "additionalProperties": False,
}
_CARRIERS = ["heisenberg", "s3", "seq-s3", "signed-heisenberg", "gl2"]
_OPERATOR = {
    "type": "object",
    "properties": {
        "rule": {
            "enum": [
                "weight1-inverse",
                "constant",
                "factorization",
                "induced",
                "nilpotent-closed-form",
                "shift-example",
            ]
        },
        "lie": _COORDS,
        "decomposition": {"enum": ["heisenberg", "gl2-gauss"]},
        "carrier": {"enum": _CARRIERS},
    },
    "required": ["rule"],
    "additionalProperties": False,
}
_LIE_WEIGHT = {
    "oneOf": [
        {"enum": ["zero", "limit"]},
        {
            "type": "object",
            "properties": {"L": _COORDS, "H": _COORDS},
            "required": ["L", "H"],
            "additionalProperties": False,
        },
    ]
}
_COMMON = {
    "seed": {"type": "integer", "minimum": 0, "maximum": 2**64 - 1},
    "tol": {"type": "number", "minimum": 0},
    "format": {"enum": ["json", "csv"]},
}


def _job_schema(op: str, required: list[str], **props) -> dict:
    return {
        "type": "object",
        "properties": {"op": {"const": op}, **_COMMON, **props},
        "required": ["op", *required],
        "additionalProperties": False,
    }


_MODE = {"enum": ["closed", "numeric"]}
SCHEMAS = {
    "integrate": _job_schema("integrate", ["path", "x"], path=_PATH, x=_SCALAR, mode=_MODE, schedule=_SCHEDULE),
    "derive": _job_schema("derive", ["path", "x"], path=_PATH, x=_SCALAR, mode=_MODE, schedule=_SCHEDULE),
    "ibp": _job_schema("ibp", ["path", "path_b", "x"], path=_PATH, path_b=_PATH, x=_SCALAR, mode=_MODE,
                       schedule=_SCHEDULE),
    "leibniz": _job_schema("leibniz", ["path", "path_b", "x"], path=_PATH, path_b=_PATH, x=_SCALAR,
                           mode={"const": "closed"}),
    "ftc": _job_schema("ftc", ["path", "x"], path=_PATH, x=_SCALAR, mode={"const": "closed"}),
    "trotter": _job_schema("trotter", ["x", "y"], x=_MATRIX, y=_MATRIX, schedule=_SCHEDULE,
                           kmax={"type": "integer", "minimum": 1, "maximum": 20}),
    "verify-rb": _job_schema(
        "verify-rb",
        ["kind", "operator"],
        kind={"enum": ["pair", "weight1", "limit", "rboze", "lie"]},
        operator=_OPERATOR,
        family=_FAMILY,
        weight=_LIE_WEIGHT,
        samples={"type": "integer", "minimum": 0, "maximum": 100_000},
        schedule=_SCHEDULE,
    ),
    "verify-diff": _job_schema(
        "verify-diff",
        ["kind", "derivation"],
        kind={"enum": ["closed", "limit", "lie"]},
        derivation=_COORDS,
        weight={"enum": ["zero", "limit"]},
        samples={"type": "integer", "minimum": 0, "maximum": 100_000},
        schedule=_SCHEDULE,
    ),
    "verify-tangent": _job_schema(
        "verify-tangent",
        ["theorem"],
        theorem={"enum": sorted(THEOREMS)},
        fixture={"enum": ["all", *sorted(FIXTURES)]},
        hmin_exp={"type": "integer"},
        stencil={"enum": list(STENCILS)},
    ),
}


def validate(job: Any) -> None:
    """Schema check; raises :class:`SpecError` with the first violation."""
    if not isinstance(job, dict):
        raise SpecError("a job must be a JSON object")
    op = job.get("op")
    if op not in SCHEMAS:
        raise SpecError(f"unknown op {op!r}; expected one of {sorted(SCHEMAS)}")
    try:
        jsonschema.validate(job, SCHEMAS[op])
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<job>"
        raise SpecError(f"{where}: {exc.message}") from None


# dispatch -------------------------------------------------------------------

@dataclass
class Context:
    seed: int
    tol: float | None
    rational: bool


@dataclass
class Outcome:
    status: str
    results: dict
    tolerance: float | None = None
    tables: list[tuple[str, ConvergenceReport]] = field(default_factory=list)


def _schedule(job: dict, default: Schedule | None = None) -> Schedule:
    base = default or Schedule()
    spec = job.get("schedule", {})
    kmax = job.get("kmax", spec.get("kmax", base.kmax))
    return Schedule(spec.get("kmin", base.kmin), kmax, spec.get("tol", base.tol))


def _tol(ctx: Context, job: dict, default: float) -> float:
    if ctx.tol is not None:
        return ctx.tol
    return job.get("tol", default)


def _exact(ctx: Context, *payloads) -> bool:
    return ctx.rational or not any(has_float(p) for p in payloads)


def _status_of(report: ConvergenceReport, error: float | None, tol: float) -> str:
    if not report.converged:
        return "non-convergent"
    if error is not None and error > tol:
        return "fail"
    return "pass"


def _residual_status(value: float, tol: float) -> str:
    return "pass" if value <= tol else "fail"


def _op_integrate(job: dict, ctx: Context, derive: bool = False) -> Outcome:
    exact = _exact(ctx, job["path"], job["x"])
    u = parse_polypath(job["path"], exact)
    x = parse_scalar(job["x"], exact)
    mode = job.get("mode", "closed")
    closed_fn = mult_derivative_closed_nilpotent if derive else product_integral_closed_nilpotent
    closed = closed_fn(u, x) if u.dim == 3 else None
    if mode == "closed":
        if closed is None:
            raise DomainError("closed forms are implemented for 3x3 paths")
        return Outcome("pass", {"mode": "closed", "value": closed.to_json()})
    sched = _schedule(job)
    ref = closed.to_float() if closed is not None else None
    if derive:
        rep = mult_derivative_numeric(u.to_float(), float(x), schedule=sched, reference=ref)
    else:
        rep = product_integral_numeric(u.to_float(), interval=(0.0, float(x)), schedule=sched, reference=ref)
    tol = _tol(ctx, job, sched.tol)
    name = "derivative" if derive else "integral"
    return Outcome(
        _status_of(rep, rep.limit_error, tol), {"mode": "numeric", "report": rep.to_json()}, tol, [(name, rep)]
    )


def _op_ibp(job: dict, ctx: Context) -> Outcome:
    exact = _exact(ctx, job["path"], job["path_b"], job["x"])
    a, b = parse_polypath(job["path"], exact), parse_polypath(job["path_b"], exact)
    x = parse_scalar(job["x"], exact)
    mode = job.get("mode", "closed")
    if mode == "closed":
        res = ibp_check(a, b, x)
        tol = _tol(ctx, job, 0.0 if exact else 1e-12)
        return Outcome(_residual_status(res.distance, tol), {"mode": "closed", "residual": res.residual.to_json()}, tol)
    sched = _schedule(job)
    res = ibp_check(a, b, x, "numeric", sched)
    tol = _tol(ctx, job, sched.tol)
    status = "non-convergent" if not res.converged else _residual_status(res.distance, tol)
    names = ("lhs-a", "lhs-b", "rhs")
    return Outcome(
        status,
        {"mode": "numeric", "residual": res.distance, "reports": {n: r.to_json() for n, r in zip(names, res.reports)}},
        tol,
        list(zip(names, res.reports)),
    )


def _op_leibniz(job: dict, ctx: Context) -> Outcome:
    exact = _exact(ctx, job["path"], job["path_b"], job["x"])
    a, b = parse_polypath(job["path"], exact), parse_polypath(job["path_b"], exact)
    res = leibniz_check(a, b, parse_scalar(job["x"], exact))
    tol = _tol(ctx, job, 0.0 if exact else 1e-12)
    return Outcome(_residual_status(res.distance, tol), {"residual": res.to_json()}, tol)


def _op_ftc(job: dict, ctx: Context) -> Outcome:
    exact = _exact(ctx, job["path"], job["x"])
    u = parse_polypath(job["path"], exact)
    res = ftc_check(u, parse_scalar(job["x"], exact))
    tol = _tol(ctx, job, 0.0 if exact else 1e-12)
    d = res.distances
    return Outcome(
        _residual_status(max(d), tol),
        {"residual": list(d), "path_vanishes_at_0": u.eval(0).frobenius() == 0.0},
        tol,
    )


def _op_trotter(job: dict, ctx: Context) -> Outcome:
    x, y = parse_matrix(job["x"], False), parse_matrix(job["y"], False)
    sched = _schedule(job)
    rep = trotter_mul(x, y, sched)
    tol = _tol(ctx, job, sched.tol)
    return Outcome(_status_of(rep, rep.limit_error, tol), {"report": rep.to_json()}, tol, [("trotter", rep)])


# verify-rb ----------------------------------------------------------------

_DEFAULT_CARRIER = {
    "weight1-inverse": "heisenberg",
    "constant": "heisenberg",
    "factorization": None,
    "induced": None,
    "nilpotent-closed-form": "heisenberg",
    "shift-example": "seq-s3",
}


def _lie(coords, exact: bool) -> LieOperator:
    return LieOperator([[parse_scalar(x, exact) for x in r] for r in coords])


def _family(spec: dict | None, default: str) -> PairWeightFamily:
    if spec is None:
        return PairWeightFamily(default)
    lam = spec.get("lam", 1)
    return PairWeightFamily(spec["kind"], parse_scalar(lam, not isinstance(lam, float)))


def _build_operator(spec: dict, family: PairWeightFamily):
    rule = spec["rule"]
    decomposition = GL2_GAUSS_SPLIT if spec.get("decomposition") == "gl2-gauss" else HEISENBERG_SPLIT
    if rule == "weight1-inverse":
        return weight1_inverse()
    if rule == "constant":
        return constant_identity()
    if rule == "factorization":
        return factorization_operator(decomposition, family)
    if rule == "induced":
        return induced_operator(factorization_operator(decomposition, family), family)
    if rule == "shift-example":
        return shift_example()
    if "lie" not in spec:
        raise SpecError("operator.lie is required for the nilpotent closed form")
    return rb_zero_closed_form(_lie(spec["lie"], not has_float(spec["lie"])))


def _carrier(spec: dict) -> str:
    if "carrier" in spec:
        return spec["carrier"]
    default = _DEFAULT_CARRIER[spec["rule"]]
    if default is None:
        return "gl2" if spec.get("decomposition") == "gl2-gauss" else "heisenberg"
    return default


def _sampler(carrier: str, exact: bool) -> Callable[[SplitMix64], Any]:
    s3 = symmetric_group(3)
    if carrier == "heisenberg":
        return lambda rng: random_heis(rng, exact)
    if carrier == "s3":
        return lambda rng: random_perm(rng)
    if carrier == "seq-s3":
        return lambda rng: random_seq(rng, s3)
    if carrier == "signed-heisenberg":
        return lambda rng: random_signed(rng, exact)
    return lambda rng: identity(2, exact=False) + random_matrix(rng, 2, 0.5)


def _witness(a, b, residual: float) -> dict:
    return {"a": a.to_json(), "b": b.to_json(), "residual": residual}


def _scan_pairs(pairs, residual_fn, tol: float) -> dict:
    worst, witness = 0.0, None
    for a, b in pairs:
        d = residual_fn(a, b).distance
        worst = max(worst, d)
        if witness is None and d > tol:
            witness = _witness(a, b, d)
    out = {"samples": len(pairs), "max_residual": worst}
    if witness is not None:
        out["witness"] = witness
    return out


def _lie_weight(spec, exact: bool) -> LieWeight:
    if spec is None or spec == "zero":
        return ZERO_WEIGHT
    if spec == "limit":
        return limit_weight()
    return pair_weight(_lie(spec["L"], exact), _lie(spec["H"], exact))


def _lie_pairs(rng: SplitMix64, samples: int, exact: bool):
    basis = LieOperator.zero().basis_elements(exact)
    pairs = [(u, v) for u in basis for v in basis]
    return pairs + [(random_nil3(rng, exact), random_nil3(rng, exact)) for _ in range(samples)]


def _op_verify_rb(job: dict, ctx: Context) -> Outcome:
    kind, spec = job["kind"], job["operator"]
    rng = SplitMix64(ctx.seed)
    samples = job.get("samples", DEFAULT_SAMPLES)
    if kind == "lie":
        if "lie" not in spec:
            raise SpecError("operator.lie is required for kind 'lie'")
        exact = _exact(ctx, spec["lie"], job.get("weight"))
        B = _lie(spec["lie"], exact)
        weight = _lie_weight(job.get("weight"), exact)
        tol = _tol(ctx, job, 0.0 if exact else 1e-9)
        out = _scan_pairs(_lie_pairs(rng, samples, exact), lambda u, v: rb_lie_residual(B, weight, u, v), tol)
        return Outcome(_residual_status(out["max_residual"], tol), out, tol)

    default_family = "shift" if spec["rule"] == "shift-example" else ("power" if kind == "limit" else "identity")
    family = _family(job.get("family"), default_family)
    try:
        op = _build_operator(spec, family)
    except DomainError as exc:
        return Outcome("fail", {"error": str(exc)})
    carrier = _carrier(spec)

    if kind == "limit":
        if carrier != "heisenberg":
            raise SpecError("limit evaluation is implemented on the Heisenberg carrier")
        sched = _schedule(job)
        tol = _tol(ctx, job, 1e-6)
        evals = [
            rb_limit_eval(op, random_heis(rng, False, 2), random_heis(rng, False, 2), family, sched)
            for _ in range(samples)
        ]
        worst = max((e.residual.distance for e in evals), default=0.0)
        converged = all(e.report.converged for e in evals)
        status = "non-convergent" if not converged else _residual_status(worst, tol)
        reports = [
            {"residual": e.residual.distance, "converged": e.report.converged, "order": e.report.order,
             "limit_weight_zero": e.limit_weight_zero}
            for e in evals
        ]
        return Outcome(status, {"samples": samples, "max_residual": worst, "reports": reports}, tol)

    if kind == "rboze":
        tol = _tol(ctx, job, 0.0)
        pairs = [(random_nil3(rng), random_nil3(rng)) for _ in range(samples)]
        out = _scan_pairs(pairs, lambda u, v: rboze_finite_residual(op, u, v), tol)
        return Outcome(_residual_status(out["max_residual"], tol), out, tol)

    exact = carrier != "gl2"
    tol = _tol(ctx, job, 0.0 if exact else 1e-9)
    draw = _sampler(carrier, exact)
    pairs = [(draw(rng), draw(rng)) for _ in range(samples)]
    if kind == "pair":
        out = _scan_pairs(pairs, lambda a, b: rb_pair_residual(op, family, a, b), tol)
    else:
        if spec["rule"] == "shift-example" and carrier == "seq-s3":
            pairs = [acceptance.shift_witness(), *pairs]
        out = _scan_pairs(pairs, lambda a, b: rb_weight1_residual(op, a, b), tol)
    return Outcome(_residual_status(out["max_residual"], tol), out, tol)


# verify-diff ----------------------------------------------------------------

def _op_verify_diff(job: dict, ctx: Context) -> Outcome:
    kind = job["kind"]
    rng = SplitMix64(ctx.seed)
    samples = job.get("samples", DEFAULT_SAMPLES)
    exact = _exact(ctx, job["derivation"])
    D = LieDerivation([[parse_scalar(x, exact) for x in r] for r in job["derivation"]])
    if kind == "lie":
        weight = limit_weight() if job.get("weight") == "limit" else ZERO_WEIGHT
        tol = _tol(ctx, job, 0.0 if exact else 1e-9)
        out = _scan_pairs(_lie_pairs(rng, samples, exact), lambda u, v: lie_derivation_residual(D, weight, u, v), tol)
        return Outcome(_residual_status(out["max_residual"], tol), out, tol)
    try:
        op = diff_closed_form(D)
    except DomainError as exc:
        return Outcome("fail", {"error": str(exc)})
    if kind == "closed":
        tol = _tol(ctx, job, 0.0 if exact else 1e-9)
        pairs = [(random_nil3(rng, exact), random_nil3(rng, exact)) for _ in range(samples)]
        out = _scan_pairs(pairs, lambda u, v: diffg0e_residual(op, u, v), tol)
        return Outcome(_residual_status(out["max_residual"], tol), out, tol)
    sched = _schedule(job)
    tol = _tol(ctx, job, 1e-6)
    evals = [
        diff_limit_residual(op, random_heis(rng, False, 2), random_heis(rng, False, 2), schedule=sched)
        for _ in range(samples)
    ]
    worst = max((e.residual.distance for e in evals), default=0.0)
    converged = all(e.report.converged for e in evals)
    status = "non-convergent" if not converged else _residual_status(worst, tol)
    reports = [{"residual": e.residual.distance, "converged": e.report.converged, "order": e.report.order} for e in evals]
    return Outcome(status, {"samples": samples, "max_residual": worst, "reports": reports}, tol)


def _op_verify_tangent(job: dict, ctx: Context) -> Outcome:
    tol = _tol(ctx, job, 1e-6)
    rep = verify_tangent_theorem(
        job["theorem"], job.get("fixture", "all"), job.get("hmin_exp", 7), tol, job.get("stencil", "central-2")
    )
    return Outcome("pass" if rep.passed else "fail", rep.to_json(), tol)


HANDLERS: dict[str, Callable[[dict, Context], Outcome]] = {
    "integrate": _op_integrate,
    "derive": lambda job, ctx: _op_integrate(job, ctx, derive=True),
    "ibp": _op_ibp,
    "leibniz": _op_leibniz,
    "ftc": _op_ftc,
    "trotter": _op_trotter,
    "verify-rb": _op_verify_rb,
    "verify-diff": _op_verify_diff,
    "verify-tangent": _op_verify_tangent,
}


# reports ------------------------------------------------------------------

def run(job: dict, seed: int | None = None, tol: float | None = None, rational: bool = False) -> tuple[dict, list]:
    """Validate and execute one job; returns the report and its tables."""
    validate(job)
    seed = seed if seed is not None else job.get("seed", acceptance.DEFAULT_SEED)
    ctx = Context(seed, tol, rational)
    outcome = HANDLERS[job["op"]](job, ctx)
    report = {
        "job": job,
        "seed": seed,
        "status": outcome.status,
        "tolerance": outcome.tolerance,
        "results": outcome.results,
    }
    return report, [(name, rep.table()) for name, rep in outcome.tables]


def _aggregate(statuses) -> str:
    statuses = list(statuses)
    if "fail" in statuses:
        return "fail"
    if "non-convergent" in statuses:
        return "non-convergent"
    return "pass"


def _criterion_entry(res: acceptance.CriterionResult) -> dict:
    return {"name": f"criterion-{res.number}", "status": "pass" if res.passed else "fail", **res.to_json()}


def scenario(name: str, seed: int | None = None) -> dict:
    """Run a named bundle and aggregate its statuses in declared order."""
    seed = acceptance.DEFAULT_SEED if seed is None else seed
    if name == "acceptance-all":
        first = acceptance.run_bundle(seed)
        entries = [_criterion_entry(r) for r in first]
        entries.append(_criterion_entry(acceptance.criterion_11(seed, first)))
    elif name == "paper-examples":
        entries = [e.to_json() for e in worked.run_examples()]
    elif name.startswith("criterion-") and name[len("criterion-"):].isdigit():
        k = int(name[len("criterion-"):])
        if k == 11:
            entries = [_criterion_entry(acceptance.criterion_11(seed))]
        elif k in acceptance.CRITERIA:
            entries = [_criterion_entry(acceptance.CRITERIA[k](seed))]
        else:
            raise SpecError(f"unknown scenario {name!r}")
    else:
        raise SpecError(f"unknown scenario {name!r}")
    return {
        "scenario": name,
        "seed": seed,
        "status": _aggregate(e["status"] for e in entries),
        "results": entries,
    }


def _summary_fields(report: dict) -> list[tuple[str, Any]]:
    fields = [("status", report["status"])]
    if "scenario" in report:
        return fields + [(e["name"], e["status"]) for e in report["results"]]
    fields.append(("tolerance", report["tolerance"]))
    for k, v in report["results"].items():
        if isinstance(v, (int, float, str, bool)) or v is None:
            fields.append((k, v))
        elif isinstance(v, list) and all(isinstance(x, (int, float)) for x in v):
            fields.append((k, " ".join(repr(x) for x in v)))
    return fields


def render(report: dict, tables: list, fmt: str) -> str:
    if fmt == "csv":
        return tables_csv(tables) if tables else summary_csv(_summary_fields(report))
    return dumps(report)


# entry point ----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise SpecError(message)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="multcalc", description="Run a JSON job or a named verification scenario.")
    p.add_argument("job", nargs="?", help="job file ('-' or omitted: read stdin)")
    p.add_argument("--scenario", help="named bundle: acceptance-all, paper-examples, criterion-N")
    p.add_argument("--format", choices=["json", "csv"], default=None)
    p.add_argument("--seed", type=int, default=None, help="64-bit seed for sampled suites")
    p.add_argument("--tol", type=float, default=None, help="tolerance override")
    p.add_argument("--timing", action="store_true", help="add wall_time to the JSON report")
    return p


def _read_job(path: str | None) -> dict:
    try:
        text = sys.stdin.read() if path in (None, "-") else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise SpecError(f"cannot read job: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"malformed JSON: {exc}") from None


def main(argv: list[str] | None = None) -> int:
    start = time.perf_counter()
    try:
        args = _parser().parse_args(argv)
        if args.seed is not None and not 0 <= args.seed < 2**64:
            raise SpecError("--seed must fit in 64 unsigned bits")
        if args.tol is not None and not args.tol >= 0:
            raise SpecError("--tol must be non-negative")
        rational = os.environ.get("MULTCALC_RATIONAL") == "1"
        if args.scenario is not None:
            if args.job is not None:
                raise SpecError("give either a job or --scenario, not both")
            report, tables = scenario(args.scenario, args.seed), []
            fmt = args.format or "json"
        else:
            job = _read_job(args.job)
            report, tables = run(job, args.seed, args.tol, rational)
            fmt = args.format or job.get("format", "json")
    except (SpecError, MultcalcError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC_ERROR
    if args.timing:
        report["wall_time"] = time.perf_counter() - start
    sys.stdout.write(render(report, tables, fmt))
    return EXIT_CODES[report["status"]]


if __name__ == "__main__":
    sys.exit(main())
