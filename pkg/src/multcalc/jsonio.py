"""JSON literals for matrices, paths and signed elements, and report output.

Scalars are JSON numbers or ``"p/q"`` strings.  A matrix literal is
``{"dim": n, "rows": [[...], ...]}``; a bare list of rows is accepted too.
"""
from __future__ import annotations

import csv
import io
import json
import math
from typing import Any

from .errors import MultcalcError, SpecError
from .groups import SignedUnipotentElt
from .matgroup import Mat, NilMat, UnipotentElt
from .polypath import PolyPath
from .scalars import to_exact


def parse_scalar(x, exact: bool):
    if isinstance(x, bool) or not isinstance(x, (int, float, str)):
        raise SpecError(f"not a scalar literal: {x!r}")
    if isinstance(x, float) and not math.isfinite(x):
        raise SpecError("non-finite scalar")
    try:
        q = to_exact(x)
    except (MultcalcError, ValueError, ZeroDivisionError) as exc:
        raise SpecError(f"bad scalar literal {x!r}") from exc
    return q if exact else float(q)


def has_float(obj: Any) -> bool:
    """True when a JSON value contains a float literal anywhere."""
    if isinstance(obj, float):
        return True
    if isinstance(obj, dict):
        return any(has_float(v) for v in obj.values())
    if isinstance(obj, list):
        return any(has_float(v) for v in obj)
    return False


def parse_matrix(obj, exact: bool, cls=Mat) -> Mat:
    if isinstance(obj, dict):
        extra = set(obj) - {"dim", "rows"}
        if extra or "rows" not in obj:
            raise SpecError(f"matrix literal needs 'rows' and optional 'dim', got {sorted(obj)}")
        rows, dim = obj["rows"], obj.get("dim")
    else:
        rows, dim = obj, None
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise SpecError("matrix rows must be a non-empty list of lists")
    n = len(rows)
    if dim is not None and dim != n:
        raise SpecError(f"declared dim {dim} but {n} rows")
    if any(len(r) != n for r in rows):
        raise SpecError("matrix must be square")
    vals = [[parse_scalar(x, exact) for x in r] for r in rows]
    try:
        return cls(vals, exact=exact)
    except (MultcalcError, ValueError) as exc:
        raise SpecError(str(exc)) from exc


def parse_nilmat(obj, exact: bool) -> NilMat:
    return parse_matrix(obj, exact, NilMat)


def parse_unipotent(obj, exact: bool) -> UnipotentElt:
    return parse_matrix(obj, exact, UnipotentElt)


def parse_signed(obj, exact: bool) -> SignedUnipotentElt:
    if not isinstance(obj, dict) or set(obj) != {"sign", "body"}:
        raise SpecError("signed element needs exactly 'sign' and 'body'")
    if obj["sign"] not in (1, -1):
        raise SpecError("sign must be 1 or -1")
    body = parse_unipotent(obj["body"], exact)
    try:
        return SignedUnipotentElt(obj["sign"], body)
    except MultcalcError as exc:
        raise SpecError(str(exc)) from exc


def parse_polypath(obj, exact: bool) -> PolyPath:
    if not isinstance(obj, dict) or "coeffs" not in obj or set(obj) - {"dim", "coeffs"}:
        raise SpecError("path literal needs 'coeffs' and optional 'dim'")
    coeffs = obj["coeffs"]
    if not isinstance(coeffs, list) or not coeffs:
        raise SpecError("'coeffs' must be a non-empty list of matrices")
    mats = [parse_matrix(c, exact) for c in coeffs]
    dim = obj.get("dim", mats[0].dim)
    if any(m.dim != dim for m in mats):
        raise SpecError("coefficient sizes disagree with 'dim'")
    try:
        return PolyPath(mats, dim, exact)
    except (MultcalcError, ValueError) as exc:
        raise SpecError(str(exc)) from exc


def dumps(obj: Any) -> str:
    """Canonical JSON text: fixed key order from the builder, two-space indent."""
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def tables_csv(tables: list[tuple[str, list[dict]]]) -> str:
    """Convergence tables as CSV.

    A single table has columns ``n, value_frobnorm, delta, order_est``;
    several tables get a leading ``series`` column naming each one.
    """
    cols = ["n", "value_frobnorm", "delta", "order_est"]
    multi = len(tables) > 1
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow((["series"] if multi else []) + cols)
    for name, rows in tables:
        for r in rows:
            cells = ["" if r[c] is None else repr(r[c]) if isinstance(r[c], float) else r[c] for c in cols]
            w.writerow(([name] if multi else []) + cells)
    return buf.getvalue()


def summary_csv(fields: list[tuple[str, Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["field", "value"])
    for k, v in fields:
        w.writerow([k, "" if v is None else v])
    return buf.getvalue()
