import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from multcalc.convergence import Schedule, order_from_deltas, report_from_values, richardson, run_schedule
from multcalc.errors import DomainError
from multcalc.matgroup import Mat


def scalar_mat(v: float) -> Mat:
    return Mat(np.array([[v, 0.0], [0.0, 0.0]]))


def test_schedule_ns_and_json():
    s = Schedule(2, 5, 1e-4)
    assert s.ns == (4, 8, 16, 32)
    assert s.to_json() == {"kmin": 2, "kmax": 5, "tol": 1e-4}


@pytest.mark.parametrize("kw", [dict(kmin=3, kmax=3), dict(kmin=-1, kmax=3), dict(tol=0.0), dict(decay=0)])
def test_schedule_validation(kw):
    with pytest.raises(DomainError):
        Schedule(**kw)


def test_richardson_removes_leading_term():
    # v(h) = 1 + 3h
    assert richardson(1 + 3 * 0.1, 1 + 3 * 0.05) == pytest.approx(1.0)
    # v(h) = 1 + h^2
    assert richardson(1 + 0.01, 1 + 0.0025, order=2) == pytest.approx(1.0)


@pytest.mark.parametrize("p", [1, 2, 3])
def test_order_from_geometric_deltas(p):
    deltas = [2.0 ** (-p * k) for k in range(6)]
    assert order_from_deltas(deltas) == pytest.approx(p)


def test_order_skips_deltas_below_floor():
    assert order_from_deltas([0.0, 0.0, 0.0]) is None
    assert order_from_deltas([1.0, 0.5, 1e-20], floor=1e-13) == pytest.approx(1.0)


@pytest.mark.parametrize("p", [1, 2])
def test_run_schedule_on_known_sequence(p):
    rep = run_schedule(lambda n: scalar_mat(1.0 + 1.0 / n**p), Schedule(2, 12, 1e-3))
    assert rep.order == pytest.approx(p, abs=1e-6)
    assert rep.converged
    if p == 1:
        assert rep.limit.distance(scalar_mat(1.0)) < 1e-12
    table = rep.table()
    assert [row["n"] for row in table] == list(rep.ns)
    assert table[0]["delta"] is None and table[0]["order_est"] is None
    assert table[-1]["order_est"] == pytest.approx(p)


def test_reference_errors():
    ref = scalar_mat(1.0)
    rep = run_schedule(lambda n: scalar_mat(1.0 + 1.0 / n), Schedule(2, 6), reference=ref)
    assert rep.errors == tuple(1.0 / n for n in rep.ns)
    assert rep.limit_error == pytest.approx(0.0, abs=1e-15)
    assert rep.to_json()["limit_error"] == rep.limit_error


def test_non_convergent_sequences_are_flagged():
    # oscillation: deltas never shrink
    rep = run_schedule(lambda n: scalar_mat(float(int(math.log2(n)) % 2)), Schedule(2, 8))
    assert not rep.converged
    # slow decay: monotone but above the tolerance at the last level
    slow = run_schedule(lambda n: scalar_mat(1.0 / math.log2(n)), Schedule(2, 8, 1e-3))
    assert not slow.converged


def test_constant_sequence_is_converged_with_no_order():
    rep = run_schedule(lambda n: scalar_mat(2.0), Schedule(2, 6))
    assert rep.converged
    assert rep.order is None
    assert rep.final_delta == 0.0


@given(st.floats(0.1, 10), st.floats(-5, 5))
def test_first_order_extrapolation_is_exact_for_linear_error(c, limit):
    rep = report_from_values((4, 8), (scalar_mat(limit + c / 4), scalar_mat(limit + c / 8)), Schedule(2, 3))
    assert rep.limit.distance(scalar_mat(limit)) <= 1e-12 * max(1.0, abs(limit) + c)
