from fractions import Fraction

import pytest

from conftest import E12, E13, E23
from multcalc.errors import DomainError
from multcalc.lie import LieOperator
from multcalc.matgroup import power_real
from multcalc.tangent import (
    FIXTURES,
    MAX_FLOAT_EXP,
    THEOREMS,
    CurveProbe,
    error_ladder,
    extract_operator,
    log_power_decay,
    mixed_second_bracket,
    power_tangent,
    slope_in_inverse_n,
    tangent_of_operator,
    verify_fixture,
    verify_tangent_theorem,
)

HEIS_FIXTURES = [n for n in FIXTURES if n != "gl2-gauss"]


@pytest.mark.parametrize("name", HEIS_FIXTURES)
def test_exact_extraction_recovers_expected_operator(name):
    fx = FIXTURES[name]
    got = extract_operator(fx.operator, fx.expected, CurveProbe(None, Fraction(1, 8)), exact=True)
    assert got == fx.expected


@pytest.mark.parametrize("name", HEIS_FIXTURES)
def test_heisenberg_ladders_are_exact(name):
    # log-curves of these operators are polynomials of degree <= 2 in t, so
    # central differences carry no truncation error at any step
    _, errs, extrap, _ = error_ladder(FIXTURES[name], range(3, 8))
    assert max(errs) == 0.0 and extrap == 0.0


def test_gl2_ladder_has_slope_two():
    rep = verify_fixture("rb-weight1", FIXTURES["gl2-gauss"])
    assert rep.slope == pytest.approx(2.0, abs=0.2)
    assert rep.order_ok and rep.tangent_ok and rep.identity_ok
    assert rep.tangent_error <= 1e-6


def test_gl2_four_point_stencil_is_more_accurate():
    _, errs2, _, _ = error_ladder(FIXTURES["gl2-gauss"], range(3, 6), "central-2")
    _, errs4, _, _ = error_ladder(FIXTURES["gl2-gauss"], range(3, 6), "central-4")
    assert errs4[-1] < errs2[-1] / 10


@pytest.mark.parametrize("theorem", sorted(THEOREMS))
def test_tangents_and_identities_hold(theorem):
    rep = verify_tangent_theorem(theorem)
    for f in rep.fixtures:
        assert f.tangent_ok and f.identity_ok


@pytest.mark.parametrize("theorem", ["rbg2rbl0", "dgpl0"])
def test_slope_check_unattainable_on_heisenberg_fixtures(theorem):
    rep = verify_tangent_theorem(theorem)
    assert all(f.slope is None and not f.order_ok for f in rep.fixtures)
    assert not rep.passed


def test_hmin_exp_rejection():
    fx = FIXTURES["neg-first"]
    with pytest.raises(DomainError):
        verify_fixture("rb-zero", fx, hmin_exp=MAX_FLOAT_EXP + 1)
    with pytest.raises(DomainError):
        verify_fixture("rb-zero", fx, hmin_exp=4)


def test_unknown_theorem_and_fixture():
    with pytest.raises(DomainError):
        verify_tangent_theorem("nope")
    with pytest.raises(DomainError):
        verify_tangent_theorem("dgpl0", "nope")


def test_probe_validation():
    with pytest.raises(DomainError):
        CurveProbe(None, 0.1, "central-9")
    with pytest.raises(DomainError):
        CurveProbe(None, 0.0)


def test_tangent_needs_identity_fixing_operator():
    shift = lambda g: g @ (g.identity() + E12)  # noqa: E731
    with pytest.raises(DomainError):
        tangent_of_operator(shift, E23, CurveProbe())


def test_power_tangent_is_scaling():
    u = (E12 + E23 - E13).to_float()
    assert power_tangent(3, u).distance(u * 3) < 1e-12
    assert power_tangent(Fraction(1, 2), E12 + E23) == (E12 + E23) / 2


def test_log_power_decay_has_slope_one():
    ns = (4, 8, 16, 32, 64)
    vals = log_power_decay(E12 + E23, ns)
    assert slope_in_inverse_n(vals, ns) == pytest.approx(1.0)
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_mixed_second_bracket_of_squaring():
    # tangent of g -> g^2 is 2u, so the mixed bracket is [2 E12, 2 E23] = 4 E13
    sq = lambda g: power_real(g, 2)  # noqa: E731
    got = mixed_second_bracket(sq, sq, E12, E23, CurveProbe(None, Fraction(1, 4)))
    assert got == E13 * 4


def test_extracted_gl2_operator_is_close_to_expected():
    fx = FIXTURES["gl2-gauss"]
    _, _, _, op = error_ladder(fx, range(3, 8))
    assert isinstance(op, LieOperator)
    assert op.distance(fx.expected) < 1e-3
