import pytest
from hypothesis import given

from conftest import E12, E13, E23, nilmats
from multcalc.differential import (
    ad_derivation,
    diff_closed_form,
    diff_limit_residual,
    diff_table_operator,
    diffg0e_residual,
    lie_derivation_residual,
    log_of_operator,
)
from multcalc.errors import DomainError
from multcalc.groups import symmetric_group
from multcalc.lie import LieDerivation, LieOperator, ZERO_WEIGHT, limit_weight
from multcalc.matgroup import exp_nilpotent, heis, nil3
from multcalc.rng import SplitMix64, random_heis
from multcalc.rota_baxter import GroupOperator

AD = {name: ad_derivation(x) for name, x in (("E12", E12), ("E23", E23), ("E13", E13))}


def test_ad_coordinates():
    # ad_E12: E23 -> E13, everything else -> 0
    assert AD["E12"] == LieOperator([[0, 0, 0], [0, 0, 0], [0, 1, 0]])
    assert AD["E23"] == LieOperator([[0, 0, 0], [0, 0, 0], [-1, 0, 0]])
    assert AD["E13"] == LieOperator.zero()


@pytest.mark.parametrize("name", sorted(AD))
def test_inner_derivations_are_derivations(name):
    assert AD[name].is_derivation()


def test_non_derivation_is_rejected():
    ident = LieDerivation(LieOperator.identity().matrix)
    assert not ident.is_derivation()
    with pytest.raises(DomainError):
        diff_closed_form(ident)


def test_closed_form_example():
    op = diff_closed_form(AD["E12"])
    # u = E23: Du = E13, [u, Du] = 0
    assert op(exp_nilpotent(E23)) == exp_nilpotent(E13)
    assert op(exp_nilpotent(E12 * 0)) == exp_nilpotent(E12 * 0)


def test_outer_derivation_closed_form():
    # diag-type derivation: E12 -> E12, E23 -> 0, E13 -> E13
    D = LieDerivation([[1, 0, 0], [0, 0, 0], [0, 0, 1]])
    assert D.is_derivation()
    op = diff_closed_form(D)
    assert diffg0e_residual(op, E12 + E23, E23 - E13).is_zero


@pytest.mark.parametrize("name", sorted(AD))
@given(u=nilmats(), v=nilmats())
def test_finite_identity_exact(name, u, v):
    assert diffg0e_residual(diff_closed_form(AD[name]), u, v).is_zero


@pytest.mark.parametrize("name", sorted(AD))
@given(u=nilmats())
def test_log_of_operator_recovers_closed_form(name, u):
    D = AD[name]
    du = D(u)
    assert log_of_operator(diff_closed_form(D), u) == du + u.bracket(du) / 2


@pytest.mark.parametrize("name", sorted(AD))
def test_limit_identity(name):
    op = diff_closed_form(AD[name])
    rng = SplitMix64(sorted(AD).index(name))
    for _ in range(5):
        a, b = random_heis(rng, bound=1), random_heis(rng, bound=1)
        ev = diff_limit_residual(op, a, b)
        assert ev.report.converged
        assert ev.residual.distance < 1e-6


def test_limit_identity_fails_for_non_derivation_operator():
    square = GroupOperator("square", lambda g: g @ g)
    ev = diff_limit_residual(square, heis(1, 0, 0), heis(0, 1, 0))
    assert ev.residual.distance > 0.1


@pytest.mark.parametrize("name", sorted(AD))
def test_lie_limit_weight_matches_weight_zero(name):
    D = AD[name]
    for u in D.basis_elements():
        for v in D.basis_elements():
            assert lie_derivation_residual(D, limit_weight(), u, v).is_zero
            assert lie_derivation_residual(D, ZERO_WEIGHT, u, v).is_zero


def test_table_operator():
    s3 = symmetric_group(3)
    op = diff_table_operator({g: g for g in s3})
    assert op(s3[1]) == s3[1]


def test_leibniz_rule_on_example():
    D = AD["E12"]
    u, v = nil3(1, 2, 0), nil3(0, 1, 1)
    assert D(u.bracket(v)) == D(u).bracket(v) + u.bracket(D(v))
