from fractions import Fraction

import pytest
import sympy
from hypothesis import given

from conftest import E12, E13, E23, heis_elts, nilmats
from multcalc.acceptance import SHIFT_WEIGHT1_WITNESS
from multcalc.convergence import Schedule
from multcalc.errors import DomainError
from multcalc.groups import Perm, SeqElt, symmetric_group
from multcalc.lie import LieOperator, ZERO_WEIGHT, limit_weight, pair_weight
from multcalc.matgroup import Mat, exp_nilpotent, heis
from multcalc.rng import SplitMix64, random_heis, random_matrix, random_seq
from multcalc.rota_baxter import (
    CENTER_PROJECTION,
    GL2_GAUSS_SPLIT,
    GroupOperator,
    HEISENBERG_SPLIT,
    NEG_FIRST,
    SHIFT_FAMILY,
    SHIPPED_RB_ZERO,
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
    scan,
    shift_example,
    table_operator,
    trotter_mul,
    weight1_inverse,
)
from multcalc.weights import IDENTITY, PairWeightFamily, power_family

S3 = symmetric_group(3)
E3 = Perm((0, 1, 2))
FACT = factorization_operator(HEISENBERG_SPLIT)


# weight one -----------------------------------------------------------------

def test_inverse_and_constant_are_weight_one_on_s3():
    for op in (weight1_inverse(), constant_identity()):
        assert scan(op, IDENTITY, S3).is_weight1


@given(heis_elts(), heis_elts())
def test_inverse_is_weight_one_on_heisenberg(a, b):
    assert rb_weight1_residual(weight1_inverse(), a, b).is_zero


def test_factorize_example():
    plus, minus = factorize(heis(1, 2, 3))
    assert plus == heis(1, 0, 1) and minus == heis(0, 2, 0)
    assert FACT(heis(1, 2, 3)) == heis(0, -2, 0)


def test_factorize_is_a_bijection_on_samples():
    rng = SplitMix64(77)
    seen = {}
    for _ in range(10_000):
        g = random_heis(rng)
        plus, minus = factorize(g)
        assert plus @ minus == g
        seen.setdefault((plus, minus), g)
        assert seen[(plus, minus)] == g
        # the factors determine g and g determines the factors
        assert factorize(plus @ minus) == (plus, minus)


def test_factorize_rejects_non_unipotent():
    with pytest.raises(DomainError):
        factorize(Mat([[2, 0, 0], [0, 1, 0], [0, 0, 1]]))


def test_factorization_operator_weight_one_symbolically():
    # independent oracle: B reads the (2,3) entry off the product formula
    a1, b1, c1, a2, b2, c2 = sympy.symbols("a1 b1 c1 a2 b2 c2")

    def H(a, b, c):
        return sympy.Matrix([[1, a, c], [0, 1, b], [0, 0, 1]])

    def B(g):
        return H(0, -g[1, 2], 0)

    x, y = H(a1, b1, c1), H(a2, b2, c2)
    lhs = B(x) * B(y)
    rhs = B(x * B(x) * y * B(x).inv())
    assert sympy.simplify(lhs - rhs) == sympy.zeros(3, 3)


@given(heis_elts(), heis_elts())
def test_factorization_operator_weight_one(a, b):
    assert rb_weight1_residual(FACT, a, b).is_zero
    assert rb_weight1_residual(induced_operator(FACT), a, b).is_zero


def test_gauss_factorization_weight_one_on_gl2():
    rng = SplitMix64(8)
    op = factorization_operator(GL2_GAUSS_SPLIT)
    checked = 0
    while checked < 100:
        a = Mat([[rng.rational() for _ in range(2)] for _ in range(2)])
        b = Mat([[rng.rational() for _ in range(2)] for _ in range(2)])
        try:
            r = rb_weight1_residual(op, a, b)
        except DomainError:
            continue  # outside the big cell
        assert r.is_zero
        checked += 1


def test_gauss_split_validation():
    with pytest.raises(DomainError):
        GL2_GAUSS_SPLIT.split(Mat([[1, 1], [1, 0]]))


def test_induced_operator_needs_inverse_preserving_family():
    # send both 3-cycles to the same one, so L(g^-1) != L(g)^-1
    neg = {g: g for g in S3}
    neg[Perm((1, 2, 0))] = Perm((2, 0, 1))
    neg[Perm((2, 0, 1))] = Perm((2, 0, 1))
    fam = PairWeightFamily("custom-table", table_L=neg, table_H=neg)
    assert not fam.inverse_preserving
    with pytest.raises(DomainError):
        induced_operator(weight1_inverse(), fam)


# pair weights ---------------------------------------------------------------

@pytest.mark.parametrize("lam", [2, Fraction(-1, 3), Fraction(5, 2)])
def test_power_family_pair_operators(lam):
    fam = power_family(lam)
    op = factorization_operator(family=fam)
    rng = SplitMix64(31)
    for _ in range(50):
        a, b = random_heis(rng), random_heis(rng)
        assert rb_pair_residual(op, fam, a, b).is_zero
        assert rb_pair_residual(induced_operator(op, fam), fam, a, b).is_zero


def test_precompose_with_L_turns_weight_one_into_pair():
    rng = SplitMix64(4)
    carrier = [random_heis(rng) for _ in range(6)]
    fam = power_family(2)
    res = precompose("with_L", weight1_inverse(), fam, carrier)
    assert res.scan.is_pair_weight
    assert not res.scan.is_weight1
    assert res.scan.weight1_witness is not None


def test_precompose_with_H_turns_pair_into_weight_one():
    rng = SplitMix64(4)
    carrier = [random_heis(rng) for _ in range(6)]
    fam = power_family(2)
    res = precompose("with_H", factorization_operator(family=fam), fam, carrier)
    assert res.scan.is_weight1
    with pytest.raises(DomainError):
        precompose("sideways", FACT, fam)


def test_table_operator_lookup():
    op = table_operator({g: g.inverse() for g in S3})
    assert scan(op, IDENTITY, S3).is_weight1
    with pytest.raises(DomainError):
        op(Perm((0, 1, 2, 3)))


# shift example --------------------------------------------------------------

def _seq(p):
    return SeqElt(tuple(Perm(x) for x in p), E3)


def test_shift_example_breaks_weight_one_on_witness():
    a, b = (_seq(p) for p in SHIFT_WEIGHT1_WITNESS)
    op = shift_example()
    assert not rb_weight1_residual(op, a, b).is_zero
    assert rb_pair_residual(op, SHIFT_FAMILY, a, b).is_zero


def test_shift_example_is_pair_weight_on_random_sequences():
    rng = SplitMix64(12)
    op = shift_example()
    for _ in range(500):
        a, b = random_seq(rng, S3), random_seq(rng, S3)
        assert rb_pair_residual(op, SHIFT_FAMILY, a, b).is_zero


def test_shift_example_rejects_matrices():
    with pytest.raises(DomainError):
        shift_example()(heis(1, 0, 0))


# Trotter and limit weight zero -----------------------------------------------

@pytest.mark.parametrize("dim", [2, 3])
def test_trotter_error_halves(dim):
    rng = SplitMix64(dim)
    rep = trotter_mul(random_matrix(rng, dim), random_matrix(rng, dim), Schedule(4, 12))
    ratios = [b / a for a, b in zip(rep.errors[:-1], rep.errors[1:])]
    assert all(0.375 <= r <= 0.625 for r in ratios)
    assert rep.order == pytest.approx(1.0, abs=0.05)


def test_trotter_exact_for_commuting_inputs():
    x = Mat([[1.0, 0.0], [0.0, -0.5]])
    rep = trotter_mul(x, x * 2, Schedule(2, 6))
    assert max(rep.errors) < 1e-13


@pytest.mark.parametrize("name", sorted(SHIPPED_RB_ZERO))
def test_shipped_operators_satisfy_weight_zero(name):
    B = SHIPPED_RB_ZERO[name]
    assert B.is_center_stable()
    basis = B.basis_elements()
    assert all(rb_lie_residual(B, ZERO_WEIGHT, u, v).is_zero for u in basis for v in basis)


@pytest.mark.parametrize("B", [CENTER_PROJECTION, NEG_FIRST])
@given(u=nilmats(), v=nilmats())
def test_closed_form_finite_identity_exact(B, u, v):
    assert rboze_finite_residual(rb_zero_closed_form(B), u, v).is_zero


def test_center_projection_closed_form_example():
    op = rb_zero_closed_form(CENTER_PROJECTION)
    assert op(exp_nilpotent(E12 + E23 + E13)) == exp_nilpotent(E13)


@pytest.mark.parametrize("B", [CENTER_PROJECTION, NEG_FIRST])
def test_closed_form_limit_identity(B):
    op = rb_zero_closed_form(B)
    rng = SplitMix64(9)
    for _ in range(5):
        a, b = random_heis(rng, bound=1), random_heis(rng, bound=1)
        ev = rb_limit_eval(op, a, b)
        assert ev.report.converged
        assert ev.residual.distance < 1e-6
        assert ev.limit_weight_zero


def test_closed_form_rejects_non_rota_baxter_and_unstable_center():
    with pytest.raises(DomainError):
        rb_zero_closed_form(LieOperator.identity())
    with pytest.raises(DomainError):
        rb_zero_closed_form(LieOperator([[0, 0, 1], [0, 0, 0], [0, 0, 0]]))


def test_identity_is_weight_minus_one_not_zero():
    ident = LieOperator.identity()
    assert not rb_lie_residual(ident, ZERO_WEIGHT, E12, E23).is_zero
    # -id satisfies the weight-one Lie identity with L = H = id
    neg = ident.scaled(-1)
    assert rb_lie_residual(neg, pair_weight(ident, ident), E12, E23).is_zero


@pytest.mark.parametrize("B", [CENTER_PROJECTION, NEG_FIRST])
def test_limit_weight_matches_weight_zero(B):
    for u in B.basis_elements():
        for v in B.basis_elements():
            assert rb_lie_residual(B, limit_weight(), u, v).is_zero


def test_rboze_detects_non_rota_baxter_operator():
    # the identity map gives e^u e^v on the left but exp(u + e^u v e^-u) on the right
    op = GroupOperator("id", lambda g: g)
    assert not rboze_finite_residual(op, E12, E23).is_zero
