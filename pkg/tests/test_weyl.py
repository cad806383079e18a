from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from divops.algebra import Poly
from divops.curve import general, legendre, reduce, tate_reduction, weierstrass_f
from divops.parse import parse_poly
from divops.weyl import (DividedOp, action_integrality, apply, compose, divided_partial, equals_on_curve,
                         first_difference, is_integral, power_over_factorial, tangent_derivation, tangent_power)
from golden_data import P2_LEGENDRE, P3_LEGENDRE, P_LEGENDRE_XY_DISPLAY

LEG = legendre()


def ring_elements(curve, max_exp=2):
    syms = curve.ring_symbols
    exps = st.tuples(*[st.integers(0, 1 if s in curve.params else max_exp) for s in syms])
    return st.dictionaries(exps, st.integers(-3, 3), max_size=3).map(lambda d: reduce(Poly(syms, d), curve))


def tangent_ops(curve):
    """sum c_k P^k with ring coefficients: these preserve the ideal (f)."""
    return st.lists(ring_elements(curve), min_size=1, max_size=3).map(
        lambda cs: sum((tangent_power(curve, k) * c for k, c in enumerate(cs)), DividedOp.zero(curve))
    )


def from_display(table, curve):
    return DividedOp.from_ordinary(curve, {k: parse_poly(v, curve.ring_symbols) for k, v in table.items()})


# --- P ---------------------------------------------------------------------


@pytest.mark.parametrize("curve", [legendre(), general(), tate_reduction()], ids=lambda c: c.name)
def test_tangent_derivation_kills_f(curve):
    P = tangent_derivation(curve)
    f = weierstrass_f(curve)
    # ambient action (before reduction) is exactly zero on f
    raw = sum((c * divided_partial(f, a, b) for (a, b), c in P.terms.items()), Poly.zero(curve.ring_symbols))
    assert raw == 0


def test_displayed_p_is_not_tangent():
    # the (x, y) display with the minus sign on d/dy sends f to -4 y g'(x), not 0
    shown = from_display(P_LEGENDRE_XY_DISPLAY, LEG)
    f = weierstrass_f(LEG)
    image = sum((c * divided_partial(f, a, b) for (a, b), c in shown.terms.items()), Poly.zero(LEG.ring_symbols))
    assert image != 0
    assert shown.coefficient(1, 0) == tangent_derivation(LEG).coefficient(1, 0)
    assert shown.coefficient(0, 1) == -tangent_derivation(LEG).coefficient(0, 1)


def test_p_squared_and_cubed_match_displays():
    assert equals_on_curve(tangent_power(LEG, 2), from_display(P2_LEGENDRE, LEG), 10)
    assert equals_on_curve(tangent_power(LEG, 3), from_display(P3_LEGENDRE, LEG), 10)
    # and coefficient-wise once both sides are reduced
    assert tangent_power(LEG, 2) == from_display(P2_LEGENDRE, LEG)
    assert tangent_power(LEG, 3) == from_display(P3_LEGENDRE, LEG)


# --- composition -----------------------------------------------------------


@settings(max_examples=25)
@given(tangent_ops(LEG), tangent_ops(LEG), tangent_ops(LEG))
def test_compose_is_associative(p, q, r):
    assert compose(compose(p, q), r) == compose(p, compose(q, r))


@settings(max_examples=30)
@given(tangent_ops(LEG), tangent_ops(LEG), ring_elements(LEG, 4))
def test_apply_respects_composition(p, q, h):
    assert apply(compose(p, q), h) == apply(p, apply(q, h))


@settings(max_examples=30)
@given(tangent_ops(LEG), tangent_ops(LEG))
def test_order_is_subadditive(p, q):
    assume(p.terms and q.terms)
    assert compose(p, q).order <= p.order + q.order


def test_order_additive_for_powers_of_p():
    for n in range(1, 6):
        assert tangent_power(LEG, n).order == n


@settings(max_examples=20)
@given(tangent_ops(LEG), ring_elements(LEG, 3))
def test_action_well_defined_on_quotient(p, h):
    # h and h + f*g have the same class; a tangent operator sends them to the same residue
    g = LEG.x() * 2 + LEG.y()
    assert apply(p, h) == apply(p, h + weierstrass_f(LEG) * g)


def test_divided_partial_examples():
    x = LEG.x()
    assert divided_partial(x ** 5, 2, 0) == x ** 3 * 10
    assert divided_partial(LEG.y() ** 2 * x, 1, 2) == LEG.one()


# --- integrality -----------------------------------------------------------


def test_integral_examples():
    P2 = tangent_power(general(), 2)
    P = tangent_derivation(general())
    a1 = general().lift(general().a1)
    assert is_integral((P2 + P * a1) / 2)
    lam = LEG.lift(Poly.var(LEG.params, "lam"))
    assert is_integral((tangent_power(LEG, 3) + tangent_derivation(LEG) * ((lam + 1) * -2)) / 6)
    assert is_integral(tangent_power(LEG, 2) / 2)


def test_p_cubed_over_six_has_a_witness():
    res = is_integral(tangent_power(LEG, 3) / 6)
    assert not res
    assert res.witness["multi_index"] == [1, 0]
    assert "4*x*y" in res.witness["coefficient"]
    w = power_over_factorial(tangent_derivation(LEG), 3)
    assert isinstance(w, dict) and w["divisor"] == 6


@settings(max_examples=30)
@given(tangent_ops(LEG), st.sampled_from([1, 2, 3, 4, 6]))
def test_integrality_agrees_with_action_integrality(p, d):
    op = p / d
    assert bool(is_integral(op)) == bool(action_integrality(op))


def test_first_difference_reports_monomial():
    P = tangent_derivation(LEG)
    diff = first_difference(P, P * 2, 4)
    assert diff is not None and diff["monomial"] == "y"
    assert first_difference(P, P, 4) is None


def test_serialize_is_stable():
    s = tangent_derivation(LEG).serialize()
    assert s == tangent_derivation(legendre()).serialize()
    assert "dx^[1]" in s and "dy^[1]" in s


def test_scalar_division_exact():
    op = DividedOp.identity(LEG) / 3
    assert op.coefficient(0, 0) == Fraction(1, 3)
