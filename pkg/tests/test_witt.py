import pytest
import sympy

from divops.algebra import Poly
from divops.witt import (WittOp, check_coassociativity, check_commuting, check_counit, check_invariance, commutator,
                         perturbed_control, psi_univ, psi_univ_displayed, witt_compose, witt_coproduct, witt_symbols)


def test_operator_examples():
    assert str(psi_univ(1, 3)) == "(1)*d1 + (X1)*d2 + (X2)*d3"
    assert psi_univ(4, 4) == WittOp.partial(4, 4)
    assert str(psi_univ_displayed(2, 4)) == "(1)*d2 + (X2)*d3 + (X3)*d4"
    # the two rules agree at i = 1 and differ afterwards
    assert psi_univ(1, 5) == psi_univ_displayed(1, 5)
    assert psi_univ(2, 5) != psi_univ_displayed(2, 5)
    with pytest.raises(ValueError):
        psi_univ(5, 4)


def test_coproduct_examples():
    Z = witt_coproduct(3).Z
    assert [str(z) for z in Z] == ["X1 + Y1", "X2 + Y2 + X1*Y1", "X3 + Y3 + X1*Y2 + X2*Y1"]


@pytest.mark.parametrize("N", range(1, 7))
def test_counit_and_coassociativity(N):
    assert check_counit(witt_coproduct(N)) is None
    assert check_coassociativity(N) is None


def sympy_commutator(a: WittOp, b: WittOp):
    """[a, b] applied to an undefined function, read off as a vector field."""
    X = sympy.symbols(witt_symbols(a.N))
    g = sympy.Function("g")(*X)
    env = {str(s): s for s in X}
    field = lambda op: [(sympy.sympify(str(c).replace("^", "**"), locals=env), alpha.index(1))
                        for alpha, c in op.terms.items()]
    act = lambda op, u: sum(c * sympy.diff(u, X[k]) for c, k in field(op))
    diff = sympy.expand(act(a, act(b, g)) - act(b, act(a, g)))
    return {k + 1: sympy.expand(diff.coeff(sympy.diff(g, X[k]))) for k in range(a.N)}


@pytest.mark.parametrize("rule", [psi_univ, psi_univ_displayed], ids=["invariant", "displayed"])
def test_commutator_matches_sympy(rule):
    N = 5
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            mine = commutator(rule(i, N), rule(j, N))
            oracle = sympy_commutator(rule(i, N), rule(j, N))
            env = {s: sympy.Symbol(s) for s in witt_symbols(N)}
            for k in range(1, N + 1):
                alpha = tuple(int(t == k - 1) for t in range(N))
                c = mine.terms.get(alpha)
                got = sympy.sympify(str(c).replace("^", "**"), locals=env) if c else 0
                assert sympy.expand(got - oracle[k]) == 0
            assert mine.order() <= 1


@pytest.mark.parametrize("N", [2, 5, 8])
def test_invariant_fields_commute(N):
    assert check_commuting(N)


def test_commutators_vanish_exactly():
    for i in range(1, 7):
        for j in range(1, 7):
            assert commutator(psi_univ(i, 6), psi_univ(j, 6)).is_zero()


def test_displayed_rule_does_not_commute():
    res = check_commuting(5, psi_univ_displayed)
    assert not res and res.witness["commutator"] == "(-1 + X1)*d3"


@pytest.mark.parametrize("N", range(1, 7))
def test_invariance(N):
    for i in range(1, N + 1):
        assert check_invariance(i, N), (i, N)


def test_invariance_controls():
    bad = check_invariance(1, 4, perturbed_control(4))
    assert not bad and bad.witness["coordinate"] == 2
    assert not check_invariance(2, 5, psi_univ_displayed(2, 5))


def test_compose_second_order():
    d1 = WittOp.partial(3, 1)
    x1 = Poly.var(witt_symbols(3), "X1")
    op = witt_compose(d1, d1 * x1)  # d1 x1 d1 = d1 + x1 d1^2
    assert op == d1 + WittOp(3, {(2, 0, 0): x1})
