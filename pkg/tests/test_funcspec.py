import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mpade.errors import ExpressionSyntaxError, NodeOrderTooHigh, SingularEvaluation
from mpade.funcspec import (
    Add,
    Const,
    Div,
    Func,
    Mul,
    Neg,
    Pow,
    Sub,
    Var,
    compose,
    divided_differences,
    evaluate,
    hermite_table,
    jet,
    parse,
    render,
)

Z = Var()


def test_parse_basic_forms():
    f = parse("1/((z-2)*(z-3))")
    assert abs(evaluate(f, 0.5) - 1 / ((0.5 - 2) * (0.5 - 3))) < 1e-15
    assert parse("z^3") == parse("z**3")
    assert evaluate(parse("2i"), 0) == 2j
    assert evaluate(parse("(1+2j)*z"), 1) == 1 + 2j
    assert abs(evaluate(parse("exp(pi*i)"), 0) + 1) < 1e-15


def test_constant_folding():
    assert parse("2*3+1") == Const(7 + 0j)


@pytest.mark.parametrize("bad", ["1/((z-2)", "z**0.5", "foo(z)", "z**z", "", "x+1", "z if z else 1", "lambda: 1"])
def test_syntax_errors(bad):
    with pytest.raises(ExpressionSyntaxError):
        parse(bad)


def leaves():
    return st.one_of(
        st.just(Var()),
        st.builds(lambda a, b: Const(complex(a, b)), st.integers(-5, 5), st.integers(-3, 3)),
    )


trees = st.recursive(
    leaves(),
    lambda sub: st.one_of(
        st.builds(Add, sub, sub),
        st.builds(Sub, sub, sub),
        st.builds(Mul, sub, sub),
        st.builds(Neg, sub),
        st.builds(Pow, sub, st.integers(0, 3)),
        st.builds(Func, st.sampled_from(["exp"]), sub),
    ),
    max_leaves=8,
)


@settings(max_examples=150, deadline=None)
@given(trees)
def test_render_parse_values_agree(tree):
    again = parse(render(tree))
    z = np.array([0.3 + 0.1j, -0.4j])
    with np.errstate(all="ignore"):
        try:
            a = evaluate(tree, z)
        except SingularEvaluation:
            return
    b = evaluate(again, z)
    assert np.allclose(a, b, rtol=1e-12, atol=1e-12, equal_nan=True)


@settings(max_examples=150, deadline=None)
@given(trees)
def test_render_is_a_fixed_point(tree):
    text = render(parse(render(tree)))
    assert render(parse(text)) == text


def test_evaluate_vectorized_matches_numpy():
    z = np.linspace(-0.9, 0.9, 7) + 0.2j
    f = parse("exp(z)*log(1-z)/sqrt(1+z)")
    np.testing.assert_allclose(evaluate(f, z), np.exp(z) * np.log(1 - z) / np.sqrt(1 + z), rtol=1e-13)


@pytest.mark.parametrize("text,z", [("1/(z-2)", 2.0), ("log(z)", 0.0), ("z**(-2)", 0.0)])
def test_singular_evaluation(text, z):
    with pytest.raises(SingularEvaluation):
        evaluate(parse(text), z)


def test_jets_known_series():
    k = np.arange(12)
    np.testing.assert_allclose(jet(parse("exp(z)"), 0, 11).coeffs, [1 / math.factorial(i) for i in k], rtol=1e-14)
    logc = jet(parse("log(1-z)"), 0, 11).coeffs
    np.testing.assert_allclose(logc[1:], -1.0 / k[1:], rtol=1e-14)
    assert logc[0] == 0
    sq = jet(parse("sqrt(1+z)"), 0, 5).coeffs
    np.testing.assert_allclose(sq, [1, 1 / 2, -1 / 8, 1 / 16, -5 / 128, 7 / 256], rtol=1e-14)
    two = jet(parse("1/((z-2)*(z-3))"), 0, 20).coeffs
    np.testing.assert_allclose(two, [2.0 ** (-i - 1) - 3.0 ** (-i - 1) for i in range(21)], rtol=1e-13)


def test_jet_off_center_matches_derivatives():
    c = jet(parse("exp(2*z)/(z-3)"), 0.5 + 0.5j, 3).coeffs
    h = 1e-4
    f = lambda z: np.exp(2 * z) / (z - 3)  # noqa: E731
    z0 = 0.5 + 0.5j
    assert abs(c[1] - (f(z0 + h) - f(z0 - h)) / (2 * h)) < 1e-6


def test_divided_differences_of_cubic():
    nodes = [0.3, -1.0, 2j, 0.5, 1.1]
    dd = divided_differences(parse("2*z**3 - z + 4"), nodes)
    assert abs(dd[3] - 2) < 1e-12
    assert abs(dd[4]) < 1e-12


def test_confluent_dd_is_taylor_coefficient():
    dd = divided_differences(parse("exp(z)"), [0.7] * 5)
    np.testing.assert_allclose(dd, np.exp(0.7) / np.array([1, 1, 2, 6, 24]), rtol=1e-13)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.sampled_from([0.0, 0.5, -0.5j, 1.0 + 0.5j]), min_size=1, max_size=9),
    st.lists(st.integers(-3, 3), min_size=1, max_size=8),
)
def test_top_dd_of_polynomial_is_leading_coefficient(nodes, coeffs):
    poly = Const(0j)
    for k, c in enumerate(coeffs):
        poly = Add(poly, Mul(Const(complex(c)), Pow(Z, k)))
    deg = len(coeffs) - 1
    dd = divided_differences(poly, nodes)
    if len(nodes) == deg + 1:
        assert abs(dd[-1] - coeffs[-1]) <= 1e-8 * 10**deg
    elif len(nodes) > deg + 1:
        assert abs(dd[-1]) <= 1e-8 * 10**deg


def test_ungrouped_nodes_match_grouped():
    f = parse("1/(z-3)")
    a = divided_differences(f, [0.0, 1.0, 0.0, 1.0, 0.0])
    b = divided_differences(f, [0.0, 0.0, 0.0, 1.0, 1.0])
    assert abs(a[-1] - b[-1]) < 1e-13


def test_hermite_table_multiple_columns():
    nodes = [0.0, 0.0, 1.0]
    jets = {0j: np.array([[1.0, 0.0], [0.0, 1.0]]), 1 + 0j: np.array([[1.0, 1.0]])}
    t = hermite_table(nodes, jets)
    # column 0 is the constant 1, column 1 is z
    np.testing.assert_allclose(t[:, 0], [1, 0, 0])
    np.testing.assert_allclose(t[:, 1], [0, 1, 0])


def test_node_order_cap():
    with pytest.raises(NodeOrderTooHigh):
        divided_differences(parse("exp(z)"), [0.0] * 10, max_order=4)


def test_compose():
    g = compose(parse("exp(z)"), parse("2*z"))
    assert abs(evaluate(g, 0.25) - np.exp(0.5)) < 1e-15
    assert isinstance(parse("1/z"), Div)


def test_operator_sugar():
    f = (Z - 2) ** 2 / (1 + Z)
    assert abs(f(0.5) - (0.5 - 2) ** 2 / 1.5) < 1e-15
