import math
import warnings

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from mpade.errors import NotNewtonian, RankDeficiencyWarning, SingularEvaluation
from mpade.funcspec import parse
from mpade.numkernel import ComplexPoly
from mpade.pade import build, build_row, leja_order, newton_An, normalize_den, reduce
from mpade.potential import AllAtPoint, ChebyshevSegment, ExplicitList, RootsOfUnity

TWO = "1/((z-2)*(z-3))"


def test_exp_classical_frozen():
    # [1/1] and [2/2] of exp(z): (1 + z/2)/(1 - z/2), (1 + z/2 + z^2/12)/(1 - z/2 + z^2/12)
    p11 = build("exp(z)", AllAtPoint(0), 2, 1)
    np.testing.assert_allclose(p11.num.coeffs, [1, 0.5], atol=1e-14)
    np.testing.assert_allclose(p11.den.coeffs, [1, -0.5], atol=1e-14)
    p22 = build("exp(z)", AllAtPoint(0), 4, 2)
    np.testing.assert_allclose(p22.num.coeffs, [1, 0.5, 1 / 12], atol=1e-13)
    np.testing.assert_allclose(p22.den.coeffs, [1, -0.5, 1 / 12], atol=1e-13)
    np.testing.assert_allclose(np.sort_complex(p22.poles), [3 - SQ3j, 3 + SQ3j], atol=1e-12)


SQ3j = math.sqrt(3) * 1j


def test_taylor_row_m0():
    p = build(TWO, AllAtPoint(0), 5, 0)
    np.testing.assert_allclose(p.num.coeffs, [2.0 ** (-k - 1) - 3.0 ** (-k - 1) for k in range(6)], rtol=1e-13)
    assert p.den.degree == 0


def test_exact_recovery_two_poles():
    p = build(TWO, AllAtPoint(0), 6, 2)
    np.testing.assert_allclose(np.sort(p.poles.real), [2, 3], atol=1e-10)
    # normalized: (1 - z/2)(1 - z/3), numerator 1/6
    np.testing.assert_allclose(p.den.coeffs, [1, -5 / 6, 1 / 6], atol=1e-12)
    # trailing numerator entries are roundoff, not trimmed by magnitude
    np.testing.assert_allclose(p.num.coeffs, [1 / 6] + [0] * (p.num.coeffs.size - 1), atol=1e-12)


def test_normalization_inside_unit_disk():
    q = normalize_den(ComplexPoly.from_roots([0.5, 4.0], lead=7.0))
    # (z - 0.5)(1 - z/4)
    np.testing.assert_allclose(q.coeffs, np.convolve([-0.5, 1], [1, -0.25]), atol=1e-14)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.builds(complex, st.floats(-3, 3), st.floats(-3, 3)), min_size=1, max_size=4), st.floats(0.1, 10))
def test_normalized_den_bounded_on_disk(roots, lead):
    assume(all(abs(r) > 1e-3 for r in roots))
    assume(all(abs(a - b) > 0.05 for i, a in enumerate(roots) for b in roots[i + 1 :]))
    q = normalize_den(ComplexPoly.from_roots(roots, lead=lead))
    circle = np.exp(2j * np.pi * np.arange(200) / 200)
    assert np.max(np.abs(q(circle))) <= 2 ** len(roots) * (1 + 1e-9)


def test_reduce_cancels_common_factor():
    p = ComplexPoly.from_roots([1.5, -0.5])
    q = ComplexPoly.from_roots([1.5, 3.0])
    p2, q2 = reduce(p, q)
    assert p2.degree == 1 and q2.degree == 1
    assert abs(q2.coeffs[0] / q2.coeffs[1] + 3.0) < 1e-10


@settings(max_examples=40, deadline=None)
@given(st.lists(st.builds(complex, st.floats(-0.6, 0.6), st.floats(-0.6, 0.6)), min_size=4, max_size=9), st.integers(0, 2))
def test_interpolates_at_distinct_nodes(nodes, m):
    assume(all(abs(a - b) > 0.05 for i, a in enumerate(nodes) for b in nodes[i + 1 :]))
    n = len(nodes) - 1
    assume(n >= m)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RankDeficiencyWarning)
        pi = build("exp(z)", ExplicitList(tuple(nodes)), n, m)
    x = np.array(nodes)
    assert np.max(np.abs(pi(x) - np.exp(x))) < 1e-8


def test_hermite_conditions_on_repeated_nodes():
    nodes = (0.0, 0.0, 0.5, 0.5, 0.5, -0.4j)
    pi = build("exp(z)/(z-2)", ExplicitList(nodes), 5, 1)
    f = parse("exp(z)/(z-2)")
    x = np.array([0.0, 0.5, -0.4j])
    np.testing.assert_allclose(pi(x), f(x), atol=1e-11)
    h = 1e-5
    dpi = (pi(0.5 + h) - pi(0.5 - h)) / (2 * h)
    df = (f(0.5 + h) - f(0.5 - h)) / (2 * h)
    assert abs(dpi - df) < 1e-7


def test_rowwise_chebyshev_recovers_pole():
    pi = build("1/(z-2)", ChebyshevSegment(), 6, 1)
    np.testing.assert_allclose(pi.poles, [2.0], atol=1e-10)


def test_zero_numerator_degenerate_entry():
    # log(1-z) vanishes at 0, so the (m, m) entry is identically zero
    pi = build("log(1-z)", AllAtPoint(0), 2, 2)
    assert pi.num.is_zero()
    assert pi(0.3) == 0


def test_diagnostics_present():
    pi = build(TWO, AllAtPoint(0), 8, 1)
    d = pi.diagnostics
    assert d["defect_residual"] <= d["defect_tol"]
    assert set(d) >= {"defect_residual", "defect_tol", "pivot_ratio", "rank_deficient", "scale", "cancelled"}


def test_singular_node():
    with pytest.raises(SingularEvaluation):
        build("1/z", AllAtPoint(0), 3, 1)


def test_type_checked():
    with pytest.raises(ValueError):
        build("exp(z)", AllAtPoint(0), 1, 2)


def test_leja_order_properties():
    nodes = [0.1, 0.5, 0.5, -0.9, 0.3j, 0.5]
    order = leja_order(nodes)
    assert sorted(order, key=lambda z: (z.real, z.imag)) == sorted(map(complex, nodes), key=lambda z: (z.real, z.imag))
    assert abs(order[0]) == max(abs(complex(v)) for v in nodes)
    i = order.index(0.5)
    assert order[i : i + 3] == [0.5, 0.5, 0.5]


def test_newton_an_matches_partial_fractions():
    for n in (0, 5, 20):
        a = newton_An(TWO, AllAtPoint(0), n, 0)
        assert a == pytest.approx(2.0 ** (-n - 2) - 3.0 ** (-n - 2), rel=1e-10)


def test_newton_an_m1_telescopes():
    table = AllAtPoint(0)
    row = build_row(TWO, table, 1, range(1, 12))
    total = row[0](0.5) + sum(newton_An(TWO, table, n, 1, pair=(row[n - 1], row[n])) * 0.5 ** (n + 1) / (row[n - 1].den(0.5) * row[n].den(0.5)) for n in range(1, 11))
    assert abs(total - row[-1](0.5)) < 1e-13


def test_newton_an_rejects_rowwise():
    with pytest.raises(NotNewtonian):
        newton_An(TWO, RootsOfUnity(), 4, 0)
