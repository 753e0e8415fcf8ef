import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mpade.errors import MissingCapacity, ProbeOnSupport, TableOutsideSigma
from mpade.potential import (
    AllAtPoint,
    ArcsineSegment,
    ChebyshevSegment,
    CompactSetSample,
    Dirac,
    Disk,
    ExplicitList,
    FinitePointSet,
    PointMasses,
    RootsOfUnity,
    RowWiseTable,
    Segment,
    UniformCircle,
    counting_measure,
    green_value,
    in_level_set,
    r0,
    rho,
    validate_table,
    weakstar_discrepancy,
)

SQRT3 = math.sqrt(3.0)


def quadrature_level(z, nodes=20_000):
    """exp(-P) of the arcsine measure on [-1, 1] by Gauss-Chebyshev quadrature."""
    x = np.cos(np.pi * (np.arange(nodes) + 0.5) / nodes)
    return float(np.exp(np.mean(np.log(np.abs(z - x)))))


def test_dirac_and_point_masses():
    assert Dirac(1.0).potential(3.0) == pytest.approx(-math.log(2.0))
    pm = PointMasses((0.0, 2.0), (0.25, 0.75))
    assert pm.potential(1j) == pytest.approx(-0.25 * math.log(1.0) - 0.75 * math.log(abs(1j - 2)))
    assert np.isinf(Dirac(0.0).potential(0.0))


def test_uniform_circle_closed_form():
    mu = UniformCircle(1.0, 2.0)
    assert mu.potential(1.5) == pytest.approx(-math.log(2.0))
    assert mu.exp_neg_potential(1.0 + 5j) == pytest.approx(5.0)


def test_arcsine_frozen_values():
    mu = ArcsineSegment(-1.0, 1.0)
    # exp(-P(2)) = (2 + sqrt 3)/2 for the arcsine measure of [-1, 1]
    assert mu.exp_neg_potential(2.0) == pytest.approx((2 + SQRT3) / 2, rel=1e-14)
    np.testing.assert_allclose(mu.exp_neg_potential(np.linspace(-1, 1, 11)), 0.5, rtol=1e-12)
    assert mu.exp_neg_potential(1j) == pytest.approx((1 + math.sqrt(2)) / 2, rel=1e-14)


@settings(max_examples=40, deadline=None)
@given(st.floats(-3, 3), st.floats(0.05, 3))
def test_arcsine_matches_quadrature(x, y):
    z = complex(x, y)
    assert ArcsineSegment().exp_neg_potential(z) == pytest.approx(quadrature_level(z), rel=1e-5)


def test_arcsine_shifted_segment():
    mu = ArcsineSegment(1.0, 5.0)
    # capacity of a length-4 segment is 1; its level at the far point
    assert mu.exp_neg_potential(7.0) == pytest.approx(1.0 * (2 + SQRT3) / 1.0 * 1.0, rel=1e-13)


def test_rho_and_level_sets():
    K = CompactSetSample.circle(0.0, 1.0, 64)
    assert rho(Dirac(0.0), K) == pytest.approx(1.0)
    assert rho(ArcsineSegment(), CompactSetSample.segment()) == pytest.approx(0.5)
    assert in_level_set(Dirac(0.0), 3.0, 2.5)
    assert not in_level_set(Dirac(0.0), 3.0, 3.5j)
    with pytest.raises(ValueError):
        in_level_set(Dirac(0.0), 0.0, 1.0)


def test_green_function_of_segment():
    g = green_value(Segment(-1, 1), ArcsineSegment(), 2.0)
    assert g == pytest.approx(math.log(2 + SQRT3), rel=1e-13)
    assert green_value(Segment(-1, 1), ArcsineSegment(), 0.3) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(MissingCapacity):
        green_value(FinitePointSet((0.0,)), Dirac(0.0), 1.0)


def test_r0_values():
    assert r0(ArcsineSegment(), Segment()) == pytest.approx(0.5)
    assert r0(UniformCircle(0, 1), Disk(0, 1)) == pytest.approx(1.0)


def test_sigma_membership():
    assert Segment(-1, 1).contains(0.3)
    assert not Segment(-1, 1).contains(0.3 + 1e-3j)
    assert Disk(0, 1).contains(1.0)
    assert FinitePointSet((0.0, 1j)).contains(1j)
    assert Segment(-1, 1).capacity == 0.5


def test_tables():
    assert AllAtPoint(0.5).newtonian
    np.testing.assert_array_equal(AllAtPoint(0.5).nodes(3), [0.5, 0.5, 0.5])
    ru = RootsOfUnity(1.0).nodes(8)
    assert ru[2] == 1j and ru[4] == -1 and ru[6] == -1j
    np.testing.assert_allclose(RootsOfUnity(2.0).w(5, 3.0), 3.0**5 - 2.0**5)
    ch = ChebyshevSegment().nodes(7)
    np.testing.assert_allclose(np.cos(7 * np.arccos(ch.real)), 0, atol=1e-12)
    ex = ExplicitList((0.1, 0.2, 0.3))
    assert ex.newtonian
    np.testing.assert_array_equal(ex.nodes(2), [0.1, 0.2])
    rw = RowWiseTable(lambda n: np.linspace(-0.5, 0.5, n))
    assert not rw.newtonian and rw.nodes(4).size == 4


def test_validate_table():
    validate_table(ChebyshevSegment(), Segment(), 20)
    with pytest.raises(TableOutsideSigma):
        validate_table(RootsOfUnity(1.0), Segment(), 6)
    with pytest.raises(TableOutsideSigma):
        validate_table(AllAtPoint(0.5), FinitePointSet((0.0,)), 3)


def test_weakstar_closed_form():
    probe = CompactSetSample.from_points([2.0])
    for n in (3, 10, 17):
        expected = abs(math.log(2.0**n - 1) / n - math.log(2.0))
        assert weakstar_discrepancy(RootsOfUnity(), UniformCircle(), probe, n) == pytest.approx(expected, rel=1e-9)
    with pytest.raises(ProbeOnSupport):
        weakstar_discrepancy(RootsOfUnity(), UniformCircle(), CompactSetSample.from_points([1.0]), 4)


def test_counting_measure_potential():
    mu = counting_measure([0.0, 0.0, 1.0])
    assert mu.potential(2.0) == pytest.approx(-(2 * math.log(2) + math.log(1)) / 3)
