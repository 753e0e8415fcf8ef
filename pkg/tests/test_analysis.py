import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mpade.analysis import (
    Grid,
    continuation_radius,
    divergence_growth,
    error_curve,
    exclusion_family,
    pointwise_radius,
    pole_tracks,
    rate_estimate,
    region_report,
    rstar,
)
from mpade.errors import (
    AllZeroErrors,
    EmptyKEpsilon,
    InsufficientData,
    LowConfidenceWarning,
    NotNewtonian,
    PointInSigma,
    RateNotContractive,
)
from mpade.numkernel import ComplexPoly, RootMultiset
from mpade.pade import PadeApproximant, build_row
from mpade.potential import AllAtPoint, CompactSetSample, Dirac, FinitePointSet, RootsOfUnity, UniformCircle

TWO = "1/((z-2)*(z-3))"


def fake(n, m, roots):
    den = ComplexPoly.from_roots(roots)
    return PadeApproximant(n, m, ComplexPoly([1.0]), den, RootMultiset(np.array(roots, dtype=complex), 0.0))


def test_lsq_slope_absorbs_algebraic_prefactor():
    data = [(n, 0.5**n * n**2) for n in range(20, 61)]
    est = rate_estimate(data, (20, 60))
    assert est.rate == pytest.approx(0.5, rel=1e-10)


def test_sup_tail():
    data = [(n, 0.5**n * n**2) for n in range(20, 61)]
    est = rate_estimate(data, (20, 60), method="sup_tail")
    assert est.rate == pytest.approx(max(0.5 * n ** (2 / n) for n in range(20, 61)))


def test_linear_model_option():
    data = [(n, 3 * 0.25**n) for n in range(5, 15)]
    assert rate_estimate(data, (5, 14), model="linear").rate == pytest.approx(0.25, rel=1e-12)


def test_subsequence_fit():
    data = [(n, 0.5**n if n % 2 == 0 else 0.9**n) for n in range(10, 40)]
    est = rate_estimate(data, (10, 39), subsequence=range(10, 40, 2))
    assert est.rate == pytest.approx(0.5, rel=1e-9)


def test_fit_failures():
    with pytest.raises(AllZeroErrors):
        rate_estimate([(n, 0.0) for n in range(10)], (0, 9))
    with pytest.raises(InsufficientData):
        rate_estimate([(n, 0.5**n) for n in range(4)], (0, 3))
    with pytest.raises(InsufficientData):
        rate_estimate([(n, 0.5**n) for n in range(10)], (20, 30))


def test_continuation_radius():
    assert continuation_radius(0.25, 1.0) == 4.0
    with pytest.raises(RateNotContractive):
        continuation_radius(1.0, 1.0)
    with pytest.warns(LowConfidenceWarning):
        continuation_radius(0.9995, 1.0)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(0, 40), st.integers(1, 45), st.floats(1e-4, 0.5), st.integers(0, 4))
def test_sigma_bound_below_epsilon(m, lo, span, eps, n_true):
    rng = np.random.default_rng(lo * 100 + span)
    lo = max(lo, m)
    row = [fake(n, m, rng.normal(size=m) + 1j * rng.normal(size=m)) for n in range(lo, lo + span)]
    fam = exclusion_family(row, list(range(min(n_true, m))), eps, m)
    assert fam.sigma_bound < eps


def test_exclusion_families_nest():
    row = [fake(n, 1, [2.0]) for n in range(1, 30)]
    small = exclusion_family(row, [], 0.001, 1)
    big = exclusion_family(row, [], 0.01, 1)
    assert big.contains(small)
    assert not small.contains(big)


def test_error_curve_and_classical_rate():
    K = CompactSetSample.circle(0, 1, 512)
    row = build_row(TWO, AllAtPoint(0), 1, range(1, 41))
    curve = error_curve(TWO, row, K, 0.01, true_poles=[2.0])
    assert [e[0] for e in curve.entries] == list(range(1, 41))
    est = rate_estimate(curve, (15, 40)).with_radius(1.0)
    assert est.rate == pytest.approx(1 / 3, abs=0.05)
    assert 2.85 <= est.r_hat <= 3.15


def test_error_curve_empty_k():
    row = [fake(3, 1, [0.0])]
    with pytest.raises(EmptyKEpsilon):
        error_curve("exp(z)", row, CompactSetSample.from_points([0.0]), 0.5)


def test_rstar_exact_geometric():
    rs = rstar([(n, 0.25**n) for n in range(0, 30)], (10, 29))
    assert rs.r_star == pytest.approx(4.0, rel=1e-10)
    assert rs.r_star_sup_tail == pytest.approx(4.0, rel=1e-10)
    assert math.isinf(rstar([(n, 0.0) for n in range(10)], (0, 9)).r_star)


def test_pointwise_radius():
    est = pointwise_radius(TWO, AllAtPoint(0), Dirac(0), 0.5, 1, (5, 15))
    assert est.rate == pytest.approx(1 / 6, abs=0.01)
    assert est.r_hat == pytest.approx(3.0, abs=0.1)
    with pytest.raises(PointInSigma):
        pointwise_radius(TWO, AllAtPoint(0), Dirac(0), 0.0, 1, (5, 15))
    with pytest.raises(PointInSigma):
        pointwise_radius(TWO, AllAtPoint(0), Dirac(0), 0.0, 1, (5, 15), sigma=FinitePointSet((0.0,)))
    with pytest.raises(NotNewtonian):
        pointwise_radius(TWO, RootsOfUnity(), UniformCircle(), 1.5, 1, (5, 15))


def test_pole_tracks_converge():
    row = build_row(TWO, AllAtPoint(0), 1, range(1, 31))
    clusters = [c for c in pole_tracks(row) if c.converged]
    assert len(clusters) == 1
    assert abs(clusters[0].center - 2) < 1e-4
    assert len(clusters[0].members) == 5
    assert clusters[0].track[-1][0] == 30


def test_pole_tracks_wandering_root_not_converged():
    row = [fake(n, 1, [np.exp(1j * n)]) for n in range(1, 20)]
    assert not any(c.converged for c in pole_tracks(row))


def test_pole_tracks_double_pole_multiplicity():
    row = [fake(n, 2, [2.0 + 1e-6 / n, 2.0 - 1e-6 / n]) for n in range(1, 15)]
    cl = [c for c in pole_tracks(row) if c.converged]
    assert len(cl) == 2 and all(c.multiplicity_estimate == 2 for c in cl)


def test_region_report_dirac_disk():
    grid = Grid(-4, 4, -4, 4, 41, 41)
    rep = region_report(Dirac(0), 3.0, grid, r0=0.0)
    np.testing.assert_array_equal(rep.inside, np.abs(rep.points) < 3.0)
    assert rep.boundary.any() and not rep.empty and not rep.below_r0
    assert region_report(UniformCircle(), 0.5, grid, r0=1.0).below_r0
    assert region_report(UniformCircle(), 0.5, grid, r0=1.0).empty


def test_divergence_outside_region():
    row = build_row(TWO, AllAtPoint(0), 1, range(5, 30))
    out, inside = divergence_growth(row, [4.0, 1.0], Dirac(0), newtonian=True)
    assert out.diverges and out.growth == pytest.approx(4 / 3, rel=0.05)
    assert not inside.diverges
    rows = build_row(TWO, RootsOfUnity(), 1, range(5, 20))
    assert divergence_growth(rows, [4.0], UniformCircle(), newtonian=False)[0].diverges is None
