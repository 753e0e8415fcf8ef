"""Error curves, geometric rate fits, continuation radii and pole tracking.

The limsup in every rate statement is replaced by an explicit window
``[n_lo, n_hi]``. Two estimators are reported: ``lsq_slope`` (exp of the
``n`` coefficient in a least-squares fit of ``log e_n`` on ``1, n, log n``)
and ``sup_tail`` (max of ``e_n**(1/n)`` over the window). Entries at or below a noise floor are
treated as roundoff and left out of the fit.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from mpade.errors import (
    AllZeroErrors,
    EmptyKEpsilon,
    InsufficientData,
    LowConfidenceWarning,
    NotNewtonian,
    PointInSigma,
    RateNotContractive,
)
from mpade.funcspec import as_function
from mpade.pade import PadeApproximant, build
from mpade.potential import CompactSetSample, InterpolationTable, Measure, SigmaDescriptor, in_level_set

UNDERFLOW_FLOOR = 1e-300
NOISE_REL = 1e-12
MIN_ENTRIES = 5
LOW_CONFIDENCE_RATE = 1.0 - 1e-3
CONVERGE_TOL = 1e-4

__all__ = [
    "ErrorCurve",
    "ExclusionFamily",
    "RateEstimate",
    "PoleCluster",
    "NewtonRadius",
    "RegionReport",
    "Grid",
    "DivergenceProbe",
    "error_curve",
    "exclusion_family",
    "rate_estimate",
    "continuation_radius",
    "rstar",
    "pointwise_radius",
    "pole_tracks",
    "region_report",
    "divergence_growth",
]


# --------------------------------------------------------------------------
# exclusion disks


@dataclass(frozen=True)
class ExclusionFamily:
    """Disks removed from ``K``: ``eps/(6 m n^2)`` around zeros of ``Q_{n,m}``
    and ``eps/(6 m)`` around declared poles of ``f``.

    ``sigma_bound`` is the sum of radii, an upper bound for the
    1-dimensional Hausdorff content of the union.
    """

    epsilon: float
    disks: tuple
    sigma_bound: float

    def excluded(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=complex)
        out = np.zeros(pts.shape, dtype=bool)
        for c, r in self.disks:
            out |= np.abs(pts - c) < r
        return out

    def contains(self, other: "ExclusionFamily") -> bool:
        """Whether every disk of ``other`` lies inside some disk of ``self``."""
        return all(
            any(abs(c2 - c1) + r2 <= r1 * (1 + 1e-12) for c1, r1 in self.disks) for c2, r2 in other.disks
        )


def exclusion_family(
    approximants: Sequence[PadeApproximant], true_poles=(), epsilon: float = 0.01, m: int | None = None
) -> ExclusionFamily:
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if m is None:
        m = approximants[0].m if approximants else 1
    disks = []
    if m >= 1:
        for pi in approximants:
            if pi.n < m:
                continue
            r = epsilon / (6.0 * m * pi.n**2)
            disks.extend((complex(z), r) for z in pi.den_roots.roots)
        disks.extend((complex(z), epsilon / (6.0 * m)) for z in true_poles)
    return ExclusionFamily(epsilon=epsilon, disks=tuple(disks), sigma_bound=float(sum(r for _, r in disks)))


# --------------------------------------------------------------------------
# error curves and rates


@dataclass(frozen=True)
class ErrorCurve:
    """Errors ``sup_{K(eps)} |f - Pi_{n,m}|`` for a row of approximants.

    ``entries`` holds ``(n, error, excluded_count)`` sorted by ``n``;
    ``noise_floor`` is ``NOISE_REL`` times the max of ``|f|`` on ``K(eps)``.
    """

    m: int
    entries: tuple
    K: CompactSetSample
    epsilon: float
    noise_floor: float = 0.0
    exclusion: ExclusionFamily | None = None

    @property
    def ns(self) -> np.ndarray:
        return np.array([e[0] for e in self.entries])

    @property
    def errors(self) -> np.ndarray:
        return np.array([e[1] for e in self.entries])


def error_curve(
    f, approximants: Sequence[PadeApproximant], K: CompactSetSample, epsilon: float, true_poles=()
) -> ErrorCurve:
    """Sample sup-norm errors on ``K`` outside the exclusion family.

    Raises
    ------
    EmptyKEpsilon
        If the exclusion disks cover every sample of ``K``.
    """
    f = as_function(f)
    approximants = sorted(approximants, key=lambda p: p.n)
    m = approximants[0].m if approximants else 0
    fam = exclusion_family(approximants, true_poles, epsilon, m)
    mask = fam.excluded(K.points)
    kept = K.points[~mask]
    if kept.size == 0:
        raise EmptyKEpsilon(f"all {len(K)} samples of K excluded at epsilon={epsilon}")
    fv = f(kept)
    entries = []
    for pi in approximants:
        err = float(np.max(np.abs(fv - pi(kept))))
        entries.append((pi.n, err if np.isfinite(err) else np.inf, int(mask.sum())))
    floor = NOISE_REL * float(np.max(np.abs(fv)))
    return ErrorCurve(m=m, entries=tuple(entries), K=K, epsilon=epsilon, noise_floor=floor, exclusion=fam)


@dataclass(frozen=True)
class RateEstimate:
    rate: float
    method: str
    window: tuple
    subsequence: tuple | None = None
    r_hat: float | None = None
    rho_K: float | None = None
    n_used: tuple = ()
    low_confidence: bool = False

    def with_radius(self, rho_K: float) -> "RateEstimate":
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", LowConfidenceWarning)
            r = continuation_radius(self.rate, rho_K)
        low = any(issubclass(w.category, LowConfidenceWarning) for w in caught)
        return replace(self, r_hat=r, rho_K=rho_K, low_confidence=low)


def _select(data, window, subsequence, floor):
    lo, hi = window
    sub = None if subsequence is None else set(int(k) for k in subsequence)
    picked = [(n, e) for n, e in data if lo <= n <= hi and (sub is None or n in sub)]
    if not picked:
        raise InsufficientData(f"no entries in window {window}")
    usable = [(n, e) for n, e in picked if np.isfinite(e) and e > floor]
    if not usable:
        raise AllZeroErrors(f"every error in window {window} is at or below {floor:.3g}")
    if len(usable) < MIN_ENTRIES:
        raise InsufficientData(f"only {len(usable)} usable entries in window {window}, need {MIN_ENTRIES}")
    return np.array([n for n, _ in usable], dtype=float), np.array([e for _, e in usable])


FIT_MODELS = ("loglinear", "linear")


def _loglinear_slope(ns, es, model: str = "loglinear") -> float:
    """Slope ``b`` of the least-squares model ``log e_n = a + b n + c log n``.

    The ``log n`` column absorbs algebraic prefactors such as ``n**2 q**n``,
    which do not change the geometric rate. ``model='linear'`` drops that
    column, which suits sequences whose corrections are themselves
    geometric (``q**n (1 + O(s**n))``).
    """
    if model not in FIT_MODELS:
        raise ValueError(f"unknown fit model {model!r}")
    cols = [np.ones_like(ns), ns]
    if model == "loglinear":
        cols.append(np.log(np.maximum(ns, 1.0)))
    return float(np.linalg.lstsq(np.column_stack(cols), np.log(es), rcond=None)[0][1])


def _fit(ns, es, method, model="loglinear"):
    if method == "lsq_slope":
        rate = float(np.exp(_loglinear_slope(ns, es, model)))
    elif method == "sup_tail":
        rate = float(np.max(es ** (1.0 / ns)))
    else:
        raise ValueError(f"unknown method {method!r}")
    return min(rate, 1.0)


def rate_estimate(
    curve,
    window,
    method: str = "lsq_slope",
    subsequence=None,
    floor: float | None = None,
    model: str = "loglinear",
) -> RateEstimate:
    """Fit a geometric rate to an error curve over a window.

    Parameters
    ----------
    curve : ErrorCurve or sequence of (n, error)
    window : (int, int)
        Inclusive range of ``n``.
    method : {'lsq_slope', 'sup_tail'}
    subsequence : iterable of int, optional
        Restrict the fit to these indices.
    floor : float, optional
        Entries at or below this are ignored; defaults to the curve's noise
        floor (or ``1e-300`` for raw pairs).
    model : {'loglinear', 'linear'}
        Regressors of the ``lsq_slope`` fit; see ``_loglinear_slope``.

    Raises
    ------
    AllZeroErrors
        Nothing in the window is above the floor.
    InsufficientData
        Fewer than five usable entries.
    """
    if isinstance(curve, ErrorCurve):
        data = [(n, e) for n, e, _ in curve.entries]
        default_floor = curve.noise_floor
    else:
        data = [(int(n), float(e)) for n, e in curve]
        default_floor = 0.0
    floor = max(UNDERFLOW_FLOOR, default_floor if floor is None else floor)
    ns, es = _select(data, window, subsequence, floor)
    rate = _fit(ns, es, method, model)
    return RateEstimate(
        rate=max(rate, np.finfo(float).tiny),
        method=method,
        window=tuple(window),
        subsequence=None if subsequence is None else tuple(subsequence),
        n_used=tuple(int(n) for n in ns),
    )


def continuation_radius(rate: float, rho_K: float) -> float:
    """``rho_K / rate``: the level ``R`` of the continuation region ``E_mu(R)``.

    Raises
    ------
    RateNotContractive
        If ``rate >= 1``.

    Warns
    -----
    LowConfidenceWarning
        If ``rate`` is within ``1e-3`` of 1.
    """
    if rho_K <= 0:
        raise ValueError("rho_K must be positive")
    if rate <= 0:
        raise ValueError("rate must be positive")
    if rate >= 1.0:
        raise RateNotContractive(f"rate {rate} >= 1 gives no continuation region")
    if rate > LOW_CONFIDENCE_RATE:
        warnings.warn(f"rate {rate} is close to 1; radius {rho_K / rate} is unreliable", LowConfidenceWarning, stacklevel=2)
    return rho_K / rate


# --------------------------------------------------------------------------
# newtonian tables


@dataclass(frozen=True)
class NewtonRadius:
    """``R*`` from the telescoping coefficients ``A_n``.

    ``r_star`` uses the least-squares slope of ``log|A_n|``;
    ``r_star_sup_tail`` uses ``max |A_n|**(1/n)`` over the window.
    Both are ``inf`` when every ``A_n`` vanishes.
    """

    a_values: tuple
    r_star: float
    r_star_sup_tail: float
    window: tuple = ()
    n_used: tuple = ()


def rstar(a_values, window, floor: float = 0.0) -> NewtonRadius:
    """Estimate ``R*`` with ``1/R* = limsup |A_n|**(1/n)``.

    Raises
    ------
    InsufficientData
        Fewer than five nonzero ``A_n`` in the window.
    """
    pairs = [(int(n), complex(a)) for n, a in a_values]
    mags = [(n, abs(a)) for n, a in pairs]
    try:
        ns, es = _select(mags, window, None, max(UNDERFLOW_FLOOR, floor))
    except AllZeroErrors:
        return NewtonRadius(tuple(pairs), np.inf, np.inf, tuple(window), ())
    slope = _loglinear_slope(ns, es)
    sup = float(np.max(es ** (1.0 / ns)))
    return NewtonRadius(
        a_values=tuple(pairs),
        r_star=float(np.exp(-slope)),
        r_star_sup_tail=1.0 / sup,
        window=tuple(window),
        n_used=tuple(int(n) for n in ns),
    )


def pointwise_radius(
    f,
    table: InterpolationTable,
    mu: Measure,
    z: complex,
    m: int,
    n_range,
    *,
    approximants: Sequence[PadeApproximant] | None = None,
    sigma: SigmaDescriptor | None = None,
    floor: float | None = None,
    model: str = "linear",
    **build_kwargs,
) -> RateEstimate:
    """Rate of ``|f(z) - Pi_{n,m}(z)|`` at a single point and the implied radius.

    ``r_hat = exp(-P(mu; z)) / rate``. The default fit model is ``'linear'``:
    short pointwise windows ending at the roundoff floor are dominated by
    geometric transients, which the ``log n`` column would misread as an
    algebraic prefactor.

    Raises
    ------
    NotNewtonian, PointInSigma, AllZeroErrors, InsufficientData
    """
    if not table.newtonian:
        raise NotNewtonian("pointwise radius estimates need a newtonian table")
    z = complex(z)
    lo, hi = n_range
    if sigma is not None and sigma.contains(z):
        raise PointInSigma(f"{z} lies in the interpolation set")
    if np.any(table.nodes(hi + 1) == z):
        raise PointInSigma(f"{z} is an interpolation node")
    f = as_function(f)
    if approximants is None:
        approximants = [build(f, table, n, m, **build_kwargs) for n in range(lo, hi + 1)]
    fz = f(z)
    data = [(pi.n, float(abs(fz - pi(z)))) for pi in approximants]
    if floor is None:
        floor = NOISE_REL * max(abs(fz), UNDERFLOW_FLOOR)
    est = rate_estimate(data, (lo, hi), "lsq_slope", floor=floor, model=model)
    level = float(mu.exp_neg_potential(z))
    return est.with_radius(level) if est.rate < 1.0 else replace(est, rho_K=level)


# --------------------------------------------------------------------------
# poles


@dataclass(frozen=True)
class PoleCluster:
    """A tracked denominator zero.

    ``members`` are the last ``tail`` linked roots as ``(n, root)`` pairs;
    ``center`` is their mean and ``spread`` their max distance to it.
    ``track`` is the full linked history.
    """

    center: complex
    spread: float
    members: tuple
    multiplicity_estimate: int = 1
    converged: bool = False
    track: tuple = field(default=(), repr=False)


def pole_tracks(
    approximants: Sequence[PadeApproximant],
    tail: int = 5,
    converge_tol: float = CONVERGE_TOL,
    merge_tol: float = 1e-3,
) -> list:
    """Link denominator zeros across consecutive ``n`` into clusters.

    Linking is greedy by distance: all (track, root) pairs are sorted by the
    distance from the track's latest root, and taken in that order when
    neither side is used yet. Leftover roots start new tracks. A cluster is
    converged when it is alive at the last ``n``, has at least ``tail``
    members, its tail spread is below ``converge_tol`` and the spread has
    not grown relative to the preceding window.
    """
    approximants = sorted(approximants, key=lambda p: p.n)
    tracks: list = []
    for pi in approximants:
        roots = [complex(r) for r in pi.den_roots.roots]
        pairs = sorted(
            ((abs(t[-1][1] - r), i, j) for i, t in enumerate(tracks) for j, r in enumerate(roots)),
            key=lambda x: x[0],
        )
        used_t, used_r = set(), set()
        for _, i, j in pairs:
            if i in used_t or j in used_r:
                continue
            tracks[i].append((pi.n, roots[j]))
            used_t.add(i)
            used_r.add(j)
        for j, r in enumerate(roots):
            if j not in used_r:
                tracks.append([(pi.n, r)])
    if not approximants:
        return []
    last_n = approximants[-1].n
    clusters = []
    for t in tracks:
        members = t[-tail:]
        pts = np.array([r for _, r in members])
        center = complex(pts.mean())
        spread = float(np.max(np.abs(pts - center)))
        prev = t[-2 * tail : -tail]
        if len(prev) == tail:
            pp = np.array([r for _, r in prev])
            prev_spread = float(np.max(np.abs(pp - pp.mean())))
        else:
            prev_spread = np.inf
        converged = (
            len(t) >= tail and t[-1][0] == last_n and spread < converge_tol and spread <= max(prev_spread, converge_tol)
        )
        clusters.append(
            PoleCluster(center=center, spread=spread, members=tuple(members), converged=converged, track=tuple(t))
        )
    out = []
    for c in clusters:
        mult = 1
        if c.converged:
            mult = sum(
                1 for o in clusters if o.converged and abs(o.center - c.center) <= merge_tol * max(1.0, abs(c.center))
            )
        out.append(replace(c, multiplicity_estimate=mult))
    return out


# --------------------------------------------------------------------------
# regions and divergence


@dataclass(frozen=True)
class Grid:
    xmin: float
    xmax: float
    ymin: float
    ymax: float
    nx: int = 81
    ny: int = 81

    def points(self) -> np.ndarray:
        x = np.linspace(self.xmin, self.xmax, self.nx)
        y = np.linspace(self.ymin, self.ymax, self.ny)
        return x[None, :] + 1j * y[:, None]


@dataclass(frozen=True)
class RegionReport:
    """Grid classification against ``E_mu(r_hat)``.

    ``boundary`` marks grid points whose classification differs from a
    horizontal or vertical neighbour.
    """

    points: np.ndarray
    inside: np.ndarray
    boundary: np.ndarray
    r_hat: float
    empty: bool
    below_r0: bool


def region_report(mu: Measure, r_hat: float, grid: Grid, r0: float | None = None) -> RegionReport:
    if r_hat <= 0:
        raise ValueError("r_hat must be positive")
    pts = grid.points()
    inside = np.ones(pts.shape, dtype=bool) if np.isinf(r_hat) else in_level_set(mu, r_hat, pts)
    b = np.zeros_like(inside)
    b[:, 1:] |= inside[:, 1:] != inside[:, :-1]
    b[:, :-1] |= inside[:, 1:] != inside[:, :-1]
    b[1:, :] |= inside[1:, :] != inside[:-1, :]
    b[:-1, :] |= inside[1:, :] != inside[:-1, :]
    return RegionReport(
        points=pts,
        inside=inside,
        boundary=b,
        r_hat=r_hat,
        empty=not bool(inside.any()),
        below_r0=r0 is not None and r_hat <= r0,
    )


@dataclass(frozen=True)
class DivergenceProbe:
    """Observed growth of ``|Pi_{n+1,m}(z) - Pi_{n,m}(z)|**(1/n)`` at a probe.

    ``diverges`` is only set for newtonian tables; row-wise tables report
    growth data with no claim.
    """

    z: complex
    growth: float
    level: float
    diverges: bool | None


def divergence_growth(approximants: Sequence[PadeApproximant], probes, mu: Measure, newtonian: bool) -> list:
    approximants = sorted(approximants, key=lambda p: p.n)
    out = []
    for z in np.atleast_1d(np.asarray(probes, dtype=complex)):
        data = []
        for a, b in zip(approximants, approximants[1:]):
            if b.n == a.n + 1:
                d = abs(complex(b(z)) - complex(a(z)))
                if np.isfinite(d) and d > 0:
                    data.append((a.n, np.log(d)))
        if len(data) < 2:
            growth = np.nan
        else:
            ns, ls = np.array(data).T
            growth = float(np.exp(np.polyfit(ns, ls, 1)[0]))
        claim = bool(growth > 1.0) if newtonian and np.isfinite(growth) else None
        out.append(DivergenceProbe(z=complex(z), growth=growth, level=float(mu.exp_neg_potential(z)), diverges=claim))
    return out
