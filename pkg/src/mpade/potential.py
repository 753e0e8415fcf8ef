"""Measures, logarithmic potentials and interpolation tables.

Conventions: the logarithmic potential of a unit measure is
``P(mu; z) = integral of -log|z - t| dmu(t)``, so ``exp(-P)`` behaves like
``|z|`` at infinity. Compact sets are finite samples, and every sup-norm over
a compact set is a sample maximum (a lower bound of the true supremum).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from mpade.errors import MissingCapacity, ProbeOnSupport, TableOutsideSigma

MEMBERSHIP_TOL = 1e-12

__all__ = [
    "Measure",
    "PointMasses",
    "Dirac",
    "ArcsineSegment",
    "UniformCircle",
    "SigmaDescriptor",
    "FinitePointSet",
    "Segment",
    "Disk",
    "CompactSetSample",
    "InterpolationTable",
    "AllAtPoint",
    "ExplicitList",
    "RootsOfUnity",
    "ChebyshevSegment",
    "RowWiseTable",
    "log_potential",
    "rho",
    "in_level_set",
    "green_value",
    "counting_measure",
    "weakstar_discrepancy",
    "table_nodes",
    "r0",
]


# --------------------------------------------------------------------------
# measures


class Measure:
    """Positive unit Borel measure with a computable logarithmic potential."""

    def potential(self, z):
        raise NotImplementedError

    def exp_neg_potential(self, z):
        """``exp(-P(mu; z))``, with 0 at atoms."""
        with np.errstate(over="ignore"):
            return np.exp(-self.potential(z))


@dataclass(frozen=True)
class PointMasses(Measure):
    points: tuple
    weights: tuple

    def __post_init__(self):
        pts = tuple(complex(p) for p in self.points)
        w = tuple(float(x) for x in self.weights)
        if len(pts) != len(w) or not pts:
            raise ValueError("points and weights must be nonempty and of equal length")
        if any(x <= 0 for x in w) or abs(sum(w) - 1.0) > 1e-12:
            raise ValueError("weights must be positive and sum to 1")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)

    @property
    def total_mass(self) -> float:
        return float(sum(self.weights))

    def potential(self, z):
        z = np.asarray(z, dtype=complex)
        pts = np.array(self.points)
        w = np.array(self.weights)
        d = np.abs(z[..., None] - pts)
        with np.errstate(divide="ignore"):
            out = -(np.log(d) * w).sum(axis=-1)
        return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class Dirac(Measure):
    a: complex = 0.0

    total_mass = 1.0

    def potential(self, z):
        z = np.asarray(z, dtype=complex)
        with np.errstate(divide="ignore"):
            out = -np.log(np.abs(z - self.a))
        return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class UniformCircle(Measure):
    center: complex = 0.0
    radius: float = 1.0

    total_mass = 1.0

    def potential(self, z):
        z = np.asarray(z, dtype=complex)
        out = -np.log(np.maximum(np.abs(z - self.center), self.radius))
        return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class ArcsineSegment(Measure):
    """Equilibrium (arcsine) measure of the segment ``[a, b]``."""

    a: complex = -1.0
    b: complex = 1.0

    total_mass = 1.0

    def potential(self, z):
        z = np.asarray(z, dtype=complex)
        half = (self.b - self.a) / 2.0
        w = (z - (self.a + self.b) / 2.0) / half
        s = np.sqrt(w - 1.0) * np.sqrt(w + 1.0)
        # branch with |w + s| >= 1 (exterior conformal map)
        phi = np.abs(w + s)
        phi = np.maximum(phi, 1.0 / np.where(phi == 0, 1.0, phi))
        out = -np.log(np.abs(half) / 2.0) - np.log(phi)
        return out[()] if out.ndim == 0 else out


def log_potential(mu: Measure, z):
    """``P(mu; z)``; ``+inf`` at atoms of point measures."""
    return mu.potential(z)


def counting_measure(nodes) -> PointMasses:
    """Normalized zero counting measure, equal weight ``1/n`` per node (with multiplicity)."""
    pts = [complex(v) for v in nodes]
    if not pts:
        raise ValueError("counting_measure needs at least one node")
    return PointMasses(tuple(pts), tuple([1.0 / len(pts)] * len(pts)))


# --------------------------------------------------------------------------
# the interpolation set and compact sets


class SigmaDescriptor:
    capacity = None

    def contains(self, z) -> bool:
        raise NotImplementedError

    def sample(self, n: int) -> np.ndarray:
        raise NotImplementedError


@dataclass(frozen=True)
class FinitePointSet(SigmaDescriptor):
    points: tuple
    capacity: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(complex(p) for p in self.points))

    def contains(self, z) -> bool:
        return any(abs(complex(z) - p) <= MEMBERSHIP_TOL * max(1.0, abs(p)) for p in self.points)

    def sample(self, n: int = 0) -> np.ndarray:
        return np.array(self.points)


@dataclass(frozen=True)
class Segment(SigmaDescriptor):
    a: complex = -1.0
    b: complex = 1.0
    capacity: float | None = field(default=None)

    def __post_init__(self):
        if self.capacity is None:
            object.__setattr__(self, "capacity", abs(self.b - self.a) / 4.0)

    def contains(self, z) -> bool:
        a, b, z = complex(self.a), complex(self.b), complex(z)
        d = b - a
        t = ((z - a) * d.conjugate()).real / abs(d) ** 2
        t = min(1.0, max(0.0, t))
        return abs(z - (a + t * d)) <= MEMBERSHIP_TOL * max(1.0, abs(d))

    def sample(self, n: int = 401) -> np.ndarray:
        t = np.linspace(0.0, 1.0, n)
        return self.a + t * (self.b - self.a)


@dataclass(frozen=True)
class Disk(SigmaDescriptor):
    center: complex = 0.0
    radius: float = 1.0
    capacity: float | None = field(default=None)

    def __post_init__(self):
        if self.capacity is None:
            object.__setattr__(self, "capacity", float(self.radius))

    def contains(self, z) -> bool:
        return abs(complex(z) - self.center) <= self.radius * (1.0 + MEMBERSHIP_TOL)

    def sample(self, n: int = 64) -> np.ndarray:
        r = self.radius * np.linspace(0.0, 1.0, n // 8 + 2)
        th = 2 * np.pi * np.arange(n) / n
        return (self.center + r[:, None] * np.exp(1j * th)[None, :]).ravel()


@dataclass(frozen=True)
class CompactSetSample:
    """Finite sample standing in for a compact set ``K``.

    ``regular`` is a user assertion (Dirichlet regularity is not tested).
    """

    points: np.ndarray
    descriptor: str
    regular: bool = True

    def __post_init__(self):
        pts = np.atleast_1d(np.asarray(self.points, dtype=complex)).ravel()
        if pts.size == 0 or not np.all(np.isfinite(pts)):
            raise ValueError("a compact set sample must be nonempty and finite")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return self.points.size

    @classmethod
    def circle(cls, center=0.0, radius=1.0, n=512, regular=True):
        th = 2 * np.pi * np.arange(n) / n
        return cls(center + radius * np.exp(1j * th), f"circle c={complex(center)} r={radius}, {n} pts", regular)

    @classmethod
    def segment(cls, a=-1.0, b=1.0, n=401, regular=True):
        t = np.linspace(0.0, 1.0, n)
        return cls(a + t * (b - a), f"segment [{a}, {b}], {n} pts", regular)

    @classmethod
    def from_points(cls, points, regular=True):
        pts = np.atleast_1d(np.asarray(points, dtype=complex))
        return cls(pts, f"{pts.size} explicit pts", regular)


def rho(mu: Measure, K: CompactSetSample) -> float:
    """Sample maximum of ``exp(-P(mu; .))`` over ``K``."""
    return float(np.max(mu.exp_neg_potential(K.points)))


def in_level_set(mu: Measure, r: float, z):
    """Membership in ``E_mu(r) = {z : exp(-P(mu; z)) < r}``; vectorised over ``z``."""
    if r <= 0:
        raise ValueError("level r must be positive")
    out = mu.exp_neg_potential(z) < r
    return bool(out) if np.ndim(out) == 0 else out


def green_value(sigma: SigmaDescriptor, mu_sigma: Measure, z):
    """Green function of the complement of ``sigma`` with pole at infinity.

    Computed as ``-log cap(sigma) - P(mu_sigma; z)`` from the stored capacity.
    """
    cap = getattr(sigma, "capacity", None)
    if cap is None or cap <= 0:
        raise MissingCapacity(f"{sigma!r} has no stored positive capacity")
    return -np.log(cap) - log_potential(mu_sigma, z)


def r0(mu: Measure, sigma: SigmaDescriptor, n: int = 401) -> float:
    """Sample infimum of ``exp(-P(mu; .))`` over a discretisation of ``sigma``."""
    return float(np.min(mu.exp_neg_potential(sigma.sample(n))))


# --------------------------------------------------------------------------
# interpolation tables


class InterpolationTable:
    """Family of node multisets; ``nodes(n)`` returns the zeros of ``w_n``."""

    newtonian = False

    def nodes(self, n: int) -> np.ndarray:
        raise NotImplementedError

    def w(self, n: int, z):
        """``w_n(z) = prod (z - alpha_{n,i})``."""
        z = np.asarray(z, dtype=complex)
        out = np.prod(z[..., None] - self.nodes(n), axis=-1)
        return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class AllAtPoint(InterpolationTable):
    """Every node at ``a``; classical Pade data when ``a = 0``."""

    a: complex = 0.0
    newtonian = True

    def nodes(self, n: int) -> np.ndarray:
        return np.full(n, complex(self.a))


@dataclass(frozen=True)
class ExplicitList(InterpolationTable):
    """Newtonian table: ``w_n`` has the first ``n`` entries of a fixed stream."""

    stream: tuple
    newtonian = True

    def __post_init__(self):
        object.__setattr__(self, "stream", tuple(complex(p) for p in self.stream))

    def nodes(self, n: int) -> np.ndarray:
        if n > len(self.stream):
            raise ValueError(f"node stream has only {len(self.stream)} entries, {n} requested")
        return np.array(self.stream[:n], dtype=complex)


@dataclass(frozen=True)
class RootsOfUnity(InterpolationTable):
    """Row-wise table ``w_n(z) = (z - c)**n - radius**n``."""

    radius: float = 1.0
    center: complex = 0.0

    def nodes(self, n: int) -> np.ndarray:
        k = np.arange(n)
        pts = self.center + self.radius * np.exp(2j * np.pi * k / n)
        # exact values at the quarter turns keep small tables clean
        q = (4 * k) % n == 0
        quarter = np.array([1, 1j, -1, -1j])[((4 * k) // max(n, 1)) % 4]
        pts[q] = self.center + self.radius * quarter[q]
        return pts


@dataclass(frozen=True)
class ChebyshevSegment(InterpolationTable):
    """Row-wise table: zeros of the degree-``n`` Chebyshev polynomial mapped to ``[a, b]``."""

    a: complex = -1.0
    b: complex = 1.0

    def nodes(self, n: int) -> np.ndarray:
        k = np.arange(n)
        x = np.cos(np.pi * (k + 0.5) / n)
        return (self.a + self.b) / 2.0 + (self.b - self.a) / 2.0 * x


@dataclass(frozen=True)
class RowWiseTable(InterpolationTable):
    """Row-wise table from an arbitrary generator ``n -> nodes``."""

    generator: Callable[[int], Sequence[complex]]

    def nodes(self, n: int) -> np.ndarray:
        pts = np.asarray(self.generator(n), dtype=complex)
        if pts.size != n:
            raise ValueError(f"generator returned {pts.size} nodes for n={n}")
        return pts


def table_nodes(table: InterpolationTable, n: int) -> np.ndarray:
    if n < 1:
        raise ValueError("n must be >= 1")
    return table.nodes(n)


def validate_table(table: InterpolationTable, sigma: SigmaDescriptor, n_max: int) -> None:
    """Check that every node of ``w_1 .. w_{n_max}`` lies in ``sigma``."""
    ns = [n_max] if table.newtonian else range(1, n_max + 1)
    for n in ns:
        for v in table.nodes(n):
            if not sigma.contains(v):
                raise TableOutsideSigma(f"node {v} of w_{n} is outside {sigma!r}")


def weakstar_discrepancy(table: InterpolationTable, mu: Measure, probes: CompactSetSample, n: int) -> float:
    """``max |P(Theta_{w_n}; z) - P(mu; z)|`` over the probe points.

    Uses ``P(Theta_{w_n}; z) = -(1/n) log|w_n(z)|`` summed factor by factor.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    nodes = table.nodes(n)
    z = probes.points
    d = np.abs(z[:, None] - nodes[None, :])
    if np.any(d == 0.0):
        raise ProbeOnSupport("a probe point coincides with an interpolation node")
    p_w = -np.log(d).sum(axis=1) / n
    return float(np.max(np.abs(p_w - mu.potential(z))))
