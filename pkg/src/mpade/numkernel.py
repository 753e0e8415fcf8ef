"""Dense complex polynomials, simultaneous root iteration and small null-space solves.

Polynomials are stored in ascending degree order, ``coeffs[k]`` multiplying
``z**k``. Everything here works in plain double precision.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg

from mpade.errors import NonConvergence, RankDeficiencyWarning

TRIM_TOL = 1e-13
ROOT_RESIDUAL_TOL = 1e-10
ROOT_MAX_ITERS = 500
NULLSPACE_TOL = 1e-10
RANK_TOL = 1e-12

__all__ = [
    "ComplexPoly",
    "RootMultiset",
    "poly_eval",
    "poly_mul",
    "poly_roots",
    "null_vector",
]


def _trim(c: np.ndarray, tol: float) -> np.ndarray:
    if c.size == 0:
        return c
    mag = np.abs(c)
    scale = mag.max()
    if scale == 0.0:
        return c[:0]
    keep = np.nonzero(mag > tol * scale)[0]
    return c[: keep[-1] + 1]


class ComplexPoly:
    """Immutable dense polynomial with complex coefficients.

    Parameters
    ----------
    coeffs : sequence of complex
        Coefficients in ascending degree order. Trailing coefficients below
        ``trim_tol * max|coeff|`` are dropped. An empty sequence is the zero
        polynomial.
    trim_tol : float
        Relative trimming threshold.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Sequence[complex] = (), trim_tol: float = TRIM_TOL):
        c = np.array(coeffs, dtype=complex).ravel()
        c = _trim(c, trim_tol).copy()
        c.setflags(write=False)
        self._c = c

    @classmethod
    def from_roots(cls, roots: Sequence[complex], lead: complex = 1.0) -> "ComplexPoly":
        c = np.array([lead], dtype=complex)
        for r in roots:
            c = np.convolve(c, [-r, 1.0])
        return cls(c, trim_tol=0.0)

    @classmethod
    def monomial(cls, k: int) -> "ComplexPoly":
        c = np.zeros(k + 1, dtype=complex)
        c[k] = 1.0
        return cls(c)

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return self._c.size - 1

    def is_zero(self) -> bool:
        return self._c.size == 0

    def __call__(self, z):
        return poly_eval(self, z)

    def __mul__(self, other):
        if isinstance(other, ComplexPoly):
            return poly_mul(self, other)
        return ComplexPoly(self._c * complex(other), trim_tol=0.0)

    __rmul__ = __mul__

    def __add__(self, other: "ComplexPoly") -> "ComplexPoly":
        n = max(self._c.size, other._c.size)
        out = np.zeros(n, dtype=complex)
        out[: self._c.size] += self._c
        out[: other._c.size] += other._c
        return ComplexPoly(out, trim_tol=0.0)

    def __neg__(self) -> "ComplexPoly":
        return ComplexPoly(-self._c, trim_tol=0.0)

    def __sub__(self, other: "ComplexPoly") -> "ComplexPoly":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComplexPoly):
            return NotImplemented
        return self._c.shape == other._c.shape and bool(np.all(self._c == other._c))

    def __hash__(self):
        return hash(self._c.tobytes())

    def __repr__(self) -> str:
        return f"ComplexPoly({self._c.tolist()!r})"

    def trimmed(self, tol: float) -> "ComplexPoly":
        return ComplexPoly(self._c, trim_tol=tol)

    def max_coeff(self) -> float:
        return float(np.abs(self._c).max()) if self._c.size else 0.0

    def taylor(self, center: complex, order: int) -> np.ndarray:
        """Coefficients of ``p(center + t)`` in powers of ``t`` up to ``order``."""
        out = np.zeros(order + 1, dtype=complex)
        c = list(self._c)
        # repeated synthetic division by (z - center)
        for j in range(order + 1):
            if not c:
                break
            acc = 0j
            desc = []
            for ck in reversed(c):
                acc = acc * center + ck
                desc.append(acc)
            out[j] = desc.pop()
            c = desc[::-1]
        return out

    def deflate(self, root: complex) -> "ComplexPoly":
        """Quotient of ``p / (z - root)``; the remainder is discarded."""
        c = self._c
        if c.size <= 1:
            return ComplexPoly(())
        q = np.empty(c.size - 1, dtype=complex)
        acc = c[-1]
        q[-1] = acc
        for k in range(c.size - 2, 0, -1):
            acc = acc * root + c[k]
            q[k - 1] = acc
        return ComplexPoly(q, trim_tol=0.0)

    def divmod_monic(self, w: "ComplexPoly"):
        """Long division by a monic polynomial ``w``; returns ``(quotient, remainder)``."""
        a = self._c.copy()
        b = w.coeffs
        db = b.size - 1
        if a.size - 1 < db:
            return ComplexPoly(()), self
        q = np.zeros(a.size - db, dtype=complex)
        for k in range(a.size - 1, db - 1, -1):
            t = a[k] / b[-1]
            q[k - db] = t
            a[k - db : k + 1] -= t * b
        return ComplexPoly(q, trim_tol=0.0), ComplexPoly(a[:db], trim_tol=0.0)

    def derivative(self) -> "ComplexPoly":
        if self._c.size <= 1:
            return ComplexPoly(())
        return ComplexPoly(self._c[1:] * np.arange(1, self._c.size), trim_tol=0.0)


@dataclass(frozen=True)
class RootMultiset:
    """Roots of a polynomial with multiplicity, plus ``max |p(root)|``."""

    roots: np.ndarray
    residual: float

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)


def poly_eval(p: ComplexPoly, z):
    """Horner evaluation; ``z`` may be a scalar or an array."""
    c = p.coeffs
    z = np.asarray(z, dtype=complex)
    acc = np.zeros_like(z)
    for ck in c[::-1]:
        acc = acc * z + ck
    return acc[()] if acc.ndim == 0 else acc


def poly_mul(a: ComplexPoly, b: ComplexPoly) -> ComplexPoly:
    if a.is_zero() or b.is_zero():
        return ComplexPoly(())
    return ComplexPoly(np.convolve(a.coeffs, b.coeffs), trim_tol=0.0)


def _initial_guesses(monic: np.ndarray, seed) -> np.ndarray:
    deg = monic.size - 1
    # Fujiwara bound on the root moduli
    k = np.arange(1, deg + 1)
    terms = np.abs(monic[deg - k]) ** (1.0 / k)
    terms[-1] = (np.abs(monic[0]) / 2.0) ** (1.0 / deg)
    bound = 2.0 * terms.max()
    radius = 0.5 * bound if bound > 0 else 1.0
    if seed is None:
        offset = 0.4
        jitter = np.zeros(deg)
    else:
        rng = np.random.default_rng(seed)
        offset = rng.uniform(0.0, 2 * np.pi)
        jitter = rng.uniform(-0.1, 0.1, size=deg)
    angles = 2 * np.pi * np.arange(deg) / deg + offset + jitter / max(deg, 1)
    return radius * (1.0 + 0.05 * np.arange(deg) / deg) * np.exp(1j * angles)


def poly_roots(
    p: ComplexPoly,
    tol: float = ROOT_RESIDUAL_TOL,
    max_iters: int = ROOT_MAX_ITERS,
    seed=None,
) -> RootMultiset:
    """All roots of ``p`` by Durand-Kerner (Weierstrass) iteration.

    Parameters
    ----------
    p : ComplexPoly
        Polynomial of degree >= 1.
    tol : float
        Residual tolerance. A root ``r`` is accepted when
        ``|p(r)| <= tol * max|coeff| * max(1, |r|)**deg``.
    max_iters : int
        Iteration cap.
    seed : int, optional
        Seeds the perturbation of the starting circle. ``None`` uses a fixed
        deterministic offset.

    Returns
    -------
    RootMultiset

    Raises
    ------
    NonConvergence
        If the residual tolerance is not met after ``max_iters`` sweeps.
    """
    deg = p.degree
    if deg < 1:
        raise ValueError("poly_roots needs a polynomial of degree >= 1")
    c = p.coeffs
    monic = c / c[-1]
    if deg == 1:
        roots = np.array([-monic[0]])
    else:
        roots = _initial_guesses(monic, seed)
        eye = np.eye(deg, dtype=bool)
        for _ in range(max_iters):
            vals = poly_eval(ComplexPoly(monic, trim_tol=0.0), roots)
            diffs = roots[:, None] - roots[None, :]
            diffs[eye] = 1.0
            denom = diffs.prod(axis=1)
            denom[denom == 0] = 1e-300
            step = vals / denom
            roots = roots - step
            if np.all(np.abs(step) <= 4e-16 * np.maximum(1.0, np.abs(roots))):
                break
    vals = np.abs(poly_eval(p, roots))
    allowed = tol * p.max_coeff() * np.maximum(1.0, np.abs(roots)) ** deg
    if not np.all(np.isfinite(roots)) or np.any(vals > allowed):
        raise NonConvergence(
            f"Durand-Kerner residual {vals.max():.3e} above tolerance after {max_iters} iterations"
        )
    return RootMultiset(roots=roots, residual=float(vals.max()))


def null_vector(M, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Nonzero ``v`` with ``M @ v ~ 0`` for a ``k x (k+1)`` complex matrix.

    Uses QR with column pivoting. The unknown sitting in the first pivoted
    column whose pivot falls below ``rank_tol * |R[0, 0]|`` (the last column
    when ``M`` has full rank) is pinned to 1, any later unknowns are set to 0,
    and the rest follow by back substitution.

    Warns
    -----
    RankDeficiencyWarning
        If ``M`` has numerical rank below ``k``.
    """
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2:
        M = M.reshape(0, M.size if M.size else 1)
    k, cols = M.shape
    if cols != k + 1:
        raise ValueError(f"expected a k x (k+1) matrix, got {M.shape}")
    v = np.zeros(cols, dtype=complex)
    if k == 0:
        v[0] = 1.0
        return v
    _, R, piv = scipy.linalg.qr(M, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    top = diag[0] if diag.size else 0.0
    rank = int(np.sum(diag > rank_tol * top)) if top > 0 else 0
    if rank < k:
        warnings.warn(
            f"null space of the {k}x{k + 1} interpolation system has dimension {k + 1 - rank}",
            RankDeficiencyWarning,
            stacklevel=2,
        )
    y = np.zeros(cols, dtype=complex)
    y[rank] = 1.0
    if rank > 0:
        y[:rank] = scipy.linalg.solve_triangular(R[:rank, :rank], -R[:rank, rank])
    v[piv] = y
    return v
