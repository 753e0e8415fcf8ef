"""Multi-point Pade approximants from linearized interpolation conditions.

For a table ``w_n`` and integers ``n >= m >= 0`` the approximant of type
``(n, m)`` is ``P/Q`` with ``deg P <= n - m``, ``deg Q <= m`` and
``(Q f - P) / w_{n+1}`` analytic near the nodes. The divided differences of
``Q f`` over the nodes of ``w_{n+1}`` are linear in the coefficients of ``Q``;
the orders above ``n - m`` must vanish, which is an ``m x (m+1)`` homogeneous
system. ``P`` is then the Newton interpolant of ``Q f`` truncated to degree
``n - m``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from mpade.errors import DefectTooLarge, DivisionResidual, NodeOrderTooHigh, NotNewtonian, RankDeficiencyWarning
from mpade.funcspec import MAX_JET_ORDER, FunctionSpec, as_function, hermite_table, jet, node_multiplicities
from mpade.numkernel import ComplexPoly, RootMultiset, null_vector, poly_roots
from mpade.potential import InterpolationTable

DEFECT_TOL = 1e-7
AN_TOL = 1e-8
REDUCE_TOL = 1e-8

__all__ = [
    "PadeApproximant",
    "build",
    "build_row",
    "normalize_den",
    "reduce",
    "newton_An",
    "telescoping_coefficient",
    "leja_order",
]


@dataclass(frozen=True)
class PadeApproximant:
    """A built approximant ``num / den`` of type ``(n, m)``.

    ``den`` carries the normalization ``prod_{|r|<=1} (z - r) * prod_{|r|>1} (1 - z/r)``
    over its roots ``den_roots``. ``diagnostics`` holds ``defect_residual``,
    ``defect_tol``, ``pivot_ratio``, ``rank_deficient``, ``scale`` (the scalar
    that took the reduced null-space pair to normalized form) and
    ``cancelled`` (number of common factors removed).
    """

    n: int
    m: int
    num: ComplexPoly
    den: ComplexPoly
    den_roots: RootMultiset
    diagnostics: dict = field(default_factory=dict)
    nodes: np.ndarray = field(default=None, repr=False)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = self.num(z) / self.den(z)
        return out[()] if np.ndim(out) == 0 else out

    @property
    def poles(self) -> np.ndarray:
        return self.den_roots.roots


def leja_order(nodes) -> list:
    """Leja order of the distinct nodes; repeated nodes stay adjacent.

    Starts from the node of largest modulus, then repeatedly takes the node
    maximising the product of distances to those already chosen.
    """
    mult = node_multiplicities(nodes)
    pts = list(mult)
    if len(pts) <= 1:
        return [p for p in pts for _ in range(mult[p])]
    arr = np.array(pts)
    chosen = [int(np.argmax(np.abs(arr)))]
    logd = np.zeros(arr.size)
    remaining = np.ones(arr.size, dtype=bool)
    remaining[chosen[0]] = False
    while remaining.any():
        with np.errstate(divide="ignore"):
            logd += np.log(np.abs(arr - arr[chosen[-1]]))
        score = np.where(remaining, logd, -np.inf)
        nxt = int(np.argmax(score))
        chosen.append(nxt)
        remaining[nxt] = False
    return [pts[i] for i in chosen for _ in range(mult[pts[i]])]


def _column_jets(f: FunctionSpec, ordered, m: int, max_order: int) -> dict:
    """Taylor data of ``z**j f`` for ``j = 0..m`` at each distinct node."""
    jets = {}
    for v, k in node_multiplicities(ordered).items():
        if k - 1 > max_order:
            raise NodeOrderTooHigh(f"node {v} has multiplicity {k}, jet order cap is {max_order}")
        g = jet(f, v, k - 1).coeffs
        cols = np.empty((k, m + 1), dtype=complex)
        cols[:, 0] = g
        for j in range(1, m + 1):
            # multiply by z = v + t
            shifted = np.concatenate(([0.0], g[:-1]))
            g = v * g + shifted
            cols[:, j] = g
        jets[v] = cols
    return jets


def _newton_to_monomial(coeffs, nodes) -> ComplexPoly:
    p = ComplexPoly([coeffs[-1]], trim_tol=0.0)
    for k in range(len(coeffs) - 2, -1, -1):
        p = p * ComplexPoly([-nodes[k], 1.0], trim_tol=0.0) + ComplexPoly([coeffs[k]], trim_tol=0.0)
    return p


def _normalization_scale(q: ComplexPoly, roots) -> complex:
    lead = q.coeffs[-1]
    s = 1.0 / lead
    for r in roots:
        if abs(r) > 1.0:
            s *= -1.0 / r
    return s


def normalize_den(q: ComplexPoly, seed=None) -> ComplexPoly:
    """Rescale ``q`` so that ``q = prod_{|r|<=1} (z - r) * prod_{|r|>1} (1 - z/r)``."""
    if q.is_zero():
        raise ValueError("cannot normalize the zero polynomial")
    roots = poly_roots(q, seed=seed).roots if q.degree >= 1 else []
    return q * _normalization_scale(q, roots)


def _nearest_root(p: ComplexPoly, start: complex, iters: int = 60) -> complex:
    dp = p.derivative()
    z = complex(start)
    for _ in range(iters):
        d = complex(dp(z))
        if d == 0:
            break
        step = complex(p(z)) / d
        z -= step
        if abs(step) <= 1e-15 * max(1.0, abs(z)):
            break
    return z


def _reduce_with_roots(p: ComplexPoly, q: ComplexPoly, q_roots, tol: float):
    kept = []
    cancelled = 0
    for r in q_roots:
        if p.degree >= 1:
            z = _nearest_root(p, r)
            if np.isfinite(z) and abs(z - r) <= tol * max(1.0, abs(r)):
                p = p.deflate(z)
                q = q.deflate(r)
                cancelled += 1
                continue
        kept.append(r)
    return p, q, np.array(kept, dtype=complex), cancelled


def reduce(p: ComplexPoly, q: ComplexPoly, tol: float = REDUCE_TOL):
    """Cancel roots of ``q`` lying within ``tol * max(1, |root|)`` of a root of ``p``.

    The matching root of ``p`` is located by Newton iteration started at the
    root of ``q``.
    """
    if q.is_zero():
        raise ValueError("denominator is identically zero")
    if p.is_zero():
        return ComplexPoly(()), ComplexPoly([1.0])
    roots = poly_roots(q).roots if q.degree >= 1 else []
    p, q, _, _ = _reduce_with_roots(p, q, roots, tol)
    return p, q


def build(
    f,
    table: InterpolationTable,
    n: int,
    m: int,
    *,
    defect_tol: float | None = None,
    reduce_tol: float = REDUCE_TOL,
    max_order: int = MAX_JET_ORDER,
    seed=None,
    check_defect: bool = True,
) -> PadeApproximant:
    """Build the multi-point Pade approximant of type ``(n, m)``.

    Parameters
    ----------
    f : FunctionSpec or str
        The function; strings are parsed.
    table : InterpolationTable
        Interpolation nodes; ``w_{n+1}`` supplies ``n + 1`` conditions.
    n, m : int
        Type, ``n >= m >= 0``.
    defect_tol : float, optional
        Bound on the interpolation defect; defaults to
        ``1e-7 * (1 + max |divided difference of f|)``.
    reduce_tol : float
        Tolerance for cancelling common factors.
    seed : int, optional
        Passed to the root finder.
    check_defect : bool
        Raise :class:`DefectTooLarge` when the defect exceeds ``defect_tol``.

    Raises
    ------
    SingularEvaluation
        A node sits on a singularity of ``f``.
    DefectTooLarge
        The computed pair violates the interpolation conditions.

    Warns
    -----
    RankDeficiencyWarning
        The linearized system is degenerate at this ``(n, m)``.
    """
    if not (n >= m >= 0):
        raise ValueError(f"need n >= m >= 0, got n={n}, m={m}")
    f = as_function(f)
    ordered = leja_order(table.nodes(n + 1))
    jets = _column_jets(f, ordered, m, max_order)
    D = hermite_table(ordered, jets)
    L = n - m

    M = D[L + 1 : n + 1, :]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", RankDeficiencyWarning)
        qv = null_vector(M)
    rank_deficient = any(issubclass(w.category, RankDeficiencyWarning) for w in caught)
    if rank_deficient:
        warnings.warn(f"rank-deficient interpolation system at n={n}, m={m}", RankDeficiencyWarning, stacklevel=2)
    if M.size:
        sv = np.linalg.svd(M, compute_uv=False)
        pivot_ratio = float(sv[-1] / sv[0]) if sv[0] > 0 else 0.0
    else:
        pivot_ratio = 1.0

    d = D @ qv
    Q = ComplexPoly(qv)
    P = _newton_to_monomial(d[: L + 1], ordered[:L])

    # interpolation defect of the linearized pair, orders 0..n
    resid_jets = {v: (cols @ qv - P.taylor(v, cols.shape[0] - 1))[:, None] for v, cols in jets.items()}
    defect_raw = float(np.max(np.abs(hermite_table(ordered, resid_jets))))
    q_roots_pre = poly_roots(Q, seed=seed).roots if Q.degree >= 1 else []
    s_pre = _normalization_scale(Q, q_roots_pre)
    defect = defect_raw * abs(s_pre)
    if defect_tol is None:
        defect_tol = DEFECT_TOL * (1.0 + float(np.max(np.abs(D[:, 0]))))
    if check_defect and defect > defect_tol:
        raise DefectTooLarge(
            f"interpolation defect {defect:.3e} exceeds {defect_tol:.3e} at n={n}, m={m}", n=n, defect=defect
        )

    if P.is_zero():
        num, den, roots, cancelled = ComplexPoly(()), ComplexPoly([1.0]), np.zeros(0, complex), Q.degree
        scale = 1.0 / Q.coeffs[-1]
    else:
        num, den, roots, cancelled = _reduce_with_roots(P, Q, q_roots_pre, reduce_tol)
        scale = _normalization_scale(den, roots)
        num = num * scale
        den = den * scale
    den_rm = RootMultiset(
        roots=roots,
        residual=float(np.max(np.abs(den(roots)))) if len(roots) else 0.0,
    )
    diagnostics = {
        "defect_residual": defect,
        "defect_tol": defect_tol,
        "pivot_ratio": pivot_ratio,
        "rank_deficient": rank_deficient,
        "scale": complex(scale),
        "cancelled": int(cancelled),
    }
    return PadeApproximant(
        n=n, m=m, num=num, den=den, den_roots=den_rm, diagnostics=diagnostics, nodes=np.array(ordered)
    )


def build_row(f, table: InterpolationTable, m: int, ns, **kwargs) -> list:
    """Approximants of type ``(n, m)`` for each ``n`` in ``ns``."""
    f = as_function(f)
    return [build(f, table, n, m, **kwargs) for n in ns]


def newton_An(
    f,
    table: InterpolationTable,
    n: int,
    m: int,
    *,
    pair: tuple | None = None,
    an_tol: float = AN_TOL,
    **kwargs,
) -> complex:
    """Constant ``A_n`` with ``Q_n P_{n+1} - Q_{n+1} P_n = A_n w_{n+1}``.

    Parameters
    ----------
    pair : (PadeApproximant, PadeApproximant), optional
        Prebuilt ``Pi_{n,m}`` and ``Pi_{n+1,m}``; built here otherwise.
    an_tol : float
        Relative bound on the division remainder and on any nonconstant
        part of the quotient.

    Raises
    ------
    NotNewtonian
        ``table`` is row-wise.
    DivisionResidual
        The numerator is not a constant multiple of ``w_{n+1}``.
    """
    if not table.newtonian:
        raise NotNewtonian(f"{table!r} is not a newtonian table")
    if pair is None:
        pi0 = build(f, table, n, m, **kwargs)
        pi1 = build(f, table, n + 1, m, **kwargs)
    else:
        pi0, pi1 = pair
        if (pi0.n, pi1.n) != (n, n + 1):
            raise ValueError("pair must hold approximants of types (n, m) and (n+1, m)")
    return telescoping_coefficient(pi0, pi1, table, an_tol)[0]


def telescoping_coefficient(pi0: PadeApproximant, pi1: PadeApproximant, table: InterpolationTable, an_tol: float = AN_TOL):
    """``(A_n, scale)`` for consecutive approximants of a newtonian table.

    ``scale`` is the largest coefficient of the two products entering the
    numerator, the reference magnitude for ``an_tol`` and for noise floors.
    """
    n = pi0.n
    a = pi0.den * pi1.num
    b = pi1.den * pi0.num
    numer = a - b
    scale = max(a.max_coeff(), b.max_coeff(), 1e-300)
    w = ComplexPoly.from_roots(table.nodes(n + 1))
    quot, rem = numer.divmod_monic(w)
    extra = quot.coeffs[1:]
    bad = max(rem.max_coeff(), float(np.max(np.abs(extra))) if extra.size else 0.0)
    if bad > an_tol * scale:
        raise DivisionResidual(
            f"telescoping numerator not divisible by w_{n + 1}: residual {bad:.3e} (scale {scale:.3e})"
        )
    return (complex(quot.coeffs[0]) if quot.coeffs.size else 0j), scale
