"""Scenario configs and the build, analyze, report pipeline behind the CLI.

A scenario is a JSON document whose top-level keys are the fields of
:class:`Scenario`. Complex numbers may be written as a number, a
``[re, im]`` pair or a constant expression string such as ``"2i"`` or
``"1/2 + 3*i"``. See ``README.md`` for the full schema.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from mpade.analysis import (
    NOISE_REL,
    Grid,
    divergence_growth,
    error_curve,
    pointwise_radius,
    pole_tracks,
    rate_estimate,
    region_report,
    rstar,
)
from mpade.errors import (
    AllZeroErrors,
    ConfigError,
    DivisionResidual,
    InsufficientData,
    MpadeError,
    PipelineError,
    PointInSigma,
    RateNotContractive,
    TableOutsideSigma,
)
from mpade.funcspec import FunctionSpec, Var, evaluate, parse
from mpade.pade import build, telescoping_coefficient
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
    Segment,
    UniformCircle,
    r0,
    rho,
    validate_table,
    weakstar_discrepancy,
)

DEFAULT_MAX_N = 48

__all__ = [
    "Scenario",
    "ScenarioResult",
    "load_scenario",
    "scenario_from_dict",
    "list_presets",
    "preset_path",
    "run_pipeline",
    "run_scenario",
    "write_report",
    "approximant_record",
]


@dataclass(frozen=True)
class Scenario:
    name: str
    function: str
    f: FunctionSpec
    sigma: object
    table: object
    measure: object
    m: int
    n_range: tuple
    K: CompactSetSample
    epsilon: float
    window: tuple
    probes: tuple = ()
    poles: tuple = ()
    flags: dict = field(default_factory=dict)
    pointwise_window: tuple | None = None
    grid: Grid | None = None
    seed: int | None = None
    description: str = ""


# --------------------------------------------------------------------------
# parsing helpers


class _Fields:
    """Field access with dotted-path diagnostics and best-effort line numbers."""

    def __init__(self, text: str | None):
        self.text = text

    def line_of(self, path: str) -> int | None:
        if not self.text:
            return None
        key = path.split(".")[-1].split("[")[0]
        m = re.search(r'"%s"\s*:' % re.escape(key), self.text)
        return self.text.count("\n", 0, m.start()) + 1 if m else None

    def error(self, path: str, message: str) -> ConfigError:
        return ConfigError(message, field=path, line=self.line_of(path))

    def get(self, d: dict, key: str, path: str, default=...):
        if not isinstance(d, dict):
            raise self.error(path, "expected an object")
        if key in d:
            return d[key]
        if default is ...:
            raise self.error(f"{path}.{key}" if path else key, "missing required field")
        return default

    def number(self, v, path: str, positive=False, integer=False):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise self.error(path, f"expected a number, got {v!r}")
        if integer and int(v) != v:
            raise self.error(path, f"expected an integer, got {v!r}")
        if not math.isfinite(v) or (positive and v <= 0):
            raise self.error(path, f"expected a finite{' positive' if positive else ''} number, got {v!r}")
        return int(v) if integer else float(v)

    def complex(self, v, path: str) -> complex:
        if isinstance(v, bool):
            raise self.error(path, f"expected a complex number, got {v!r}")
        if isinstance(v, (int, float)):
            return complex(self.number(v, path))
        if isinstance(v, list) and len(v) == 2:
            return complex(self.number(v[0], path), self.number(v[1], path))
        if isinstance(v, str):
            try:
                tree = parse(v)
            except MpadeError as exc:
                raise self.error(path, str(exc)) from None
            if _has_var(tree):
                raise self.error(path, f"constant expected, {v!r} depends on z")
            return complex(evaluate(tree, 0.0))
        raise self.error(path, f"expected a complex number, got {v!r}")

    def complex_list(self, v, path: str) -> tuple:
        if not isinstance(v, list):
            raise self.error(path, "expected a list")
        return tuple(self.complex(x, f"{path}[{i}]") for i, x in enumerate(v))

    def int_pair(self, v, path: str) -> tuple:
        if not (isinstance(v, list) and len(v) == 2):
            raise self.error(path, "expected [lo, hi]")
        lo, hi = (self.number(x, path, integer=True) for x in v)
        if lo < 0 or hi < lo:
            raise self.error(path, f"expected 0 <= lo <= hi, got {v!r}")
        return lo, hi


def _has_var(tree) -> bool:
    if isinstance(tree, Var):
        return True
    return any(_has_var(getattr(tree, a)) for a in getattr(tree, "__dataclass_fields__", {}) if isinstance(getattr(tree, a), FunctionSpec))


def _kind(F: _Fields, spec, path: str, kinds) -> str:
    kind = F.get(spec, "kind", path)
    if kind not in kinds:
        raise F.error(f"{path}.kind", f"unknown kind {kind!r}; expected one of {sorted(kinds)}")
    return kind


def _sigma(F: _Fields, spec, path="sigma"):
    kind = _kind(F, spec, path, {"points", "segment", "disk"})
    cap = F.get(spec, "capacity", path, None)
    cap = None if cap is None else F.number(cap, f"{path}.capacity", positive=True)
    if kind == "points":
        return FinitePointSet(F.complex_list(F.get(spec, "points", path), f"{path}.points"), capacity=cap)
    if kind == "segment":
        a = F.complex(F.get(spec, "a", path), f"{path}.a")
        b = F.complex(F.get(spec, "b", path), f"{path}.b")
        return Segment(a, b, capacity=cap)
    c = F.complex(F.get(spec, "center", path, 0.0), f"{path}.center")
    r = F.number(F.get(spec, "radius", path), f"{path}.radius", positive=True)
    return Disk(c, r, capacity=cap)


def _table(F: _Fields, spec, path="table"):
    kind = _kind(F, spec, path, {"all_at_point", "explicit", "roots_of_unity", "chebyshev"})
    if kind == "all_at_point":
        return AllAtPoint(F.complex(F.get(spec, "point", path, 0.0), f"{path}.point"))
    if kind == "explicit":
        return ExplicitList(F.complex_list(F.get(spec, "nodes", path), f"{path}.nodes"))
    if kind == "roots_of_unity":
        r = F.number(F.get(spec, "radius", path, 1.0), f"{path}.radius", positive=True)
        c = F.complex(F.get(spec, "center", path, 0.0), f"{path}.center")
        return RootsOfUnity(radius=r, center=c)
    a = F.complex(F.get(spec, "a", path, -1.0), f"{path}.a")
    b = F.complex(F.get(spec, "b", path, 1.0), f"{path}.b")
    return ChebyshevSegment(a, b)


def _measure(F: _Fields, spec, path="measure"):
    kind = _kind(F, spec, path, {"dirac", "uniform_circle", "arcsine", "point_masses"})
    if kind == "dirac":
        return Dirac(F.complex(F.get(spec, "point", path, 0.0), f"{path}.point"))
    if kind == "uniform_circle":
        c = F.complex(F.get(spec, "center", path, 0.0), f"{path}.center")
        r = F.number(F.get(spec, "radius", path, 1.0), f"{path}.radius", positive=True)
        return UniformCircle(c, r)
    if kind == "arcsine":
        a = F.complex(F.get(spec, "a", path, -1.0), f"{path}.a")
        b = F.complex(F.get(spec, "b", path, 1.0), f"{path}.b")
        return ArcsineSegment(a, b)
    pts = F.complex_list(F.get(spec, "points", path), f"{path}.points")
    w = F.get(spec, "weights", path, None)
    if w is None:
        w = [1.0 / len(pts)] * len(pts)
    w = [F.number(x, f"{path}.weights", positive=True) for x in w]
    if len(w) != len(pts):
        raise F.error(f"{path}.weights", "needs one weight per point")
    return PointMasses(pts, w)


def _compact(F: _Fields, spec, regular: bool, path="K") -> CompactSetSample:
    kind = _kind(F, spec, path, {"circle", "segment", "points"})
    if kind == "circle":
        c = F.complex(F.get(spec, "center", path, 0.0), f"{path}.center")
        r = F.number(F.get(spec, "radius", path, 1.0), f"{path}.radius", positive=True)
        n = F.number(F.get(spec, "samples", path, 512), f"{path}.samples", positive=True, integer=True)
        return CompactSetSample.circle(c, r, n, regular=regular)
    if kind == "segment":
        a = F.complex(F.get(spec, "a", path, -1.0), f"{path}.a")
        b = F.complex(F.get(spec, "b", path, 1.0), f"{path}.b")
        n = F.number(F.get(spec, "samples", path, 401), f"{path}.samples", positive=True, integer=True)
        return CompactSetSample.segment(a, b, n, regular=regular)
    return CompactSetSample.from_points(F.complex_list(F.get(spec, "points", path), f"{path}.points"), regular=regular)


def _grid(F: _Fields, spec, path="grid") -> Grid:
    vals = {k: F.number(F.get(spec, k, path), f"{path}.{k}") for k in ("xmin", "xmax", "ymin", "ymax")}
    if vals["xmax"] <= vals["xmin"] or vals["ymax"] <= vals["ymin"]:
        raise F.error(path, "grid bounds must satisfy min < max")
    nx = F.number(F.get(spec, "nx", path, 81), f"{path}.nx", positive=True, integer=True)
    ny = F.number(F.get(spec, "ny", path, 81), f"{path}.ny", positive=True, integer=True)
    return Grid(nx=nx, ny=ny, **vals)


_KNOWN_KEYS = {
    "name",
    "description",
    "function",
    "sigma",
    "table",
    "measure",
    "m",
    "n_range",
    "K",
    "epsilon",
    "probes",
    "window",
    "poles",
    "flags",
    "pointwise_window",
    "grid",
    "seed",
}


def scenario_from_dict(cfg: dict, text: str | None = None, max_n: int | None = DEFAULT_MAX_N) -> Scenario:
    """Validate a decoded config and build a :class:`Scenario`.

    ``max_n`` caps ``n_range`` and the windows; ``None`` disables the cap.

    Raises
    ------
    ConfigError
        With the dotted field path (and a line number when ``text`` is given).
    """
    F = _Fields(text)
    if not isinstance(cfg, dict):
        raise ConfigError("top level must be an object", line=1 if text else None)
    unknown = sorted(set(cfg) - _KNOWN_KEYS)
    if unknown:
        raise F.error(unknown[0], "unknown field")
    name = F.get(cfg, "name", "")
    if not isinstance(name, str) or not re.fullmatch(r"[A-Za-z0-9_.-]+", name):
        raise F.error("name", "expected a non-empty name of letters, digits, '-', '_' or '.'")
    function = F.get(cfg, "function", "")
    if not isinstance(function, str):
        raise F.error("function", "expected an expression string")
    try:
        f = parse(function)
    except MpadeError as exc:
        raise F.error("function", str(exc)) from None
    sigma = _sigma(F, F.get(cfg, "sigma", ""))
    table = _table(F, F.get(cfg, "table", ""))
    measure = _measure(F, F.get(cfg, "measure", ""))
    m = F.number(F.get(cfg, "m", ""), "m", integer=True)
    if m < 0:
        raise F.error("m", "must be non-negative")
    n_range = F.int_pair(F.get(cfg, "n_range", ""), "n_range")
    window = F.int_pair(F.get(cfg, "window", ""), "window")
    pw = cfg.get("pointwise_window")
    pw = None if pw is None else F.int_pair(pw, "pointwise_window")
    if max_n is not None:
        cap = lambda w: None if w is None else (w[0], min(w[1], max_n))  # noqa: E731
        n_range, window, pw = cap(n_range), cap(window), cap(pw)
        if n_range[0] > n_range[1]:
            raise F.error("n_range", f"lower end exceeds the cap max_n={max_n}")
    if n_range[0] < m:
        raise F.error("n_range", f"lower end {n_range[0]} must be >= m = {m}")
    for key, w in (("window", window), ("pointwise_window", pw)):
        if w is not None and not (n_range[0] <= w[0] and w[1] <= n_range[1] and w[0] <= w[1]):
            raise F.error(key, f"{list(w)} is not inside n_range {list(n_range)}")
    flags_in = F.get(cfg, "flags", "", {})
    if not isinstance(flags_in, dict):
        raise F.error("flags", "expected an object")
    flags = {}
    for k in ("K_regular", "rho_attained_off_sigma_interior"):
        v = flags_in.get(k, True)
        if not isinstance(v, bool):
            raise F.error(f"flags.{k}", "expected true or false")
        flags[k] = v
    extra = sorted(set(flags_in) - set(flags))
    if extra:
        raise F.error(f"flags.{extra[0]}", "unknown flag")
    K = _compact(F, F.get(cfg, "K", ""), flags["K_regular"])
    epsilon = F.number(F.get(cfg, "epsilon", "", 0.01), "epsilon", positive=True)
    if epsilon >= 1:
        raise F.error("epsilon", "must lie in (0, 1)")
    probes = F.complex_list(F.get(cfg, "probes", "", []), "probes")
    poles = F.complex_list(F.get(cfg, "poles", "", []), "poles")
    grid = cfg.get("grid")
    grid = None if grid is None else _grid(F, grid)
    seed = cfg.get("seed")
    if seed is not None:
        seed = F.number(seed, "seed", integer=True)
        if seed < 0:
            raise F.error("seed", "must be non-negative")
    description = cfg.get("description", "")
    if not isinstance(description, str):
        raise F.error("description", "expected a string")
    needed = n_range[1] + 2 if table.newtonian else n_range[1] + 1
    try:
        validate_table(table, sigma, needed)
    except TableOutsideSigma as exc:
        raise F.error("table", str(exc)) from None
    return Scenario(
        name=name,
        function=function,
        f=f,
        sigma=sigma,
        table=table,
        measure=measure,
        m=m,
        n_range=n_range,
        K=K,
        epsilon=epsilon,
        window=window,
        probes=probes,
        poles=poles,
        flags=flags,
        pointwise_window=pw,
        grid=grid,
        seed=seed,
        description=description,
    )


def _presets_dir():
    return resources.files("mpade") / "presets"


def list_presets() -> list:
    """``(name, description)`` for every bundled scenario, sorted by name."""
    out = []
    for entry in _presets_dir().iterdir():
        if entry.name.endswith(".json"):
            cfg = json.loads(entry.read_text())
            out.append((cfg["name"], cfg.get("description", "")))
    return sorted(out)


def preset_path(name: str):
    entry = _presets_dir() / f"{name}.json"
    if not entry.is_file():
        raise ConfigError(f"no preset or file named {name!r}")
    return entry


def load_scenario(source, max_n: int | None = DEFAULT_MAX_N) -> Scenario:
    """Load a scenario from a file path or a preset name."""
    path = Path(source)
    text = path.read_text() if path.is_file() else preset_path(str(source)).read_text()
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(exc.msg, line=exc.lineno) from None
    return scenario_from_dict(cfg, text=text, max_n=max_n)


# --------------------------------------------------------------------------
# pipeline


@dataclass
class ScenarioResult:
    scenario: Scenario
    approximants: list
    curve: object
    rates: dict
    newton: object
    a_scales: dict
    a_skipped: list
    clusters: list
    pointwise: list
    divergence: list
    weakstar: list
    region: object
    r0: float


def _radius_record(curve, window, method, rho_K):
    rec = {"method": method, "window": list(window)}
    try:
        est = rate_estimate(curve, window, method)
    except AllZeroErrors as exc:
        rec.update(status="all_zero_errors", rate=0.0, r_hat=math.inf, detail=str(exc))
        return rec, math.inf
    except InsufficientData as exc:
        rec.update(status="insufficient_data", rate=None, r_hat=None, detail=str(exc))
        return rec, None
    rec.update(rate=est.rate, n_used=list(est.n_used))
    try:
        est = est.with_radius(rho_K)
    except RateNotContractive as exc:
        rec.update(status="not_contractive", r_hat=None, detail=str(exc))
        return rec, None
    rec.update(status="ok", r_hat=est.r_hat, low_confidence=est.low_confidence)
    return rec, est.r_hat


def _default_grid(sc: Scenario, r_hat) -> Grid:
    spread = float(np.max(np.abs(sc.sigma.sample())))
    half = 4.0 if r_hat is None or not math.isfinite(r_hat) else 1.5 * max(r_hat, 1.0)
    half += spread
    return Grid(-half, half, -half, half, 81, 81)


def run_pipeline(sc: Scenario, seed: int | None = None) -> ScenarioResult:
    """Build the approximant row and run every analysis of a scenario.

    Raises
    ------
    PipelineError
        When a build or analysis step fails; ``n`` names the failing index.
    """
    seed = sc.seed if seed is None else seed
    lo, hi = sc.n_range
    newtonian = sc.table.newtonian
    approximants = []
    top = hi + 1 if newtonian else hi
    for n in range(lo, top + 1):
        try:
            approximants.append(build(sc.f, sc.table, n, sc.m, seed=seed))
        except MpadeError as exc:
            raise PipelineError(f"build failed: {exc}", n=n, cause=exc) from exc
    row = approximants[: hi - lo + 1]

    try:
        curve = error_curve(sc.f, row, sc.K, sc.epsilon, sc.poles)
    except MpadeError as exc:
        raise PipelineError(f"error curve failed: {exc}", cause=exc) from exc
    rho_K = rho(sc.measure, sc.K)
    lsq, r_hat = _radius_record(curve, sc.window, "lsq_slope", rho_K)
    sup, _ = _radius_record(curve, sc.window, "sup_tail", rho_K)
    rates = {"lsq_slope": lsq, "sup_tail": sup, "rho_K": rho_K, "r_hat": r_hat}

    newton = None
    a_scales = {}
    a_skipped = []
    if newtonian:
        a_values = []
        for pi0, pi1 in zip(approximants, approximants[1:]):
            try:
                a, scale = telescoping_coefficient(pi0, pi1, sc.table)
            except DivisionResidual:
                # degenerate (non-normal) entries of the table break the identity
                a_skipped.append(pi0.n)
                continue
            a_values.append((pi0.n, a))
            a_scales[pi0.n] = scale
        if a_values:
            floor = NOISE_REL * max(a_scales.values())
            try:
                newton = rstar(a_values, sc.window, floor=floor)
            except InsufficientData:
                newton = None

    clusters = pole_tracks(row) if sc.m >= 1 else []

    pointwise = []
    pw = sc.pointwise_window or sc.window
    for z in sc.probes:
        rec = {"z": z, "window": list(pw)}
        if not newtonian:
            rec.update(status="row_wise_table")
        else:
            try:
                est = pointwise_radius(
                    sc.f, sc.table, sc.measure, z, sc.m, pw, approximants=[p for p in row if pw[0] <= p.n <= pw[1]], sigma=sc.sigma
                )
                rec.update(status="ok" if est.r_hat is not None else "not_contractive", rate=est.rate, r_hat=est.r_hat)
            except AllZeroErrors:
                rec.update(status="all_zero_errors", rate=0.0, r_hat=math.inf)
            except PointInSigma as exc:
                rec.update(status="in_sigma", detail=str(exc))
            except MpadeError as exc:
                rec.update(status=type(exc).__name__, detail=str(exc))
        pointwise.append(rec)

    probes_off = [z for z in sc.probes if not sc.sigma.contains(z)]
    divergence = divergence_growth(row, probes_off, sc.measure, newtonian) if probes_off else []
    weakstar = []
    for z in probes_off:
        samp = CompactSetSample.from_points([z])
        vals = []
        for n in range(max(lo, 1), hi + 1):
            try:
                vals.append((n, weakstar_discrepancy(sc.table, sc.measure, samp, n)))
            except MpadeError:
                vals.append((n, None))
        weakstar.append({"z": z, "discrepancy": vals})

    r0_val = r0(sc.measure, sc.sigma)
    grid = sc.grid or _default_grid(sc, r_hat)
    region = region_report(sc.measure, r_hat, grid, r0_val) if r_hat is not None else None
    return ScenarioResult(
        scenario=sc,
        approximants=row,
        curve=curve,
        rates=rates,
        newton=newton,
        a_scales=a_scales,
        a_skipped=a_skipped,
        clusters=clusters,
        pointwise=pointwise,
        divergence=divergence,
        weakstar=weakstar,
        region=region,
        r0=r0_val,
    )


# --------------------------------------------------------------------------
# serialization


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (complex, np.complexfloating)):
        return [_jsonable(float(x.real)), _jsonable(float(x.imag))]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            return None
        if math.isinf(x):
            return "infinite" if x > 0 else "-infinite"
        return x
    return x


def _dump(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"


def _rates_document(res: ScenarioResult) -> dict:
    sc = res.scenario
    doc = {
        "scenario": sc.name,
        "function": sc.function,
        "m": sc.m,
        "n_range": list(sc.n_range),
        "window": list(sc.window),
        "epsilon": sc.epsilon,
        "rho_K": res.rates["rho_K"],
        "r_hat": res.rates["r_hat"],
        "lsq_slope": res.rates["lsq_slope"],
        "sup_tail": res.rates["sup_tail"],
        "sigma_bound": res.curve.exclusion.sigma_bound,
        "sigma_bound_below_epsilon": res.curve.exclusion.sigma_bound < sc.epsilon,
        "noise_floor": res.curve.noise_floor,
        "flags": sc.flags,
        "r_hat_meaning": "radius" if all(sc.flags.values()) else "lower_bound",
        "r0": res.r0,
        "newtonian": sc.table.newtonian,
        "pointwise": res.pointwise,
        "divergence": [
            {"z": d.z, "growth": d.growth, "level": d.level, "diverges": d.diverges} for d in res.divergence
        ],
        "weakstar": res.weakstar,
    }
    if res.region is not None:
        doc["region"] = {"empty": res.region.empty, "below_r0": res.region.below_r0}
    if sc.table.newtonian:
        doc["A_n_skipped"] = list(res.a_skipped)
        if res.newton is None:
            doc["r_star"] = None
        else:
            doc["r_star"] = res.newton.r_star
            doc["r_star_sup_tail"] = res.newton.r_star_sup_tail
            doc["A_n"] = [[n, a] for n, a in res.newton.a_values]
            doc["A_n_used"] = list(res.newton.n_used)
    return doc


def _poles_document(res: ScenarioResult) -> dict:
    return {
        "scenario": res.scenario.name,
        "m": res.scenario.m,
        "clusters": [
            {
                "center": c.center,
                "spread": c.spread,
                "multiplicity_estimate": c.multiplicity_estimate,
                "converged": c.converged,
                "members": [[n, r] for n, r in c.members],
                "track": [[n, r] for n, r in c.track],
            }
            for c in sorted(res.clusters, key=lambda c: (not c.converged, abs(c.center), c.center.real, c.center.imag))
        ],
    }


def _fmt(x: float) -> str:
    return "{:.16e}".format(x)


def write_report(res: ScenarioResult, out_dir) -> dict:
    """Write ``errors.csv``, ``rates.json``, ``poles.json`` and ``region.csv``.

    All content is rendered first and written afterwards. Returns the paths.
    """
    out = Path(out_dir)
    files = {}
    lines = ["n,error,excluded_count"]
    for n, e, cnt in res.curve.entries:
        lines.append(f"{n},{_fmt(e)},{cnt}")
    files["errors.csv"] = "\n".join(lines) + "\n"
    files["rates.json"] = _dump(_rates_document(res))
    files["poles.json"] = _dump(_poles_document(res))
    lines = ["x,y,inside,boundary"]
    if res.region is not None:
        pts = res.region.points.ravel()
        ins = res.region.inside.ravel()
        bd = res.region.boundary.ravel()
        for z, a, b in zip(pts, ins, bd):
            lines.append(f"{_fmt(z.real)},{_fmt(z.imag)},{int(a)},{int(b)}")
    files["region.csv"] = "\n".join(lines) + "\n"
    out.mkdir(parents=True, exist_ok=True)
    paths = {}
    for name, content in files.items():
        p = out / name
        p.write_text(content)
        paths[name] = p
    return paths


def run_scenario(source, out_dir=None, seed: int | None = None, max_n: int | None = DEFAULT_MAX_N) -> ScenarioResult:
    """Load, run and report a scenario; ``out_dir`` defaults to ``./out/<name>``."""
    sc = source if isinstance(source, Scenario) else load_scenario(source, max_n=max_n)
    res = run_pipeline(sc, seed=seed)
    write_report(res, Path("out") / sc.name if out_dir is None else out_dir)
    return res


def approximant_record(sc: Scenario, n: int, seed: int | None = None) -> dict:
    """Coefficients, poles and diagnostics of a single ``Pi_{n,m}``."""
    if n < sc.m:
        raise ConfigError(f"n = {n} is below m = {sc.m}", field="n")
    try:
        pi = build(sc.f, sc.table, n, sc.m, seed=sc.seed if seed is None else seed)
    except MpadeError as exc:
        raise PipelineError(f"build failed: {exc}", n=n, cause=exc) from exc
    diag = {k: v for k, v in pi.diagnostics.items()}
    return _jsonable(
        {
            "scenario": sc.name,
            "n": pi.n,
            "m": pi.m,
            "num": list(pi.num.coeffs),
            "den": list(pi.den.coeffs),
            "den_roots": list(pi.den_roots.roots),
            "nodes": list(pi.nodes) if pi.nodes is not None else [],
            "diagnostics": diag,
        }
    )


def dumps(obj) -> str:
    return _dump(obj)
