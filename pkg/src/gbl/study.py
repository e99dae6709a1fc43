"""Batch studies: frequency convergence, beam-spacing decay, Q0 sweeps, field dumps.

Each study reads a JSON config, runs a grid of cells, and writes a CSV table
(the authoritative output), a sidecar JSON with fitted slopes and checks,
and an optional SVG chart.
"""

from dataclasses import asdict, dataclass, field
import csv
import io
import json
import math
import os
import warnings

import numpy as np

from . import cc_analysis as cc
from . import medium as media
from . import reference_fields as ref
from . import sources as srcs
from . import superposition as sp
from .beam_model import BeamCoefficients
from .svg import line_chart

STUDY_KINDS = ("converge-omega", "discretize", "q0-sweep", "field")
CSV_COLUMNS = ("omega", "Q0", "h", "eta", "max_error", "rel_error", "analytic_pred")
GRID_TOLERANCE = 0.005


class StudyError(RuntimeError):
    """A study cannot run with the given configuration."""


@dataclass
class StudyConfig:
    study: str
    medium: dict = field(default_factory=lambda: {"name": "constant"})
    source: object = "flat"
    omega: list = field(default_factory=lambda: [100.0, 200.0, 400.0, 800.0])
    Q0: list = field(default_factory=lambda: [1.0])
    h_fraction: float = 0.5
    h_fractions: list = field(default_factory=lambda: [0.5, 0.25, 0.125, 0.0625])
    y_star: float = 2.0
    window: list = field(default_factory=lambda: [-3.0, 3.0])
    n_receivers: int = 400
    alpha: float | None = 1.0
    dt: float = 1e-3
    refine: int = 32
    go_fraction: float = 0.25
    domain: list | None = None
    y_grid: list | None = None
    single_beam: bool = False
    taylor_refine: int = 8
    name: str | None = None
    plot: bool = True

    def __post_init__(self):
        if self.study not in STUDY_KINDS:
            raise StudyError(f"unknown study {self.study!r}; choose one of {', '.join(STUDY_KINDS)}")
        self.omega = [float(w) for w in _as_list(self.omega)]
        self.Q0 = [float(q) for q in _as_list(self.Q0)]
        self.h_fractions = [float(f) for f in self.h_fractions]
        if not self.omega or any(w <= 0 for w in self.omega):
            raise StudyError("omega list must be non-empty and positive")
        if not self.Q0 or any(q <= 0 for q in self.Q0):
            raise StudyError("Q0 values must be positive")
        if self.study == "converge-omega":
            if len(self.omega) < 4:
                raise StudyError("frequency convergence needs at least 4 omegas")
            if any(b <= a for a, b in zip(self.omega, self.omega[1:])):
                raise StudyError("omega list must be strictly increasing")
        for f in [self.h_fraction, *self.h_fractions]:
            if not 0 < f < 1:
                raise StudyError(f"h fraction {f:g} violates h < eta0 (beam spacing must be below the initial width)")
        if self.study == "q0-sweep" and len(self.Q0) < 2:
            raise StudyError("a Q0 sweep needs at least two Q0 values")
        if len(self.window) != 2 or not self.window[0] < self.window[1]:
            raise StudyError("window must be [x_min, x_max] with x_min < x_max")
        if self.n_receivers < 2:
            raise StudyError("need at least two receivers")
        if self.alpha is not None and not self.alpha > 0:
            raise StudyError("alpha must be positive (or null for no cutoff)")
        if not self.dt > 0:
            raise StudyError("dt must be positive")
        if int(self.refine) != self.refine or self.refine < 2:
            raise StudyError("refine must be an integer >= 2")
        # fail early on bad medium/source specs
        self.make_source()
        self.make_medium()

    @classmethod
    def from_dict(cls, data):
        known = set(cls.__dataclass_fields__)
        unknown = sorted(set(data) - known)
        if unknown:
            raise StudyError(f"unknown config keys: {', '.join(unknown)}")
        if "study" not in data:
            raise StudyError("config must name a study")
        return cls(**data)

    @classmethod
    def load(cls, path):
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise StudyError(f"cannot read config {path}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise StudyError(f"config {path} is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise StudyError(f"config {path} must hold a JSON object")
        return cls.from_dict(data)

    @property
    def cutoff_alpha(self):
        return math.inf if self.alpha is None else float(self.alpha)

    def make_source(self):
        try:
            return srcs.from_spec(self.source)
        except (TypeError, ValueError) as exc:
            raise StudyError(f"bad source: {exc}") from None

    def resolved_domain(self):
        if self.domain is not None:
            return tuple(float(v) for v in self.domain)
        margin = 8.0 + 2.0 * abs(self.y_star)
        return (self.window[0] - margin, self.window[1] + margin, -margin, self.y_star + 2.0)

    def make_medium(self):
        try:
            return media.from_spec(self.medium, domain=self.resolved_domain())
        except (TypeError, ValueError) as exc:
            raise StudyError(f"bad medium: {exc}") from None

    def receivers(self, n=None):
        return np.linspace(self.window[0], self.window[1], n or self.n_receivers)


def _as_list(v):
    return list(v) if isinstance(v, (list, tuple)) else [v]


@dataclass
class ErrorRow:
    omega: float
    Q0: float
    h: float
    eta: float
    max_error: float
    rel_error: float = math.nan
    analytic_pred: float = math.nan


@dataclass
class ErrorReport:
    study: str
    rows: list
    slope: float = math.nan
    residual: float = math.nan
    extras: dict = field(default_factory=dict)

    def column(self, name):
        return np.array([getattr(r, name) for r in self.rows], dtype=float)

    def csv_text(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            w.writerow([_fmt(getattr(r, c)) for c in CSV_COLUMNS])
        return buf.getvalue()

    def summary(self):
        return {"study": self.study, "slope": _json_num(self.slope), "residual": _json_num(self.residual),
                **_jsonable(self.extras)}


def _fmt(v):
    return "%.17g" % v


def _json_num(v):
    v = float(v)
    return v if math.isfinite(v) else None


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _json_num(obj)
    return obj


def fit_slope(points, log_log=True):
    """Least-squares line through ``points``; returns ``(slope, max |residual|)``."""
    pts = list(points)
    if len(pts) < 2:
        raise ValueError("need at least two points to fit a slope")
    x = np.array([p[0] for p in pts], dtype=float)
    y = np.array([p[1] for p in pts], dtype=float)
    d = np.diff(x)
    if not (np.all(d > 0) or np.all(d < 0)):
        raise ValueError("x values must be strictly monotone")
    if log_log:
        if np.any(x <= 0) or np.any(y <= 0):
            raise ValueError("log-log fit needs positive x and y")
        x, y = np.log(x), np.log(y)
    A = np.column_stack((x, np.ones_like(x)))
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    res = y - A @ coef
    return float(coef[0]), float(np.max(np.abs(res)))


# ------------------------------------------------------------------- cells


@dataclass
class Cell:
    omega: float
    Q0: float
    h: float
    bundle: sp.BeamBundle
    eta: float  # widest beam landing in the window
    eta_edges: tuple = (math.nan, math.nan)  # widths of the beams nearest each window edge


def _superpos_config(cfg, omega, Q0, h_fraction, y_star=None, xs=None):
    eta0 = math.sqrt(2.0 * Q0 / omega)
    return sp.SuperposConfig(
        omega=omega, Q0=Q0, y_star=cfg.y_star if y_star is None else y_star,
        receiver_xs=cfg.receivers() if xs is None else xs, h=h_fraction * eta0,
        alpha=cfg.cutoff_alpha, dt=cfg.dt,
    )


def _build_cell(cfg, med, src, omega, Q0, h_fraction, workers, y_star=None):
    scfg = _superpos_config(cfg, omega, Q0, h_fraction, y_star)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        bundle = sp.plane_wave_bundle(med, scfg, src, workers=workers)
    X = bundle.crossings.x
    inside = (X >= cfg.window[0]) & (X <= cfg.window[1])
    widths = bundle.widths()
    eta = float(np.max(widths[inside])) if np.any(inside) else float(np.max(widths))
    edges = tuple(float(widths[int(np.argmin(np.abs(X - e)))]) for e in cfg.window)
    return Cell(omega, Q0, scfg.h, bundle, eta, edges)


def interior_window(cfg, cells):
    """Receiver window shrunk on each side by max(alpha, 6 eta).

    eta is the width of the beam landing at that edge, largest over the
    cells, so a window whose beams widen towards one end loses more there.
    """
    a = cfg.cutoff_alpha if math.isfinite(cfg.cutoff_alpha) else 0.0
    left = max(max(a, 6.0 * c.eta_edges[0]) for c in cells)
    right = max(max(a, 6.0 * c.eta_edges[1]) for c in cells)
    lo, hi = cfg.window[0] + left, cfg.window[1] - right
    if not lo < hi:
        raise StudyError(
            f"receiver window {cfg.window} is too narrow: shrinking by max(alpha, 6 eta) = "
            f"{left:.3g} (left) and {right:.3g} (right) leaves nothing"
        )
    return lo, hi


def _reference(cfg, med, src, omega, Q0, h, xs, workers):
    """Exact plane wave where one exists, otherwise resampled geometrical optics."""
    if med.is_constant and src.kind == "flat":
        return ref.exact_field_constant(omega, cfg.y_star, xs, c0=med.params[0])
    if med.is_constant and src.kind == "oblique":
        return ref.exact_plane_wave(omega, xs, cfg.y_star, src.angle, c0=med.params[0])
    go = ref.go_field(med, src, cfg.y_star, omega, cfg.go_fraction * h, xs, dt=cfg.dt, workers=workers)
    return go.field(omega)


def _analytic(cfg, med, src, omega, Q0):
    """Closed-form leading relative Taylor error at x = 0 where it applies."""
    if not (med.is_constant and med.params[0] == 1.0 and src.kind in ("flat", "circle", "parabola")):
        return math.nan
    try:
        return cc.relative_error(cc.error_constants(Q0, cfg.y_star, omega, src.y0pp))
    except ValueError:
        return math.nan


# ---------------------------------------------------------------- studies


def run_converge_omega(cfg, workers=1):
    """Max interior error of the beam sum against the reference field, per omega."""
    med, src = cfg.make_medium(), cfg.make_source()
    Q0 = cfg.Q0[0]
    cells = [_build_cell(cfg, med, src, w, Q0, cfg.h_fraction, workers) for w in cfg.omega]
    lo, hi = interior_window(cfg, cells)
    rows, grid = [], []
    for c in cells:
        errs = []
        for n in (cfg.n_receivers, 2 * cfg.n_receivers):
            xs = np.linspace(lo, hi, n)
            u = sp.field_discrete(c.bundle, xs=xs, workers=workers).values
            r = _reference(cfg, med, src, c.omega, Q0, c.h, xs, workers).values
            errs.append((float(np.max(np.abs(u - r))), float(np.max(np.abs(r)))))
        (e, rmax), (e2, _) = errs
        grid.append(abs(e2 - e) / e if e > 0 else 0.0)
        rows.append(ErrorRow(c.omega, Q0, c.h, c.eta, e, e / rmax, _analytic(cfg, med, src, c.omega, Q0)))
    slope, resid = fit_slope([(r.omega, r.max_error) for r in rows])
    extras = {
        "interior_window": [lo, hi],
        "n_beams": [len(c.bundle) for c in cells],
        "missed_beams": [c.bundle.missed for c in cells],
        "grid_doubling_change": grid,
        "grid_doubling_ok": bool(max(grid) < GRID_TOLERANCE),
        "medium": cfg.medium,
        "source": cfg.source,
    }
    if cfg.single_beam:
        sb = single_beam_control(cfg, cells=cells, workers=workers)
        extras["single_beam"] = sb
    return ErrorReport("converge-omega", rows, slope, resid, extras)


def _one_beam(bundle, j):
    cr = bundle.crossings.subset(slice(j, j + 1))
    co = BeamCoefficients(*(getattr(bundle.coeffs, f)[j:j + 1] for f in ("X", "phase", "px", "phi_xx", "amp")))
    return sp.BeamBundle(bundle.config, bundle.medium, bundle.source, bundle.s[j:j + 1], bundle.h, cr, co)


def single_beam_control(cfg, cells=None, workers=1):
    """Relative error of one isolated beam against its ray-centred profile, per omega.

    Needs a homogeneous medium with c = 1.  The beam used is the one landing
    closest to the middle of the receiver window.
    """
    med, src = cfg.make_medium(), cfg.make_source()
    if not (med.is_constant and med.params[0] == 1.0):
        raise StudyError("the single-beam control needs a homogeneous medium with c = 1")
    Q0 = cfg.Q0[0]
    if cells is None:
        cells = [_build_cell(cfg, med, src, w, Q0, cfg.h_fraction, workers) for w in cfg.omega]
    mid = 0.5 * (cfg.window[0] + cfg.window[1])
    errs = []
    for c in cells:
        j = int(np.argmin(np.abs(c.bundle.crossings.x - mid)))
        one = _one_beam(c.bundle, j)
        X = float(one.crossings.x[0])
        reach = cfg.cutoff_alpha if math.isfinite(cfg.cutoff_alpha) else 8.0 * c.eta
        xs = np.linspace(X - reach, X + reach, 2001)
        taylor = sp.field_discrete(one, xs=xs).values
        exact = ref.ray_centered_beams(one, xs).values
        errs.append(float(np.max(np.abs(taylor - exact)) / np.max(np.abs(exact))))
    slope, resid = fit_slope(list(zip([c.omega for c in cells], errs)))
    return {"omega": [c.omega for c in cells], "rel_error": errs, "slope": slope, "residual": resid}


def measured_taylor_relative(cfg, med, src, omega, Q0, workers=1):
    """Taylor error of the beam sum at x = 0, in closed-form normalization.

    Both sums use beams refined by ``taylor_refine`` so the spacing error
    drops out.  The difference is scaled by 1/amp0 = sqrt(pi omega) eta0
    (unit-amplitude beams) and by |1 - y* y0''(0)|^(1/2).
    """
    cell = _build_cell(cfg, med, src, omega, Q0, cfg.h_fraction, workers)
    fine = sp.refined_bundle(cell.bundle, cfg.taylor_refine, workers)
    e = float(ref.measured_taylor_error(fine, np.array([0.0]), workers)[0])
    scfg = fine.config
    return e * math.sqrt(math.pi * omega) * scfg.eta0 * math.sqrt(abs(1.0 - cfg.y_star * src.y0pp)), cell


def run_discretize(cfg, workers=1):
    """Spacing error |beam sum(h) - fine quadrature| over a sweep of h / eta0."""
    med, src = cfg.make_medium(), cfg.make_source()
    omega, Q0 = cfg.omega[0], cfg.Q0[0]
    fracs = cfg.h_fractions
    cells = [_build_cell(cfg, med, src, omega, Q0, f, workers) for f in fracs]
    lo, hi = interior_window(cfg, cells)
    xs = np.linspace(lo, hi, cfg.n_receivers)
    base = cells[int(np.argmax(fracs))]
    oracle = sp.field_quadrature(base.bundle, cfg.refine, workers=workers, xs=xs).values
    reference = _reference(cfg, med, src, omega, Q0, base.h, xs, workers).values
    rmax = float(np.max(np.abs(reference)))
    rows = []
    for c in cells:
        u = sp.field_discrete(c.bundle, xs=xs, workers=workers).values
        ed = float(np.max(np.abs(u - oracle)))
        rows.append(ErrorRow(omega, Q0, c.h, c.eta, ed, ed / rmax, math.nan))
    eds = [r.max_error for r in rows]
    ratios = [b / a if a > 0 else math.nan for a, b in zip(eds, eds[1:])]
    # Taylor-type error at the default spacing, for comparison with the spacing error
    default = min(cells, key=lambda c: abs(c.h - 0.5 * math.sqrt(2 * Q0 / omega)))
    if med.is_constant and med.params[0] == 1.0:
        et = float(np.max(ref.measured_taylor_error(default.bundle, xs, workers)))
        et_kind = "ray-centred beam sum minus Taylor beam sum"
    else:
        et = float(np.max(np.abs(oracle - reference)))
        et_kind = "fine quadrature minus geometrical optics"
    extras = {
        "interior_window": [lo, hi],
        "h_fractions": fracs,
        "ratios": ratios,
        "floor": 1e-13,
        "taylor_error_default_h": et,
        "taylor_error_kind": et_kind,
        "spacing_error_default_h": next(r.max_error for r in rows if r.h == default.h),
    }
    fit_pts = [(r.h, r.max_error) for r in rows if r.max_error > 1e-13]
    slope, resid = fit_slope(fit_pts) if len(fit_pts) >= 2 else (math.nan, math.nan)
    return ErrorReport("discretize", rows, slope, resid, extras)


def run_q0_sweep(cfg, workers=1):
    """Measured versus closed-form relative Taylor error across Q0 (homogeneous medium)."""
    med, src = cfg.make_medium(), cfg.make_source()
    if not (med.is_constant and med.params[0] == 1.0):
        raise StudyError("the Q0 sweep needs a homogeneous medium with c = 1")
    if src.kind == "oblique":
        raise StudyError("the Q0 sweep needs a graph source curve with y0'(0) = 0")
    omega = cfg.omega[0]
    rows, fallback, go_rel = [], [], []
    for Q0 in sorted(cfg.Q0):
        meas, cell = measured_taylor_relative(cfg, med, src, omega, Q0, workers)
        try:
            lo, hi = interior_window(cfg, [cell])
            xs = np.linspace(lo, hi, cfg.n_receivers)
            fallback.append(False)
        except StudyError:
            xs = np.array([0.0])
            fallback.append(True)
        u = sp.field_discrete(cell.bundle, xs=xs, workers=workers).values
        r = _reference(cfg, med, src, omega, Q0, cell.h, xs, workers).values
        eta_x0 = float(cc.width_at_receiver(Q0, cfg.y_star, omega))
        go_rel.append(float(np.max(np.abs(u - r)) / np.max(np.abs(r))))
        rows.append(ErrorRow(omega, Q0, cell.h, eta_x0, float(np.max(np.abs(u - r))), meas,
                             _analytic(cfg, med, src, omega, Q0)))
    q = np.array([r.Q0 for r in rows])
    an = np.array([r.analytic_pred for r in rows])
    widths = cc.width_vs_q0(cfg.y_star, omega, q)
    extras = {
        "source": cfg.source,
        "receiver_fallback_to_x0": fallback,
        "width_argmin_Q0": widths.argmin,
        "analytic_argmax_Q0": float(q[int(np.argmax(an))]),
        "analytic_interior_max": bool(0 < int(np.argmax(an)) < len(q) - 1),
        "rel_error_kind": "Taylor error at x = 0 per unit beam amplitude, times |1 - y* y0''|^(1/2)",
        "max_error_kind": "max |beam sum - reference field| over the interior window",
        "reference_relative_error": go_rel,
    }
    slope, resid = fit_slope(list(zip(q, an))) if np.all(an > 0) else (math.nan, math.nan)
    return ErrorReport("q0-sweep", rows, slope, resid, extras)


@dataclass
class FieldDump:
    xs: np.ndarray
    beam: np.ndarray
    reference: np.ndarray
    omega: float
    Q0: float
    y_star: float
    grid: list = field(default_factory=list)  # (y, xs, |u|) per extra receiver line

    def csv_text(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("x", "abs_beam", "arg_beam", "abs_ref", "arg_ref"))
        for x, b, r in zip(self.xs, self.beam, self.reference):
            w.writerow((_fmt(x), _fmt(abs(b)), _fmt(np.angle(b)), _fmt(abs(r)), _fmt(np.angle(r))))
        return buf.getvalue()

    def grid_csv_text(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("y", "x", "abs_beam"))
        for y, xs, mag in self.grid:
            for x, m in zip(xs, mag):
                w.writerow((_fmt(y), _fmt(x), _fmt(m)))
        return buf.getvalue()


def run_field_dump(cfg, workers=1):
    """Beam and reference fields along the receiver line, plus optional extra lines."""
    med, src = cfg.make_medium(), cfg.make_source()
    omega, Q0 = cfg.omega[0], cfg.Q0[0]
    cell = _build_cell(cfg, med, src, omega, Q0, cfg.h_fraction, workers)
    xs = cfg.receivers()
    beam = sp.field_discrete(cell.bundle, xs=xs, workers=workers).values
    reference = _reference(cfg, med, src, omega, Q0, cell.h, xs, workers).values
    grid = []
    for y in cfg.y_grid or []:
        c = _build_cell(cfg, med, src, omega, Q0, cfg.h_fraction, workers, y_star=float(y))
        grid.append((float(y), xs, np.abs(sp.field_discrete(c.bundle, xs=xs, workers=workers).values)))
    return FieldDump(xs, beam, reference, omega, Q0, cfg.y_star, grid)


RUNNERS = {
    "converge-omega": run_converge_omega,
    "discretize": run_discretize,
    "q0-sweep": run_q0_sweep,
    "field": run_field_dump,
}


# ------------------------------------------------------------------ output


def _write(path, text):
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise StudyError(f"cannot write {path}: {exc.strerror}") from None


def write_outputs(cfg, result, out_dir):
    """Write CSV, sidecar JSON and (optionally) SVG; returns the list of paths written."""
    try:
        os.makedirs(out_dir, exist_ok=True)
    except OSError as exc:
        raise StudyError(f"cannot create output directory {out_dir}: {exc.strerror}") from None
    stem = os.path.join(out_dir, cfg.name or cfg.study)
    written = []
    if isinstance(result, FieldDump):
        _write(stem + ".csv", result.csv_text())
        written.append(stem + ".csv")
        if result.grid:
            _write(stem + "_map.csv", result.grid_csv_text())
            written.append(stem + "_map.csv")
        meta = {"study": "field", "omega": result.omega, "Q0": result.Q0, "y_star": result.y_star,
                "config": asdict(cfg)}
        _write(stem + ".json", json.dumps(_jsonable(meta), indent=2, sort_keys=True) + "\n")
        written.append(stem + ".json")
        if cfg.plot:
            line_chart([("|u| beams", result.xs, np.abs(result.beam)),
                        ("|u| reference", result.xs, np.abs(result.reference))],
                       stem + ".svg", title=f"field on y = {result.y_star:g}, omega = {result.omega:g}",
                       xlabel="x", ylabel="|u|")
            written.append(stem + ".svg")
        return written
    _write(stem + ".csv", result.csv_text())
    written.append(stem + ".csv")
    meta = result.summary()
    meta["config"] = asdict(cfg)
    _write(stem + ".json", json.dumps(_jsonable(meta), indent=2, sort_keys=True) + "\n")
    written.append(stem + ".json")
    if cfg.plot:
        _plot(cfg, result, stem + ".svg")
        written.append(stem + ".svg")
    return written


def _plot(cfg, rep, path):
    if rep.study == "converge-omega":
        series = [("max error", rep.column("omega"), rep.column("max_error"))]
        if "single_beam" in rep.extras:
            sb = rep.extras["single_beam"]
            series.append(("single beam (rel)", sb["omega"], sb["rel_error"]))
        line_chart(series, path, title=f"frequency convergence, slope {rep.slope:.3f}",
                   xlabel="omega", ylabel="error", logx=True, logy=True)
    elif rep.study == "discretize":
        line_chart([("spacing error", rep.column("h"), rep.column("max_error"))], path,
                   title="spacing error versus h", xlabel="h", ylabel="max error", logx=True, logy=True)
    else:
        line_chart([("measured", rep.column("Q0"), rep.column("rel_error")),
                    ("closed form", rep.column("Q0"), rep.column("analytic_pred"))], path,
                   title=f"relative Taylor error, omega = {rep.rows[0].omega:g}",
                   xlabel="Q0", ylabel="relative error", logx=True, logy=True)


def run_study(cfg, out_dir=None, workers=1):
    result = RUNNERS[cfg.study](cfg, workers=workers)
    paths = write_outputs(cfg, result, out_dir) if out_dir else []
    return result, paths
