"""Assemble tables and certification runs into serialisable reports.

Each ``run_*`` function returns ``(payload, exit_code)``; formatting to
md/csv/json lives in ``render``.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
import time
from dataclasses import asdict, dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal
from typing import Optional

from . import __version__
from .ball import DEFAULT_VERTEX_CAP, build_ball, check_geometric_proposition, sphere_sizes
from .bounds import (BoundReport, check_consistent, kesten_girth_lower, kesten_lower, one_form_bound,
                     tree_bound, verify_one_form)
from .errors import CertificationFailure, InvalidParameter
from .forest import build_forest, verify_forest
from .poisson import constants, lemma4_check, poisson_bound, pocket_check, quartic_check
from .walks import (closed_walk_counts, dirichlet_top_eigenvalue, moment_ratio_lower,
                    return_prob_lower)
from .words import surface_presentation

EXIT_OK, EXIT_CERT, EXIT_FIXTURE, EXIT_USAGE, EXIT_INTERNAL, EXIT_RESOURCE = 0, 1, 2, 64, 70, 75

# Reference values, g -> (Kesten, 1-form, nu, Poisson bound, tree bound)
REFERENCE_TABLE = {
    2: (0.6614, 0.8660, 0.2990, 0.7675, 0.7373),
    3: (0.5529, 0.7453, 0.2944, 0.6588, 0.6104),
    4: (0.4841, 0.6615, 0.2932, 0.5872, 0.5303),
    5: (0.4359, 0.6000, 0.2926, 0.5352, 0.4742),
    6: (0.3997, 0.5529, 0.2920, 0.4953, 0.4325),
    7: (0.3712, 0.5153, 0.2916, 0.4633, 0.3999),
    8: (0.3480, 0.4841, 0.2912, 0.4369, 0.3736),
    9: (0.3287, 0.4581, 0.2908, 0.4147, 0.3518),
    10: (0.3123, 0.4359, 0.2905, 0.3956, 0.3332),
}
BOUND_TOL = 1e-4
NU_TOL = 1e-3
COLUMNS = ("kesten_lower", "one_form_upper", "nu_star", "poisson_upper", "tree_upper")


def round4(x: float) -> str:
    return str(Decimal(repr(float(x))).quantize(Decimal("0.0001"), rounding=ROUND_HALF_EVEN))


@dataclass
class RunConfig:
    command: str
    genus_range: tuple = (2, 10)
    radius: int = 6
    nu_tolerance: float = 1e-6
    phi_grid_step: Optional[float] = None
    eig_tolerance: float = 1e-10
    format: str = "md"
    output_path: Optional[str] = None
    vertex_cap: int = DEFAULT_VERTEX_CAP
    nmax: Optional[int] = None
    dump_path: Optional[str] = None

    def __post_init__(self):
        lo, hi = self.genus_range
        if not 2 <= lo <= hi <= 100:
            raise InvalidParameter(f"genus range {lo}..{hi} outside [2, 100]")
        if self.radius < 0:
            raise InvalidParameter("radius must be >= 0")
        for name in ("nu_tolerance", "eig_tolerance"):
            if getattr(self, name) <= 0:
                raise InvalidParameter(f"{name} must be positive")
        if self.phi_grid_step is not None and self.phi_grid_step <= 0:
            raise InvalidParameter("phi step must be positive")
        if self.format not in ("md", "csv", "json"):
            raise InvalidParameter(f"unknown format {self.format!r}")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["genus_range"] = list(self.genus_range)
        return d


@dataclass
class TableRow:
    g: int
    kesten_lower: float
    one_form_upper: float
    nu_star: float
    poisson_upper: float
    tree_upper: float
    phi_zero_certified: bool = False
    fixture_ok: Optional[bool] = None
    deviations: dict = field(default_factory=dict)

    def values(self):
        return tuple(getattr(self, c) for c in COLUMNS)


def table_row(g: int, nu_tol: float = 1e-6, phi_step: Optional[float] = None) -> TableRow:
    k = 4 * g
    pr = poisson_bound(g, nu_tol, phi_step)
    row = TableRow(g, kesten_lower(k), one_form_bound(k)[1], pr.nu, pr.bound, tree_bound(k, k - 1),
                   pr.phi_zero_certified)
    if row.kesten_lower >= min(row.one_form_upper, row.poisson_upper, row.tree_upper):
        raise CertificationFailure(f"genus {g}: Kesten bound not below the upper bounds")
    ref = REFERENCE_TABLE.get(g)
    if ref is not None:
        dev = {c: abs(v - r) for c, v, r in zip(COLUMNS, row.values(), ref)}
        row.deviations = dev
        row.fixture_ok = all(d <= (NU_TOL if c == "nu_star" else BOUND_TOL) for c, d in dev.items())
    return row


def run_table(cfg: RunConfig):
    lo, hi = cfg.genus_range
    rows = [table_row(g, cfg.nu_tolerance, cfg.phi_grid_step) for g in range(lo, hi + 1)]
    code = EXIT_FIXTURE if any(r.fixture_ok is False for r in rows) else EXIT_OK
    return {"rows": [asdict(r) for r in rows]}, code


def run_poisson(cfg: RunConfig):
    lo, hi = cfg.genus_range
    rows = []
    for g in range(lo, hi + 1):
        c = constants(g)
        pr = poisson_bound(g, cfg.nu_tolerance, cfg.phi_grid_step)
        l4 = lemma4_check(c, pr.nu)
        rows.append({"g": g, "D": c.D, "X": c.X, "delta": c.delta, "epsilon": c.epsilon,
                     "nu_star": pr.nu, "F_at_zero": pr.value_at_zero, "bound": pr.bound,
                     "argmax_phi": pr.max_phi, "derivative_signs": asdict(l4),
                     "quartic_positive": quartic_check(g)[1],
                     "phi_zero_certified": pr.phi_zero_certified, "unimodal": pr.unimodal})
    return {"rows": rows}, EXIT_OK


def run_pocket_check(cfg: RunConfig):
    lo, hi = cfg.genus_range
    rows, first_fail = pocket_check(hi, lo)
    out = [{"g": r.g, "delta": r.delta, "inv_delta": r.inv_delta, "R1": r.R1,
            "margin": r.margin, "passed": r.passed} for r in rows]
    return {"rows": out, "first_failure": first_fail}, EXIT_OK


def _check(name, ok, detail, status=None):
    return {"name": name, "status": status or ("pass" if ok else "fail"), "detail": detail}


def run_verify(cfg: RunConfig):
    g = cfg.genus_range[0]
    R = cfg.radius
    k = 4 * g
    b = build_ball(surface_presentation(g), R, cfg.vertex_cap)
    checks = [_check("ball", True, {"vertices": b.num_vertices, "sphere_sizes": sphere_sizes(b)})]
    warnings = []

    if R >= 3:
        rep = check_geometric_proposition(b)
        checks.append(_check("geometric-proposition", rep.ok, rep.summary()))
    else:
        warnings.append(f"radius {R} < 3: geometric proposition and forest not checkable")
        checks.append(_check("geometric-proposition", True, {}, "inconclusive"))

    bstar, cstar = one_form_bound(k)
    try:
        cert = verify_one_form(b, bstar)
        ok = cert.max_row_sum / k <= cstar + 1e-12
        checks.append(_check("one-form", ok, cert.to_dict()))
    except CertificationFailure as e:
        checks.append(_check("one-form", False, e.detail))

    tree_certified = False
    if R >= 3:
        try:
            f = build_forest(b)
            fc = verify_forest(b, f)
            tree_certified = fc.ok and not fc.inconclusive
            checks.append(_check("forest", fc.ok, fc.to_dict(), None if not fc.inconclusive else "inconclusive"))
        except CertificationFailure as e:
            checks.append(_check("forest", False, e.detail))
    else:
        checks.append(_check("forest", True, {}, "inconclusive"))

    nmax = min(R, cfg.nmax) if cfg.nmax is not None else R
    pr = poisson_bound(g, cfg.nu_tolerance, cfg.phi_grid_step)
    uppers = {"one-form": cstar, "poisson": pr.bound}
    if tree_certified:
        uppers["tree"] = tree_bound(k, k - 1)
    detail = {"upper_bounds": uppers}
    ok = True
    if nmax >= 1:
        wt = closed_walk_counts(b, nmax)
        rp = return_prob_lower(wt)
        eig = dirichlet_top_eigenvalue(b, cfg.eig_tolerance)
        detail.update({"nmax": nmax, "W": [str(w) for w in wt.counts], "return_prob_lower": rp,
                       "moment_ratio_lower": moment_ratio_lower(wt), "dirichlet_top_eigenvalue": eig,
                       "roots_nondecreasing": wt.roots_nondecreasing()})
        ok = rp <= eig + cfg.eig_tolerance and all(eig <= u for u in uppers.values()) \
            and wt.roots_nondecreasing()
    reports = [BoundReport({"genus": g}, "kesten-lower", kesten_lower(k), {"k": k}),
               BoundReport({"genus": g}, "kesten-girth-lower", float(kesten_girth_lower(g)), {"k": k}),
               BoundReport({"genus": g}, "one-form", cstar, {"k": k, "b": bstar}, True),
               BoundReport({"genus": g}, "poisson", pr.bound, {"nu": pr.nu}, pr.phi_zero_certified),
               BoundReport({"genus": g}, "tree", tree_bound(k, k - 1), {"k": k, "l": k - 1}, tree_certified)]
    try:
        check_consistent(reports)
    except CertificationFailure:
        ok = False
    detail["bounds"] = [r.to_dict() for r in reports]
    checks.append(_check("ordering", ok, detail))

    code = EXIT_OK if all(c["status"] != "fail" for c in checks) else EXIT_CERT
    return {"checks": checks, "warnings": warnings}, code


def run_forest(cfg: RunConfig):
    g = cfg.genus_range[0]
    b = build_ball(surface_presentation(g), cfg.radius, cfg.vertex_cap)
    f = build_forest(b)
    fc = verify_forest(b, f)
    if cfg.dump_path:
        with open(cfg.dump_path, "w") as fh:
            f.dump(fh)
    status = "inconclusive" if fc.inconclusive else None
    return {"checks": [_check("forest", fc.ok, fc.to_dict(), status)]}, EXIT_OK if fc.ok else EXIT_CERT


def run_walks(cfg: RunConfig):
    g = cfg.genus_range[0]
    nmax = cfg.nmax if cfg.nmax is not None else cfg.radius
    b = build_ball(surface_presentation(g), nmax, cfg.vertex_cap)
    wt = closed_walk_counts(b, nmax)
    rows = []
    for n, w in enumerate(wt.counts):
        rows.append({"n": n, "W_2n": str(w), "p_2n": float(wt.return_prob(n)),
                     "root": None if n == 0 else wt.root(n)})
    extra = {"return_prob_lower": return_prob_lower(wt) if nmax >= 1 else None,
             "moment_ratio_lower": moment_ratio_lower(wt) if nmax >= 1 else None}
    return {"rows": rows, **extra}, EXIT_OK


RUNNERS = {"table": run_table, "poisson": run_poisson, "verify": run_verify,
           "forest": run_forest, "walks": run_walks, "pocket-check": run_pocket_check}


def _timestamp() -> str:
    # SOURCE_DATE_EPOCH pins the stamp for reproducible output
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    t = int(epoch) if epoch else int(time.time())
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(t))


def _jsonable(x):
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item"):
        return x.item()
    return x


def render(cfg: RunConfig, payload: dict) -> str:
    if cfg.format == "json":
        doc = {"tool": "surfwalk", "version": __version__, "command": cfg.command,
               "config": cfg.to_dict(), **payload, "timestamp": _timestamp()}
        return json.dumps(_jsonable(doc), indent=2, sort_keys=False) + "\n"
    if "rows" in payload:
        return _render_rows(cfg, payload["rows"], payload)
    return _render_checks(cfg, payload)


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v)
    if isinstance(v, float):
        return round4(v)
    if isinstance(v, dict):
        return ""
    return str(v)


def _render_rows(cfg, rows, payload):
    if cfg.command == "table":
        cols = ["g", *COLUMNS]
    else:
        cols = [c for c in rows[0] if not isinstance(rows[0][c], dict)] if rows else []
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_cell(r[c]) for c in cols])
        return buf.getvalue()
    lines = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    for r in rows:
        lines.append("| " + " | ".join(_cell(r[c]) for c in cols) + " |")
    for key in ("first_failure", "return_prob_lower", "moment_ratio_lower"):
        if key in payload:
            lines.append(f"\n{key}: {payload[key]}")
    return "\n".join(lines) + "\n"


def _render_checks(cfg, payload):
    lines = [f"{c['status'].upper():13s} {c['name']}" for c in payload["checks"]]
    lines += [f"WARNING {w}" for w in payload.get("warnings", [])]
    lines.append(json.dumps(_jsonable(payload), sort_keys=True))
    return "\n".join(lines) + "\n"
