"""Command-line front end: tables and verification reports as CSV or JSON.

Every subcommand writes one table. JSON output is
``{"schema": "qsturm/1", "config": {...}, "records": [...]}``; CSV output has a
header row whose column order is fixed per subcommand (``COLUMNS``). The exit
status is 0 only when every check the subcommand performs passes at ``--tol``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass

from . import families as fm
from .pearson import WeightError, weight_from_ratio
from .qcore import ConvergenceError, QContext
from .sl_core import verify_orthogonality

SCHEMA = "qsturm/1"
FAMILY_NAMES = ("cheb5q", "cheb6q", "qhermite")
LIMIT_QS = (1 - 1e-2, 1 - 1e-3, 1 - 1e-4)
LIMIT_XS = (0.1, 0.3, 0.5, 0.7, 0.9)

COLUMNS = {
    "table": ["n", "lambda", "gamma", "d_squared", "coefficients"],
    "ortho": ["n", "m", "gram", "normalized"],
    "residual": ["n", "points", "max_relative_residual", "passed"],
    "weights": ["k", "x", "starred_closed", "starred_ratio", "relative_difference"],
    "limits": ["kind", "q", "n", "x", "value", "target", "deviation", "status"],
    "favard": ["n", "gamma_product", "d_squared_ratio", "quadrature_ratio",
               "d_squared_error", "quadrature_error", "passed"],
    "reduce": ["n", "q", "c", "deviation", "passed"],
}


@dataclass
class RunConfig:
    command: str
    family: str
    q: float
    p: float | None
    n_max: int
    tol: float
    precision: int | None
    format: str
    output_path: str | None
    mismatch_weight: bool = False
    xs: tuple = LIMIT_XS

    def __post_init__(self):
        if not 0 < self.q < 1:
            raise ValueError("--q must lie in (0, 1)")
        if self.n_max < 0:
            raise ValueError("--nmax must be >= 0")
        if not self.tol > 0:
            raise ValueError("--tol must be positive")
        if self.family == "qhermite" and self.p is None:
            self.p = 0.0
        if self.family != "qhermite":
            self.p = None

    def context(self, q: float | None = None, **kw) -> QContext:
        q = self.q if q is None else q
        bits = self.precision
        if bits is None:
            bits = fm.recommended_precision(self.family, q, self.p, max(self.n_max, 1))
        return QContext(q, precision=bits, **kw)

    def family_at(self, ctx: QContext) -> fm.FamilyDescriptor:
        return fm.make_family(self.family, self.p, ctx)


def _f(x):
    return None if x is None else float(x)


def cmd_table(cfg: RunConfig):
    fam = cfg.family_at(cfg.context())
    rows = []
    for n in range(cfg.n_max + 1):
        poly = fm.monic_from_recurrence(fam, n)
        rows.append({
            "n": n,
            "lambda": _f(fam.lam(n)),
            "gamma": _f(fm.gamma(fam, n)) if n >= 1 else None,
            "d_squared": _f(fm.norm_square(fam, n)),
            "coefficients": [float(c) + 0.0 for c in poly.coeffs],
        })
    return rows, True


def _mismatched_weight(cfg: RunConfig, ctx: QContext):
    # negative control: a weight belonging to a different operator
    if cfg.family == "cheb5q":
        return fm.make_family("cheb6q", None, ctx).starred_weight
    if cfg.family == "cheb6q":
        return fm.make_family("cheb5q", None, ctx).starred_weight
    other = fm.make_family("qhermite", cfg.p + 0.2 if cfg.p < 0.2 else cfg.p - 0.2, ctx)
    return other.starred_weight


def cmd_ortho(cfg: RunConfig):
    ctx = cfg.context()
    fam = cfg.family_at(ctx)
    weight = _mismatched_weight(cfg, ctx) if cfg.mismatch_weight else fam.starred_weight
    report = verify_orthogonality(fam.coefficients, weight, fm.monic_functions(fam, cfg.n_max),
                                  fam.alpha, ctx, threshold=cfg.tol)
    g = report.gram
    rows = []
    for n in range(cfg.n_max + 1):
        for m in range(cfg.n_max + 1):
            den = math.sqrt(abs(float(g[n, n]) * float(g[m, m])))
            rows.append({"n": n, "m": m, "gram": float(g[n, m]),
                         "normalized": float(g[n, m]) / den if den else math.inf})
    print(f"max normalized off-diagonal {report.max_offdiag_rel:.3e}: "
          f"{'PASS' if report.passed else 'FAIL'}", file=sys.stderr)
    return rows, report.passed


def cmd_residual(cfg: RunConfig, points: int = 50):
    ctx = cfg.context()
    fam = cfg.family_at(ctx)
    lattice = fam.lattice(points + 1)
    rows, ok = [], True
    for n in range(cfg.n_max + 1):
        poly = fm.monic_from_recurrence(fam, n)
        worst = max(fam.residual(n, poly, lattice.point(k)).relative for k in range(1, points + 1))
        passed = worst < cfg.tol
        ok &= passed
        rows.append({"n": n, "points": points, "max_relative_residual": worst, "passed": passed})
    return rows, ok


def cmd_weights(cfg: RunConfig, depth: int = 30):
    ctx = cfg.context()
    fam = cfg.family_at(ctx)
    co = fam.coefficients
    synth = weight_from_ratio(co.A, co.B, fam.lattice(depth), ctx)
    x1 = synth.lattice.point(1)
    scalar = fam.weight(x1) / synth.at(x1)
    rows = []
    for k in range(depth):
        x = synth.lattice.point(k)
        closed = fam.starred_weight(x)
        ratio = co.C(x) * synth.values[k] * scalar
        rows.append({"k": k, "x": float(x), "starred_closed": float(closed),
                     "starred_ratio": float(ratio),
                     "relative_difference": float(abs(ratio / closed - 1))})
    return rows, True


def cmd_limits(cfg: RunConfig):
    rows = []
    for q in LIMIT_QS:
        ctx = cfg.context(q, max_terms=10 ** 7) if cfg.precision else QContext(q, max_terms=10 ** 7)
        fam = cfg.family_at(ctx)
        for n in range(1, max(cfg.n_max, 1) + 1):
            value = float(fm.gamma(fam, n))
            target = fm.gamma_limit(fam, n)
            rows.append({"kind": "gamma", "q": q, "n": n, "x": None, "value": value,
                         "target": target, "deviation": abs(value - target), "status": "ok"})
        for x in cfg.xs:
            target = None
            try:
                target = fm.weight_limit(fam, x)
                value = float(fam.starred_weight(x))
            except (WeightError, ValueError):
                rows.append({"kind": "weight", "q": q, "n": None, "x": x, "value": None,
                             "target": target, "deviation": None, "status": "unsupported"})
                continue
            rows.append({"kind": "weight", "q": q, "n": None, "x": x, "value": value,
                         "target": target, "deviation": abs(value / target - 1), "status": "ok"})
    return rows, True


def cmd_favard(cfg: RunConfig):
    ctx = cfg.context()
    fam = cfg.family_at(ctx)
    report = verify_orthogonality(fam.coefficients, fam.starred_weight,
                                  fm.monic_functions(fam, cfg.n_max), fam.alpha, ctx)
    g = report.gram
    d0 = fm.norm_square(fam, 0)
    rows, ok, prod = [], True, ctx.num(1)
    for n in range(cfg.n_max + 1):
        if n:
            prod *= fm.gamma(fam, n)
        d_ratio = fm.norm_square(fam, n) / d0
        quad = g[n, n] / g[0, 0]
        e1, e2 = float(abs(d_ratio / prod - 1)), float(abs(quad / prod - 1))
        passed = e1 < cfg.tol and e2 < cfg.tol
        ok &= passed
        rows.append({"n": n, "gamma_product": float(prod), "d_squared_ratio": float(d_ratio),
                     "quadrature_ratio": float(quad), "d_squared_error": e1,
                     "quadrature_error": e2, "passed": passed})
    return rows, ok


def cmd_reduce(cfg: RunConfig):
    if cfg.family != "qhermite":
        raise ValueError("reduce applies to --family qhermite (p = 0)")
    ctx = cfg.context()
    rows, ok = [], True
    for n in range(cfg.n_max + 1):
        rep = fm.q_hermite_reduction_check(n, cfg.q, ctx)
        passed = rep.deviation < cfg.tol
        ok &= passed
        rows.append({"n": n, "q": cfg.q, "c": rep.c, "deviation": rep.deviation, "passed": passed})
    return rows, ok


COMMANDS = {
    "table": cmd_table,
    "ortho": cmd_ortho,
    "residual": cmd_residual,
    "weights": cmd_weights,
    "limits": cmd_limits,
    "favard": cmd_favard,
    "reduce": cmd_reduce,
}


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, list):
        return " ".join(repr(float(c)) for c in v)
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render(cfg: RunConfig, rows: list) -> str:
    if cfg.format == "json":
        config = asdict(cfg)
        doc = {"schema": SCHEMA, "config": config, "records": rows}
        return json.dumps(doc, indent=2, allow_nan=True) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    cols = COLUMNS[cfg.command]
    writer.writerow(cols)
    for row in rows:
        writer.writerow([_csv_cell(row.get(c)) for c in cols])
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=FAMILY_NAMES, default="cheb5q")
    common.add_argument("--q", type=float, default=0.5)
    common.add_argument("--p", type=float, default=None,
                        help="qhermite parameter (default 0)")
    common.add_argument("--nmax", type=int, default=10)
    common.add_argument("--tol", type=float, default=1e-8,
                        help="pass threshold for the checks (default 1e-8)")
    common.add_argument("--precision", type=int, default=None,
                        help="working precision in bits (default: chosen from conditioning)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="output file (default stdout)")
    parser = argparse.ArgumentParser(prog="qsturm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "table": "monic coefficients, lambda_n, gamma_n and d_n^2",
        "ortho": "Gram matrix of the monic family under its weight",
        "residual": "eigen-equation residuals on the lattice",
        "weights": "closed-form vs Pearson-synthesized starred weights",
        "limits": "q -> 1 sweep of gamma_n and weights against classical targets",
        "favard": "d_n^2 ratios and quadrature norms against prod gamma_i",
        "reduce": "p = 0 proportionality to discrete q-Hermite I",
    }
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common], help=helps[name])
        if name == "ortho":
            sp.add_argument("--mismatch-weight", action="store_true",
                            help="negative control: pair the polynomials with a foreign weight")
        if name == "limits":
            sp.add_argument("--x", type=float, nargs="+", default=list(LIMIT_XS),
                            help="starred-weight sample points")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command, family=args.family, q=args.q, p=args.p,
            n_max=args.nmax, tol=args.tol, precision=args.precision,
            format=args.format, output_path=args.out,
            mismatch_weight=getattr(args, "mismatch_weight", False),
            xs=tuple(getattr(args, "x", LIMIT_XS)),
        )
        rows, ok = COMMANDS[cfg.command](cfg)
    except (ValueError, ConvergenceError, WeightError, ZeroDivisionError) as exc:
        print(f"qsturm: error: {exc}", file=sys.stderr)
        return 2
    text = render(cfg, rows)
    try:
        if cfg.output_path:
            with open(cfg.output_path, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"qsturm: error: {exc}", file=sys.stderr)
        return 2
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
