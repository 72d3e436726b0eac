"""Command-line experiments: basis dumps, Gram checks, expansions, regions.

Subcommands write CSV to stdout or --out; `expand` and `region` can emit a
minimal self-contained SVG instead via --format svg. All numeric output is
printed with 17 significant digits and a fixed quadrature schedule, so a
given configuration always produces byte-identical files.

Exit codes: 0 success, 2 invalid configuration, 3 numerical
non-convergence, 4 degree cap exceeded. Failures print one machine-parsable
line: error_code=<name> detail="...".
"""

from __future__ import annotations

import argparse
import math
import sys

from .counterexamples import demo_csv, incompleteness_demo
from .functions import get_function, registry
from .polynomial import DegreeCapError
from .quadrature import NonConvergedError
from .regions import completeness_verdict, figure_rows, verdict_rows
from .sobolev import SampledFunction, SobolevConfig, expand, gram_deviations, sobolev_basis

__all__ = ["main"]

DEFAULT_TOL = 1e-10


def _fmt(value: float) -> str:
    return format(value, ".17g")


def _bool(value: bool) -> str:
    return "true" if value else "false"


def _parse_omega(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(tok) for tok in str(text).split(","))
    except ValueError:
        raise ValueError(f"cannot parse omega list {text!r}") from None


_CASTERS = {
    "alpha": float,
    "beta": float,
    "ell": int,
    "omega": _parse_omega,
    "p": float,
    "n_max": int,
    "function": str,
    "out": str,
    "format": str,
    "tol": float,
    "mode": str,
    "m": int,
    "steps": int,
    "gamma_min": float,
    "gamma_max": float,
    "gamma_step": float,
    "p_min": float,
    "p_max": float,
    "p_step": float,
    "config": str,
}


def _load_config_file(path: str) -> dict:
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, _, value = line.partition("=")
            key = key.strip().replace("-", "_")
            if key not in _CASTERS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = _CASTERS[key](value.strip())
    return values


def _merge(args: argparse.Namespace, defaults: dict) -> dict:
    """Apply precedence: command line flag, then config file, then default."""
    merged = dict(defaults)
    file_values = {}
    if getattr(args, "config", None):
        file_values = _load_config_file(args.config)
    for key in defaults:
        if key in file_values:
            merged[key] = file_values[key]
        flag = getattr(args, key, None)
        if flag is not None:
            merged[key] = _CASTERS[key](flag) if key == "omega" else flag
    missing = [k for k, v in merged.items() if v is None and k not in ("out",)]
    if missing:
        raise ValueError(f"missing required settings: {', '.join(sorted(missing))}")
    return merged


def _sobolev_config(opts: dict) -> SobolevConfig:
    return SobolevConfig(
        alpha=opts["alpha"],
        beta=opts["beta"],
        ell=opts["ell"],
        omega=opts["omega"],
        p=opts.get("p", 2.0),
    )


def _resolve_function(name: str, cfg: SobolevConfig):
    if name.startswith("q") and name[1:].isdigit():
        poly = sobolev_basis(cfg, int(name[1:]))
        return SampledFunction.from_polynomial(poly, cfg.ell, name=name)
    try:
        return get_function(name)
    except KeyError:
        known = ", ".join(sorted(registry))
        raise ValueError(
            f"unknown function {name!r}; registered: {known}; "
            "or q<k> for a basis element"
        ) from None


def _require_csv(opts: dict) -> None:
    if opts.get("format", "csv") != "csv":
        raise ValueError("this subcommand only supports --format csv")


def _cmd_basis(opts: dict) -> str:
    _require_csv(opts)
    cfg = _sobolev_config(opts)
    lines = ["n,coefficients"]
    for n in range(opts["n_max"] + 1):
        q = sobolev_basis(cfg, n)
        body = ", ".join(_fmt(c) for c in q.coeffs)
        lines.append(f'{n},"[{body}]"')
    return "\n".join(lines) + "\n"


def _cmd_gram(opts: dict) -> str:
    _require_csv(opts)
    cfg = _sobolev_config(opts)
    off, diag = gram_deviations(cfg, opts["n_max"])
    return (
        "n_max,max_off_diagonal,max_diagonal_deviation\n"
        f"{opts['n_max']},{_fmt(off)},{_fmt(diag)}\n"
    )


def _cmd_expand(opts: dict) -> str:
    cfg = _sobolev_config(opts)
    f = _resolve_function(opts["function"], cfg)
    report = expand(cfg, f, opts["n_max"], rel_tol=opts["tol"])
    if opts.get("format", "csv") == "svg":
        return _svg_error_curve(report, opts["function"])
    return report.to_csv()


def _cmd_region(opts: dict) -> str:
    if opts["mode"] == "verdict":
        _require_csv(opts)
        p_values = _grid(opts["p_min"], opts["p_max"], opts["p_step"])
        lines = ["alpha,beta,p,M,m,inside,boundary"]
        for a, b, p, lo, hi, inside, boundary in verdict_rows(
            opts["alpha"], opts["beta"], p_values
        ):
            lines.append(
                f"{_fmt(a)},{_fmt(b)},{_fmt(p)},{_fmt(lo)},{_fmt(hi)},"
                f"{_bool(inside)},{_bool(boundary)}"
            )
        return "\n".join(lines) + "\n"
    if opts["mode"] != "figure":
        raise ValueError("mode must be 'figure' or 'verdict'")
    rows = list(
        figure_rows(
            opts["gamma_min"], opts["gamma_max"], opts["gamma_step"],
            opts["p_min"], opts["p_max"], opts["p_step"],
        )
    )
    if opts.get("format", "csv") == "svg":
        return _svg_region(rows)
    lines = ["gamma,p,in_delta,in_delta0"]
    for gamma, p, in_delta, in_delta0 in rows:
        lines.append(f"{_fmt(gamma)},{_fmt(p)},{_bool(in_delta)},{_bool(in_delta0)}")
    return "\n".join(lines) + "\n"


def _cmd_complete(opts: dict) -> str:
    _require_csv(opts)
    cfg = _sobolev_config(opts)
    complete, violating = completeness_verdict(cfg)
    indices = ";".join(str(i) for i in violating)
    return f"complete,violating_indices\n{_bool(complete)},{indices}\n"


def _cmd_counterexample(opts: dict) -> str:
    _require_csv(opts)
    rows = incompleteness_demo(
        opts["alpha"], opts["beta"], opts["p"], opts["ell"], opts["m"], opts["steps"]
    )
    return demo_csv(rows)


def _grid(lo: float, hi: float, step: float):
    if step <= 0:
        raise ValueError("grid step must be positive")
    n = int(round((hi - lo) / step))
    return [lo + (hi - lo) * i / n if n else lo for i in range(n + 1)]


def _svg_error_curve(report, label: str) -> str:
    width, height, margin = 640, 400, 50
    errors = [max(e, 1e-300) for e in report.errors]
    ys = [math.log10(e) for e in errors]
    y_lo, y_hi = min(ys), max(ys)
    if y_hi - y_lo < 1e-12:
        y_hi = y_lo + 1.0
    n = len(ys)
    pts = []
    for i, y in enumerate(ys):
        px = margin + (width - 2 * margin) * (i / max(n - 1, 1))
        py = margin + (height - 2 * margin) * (y_hi - y) / (y_hi - y_lo)
        pts.append(f"{px:.2f},{py:.2f}")
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.0f}" y="20" text-anchor="middle" font-size="14">'
        f"log10 Sobolev error of partial sums: {label}</text>",
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" '
        'stroke="black"/>',
        f'<text x="{width / 2:.0f}" y="{height - 12}" text-anchor="middle" '
        'font-size="12">n</text>',
        f'<text x="14" y="{height / 2:.0f}" font-size="12" '
        f'transform="rotate(-90 14 {height / 2:.0f})">log10 error</text>',
        f'<polyline fill="none" stroke="steelblue" stroke-width="1.5" '
        f'points="{" ".join(pts)}"/>',
    ]
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _svg_region(rows) -> str:
    gammas = sorted({r[0] for r in rows})
    ps = sorted({r[1] for r in rows})
    cell_w, cell_h, margin = 6, 6, 40
    width = margin * 2 + cell_w * len(gammas)
    height = margin * 2 + cell_h * len(ps)
    g_index = {g: i for i, g in enumerate(gammas)}
    p_index = {p: i for i, p in enumerate(ps)}
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.0f}" y="16" text-anchor="middle" font-size="13">'
        "norm-convergence region (dark: function space, light: convergence only)</text>",
    ]
    for gamma, p, in_delta, in_delta0 in rows:
        if in_delta0:
            fill = "#1f4e79"
        elif in_delta:
            fill = "#9dc3e6"
        else:
            continue
        x = margin + g_index[gamma] * cell_w
        y = height - margin - (p_index[p] + 1) * cell_h
        parts.append(f'<rect x="{x}" y="{y}" width="{cell_w}" height="{cell_h}" fill="{fill}"/>')
    parts.append(
        f'<text x="{width / 2:.0f}" y="{height - 8}" text-anchor="middle" font-size="12">gamma</text>'
    )
    parts.append(f'<text x="10" y="{height / 2:.0f}" font-size="12">p</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _add_common(sub: argparse.ArgumentParser, *names: str) -> None:
    options = {
        "alpha": dict(type=float, help="weight exponent at x = 1 (> -1)"),
        "beta": dict(type=float, help="weight exponent at x = -1 (> -1)"),
        "ell": dict(type=int, help="derivative order of the continuous part"),
        "omega": dict(type=str, help="comma list of ell nodes, e.g. 0,0.5"),
        "p": dict(type=float, help="norm exponent (>= 1)"),
        "n-max": dict(type=int, dest="n_max", help="largest expansion index"),
        "function": dict(type=str, help="registry name or q<k>"),
        "tol": dict(type=float, help="quadrature relative tolerance"),
        "m": dict(type=int, help="node depth of the failing condition"),
        "steps": dict(type=int, help="number of dyadic steps toward the endpoint"),
        "mode": dict(type=str, choices=("figure", "verdict"), help="grid flavour"),
        "gamma-min": dict(type=float, dest="gamma_min"),
        "gamma-max": dict(type=float, dest="gamma_max"),
        "gamma-step": dict(type=float, dest="gamma_step"),
        "p-min": dict(type=float, dest="p_min"),
        "p-max": dict(type=float, dest="p_max"),
        "p-step": dict(type=float, dest="p_step"),
    }
    for name in names:
        sub.add_argument(f"--{name}", **options[name])
    sub.add_argument("--out", type=str, help="output path (default: stdout)")
    sub.add_argument("--format", type=str, choices=("csv", "svg"), help="output format")
    sub.add_argument("--config", type=str, help="flat key = value configuration file")


_DEFAULTS = {
    "basis": {"alpha": None, "beta": None, "ell": None, "omega": None, "p": 2.0,
              "n_max": None, "out": None, "format": "csv"},
    "gram": {"alpha": None, "beta": None, "ell": None, "omega": None, "p": 2.0,
             "n_max": None, "out": None, "format": "csv"},
    "expand": {"alpha": None, "beta": None, "ell": None, "omega": None, "p": 2.0,
               "n_max": None, "function": None, "tol": DEFAULT_TOL, "out": None,
               "format": "csv"},
    "region": {"mode": "figure", "alpha": 0.0, "beta": 0.0,
               "gamma_min": -1.0, "gamma_max": 6.0, "gamma_step": 0.05,
               "p_min": 1.0, "p_max": 4.5, "p_step": 0.05, "out": None, "format": "csv"},
    "complete": {"alpha": None, "beta": None, "ell": None, "omega": None, "p": None,
                 "out": None, "format": "csv"},
    "counterexample": {"alpha": None, "beta": None, "p": None, "ell": None, "m": None,
                       "steps": 20, "out": None, "format": "csv"},
}

_HANDLERS = {
    "basis": _cmd_basis,
    "gram": _cmd_gram,
    "expand": _cmd_expand,
    "region": _cmd_region,
    "complete": _cmd_complete,
    "counterexample": _cmd_counterexample,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jacobi-sobolev",
        description="Desk-scale Jacobi-Sobolev expansion and region experiments",
    )
    subs = parser.add_subparsers(dest="command", required=True)
    _add_common(subs.add_parser("basis", help="dump basis coefficients"),
                "alpha", "beta", "ell", "omega", "p", "n-max")
    _add_common(subs.add_parser("gram", help="orthonormality deviations"),
                "alpha", "beta", "ell", "omega", "p", "n-max")
    _add_common(subs.add_parser("expand", help="expansion report for a test function"),
                "alpha", "beta", "ell", "omega", "p", "n-max", "function", "tol")
    _add_common(subs.add_parser("region", help="convergence-region grids"),
                "mode", "alpha", "beta", "gamma-min", "gamma-max", "gamma-step",
                "p-min", "p-max", "p-step")
    _add_common(subs.add_parser("complete", help="completeness verdict"),
                "alpha", "beta", "ell", "omega", "p")
    _add_common(subs.add_parser("counterexample", help="endpoint blow-up table"),
                "alpha", "beta", "p", "ell", "m", "steps")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        opts = _merge(args, _DEFAULTS[args.command])
        text = _HANDLERS[args.command](opts)
    except DegreeCapError as err:
        return _fail("degree_cap", err, 4)
    except NonConvergedError as err:
        return _fail("non_convergence", err, 3)
    except (ValueError, KeyError, TypeError, OSError) as err:
        return _fail("invalid_config", err, 2)
    out = opts.get("out")
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _fail(code: str, err: Exception, status: int) -> int:
    detail = str(err).replace("\n", " ")
    sys.stderr.write(f'error_code={code} detail="{detail}"\n')
    return status


if __name__ == "__main__":
    sys.exit(main())
