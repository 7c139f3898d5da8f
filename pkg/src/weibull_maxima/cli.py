"""Command-line front end.

Every command emits one record: CSV on stdout by default (header row plus
data rows, numbers rounded to 10 significant digits), or JSON with
``--json``. Both carry the same rounded values.

Exit codes: 0 success, 2 bad arguments or distribution spec, 3 a validity
guard tripped (sample size too small for an expansion, and so on).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from . import reference_values as ref
from .asymptotic import solve_power_exp, t_comtet, t_lambert, u_gamma_d_expansion, u_gamma_d_numeric
from .convergence import XGrid, a_optimality_scan, ks_statistic, perturbation_check, rate_check
from .distributions import GammaParams, GeneralizedWeibullParams, chi2, gumbel_pdf, simple_case
from .exceptions import DomainError, IllConditionedWarning, ValidityError
from .norming import Method, norming_constants
from .series import PowerSeries
from .simulate import ExperimentConfig, histogram, maxima_experiment
from .special_fn import Branch, lambert_w

__all__ = ["main", "build_parser", "parse_dist", "parse_n_list", "parse_delta_grid", "OutputRecord"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDITY = 3

GW_KEYS = ("K", "C", "tau", "alpha", "x0")
GAMMA_KEYS = ("nu", "theta")


class SpecError(ValueError):
    """Unparseable command-line value; maps to exit code 2."""


def fmt(x: Any) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".10g")


def _json_value(x: Any) -> Any:
    if isinstance(x, str) or x is None:
        return x
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    v = float(fmt(x))
    return v if math.isfinite(v) else fmt(x)


@dataclass
class OutputRecord:
    command: list[str]
    params: dict[str, Any]
    columns: list[str]
    rows: list[dict[str, Any]] = field(default_factory=list)
    summary: dict[str, Any] = field(default_factory=dict)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow([fmt(row[c]) for c in self.columns])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "command": self.command,
            "params": {k: _json_value(v) for k, v in self.params.items()},
            "columns": self.columns,
            "rows": [{c: _json_value(row[c]) for c in self.columns} for row in self.rows],
            "summary": {k: _json_value(v) for k, v in self.summary.items()},
        }
        return json.dumps(doc, indent=2) + "\n"


# -- argument grammar ----------------------------------------------------------


def _number(text: str) -> float:
    text = text.strip()
    if text == "e":
        return math.e
    try:
        return float(text)
    except ValueError:
        raise SpecError(f"not a number: {text!r}") from None


def _key_values(text: str, keys: Sequence[str], flag: str) -> dict[str, float]:
    out: dict[str, float] = {}
    for part in text.split(","):
        if not part.strip():
            continue
        if "=" not in part:
            raise SpecError(f"{flag}: expected key=value, got {part!r}")
        k, v = (s.strip() for s in part.split("=", 1))
        if k not in keys:
            raise SpecError(f"{flag}: unknown key {k!r} (expected {', '.join(keys)})")
        out[k] = _number(v)
    missing = [k for k in keys if k not in out]
    if missing:
        raise SpecError(f"{flag}: missing {', '.join(missing)}")
    return out


def parse_dist(args: argparse.Namespace):
    """Distribution from ``--gw``, ``--gamma`` or ``--chi2``; ``None`` if absent."""
    try:
        if getattr(args, "gw", None) is not None:
            return GeneralizedWeibullParams(**_key_values(args.gw, GW_KEYS, "--gw"))
        if getattr(args, "gamma", None) is not None:
            return GammaParams(**_key_values(args.gamma, GAMMA_KEYS, "--gamma"))
        if getattr(args, "chi2", None) is not None:
            return chi2(_number(args.chi2))
    except SpecError:
        raise
    except (DomainError, ValidityError, ValueError, TypeError) as exc:
        raise SpecError(f"invalid distribution: {exc}") from None
    return None


def _dist_params(dist) -> dict[str, Any]:
    if isinstance(dist, GeneralizedWeibullParams):
        return {"dist": "gw", **{k: getattr(dist, k) for k in GW_KEYS}}
    return {"dist": "gamma", "nu": dist.nu, "theta": dist.theta}


def parse_n_list(text: str) -> list[float]:
    """Comma-separated sizes; ``a:b`` expands to the decades ``a, 10a, ..., b``."""
    out: list[float] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" in part:
            lo_s, hi_s = part.split(":", 1)
            lo, hi = _number(lo_s), _number(hi_s)
            if not 0 < lo <= hi:
                raise SpecError(f"bad decade range {part!r}")
            steps = math.log10(hi / lo)
            if abs(steps - round(steps)) > 1e-9:
                raise SpecError(f"decade range {part!r} must end a power of ten above its start")
            out.extend(float(f"{lo * 10.0**k:.12g}") for k in range(round(steps) + 1))
        else:
            out.append(_number(part))
    if not out:
        raise SpecError("empty list of sample sizes")
    return out


def parse_delta_grid(text: str) -> list[float]:
    """``start:stop:step`` inclusive, or a comma-separated list."""
    if ":" not in text:
        return [_number(t) for t in text.split(",") if t.strip()]
    parts = text.split(":")
    if len(parts) != 3:
        raise SpecError(f"expected start:stop:step, got {text!r}")
    start, stop, step = (_number(p) for p in parts)
    if not step > 0 or stop < start:
        raise SpecError(f"bad grid {text!r}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(count)]


def _methods(text: str) -> list[Method]:
    try:
        return [Method(m.strip()) for m in text.split(",") if m.strip()]
    except ValueError as exc:
        raise SpecError(str(exc)) from None


# -- commands ------------------------------------------------------------------


def _require_dist(args):
    dist = parse_dist(args)
    if dist is None:
        raise SpecError("a distribution is required: --gw, --gamma or --chi2")
    return dist


def cmd_constants(args, argv) -> OutputRecord:
    dist = _require_dist(args)
    ns = parse_n_list(args.n)
    methods = _methods(args.methods)
    columns = ["n"]
    for m in methods:
        columns += [f"b_{m.value}", f"a_{m.value}"]
    rows = []
    for n in ns:
        row: dict[str, Any] = {"n": n}
        for m in methods:
            c = norming_constants(dist, n, m, args.order if m is Method.IMPROVED else None)
            row[f"b_{m.value}"] = c.b
            row[f"a_{m.value}"] = c.a
        rows.append(row)
    params = {**_dist_params(dist), "methods": ",".join(m.value for m in methods)}
    if args.order is not None:
        params["order"] = args.order
    return OutputRecord(argv, params, columns, rows)


def _table_rows(table: int) -> tuple[list[str], list[dict[str, Any]]]:
    rows: list[dict[str, Any]] = []
    if table in (1, 2, 3):
        dist = simple_case() if table == 1 else chi2(10)
        if table == 1:
            published, quantity = ref.SIMPLE_B, "b"
        elif table == 2:
            published, quantity = ref.CHI2_10_B, "b"
        else:
            published, quantity = ref.CHI2_10_A, "a"
        for m in Method:
            for n, pub in zip(ref.TABLE_N, published[m.value]):
                got = getattr(norming_constants(dist, n, m), quantity)
                rows.append({"quantity": quantity, "method": m.value, "n": n, "computed": got,
                             "published": pub, "abs_diff": abs(got - pub)})
        return ["quantity", "method", "n", "computed", "published", "abs_diff"], rows
    for beta in ref.TABLE_BETA:
        for name, fn in (("t", lambda x: solve_power_exp(beta, x)),
                         ("t_W", lambda x: t_lambert(beta, x)),
                         ("t_C", lambda x: t_comtet(beta, x))):
            for x, pub in zip(ref.TABLE_X, ref.POWER_EXP_ROOTS[beta][name]):
                got = fn(x)
                rows.append({"quantity": name, "beta": beta, "x": x, "computed": got,
                             "published": pub, "abs_diff": abs(got - pub)})
    return ["quantity", "beta", "x", "computed", "published", "abs_diff"], rows


def cmd_table(args, argv) -> OutputRecord:
    # the published grids include points where the expansions are ill-conditioned by design
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IllConditionedWarning)
        columns, rows = _table_rows(args.id)
    worst = max(r["abs_diff"] for r in rows)
    return OutputRecord(argv, {"table": args.id}, columns, rows,
                        summary={"max_abs_diff": worst, "within_tolerance": worst <= ref.TOLERANCE})


def cmd_simulate(args, argv) -> OutputRecord:
    dist = _require_dist(args)
    n = _number(args.n)
    if n != int(n):
        raise SpecError(f"--n must be an integer, got {args.n!r}")
    cfg = ExperimentConfig(dist=dist, n=int(n), reps=args.reps, seed=args.seed,
                           method=Method(args.method), keep_raw=args.raw)
    res = maxima_experiment(cfg)
    ks = ks_statistic(res.normalized)
    columns = ["rep", "normalized"] + (["raw"] if args.raw else [])
    rows = []
    for i, y in enumerate(res.normalized):
        row = {"rep": i, "normalized": y}
        if args.raw:
            row["raw"] = res.raw[i]
        rows.append(row)
    if args.hist:
        edges, counts, density = histogram(res.normalized, bins=args.bins, lo=-4.0, hi=8.0)
        mid = 0.5 * (edges[:-1] + edges[1:])
        hist = OutputRecord(argv, {}, ["bin_left", "bin_right", "count", "density", "gumbel_density"], [
            {"bin_left": l, "bin_right": r, "count": int(c), "density": d, "gumbel_density": g}
            for l, r, c, d, g in zip(edges[:-1], edges[1:], counts, density, gumbel_pdf(mid))
        ])
        with open(args.hist, "w", encoding="utf-8", newline="") as fh:
            fh.write(hist.to_csv())
    params = {**_dist_params(dist), "n": int(n), "reps": args.reps, "seed": args.seed, "method": args.method,
              "a": res.constants.a, "b": res.constants.b}
    print(f"ks={fmt(ks)}", file=sys.stderr)
    return OutputRecord(argv, params, columns, rows, summary={"ks": ks, "mean": float(np.mean(res.normalized))})


def cmd_diagnose(args, argv) -> OutputRecord:
    dist = _require_dist(args)
    grid = XGrid(args.xmin, args.xmax, args.xnum)
    base = {**_dist_params(dist), "xmin": grid.start, "xmax": grid.stop, "xnum": grid.num}
    if args.optimal_a:
        n = _number(args.n) if args.n else 1e4
        scan = a_optimality_scan(dist, parse_delta_grid(args.delta), n, grid)
        return OutputRecord(argv, {**base, "mode": "optimal-a", "n": n, "b": scan.b},
                            ["delta", "a_hat", "sup_err"], scan.rows(),
                            summary={"best_delta": scan.best_delta, "resolution": scan.resolution})
    ngrid = parse_n_list(args.ngrid)
    if args.perturb:
        rows = perturbation_check(dist, Method(args.method), Method(args.a_method) if args.a_method else None,
                                  ngrid, grid)
        columns = ["n", "a", "b", "a_tilde", "b_tilde", "bias", "term_tau", "term_alpha", "term_rate", "sup_err"]
        return OutputRecord(argv, {**base, "mode": "perturb", "method": args.method,
                                   "a_method": args.a_method or args.method}, columns, rows)
    rep = rate_check(dist, Method(args.method), ngrid, grid)
    return OutputRecord(argv, {**base, "mode": "rate", "method": args.method},
                        ["n", "a", "b", "sup_err", "scaled_err", "scaled_err_b"], rep.rows(),
                        summary={"band_ratio": rep.band_ratio})


def cmd_lambert(args, argv) -> OutputRecord:
    branch = Branch(args.branch)
    xs = [_number(t) for t in args.x.split(",") if t.strip()]
    rows = []
    for x in xs:
        w = float(lambert_w(x, branch))
        rows.append({"x": x, "w": w, "residual": w * math.exp(w) - x})
    return OutputRecord(argv, {"branch": int(branch)}, ["x", "w", "residual"], rows)


def cmd_ugamma(args, argv) -> OutputRecord:
    d = PowerSeries([args.d0, args.d1])
    xs = [_number(t) for t in args.x.split(",") if t.strip()]
    columns = ["x"]
    if args.mode in ("numeric", "both"):
        columns.append("numeric")
    if args.mode in ("expansion", "both"):
        columns.append("expansion")
    rows = []
    for x in xs:
        row: dict[str, Any] = {"x": x}
        if "numeric" in columns:
            row["numeric"] = u_gamma_d_numeric(args.gamma, d, x)
        if "expansion" in columns:
            row["expansion"] = u_gamma_d_expansion(args.gamma, d, x, args.order)
        rows.append(row)
    params = {"gamma": args.gamma, "d0": args.d0, "d1": args.d1, "order": args.order, "mode": args.mode}
    return OutputRecord(argv, params, columns, rows)


# -- parser --------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise SpecError(message)


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="emit JSON instead of CSV")
    p.add_argument("--out", metavar="FILE", help="write the record to FILE instead of stdout")


def _add_dist(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--gw", metavar="K=..,C=..,tau=..,alpha=..,x0=..", help="generalized Weibull tail; K=e allowed")
    g.add_argument("--gamma", metavar="nu=..,theta=..", help="Gamma(nu, theta)")
    g.add_argument("--chi2", metavar="M", help="chi-square with M degrees of freedom")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="weibull-maxima", description="Norming constants for maxima of Weibull-like laws.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("constants", help="norming constants per sample size")
    _add_dist(p)
    p.add_argument("--n", required=True, help="sample sizes, e.g. 10,100 or 1e1:1e6")
    p.add_argument("--methods", default="exact,standard,improved")
    p.add_argument("--order", type=int, default=None, help="expansion order for the improved constants")
    _add_output(p)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("table", help="reproduce a published table with differences")
    p.add_argument("id", type=int, choices=(1, 2, 3, 4))
    _add_output(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("simulate", help="normalized block maxima by inversion sampling")
    _add_dist(p)
    p.add_argument("--n", default="100", help="block size")
    p.add_argument("--reps", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--method", default="improved", choices=[m.value for m in Method])
    p.add_argument("--raw", action="store_true", help="also emit raw maxima")
    p.add_argument("--hist", metavar="FILE", help="write histogram bins on [-4, 8] to FILE")
    p.add_argument("--bins", type=int, default=50)
    _add_output(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("diagnose", help="convergence-rate diagnostics")
    _add_dist(p)
    p.add_argument("--method", default="exact", choices=[m.value for m in Method])
    p.add_argument("--ngrid", default="1e2:1e6")
    p.add_argument("--perturb", action="store_true", help="perturbed-constants report with b from --method")
    p.add_argument("--a-method", choices=[m.value for m in Method], help="scale constants for --perturb")
    p.add_argument("--optimal-a", action="store_true", help="scan a = 1/C + delta/b (tau = 1 only)")
    p.add_argument("--n", help="sample size for --optimal-a (default 1e4)")
    p.add_argument("--delta", default="0:2:0.1", help="delta grid start:stop:step")
    p.add_argument("--xmin", type=float, default=-3.0)
    p.add_argument("--xmax", type=float, default=6.0)
    p.add_argument("--xnum", type=int, default=201)
    _add_output(p)
    p.set_defaults(func=cmd_diagnose)

    p = sub.add_parser("lambert", help="real Lambert W")
    p.add_argument("--branch", type=int, choices=(0, -1), default=0)
    p.add_argument("--x", required=True, help="comma-separated arguments")
    _add_output(p)
    p.set_defaults(func=cmd_lambert)

    p = sub.add_parser("ugamma", help="unbounded root of t**gamma e**t D(1/t) = x, D(s) = d0 + d1 s")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--d0", type=float, default=1.0)
    p.add_argument("--d1", type=float, default=0.0)
    p.add_argument("--x", required=True, help="comma-separated arguments")
    p.add_argument("--order", type=int, default=1)
    p.add_argument("--mode", choices=("numeric", "expansion", "both"), default="numeric")
    _add_output(p)
    p.set_defaults(func=cmd_ugamma)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        record = args.func(args, argv)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValidityError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDITY
    text = record.to_json() if args.json else record.to_csv()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
