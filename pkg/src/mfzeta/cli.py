"""Command-line front end.

    mfzeta spectrum --model binomial.ini --out results/
    mfzeta zeta-abscissa --model binomial.ini --target point:0.9 --mode shrink
    mfzeta shrink-sweep --model binomial.ini --target point:1.0 --radius 0.2,0.1,0.05
    mfzeta coarse | euler | variational --model ...

Every command writes ``<command>.json`` into ``--out``; with ``--format csv``
a ``<command>.csv`` table is written as well.  Exit codes: 0 ok, 2 config
error, 3 numeric failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import warnings
from pathlib import Path

import numpy as np

from . import __version__
from ._neginf import NegInfinity
from .coarse import coarse_spectrum_estimate
from .config import ConfigError, RunConfig, load_config, parse_int_list, parse_list
from .euler import NotMultiplicative, euler_check
from .measures import NumericalError, legendre, ratio_range, spectrum_curve
from .statistics import RatioStatistic
from .targets import Box, Point
from .variational import constrained_sup
from .zeta import EnumerationBudgetExceeded, fixed_target_estimate, shrinking_sweep

SCHEMA_VERSION = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


def jsonable(x):
    if isinstance(x, NegInfinity):
        return "-inf"
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return jsonable(x.tolist())
    if isinstance(x, (np.floating, float)):
        x = float(x)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def _oracle(cfg: RunConfig, stat, center):
    if isinstance(stat, RatioStatistic):
        return legendre(cfg.model, center)
    return None


def _gap(a, b):
    if b is None or isinstance(a, NegInfinity) or isinstance(b, NegInfinity):
        return None
    return float(a) - float(b)


def cmd_spectrum(cfg: RunConfig):
    count = int(round((cfg.q_max - cfg.q_min) / cfg.q_step)) + 1
    axis = [cfg.q_min + j * cfg.q_step for j in range(count)]
    if cfg.model.M == 1:
        qs = [[q] for q in axis]
    else:
        qs = [list(pt) for pt in np.array(np.meshgrid(*[axis] * cfg.model.M, indexing="ij")).reshape(cfg.model.M, -1).T]
    curve = spectrum_curve(cfg.model, qs)
    rows = [{"q": s.q, "beta": s.beta, "alpha": s.alpha, "f": s.f} for s in curve.samples]
    table = [[*s.q, s.beta, *s.alpha, s.f] for s in curve.samples]
    M = cfg.model.M
    header = [f"q{m}" for m in range(M)] + ["beta"] + [f"alpha{m}" for m in range(M)] + ["f"]
    return {"samples": rows, "ratio_range": ratio_range(cfg.model)}, header, table


def _sweep_rows(cfg, stat, target):
    sweep = shrinking_sweep(cfg.weights(), stat, target, cfg.radii, cfg.levels)
    center = None
    if isinstance(target, Point):
        center = target.value
    oracle = _oracle(cfg, stat, center) if center is not None else None
    rows = []
    for r, est in zip(sweep.radii, sweep.estimates):
        rows.append(
            {
                "r": r,
                "estimate": est.value,
                "levels": est.levels,
                "roots": est.roots,
                "extrapolated": est.extrapolated,
                "oracle": oracle,
                "gap": _gap(est.value, oracle),
            }
        )
    return sweep, rows


def cmd_zeta_abscissa(cfg: RunConfig):
    stat, target = cfg.stat(), cfg.target_obj()
    if cfg.mode == "shrink":
        sweep, rows = _sweep_rows(cfg, stat, target)
        out = {"mode": "shrink", "target": target.spec(), "rows": rows, "non_increasing": sweep.non_increasing}
        table = [[r["r"], r["estimate"], r["oracle"], r["gap"]] for r in rows]
        return out, ["r", "t_n", "oracle", "gap"], table
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res = fixed_target_estimate(cfg.weights(), stat, target, cfg.levels)
    if res.warning:
        print(f"warning: {res.warning}", file=sys.stderr)
    est = res.estimate
    out = {
        "mode": "fixed",
        "target": target.spec(),
        "estimate": est.value,
        "levels": est.levels,
        "roots": est.roots,
        "extrapolated": est.extrapolated,
        "oracle": res.oracle,
        "gap": _gap(est.value, res.oracle),
        "condition_holds": res.condition_holds,
        "warning": res.warning,
    }
    table = [[n, t] for n, t in zip(est.levels, est.roots)]
    return out, ["n", "t_n"], table


def cmd_shrink_sweep(cfg: RunConfig):
    stat, target = cfg.stat(), cfg.target_obj()
    sweep, rows = _sweep_rows(cfg, stat, target)
    table = [[r["r"], r["estimate"], r["extrapolated"]] for r in rows]
    return {"target": target.spec(), "rows": rows, "non_increasing": sweep.non_increasing}, ["r", "estimate", "extrapolated"], table


def cmd_coarse(cfg: RunConfig):
    stat, target = cfg.stat(), cfg.target_obj()
    res = coarse_spectrum_estimate(cfg.weights(), stat, target, cfg.radius, cfg.delta_ladder())
    out = {
        "target": target.spec(),
        "r": cfg.radius,
        "slope": res.slope,
        "intercept": res.intercept,
        "table": res.table,
        "residuals": res.residuals,
    }
    table = [[row["delta"], row["count"], row["ratio"]] for row in res.table]
    return out, ["delta", "count", "log_count_over_minus_log_delta"], table


def _measure_params(m):
    if m is None:
        return None
    return list(m.pi) if hasattr(m, "pi") else [list(row) for row in m.P]


def _default_full_target(cfg):
    box = ratio_range(cfg.model)
    return Box(box[:, 0] - 1.0, box[:, 1] + 1.0)


def cmd_euler(cfg: RunConfig):
    stat = cfg.stat()
    target = cfg.target_obj() if cfg.target else _default_full_target(cfg)
    radius = cfg.radius if cfg.target else 0.0
    chk = euler_check(cfg.weights(), stat, cfg.s, target, radius, cfg.max_len)
    out = {
        "target": target.spec(),
        "radius": radius,
        "s": chk.s,
        "max_len": chk.max_len,
        "zeta_trunc": chk.zeta_trunc,
        "prime_form": chk.prime_form,
        "discrepancy": chk.discrepancy,
        "slow_tail": chk.slow_tail,
    }
    return out, ["s", "max_len", "zeta_trunc", "prime_form", "discrepancy"], [
        [chk.s, chk.max_len, chk.zeta_trunc, chk.prime_form, chk.discrepancy]
    ]


def cmd_variational(cfg: RunConfig):
    stat = cfg.stat()
    rows = []
    if cfg.alphas is None and cfg.target is not None:
        target = cfg.target_obj()
        res = constrained_sup(stat, target, cfg.radius, cfg.family)
        rows.append({"target": target.spec(), "value": res.value, "U": res.U, "feasible": res.feasible,
                     "measure": _measure_params(res.measure),
                     "oracle": None, "gap": None})
    else:
        alphas = cfg.alphas
        if alphas is None:
            if stat.dim != 1 or not isinstance(stat, RatioStatistic):
                raise ConfigError("variational needs alphas or a target for this statistic")
            lo, hi = ratio_range(cfg.model)[0]
            alphas = [lo + j * (hi - lo) / 12 for j in range(1, 12)]
        for a in alphas:
            res = constrained_sup(stat, Point(a), cfg.radius, cfg.family)
            oracle = _oracle(cfg, stat, a)
            rows.append({"target": Point(a).spec(), "value": res.value, "U": res.U, "feasible": res.feasible,
                         "measure": _measure_params(res.measure),
                         "oracle": oracle, "gap": _gap(res.value, oracle)})
    table = [[r["target"], r["value"], r["oracle"], r["gap"]] for r in rows]
    return {"family": cfg.family, "radius": cfg.radius, "rows": rows}, ["target", "value", "oracle", "gap"], table


HELP = {
    "spectrum": "sample (q, beta, alpha, f) along a q grid",
    "zeta-abscissa": "abscissa estimates for a shrinking or fixed target",
    "shrink-sweep": "abscissa estimates along a radius ladder",
    "coarse": "stopping-set counts and their log-log slope",
    "euler": "truncated zeta series against the prime-word sum",
    "variational": "constrained entropy-dimension sup over Bernoulli or Markov measures",
}

COMMANDS = {
    "spectrum": cmd_spectrum,
    "zeta-abscissa": cmd_zeta_abscissa,
    "shrink-sweep": cmd_shrink_sweep,
    "coarse": cmd_coarse,
    "euler": cmd_euler,
    "variational": cmd_variational,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mfzeta", description="Multifractal zeta-function experiments for self-similar measures.")
    parser.add_argument("--version", action="version", version=f"mfzeta {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, help=HELP[name])
        p.add_argument("--model", required=True, help="INI config file")
        p.add_argument("--target", help="point:a | box:lo,hi | ball:c,R (';' between coordinates)")
        p.add_argument("--radius", help="comma-separated radii")
        p.add_argument("--levels", help="comma-separated word lengths")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        if name == "zeta-abscissa":
            p.add_argument("--mode", choices=("shrink", "fixed"))
        if name == "euler":
            p.add_argument("--s", type=float)
            p.add_argument("--max-len", type=int)
        if name == "variational":
            p.add_argument("--family", choices=("bernoulli", "markov1"))
    return parser


def _overrides(args) -> dict:
    over = {"target": args.target}
    if args.radius:
        radii = parse_list(args.radius)
        over["radii"] = radii
        over["radius"] = radii[0]
    if args.levels:
        over["levels"] = parse_int_list(args.levels)
    for key in ("mode", "s", "max_len", "family"):
        over[key] = getattr(args, key, None)
    return over


def write_outputs(out_dir: Path, command: str, cfg: RunConfig, result: dict, header, table, fmt: str):
    out_dir.mkdir(parents=True, exist_ok=True)
    record = {
        "schema_version": SCHEMA_VERSION,
        "library_version": __version__,
        "command": command,
        "config_hash": cfg.digest(),
        "config": cfg.as_dict(),
        "result": result,
    }
    paths = [out_dir / f"{command}.json"]
    paths[0].write_text(json.dumps(jsonable(record), sort_keys=True, indent=2) + "\n")
    if fmt == "csv":
        path = out_dir / f"{command}.csv"
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            for row in table:
                w.writerow([json.dumps(jsonable(v)) if isinstance(v, (list, dict)) else jsonable(v) for v in row])
        paths.append(path)
    return paths


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.model, _overrides(args))
        result, header, table = COMMANDS[args.command](cfg)
    except (ConfigError, NotMultiplicative) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalError, EnumerationBudgetExceeded, MemoryError, FloatingPointError, ArithmeticError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    for path in write_outputs(Path(args.out), args.command, cfg, result, header, table, args.format):
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
