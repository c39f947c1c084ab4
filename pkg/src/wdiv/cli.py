"""Command-line front end.

Subcommands: sieve, eval, voronoi [sweep], riesz, meansquare [sweep],
check {bessel,funceq,laurent}, recipe {theorem1..4,funceq,corollary}.

Exit codes: 0 success, 1 validation/usage error, 2 numeric failure (a
tolerance breach in check/recipe mode).  Usage errors print one JSON
diagnostic line to stderr.  All floats serialize with 17 significant digits,
and outputs are byte-identical across runs for a fixed seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .arith import DivisorTable, RationalPhase, make_phase
from .cache import load_or_sieve
from .dirichlet import (
    E_hurwitz,
    E_series,
    F0_hurwitz,
    F0_series,
    F_hurwitz,
    F_series,
    funceq_residual,
)
from .errors import NumericFailure, WdivError
from .meansquare import mean_square_report
from .recipes import RECIPES, recipe_laurent_check, run_recipe
from .special import (
    bessel_K,
    bessel_K_asymptotic,
    bessel_Y,
    bessel_Y_asymptotic,
)
from .voronoi import compare_points, main_term_params, riesz_main_term

_F17 = "{:.17g}".format


@dataclass
class ExperimentConfig:
    """Validated invocation parameters for one CLI run."""

    command: str
    h: int = 1
    k: int = 1
    x: float | None = None
    xmax: int | None = None
    trunc: int | None = None
    cutoff: int | None = None
    a: int = 0
    seed: int = 0
    fmt: str = "json"
    out: str | None = None
    cache_dir: str | None = None
    extra: dict | None = None

    def phase(self) -> RationalPhase:
        return make_phase(self.h, self.k)

    def table(self, default_xmax: int) -> DivisorTable:
        return load_or_sieve(self.xmax or default_xmax, self.cache_dir)


def _json_scalar(v):
    if isinstance(v, float):
        return _F17(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if v is None:
        return "null"
    return json.dumps(v)


def _to_json(obj) -> str:
    """Deterministic JSON with floats at 17 significant digits."""
    if isinstance(obj, dict):
        items = (f'"{key}": {_to_json(val)}' for key, val in sorted(obj.items()))
        return "{" + ", ".join(items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_to_json(v) for v in obj) + "]"
    return _json_scalar(obj)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _complex_dict(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


# ---------------------------------------------------------------------------
# handlers
# ---------------------------------------------------------------------------

def _cmd_sieve(cfg: ExperimentConfig) -> int:
    table = cfg.table(100_000)
    import io

    buf = io.StringIO()
    table.dump_csv(buf)
    _emit(buf.getvalue(), cfg.out)
    return 0


def _cmd_eval(cfg: ExperimentConfig) -> int:
    series_name = cfg.extra["series"]
    method = cfg.extra["method"]
    s = complex(cfg.extra["re"], cfg.extra["im"])
    phase = cfg.phase()
    payload = {"series": series_name, "method": method,
               "s_re": s.real, "s_im": s.imag, "h": phase.h, "k": phase.k}
    if method == "hurwitz":
        fn = {"F": F_hurwitz, "E": E_hurwitz, "F0": F0_hurwitz}[series_name]
        val = fn(s, phase)
    else:
        table = cfg.table(100_000)
        fn = {"F": F_series, "E": E_series, "F0": F0_series}[series_name]
        val, tail = fn(s, phase, table)
        payload["tail_bound"] = tail.tail_bound
        payload["series_cutoff"] = tail.cutoff
    payload.update(_complex_dict(val))
    _emit(_to_json(payload), cfg.out)
    return 0


def _cmd_voronoi(cfg: ExperimentConfig) -> int:
    phase = cfg.phase()
    if cfg.extra.get("sweep"):
        xs = np.floor(np.linspace(cfg.extra["xmin"], cfg.extra["xmax_sweep"],
                                  cfg.extra["points"])) + 0.5
        table = cfg.table(int(max(xs)) + 1)
        params = main_term_params(phase, cfg.a)
        lines = ["x,re_direct,im_direct,re_formula,im_formula,residual,envelope"]
        for n_used in cfg.extra["n_list"]:
            reports = compare_points(xs, phase, table, a=cfg.a,
                                     trunc=n_used if cfg.a == 0 else None,
                                     cutoff=n_used if cfg.a >= 1 else None,
                                     params=params)
            for r in reports:
                lines.append(",".join(_F17(v) for v in (
                    r.x, r.direct.real, r.direct.imag, r.formula.real,
                    r.formula.imag, r.abs_residual, r.envelope)))
        _emit("\n".join(lines) + "\n", cfg.out)
        return 0
    table = cfg.table(max(int(cfg.x) + 1, (cfg.trunc or 1) + 1))
    params = main_term_params(phase, cfg.a)
    reports = compare_points([cfg.x], phase, table, a=cfg.a,
                             trunc=cfg.trunc if cfg.a == 0 else None,
                             cutoff=cfg.trunc if cfg.a >= 1 else None,
                             params=params)
    r = reports[0]
    payload = {
        "x": r.x, "h": phase.h, "k": phase.k, "a": cfg.a,
        "N": cfg.trunc if cfg.trunc is not None else int(cfg.x),
        "direct": _complex_dict(r.direct), "formula": _complex_dict(r.formula),
        "abs_residual": r.abs_residual, "envelope": r.envelope,
    }
    _emit(_to_json(payload), cfg.out)
    return 0


def _cmd_riesz(cfg: ExperimentConfig) -> int:
    from .arith import riesz_sum

    phase = cfg.phase()
    table = cfg.table(int(cfg.x) + 1)
    params = main_term_params(phase, cfg.a)
    value = riesz_sum(table, cfg.x, phase, cfg.a)
    main = riesz_main_term(cfg.x, params)
    payload = {
        "x": cfg.x, "h": phase.h, "k": phase.k, "a": cfg.a,
        "riesz_sum": _complex_dict(value), "main_term": _complex_dict(main),
        "delta": _complex_dict(value - main),
    }
    _emit(_to_json(payload), cfg.out)
    return 0


def _cmd_meansquare(cfg: ExperimentConfig) -> int:
    phase = cfg.phase()
    from .meansquare import DEFAULT_CUTOFF_A0, DEFAULT_CUTOFF_A1

    default_cut = DEFAULT_CUTOFF_A0 if cfg.a == 0 else DEFAULT_CUTOFF_A1
    if cfg.extra.get("sweep"):
        x_list = cfg.extra["x_list"]
        table = cfg.table(max(int(max(x_list)), cfg.cutoff or default_cut))
        params = main_term_params(phase, cfg.a)
        lines = ["X,empirical,theorem_main,ratio,tail"]
        for x_top in x_list:
            rep = mean_square_report(x_top, phase, cfg.a, table,
                                     cutoff=cfg.cutoff, params=params)
            lines.append(",".join(_F17(v) for v in (
                rep.X, rep.empirical, rep.theorem_main, rep.ratio,
                rep.series_tail)))
        _emit("\n".join(lines) + "\n", cfg.out)
        return 0
    table = cfg.table(max(int(cfg.x), cfg.cutoff or default_cut))
    rep = mean_square_report(cfg.x, phase, cfg.a, table, cutoff=cfg.cutoff)
    payload = {
        "X": rep.X, "h": phase.h, "k": phase.k, "a": cfg.a,
        "empirical": rep.empirical, "theorem_main": rep.theorem_main,
        "ratio": rep.ratio, "series_cutoff": rep.series_cutoff,
        "series_tail": rep.series_tail,
    }
    _emit(_to_json(payload), cfg.out)
    return 0


def _cmd_check_bessel(cfg: ExperimentConfig) -> int:
    xs = cfg.extra.get("x_list") or [0.5, 1.0, 2.0, 5.0, 8.0, 12.0, 20.0,
                                     35.0, 50.0, 100.0]
    orders = cfg.extra.get("orders") or [0, 1, 2]
    lines = ["x,order,Y,K,Y_asym,K_asym,rel_gap"]
    failed = False
    for x in xs:
        for order in orders:
            y_val = bessel_Y(order, x)
            k_val = bessel_K(order, x)
            y_asym = float(bessel_Y_asymptotic(order, x))
            k_asym = float(bessel_K_asymptotic(order, x))
            gap_y = abs(y_val - y_asym) * x**1.5
            gap_k = abs(k_val / k_asym - 1.0) * x
            rel_gap = max(gap_y, gap_k)
            if x >= 20 and order <= 2 and rel_gap > 2.0:
                failed = True
            lines.append(",".join(_F17(float(v)) for v in (
                x, order, y_val, k_val, y_asym, k_asym, rel_gap)))
    _emit("\n".join(lines) + "\n", cfg.out)
    return 2 if failed else 0


def _cmd_check_funceq(cfg: ExperimentConfig) -> int:
    phase = cfg.phase()
    table = cfg.table(100_000)
    rng = np.random.default_rng(cfg.seed)
    lines = ["s_re,s_im,residual"]
    worst = 0.0
    for _ in range(cfg.extra.get("points", 20)):
        s = complex(rng.uniform(-3.0, -1.0), rng.uniform(-10.0, 10.0))
        resid = funceq_residual(s, phase, table, method="auto")
        worst = max(worst, resid)
        lines.append(",".join(_F17(v) for v in (s.real, s.imag, resid)))
    _emit("\n".join(lines) + "\n", cfg.out)
    return 2 if worst > 1e-6 else 0


def _cmd_check_laurent(cfg: ExperimentConfig) -> int:
    payload = recipe_laurent_check(cfg.k)
    _emit(_to_json(payload), cfg.out)
    return 0 if payload["ok"] else 2


def _cmd_recipe(cfg: ExperimentConfig) -> int:
    out_dir = Path(cfg.out or f"recipe_{cfg.extra['name']}")
    table = None
    if cfg.xmax:
        table = load_or_sieve(cfg.xmax, cfg.cache_dir)
    result = run_recipe(cfg.extra["name"], out_dir, table=table, seed=cfg.seed)
    status = "PASS" if result.passed else "FAIL"
    sys.stdout.write(f"recipe {result.name}: {status} ({result.summary})\n")
    for p in result.csv_paths:
        sys.stdout.write(f"  wrote {p}\n")
    return 0 if result.passed else 2


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):  # machine-readable usage diagnostics
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _build_parser() -> _Parser:
    parser = _Parser(prog="wdiv", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_phase=True):
        if with_phase:
            p.add_argument("--h", type=int, default=1)
            p.add_argument("--k", type=int, default=1)
        p.add_argument("--out", default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--cache-dir", default=None)

    p = sub.add_parser("sieve", help="dump the sieved table as CSV")
    p.add_argument("--xmax", type=int, required=True)
    common(p, with_phase=False)

    p = sub.add_parser("eval", help="evaluate F, E or F0 at a point")
    p.add_argument("series", choices=["F", "E", "F0"])
    p.add_argument("--re", type=float, required=True)
    p.add_argument("--im", type=float, default=0.0)
    p.add_argument("--method", choices=["hurwitz", "series"],
                   default="hurwitz")
    p.add_argument("--xmax", type=int, default=None)
    common(p)

    p = sub.add_parser("voronoi", help="error term vs truncated expansion")
    p.add_argument("mode", nargs="?", choices=["sweep"], default=None)
    p.add_argument("--x", type=float)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--xmin", type=float)
    p.add_argument("--xmax", type=float, dest="xmax_sweep")
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--Nlist", default=None)
    common(p)

    p = sub.add_parser("riesz", help="smoothed partial sum and its error term")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--a", type=int, default=1)
    common(p)

    p = sub.add_parser("meansquare", help="mean square of the error term")
    p.add_argument("mode", nargs="?", choices=["sweep"], default=None)
    p.add_argument("--X", type=float)
    p.add_argument("--Xlist", default=None)
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--cutoff", type=int, default=None)
    common(p)

    p = sub.add_parser("check", help="self-checks with pass/fail exit status")
    p.add_argument("target", choices=["bessel", "funceq", "laurent"])
    p.add_argument("--points", type=int, default=20)
    p.add_argument("--xlist", default=None)
    p.add_argument("--orders", default=None)
    common(p)

    p = sub.add_parser("recipe", help="run a canonical experiment bundle")
    p.add_argument("name", choices=list(RECIPES))
    p.add_argument("--xmax", type=int, default=None)
    common(p, with_phase=False)
    return parser


def _config_from_args(args) -> ExperimentConfig:
    cfg = ExperimentConfig(command=args.command, seed=args.seed,
                           out=args.out, cache_dir=args.cache_dir,
                           extra={})
    for attr in ("h", "k"):
        if hasattr(args, attr):
            setattr(cfg, attr, getattr(args, attr))
    if args.command == "sieve":
        cfg.xmax = args.xmax
    elif args.command == "eval":
        cfg.xmax = args.xmax
        cfg.extra = {"series": args.series, "method": args.method,
                     "re": args.re, "im": args.im}
    elif args.command == "voronoi":
        cfg.a = args.a
        if args.mode == "sweep":
            if args.xmin is None or args.xmax_sweep is None:
                raise _UsageError("voronoi sweep needs --xmin and --xmax")
            n_list = ([int(v) for v in args.Nlist.split(",")]
                      if args.Nlist else [None])
            cfg.extra = {"sweep": True, "xmin": args.xmin,
                         "xmax_sweep": args.xmax_sweep,
                         "points": args.points, "n_list": n_list}
        else:
            if args.x is None:
                raise _UsageError("voronoi needs --x")
            cfg.x = args.x
            cfg.trunc = args.N
    elif args.command == "riesz":
        cfg.x = args.x
        cfg.a = args.a
    elif args.command == "meansquare":
        cfg.a = args.a
        cfg.cutoff = args.cutoff
        if args.mode == "sweep":
            if not args.Xlist:
                raise _UsageError("meansquare sweep needs --Xlist")
            cfg.extra = {"sweep": True,
                         "x_list": [float(v) for v in args.Xlist.split(",")]}
        else:
            if args.X is None:
                raise _UsageError("meansquare needs --X")
            cfg.x = args.X
    elif args.command == "check":
        cfg.extra = {"target": args.target, "points": args.points}
        if args.xlist:
            cfg.extra["x_list"] = [float(v) for v in args.xlist.split(",")]
        if args.orders:
            cfg.extra["orders"] = [int(v) for v in args.orders.split(",")]
    elif args.command == "recipe":
        cfg.xmax = args.xmax
        cfg.extra = {"name": args.name}
    return cfg


_HANDLERS = {
    "sieve": _cmd_sieve,
    "eval": _cmd_eval,
    "voronoi": _cmd_voronoi,
    "riesz": _cmd_riesz,
    "meansquare": _cmd_meansquare,
    "recipe": _cmd_recipe,
}


def run(argv: list[str]) -> int:
    """Parse and dispatch; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _config_from_args(args)
        if cfg.command == "check":
            handler = {"bessel": _cmd_check_bessel,
                       "funceq": _cmd_check_funceq,
                       "laurent": _cmd_check_laurent}[cfg.extra["target"]]
            return handler(cfg)
        return _HANDLERS[cfg.command](cfg)
    except _UsageError as exc:
        sys.stderr.write(_to_json({"error": "usage", "message": str(exc)}) + "\n")
        return 1
    except NumericFailure as exc:
        sys.stderr.write(_to_json({"error": "numeric_failure",
                                   "message": str(exc)}) + "\n")
        return 2
    except WdivError as exc:
        sys.stderr.write(_to_json({"error": type(exc).__name__,
                                   "message": str(exc)}) + "\n")
        return 1
    except (ValueError, OSError) as exc:
        sys.stderr.write(_to_json({"error": type(exc).__name__,
                                   "message": str(exc)}) + "\n")
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
