"""Command-line front end: ``hahn-asym {eval, verify, convergence, fixed-x}``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 precision failure.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields

import numpy as np

from . import __version__
from .asymptotics import asym_fixed_x, asym_monic, classify
from .aux_maps import MapBundle
from .oracle import HahnParams, PrecisionContext, PrecisionError, eval_Q_exact
from .scaled import Scaled, rel_diff
from .study import exact_scaled, in_band, loglog_slope, point_error

SCHEMA = 1
HEADER = f"# hahn-asym v{__version__} schema={SCHEMA}"
COLUMNS = ["z_re", "z_im", "n", "N", "alpha", "beta", "region", "exact_logmag", "exact_phase",
           "asym_logmag", "asym_phase", "rel_error"]
EXTRA_COLUMNS = ["local_error", "precision_bits", "flag"]
FIXED_X_COLUMNS = ["x", "n", "N", "alpha", "beta", "exact_logabs", "exact_sign",
                   "formula_logabs", "formula_sign", "abs_ratio_minus_1"]

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3
MODES = ("exact", "asym", "both", "verify")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    alpha: float = 0.3
    beta: float = 0.7
    c: float | None = 0.5
    N: list[int] | None = None  # explicit node counts paired with n_list
    n_list: list[int] = field(default_factory=lambda: [64])
    grid: list[complex] = field(default_factory=list)
    mode: str = "both"
    output: str = "csv"
    precision_bits: int | None = None
    x0: float | None = None
    x1: float | None = None
    delta: float | None = None
    jobs: int = 1
    filter: str | None = None

    def validate(self):
        if not (self.alpha > -1):
            raise UsageError(f"alpha: must exceed -1, got {self.alpha}")
        if not (self.beta > -1):
            raise UsageError(f"beta: must exceed -1, got {self.beta}")
        if self.mode not in MODES:
            raise UsageError(f"mode: expected one of {MODES}, got {self.mode!r}")
        if self.output not in ("csv", "json"):
            raise UsageError(f"output: expected csv or json, got {self.output!r}")
        if not self.n_list or any(n < 1 for n in self.n_list):
            raise UsageError(f"n: degrees must be positive, got {self.n_list}")
        if self.N is not None:
            if len(self.N) != len(self.n_list):
                raise UsageError("N: need one N per degree in n")
            for n, N in zip(self.n_list, self.N):
                if not n < N:
                    raise UsageError(f"N: need n < N, got n={n}, N={N}")
        elif self.c is None or not 0 < self.c < 1:
            raise UsageError(f"c: must lie in (0, 1), got {self.c}")
        if self.precision_bits is not None and self.precision_bits < 64:
            raise UsageError(f"precision_bits: need at least 64, got {self.precision_bits}")
        if self.jobs < 1:
            raise UsageError(f"jobs: need at least 1, got {self.jobs}")

    def params(self) -> list[HahnParams]:
        if self.N is not None:
            return [HahnParams(self.alpha, self.beta, N, n) for n, N in zip(self.n_list, self.N)]
        try:
            return [HahnParams.from_ratio(self.alpha, self.beta, self.c, n) for n in self.n_list]
        except ValueError as e:
            raise UsageError(f"c: {e}") from None

    def bundle(self, p: HahnParams) -> MapBundle:
        try:
            return MapBundle.build(p, x0=self.x0, x1=self.x1, delta=self.delta)
        except ValueError as e:
            raise UsageError(f"region_overrides: {e}") from None

    def precision(self, n: int) -> PrecisionContext:
        if self.precision_bits is not None:
            return PrecisionContext(self.precision_bits)
        return PrecisionContext.for_degree(n)


# -- parsing -------------------------------------------------------------------

def parse_point(text: str) -> complex:
    """'re,im' or 're' -> complex."""
    parts = text.split(",")
    if not 1 <= len(parts) <= 2:
        raise UsageError(f"z: cannot parse {text!r}; expected 're,im'")
    try:
        vals = [float(s) for s in parts]
    except ValueError:
        raise UsageError(f"z: cannot parse {text!r}; expected 're,im'") from None
    if not all(math.isfinite(v) for v in vals):
        raise UsageError(f"z: non-finite coordinate in {text!r}")
    return complex(vals[0], vals[1] if len(vals) == 2 else 0.0)


def parse_rect(text: str) -> list[complex]:
    """'re0:re1:step,im0:im1:step' -> row-major list of grid points (ends included)."""
    try:
        axes = []
        for part in text.split(","):
            lo, hi, step = (float(s) for s in part.split(":"))
            if step <= 0 or hi < lo:
                raise ValueError
            k = int(math.floor((hi - lo) / step + 1e-9))
            axes.append([lo + i * step for i in range(k + 1)])
        re_ax, im_ax = axes
    except ValueError:
        raise UsageError(f"grid: cannot parse {text!r}; expected 're0:re1:step,im0:im1:step'") from None
    return [complex(x, y) for y in im_ax for x in re_ax]


def _int_list(text: str, name: str) -> list[int]:
    try:
        return [int(s) for s in str(text).split(",") if s]
    except ValueError:
        raise UsageError(f"{name}: expected comma-separated integers, got {text!r}") from None


def _load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"config: {e}") from None
    if not isinstance(raw, dict):
        raise UsageError("config: top level must be an object")
    known = {f.name for f in fields(RunConfig)} | {"n", "z", "rect"}
    bad = sorted(set(raw) - known)
    if bad:
        raise UsageError(f"config: unknown field(s) {', '.join(bad)}")
    return raw


def build_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    raw = _load_config(args.config) if getattr(args, "config", None) else {}

    def pick(name, flag_value):
        return flag_value if flag_value is not None else raw.get(name)

    for name in ("alpha", "beta", "c", "mode", "output", "precision_bits", "x0", "x1",
                 "delta", "jobs", "filter"):
        v = pick(name, getattr(args, name, None))
        if v is not None:
            setattr(cfg, name, v)
    n = pick("n", getattr(args, "n", None))
    if n is None:
        n = raw.get("n_list")
    if n is not None:
        cfg.n_list = _int_list(n, "n") if isinstance(n, str) else [int(v) for v in
                                                                  (n if isinstance(n, list) else [n])]
    bigN = pick("N", getattr(args, "N", None))
    if bigN is not None:
        cfg.N = _int_list(bigN, "N") if isinstance(bigN, str) else [int(v) for v in
                                                                   (bigN if isinstance(bigN, list) else [bigN])]
    z_flags = getattr(args, "z", None)
    rect_flags = getattr(args, "rect", None)
    if z_flags or rect_flags:
        pts = [parse_point(s) for s in (z_flags or [])]
        for r in rect_flags or []:
            pts += parse_rect(r)
    else:
        pts = [parse_point(s) if isinstance(s, str) else complex(*s) for s in raw.get("z", [])]
        for r in raw.get("rect", []):
            pts += parse_rect(r)
        pts += [parse_point(s) if isinstance(s, str) else complex(*s) for s in raw.get("grid", [])]
    cfg.grid = pts
    for name, typ in (("alpha", float), ("beta", float), ("jobs", int)):
        try:
            setattr(cfg, name, typ(getattr(cfg, name)))
        except (TypeError, ValueError):
            raise UsageError(f"{name}: bad value {getattr(cfg, name)!r}") from None
    cfg.validate()
    return cfg


# -- formatting ----------------------------------------------------------------

def fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.16e}"


def _scaled_cols(s: Scaled | None):
    if s is None:
        return None, None
    if s.mant == 0:
        return -math.inf, 0.0
    return s.log_abs, s.phase


def render(columns, rows, output, trailer=()) -> str:
    buf = io.StringIO()
    if output == "json":
        doc = {"version": __version__, "schema": SCHEMA, "columns": columns,
               "rows": [{c: _json_val(r.get(c)) for c in columns} for r in rows],
               "summary": list(trailer)}
        json.dump(doc, buf, indent=1, sort_keys=False)
        buf.write("\n")
        return buf.getvalue()
    buf.write(HEADER + "\n")
    buf.write(",".join(columns) + "\n")
    for r in rows:
        buf.write(",".join(fmt(r.get(c)) for c in columns) + "\n")
    for line in trailer:
        buf.write("# " + line + "\n")
    return buf.getvalue()


def _json_val(v):
    if isinstance(v, float):
        return fmt(v) if not math.isfinite(v) else float(fmt(v))
    return v


# -- work units (top level so worker processes can pickle them) ---------------------

def _eval_task(task):
    cfg, p, z = task
    bundle = cfg.bundle(p)
    ctx = cfg.precision(p.n)
    row = {"z_re": z.real, "z_im": z.imag, "n": p.n, "N": p.bigN, "alpha": p.alpha,
           "beta": p.beta, "region": str(classify(bundle, z)), "precision_bits": ctx.bits,
           "flag": ""}
    exact = asym = None
    if cfg.mode in ("exact", "both"):
        try:
            exact = exact_scaled(p, z, ctx)
        except PrecisionError as e:
            row["flag"] = f"precision: {e}"
    if cfg.mode in ("asym", "both"):
        try:
            asym = asym_monic(bundle, z).scaled
        except ValueError as e:
            row["flag"] = f"asym: {e}"
    row["exact_logmag"], row["exact_phase"] = _scaled_cols(exact)
    row["asym_logmag"], row["asym_phase"] = _scaled_cols(asym)
    if exact is not None and asym is not None:
        row["rel_error"] = rel_diff(asym, exact)
    return row


def _convergence_task(task):
    cfg, p, z = task
    bundle = cfg.bundle(p)
    ctx = cfg.precision(p.n)
    row = {"z_re": z.real, "z_im": z.imag, "n": p.n, "N": p.bigN, "alpha": p.alpha,
           "beta": p.beta, "region": str(classify(bundle, z)), "precision_bits": ctx.bits,
           "flag": ""}
    try:
        e = point_error(p, z, bundle=bundle, ctx=ctx)
    except PrecisionError as err:
        row["flag"] = f"precision: {err}"
        return row
    row["exact_logmag"], row["exact_phase"] = _scaled_cols(e.exact)
    row["asym_logmag"], row["asym_phase"] = _scaled_cols(e.asym)
    row["rel_error"] = e.rel_error
    row["local_error"] = e.local_error
    if e.near_zero:
        row["flag"] = "near-zero"
    return row


def _fixed_x_task(task):
    cfg, p, x = task
    ctx = cfg.precision(p.n)
    row = {"x": x, "n": p.n, "N": p.bigN, "alpha": p.alpha, "beta": p.beta}
    f = asym_fixed_x(p, x)
    q = eval_Q_exact(p, x, ctx)
    mp = ctx.mp()
    row["formula_logabs"] = f.log_abs
    row["formula_sign"] = f.sign
    if q == 0:
        row["exact_logabs"], row["exact_sign"] = -math.inf, 0
    else:
        row["exact_logabs"] = float(mp.log(abs(q)))
        row["exact_sign"] = 1 if q.real > 0 else -1
    if f.zero_leading or q == 0:
        row["abs_ratio_minus_1"] = math.nan
    else:
        r = math.exp(row["exact_logabs"] - f.log_abs) * row["exact_sign"] * f.sign
        row["abs_ratio_minus_1"] = abs(r - 1)
    return row


def _run(fn, tasks, jobs):
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks))  # map preserves input order


# -- verbs ---------------------------------------------------------------------

def cmd_eval(cfg: RunConfig, out) -> int:
    if cfg.mode == "verify":
        return cmd_verify(cfg, out)
    if not cfg.grid:
        raise UsageError("z: no evaluation points given (use --z or --rect)")
    tasks = [(cfg, p, z) for p in cfg.params() for z in cfg.grid]
    rows = _run(_eval_task, tasks, cfg.jobs)
    out.write(render(COLUMNS + EXTRA_COLUMNS, rows, cfg.output))
    return EXIT_PRECISION if any(r["flag"].startswith("precision") for r in rows) else EXIT_OK


def cmd_verify(cfg: RunConfig, out, inject_bug: bool = False) -> int:
    from . import verify
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        if inject_bug:
            with verify.inject_branch_bug():
                results = verify.run_checks(cfg.filter, cfg.c or 0.5, cfg.alpha, cfg.beta)
        else:
            results = verify.run_checks(cfg.filter, cfg.c or 0.5, cfg.alpha, cfg.beta)
    if not results:
        raise UsageError(f"filter: no check matches {cfg.filter!r}")
    failed = [r for r in results if not r.passed]
    if cfg.output == "json":
        doc = {"version": __version__, "schema": SCHEMA, "passed": not failed,
               "checks": [{**r.as_dict(), "residual": _json_val(r.residual)} for r in results]}
        out.write(json.dumps(doc, indent=1) + "\n")
    else:
        out.write(HEADER + "\n")
        out.write("check,residual,tolerance,status,detail\n")
        for r in results:
            out.write(f"{r.group}.{r.name},{fmt(r.residual)},{fmt(r.tolerance)},"
                      f"{'PASS' if r.passed else 'FAIL'},{r.detail.replace(',', ';')}\n")
        out.write(f"# {len(results) - len(failed)}/{len(results)} passed\n")
    return EXIT_VERIFY if failed else EXIT_OK


def _doubling(ns) -> bool:
    ns = sorted(ns)
    return len(ns) >= 3 and all(b == 2 * a for a, b in zip(ns, ns[1:]))


def cmd_convergence(cfg: RunConfig, out) -> int:
    if not _doubling(cfg.n_list):
        raise UsageError(f"n: need at least 3 doubling degrees, got {cfg.n_list}")
    if not cfg.grid:
        raise UsageError("z: no evaluation points given (use --z or --rect)")
    params = cfg.params()
    tasks = [(cfg, p, z) for z in cfg.grid for p in params]
    rows = _run(_convergence_task, tasks, cfg.jobs)
    trailer = []
    for i, z in enumerate(cfg.grid):
        block = rows[i * len(params):(i + 1) * len(params)]
        good = [r for r in block if not r["flag"].startswith("precision")
                and r.get("rel_error") not in (None, 0.0)]
        line = f"slope z={fmt(z.real)},{fmt(z.imag)} region={block[0]['region']}"
        if len(good) >= 2:
            line += f" pointwise={fmt(loglog_slope([r['n'] for r in good], [r['rel_error'] for r in good]))}"
            loc = [r for r in good if r.get("local_error")]
            if len(loc) >= 2:
                line += f" local={fmt(loglog_slope([r['n'] for r in loc], [r['local_error'] for r in loc]))}"
        else:
            line += " pointwise=nan"
        line += f" used={len(good)}/{len(block)}"
        trailer.append(line)
    out.write(render(COLUMNS + EXTRA_COLUMNS, rows, cfg.output, trailer))
    return EXIT_OK


def cmd_fixed_x(cfg: RunConfig, out, xs: list[float]) -> int:
    if not xs:
        raise UsageError("x: no points given")
    if any(x == -0.5 for x in xs):
        raise UsageError("x: -1/2 separates the two fixed-x formulas")
    tasks = [(cfg, p, x) for x in xs for p in cfg.params()]
    try:
        rows = _run(_fixed_x_task, tasks, cfg.jobs)
    except PrecisionError as e:
        print(f"hahn-asym: precision failure: {e}", file=sys.stderr)
        return EXIT_PRECISION
    out.write(render(FIXED_X_COLUMNS, rows, cfg.output))
    return EXIT_OK


# -- entry point ---------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(sp):
    sp.add_argument("--config", help="JSON file with RunConfig fields; flags win")
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--beta", type=float)
    sp.add_argument("--c", type=float, help="ratio n/N in (0, 1)")
    sp.add_argument("--n", help="degree or comma-separated degrees")
    sp.add_argument("--N", help="explicit node counts, one per degree (overrides --c)")
    sp.add_argument("--output", choices=("csv", "json"))
    sp.add_argument("--precision-bits", dest="precision_bits", type=int,
                    help="oracle working precision (overrides HAHN_ASYM_PRECISION_BITS)")
    sp.add_argument("--jobs", type=int, help="worker processes")
    sp.add_argument("--x0", type=float)
    sp.add_argument("--x1", type=float)
    sp.add_argument("--delta", type=float)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="hahn-asym", description="Hahn polynomial oracle and uniform asymptotics")
    ap.add_argument("--version", action="version", version=f"hahn-asym {__version__}")
    sub = ap.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", help="evaluate at points")
    _common(e)
    e.add_argument("--z", action="append", help="point 're,im' (repeatable)")
    e.add_argument("--rect", action="append", help="grid 're0:re1:step,im0:im1:step'")
    e.add_argument("--mode", choices=MODES)

    v = sub.add_parser("verify", help="run the invariant suite")
    _common(v)
    v.add_argument("--filter", help="substring of group.check names")
    v.add_argument("--inject-branch-bug", action="store_true", help=argparse.SUPPRESS)

    c = sub.add_parser("convergence", help="error table over doubling degrees with slopes")
    _common(c)
    c.add_argument("--z", action="append")
    c.add_argument("--rect", action="append")

    f = sub.add_parser("fixed-x", help="fixed real x against the large-n limit formulas")
    _common(f)
    f.add_argument("--x", action="append", type=float, required=True)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        cfg = build_config(args)
        if args.verb == "eval":
            return cmd_eval(cfg, out)
        if args.verb == "verify":
            return cmd_verify(cfg, out, inject_bug=args.inject_branch_bug)
        if args.verb == "convergence":
            return cmd_convergence(cfg, out)
        return cmd_fixed_x(cfg, out, args.x)
    except UsageError as e:
        print(f"hahn-asym: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionError as e:
        print(f"hahn-asym: precision failure: {e}", file=sys.stderr)
        return EXIT_PRECISION


if __name__ == "__main__":
    sys.exit(main())
