"""Command-line front end: eval, meansquare, hunt, polygon.

Configuration is a flat key = value file plus positional key=value
overrides on the command line, e.g.

    iterzeta eval m=1 sigma=0.5 t=20..30 step=0.5 table=zeros.txt out=e.csv

Every output file gets a sibling manifest (<out>.manifest) whose
uncommented lines are themselves a valid config file, so a run can be
reproduced from its manifest alone.  Numeric CSV columns use 17
significant digits and re-runs are byte-identical.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .errors import (BranchObstruction, ComputationError, ValidationError)
from .eta import (QuadSpec, check_guard, eta_tilde_weighted, eta_vertical,
                  y_m)
from .hunt import HuntConfig, hunt_value
from .dirichlet import mean_square_error
from .polygon import RadiiSet, polygon_angles
from .primes import sieve_primes
from .rays import log_zeta_horizontal
from .torus import construct_theta, save_theta
from .zetafun import ComplexPoint, zeta
from .zeros import ZeroTable, bundled_table, load_zero_table

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_HONEST_FAILURE = 3
EXIT_NUMERIC = 4
EXIT_IO = 5


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _parse_value(text: str):
    text = text.strip()
    for caster in (int, float):
        try:
            return caster(text)
        except ValueError:
            pass
    return text


def parse_config_file(path) -> dict:
    cfg = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValidationError(
                    f"{path}:{lineno}: expected 'key = value', got {line!r}")
            key, _, val = line.partition("=")
            cfg[key.strip()] = _parse_value(val)
    return cfg


def parse_overrides(tokens) -> dict:
    cfg = {}
    for tok in tokens:
        if "=" not in tok:
            raise ValidationError(
                f"override {tok!r} is not of the form key=value")
        key, _, val = tok.partition("=")
        cfg[key.strip()] = _parse_value(val)
    return cfg


def _need(cfg: dict, key: str):
    if key not in cfg:
        raise ValidationError(f"field {key}: required but missing")
    return cfg[key]


def _as_int(cfg: dict, key: str, default=None) -> int:
    if key not in cfg:
        if default is None:
            raise ValidationError(f"field {key}: required but missing")
        return default
    val = cfg[key]
    if isinstance(val, int):
        return val
    raise ValidationError(f"field {key}: expected an integer, got {val!r}")


def _as_float(cfg: dict, key: str, default=None) -> float:
    if key not in cfg:
        if default is None:
            raise ValidationError(f"field {key}: required but missing")
        return default
    val = cfg[key]
    if isinstance(val, (int, float)):
        return float(val)
    raise ValidationError(f"field {key}: expected a number, got {val!r}")


def _as_complex(cfg: dict, key: str) -> complex:
    val = _need(cfg, key)
    if isinstance(val, (int, float)):
        return complex(val)
    text = str(val).strip().replace(" ", "")
    try:
        z = complex(text.replace("i", "j"))
    except ValueError:
        raise ValidationError(
            f"field {key}: malformed complex literal {val!r}") from None
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise ValidationError(f"field {key}: must be finite")
    return z


def _as_str(cfg: dict, key: str, default=None) -> str:
    if key not in cfg:
        if default is None:
            raise ValidationError(f"field {key}: required but missing")
        return default
    return str(cfg[key])


def _t_grid(cfg: dict) -> np.ndarray:
    spec = str(_need(cfg, "t"))
    step = _as_float(cfg, "step", 0.5)
    if step <= 0.0:
        raise ValidationError("field step: must be positive")
    if ".." in spec:
        lo_s, _, hi_s = spec.partition("..")
        try:
            lo, hi = float(lo_s), float(hi_s)
        except ValueError:
            raise ValidationError(
                f"field t: malformed range {spec!r}") from None
    else:
        try:
            lo = hi = float(spec)
        except ValueError:
            raise ValidationError(f"field t: malformed value {spec!r}") from None
        return np.array([lo])
    if hi <= lo:
        return np.array([])
    n = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(n)


def _load_table(cfg: dict, required: bool) -> ZeroTable:
    if "table" in cfg:
        return load_zero_table(str(cfg["table"]))
    if required:
        raise ValidationError(
            "field table: required; vertical quadrature needs the zero "
            "ordinates to pad and count zeros right of sigma")
    return bundled_table()


@dataclass
class RunManifest:
    command: str
    config: dict
    table_label: str = ""
    coverage: float = 0.0
    wall_time: float = 0.0
    rows: int = 0
    skipped: int = 0
    version: str = field(default=__version__)

    def write(self, out_path: str) -> str:
        path = out_path + ".manifest"
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("# run manifest; uncommented lines reproduce the run\n")
            fh.write(f"# command = {self.command}\n")
            fh.write(f"# version = {self.version}\n")
            if self.table_label:
                fh.write(f"# zero_table = {self.table_label}\n")
                fh.write(f"# coverage = {self.coverage!r}\n")
            fh.write(f"# wall_time_s = {self.wall_time:.3f}\n")
            fh.write(f"# rows = {self.rows}\n")
            fh.write(f"# skipped = {self.skipped}\n")
            for key in sorted(self.config):
                fh.write(f"{key} = {self.config[key]}\n")
        return path


def _write_csv(path: str, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _parallel_map(fn, items, workers: int):
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


_EVAL_HEADER = ("m", "sigma", "t", "re_zeta", "im_zeta", "re_log_zeta",
                "im_log_zeta", "re_eta_tilde", "im_eta_tilde", "re_eta",
                "im_eta", "re_y", "im_y", "residual", "est_error")


def cmd_eval(cfg: dict) -> int:
    m = _as_int(cfg, "m")
    sigma = _as_float(cfg, "sigma")
    out = _as_str(cfg, "out")
    workers = _as_int(cfg, "workers", 1)
    table = _load_table(cfg, required=True)
    quad = QuadSpec(abs_tol=_as_float(cfg, "abs_tol", 1e-8))
    ts = _t_grid(cfg)
    start = time.monotonic()
    skipped = [0]

    def row(t: float):
        try:
            check_guard(table, sigma, t)
            z = zeta(ComplexPoint(sigma, t))
            lz = log_zeta_horizontal(sigma, t, table=table)
            et = eta_tilde_weighted(m, sigma, t, table=table, quad=quad)
            ev = eta_vertical(m, sigma, t, table, quad=quad)
            ym = y_m(m, sigma, t, table)
        except BranchObstruction:
            skipped[0] += 1
            return None
        resid = abs(ev.value - ((1j ** m) * et.value + ym))
        vals = (float(m), sigma, t, z.real, z.imag, lz.real, lz.imag,
                et.value.real, et.value.imag, ev.value.real, ev.value.imag,
                ym.real, ym.imag, resid, et.est_error + ev.est_error)
        return tuple(_fmt(v) for v in vals)

    rows = [r for r in _parallel_map(row, list(ts), workers) if r is not None]
    _write_csv(out, _EVAL_HEADER, rows)
    RunManifest("eval", cfg, table.source_label, table.coverage,
                time.monotonic() - start, len(rows), skipped[0]).write(out)
    return EXIT_OK


_MS_HEADER = ("m", "sigma", "X", "T", "mse", "bound_ratio",
              "skipped_fraction")


def cmd_meansquare(cfg: dict) -> int:
    m = _as_int(cfg, "m")
    sigma = _as_float(cfg, "sigma")
    T = _as_float(cfg, "T")
    grid_step = _as_float(cfg, "step", 0.25)
    out = _as_str(cfg, "out")
    table = _load_table(cfg, required=False)
    xs_raw = str(_need(cfg, "X"))
    try:
        xs = [int(tok) for tok in xs_raw.replace(",", " ").split()]
    except ValueError:
        raise ValidationError(
            f"field X: expected integers, got {xs_raw!r}") from None
    if not xs:
        raise ValidationError("field X: needs at least one cutoff")
    start = time.monotonic()
    rows = []
    for x in xs:
        rep = mean_square_error(m, sigma, x, T, grid_step, table)
        rows.append(tuple(_fmt(v) for v in
                          (float(rep.m), rep.sigma, float(rep.X), rep.T,
                           rep.mse, rep.bound_ratio, rep.skipped_fraction)))
    fresh = not os.path.exists(out)
    with open(out, "a", encoding="utf-8", newline="\n") as fh:
        if fresh:
            fh.write(",".join(_MS_HEADER) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")
    RunManifest("meansquare", cfg, table.source_label, table.coverage,
                time.monotonic() - start, len(rows)).write(out)
    return EXIT_OK


_HUNT_HEADER = ("m", "sigma", "re_a", "im_a", "epsilon", "t_witness",
                "torus_error", "final_error", "budget_used", "status")


def cmd_hunt(cfg: dict) -> int:
    m = _as_int(cfg, "m")
    sigma = _as_float(cfg, "sigma")
    a = _as_complex(cfg, "a")
    epsilon = _as_float(cfg, "epsilon")
    out = _as_str(cfg, "out")
    table = _load_table(cfg, required=False)
    config = HuntConfig(
        n_search=_as_int(cfg, "n_search", 5),
        delta=_as_float(cfg, "delta", 0.25),
        t_min=_as_float(cfg, "t_min", 10.0),
        t_max=_as_float(cfg, "t_max", 240.0),
        step=(_as_float(cfg, "step") if "step" in cfg else None),
        eval_budget=_as_int(cfg, "eval_budget", 48),
        min_separation=_as_float(cfg, "min_separation", 0.5))
    start = time.monotonic()
    res = hunt_value(m, sigma, a, epsilon, config, table)
    status = "success" if res.success else "failure"
    row = (format(m, "d"), _fmt(sigma), _fmt(a.real), _fmt(a.imag),
           _fmt(epsilon),
           _fmt(res.t_witness) if res.t_witness is not None else "nan",
           _fmt(res.torus_error), _fmt(res.final_error),
           format(res.budget_used, "d"), status)
    _write_csv(out, _HUNT_HEADER, [row])
    RunManifest("hunt", cfg, table.source_label, table.coverage,
                time.monotonic() - start, 1).write(out)
    print("hunt result")
    print(f"  status      = {status}")
    print(f"  t_witness   = {res.t_witness}")
    print(f"  eta_value   = {res.eta_value}")
    print(f"  target_a    = {res.target_a}")
    print(f"  final_error = {res.final_error}")
    print(f"  torus_error = {res.torus_error}")
    print(f"  budget_used = {res.budget_used}")
    print(f"  diagnostic  = {res.diagnostic}")
    return EXIT_OK if res.success else EXIT_HONEST_FAILURE


def cmd_polygon(cfg: dict) -> int:
    out = _as_str(cfg, "out")
    start = time.monotonic()
    if "radii" in cfg:
        raw = str(cfg["radii"])
        try:
            radii = np.array([float(tok)
                              for tok in raw.replace(",", " ").split()])
        except ValueError:
            raise ValidationError(
                f"field radii: expected numbers, got {raw!r}") from None
        z = _as_complex(cfg, "z") if "z" in cfg else 0.0 + 0.0j
        assign = polygon_angles(RadiiSet(radii), z)
        rows = [(format(i + 1, "d"), _fmt(r), _fmt(th))
                for i, (r, th) in enumerate(zip(radii, assign.thetas))]
        _write_csv(out, ("index", "radius", "theta"), rows)
        RunManifest("polygon", cfg, wall_time=time.monotonic() - start,
                    rows=len(rows)).write(out)
        print(f"polygon: residual = {assign.residual:.3e}, "
              f"achieved = {assign.achieved}")
        return EXIT_OK
    m = _as_int(cfg, "m")
    sigma = _as_float(cfg, "sigma")
    a = _as_complex(cfg, "a")
    epsilon = _as_float(cfg, "epsilon")
    limit = _as_int(cfg, "sieve_limit", 1_000_000)
    primes = sieve_primes(limit)
    res = construct_theta(m, sigma, a, epsilon, primes)
    save_theta(res, out)
    RunManifest("polygon", cfg, wall_time=time.monotonic() - start,
                rows=int(res.primes.size)).write(out)
    print(f"construct: U={res.U} N={res.N} primes={res.primes.size} "
          f"final_error={res.final_error:.6g}")
    return EXIT_OK


_COMMANDS = {"eval": cmd_eval, "meansquare": cmd_meansquare,
             "hunt": cmd_hunt, "polygon": cmd_polygon}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="iterzeta",
        description="iterated integrals of log zeta: evaluation, "
                    "mean-square studies, and target hunts")
    parser.add_argument("--version", action="version",
                        version=f"iterzeta {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
            ("eval", "tabulate zeta, log zeta, both iterated integrals, "
                     "the zero sum and the bridge residual over a t-grid"),
            ("meansquare", "mean-square distance to the prime sum for a "
                           "list of cutoffs"),
            ("hunt", "search for t realizing a target value"),
            ("polygon", "angle tables: explicit radii or the full "
                        "construction pipeline")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="key = value file")
        p.add_argument("overrides", nargs="*", metavar="key=value",
                       help="individual settings; override the config file")
    args = parser.parse_args(argv)
    try:
        cfg = {}
        if args.config:
            cfg.update(parse_config_file(args.config))
        cfg.update(parse_overrides(args.overrides))
        return _COMMANDS[args.command](cfg)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ComputationError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"i/o failure: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
