"""Command-line front end.

    zdlab zd --datum cos.json --t 0.25 --out runs/zd
    zdlab sweep --datum cos.json --t 1 --kmax 8 --eps 0.4,0.2,0.1,0.05
    zdlab raney --kmax 3 --dmax 3 --M 3
    zdlab verify --datum cos.json

Exit codes: 0 success, 1 property failure, 2 usage or config error,
3 numerical failure.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from .characteristics import CausticError, ScanResolutionError, alternating_sum, branches
from .fourier import TorusFunction, grid_points
from .kinetic import (QuadratureError, as_profile, godunov_reference, l1_distance,
                      riemann_datum, riemann_entropy_solution, trotter_entropy)
from .properties import DEFAULT_SEED, run_suite
from .raney import verify_exhaustive
from .spectral import bo_epsilon_profile, epsilon_sweep, k_trust, zd_profile

EXIT_OK, EXIT_PROPERTY, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3

MAX_K = 4096
MAX_GRID = 1 << 16
BUILTIN_DATA = {
    "cos": lambda: TorusFunction.trig(0.0, [1.0]),
    "2cos": lambda: TorusFunction.trig(0.0, [2.0]),
    "riemann": lambda: riemann_datum(1024),
}


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    datum: dict
    times: list = field(default_factory=lambda: [0.25])
    K: int = 512
    k_max: int | None = None
    grid_n: int = 256
    n_quad: int = 1024
    epsilons: list = field(default_factory=list)
    seed: int = DEFAULT_SEED
    out: str = "out"
    n_steps: list = field(default_factory=lambda: [4, 8, 16, 32, 64])
    d_max: int = 3
    M: int = 3
    reference: str = "auto"
    ref_cells: int = 8192

    def __post_init__(self):
        if not all(math.isfinite(t) for t in self.times):
            raise ConfigError("times must be finite")
        if not 8 <= self.K <= MAX_K:
            raise ConfigError(f"K must lie in [8, {MAX_K}]")
        if self.k_max is not None and self.k_max < 0:
            raise ConfigError("k_max must be non-negative")
        if self.grid_n < 4 or self.grid_n > MAX_GRID or self.grid_n & (self.grid_n - 1):
            raise ConfigError(f"grid must be a power of two in [4, {MAX_GRID}]")
        if self.n_quad < 128:
            raise ConfigError("n_quad must be >= 128")
        if not all(math.isfinite(e) for e in self.epsilons):
            raise ConfigError("epsilons must be finite")
        if self.reference not in ("auto", "exact", "godunov"):
            raise ConfigError("reference must be auto, exact or godunov")

    @property
    def function(self):
        return TorusFunction.from_dict(self.datum)

    @property
    def kmax(self):
        return k_trust(self.K) if self.k_max is None else self.k_max

    def digest(self):
        d = asdict(self)
        d.pop("out")  # where results go does not change them
        blob = json.dumps(d, sort_keys=True, default=float)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


# ------------------------------------------------------------------ output

def _fmt(v):
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return "nan" if v is not None else ""
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.17g}"


def write_csv(path, command, cfg, header, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"# zdlab {command} config={cfg.digest()}", ",".join(header)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n")
    return path


def write_json(path, payload):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=1, sort_keys=True, default=float) + "\n")
    return path


def _tag(t):
    return f"{t:g}"


# ---------------------------------------------------------------- commands

def cmd_zd(cfg):
    u0 = cfg.function
    x = grid_points(cfg.grid_n)
    out = Path(cfg.out)
    summary = []
    for t in cfg.times:
        spec = zd_profile(u0, t, cfg.K, cfg.kmax)(x)
        quad = as_profile(u0, t, x, cfg.n_quad)
        char = np.empty_like(x)
        for i, xi in enumerate(x):
            try:
                char[i] = alternating_sum(branches(u0, t, xi))
            except CausticError:
                char[i] = np.nan
        for name, vals in (("spectral", spec), ("quadrature", quad), ("characteristics", char)):
            write_csv(out / f"zd_{name}_t{_tag(t)}.csv", "zd", cfg, ["x", "value"], zip(x, vals))
        ok = ~np.isnan(char)
        summary.append((t, float(np.max(np.abs(spec - quad))),
                        float(np.max(np.abs(spec[ok] - char[ok]), initial=0.0)),
                        float(np.max(np.abs(quad[ok] - char[ok]), initial=0.0)),
                        int(np.sum(~ok))))
    write_csv(out / "zd_summary.csv", "zd", cfg,
              ["t", "spectral_vs_quadrature", "spectral_vs_characteristics",
               "quadrature_vs_characteristics", "caustic_points"], summary)
    for row in summary:
        print(f"t={_tag(row[0])}: max |diff| spec/quad {row[1]:.3e}, "
              f"spec/char {row[2]:.3e}, quad/char {row[3]:.3e}, caustic points {row[4]}")
    return EXIT_OK


def cmd_bo_eps(cfg):
    if not cfg.epsilons:
        raise ConfigError("--eps is required")
    if any(e <= 0 for e in cfg.epsilons):
        raise ConfigError("epsilons must be positive")
    u0 = cfg.function
    x = grid_points(cfg.grid_n)
    for t in cfg.times:
        for e in cfg.epsilons:
            vals = bo_epsilon_profile(u0, e, t, cfg.K, cfg.kmax)(x)
            write_csv(Path(cfg.out) / f"bo_eps{_tag(e)}_t{_tag(t)}.csv", "bo-eps", cfg,
                      ["x", "value"], zip(x, vals))
    return EXIT_OK


def cmd_sweep(cfg):
    if not cfg.epsilons:
        raise ConfigError("--eps is required and must be non-empty")
    u0 = cfg.function
    for t in cfg.times:
        rows = epsilon_sweep(u0, t, cfg.kmax, cfg.epsilons, cfg.K)
        write_csv(Path(cfg.out) / f"sweep_t{_tag(t)}.csv", "sweep", cfg,
                  ["epsilon", "k_max", "max_abs_error"],
                  [(r.epsilon, r.k_max, r.max_abs_error) for r in rows])
        for r in rows:
            print(f"t={_tag(t)} eps={r.epsilon:g}: {r.max_abs_error:.6e}")
    return EXIT_OK


def cmd_burgers(cfg):
    u0 = cfg.function
    rows = []
    for t in cfg.times:
        for xi in grid_points(cfg.grid_n):
            b = branches(u0, t, xi)
            rows.append((t, xi, b.n_roots, b.caustic) + b.roots)
    width = max(len(r) for r in rows) - 4
    rows = [r + (None,) * (width + 4 - len(r)) for r in rows]
    write_csv(Path(cfg.out) / "branches.csv", "burgers", cfg,
              ["t", "x", "n_roots", "caustic"] + [f"y{i}" for i in range(width)], rows)
    return EXIT_OK


def _is_riemann(u0):
    return u0 == riemann_datum(len(u0.values)) if u0.kind == "grid" else False


def cmd_trotter(cfg):
    if len(cfg.times) != 1 or cfg.times[0] < 0:
        raise ConfigError("trotter takes a single non-negative --t")
    t = cfg.times[0]
    u0 = cfg.function
    mode = cfg.reference
    if mode == "auto":
        mode = "exact" if _is_riemann(u0) else "godunov"
    if mode == "exact":
        if not _is_riemann(u0):
            raise ConfigError("the closed-form reference exists only for the Riemann datum")
        ref = lambda x: riemann_entropy_solution(t, x)  # noqa: E731
    else:
        ref = godunov_reference(u0, t, cfg.ref_cells)
    rows = []
    for n in cfg.n_steps:
        v = trotter_entropy(u0, t, n, cfg.grid_n, cfg.n_quad)
        rows.append((n, l1_distance(v, ref)))
        print(f"n={n}: L1 error {rows[-1][1]:.6e}")
    write_csv(Path(cfg.out) / f"trotter_t{_tag(t)}.csv", "trotter", cfg, ["n", "l1_error"], rows)
    return EXIT_OK


def cmd_raney(cfg):
    k_max = 3 if cfg.k_max is None else cfg.k_max
    if k_max < 1 or cfg.d_max < 0 or cfg.M < 0:
        raise ConfigError("need kmax >= 1, dmax >= 0, M >= 0")
    try:
        rows = verify_exhaustive(k_max, cfg.d_max, cfg.M)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    write_csv(Path(cfg.out) / "raney.csv", "raney", cfg,
              ["k", "d", "M", "words_checked", "failures"],
              [(r.k, r.d, r.M, r.words_checked, r.failures) for r in rows])
    checked = sum(r.words_checked for r in rows)
    failures = sum(r.failures for r in rows)
    note = " (vacuous: no admissible words)" if checked == 0 else ""
    print(f"{checked} words checked, {failures} failures{note}")
    return EXIT_OK if failures == 0 else EXIT_PROPERTY


def cmd_verify(cfg):
    reports = run_suite(cfg.function, times=tuple(cfg.times), seed=cfg.seed)
    h = cfg.digest()
    payload = []
    for r in reports:
        d = r.to_dict()
        d["config_hash"] = h
        payload.append(d)
    write_json(Path(cfg.out) / "verify.json", payload)
    failed = [r for r in reports if not r.passed]
    print(f"{len(reports) - len(failed)}/{len(reports)} properties pass")
    for r in failed:
        print(f"FAIL {r.property}: measured {r.measured:.6e} bound {r.bound:.6e} ({r.inputs})")
    return EXIT_OK if not failed else EXIT_PROPERTY


COMMANDS = {
    "zd": cmd_zd, "bo-eps": cmd_bo_eps, "sweep": cmd_sweep, "burgers": cmd_burgers,
    "trotter": cmd_trotter, "raney": cmd_raney, "verify": cmd_verify,
}


# ----------------------------------------------------------------- parsing

def _floats(s):
    try:
        return [float(a) for a in s.split(",") if a.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {s!r}") from exc


def _ints(s):
    try:
        return [int(a) for a in s.split(",") if a.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {s!r}") from exc


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with ExperimentConfig fields")
    common.add_argument("--datum", help="datum JSON file, or one of: " + ", ".join(BUILTIN_DATA))
    common.add_argument("--t", type=_floats, dest="times", help="comma-separated times")
    common.add_argument("--K", type=int, help="operator truncation")
    common.add_argument("--kmax", type=int, dest="k_max", help="highest Fourier mode / k bound")
    common.add_argument("--eps", type=_floats, dest="epsilons", help="comma-separated dispersions")
    common.add_argument("--grid", type=int, dest="grid_n", help="grid size (power of two)")
    common.add_argument("--nquad", type=int, dest="n_quad", help="initial quadrature panels")
    common.add_argument("--seed", type=int)
    common.add_argument("--out", help="output directory")
    parser = argparse.ArgumentParser(prog="zdlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "trotter":
            p.add_argument("--n", type=_ints, dest="n_steps", help="comma-separated step counts")
            p.add_argument("--reference", choices=["auto", "exact", "godunov"])
            p.add_argument("--ref-cells", type=int, dest="ref_cells")
        if name == "raney":
            p.add_argument("--dmax", type=int, dest="d_max")
            p.add_argument("--M", type=int)
    return parser


def _load_datum(spec):
    if spec is None:
        raise ConfigError("--datum is required")
    if isinstance(spec, dict):
        return spec
    path = Path(spec)
    if path.is_file():
        try:
            return TorusFunction.load(path).to_dict()
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise ConfigError(f"cannot read datum {spec}: {exc}") from exc
    if spec in BUILTIN_DATA:
        return BUILTIN_DATA[spec]().to_dict()
    raise ConfigError(f"datum file not found: {spec}")


def config_from_args(args):
    values = {}
    if args.config:
        try:
            values = json.loads(Path(args.config).read_text())
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(values, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(values) - {f.name for f in fields(ExperimentConfig)}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    for f in fields(ExperimentConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            values[f.name] = v
    if args.command == "raney":
        values.setdefault("datum", {"type": "trig", "mean": 0.0, "cos": [], "sin": []})
    else:
        values["datum"] = _load_datum(values.get("datum"))
        TorusFunction.from_dict(values["datum"])
    if args.command == "verify":
        values.setdefault("times", [0.3, 1.0])
    try:
        return ExperimentConfig(**values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        return COMMANDS[args.command](cfg)
    except (QuadratureError, ScanResolutionError, np.linalg.LinAlgError,
            FloatingPointError, RuntimeError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ConfigError, ValueError, KeyError, TypeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
