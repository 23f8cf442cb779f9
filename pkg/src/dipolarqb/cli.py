"""Command-line driver: scenario execution, sweeps, CSV and plot output.

Scenarios
    spectrum       closed-form vs numeric eigenvalue diagnostic dump
    gibbs          closed-form vs numeric thermal-state entry dump
    dephasing      open-system trajectory measures vs time
    thermal-sweep  Gibbs-state measures vs temperature
    charge         unitary-charging battery metrics vs Omega*t
    grid2d         peak metrics over a 2-D parameter grid

Configs are flat ``key = value`` text files; every key has a matching
CLI flag and flags win over the file.  Sweep axes are compact specs
``name:min:max:count[:log]`` over the eight model parameters.  CSV
output uses 17 significant digits, comma separators, and LF endings so
repeated runs are byte-identical.  ``--emit-plot`` writes a gnuplot
script next to each CSV; scripts reference the CSV, never embed data.

Exit codes: 0 success, 1 configuration error, 2 numeric failure.
"""

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .battery import capacity, orbit_peaks, work_and_power
from .dynamics import TimeGrid, charge_trajectory, evolve_lindblad
from .linalg import hermitian_eigen
from .model import ModelParams, build_hamiltonian, closed_form_spectrum
from .resources import concurrence, l1_coherence, quantum_discord
from .thermal import gibbs_closed_form, gibbs_numeric

SCENARIOS = ("spectrum", "gibbs", "dephasing", "thermal-sweep", "charge", "grid2d")
PARAM_KEYS = ("delta", "epsilon", "dm", "ksea", "field", "temperature", "omega", "gamma")

X_NAMES = {
    "dephasing": "t",
    "thermal-sweep": "T",
    "charge": "omega_t",
}
DEFAULT_OUTPUTS = {
    "dephasing": ("concurrence", "discord", "coherence"),
    "thermal-sweep": ("concurrence", "discord", "coherence"),
    "charge": ("ergotropy", "power_instant", "capacity_basis", "capacity_unitary", "coherence"),
    "grid2d": ("capacity", "coherence_max", "ergotropy_max", "power_max"),
    "spectrum": ("energy_closed", "energy_numeric", "abs_deviation"),
    "gibbs": ("closed_re", "closed_im", "numeric_re", "numeric_im", "abs_deviation"),
}
ALLOWED_OUTPUTS = {
    "dephasing": {"concurrence", "discord", "coherence"},
    "thermal-sweep": {"concurrence", "discord", "coherence"},
    "charge": {
        "ergotropy", "work", "power_instant", "power_avg", "efficiency",
        "capacity_basis", "capacity_unitary", "coherence", "discord",
    },
}
DEFAULT_SAMPLES = {"dephasing": 201, "charge": 501}


class ConfigError(ValueError):
    """Bad configuration: unknown key, malformed value, missing input."""


@dataclass
class AxisSpec:
    """Swept parameter axis, parsed from name:min:max:count[:log]."""

    name: str
    lo: float
    hi: float
    count: int
    log: bool = False

    def __post_init__(self):
        if self.name not in PARAM_KEYS:
            raise ConfigError(
                f"unknown sweep parameter {self.name!r}; choose from {', '.join(PARAM_KEYS)}"
            )
        if self.count < 2:
            raise ConfigError("sweep count must be at least 2")
        if not self.lo < self.hi:
            raise ConfigError("sweep requires min < max")
        if self.log and self.lo <= 0.0:
            raise ConfigError("log sweep requires min > 0")

    def values(self):
        if self.log:
            return np.geomspace(self.lo, self.hi, self.count)
        return np.linspace(self.lo, self.hi, self.count)

    def spec_string(self):
        base = f"{self.name}:{self.lo!r}:{self.hi!r}:{self.count}"
        return base + (":log" if self.log else "")


def parse_axis(spec):
    parts = spec.split(":")
    if len(parts) == 5 and parts[4] == "log":
        log = True
        parts = parts[:4]
    elif len(parts) == 4:
        log = False
    else:
        raise ConfigError(f"malformed sweep spec {spec!r}; want name:min:max:count[:log]")
    name = parts[0].strip()
    try:
        lo, hi, count = float(parts[1]), float(parts[2]), int(parts[3])
    except ValueError as exc:
        raise ConfigError(f"malformed sweep spec {spec!r}: {exc}") from None
    return AxisSpec(name=name, lo=lo, hi=hi, count=count, log=log)


@dataclass
class ScenarioConfig:
    scenario: str
    params: ModelParams = field(default_factory=ModelParams)
    sweep: AxisSpec = None
    second_axis: AxisSpec = None
    outputs: tuple = None  # None means scenario default
    t0: float = 0.0
    t1: float = None  # None: scenario default (10 dephasing, pi/omega charge)
    dt: float = 1e-3
    samples: int = None
    out_path: str = None
    seed: int = 0
    with_discord: bool = False

    def resolved_outputs(self):
        if self.outputs is not None:
            cols = list(self.outputs)
        else:
            cols = list(DEFAULT_OUTPUTS[self.scenario])
        if self.scenario == "charge" and self.with_discord and "discord" not in cols:
            cols.append("discord")
        return tuple(cols)

    def resolved_grid(self, params=None):
        # charge default covers one period, so it tracks the swept omega
        p = params if params is not None else self.params
        t1 = self.t1
        if t1 is None:
            t1 = np.pi / p.omega if self.scenario == "charge" else 10.0
        return TimeGrid(t0=self.t0, t1=t1, dt=self.dt)

    def resolved_samples(self):
        if self.samples is not None:
            return self.samples
        return DEFAULT_SAMPLES.get(self.scenario, 201)

    def resolved_out(self):
        return self.out_path if self.out_path else f"{self.scenario}.csv"


def validate_config(cfg):
    if cfg.scenario not in SCENARIOS:
        raise ConfigError(f"unknown scenario {cfg.scenario!r}; choose from {', '.join(SCENARIOS)}")
    if cfg.scenario in ("spectrum", "gibbs"):
        if cfg.sweep or cfg.second_axis:
            raise ConfigError(f"{cfg.scenario} is a single-point diagnostic; sweeps not supported")
        if cfg.outputs is not None:
            raise ConfigError(f"{cfg.scenario} columns are fixed; outputs not configurable")
    if cfg.scenario == "grid2d":
        if cfg.outputs is not None:
            raise ConfigError("grid2d columns are fixed; outputs not configurable")
        if not (cfg.sweep and cfg.second_axis):
            raise ConfigError("grid2d requires both sweep and sweep2 axes")
        if cfg.sweep.name == cfg.second_axis.name:
            raise ConfigError("grid2d axes must sweep different parameters")
    elif cfg.second_axis is not None:
        raise ConfigError("sweep2 is only meaningful for grid2d")
    if cfg.scenario == "thermal-sweep" and cfg.sweep and cfg.sweep.name != "temperature":
        raise ConfigError("thermal-sweep's sweep axis must be temperature")
    if cfg.outputs is not None and cfg.scenario in ALLOWED_OUTPUTS:
        bad = [c for c in cfg.outputs if c not in ALLOWED_OUTPUTS[cfg.scenario]]
        if bad:
            raise ConfigError(
                f"unknown outputs for {cfg.scenario}: {', '.join(bad)}; "
                f"allowed: {', '.join(sorted(ALLOWED_OUTPUTS[cfg.scenario]))}"
            )
    if cfg.samples is not None and cfg.samples < 2:
        raise ConfigError("samples must be at least 2")
    if cfg.scenario in ("dephasing", "charge"):
        try:
            cfg.resolved_grid()
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    return cfg


_BOOL_WORDS = {"true": True, "yes": True, "1": True, "false": False, "no": False, "0": False}


def _parse_bool(raw, key):
    word = raw.strip().lower()
    if word not in _BOOL_WORDS:
        raise ConfigError(f"{key} wants true/false, got {raw!r}")
    return _BOOL_WORDS[word]


def parse_config(text):
    """Parse flat key = value config text into a ScenarioConfig."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected key = value, got {stripped!r}")
        key, _, raw = stripped.partition("=")
        key, raw = key.strip(), raw.strip()
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        values[key] = raw

    if "scenario" not in values:
        raise ConfigError("config must set scenario")
    cfg = ScenarioConfig(scenario=values.pop("scenario"))
    pkw = {}
    for key, raw in values.items():
        try:
            if key in PARAM_KEYS:
                pkw[key] = float(raw)
            elif key in ("t0", "t1", "dt"):
                setattr(cfg, key, float(raw))
            elif key in ("samples", "seed"):
                setattr(cfg, key, int(raw))
            elif key == "sweep":
                cfg.sweep = parse_axis(raw)
            elif key == "sweep2":
                cfg.second_axis = parse_axis(raw)
            elif key == "outputs":
                cfg.outputs = tuple(c.strip() for c in raw.split(",") if c.strip())
            elif key == "out":
                cfg.out_path = raw
            elif key == "with_discord":
                cfg.with_discord = _parse_bool(raw, key)
            else:
                raise ConfigError(f"unknown config key {key!r}")
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(f"bad value for {key}: {exc}") from None
    try:
        cfg.params = ModelParams(**pkw)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return validate_config(cfg)


def serialize_config(cfg):
    """Config as flat text; parse_config(serialize_config(c)) == c."""
    lines = [f"scenario = {cfg.scenario}"]
    for key in PARAM_KEYS:
        lines.append(f"{key} = {getattr(cfg.params, key)!r}")
    lines.append(f"t0 = {cfg.t0!r}")
    if cfg.t1 is not None:
        lines.append(f"t1 = {cfg.t1!r}")
    lines.append(f"dt = {cfg.dt!r}")
    if cfg.samples is not None:
        lines.append(f"samples = {cfg.samples}")
    if cfg.sweep is not None:
        lines.append(f"sweep = {cfg.sweep.spec_string()}")
    if cfg.second_axis is not None:
        lines.append(f"sweep2 = {cfg.second_axis.spec_string()}")
    if cfg.outputs is not None:
        lines.append(f"outputs = {', '.join(cfg.outputs)}")
    if cfg.out_path is not None:
        lines.append(f"out = {cfg.out_path}")
    lines.append(f"seed = {cfg.seed}")
    if cfg.with_discord:
        lines.append("with_discord = true")
    return "\n".join(lines) + "\n"


def _format_value(v):
    return f"{float(v):.17g}"


def write_csv(path, header, rows):
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="ascii", newline="\n") as f:
        f.write(",".join(header) + "\n")
        for row in rows:
            f.write(",".join(_format_value(v) for v in row) + "\n")


def _sweep_point_path(base, name, idx, value):
    stem, ext = os.path.splitext(base)
    return f"{stem}_{name}{idx:02d}_{value:.12g}{ext}"


# ---------------------------------------------------------------- metrics

_STATE_METRICS = {
    "concurrence": concurrence,
    "coherence": l1_coherence,
    "discord": lambda rho: quantum_discord(rho).discord,
}


def _ket00_density():
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = 1.0
    return rho


def _dephasing_rows(task):
    """Worker: one dephasing trajectory -> list of CSV rows."""
    params, grid, samples, outputs = task
    times, states = evolve_lindblad(params, _ket00_density(), grid, n_samples=samples)
    rows = []
    for t, rho in zip(times, states):
        rows.append([t] + [_STATE_METRICS[name](rho) for name in outputs])
    return rows


def _thermal_row(task):
    """Worker: Gibbs-state measures at one temperature."""
    params, outputs = task
    rho = gibbs_numeric(params)
    return [params.temperature] + [_STATE_METRICS[name](rho) for name in outputs]


def _charge_rows(task):
    """Worker: one unitary charging run -> list of CSV rows."""
    params, grid, samples, outputs = task
    zeta = gibbs_numeric(params)
    times, states = charge_trajectory(params, zeta, grid, n_samples=samples)
    series = work_and_power(states, times, params)
    cap = capacity(params)
    rows = []
    for i, t in enumerate(times):
        row = [params.omega * t]
        for name in outputs:
            if name == "capacity_basis":
                row.append(cap.capacity_basis)
            elif name == "capacity_unitary":
                row.append(cap.capacity_unitary)
            elif name == "discord":
                row.append(quantum_discord(states[i]).discord)
            else:
                row.append(series[name][i])
        rows.append(row)
    return rows


def _grid_point_row(task):
    """Worker: peak orbit metrics at one 2-D grid point."""
    params, xv, yv = task
    peaks = orbit_peaks(params)
    return [xv, yv, peaks.capacity, peaks.coherence_max, peaks.ergotropy_max, peaks.power_max]


def _run_tasks(worker, tasks, jobs):
    """Map tasks to the pool, preserving order; inline when jobs == 1."""
    if jobs == 1 or len(tasks) <= 1:
        return [worker(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        chunk = max(1, len(tasks) // (4 * jobs))
        return list(pool.map(worker, tasks, chunksize=chunk))


# ---------------------------------------------------------------- scenarios

def _run_spectrum(cfg, out):
    p = cfg.params
    h = build_hamiltonian(p)
    numeric = hermitian_eigen(h).values
    closed = np.sort(closed_form_spectrum(p).nu)
    rows = [
        [k + 1, closed[k], numeric[k], abs(closed[k] - numeric[k])]
        for k in range(4)
    ]
    write_csv(out, ["level", "energy_closed", "energy_numeric", "abs_deviation"], rows)
    return [out]


def _run_gibbs(cfg, out):
    p = cfg.params
    closed = gibbs_closed_form(p).matrix()
    numeric = gibbs_numeric(p)
    rows = []
    for i in range(4):
        for j in range(4):
            c, n = closed[i, j], numeric[i, j]
            rows.append([i, j, c.real, c.imag, n.real, n.imag, abs(c - n)])
    header = ["row", "col", "closed_re", "closed_im", "numeric_re", "numeric_im", "abs_deviation"]
    write_csv(out, header, rows)
    return [out]


def _swept_params(cfg):
    """(suffix-or-None, params) runs for scenarios swept per point."""
    if cfg.sweep is None:
        return [(None, cfg.params)]
    runs = []
    for i, v in enumerate(cfg.sweep.values()):
        runs.append(((cfg.sweep.name, i, float(v)), cfg.params.replace(**{cfg.sweep.name: float(v)})))
    return runs


def _run_per_point(cfg, out, jobs, worker, x_name):
    samples = cfg.resolved_samples()
    outputs = cfg.resolved_outputs()
    runs = _swept_params(cfg)
    tasks = [(p, cfg.resolved_grid(p), samples, outputs) for _, p in runs]
    results = _run_tasks(worker, tasks, jobs)
    header = [x_name] + list(outputs)
    paths = []
    for (suffix, _), rows in zip(runs, results):
        path = out if suffix is None else _sweep_point_path(out, *suffix)
        write_csv(path, header, rows)
        paths.append(path)
    return paths


def _run_thermal_sweep(cfg, out, jobs):
    axis = cfg.sweep or AxisSpec("temperature", 0.05, 5.0, 200)
    outputs = cfg.resolved_outputs()
    tasks = [(cfg.params.replace(temperature=float(tv)), outputs) for tv in axis.values()]
    rows = _run_tasks(_thermal_row, tasks, jobs)
    write_csv(out, ["T"] + list(outputs), rows)
    return [out]


def _run_grid2d(cfg, out, jobs):
    xs = cfg.sweep.values()
    ys = cfg.second_axis.values()
    tasks = []
    for xv in xs:
        for yv in ys:
            p = cfg.params.replace(**{cfg.sweep.name: float(xv), cfg.second_axis.name: float(yv)})
            tasks.append((p, float(xv), float(yv)))
    rows = _run_tasks(_grid_point_row, tasks, jobs)
    write_csv(out, ["x", "y"] + list(DEFAULT_OUTPUTS["grid2d"]), rows)
    return [out]


def run_scenario(cfg, jobs=1):
    """Execute a validated config; returns the list of CSV paths written."""
    validate_config(cfg)
    out = cfg.resolved_out()
    if cfg.scenario == "spectrum":
        return _run_spectrum(cfg, out)
    if cfg.scenario == "gibbs":
        return _run_gibbs(cfg, out)
    if cfg.scenario == "dephasing":
        return _run_per_point(cfg, out, jobs, _dephasing_rows, X_NAMES["dephasing"])
    if cfg.scenario == "thermal-sweep":
        return _run_thermal_sweep(cfg, out, jobs)
    if cfg.scenario == "charge":
        return _run_per_point(cfg, out, jobs, _charge_rows, X_NAMES["charge"])
    return _run_grid2d(cfg, out, jobs)


# ---------------------------------------------------------------- plotting

def emit_plot_script(csv_path, scenario):
    """Write a gnuplot script next to the CSV; returns the script path."""
    if scenario not in SCENARIOS:
        raise ConfigError(f"unknown scenario {scenario!r}")
    try:
        with open(csv_path, "r", encoding="ascii") as f:
            header = f.readline().strip()
    except OSError as exc:
        raise ConfigError(f"cannot read {csv_path}: {exc}") from None
    found = header.split(",") if header else []
    script = os.path.splitext(csv_path)[0] + ".gp"
    csv_name = os.path.basename(csv_path)

    if scenario == "grid2d":
        expected = ["x", "y"] + list(DEFAULT_OUTPUTS["grid2d"])
        missing = [c for c in expected if c not in found]
        if missing:
            raise ConfigError(
                f"{csv_path}: missing columns {', '.join(missing)}; "
                f"expected {', '.join(expected)}, found {', '.join(found) or '(none)'}"
            )
        lines = [
            "set datafile separator ','",
            "set view map",
            "set multiplot layout 2,2",
        ]
        for name in DEFAULT_OUTPUTS["grid2d"]:
            col = found.index(name) + 1
            lines += [
                f"set title '{name}'",
                f"splot '{csv_name}' using 1:2:{col} with image notitle",
            ]
        lines.append("unset multiplot")
    else:
        x_name = X_NAMES.get(scenario, "level" if scenario == "spectrum" else "row")
        known = set(DEFAULT_OUTPUTS[scenario]) | ALLOWED_OUTPUTS.get(scenario, set())
        metrics = [c for c in found[1:] if c in known]
        if not found or found[0] != x_name or not metrics:
            expected = [x_name] + list(DEFAULT_OUTPUTS[scenario])
            missing = [c for c in expected if c not in found]
            raise ConfigError(
                f"{csv_path}: missing columns {', '.join(missing) or header}; "
                f"expected {', '.join(expected)}, found {', '.join(found) or '(none)'}"
            )
        lines = [
            "set datafile separator ','",
            "set key outside",
            f"set xlabel '{x_name}'",
        ]
        terms = [
            f"'{csv_name}' using 1:{found.index(m) + 1} with lines title '{m}'"
            for m in metrics
        ]
        lines.append("plot " + ", \\\n     ".join(terms))
    with open(script, "w", encoding="ascii", newline="\n") as f:
        f.write("\n".join(lines) + "\n")
    return script


# ---------------------------------------------------------------- main

class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); config errors are 1
        raise ConfigError(message)


def build_parser():
    parser = _Parser(prog="dipolar-qb", description=__doc__.splitlines()[0], add_help=True)
    parser.add_argument("scenario", choices=SCENARIOS)
    parser.add_argument("--config", help="flat key = value config file")
    for key in PARAM_KEYS:
        parser.add_argument(f"--{key}", type=float, default=None)
    parser.add_argument("--sweep", default=None, metavar="name:min:max:count[:log]")
    parser.add_argument("--sweep2", default=None, metavar="name:min:max:count[:log]")
    parser.add_argument("--t0", type=float, default=None)
    parser.add_argument("--t1", type=float, default=None)
    parser.add_argument("--dt", type=float, default=None)
    parser.add_argument("--samples", type=int, default=None)
    parser.add_argument("--outputs", default=None, help="comma-separated metric columns")
    parser.add_argument("--out", default=None, help="output CSV path")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--jobs", type=int, default=None)
    parser.add_argument("--with-discord", action="store_true", default=None)
    parser.add_argument("--emit-plot", action="store_true")
    return parser


def _config_from_args(args):
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as f:
                text = f.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        cfg = parse_config(text)
        if cfg.scenario != args.scenario:
            raise ConfigError(
                f"config scenario {cfg.scenario!r} conflicts with requested {args.scenario!r}"
            )
    else:
        cfg = ScenarioConfig(scenario=args.scenario)
    overrides = {k: getattr(args, k) for k in PARAM_KEYS if getattr(args, k) is not None}
    if overrides:
        try:
            cfg.params = cfg.params.replace(**overrides)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    if args.sweep is not None:
        cfg.sweep = parse_axis(args.sweep)
    if args.sweep2 is not None:
        cfg.second_axis = parse_axis(args.sweep2)
    for key in ("t0", "t1", "dt", "samples", "seed"):
        val = getattr(args, key)
        if val is not None:
            setattr(cfg, key, val)
    if args.outputs is not None:
        cfg.outputs = tuple(c.strip() for c in args.outputs.split(",") if c.strip())
    if args.out is not None:
        cfg.out_path = args.out
    if args.with_discord:
        cfg.with_discord = True
    return validate_config(cfg)


def _resolve_jobs(args):
    if args.jobs is not None:
        jobs = args.jobs
    else:
        env = os.environ.get("DIPOLAR_QB_JOBS")
        if env:
            try:
                jobs = int(env)
            except ValueError:
                raise ConfigError(f"DIPOLAR_QB_JOBS must be an integer, got {env!r}") from None
        else:
            jobs = os.cpu_count() or 1
    if jobs < 1:
        raise ConfigError("jobs must be a positive integer")
    return jobs


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _config_from_args(args)
        jobs = _resolve_jobs(args)
    except ConfigError as exc:
        print(f"dipolar-qb: config error: {exc}", file=sys.stderr)
        return 1
    try:
        paths = run_scenario(cfg, jobs=jobs)
        if args.emit_plot:
            for path in paths:
                emit_plot_script(path, cfg.scenario)
    except ConfigError as exc:
        print(f"dipolar-qb: config error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"dipolar-qb: config error: cannot write output: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # numeric failure from the inner modules
        print(f"dipolar-qb: numeric failure in {cfg.scenario}: {exc}", file=sys.stderr)
        return 2
    for path in paths:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
