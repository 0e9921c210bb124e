"""Monte Carlo experiment drivers and their configuration/CSV plumbing.

Configuration files are flat ``key = value`` lines; ``#`` starts a comment,
keys are case-sensitive and lists are comma-separated. Every driver returns
``(header, rows)`` ready for :func:`write_csv`.
"""
import csv
import dataclasses
import io
import math
import platform
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields

import numpy as np

from .baselines import (ORACLE_LIMIT, SizeGuardError, baseline_low_complexity,
                        diagonal_ris_config, oracle_candidate_count, oracle_exhaustive)
from .channels import (ScenarioConfig, gain_mumiso, gain_siso, gen_mumiso, gen_siso,
                       siso_upper_bounds)
from .params import SearchParams
from .search_mumiso import search_mumiso
from .search_siso import search_siso

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "parse_config",
    "load_config",
    "write_csv",
    "format_csv",
    "fit_loglog",
    "run_gain_sweep",
    "run_runtime_bench",
    "run_heatmap",
    "run_oracle_check",
    "run_validate_siso",
]

SYSTEMS = ("siso", "mumiso")
ALGORITHMS = ("tree", "baseline", "diag_ris", "oracle")
_SCENARIO_KEYS = tuple(f.name for f in fields(ScenarioConfig))


class ConfigError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass
class ExperimentConfig:
    system: str = "mumiso"
    N_list: tuple = (4,)
    L: int = 4
    K: int = 4
    bits: int = 4
    eps: float = 0.1
    rho: float = 1e-4
    delay_d: int = 0
    branch_pruning: bool = False
    obstructed: bool = False
    root: str = ""
    algorithms: tuple = ("tree",)
    output_path: str = ""
    # scenario
    pl_ref_db: float = -30.0
    d_bs_ue_center: float = 150.0
    ue_radius: float = 20.0
    d_bs_ris: float = 130.0
    d_ris_ue_center: float = 20.0
    gamma_direct: float = 3.5
    gamma_bs_ris: float = 2.2
    gamma_ris_ue: float = 2.8
    min_distance: float = 1.0
    seed: int = 0
    realizations: int = 500
    # runtime-bench
    repetitions: int = 10
    machine: str = ""
    # heatmap
    rho_grid: tuple = (1e-2, 1e-4, 1e-9)
    d_grid: tuple = (0, 4, 8)
    # validate-siso
    bits_list: tuple = (1, 4)
    eps_list: tuple = (0.1, 0.5)
    # wall-clock columns are written as 0 when false, for reproducible files
    timing: bool = True
    threads: int = 1

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.system not in SYSTEMS:
            raise ConfigError(f"system must be one of {SYSTEMS}, got {self.system!r}")
        if not self.N_list:
            raise ConfigError("N_list must not be empty")
        if any(n < 1 for n in self.N_list) or list(self.N_list) != sorted(set(self.N_list)):
            raise ConfigError(f"N_list must be positive and strictly ascending, got {list(self.N_list)}")
        for a in self.algorithms:
            if a not in ALGORITHMS:
                raise ConfigError(f"unknown algorithm {a!r}; choose from {ALGORITHMS}")
        if self.system == "siso" and "baseline" in self.algorithms:
            raise ConfigError("the low-complexity baseline needs a MU-MISO system")
        if self.system == "mumiso" and "diag_ris" in self.algorithms:
            raise ConfigError("diag_ris is only defined for the SISO system")
        if self.threads < 1:
            raise ConfigError("threads must be at least 1")
        try:
            self.scenario()
            self.search_params()
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def scenario(self):
        return ScenarioConfig(**{k: getattr(self, k) for k in _SCENARIO_KEYS})

    def search_params(self, rng_seed=0, **overrides):
        kw = dict(eps=self.eps, rho=self.rho, delay_d=self.delay_d, bits=self.bits,
                  branch_pruning=self.branch_pruning, rng_seed=rng_seed,
                  root=self.root or None)
        kw.update(overrides)
        return SearchParams(**kw)

    def oracle_guard(self):
        for n in self.N_list:
            count = oracle_candidate_count(n, self.bits)
            if count > ORACLE_LIMIT:
                raise SizeGuardError(
                    f"oracle for N={n}, bits={self.bits} needs {count} candidates (limit {ORACLE_LIMIT})")


def _parse_bool(s):
    low = s.strip().lower()
    if low in ("true", "yes", "on", "1"):
        return True
    if low in ("false", "no", "off", "0"):
        return False
    raise ValueError(f"not a boolean: {s!r}")


def _converter(f):
    default = f.default
    if isinstance(default, bool):
        return _parse_bool
    if isinstance(default, int):
        return int
    if isinstance(default, float):
        return float
    if isinstance(default, tuple):
        inner = {"N_list": int, "d_grid": int, "bits_list": int,
                 "rho_grid": float, "eps_list": float}.get(f.name, str)
        return lambda s: tuple(inner(x.strip()) for x in s.split(",") if x.strip())
    return lambda s: s.strip()


_FIELDS = {f.name: f for f in fields(ExperimentConfig)}


def parse_config(text, **overrides):
    """Parse ``key = value`` text into an :class:`ExperimentConfig`.

    ``overrides`` (already typed) win over file values. Errors carry the
    offending line number.
    """
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, value = (p.strip() for p in line.split("=", 1))
        if key not in _FIELDS:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if key in values:
            raise ConfigError(f"duplicate key {key!r}", lineno)
        try:
            values[key] = _converter(_FIELDS[key])(value)
        except ValueError as exc:
            raise ConfigError(f"bad value for {key}: {exc}", lineno) from None
    values.update({k: v for k, v in overrides.items() if v is not None})
    return ExperimentConfig(**values)


def load_config(path, **overrides):
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read(), **overrides)


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, np.integer):
        return str(int(v))
    return str(v)


def format_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def write_csv(header, rows, path=None):
    """Write UTF-8, LF-terminated CSV to ``path`` (stdout when empty)."""
    text = format_csv(header, rows)
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return text


def derive_seed(*key):
    """64-bit seed that depends only on ``key``."""
    return int(np.random.SeedSequence([int(k) for k in key]).generate_state(1, np.uint64)[0])


def _map(fn, items, threads):
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))


def _clock(cfg, seconds):
    return float(seconds) if cfg.timing else 0.0


def _timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def _realization(cfg, n, r, algorithms, search_overrides=None):
    """Run every requested algorithm on realization ``r``.

    Returns ``{algorithm: (gain, levels_explored, runtime_s, trace_or_None)}``.
    """
    search_overrides = search_overrides or {}
    params = cfg.search_params(rng_seed=derive_seed(cfg.seed, n, r, 1), **search_overrides)
    out = {}
    if cfg.system == "siso":
        ch = gen_siso(n, derive_seed(cfg.seed, n, r))
        for alg in algorithms:
            if alg == "tree":
                (theta, tr), dt = _timed(search_siso, ch, params)
                out[alg] = (gain_siso(ch, theta), tr.levels_explored, dt, tr)
            elif alg == "diag_ris":
                theta, dt = _timed(diagonal_ris_config, ch)
                out[alg] = (gain_siso(ch, theta), 0, dt, None)
            elif alg == "oracle":
                (g, _), dt = _timed(oracle_exhaustive, ch, params.bits)
                out[alg] = (g, 0, dt, None)
    else:
        ch = gen_mumiso(cfg.scenario(), n, cfg.L, cfg.K, cfg.obstructed, r)
        for alg in algorithms:
            if alg == "tree":
                (_, g, tr), dt = _timed(search_mumiso, ch, params)
                out[alg] = (g, tr.levels_explored, dt, tr)
            elif alg == "baseline":
                theta, dt = _timed(baseline_low_complexity, ch)
                out[alg] = (gain_mumiso(ch, theta), 0, dt, None)
            elif alg == "oracle":
                (g, _), dt = _timed(oracle_exhaustive, ch, params.bits)
                out[alg] = (g, 0, dt, None)
    return out


def _warmup(cfg):
    """Compile the numba kernels outside any timed region."""
    c = dataclasses.replace(cfg, N_list=(2,), realizations=1, timing=False)
    _realization(c, 2, 0, ("tree",))


GAIN_HEADER = ["N", "algorithm", "mean_gain", "std_gain", "mean_levels_explored", "mean_runtime_s"]


def run_gain_sweep(cfg):
    """Mean/std gain per ``(N, algorithm)`` over ``cfg.realizations`` draws.

    SISO sweeps also carry the two analytic bound rows.
    """
    if "oracle" in cfg.algorithms:
        cfg.oracle_guard()
    _warmup(cfg)
    rows = []
    for n in cfg.N_list:
        res = _map(lambda r: _realization(cfg, n, r, cfg.algorithms),
                   range(cfg.realizations), cfg.threads)
        for alg in cfg.algorithms:
            g = np.array([x[alg][0] for x in res])
            lv = np.array([x[alg][1] for x in res], dtype=float)
            rt = np.array([x[alg][2] for x in res])
            rows.append([n, alg, g.mean(), g.std(ddof=1) if g.size > 1 else 0.0,
                         lv.mean(), _clock(cfg, rt.mean())])
        if cfg.system == "siso":
            bd, diag = siso_upper_bounds(n)
            rows.append([n, "bd_ris_bound", bd, 0.0, 0.0, 0.0])
            rows.append([n, "diag_ris_bound", diag, 0.0, 0.0, 0.0])
    return GAIN_HEADER, rows


def fit_loglog(ns, times):
    """Least-squares line through ``(log N, log t)``.

    Returns ``(slope, intercept, residual_rms)``.
    """
    x = np.log(np.asarray(ns, dtype=float))
    y = np.log(np.asarray(times, dtype=float))
    A = np.stack([x, np.ones_like(x)], axis=1)
    (slope, intercept), *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - (slope * x + intercept)
    return float(slope), float(intercept), float(np.sqrt(np.mean(resid ** 2)))


BENCH_HEADER = ["N", "repetitions", "median_runtime_s", "mean_levels_explored",
                "mean_candidates", "status", "machine"]
FIT_HEADER = ["slope", "intercept", "residual_rms", "n_points"]


def _machine(cfg):
    if cfg.machine:
        return cfg.machine
    return f"{platform.machine()} {platform.python_implementation()} {platform.python_version()}"


def run_runtime_bench(cfg):
    """Median tree-search wall time per N and the log-log slope.

    Returns ``(header, rows, fit_header, fit_row)``.
    """
    if len(cfg.N_list) < 4:
        raise ConfigError("runtime-bench needs at least 4 values in N_list")
    if cfg.repetitions < 10:
        raise ConfigError("runtime-bench needs repetitions >= 10")
    _warmup(cfg)
    resolution = time.get_clock_info("perf_counter").resolution
    rows, medians = [], []
    for n in cfg.N_list:
        res = [_realization(cfg, n, r, ("tree",))["tree"] for r in range(cfg.repetitions)]
        med = float(np.median([x[3].wall_time for x in res]))
        medians.append(med)
        status = "ok" if med > 100 * resolution else "timer_resolution"
        rows.append([n, cfg.repetitions, _clock(cfg, med),
                     float(np.mean([x[1] for x in res])),
                     float(np.mean([x[3].candidates_evaluated for x in res])),
                     status, _machine(cfg)])
    if cfg.timing:
        fit = list(fit_loglog(cfg.N_list, medians)) + [len(medians)]
    else:
        fit = [math.nan, math.nan, math.nan, len(medians)]
    return BENCH_HEADER, rows, FIT_HEADER, fit


HEATMAP_HEADER = ["rho", "d", "i", "j", "usage_fraction"]


def run_heatmap(cfg):
    """Average per-entry usage of the discrete matrix over a ``(rho, d)`` grid.

    Entries are reported 1-based in long form.
    """
    if len(cfg.N_list) != 1:
        raise ConfigError("heatmap takes exactly one N")
    n = cfg.N_list[0]
    _warmup(cfg)
    rows = []
    for rho in cfg.rho_grid:
        for d in cfg.d_grid:
            over = dict(rho=rho, delay_d=d, branch_pruning=True)
            res = _map(lambda r: _realization(cfg, n, r, ("tree",), over)["tree"][3],
                       range(cfg.realizations), cfg.threads)
            usage = sum(tr.entry_visits for tr in res) / cfg.realizations
            for i in range(n):
                for j in range(n):
                    rows.append([rho, d, i + 1, j + 1, float(usage[i, j])])
    return HEATMAP_HEADER, rows


ORACLE_HEADER = ["N", "realization", "bits", "tree_gain", "oracle_gain", "ratio"]


def run_oracle_check(cfg):
    """Tree-search gain against the exhaustive discrete optimum, per draw."""
    cfg.oracle_guard()
    _warmup(cfg)
    rows = []
    for n in cfg.N_list:
        res = _map(lambda r: _realization(cfg, n, r, ("tree", "oracle")),
                   range(cfg.realizations), cfg.threads)
        for r, x in enumerate(res):
            tg, og = x["tree"][0], x["oracle"][0]
            rows.append([n, r, cfg.bits, tg, og, tg / og if og > 0 else math.nan])
    return ORACLE_HEADER, rows


VALIDATE_HEADER = ["N", "bits", "eps", "mean_gain", "std_gain", "ratio_to_bound",
                   "bd_ris_bound", "diag_ris_bound", "diag_ris_mean_gain"]


def run_validate_siso(cfg):
    """SISO tree search across alphabets and thresholds, next to both bounds
    and the continuous diagonal RIS."""
    c = dataclasses.replace(cfg, system="siso", algorithms=("tree",))
    _warmup(c)
    rows = []
    for n in cfg.N_list:
        bd, diag = siso_upper_bounds(n)
        diag_gains = np.array([
            gain_siso(ch, diagonal_ris_config(ch))
            for ch in (gen_siso(n, derive_seed(cfg.seed, n, r)) for r in range(cfg.realizations))])
        for bits in cfg.bits_list:
            for eps in cfg.eps_list:
                over = dict(bits=bits, eps=eps)
                g = np.array(_map(lambda r: _realization(c, n, r, ("tree",), over)["tree"][0],
                                  range(cfg.realizations), cfg.threads))
                rows.append([n, bits, eps, g.mean(), g.std(ddof=1) if g.size > 1 else 0.0,
                             g.mean() / bd, bd, diag, diag_gains.mean()])
    return VALIDATE_HEADER, rows
