import math

import numpy as np
import pytest

from bdris.cli import main
from bdris.experiments import (ConfigError, ExperimentConfig, fit_loglog, format_csv,
                               parse_config, run_gain_sweep, run_heatmap)


def write(tmp_path, text, name="exp.cfg"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_parse_config_values():
    cfg = parse_config("""
# comment line
system = siso   # trailing comment
N_list = 2, 4,6
branch_pruning = true
eps = 0.5
algorithms = tree,diag_ris
""")
    assert cfg.system == "siso" and cfg.N_list == (2, 4, 6)
    assert cfg.branch_pruning is True and cfg.eps == 0.5
    assert cfg.algorithms == ("tree", "diag_ris")


@pytest.mark.parametrize("text, line", [
    ("system = siso\nbogus = 1\n", 2),
    ("eps = 0.1\n\neps = 0.2\n", 3),
    ("bits = four\n", 1),
    ("just words\n", 1),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ConfigError) as err:
        parse_config(text)
    assert err.value.line == line
    assert f"line {line}" in str(err.value)


@pytest.mark.parametrize("text", ["N_list = 4, 2", "eps = 1.5", "system = mimo",
                                  "system = siso\nalgorithms = baseline", "realizations = 0"])
def test_invalid_configs(text):
    with pytest.raises(ConfigError):
        parse_config(text)


def test_overrides_win():
    cfg = parse_config("seed = 3\nthreads = 2", seed=9, threads=None)
    assert cfg.seed == 9 and cfg.threads == 2


def test_csv_rendering():
    text = format_csv(["a", "b", "c"], [[1, 0.1, True], [np.int64(2), np.float64(1 / 3), "x"]])
    assert text == "a,b,c\n1,0.1,true\n2,0.3333333333333333,x\n"
    assert float(text.splitlines()[2].split(",")[1]) == 1 / 3


def test_fit_recovers_power_law():
    ns = np.array([4, 6, 8, 10, 12, 16])
    slope, intercept, resid = fit_loglog(ns, 3e-7 * ns ** 5.0)
    assert abs(slope - 5.0) <= 1e-6
    assert intercept == pytest.approx(math.log(3e-7))
    assert resid < 1e-9


def test_gain_sweep_schema_and_bounds():
    cfg = ExperimentConfig(system="siso", N_list=(1, 2), realizations=5,
                           algorithms=("tree", "diag_ris"), timing=False)
    header, rows = run_gain_sweep(cfg)
    assert header == ["N", "algorithm", "mean_gain", "std_gain", "mean_levels_explored", "mean_runtime_s"]
    algs = [r[1] for r in rows]
    assert algs == ["tree", "diag_ris", "bd_ris_bound", "diag_ris_bound"] * 2
    assert all(r[5] == 0.0 for r in rows)
    assert rows[2][2] == 1.0 and rows[6][2] == 4.0


def test_threads_do_not_change_results():
    base = dict(system="mumiso", N_list=(3,), realizations=6, timing=False, branch_pruning=True)
    one = run_gain_sweep(ExperimentConfig(**base, threads=1))
    many = run_gain_sweep(ExperimentConfig(**base, threads=3))
    assert format_csv(*one) == format_csv(*many)


def test_heatmap_full_usage_with_tiny_rho():
    cfg = ExperimentConfig(N_list=(4,), realizations=4, rho_grid=(1e-9, 1e-2), d_grid=(8, 0))
    header, rows = run_heatmap(cfg)
    assert header == ["rho", "d", "i", "j", "usage_fraction"]
    full = [r for r in rows if r[0] == 1e-9 and r[1] == 8]
    assert all(r[4] == 1.0 for r in full)
    coarse = [r for r in rows if r[0] == 1e-2 and r[1] == 0]
    assert np.mean([r[4] for r in coarse]) < 1.0
    # diagonal levels come first, so the root entry is always visited
    assert all(r[4] == 1.0 for r in rows if r[2] == r[3] == 1)


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["gain-sweep", "--config", str(tmp_path / "missing.cfg")]) == 2
    assert main(["gain-sweep", "--config", write(tmp_path, "nope = 1")]) == 2
    assert main(["runtime-bench", "--config", write(tmp_path, "N_list = 2, 3", "b.cfg")]) == 2
    big = write(tmp_path, "system = siso\nN_list = 3\nalgorithms = oracle\nrealizations = 1", "c.cfg")
    assert main(["oracle-check", "--config", big]) == 4
    assert main(["gain-sweep", "--config", big]) == 4
    dead = write(tmp_path, "N_list = 2\nobstructed = true\npl_ref_db = -3000\nrealizations = 1", "d.cfg")
    assert main(["gain-sweep", "--config", dead]) == 3
    err = capsys.readouterr().err
    assert "line 1" in err and "numerical error" in err


def test_cli_writes_files(tmp_path):
    cfg = write(tmp_path, "N_list = 4, 5, 6, 7\nrepetitions = 10\neps = 0.99\nmachine = test box")
    out = tmp_path / "bench.csv"
    assert main(["runtime-bench", "--config", cfg, "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "N,repetitions,median_runtime_s,mean_levels_explored,mean_candidates,status,machine"
    assert len(lines) == 5 and lines[1].endswith(",test box")
    fit = (tmp_path / "bench_fit.csv").read_text().splitlines()
    assert fit[0] == "slope,intercept,residual_rms,n_points"
    assert math.isfinite(float(fit[1].split(",")[0]))


def test_cli_rerun_is_byte_identical(tmp_path):
    cfg = write(tmp_path, "system = siso\nN_list = 2, 3\nrealizations = 4\nalgorithms = tree, diag_ris")
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (a, b):
        assert main(["gain-sweep", "--config", cfg, "--seed", "17", "--no-timing", "--out", str(out)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert b"\r" not in a.read_bytes()
