import numpy as np
import pytest

from bdris import SearchParams
from bdris.baselines import (ORACLE_LIMIT, SizeGuardError, baseline_low_complexity,
                             diagonal_ris_config, oracle_candidate_count, oracle_exhaustive)
from bdris.channels import MuMisoChannel, gain_mumiso, gain_siso, gen_siso
from bdris.phases import build_phase_set, materialize
from bdris.projection import uni_sym
from bdris.search_mumiso import search_mumiso
from bdris.search_siso import search_siso
from conftest import crandn


def test_scalar_baseline_is_best_phase(rng):
    g, h, u = crandn(rng, 3)
    ch = MuMisoChannel([[g]], [[h]], [[u]])
    theta = baseline_low_complexity(ch)
    assert theta[0, 0] == pytest.approx(np.exp(1j * np.angle(h * np.conj(g) * np.conj(u))))
    grid = np.linspace(-np.pi, np.pi, 20001)
    best = max(gain_mumiso(ch, [[np.exp(1j * p)]]) for p in grid)
    assert gain_mumiso(ch, theta) >= best - 1e-6


@pytest.mark.parametrize("seed", range(5))
def test_baseline_constraints(seed):
    rng = np.random.default_rng(seed)
    n = 2 + seed
    ch = MuMisoChannel(crandn(rng, 4, 4), crandn(rng, n, 4), crandn(rng, n, 4))
    theta = baseline_low_complexity(ch)
    assert np.linalg.norm(theta - theta.T) <= 1e-10
    assert np.linalg.norm(theta.conj().T @ theta - np.eye(n)) <= 1e-10


def test_obstructed_baseline_is_identity(rng):
    ch = MuMisoChannel(np.zeros((4, 4)), crandn(rng, 3, 4), crandn(rng, 3, 4))
    np.testing.assert_allclose(baseline_low_complexity(ch), np.eye(3), atol=1e-14)


def test_diagonal_ris():
    ch = gen_siso(1, 0)
    assert gain_siso(ch, diagonal_ris_config(ch)) == pytest.approx(ch.bound())
    ch = gen_siso(5, 1)
    assert gain_siso(ch, diagonal_ris_config(ch)) == pytest.approx(np.sum(np.abs(ch.h * ch.v)) ** 2)
    assert np.count_nonzero(diagonal_ris_config(ch) - np.diag(np.diag(diagonal_ris_config(ch)))) == 0


def test_candidate_counts():
    assert oracle_candidate_count(1, 2) == 4
    assert oracle_candidate_count(2, 1) == 16
    with pytest.raises(SizeGuardError):
        oracle_exhaustive(gen_siso(3, 0), 4)
    assert oracle_candidate_count(2, 4) <= ORACLE_LIMIT < oracle_candidate_count(3, 4)


def test_scalar_oracle_grid_rounding(rng):
    ch = MuMisoChannel(crandn(rng, 1, 1), crandn(rng, 1, 1), crandn(rng, 1, 1))
    ps = build_phase_set(2)
    best, cfg = oracle_exhaustive(ch, 2)
    k = ps.nearest(-np.angle(ch.X[0, 0]))
    assert cfg.levels[0, 0] == k
    assert best == pytest.approx(gain_mumiso(ch, [[ps.phasors[k]]]))


def test_oracle_config_reproduces_gain(rng):
    ch = MuMisoChannel(crandn(rng, 2, 2), crandn(rng, 2, 2), crandn(rng, 2, 2))
    best, cfg = oracle_exhaustive(ch, 1)
    assert cfg.is_complete()
    assert gain_mumiso(ch, uni_sym(materialize(cfg))) == pytest.approx(best)


@pytest.mark.parametrize("seed", range(10))
def test_oracle_dominates_search(seed):
    rng = np.random.default_rng(seed)
    sch = gen_siso(2, seed)
    theta, _ = search_siso(sch, SearchParams(bits=1, rng_seed=seed))
    assert oracle_exhaustive(sch, 1)[0] >= gain_siso(sch, theta) - 1e-9
    obstructed = seed % 2 == 0
    mch = MuMisoChannel(np.zeros((3, 3)) if obstructed else crandn(rng, 3, 3),
                        crandn(rng, 2, 3), crandn(rng, 2, 3))
    _, g, _ = search_mumiso(mch, SearchParams(bits=1))
    assert oracle_exhaustive(mch, 1)[0] >= g - 1e-9
