import numpy as np
import pytest
from hypothesis import given, strategies as st

from bdris.phases import (DiscreteConfig, LevelMap, build_phase_set, level_to_entry,
                          materialize)


def test_one_bit():
    np.testing.assert_allclose(build_phase_set(1).values, [-np.pi, 0])


def test_two_bit():
    np.testing.assert_allclose(build_phase_set(2).values, [-np.pi, -np.pi / 2, 0, np.pi / 2])


def test_four_bit():
    ps = build_phase_set(4)
    assert len(ps) == 16
    assert ps.values[0] == -np.pi
    np.testing.assert_allclose(np.diff(ps.values), np.pi / 8)
    assert ps.step == np.pi / 8


@pytest.mark.parametrize("bad", [0, 9, -1])
def test_bits_out_of_range(bad):
    with pytest.raises(ValueError):
        build_phase_set(bad)


@pytest.mark.parametrize("bits", range(1, 9))
def test_alphabet_invariants(bits):
    ps = build_phase_set(bits)
    assert len(ps) == 2 ** bits
    assert np.all(ps.values >= -np.pi) and np.all(ps.values < np.pi)
    np.testing.assert_allclose(np.diff(ps.values), np.pi / 2 ** (bits - 1), rtol=0, atol=1e-14)
    assert abs(ps.phasors.sum()) <= 1e-12


def test_nearest_and_index():
    ps = build_phase_set(2)
    assert ps.nearest(0.1) == 2
    assert ps.nearest(3.1) == 0  # wraps to -pi
    assert ps.index_of(np.pi / 2) == 3
    with pytest.raises(ValueError):
        ps.index_of(0.3)


# (level, 0-based entry) pairs; the 1-based examples are (1,1), (2,2), (1,2) ...
@pytest.mark.parametrize("n, level, entry", [
    (2, 3, (0, 0)), (2, 2, (1, 1)), (2, 1, (0, 1)),
    (3, 6, (0, 0)), (3, 3, (0, 1)), (3, 1, (0, 2)),
    (1, 1, (0, 0)),
])
def test_level_to_entry(n, level, entry):
    assert level_to_entry(LevelMap(n), level) == entry


def test_level_out_of_range():
    with pytest.raises(ValueError):
        level_to_entry(LevelMap(2), 0)
    with pytest.raises(ValueError):
        level_to_entry(LevelMap(2), 4)


@given(st.integers(1, 12))
def test_level_map_bijective(n):
    lm = LevelMap(n)
    visited = [level_to_entry(lm, l) for l in range(lm.total, 0, -1)]
    assert len(visited) == n * (n + 1) // 2
    assert set(visited) == {(i, j) for i in range(n) for j in range(i, n)}
    assert visited[:n] == [(i, i) for i in range(n)]
    offsets = [j - i for i, j in visited]
    assert offsets == sorted(offsets)


def test_materialize_examples():
    ps = build_phase_set(4)
    cfg = DiscreteConfig(2, ps)
    np.testing.assert_array_equal(materialize(cfg), np.zeros((2, 2)))
    k0 = ps.index_of(0.0)
    full = DiscreteConfig(2, ps).assign(0, 0, k0).assign(1, 1, k0).assign(0, 1, k0, k0)
    np.testing.assert_allclose(materialize(full), np.ones((2, 2)))
    one = DiscreteConfig(2, ps).assign(0, 0, ps.index_of(np.pi / 2))
    np.testing.assert_allclose(materialize(one), [[1j, 0], [0, 0]], atol=1e-15)


def test_config_invariants():
    ps = build_phase_set(2)
    cfg = DiscreteConfig(3, ps)
    with pytest.raises(ValueError):
        cfg.assign(0, 1, 1)  # reciprocal missing
    with pytest.raises(ValueError):
        cfg.assign(0, 0, 4)
    cfg.assign(0, 2, 1, 3)
    assert cfg.mask[0, 2] and cfg.mask[2, 0]
    assert set(cfg.angles[cfg.mask]) <= set(ps.values)
    assert np.isnan(cfg.angles[1, 1])
    m = materialize(cfg)
    np.testing.assert_allclose(np.abs(m[cfg.mask]), 1)


def test_reassignment_idempotent():
    ps = build_phase_set(3)
    cfg = DiscreteConfig(2, ps).assign(0, 1, 2, 5)
    before = materialize(cfg)
    cfg.assign(0, 1, 2, 5)
    np.testing.assert_array_equal(materialize(cfg), before)
