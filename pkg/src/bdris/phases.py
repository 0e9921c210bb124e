"""Discrete phase alphabet, partially assigned configurations and the
mapping from tree levels to matrix entries.

Matrix indices are 0-based throughout the package.
"""
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

__all__ = [
    "PhaseShiftSet",
    "build_phase_set",
    "LevelMap",
    "level_to_entry",
    "DiscreteConfig",
    "materialize",
]

MAX_BITS = 8


@dataclass(frozen=True)
class PhaseShiftSet:
    """Uniform grid of ``2**bits`` phases starting at ``-pi`` with step
    ``pi / 2**(bits - 1)``."""

    bits: int
    values: np.ndarray = field(repr=False, compare=False)

    def __len__(self):
        return len(self.values)

    @property
    def step(self):
        return np.pi / 2 ** (self.bits - 1)

    @cached_property
    def phasors(self):
        """``exp(1j * values)`` as a read-only complex array."""
        e = np.exp(1j * self.values)
        e.setflags(write=False)
        return e

    def index_of(self, angle):
        """Index of ``angle`` in the grid; raises ``ValueError`` if absent."""
        k = int(round((angle + np.pi) / self.step))
        if not 0 <= k < len(self) or not np.isclose(self.values[k], angle, atol=1e-12):
            raise ValueError(f"{angle!r} is not a member of the {self.bits}-bit phase set")
        return k

    def nearest(self, angle):
        """Index of the grid phase closest to ``angle`` on the circle."""
        d = np.angle(np.exp(1j * (self.values - angle)))
        return int(np.argmin(np.abs(d)))


def build_phase_set(bits):
    if isinstance(bits, bool) or not isinstance(bits, (int, np.integer)):
        raise TypeError(f"bits must be an integer, got {bits!r}")
    if not 1 <= bits <= MAX_BITS:
        raise ValueError(f"bits must lie in [1, {MAX_BITS}], got {bits}")
    n = 2 ** int(bits)
    values = -np.pi + np.arange(n) * (2 * np.pi / n)
    values.setflags(write=False)
    return PhaseShiftSet(int(bits), values)


@dataclass(frozen=True)
class LevelMap:
    """Diagonal-major ordering of the upper triangle of an ``n x n`` matrix.

    ``order[0]`` is the entry visited first (the root, ``(0, 0)``); the main
    diagonal comes first, then each superdiagonal top to bottom.
    """

    n: int

    @cached_property
    def order(self):
        out = []
        for k in range(self.n):
            out.extend((i, i + k) for i in range(self.n - k))
        return tuple(out)

    @property
    def total(self):
        return self.n * (self.n + 1) // 2

    def __iter__(self):
        return iter(self.order)


def level_to_entry(level_map, level):
    """Entry visited at tree level ``level`` (counted down from ``total`` to 1)."""
    total = level_map.total
    if not 1 <= level <= total:
        raise ValueError(f"level must lie in [1, {total}], got {level}")
    return level_map.order[total - level]


class DiscreteConfig:
    """A partially assigned discrete BD-RIS matrix.

    Assignments are stored as indices into the phase set; ``-1`` marks an
    unassigned entry. The reciprocal entry ``(j, i)`` of an off-diagonal pair
    carries its own phase, symmetry is only imposed later by projection.
    """

    def __init__(self, n, phase_set):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = int(n)
        self.phase_set = phase_set
        self.levels = np.full((self.n, self.n), -1, dtype=np.int64)

    def copy(self):
        c = DiscreteConfig(self.n, self.phase_set)
        c.levels = self.levels.copy()
        return c

    @property
    def mask(self):
        return self.levels >= 0

    @property
    def angles(self):
        """Assigned angles in radians, NaN where unassigned."""
        out = np.full((self.n, self.n), np.nan)
        m = self.mask
        out[m] = self.phase_set.values[self.levels[m]]
        return out

    def _check(self, k):
        if not 0 <= k < len(self.phase_set):
            raise ValueError(f"phase index {k} outside the {len(self.phase_set)}-point alphabet")

    def assign(self, i, j, k, k_reciprocal=None):
        """Assign phase index ``k`` to ``(i, j)``.

        Off-diagonal entries need ``k_reciprocal`` for ``(j, i)`` so that the
        configuration stays reciprocal-consistent.
        """
        self._check(k)
        if i == j:
            self.levels[i, i] = k
            return self
        if k_reciprocal is None:
            raise ValueError(f"off-diagonal entry ({i}, {j}) needs a reciprocal phase")
        self._check(k_reciprocal)
        self.levels[i, j] = k
        self.levels[j, i] = k_reciprocal
        return self

    def is_complete(self):
        return bool(self.mask.all())

    def __eq__(self, other):
        if not isinstance(other, DiscreteConfig):
            return NotImplemented
        return (self.phase_set.bits == other.phase_set.bits
                and np.array_equal(self.levels, other.levels))

    def __repr__(self):
        return f"DiscreteConfig(n={self.n}, bits={self.phase_set.bits}, assigned={int(self.mask.sum())})"


def materialize(cfg):
    """Complex matrix with ``exp(1j*theta)`` on assigned entries and 0 elsewhere."""
    out = np.zeros((cfg.n, cfg.n), dtype=np.complex128)
    m = cfg.mask
    out[m] = cfg.phase_set.phasors[cfg.levels[m]]
    return out
