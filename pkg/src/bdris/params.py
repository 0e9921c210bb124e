"""Search parameters and exploration trace shared by both tree searches."""
from dataclasses import dataclass, field

import numpy as np

__all__ = ["SearchParams", "SearchTrace", "ROOT_POLICIES"]

ROOT_POLICIES = ("random", "search")


@dataclass(frozen=True)
class SearchParams:
    """Knobs of the depth-first search.

    eps
        Acceptance threshold in (0, 1): the first candidate whose suitability
        exceeds it is committed and the rest of the level is skipped.
    rho, delay_d, branch_pruning
        Branch pruning: after more than ``delay_d`` consecutive accepted levels
        improving the suitability by less than ``rho`` the descent stops.
    root
        ``"random"`` draws the root entry uniformly from the alphabet,
        ``"search"`` scans it like any other level. ``None`` picks each
        algorithm's own default (random for SISO, search for MU-MISO).
    """

    eps: float = 0.1
    rho: float = 1e-4
    delay_d: int = 0
    bits: int = 4
    branch_pruning: bool = False
    rng_seed: int = 0
    root: str | None = None

    def __post_init__(self):
        if not 0 < self.eps < 1:
            raise ValueError(f"eps must lie in (0, 1), got {self.eps}")
        if self.branch_pruning and not self.rho > 0:
            raise ValueError(f"rho must be positive when branch pruning is on, got {self.rho}")
        if self.delay_d < 0:
            raise ValueError("delay_d must be non-negative")
        if self.root is not None and self.root not in ROOT_POLICIES:
            raise ValueError(f"root must be one of {ROOT_POLICIES}, got {self.root!r}")


@dataclass
class SearchTrace:
    """What a single search visited.

    ``entry_visits`` counts each explored level on its entry and, for
    off-diagonal levels, on the reciprocal entry too. ``level_log`` holds one
    ``(i, j, r, accepted, n_candidates)`` tuple per explored level, where
    an off-diagonal candidate counts once per reciprocal phase tried.
    """

    n: int
    entry_visits: np.ndarray = None
    candidates_evaluated: int = 0
    levels_explored: int = 0
    wall_time: float = 0.0
    terminated_early: bool = False
    level_log: list = field(default_factory=list)
    config: object = None  # final DiscreteConfig

    def __post_init__(self):
        if self.entry_visits is None:
            self.entry_visits = np.zeros((self.n, self.n), dtype=np.int64)

    def visit(self, i, j, r, accepted, n_candidates):
        self.entry_visits[i, j] += 1
        if i != j:
            self.entry_visits[j, i] += 1
        self.levels_explored += 1
        self.candidates_evaluated += n_candidates
        self.level_log.append((i, j, float(r), bool(accepted), int(n_candidates)))

    @property
    def level_candidates(self):
        return [entry[4] for entry in self.level_log]
