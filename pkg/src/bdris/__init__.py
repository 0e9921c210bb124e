"""Depth-first tree search configuration of beyond-diagonal RIS matrices."""
from .linalg import (DimensionError, NumericalError, svd, nuclear_norm, fro_norm, trace,
                     matmul, conj_transpose)
from .phases import (PhaseShiftSet, build_phase_set, LevelMap, level_to_entry, DiscreteConfig,
                     materialize)
from .projection import uni_sym
from .channels import (SisoChannel, MuMisoChannel, ScenarioConfig, gain_siso, gain_mumiso,
                       gain_mumiso_expanded, siso_upper_bounds, path_loss, gen_siso, gen_mumiso)
from .params import SearchParams, SearchTrace
from .search_siso import alignment, search_siso
from .search_mumiso import DegenerateChannelError, var_calc, search_mumiso
from .baselines import (SizeGuardError, baseline_low_complexity, diagonal_ris_config,
                        oracle_exhaustive)

__version__ = "0.1.0"
