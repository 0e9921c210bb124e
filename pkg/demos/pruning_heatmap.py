"""
Which matrix entries does the search actually touch?
====================================================

With branch pruning the descent stops once the suitability score stops
improving. A small improvement threshold rho together with a long delay d
lets the search reach most entries, while a coarse rho with no delay stops
shortly after the diagonal. The printout is a text heatmap of the average
usage of each entry.
"""

import numpy as np

from bdris.experiments import ExperimentConfig, run_heatmap

n = 8
cfg = ExperimentConfig(N_list=(n,), realizations=20, rho_grid=(1e-9, 1e-2), d_grid=(8, 0))
_, rows = run_heatmap(cfg)

shades = " .:-=+*#%@"
for rho in cfg.rho_grid:
    for d in cfg.d_grid:
        usage = np.zeros((n, n))
        for r, dd, i, j, u in rows:
            if r == rho and dd == d:
                usage[i - 1, j - 1] = u
        print("rho=%g, d=%d, mean usage %.2f" % (rho, d, usage.mean()))
        for row in usage:
            print("  " + "".join(shades[min(int(u * 10), 9)] * 2 for u in row))
