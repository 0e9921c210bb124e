"""
How search time grows with the surface size
===========================================

Each off-diagonal level projects up to |Q|^2 candidates at O(N^3) each and
there are O(N^2) levels. A threshold near one forces full scans, so the
measured time should grow roughly like N^5. Branch pruning cuts the descent
short and flattens the curve.
"""

from bdris.experiments import ExperimentConfig, run_runtime_bench

for label, kw in [("full scans (eps=0.99)", dict(N_list=(4, 6, 8, 10), eps=0.99)),
                  ("branch pruning (rho=1e-4, d=0)",
                   dict(N_list=(9, 16, 25, 36), eps=0.1, rho=1e-4, branch_pruning=True))]:
    header, rows, fit_header, fit = run_runtime_bench(ExperimentConfig(repetitions=10, **kw))
    print(label)
    for n, _, t, levels, cands, status, _ in rows:
        print("  N=%2d  median %.2e s  levels %.1f  candidates %.0f  %s" % (n, t, levels, cands, status))
    print("  log-log slope %.2f (residual %.3f)" % (fit[0], fit[2]))
