"""
Tree search for a single-antenna link
=====================================

A BD-RIS with N elements sits between a single-antenna transmitter and a
single-antenna receiver. Its configuration is an N x N symmetric unitary
matrix, so the best achievable gain is ||h||^2 ||v||^2. Here the discrete
tree search is compared with that bound and with a continuous-phase
diagonal RIS.
"""

import numpy as np

from bdris import SearchParams, diagonal_ris_config, gain_siso, gen_siso, search_siso
from bdris.channels import siso_upper_bounds

# a single draw first
ch = gen_siso(4, seed=1)
theta, trace = search_siso(ch, SearchParams(eps=0.1, bits=4))
print("gain %.3f, bound %.3f" % (gain_siso(ch, theta), ch.bound()))
print("levels explored:", trace.levels_explored)
print("candidates per level:", trace.level_candidates)

# the returned matrix is symmetric and unitary
print("symmetry residual %.1e" % np.linalg.norm(theta - theta.T))
print("unitarity residual %.1e" % np.linalg.norm(theta.conj().T @ theta - np.eye(4)))

# averages over channel draws, for two thresholds and two alphabets
draws = 100
print("\n N  bits  eps   tree    diag    N^2   diag bound")
for n in (2, 4, 6):
    chans = [gen_siso(n, s) for s in range(draws)]
    diag = np.mean([gain_siso(c, diagonal_ris_config(c)) for c in chans])
    bd, diag_bound = siso_upper_bounds(n)
    for bits in (1, 4):
        for eps in (0.1, 0.5):
            g = np.mean([gain_siso(c, search_siso(c, SearchParams(eps=eps, bits=bits, rng_seed=s))[0])
                         for s, c in enumerate(chans)])
            print("%2d  %4d  %.1f  %6.2f  %6.2f  %4.0f  %6.2f" % (n, bits, eps, g, diag, bd, diag_bound))

# a threshold close to one makes each level scan more candidates
for eps in (0.1, 0.9, 0.999):
    _, tr = search_siso(gen_siso(4, 2), SearchParams(eps=eps))
    print("eps=%.3f: %d candidates" % (eps, tr.candidates_evaluated))
