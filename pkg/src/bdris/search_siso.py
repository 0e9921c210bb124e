"""Depth-first tree search with pruning for the SISO cascade ``h Theta v``."""
import time

import numpy as np

from . import _kernels
from .linalg import NumericalError
from .phases import DiscreteConfig, LevelMap, build_phase_set, materialize
from .params import SearchParams, SearchTrace
from .projection import uni_sym

__all__ = ["alignment", "search_siso"]


def alignment(hbar, vbar, theta):
    """``Re(hbar @ Theta @ vbar)`` for unit-norm ``hbar`` and ``vbar``.

    Equals ``1 - ||Theta vbar - hbar^H||^2 / 2`` when Theta is unitary.
    """
    hbar = np.asarray(hbar, dtype=np.complex128).reshape(-1)
    vbar = np.asarray(vbar, dtype=np.complex128).reshape(-1)
    for name, x in (("hbar", hbar), ("vbar", vbar)):
        if abs(np.linalg.norm(x) - 1) > 1e-10:
            raise ValueError(f"{name} must have unit norm")
    return float((hbar @ np.asarray(theta) @ vbar).real)


def _unit(z):
    return z / abs(z) if z != 0 else 0j


def search_siso(ch, params=None):
    """Configure a BD-RIS for a SISO channel by depth-first tree search.

    Levels follow :class:`~bdris.phases.LevelMap`. Diagonal levels grow the
    co-phasing accumulator ``m += e^{jq} z/|z|`` (``z = h_i v_i``) and score
    ``|m/2|^2``; off-diagonal levels score the best projected alignment over
    every reciprocal phase. Each level commits the first candidate scoring
    above ``eps``, or the best one when none does, and never backtracks.

    Returns ``(theta, trace)`` where ``theta`` is the symmetric unitary
    projection of the completed discrete matrix.
    """
    params = params or SearchParams()
    t0 = time.perf_counter()
    n = ch.n
    ps = build_phase_set(params.bits)
    phasors = np.ascontiguousarray(ps.phasors)
    nq = len(ps)
    eps = params.eps
    lmap = LevelMap(n)
    cfg = DiscreteConfig(n, ps)
    t = np.zeros((n, n), dtype=np.complex128)
    trace = SearchTrace(n)
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([int(params.rng_seed)])))

    hn, vn = np.linalg.norm(ch.h), np.linalg.norm(ch.v)
    hb = ch.h / hn if hn > 0 else ch.h.copy()
    vb = ch.v / vn if vn > 0 else ch.v.copy()
    dummy = np.zeros((1, 1), dtype=np.complex128)

    m = 0j
    root = params.root or "random"
    for level, (i, j) in enumerate(lmap):
        if level == 0 and root == "random":
            k = int(rng.integers(nq))
            m = _unit(ch.h[0] * ch.v[0]) * phasors[k]
            cfg.assign(0, 0, k)
            t[0, 0] = phasors[k]
            trace.visit(0, 0, abs(m / 2) ** 2, True, 1)
            continue
        if i == j:
            zu = _unit(ch.h[i] * ch.v[i])
            best_r, best_k, scanned = -np.inf, 0, 0
            for k in range(nq):
                scanned += 1
                r = abs((m + zu * phasors[k]) / 2) ** 2
                if r > best_r:
                    best_r, best_k = r, k
                if r > eps:
                    break
            m = m + zu * phasors[best_k]
            cfg.assign(i, i, best_k)
            t[i, i] = phasors[best_k]
            trace.visit(i, i, best_r, best_r > eps, scanned)
        else:
            k, kk, r, scanned, ok = _kernels.offdiag_level(
                t, i, j, phasors, eps, _kernels.MODE_SISO, hb, vb, dummy, dummy, dummy, 1.0)
            if not ok:
                raise NumericalError(f"projection failed at entry ({i}, {j})")
            cfg.assign(i, j, k, kk)
            t[i, j], t[j, i] = phasors[k], phasors[kk]
            trace.visit(i, j, r, r > eps, scanned * nq)

    theta = uni_sym(materialize(cfg))
    trace.wall_time = time.perf_counter() - t0
    trace.config = cfg
    return theta, trace
