"""Tree search for the MU-MISO channel-strength problem, with branch pruning."""
import time

import numpy as np

from . import _kernels
from .channels import gain_mumiso
from .linalg import NumericalError
from .phases import DiscreteConfig, LevelMap, build_phase_set, materialize
from .params import SearchParams, SearchTrace
from .projection import uni_sym

__all__ = ["DegenerateChannelError", "var_calc", "search_mumiso"]


class DegenerateChannelError(NumericalError):
    """The normalising bound of the suitability measure is zero."""


def _norm_and_mode(ch):
    if ch.direct_obstructed:
        norm, mode = ch.yz_fro, _kernels.MODE_OBSTRUCTED
        if norm == 0:
            raise DegenerateChannelError("||Y||_F ||Z||_F is zero: the reflected channel vanishes")
    else:
        norm, mode = ch.x_nuclear, _kernels.MODE_UNOBSTRUCTED
        if norm == 0:
            raise DegenerateChannelError("||X||_* is zero: direct and reflected channels are orthogonal")
    return norm, mode


def var_calc(ch, phi):
    """Suitability ``w`` of a candidate configuration ``phi``, in ``[0, 1]``
    whenever the spectral norm of ``phi`` is at most one.

    Obstructed direct link: ``(Re tr(phi^H Y phi Z) + ||Y||_F ||Z||_F) / (2 ||Y||_F ||Z||_F)``.
    Otherwise: ``(Re tr(phi X) + ||X||_*) / (2 ||X||_*)``.
    """
    norm, _ = _norm_and_mode(ch)
    phi = np.asarray(phi, dtype=np.complex128)
    if ch.direct_obstructed:
        m = np.trace(phi.conj().T @ ch.Y @ phi @ ch.Z)
    else:
        m = np.trace(phi @ ch.X)
    return float((m.real + norm) / (2 * norm))


def search_mumiso(ch, params=None):
    """Configure a BD-RIS for a MU-MISO channel by depth-first tree search.

    Diagonal levels score the raw partial matrix with :func:`var_calc`;
    off-diagonal levels score the symmetric unitary projection for every
    reciprocal phase and keep the best. Levels commit the first candidate
    above ``eps`` (or the best one). With branch pruning on, an accepted
    level whose score moved by less than ``rho`` from the last reference
    counts as a failure; more than ``delay_d`` consecutive failures end the
    descent, a sufficient improvement resets the count and the reference.

    Returns ``(theta, gain, trace)``.
    """
    params = params or SearchParams()
    t0 = time.perf_counter()
    norm, mode = _norm_and_mode(ch)
    n = ch.n
    ps = build_phase_set(params.bits)
    phasors = np.ascontiguousarray(ps.phasors)
    nq = len(ps)
    eps = params.eps
    X = np.ascontiguousarray(ch.X)
    Y = np.ascontiguousarray(ch.Y)
    Z = np.ascontiguousarray(ch.Z)
    hb = np.zeros(n, dtype=np.complex128)
    cfg = DiscreteConfig(n, ps)
    t = np.zeros((n, n), dtype=np.complex128)
    trace = SearchTrace(n)
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([int(params.rng_seed)])))

    r_ref = 0.0
    failures = 0
    root = params.root or "search"
    for level, (i, j) in enumerate(LevelMap(n)):
        if level == 0 and root == "random":
            k = int(rng.integers(nq))
            cfg.assign(0, 0, k)
            t[0, 0] = phasors[k]
            trace.visit(0, 0, var_calc(ch, t), True, 1)
            continue
        if i == j:
            k, r, scanned = _kernels.diag_level(t, i, phasors, eps, mode, X, Y, Z, norm)
            cfg.assign(i, i, k)
            t[i, i] = phasors[k]
            trace.visit(i, i, r, r > eps, scanned)
        else:
            k, kk, r, scanned, ok = _kernels.offdiag_level(
                t, i, j, phasors, eps, mode, hb, hb, X, Y, Z, norm)
            if not ok:
                raise NumericalError(f"projection failed at entry ({i}, {j})")
            cfg.assign(i, j, k, kk)
            t[i, j], t[j, i] = phasors[k], phasors[kk]
            trace.visit(i, j, r, r > eps, scanned * nq)

        if params.branch_pruning and r > eps:
            if abs(r - r_ref) < params.rho:
                failures += 1
                if failures > params.delay_d:
                    trace.terminated_early = level + 1 < len(LevelMap(n).order)
                    break
            else:
                failures = 0
                r_ref = r

    theta = uni_sym(materialize(cfg))
    gain = gain_mumiso(ch, theta)
    trace.wall_time = time.perf_counter() - t0
    trace.config = cfg
    return theta, gain, trace
