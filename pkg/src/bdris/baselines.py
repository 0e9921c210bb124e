"""Reference configurations: the low-complexity baseline, the continuous
diagonal RIS, and a brute-force discrete oracle for tiny instances."""
import numpy as np

from .channels import MuMisoChannel, SisoChannel
from .phases import DiscreteConfig, build_phase_set
from .projection import NULL_RTOL, uni_sym

__all__ = [
    "SizeGuardError",
    "ORACLE_LIMIT",
    "baseline_low_complexity",
    "diagonal_ris_config",
    "oracle_candidate_count",
    "oracle_exhaustive",
]

ORACLE_LIMIT = 2 ** 20


class SizeGuardError(ValueError):
    """The exhaustive enumeration would exceed ``ORACLE_LIMIT`` candidates."""


def baseline_low_complexity(ch):
    """``UniSym(H G^H U^H)``: first-order configuration for the cascade.

    With an obstructed direct link the argument is zero and the projection
    returns the identity completion.
    """
    return uni_sym(ch.H @ ch.G.conj().T @ ch.U.conj().T)


def diagonal_ris_config(ch):
    """Continuous-phase diagonal RIS that co-phases every ``h_n v_n``."""
    return np.diag(np.exp(-1j * np.angle(ch.h * ch.v)))


def oracle_candidate_count(n, bits):
    """Raw assignments enumerated by :func:`oracle_exhaustive`: every entry,
    reciprocal ones included, ranges over the alphabet."""
    return (2 ** bits) ** (n * n)


def _batched_uni_sym(t):
    s = (t + np.swapaxes(t, 1, 2)) / 2
    u, sv, vh = np.linalg.svd(s)
    out = u @ vh
    smax = sv[:, :1]
    deficient = np.flatnonzero(np.any(sv <= NULL_RTOL * smax, axis=1) | (smax[:, 0] == 0))
    for b in deficient:
        out[b] = uni_sym(t[b])
    return out


def oracle_exhaustive(ch, bits, chunk=8192):
    """Best gain over every discrete assignment, each projected with UniSym.

    Diagonal entries and both entries of each off-diagonal pair range
    independently over the alphabet, which is exactly the candidate space
    the tree searches draw from. Returns ``(best_gain, best_config)``.
    """
    n = ch.n
    total = oracle_candidate_count(n, bits)
    if total > ORACLE_LIMIT:
        raise SizeGuardError(
            f"exhaustive search over {total} assignments (N={n}, bits={bits}) exceeds {ORACLE_LIMIT}")
    ps = build_phase_set(bits)
    nq = len(ps)
    ph = ps.phasors
    siso = isinstance(ch, SisoChannel)
    if not siso and not isinstance(ch, MuMisoChannel):
        raise TypeError(f"unsupported channel type {type(ch).__name__}")

    best_gain, best_idx = -np.inf, 0
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total))
        digits = (idx[:, None] // nq ** np.arange(n * n)[None, :]) % nq
        levels = digits.reshape(-1, n, n)
        proj = _batched_uni_sym(ph[levels])
        if siso:
            gains = np.abs(np.einsum("a,bac,c->b", ch.h, proj, ch.v)) ** 2
        else:
            c = ch.G.conj().T[None] + ch.H.conj().T[None] @ proj @ ch.U[None]
            gains = np.sum(np.abs(c) ** 2, axis=(1, 2))
        b = int(np.argmax(gains))
        if gains[b] > best_gain:
            best_gain, best_idx = float(gains[b]), int(idx[b])

    digits = (best_idx // nq ** np.arange(n * n)) % nq
    cfg = DiscreteConfig(n, ps)
    cfg.levels = digits.reshape(n, n).astype(np.int64)
    return best_gain, cfg
