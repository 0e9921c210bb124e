"""Compiled inner loops of the tree searches.

Each off-diagonal level evaluates up to ``|Q|**2`` candidate matrices, each
needing a symmetric-unitary projection, so the per-candidate work is kept in
numba. The projection uses one-sided (Hestenes) Jacobi, which avoids LAPACK
call overhead for the small matrices involved and lets the null-space
completion be chosen explicitly. ``projection.uni_sym`` is the LAPACK
reference these routines are tested against.
"""
import numpy as np
from numba import njit

from .linalg import NumericalError

MODE_SISO = 0
MODE_UNOBSTRUCTED = 1
MODE_OBSTRUCTED = 2

MAX_SWEEPS = 80
NULL_RTOL = 1e-9
EPS = 2.220446049250313e-16


@njit(cache=True, nogil=True)
def sym_polar(a, out, vt, warm):
    """Write the unitary polar factor of the symmetric matrix ``a`` to ``out``.

    ``vt`` holds the transposed right singular vectors on exit. With ``warm``
    set, its content on entry (any unitary matrix) seeds the iteration, which
    cuts the sweep count when ``a`` is close to the previous input.
    Returns False if Jacobi sweeps did not converge.
    """
    n = a.shape[0]
    if warm:
        w = np.dot(vt, a.T.copy())  # row k holds column k of a @ V
    else:
        w = a.T.copy()
        vt[:, :] = 0
        for k in range(n):
            vt[k, k] = 1.0
    tol = n * EPS
    nrm = np.empty(n)
    total = 0.0
    for k in range(n):
        for m in range(n):
            total += a[k, m].real * a[k, m].real + a[k, m].imag * a[k, m].imag
    # columns this small are numerically zero and can never be made
    # relatively orthogonal, leave them alone
    tiny = (tol * tol) * total
    converged = False
    for _ in range(MAX_SWEEPS):
        # squared column norms, refreshed every sweep to stop drift
        for k in range(n):
            acc = 0.0
            for m in range(n):
                acc += w[k, m].real * w[k, m].real + w[k, m].imag * w[k, m].imag
            nrm[k] = acc
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                alpha = nrm[p]
                beta = nrm[q]
                g = 0j
                for k in range(n):
                    g += w[p, k].conjugate() * w[q, k]
                ag = abs(g)
                if ag == 0.0 or ag <= tol * np.sqrt(alpha * beta) or min(alpha, beta) <= tiny:
                    continue
                rotated = True
                ph = (g / ag).conjugate()
                zeta = (beta - alpha) / (2.0 * ag)
                sgn = 1.0 if zeta >= 0.0 else -1.0
                t = sgn / (abs(zeta) + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                for k in range(n):
                    x = w[p, k]
                    y = w[q, k] * ph
                    w[p, k] = c * x - s * y
                    w[q, k] = s * x + c * y
                    x = vt[p, k]
                    y = vt[q, k] * ph
                    vt[p, k] = c * x - s * y
                    vt[q, k] = s * x + c * y
                nrm[p] = alpha - t * ag
                nrm[q] = beta + t * ag
        if not rotated:
            converged = True
            break
    if not converged:
        return False

    sig = np.empty(n)
    smax = 0.0
    for k in range(n):
        acc = 0.0
        for m in range(n):
            acc += w[k, m].real * w[k, m].real + w[k, m].imag * w[k, m].imag
        sig[k] = np.sqrt(acc)
        if sig[k] > smax:
            smax = sig[k]
    for k in range(n):
        if smax > 0.0 and sig[k] > NULL_RTOL * smax:
            for m in range(n):
                w[k, m] = w[k, m] / sig[k]
        else:
            # null direction: u_k = conj(v_k) with the first sizeable
            # component of v_k made real positive
            ph = 1.0 + 0j
            for m in range(n):
                if abs(vt[k, m]) > 1e-12:
                    ph = vt[k, m] / abs(vt[k, m])
                    break
            for m in range(n):
                vt[k, m] = vt[k, m] / ph
                w[k, m] = vt[k, m].conjugate()
    # out = U V^H with U[:, k] = w[k], V[:, k] = vt[k]
    out[:, :] = np.dot(w.T.copy(), vt.conj())
    return True


@njit(cache=True, nogil=True)
def score(p, mode, hb, vb, x, y, z, norm):
    """Suitability of candidate ``p``.

    mode 0: ``Re(hb @ p @ vb)``.
    mode 1: ``(Re tr(p X) + norm) / (2 norm)`` with ``norm = ||X||_*``.
    mode 2: ``(Re tr(p^H Y p Z) + norm) / (2 norm)`` with
    ``norm = ||Y||_F ||Z||_F``.
    """
    n = p.shape[0]
    if mode == MODE_SISO:
        acc = 0j
        for a in range(n):
            row = 0j
            for b in range(n):
                row += p[a, b] * vb[b]
            acc += hb[a] * row
        return acc.real
    if mode == MODE_UNOBSTRUCTED:
        acc = 0.0
        for a in range(n):
            for b in range(n):
                v = p[a, b] * x[b, a]
                acc += v.real
        return (acc + norm) / (2.0 * norm)
    r = np.dot(np.dot(y, p), z)
    acc = 0.0
    for a in range(n):
        for b in range(n):
            v = p[a, b].conjugate() * r[a, b]
            acc += v.real
    return (acc + norm) / (2.0 * norm)


@njit(cache=True, nogil=True)
def offdiag_level(t, i, j, phasors, eps, mode, hb, vb, x, y, z, norm):
    """Evaluate one off-diagonal level.

    Candidates ``k`` for ``t[i, j]`` are scanned in alphabet order. For each,
    every reciprocal ``kk`` for ``t[j, i]`` is tried; the candidate's score is
    the best projected score over ``kk`` (lowest index on ties). The first
    candidate scoring above ``eps`` is accepted; otherwise the best one is.

    Returns ``(k, kk, r, n_scanned, ok)``; ``t[i, j]`` and ``t[j, i]`` are left
    holding the last values tried.
    """
    nq = phasors.shape[0]
    n = t.shape[0]
    s = (t + t.T) / 2.0
    proj = np.empty((n, n), dtype=np.complex128)
    vt = np.empty((n, n), dtype=np.complex128)
    warm = False
    best_r = -np.inf
    best_k = 0
    best_kk = 0
    for k in range(nq):
        t[i, j] = phasors[k]
        r_k = -np.inf
        kk_k = 0
        for kk in range(nq):
            t[j, i] = phasors[kk]
            v = (phasors[k] + phasors[kk]) / 2.0
            s[i, j] = v
            s[j, i] = v
            if not sym_polar(s, proj, vt, warm):
                return 0, 0, 0.0, k + 1, False
            warm = True
            u = score(proj, mode, hb, vb, x, y, z, norm)
            if u > r_k:
                r_k = u
                kk_k = kk
        if r_k > best_r:
            best_r = r_k
            best_k = k
            best_kk = kk_k
        if r_k > eps:
            return k, kk_k, r_k, k + 1, True
    return best_k, best_kk, best_r, nq, True


@njit(cache=True, nogil=True)
def diag_level(t, i, phasors, eps, mode, x, y, z, norm):
    """Evaluate one diagonal level on the raw partial matrix (no projection).

    Returns ``(k, r, n_scanned)``.
    """
    nq = phasors.shape[0]
    best_r = -np.inf
    best_k = 0
    for k in range(nq):
        t[i, i] = phasors[k]
        r = score(t, mode, x[0], x[0], x, y, z, norm)
        if r > best_r:
            best_r = r
            best_k = k
        if r > eps:
            return k, r, k + 1
    return best_k, best_r, nq


def project(a):
    """Symmetric polar factor of ``(a + a.T)/2`` via the compiled kernel."""
    a = np.ascontiguousarray(a, dtype=np.complex128)
    s = (a + a.T) / 2
    out = np.empty_like(s)
    vt = np.empty_like(s)
    if not sym_polar(s, out, vt, False):
        raise NumericalError(f"Jacobi SVD did not converge for input\n{a!r}")
    return out
