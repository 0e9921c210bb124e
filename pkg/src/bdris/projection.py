"""Closest symmetric-unitary projection."""
import numpy as np

from .linalg import as_matrix, DimensionError, svd

__all__ = ["uni_sym", "NULL_RTOL"]

# singular values below NULL_RTOL * s_max are treated as exact zeros
NULL_RTOL = 1e-9


def uni_sym(t):
    """Project ``t`` onto the symmetric unitary matrices.

    The symmetric part ``(T + T^T)/2`` (plain transpose) is computed first and
    replaced by its unitary polar factor ``U V^H``. When the symmetric part is
    rank deficient the null-space block is completed with ``conj(V0) V0^H``,
    which keeps the result symmetric; any unitary completion attains the same
    distance.
    """
    t = as_matrix(t, "T")
    if t.shape[0] != t.shape[1]:
        raise DimensionError(f"T must be square, got shape {t.shape}")
    s_part = (t + t.T) / 2
    u, s, v = svd(s_part)
    null = s <= NULL_RTOL * s[0] if s[0] > 0 else np.ones_like(s, dtype=bool)
    if null.any():
        v0 = v[:, null]
        for k in range(v0.shape[1]):
            col = v0[:, k]
            idx = np.flatnonzero(np.abs(col) > 1e-12)
            col /= col[idx[0]] / abs(col[idx[0]])
        u = u.copy()
        u[:, null] = v0.conj()
        v = v.copy()
        v[:, null] = v0
    return u @ v.conj().T
