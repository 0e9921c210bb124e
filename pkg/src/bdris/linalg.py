"""Dense complex matrix helpers.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``. The
functions here validate shapes and finiteness and delegate the numerics to
numpy/LAPACK.
"""
import numpy as np

__all__ = [
    "DimensionError",
    "NumericalError",
    "as_matrix",
    "svd",
    "nuclear_norm",
    "fro_norm",
    "trace",
    "matmul",
    "conj_transpose",
]


class DimensionError(ValueError):
    """Operands have incompatible or unsupported shapes."""


class NumericalError(ArithmeticError):
    """A numerical routine failed (non-convergence, non-finite values)."""


def as_matrix(a, name="A"):
    """Return ``a`` as a finite 2-D complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise DimensionError(f"{name} must be a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NumericalError(f"{name} has non-finite entries")
    return m


def _square(a, name="A"):
    m = as_matrix(a, name)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {m.shape}")
    return m


def svd(a):
    """Full singular value decomposition ``A = U @ diag(S) @ V^H``.

    Singular values are sorted in descending order. The phase of each
    singular pair is fixed so that the first non-negligible component of
    every left singular vector is real and positive; this makes the factors
    reproducible across calls.

    Parameters
    ----------
    a : (n, n) array_like
        Square complex matrix.

    Returns
    -------
    U : (n, n) ndarray
    S : (n,) ndarray
    V : (n, n) ndarray
        Note that ``V`` itself is returned, not ``V^H``.
    """
    m = _square(a)
    try:
        u, s, vh = np.linalg.svd(m, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD did not converge for input\n{m!r}") from exc
    v = vh.conj().T
    for k in range(u.shape[1]):
        col = u[:, k]
        idx = np.flatnonzero(np.abs(col) > 1e-12)
        if idx.size:
            ph = col[idx[0]] / abs(col[idx[0]])
            u[:, k] = col / ph
            v[:, k] = v[:, k] / ph
    return u, s, v


def nuclear_norm(a):
    """Sum of the singular values of a square matrix."""
    return float(np.sum(svd(a)[1]))


def fro_norm(a):
    return float(np.linalg.norm(as_matrix(a), "fro"))


def trace(a):
    return complex(np.trace(_square(a)))


def matmul(a, b):
    ma, mb = as_matrix(a, "A"), as_matrix(b, "B")
    if ma.shape[1] != mb.shape[0]:
        raise DimensionError(f"cannot multiply {ma.shape} by {mb.shape}")
    return ma @ mb


def conj_transpose(a):
    return as_matrix(a).conj().T
