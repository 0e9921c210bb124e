"""Channel containers, gain functionals and the Monte Carlo scenario generator.

Conventions
-----------
SISO: ``h`` (UE to BD-RIS) is a length-``N`` row, ``v`` (BS to BD-RIS) a
length-``N`` column, both stored as 1-D arrays; the cascade is ``h @ Theta @ v``.

MU-MISO: ``G`` is ``L x K`` (direct BS-UE), ``H`` is ``N x K`` (UE to BD-RIS)
and ``U`` is ``N x L`` (BS to BD-RIS); the cascade is ``G^H + H^H Theta U``.
"""
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .linalg import DimensionError, NumericalError, nuclear_norm

__all__ = [
    "SisoChannel",
    "MuMisoChannel",
    "ScenarioConfig",
    "gain_siso",
    "gain_mumiso",
    "gain_mumiso_expanded",
    "siso_upper_bounds",
    "path_loss",
    "gen_siso",
    "gen_mumiso",
    "complex_normal",
]


def complex_normal(rng, shape):
    """Unit-variance circularly symmetric Gaussian samples (variance 1/2 per part)."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


@dataclass(frozen=True)
class SisoChannel:
    h: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        h = np.asarray(self.h, dtype=np.complex128).reshape(-1)
        v = np.asarray(self.v, dtype=np.complex128).reshape(-1)
        if h.size == 0 or h.size != v.size:
            raise DimensionError(f"h and v must have the same positive length, got {h.size} and {v.size}")
        if not (np.all(np.isfinite(h)) and np.all(np.isfinite(v))):
            raise NumericalError("channel has non-finite entries")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "v", v)

    @property
    def n(self):
        return self.h.size

    def bound(self):
        """``||h||^2 ||v||^2``, the largest gain any unitary Theta can reach."""
        return float(np.vdot(self.h, self.h).real * np.vdot(self.v, self.v).real)


@dataclass(frozen=True, eq=False)
class MuMisoChannel:
    G: np.ndarray
    H: np.ndarray
    U: np.ndarray
    direct_obstructed: bool = field(init=False)

    def __post_init__(self):
        g = np.atleast_2d(np.asarray(self.G, dtype=np.complex128))
        h = np.atleast_2d(np.asarray(self.H, dtype=np.complex128))
        u = np.atleast_2d(np.asarray(self.U, dtype=np.complex128))
        L, K = g.shape
        if h.shape[1] != K or u.shape[1] != L or u.shape[0] != h.shape[0]:
            raise DimensionError(
                f"inconsistent shapes G {g.shape}, H {h.shape}, U {u.shape}; "
                "expected L x K, N x K and N x L")
        for name, m in (("G", g), ("H", h), ("U", u)):
            if not np.all(np.isfinite(m)):
                raise NumericalError(f"{name} has non-finite entries")
        object.__setattr__(self, "G", g)
        object.__setattr__(self, "H", h)
        object.__setattr__(self, "U", u)
        object.__setattr__(self, "direct_obstructed", not np.any(g))

    @property
    def n(self):
        return self.H.shape[0]

    @cached_property
    def X(self):
        return self.U @ self.G @ self.H.conj().T

    @cached_property
    def Y(self):
        return self.H @ self.H.conj().T

    @cached_property
    def Z(self):
        return self.U @ self.U.conj().T

    @cached_property
    def x_nuclear(self):
        return nuclear_norm(self.X)

    @cached_property
    def yz_fro(self):
        return float(np.linalg.norm(self.Y) * np.linalg.norm(self.Z))

    @cached_property
    def g_fro2(self):
        return float(np.vdot(self.G, self.G).real)


@dataclass(frozen=True)
class ScenarioConfig:
    """Path-loss geometry for the MU-MISO Monte Carlo experiments.

    BS at the origin, UE disk centred ``d_bs_ue_center`` metres away along the
    x axis, BD-RIS placed ``d_bs_ris`` from the BS and ``d_ris_ue_center``
    from the disk centre. Link distances shorter than ``min_distance`` are
    clamped to it.
    """

    pl_ref_db: float = -30.0
    d_bs_ue_center: float = 150.0
    ue_radius: float = 20.0
    d_bs_ris: float = 130.0
    d_ris_ue_center: float = 20.0
    gamma_direct: float = 3.5
    gamma_bs_ris: float = 2.2
    gamma_ris_ue: float = 2.8
    min_distance: float = 1.0
    seed: int = 0
    realizations: int = 500

    def __post_init__(self):
        for name in ("d_bs_ue_center", "d_bs_ris", "d_ris_ue_center", "min_distance"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.ue_radius < 0:
            raise ValueError("ue_radius must be non-negative")
        for name in ("gamma_direct", "gamma_bs_ris", "gamma_ris_ue"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.realizations < 1:
            raise ValueError("realizations must be at least 1")
        self.ris_position()

    def ris_position(self):
        D, a, b = self.d_bs_ue_center, self.d_bs_ris, self.d_ris_ue_center
        x = (a * a - b * b + D * D) / (2 * D)
        y2 = a * a - x * x
        if y2 < -1e-9 * a * a:
            raise ValueError(
                f"no BD-RIS position is {a} m from the BS and {b} m from a UE "
                f"disk centre {D} m away")
        return np.array([x, np.sqrt(max(y2, 0.0))])


def path_loss(d, gamma, pl_ref_db=-30.0):
    """Power path loss ``zeta0 * d**-gamma`` with ``zeta0`` given in dB."""
    d = np.asarray(d, dtype=float)
    if np.any(d <= 0):
        raise ValueError("link distance must be positive")
    return 10 ** (pl_ref_db / 10) * d ** (-gamma)


def gain_siso(ch, theta):
    theta = np.asarray(theta, dtype=np.complex128)
    if theta.shape != (ch.n, ch.n):
        raise DimensionError(f"Theta must be {ch.n}x{ch.n}, got {theta.shape}")
    return float(abs(ch.h @ theta @ ch.v) ** 2)


def _check_theta(ch, theta):
    theta = np.asarray(theta, dtype=np.complex128)
    if theta.shape != (ch.n, ch.n):
        raise DimensionError(f"Theta must be {ch.n}x{ch.n}, got {theta.shape}")
    return theta


def gain_mumiso(ch, theta):
    """``||G^H + H^H Theta U||_F^2``."""
    theta = _check_theta(ch, theta)
    c = ch.G.conj().T + ch.H.conj().T @ theta @ ch.U
    return float(np.vdot(c, c).real)


def gain_mumiso_expanded(ch, theta):
    """Same quantity as :func:`gain_mumiso` via ``X``, ``Y``, ``Z``:
    ``||G||^2 + 2 Re tr(Theta X) + tr(Theta^H Y Theta Z)``."""
    theta = _check_theta(ch, theta)
    cross = np.trace(theta @ ch.X).real
    quad = np.trace(theta.conj().T @ ch.Y @ theta @ ch.Z).real
    return float(ch.g_fro2 + 2 * cross + quad)


def siso_upper_bounds(n):
    """Mean-gain upper bounds for unit-variance Rayleigh channels:
    ``(N**2, N + N(N-1) pi**2/16)`` for BD-RIS and diagonal RIS."""
    if n < 1:
        raise ValueError("N must be positive")
    return float(n * n), float(n + n * (n - 1) * np.pi ** 2 / 16)


def _rng(*key):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(list(key))))


def gen_siso(n, seed):
    """Rayleigh SISO channel; deterministic in ``(n, seed)``."""
    if n < 1:
        raise ValueError("N must be positive")
    rng = _rng(int(seed))
    h = complex_normal(rng, n)
    v = complex_normal(rng, n)
    return SisoChannel(h, v)


def gen_mumiso(scn, n, L, K, obstructed=False, realization_index=0):
    """One path-loss-weighted Rayleigh MU-MISO draw.

    UEs are placed uniformly in the disk; every coefficient is
    ``sqrt(zeta(d_link)) * CN(0, 1)``. The stream depends only on
    ``(scn.seed, realization_index)``.
    """
    if min(n, L, K) < 1:
        raise ValueError("N, L and K must be positive")
    rng = _rng(int(scn.seed), int(realization_index))
    bs = np.zeros(2)
    ris = scn.ris_position()
    centre = np.array([scn.d_bs_ue_center, 0.0])
    rad = scn.ue_radius * np.sqrt(rng.random(K))
    phi = rng.uniform(0, 2 * np.pi, K)
    ues = centre + np.stack([rad * np.cos(phi), rad * np.sin(phi)], axis=1)

    d_direct = np.maximum(np.linalg.norm(ues - bs, axis=1), scn.min_distance)
    d_ris_ue = np.maximum(np.linalg.norm(ues - ris, axis=1), scn.min_distance)
    d_bs_ris = max(float(np.linalg.norm(ris - bs)), scn.min_distance)

    a_direct = np.sqrt(path_loss(d_direct, scn.gamma_direct, scn.pl_ref_db))
    a_ris_ue = np.sqrt(path_loss(d_ris_ue, scn.gamma_ris_ue, scn.pl_ref_db))
    a_bs_ris = np.sqrt(path_loss(d_bs_ris, scn.gamma_bs_ris, scn.pl_ref_db))

    G = complex_normal(rng, (L, K)) * a_direct[None, :]
    H = complex_normal(rng, (n, K)) * a_ris_ue[None, :]
    U = complex_normal(rng, (n, L)) * a_bs_ris
    if obstructed:
        G = np.zeros_like(G)
    return MuMisoChannel(G, H, U)
