"""Maximal Svetlichny-inequality violation, its singular-value upper bound,
and the bipartite CHSH maximum.

The Svetlichny expectation for settings (y, y', z, z') reduces, after the
closed-form maximization over the first party's directions x and x', to

    S(settings) = ||lam0 + lam1|| + ||lam0 - lam1||,
    lam0 = T_z' y + T_z y',    lam1 = T_z y - T_z' y',

with (T_c)_ij = sum_k c_k t_ijk the directional slice of the correlation
tensor; the optimal x and x' point along lam0 +/- lam1. The global maximum
over the eight remaining angles is found by a deterministic two-stage search:
a vectorized coarse product-grid scan plus seeded random starts, then
Nelder-Mead refinement of the best seeds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import neldermead
from .errors import DimensionMismatch, NonUnitVector
from .states import CorrelationTensor, DensityMatrix, _pauli_pairs, correlation_tensor

_UINT64 = 0xFFFFFFFFFFFFFFFF
_GRID_PAIR_CAP = 6 ** 4  # max (y, y') combinations scanned per (z, z') slice
_REFINE_SEEDS = 8


def _rng(seed: int, *key: int) -> np.random.Generator:
    """Independent stream keyed by (seed, *key); worker layout never matters."""
    return np.random.default_rng((seed & _UINT64, *key))


def direction(polar: float, azimuth: float) -> np.ndarray:
    """Unit vector (sin a sin b, sin a cos b, cos a)."""
    sp = math.sin(polar)
    return np.array([sp * math.sin(azimuth), sp * math.cos(azimuth), math.cos(polar)])


@dataclass(frozen=True)
class MeasurementSettings:
    """Eight angles parametrizing the unit vectors z, z', y, y'."""

    alpha1: float
    alpha2: float
    alpha3: float
    alpha4: float
    beta1: float
    beta2: float
    beta3: float
    beta4: float

    @property
    def z(self) -> np.ndarray:
        return direction(self.alpha1, self.alpha2)

    @property
    def z_prime(self) -> np.ndarray:
        return direction(self.beta1, self.beta2)

    @property
    def y(self) -> np.ndarray:
        return direction(self.alpha3, self.alpha4)

    @property
    def y_prime(self) -> np.ndarray:
        return direction(self.beta3, self.beta4)

    def as_array(self) -> np.ndarray:
        return np.array([self.alpha1, self.alpha2, self.alpha3, self.alpha4,
                         self.beta1, self.beta2, self.beta3, self.beta4])

    @classmethod
    def from_array(cls, x) -> "MeasurementSettings":
        x = [float(v) for v in x]
        return cls(*x)

    def to_dict(self) -> dict:
        return {
            "alpha": [self.alpha1, self.alpha2, self.alpha3, self.alpha4],
            "beta": [self.beta1, self.beta2, self.beta3, self.beta4],
        }


@dataclass(frozen=True)
class OptimizerConfig:
    """Knobs for the two-stage search. Defaults favour accuracy; sweeps pass
    a lighter profile."""

    starts: int = 64
    coarse_grid: int = 6
    max_iters: int = 400
    tol: float = 1e-9
    seed: int = 42

    def __post_init__(self):
        if self.starts < 1 or self.coarse_grid < 1 or self.max_iters < 1:
            raise ValueError("starts, coarse_grid and max_iters must be positive")
        if not self.tol > 0:
            raise ValueError("tol must be positive")


@dataclass(frozen=True)
class SvetlichnyResult:
    value: float
    best_settings: MeasurementSettings
    optimal_x: tuple[float, float, float]
    optimal_x_prime: tuple[float, float, float]
    starts_used: int
    seed: int

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "settings": self.best_settings.to_dict(),
            "optimal_x": list(self.optimal_x),
            "optimal_x_prime": list(self.optimal_x_prime),
            "starts": self.starts_used,
            "seed": self.seed,
        }


def t_slice(t: CorrelationTensor, direction_vec) -> np.ndarray:
    """Directional 3x3 slice (T_c)_ij = sum_k c_k t_ijk."""
    d = np.asarray(direction_vec, dtype=float)
    if d.shape != (3,):
        raise NonUnitVector(f"direction must be a 3-vector, got shape {d.shape}")
    if abs(np.linalg.norm(d) - 1.0) > 1e-10:
        raise NonUnitVector(f"|direction| = {np.linalg.norm(d)} is not 1 within 1e-10")
    return np.tensordot(t.cube, d, axes=([2], [0]))


def _lambda_vectors(cube: np.ndarray, z, zp, y, yp):
    t = np.tensordot(cube, np.column_stack([z, zp]), axes=([2], [0]))
    tz, tzp = t[..., 0], t[..., 1]
    lam0 = tzp @ y + tz @ yp
    lam1 = tz @ y - tzp @ yp
    return lam0, lam1


def _objective_angles_np(cube: np.ndarray, x) -> float:
    lam0, lam1 = _lambda_vectors(
        cube,
        direction(x[0], x[1]),
        direction(x[4], x[5]),
        direction(x[2], x[3]),
        direction(x[6], x[7]),
    )
    return float(np.linalg.norm(lam0 + lam1) + np.linalg.norm(lam0 - lam1))


def _objective_angles_loops(cube, x):
    """Same objective written as explicit loops so numba can compile it."""
    vecs = np.empty((4, 3))
    for v in range(4):
        polar = x[2 * v]
        azim = x[2 * v + 1]
        sp = math.sin(polar)
        vecs[v, 0] = sp * math.sin(azim)
        vecs[v, 1] = sp * math.cos(azim)
        vecs[v, 2] = math.cos(polar)
    z, y, zp, yp = vecs[0], vecs[1], vecs[2], vecs[3]
    sum_sq = 0.0
    diff_sq = 0.0
    for i in range(3):
        lam0_i = 0.0
        lam1_i = 0.0
        for j in range(3):
            tz_ij = cube[i, j, 0] * z[0] + cube[i, j, 1] * z[1] + cube[i, j, 2] * z[2]
            tzp_ij = cube[i, j, 0] * zp[0] + cube[i, j, 1] * zp[1] + cube[i, j, 2] * zp[2]
            lam0_i += tzp_ij * y[j] + tz_ij * yp[j]
            lam1_i += tz_ij * y[j] - tzp_ij * yp[j]
        sum_sq += (lam0_i + lam1_i) ** 2
        diff_sq += (lam0_i - lam1_i) ** 2
    return math.sqrt(sum_sq) + math.sqrt(diff_sq)


try:  # optional JIT for the optimizer's hot path; the numpy fallback is exact
    from numba import njit

    _objective_angles = njit(cache=True)(_objective_angles_loops)
    _objective_angles(np.zeros((3, 3, 3)), np.zeros(8))  # compile eagerly
except Exception:  # pragma: no cover - exercised only without a working numba
    _objective_angles = _objective_angles_np


def _objective_batch(cube: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """Objective for a batch of angle rows, shape (k, 8) -> (k,)."""
    polar = xs[:, [0, 2, 4, 6]]
    azim = xs[:, [1, 3, 5, 7]]
    sp = np.sin(polar)
    vecs = np.stack([sp * np.sin(azim), sp * np.cos(azim), np.cos(polar)], axis=-1)
    z, y, zp, yp = vecs[:, 0], vecs[:, 1], vecs[:, 2], vecs[:, 3]
    tz = np.einsum("ijk,sk->sij", cube, z)
    tzp = np.einsum("ijk,sk->sij", cube, zp)
    lam0 = np.einsum("sij,sj->si", tzp, y) + np.einsum("sij,sj->si", tz, yp)
    lam1 = np.einsum("sij,sj->si", tz, y) - np.einsum("sij,sj->si", tzp, yp)
    return np.linalg.norm(lam0 + lam1, axis=-1) + np.linalg.norm(lam0 - lam1, axis=-1)


def svetlichny_objective(t: CorrelationTensor, settings: MeasurementSettings) -> float:
    """Svetlichny expectation at fixed (y, y', z, z'), x and x' already
    maximized in closed form. Lies in [0, 4 sqrt(2)]."""
    return _objective_angles(t.cube, settings.as_array())


def _coarse_grid_scan(cube: np.ndarray, grid: int, seed: int):
    """Best (y, y') for every (z, z') slice of a product grid over the sphere
    parametrization. Returns a list of (value, angles) candidates, one per
    z-direction, in deterministic grid order."""
    polar = np.linspace(0.0, math.pi, grid) if grid > 1 else np.array([math.pi / 2])
    azim = np.arange(grid) * (2.0 * math.pi / grid)
    pp, aa = np.meshgrid(polar, azim, indexing="ij")
    angles = np.column_stack([pp.ravel(), aa.ravel()])  # (m, 2)
    m = angles.shape[0]
    sp = np.sin(angles[:, 0])
    dirs = np.column_stack(
        [sp * np.sin(angles[:, 1]), sp * np.cos(angles[:, 1]), np.cos(angles[:, 0])]
    )
    t_dirs = np.einsum("ijk,mk->mij", cube, dirs)          # (m, 3, 3)
    w1 = np.einsum("qij,mj->qmi", t_dirs, dirs)            # w1[q, m] = T_q @ dirs[m]

    if m * m <= _GRID_PAIR_CAP:
        mi, ni = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
        mi, ni = mi.ravel(), ni.ravel()
    else:
        flat = _rng(seed, 0).choice(m * m, size=_GRID_PAIR_CAP, replace=False)
        flat.sort()
        mi, ni = flat // m, flat % m

    a = w1[:, mi, :]                                       # a[p, s] = T_p @ y_s
    b = w1[:, ni, :]                                       # b[p, s] = T_p @ y'_s
    pairs = mi.size
    block = max(1, 2_000_000 // (m * pairs * 3))
    candidates = []
    for start in range(0, m, block):
        stop = min(start + block, m)
        lam0 = a[None, :, :, :] + b[start:stop, None, :, :]    # [p, q, s]
        lam1 = a[start:stop, None, :, :] - b[None, :, :, :]
        vals = (
            np.linalg.norm(lam0 + lam1, axis=-1)
            + np.linalg.norm(lam0 - lam1, axis=-1)
        )
        flat_best = vals.reshape(stop - start, -1).argmax(axis=1)
        for off, fb in enumerate(flat_best):
            p = start + off
            q, s = divmod(int(fb), pairs)
            x = np.array(
                [
                    angles[p, 0], angles[p, 1],            # z
                    angles[mi[s], 0], angles[mi[s], 1],    # y
                    angles[q, 0], angles[q, 1],            # z'
                    angles[ni[s], 0], angles[ni[s], 1],    # y'
                ]
            )
            candidates.append((float(vals[off, q, s]), x))
    return candidates


def svetlichny_max(rho: DensityMatrix, cfg: OptimizerConfig | None = None) -> SvetlichnyResult:
    """Global maximum of the Svetlichny expectation over all measurement
    settings. Deterministic for a fixed cfg.seed."""
    cfg = cfg or OptimizerConfig()
    cube = np.ascontiguousarray(correlation_tensor(rho).cube)

    candidates = _coarse_grid_scan(cube, cfg.coarse_grid, cfg.seed)
    starts = np.empty((cfg.starts, 8))
    for k in range(cfg.starts):
        x = _rng(cfg.seed, 1, k).uniform(0.0, math.pi, 8)
        x[1::2] *= 2.0
        starts[k] = x
    for val, x in zip(_objective_batch(cube, starts), starts):
        candidates.append((float(val), x))

    values = np.array([c[0] for c in candidates])
    order = np.argsort(-values, kind="stable")
    best_val, best_x = candidates[int(order[0])]
    for idx in order[:_REFINE_SEEDS]:
        x, val, _ = neldermead.maximize(
            lambda x: _objective_angles(cube, x),
            candidates[int(idx)][1],
            step=0.2,
            max_iters=cfg.max_iters,
            ftol=cfg.tol,
        )
        if val > best_val:
            best_val, best_x = val, x

    settings = MeasurementSettings.from_array(best_x)
    lam0, lam1 = _lambda_vectors(cube, settings.z, settings.z_prime, settings.y, settings.y_prime)

    def _unit(v):
        n = np.linalg.norm(v)
        return tuple(v / n) if n > 1e-12 else (0.0, 0.0, 1.0)

    return SvetlichnyResult(
        value=float(best_val),
        best_settings=settings,
        optimal_x=_unit(lam0 + lam1),
        optimal_x_prime=_unit(lam0 - lam1),
        starts_used=cfg.starts,
        seed=cfg.seed,
    )


def upper_bound(rho: DensityMatrix, *, matricization: str = "first") -> float:
    """Singular-value bound 4*s_max(M) on the Svetlichny maximum, with M the
    3x9 matricization of t_ijk (i, j, k in {1,2,3}).

    ``matricization="first"`` (rows = first-party index) is the grouping that
    reproduces the reference values; ``"last"`` exists as a deliberately wrong
    variant for negative-control checks.
    """
    cube = correlation_tensor(rho).cube
    if matricization == "first":
        m = cube.reshape(3, 9)
    elif matricization == "last":
        m = np.moveaxis(cube, 2, 0).reshape(3, 9)
    else:
        raise ValueError(f"unknown matricization {matricization!r}")
    return 4.0 * float(np.linalg.norm(m, ord=2))


def chsh_max(rho_ab: DensityMatrix) -> float:
    """Maximal CHSH value 2*sqrt(u1 + u2) of a two-qubit state, u1 >= u2 the
    largest eigenvalues of T^T T with T_ij = tr(rho sigma_i sigma_j)."""
    if rho_ab.dim != 4:
        raise DimensionMismatch(f"chsh_max expects a 4x4 state, got {rho_ab.dim}x{rho_ab.dim}")
    t = np.einsum("mn,xnm->x", rho_ab.matrix, _pauli_pairs()).real.reshape(3, 3)
    u = np.clip(np.linalg.eigvalsh(t.T @ t), 0.0, None)
    return 2.0 * math.sqrt(float(u[-1] + u[-2]))
