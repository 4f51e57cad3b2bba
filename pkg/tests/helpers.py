"""Shared oracles and state builders used across the test modules.

Everything here is deliberately independent of the package's own code paths:
brute-force optimizers, hand-built matrices and textbook formulas used to
freeze expected values.
"""

import numpy as np

from triloc import DensityMatrix

SQRT2 = np.sqrt(2.0)


def bell_phi_plus() -> DensityMatrix:
    v = np.zeros(4, dtype=complex)
    v[0] = v[3] = 1 / SQRT2
    return DensityMatrix.from_pure(v)


def ket(*bits) -> np.ndarray:
    """Computational-basis vector |b1 b2 ... bn>, first bit most significant."""
    idx = 0
    for b in bits:
        idx = 2 * idx + b
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[idx] = 1.0
    return v


def random_hermitian(rng, dim):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return g + g.conj().T


def haar_unitary(rng, dim=2):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def radical_form(lam0, lam1):
    """Equivalent closed form of ||l0+l1|| + ||l0-l1|| via the radical
    2*sqrt((a + sqrt(a^2 - 4<l0,l1>^2)) / 2), a = ||l0||^2 + ||l1||^2."""
    a = float(lam0 @ lam0 + lam1 @ lam1)
    inner = float(lam0 @ lam1)
    disc = max(a * a - 4.0 * inner * inner, 0.0)
    return 2.0 * np.sqrt(0.5 * (a + np.sqrt(disc)))


def svetlichny_multistart_scipy(rho: DensityMatrix, n_starts=40, seed=0) -> float:
    """Independent pure-multistart simplex maximizer built on scipy."""
    from scipy.optimize import minimize

    from triloc import correlation_tensor

    cube = correlation_tensor(rho).cube

    def neg(x):
        pol, az = x[[0, 2, 4, 6]], x[[1, 3, 5, 7]]
        sp = np.sin(pol)
        v = np.stack([sp * np.sin(az), sp * np.cos(az), np.cos(pol)], axis=-1)
        z, y, zp, yp = v
        tz = np.tensordot(cube, z, axes=([2], [0]))
        tzp = np.tensordot(cube, zp, axes=([2], [0]))
        l0 = tzp @ y + tz @ yp
        l1 = tz @ y - tzp @ yp
        return -(np.linalg.norm(l0 + l1) + np.linalg.norm(l0 - l1))

    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(n_starts):
        x0 = rng.uniform(0, np.pi, 8)
        x0[1::2] *= 2
        res = minimize(neg, x0, method="Nelder-Mead",
                       options=dict(maxiter=800, xatol=1e-9, fatol=1e-12))
        best = max(best, -res.fun)
    return best


def chsh_direct_scipy(rho: DensityMatrix, n_starts=24, seed=0) -> float:
    """CHSH maximum by direct optimization over the second party's two
    directions (first party handled in closed form)."""
    from scipy.optimize import minimize

    from triloc.states import _pauli_pairs

    t = np.einsum("mn,xnm->x", rho.matrix, _pauli_pairs()).real.reshape(3, 3)

    def neg(x):
        pol, az = x[[0, 2]], x[[1, 3]]
        sp = np.sin(pol)
        v = np.stack([sp * np.sin(az), sp * np.cos(az), np.cos(pol)], axis=-1)
        b, bp = v
        return -(np.linalg.norm(t @ (b + bp)) + np.linalg.norm(t @ (b - bp)))

    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(n_starts):
        x0 = rng.uniform(0, np.pi, 4)
        x0[1::2] *= 2
        res = minimize(neg, x0, method="Nelder-Mead",
                       options=dict(maxiter=600, xatol=1e-10, fatol=1e-13))
        best = max(best, -res.fun)
    return best
