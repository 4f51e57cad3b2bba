"""Trace norm, negativity and the pi-tangle for three-qubit states.

Negativity convention: N = ||rho^T_x|| - 1, i.e. twice the absolute sum of
negative partial-transpose eigenvalues. The pi components
pi_a = N_a(bc)^2 - N_ab^2 - N_ac^2 are reported unclamped; only individual
negativities are floored at zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import DensityMatrix, hermitian_eigenvalues, partial_trace, partial_transpose

# eigensolver noise below this is treated as exact zero before clamping
_EIG_NOISE = 1e-10


def trace_norm(m) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.abs(hermitian_eigenvalues(m)).sum())


def negativity(rho: DensityMatrix, partition: int) -> float:
    """||rho^T_partition|| - 1, clamped to be non-negative."""
    eigs = hermitian_eigenvalues(partial_transpose(rho, partition))
    eigs = np.where(np.abs(eigs) < _EIG_NOISE, 0.0, eigs)
    return max(0.0, float(np.abs(eigs).sum() - 1.0))


@dataclass(frozen=True)
class PiTangleBreakdown:
    """All nine negativities plus the residual pi quantities they combine to."""

    pi_a: float
    pi_b: float
    pi_c: float
    n_one_vs_two: tuple[float, float, float]          # N_a(bc), N_b(ac), N_c(ab)
    n_pairwise: tuple[float, float, float, float, float, float]  # ab, ac, ba, bc, ca, cb
    pi_abc: float

    def to_dict(self) -> dict:
        names = ("ab", "ac", "ba", "bc", "ca", "cb")
        return {
            "pi_abc": self.pi_abc,
            "pi_a": self.pi_a,
            "pi_b": self.pi_b,
            "pi_c": self.pi_c,
            "n_one_vs_two": {
                "a_bc": self.n_one_vs_two[0],
                "b_ac": self.n_one_vs_two[1],
                "c_ab": self.n_one_vs_two[2],
            },
            "n_pairwise": dict(zip(names, self.n_pairwise)),
        }


def pi_tangle(rho: DensityMatrix) -> PiTangleBreakdown:
    """Residual-negativity tangle, averaged over the three focus choices."""
    n_a = negativity(rho, 0)
    n_b = negativity(rho, 1)
    n_c = negativity(rho, 2)
    rho_ab = partial_trace(rho, (0, 1))
    rho_ac = partial_trace(rho, (0, 2))
    rho_bc = partial_trace(rho, (1, 2))
    n_ab = negativity(rho_ab, 0)
    n_ac = negativity(rho_ac, 0)
    n_ba = negativity(rho_ab, 1)
    n_bc = negativity(rho_bc, 0)
    n_ca = negativity(rho_ac, 1)
    n_cb = negativity(rho_bc, 1)
    pi_a = n_a**2 - n_ab**2 - n_ac**2
    pi_b = n_b**2 - n_ba**2 - n_bc**2
    pi_c = n_c**2 - n_ca**2 - n_cb**2
    return PiTangleBreakdown(
        pi_a=pi_a,
        pi_b=pi_b,
        pi_c=pi_c,
        n_one_vs_two=(n_a, n_b, n_c),
        n_pairwise=(n_ab, n_ac, n_ba, n_bc, n_ca, n_cb),
        pi_abc=(pi_a + pi_b + pi_c) / 3.0,
    )
