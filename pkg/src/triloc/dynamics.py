"""Closed-form dissipative dynamics of the W state in a Lorentzian reservoir,
with optional Zeno-type protection by repeated projective measurement.

The single-excitation survival amplitude is

    E(t) = e^{-(lam - i delta) t / 2} [cosh(Om t/2) + ((lam - i delta)/Om) sinh(Om t/2)],
    Om   = sqrt((lam - i delta)^2 - 4 rabi^2)   (principal branch),

evaluated here in an overflow-free scaled-exponential form; the value is
branch-invariant since the bracket is even in Om. The state at any time is
the survival-weighted mixture  s |W><W| + (1 - s) |ggg><ggg|  with
s = |E|^2 (free) or s = exp(-Gamma_z(T) t) under measurements at interval T.

Times are in the same inverse units as ``lam``; the CLI fixes lam = 1 so
they coincide with the dimensionless tau = lam * t.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvariantViolation, ZeroSurvival
from .states import DensityMatrix, ground_state, w_state

# below this, the bracket is evaluated by its quadratic Taylor expansion to
# avoid the 0/0 at the critical point Om = 0
_SMALL_OM_T = 1e-6


@dataclass(frozen=True)
class ReservoirParams:
    """Lorentzian reservoir: spectral width ``lam``, vacuum Rabi frequency
    ``rabi`` and detuning ``delta`` (all in the same inverse-time units).

    lam = 0 is admitted as the lossless limit (pure Rabi oscillation)."""

    lam: float
    rabi: float
    delta: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.lam) and math.isfinite(self.rabi) and math.isfinite(self.delta)):
            raise InvariantViolation("reservoir parameters must be finite")
        if self.lam < 0.0:
            raise InvariantViolation(f"spectral width must be non-negative, got {self.lam}")
        if self.rabi < 0.0:
            raise InvariantViolation(f"Rabi frequency must be non-negative, got {self.rabi}")

    @classmethod
    def from_ratio(cls, r: float, delta: float = 0.0, lam: float = 1.0) -> "ReservoirParams":
        """Build from the coupling ratio R = rabi/lam at fixed width."""
        return cls(lam=lam, rabi=r * lam, delta=delta * lam)

    @property
    def coupling_ratio(self) -> float:
        """R = rabi / lam; infinite in the lossless limit."""
        return self.rabi / self.lam if self.lam > 0 else math.inf

    @property
    def omega_r(self) -> float:
        return math.sqrt(4.0 * self.rabi**2 + self.delta**2)

    @property
    def omega(self) -> complex:
        """sqrt(lam^2 - omega_r^2 - 2i delta lam), principal branch."""
        # adding 0.0 turns a -0.0 imaginary part into +0.0 so delta = 0 stays
        # on the principal side of the branch cut
        arg = complex(self.lam**2 - self.omega_r**2, -2.0 * self.delta * self.lam + 0.0)
        return cmath.sqrt(arg)


@dataclass(frozen=True)
class ZenoSchedule:
    """Projective measurements at fixed spacing ``interval``."""

    interval: float
    enabled: bool = True

    def __post_init__(self):
        if self.enabled and not self.interval > 0:
            raise InvariantViolation(f"measurement interval must be positive, got {self.interval}")


@dataclass(frozen=True, eq=False)
class TrajectoryPoint:
    tau: float
    survival: float
    rho: DensityMatrix


def survival_amplitude(tau: float, params: ReservoirParams) -> complex:
    """Amplitude E(tau) for the excitation to survive until ``tau``."""
    if tau < 0:
        raise ValueError(f"time must be non-negative, got {tau}")
    a = complex(params.lam, -params.delta)
    om = params.omega  # value is branch-invariant; principal branch by convention
    u = om * tau / 2.0
    if abs(u) < _SMALL_OM_T:
        # cosh(u) ~ 1 + u^2/2, sinh(u)/u ~ 1 + u^2/6
        bracket = (1.0 + u * u / 2.0) + (a * tau / 2.0) * (1.0 + u * u / 6.0)
        return cmath.exp(-a * tau / 2.0) * bracket
    # E = (1/2)(1 + a/Om) e^{(Om-a)t/2} + (1/2)(1 - a/Om) e^{-(Om+a)t/2};
    # Re(Om) <= lam keeps both exponents non-positive in the real part.
    ratio = a / om
    return 0.5 * (1.0 + ratio) * cmath.exp((om - a) * tau / 2.0) + 0.5 * (1.0 - ratio) * cmath.exp(
        -(om + a) * tau / 2.0
    )


def zeno_rate(interval_t: float, params: ReservoirParams) -> float:
    """Effective decay rate Gamma_z(T) = -log(|E(T)|^2) / T."""
    if not interval_t > 0:
        raise ValueError(f"measurement interval must be positive, got {interval_t}")
    p = abs(survival_amplitude(interval_t, params)) ** 2
    if p <= 0.0:
        raise ZeroSurvival(f"survival probability vanished at interval {interval_t}")
    return max(0.0, -math.log(min(p, 1.0)) / interval_t)


def survival_probability(tau: float, params: ReservoirParams, schedule: ZenoSchedule | None = None) -> float:
    """|E(tau)|^2 for free decay, or exp(-Gamma_z(T) tau) under measurement."""
    if schedule is not None and schedule.enabled:
        return math.exp(-zeno_rate(schedule.interval, params) * tau)
    p = abs(survival_amplitude(tau, params)) ** 2
    return min(p, 1.0)


def rho_w(tau: float, params: ReservoirParams, schedule: ZenoSchedule | None = None) -> TrajectoryPoint:
    """Three-qubit state at time ``tau``: the survival-weighted mixture of the
    initial W state and the fully decayed ground state."""
    s = survival_probability(tau, params, schedule)
    s = min(max(s, 0.0), 1.0)
    m = s * w_state().matrix + (1.0 - s) * ground_state().matrix
    return TrajectoryPoint(tau=float(tau), survival=s, rho=DensityMatrix(m))
