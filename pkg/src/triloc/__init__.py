"""triloc: tripartite nonlocality, entanglement and Zeno-protected dynamics
for three-qubit states."""

__version__ = "0.1.0"

from .dynamics import (
    ReservoirParams,
    TrajectoryPoint,
    ZenoSchedule,
    rho_w,
    survival_amplitude,
    survival_probability,
    zeno_rate,
)
from .entanglement import PiTangleBreakdown, negativity, pi_tangle, trace_norm
from .errors import TrilocError
from .nonlocality import (
    MeasurementSettings,
    OptimizerConfig,
    SvetlichnyResult,
    chsh_max,
    svetlichny_max,
    svetlichny_objective,
    t_slice,
    upper_bound,
)
from .states import (
    CorrelationTensor,
    DensityMatrix,
    StateFamilyParams,
    correlation_tensor,
    ghz_class,
    ground_state,
    hermitian_eigenvalues,
    load_density_matrix,
    make_state,
    maximally_mixed,
    partial_trace,
    partial_transpose,
    random_density_matrix,
    random_pure_state,
    reconstruct,
    w_state,
)
from .sweep import SweepRow, sweep

__all__ = [
    "__version__",
    "CorrelationTensor",
    "DensityMatrix",
    "MeasurementSettings",
    "OptimizerConfig",
    "PiTangleBreakdown",
    "ReservoirParams",
    "StateFamilyParams",
    "SvetlichnyResult",
    "SweepRow",
    "TrajectoryPoint",
    "TrilocError",
    "ZenoSchedule",
    "chsh_max",
    "correlation_tensor",
    "ghz_class",
    "ground_state",
    "hermitian_eigenvalues",
    "load_density_matrix",
    "make_state",
    "maximally_mixed",
    "negativity",
    "partial_trace",
    "partial_transpose",
    "pi_tangle",
    "random_density_matrix",
    "random_pure_state",
    "reconstruct",
    "rho_w",
    "survival_amplitude",
    "survival_probability",
    "sweep",
    "svetlichny_max",
    "svetlichny_objective",
    "t_slice",
    "trace_norm",
    "upper_bound",
    "w_state",
    "zeno_rate",
]
