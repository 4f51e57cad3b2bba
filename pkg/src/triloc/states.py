"""Three-qubit state algebra: density matrices, Pauli correlation tensors,
partial trace/transpose and the state families used throughout the package.

Conventions (fixed once, everything downstream depends on them):
  * Pauli basis sigma_0 = I, sigma_1 = X, sigma_2 = Y, sigma_3 = Z with
    Z|0> = +|0>.
  * Computational basis |abc> with qubit a most significant, so the W state
    (|100> + |010> + |001>)/sqrt(3) lives on indices 4, 2, 1 and has
    t_003 = +1/3.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    BadSubsystem,
    DimensionMismatch,
    FileParse,
    InvalidTensor,
    InvariantViolation,
    NonHermitianInput,
    NonSquare,
)

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-9
# PSD deficits below this are treated as rounding noise in published matrices
# and projected away; anything larger is rejected.
PSD_CLIP_LIMIT = 1e-7

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULI = (SIGMA_0, SIGMA_X, SIGMA_Y, SIGMA_Z)

_pauli_triple_cache: np.ndarray | None = None
_pauli_pair_cache: np.ndarray | None = None


def _pauli_triples() -> np.ndarray:
    """All 64 products sigma_i (x) sigma_j (x) sigma_k, shape (64, 8, 8)."""
    global _pauli_triple_cache
    if _pauli_triple_cache is None:
        triples = np.empty((64, 8, 8), dtype=complex)
        idx = 0
        for a in PAULI:
            for b in PAULI:
                ab = np.kron(a, b)
                for c in PAULI:
                    triples[idx] = np.kron(ab, c)
                    idx += 1
        triples.setflags(write=False)
        _pauli_triple_cache = triples
    return _pauli_triple_cache


def _pauli_pairs() -> np.ndarray:
    """Products sigma_i (x) sigma_j for i, j in {1,2,3}, shape (9, 4, 4)."""
    global _pauli_pair_cache
    if _pauli_pair_cache is None:
        pairs = np.stack(
            [np.kron(a, b) for a in PAULI[1:] for b in PAULI[1:]]
        )
        pairs.setflags(write=False)
        _pauli_pair_cache = pairs
    return _pauli_pair_cache


def _as_matrix(m) -> np.ndarray:
    if isinstance(m, DensityMatrix):
        return m.matrix
    return np.asarray(m, dtype=complex)


def hermitian_eigenvalues(m) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, sorted ascending.

    Accepts a DensityMatrix or any array-like. Raises NonSquare for
    rectangular input and NonHermitianInput when the symmetry defect
    exceeds 1e-10.
    """
    mat = _as_matrix(m)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {mat.shape}")
    defect = np.max(np.abs(mat - mat.conj().T)) if mat.size else 0.0
    if defect > HERMITICITY_TOL:
        raise NonHermitianInput(f"Hermiticity defect {defect:.3e} exceeds {HERMITICITY_TOL}")
    return np.linalg.eigvalsh(mat)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated quantum state: Hermitian, unit trace, positive semidefinite.

    Supported dimensions are 2, 4 and 8 (one to three qubits).
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise NonSquare(f"density matrix must be square, got shape {m.shape}")
        if m.shape[0] not in (2, 4, 8):
            raise DimensionMismatch(f"dimension must be 2, 4 or 8, got {m.shape[0]}")
        if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
            raise InvariantViolation("density matrix contains NaN or Inf entries")
        defect = np.max(np.abs(m - m.conj().T))
        if defect > HERMITICITY_TOL:
            raise InvariantViolation(f"Hermiticity defect {defect:.3e} exceeds {HERMITICITY_TOL}")
        tr = m.trace()
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvariantViolation(f"trace {tr} is not 1 within {TRACE_TOL}")
        min_eig = float(np.linalg.eigvalsh(m)[0])
        if min_eig < -PSD_TOL:
            raise InvariantViolation(f"minimum eigenvalue {min_eig:.3e} below -{PSD_TOL}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_qubits(self) -> int:
        return self.dim.bit_length() - 1

    @classmethod
    def from_pure(cls, amplitudes) -> "DensityMatrix":
        """Projector onto a normalized state vector."""
        v = np.asarray(amplitudes, dtype=complex).ravel()
        norm = np.linalg.norm(v)
        if not np.isfinite(norm) or norm == 0.0:
            raise InvariantViolation("state vector must be finite and nonzero")
        v = v / norm
        return cls(np.outer(v, v.conj()))


@dataclass(frozen=True, eq=False)
class CorrelationTensor:
    """Pauli expansion coefficients t_ijk = tr(rho sigma_i sigma_j sigma_k),
    indices 0..3 on each leg (sigma_0 = identity)."""

    values: np.ndarray

    def __post_init__(self):
        t = np.array(self.values, dtype=float)
        if t.shape != (4, 4, 4):
            raise InvalidTensor(f"expected shape (4, 4, 4), got {t.shape}")
        if not np.all(np.isfinite(t)):
            raise InvalidTensor("tensor contains NaN or Inf entries")
        t.setflags(write=False)
        object.__setattr__(self, "values", t)

    @property
    def cube(self) -> np.ndarray:
        """The purely non-identity block t_ijk, i,j,k in {1,2,3}."""
        return self.values[1:, 1:, 1:]


def correlation_tensor(rho: DensityMatrix) -> CorrelationTensor:
    """Expand an 8x8 state in the three-qubit Pauli basis."""
    if rho.dim != 8:
        raise DimensionMismatch(f"correlation tensor needs an 8x8 state, got {rho.dim}x{rho.dim}")
    traces = np.einsum("mn,xnm->x", rho.matrix, _pauli_triples())
    worst_imag = np.max(np.abs(traces.imag))
    if worst_imag > HERMITICITY_TOL:
        raise NonHermitianInput(f"Pauli traces carry imaginary parts up to {worst_imag:.3e}")
    return CorrelationTensor(traces.real.reshape(4, 4, 4))


def reconstruct(t: CorrelationTensor) -> DensityMatrix:
    """Invert the Pauli expansion: rho = (1/8) sum t_ijk sigma_i sigma_j sigma_k."""
    if abs(t.values[0, 0, 0] - 1.0) > 1e-9:
        raise InvalidTensor(f"t_000 = {t.values[0, 0, 0]} does not equal 1")
    m = np.einsum("x,xmn->mn", t.values.ravel(), _pauli_triples()) / 8.0
    return DensityMatrix(m)


def partial_trace(rho: DensityMatrix, keep: tuple[int, int]) -> DensityMatrix:
    """Trace an 8x8 state down to the ordered pair of qubits in ``keep``."""
    if rho.dim != 8:
        raise DimensionMismatch(f"partial_trace expects an 8x8 state, got {rho.dim}x{rho.dim}")
    keep = tuple(keep)
    if len(keep) != 2 or keep[0] == keep[1] or not all(q in (0, 1, 2) for q in keep):
        raise BadSubsystem(f"keep must be two distinct qubits from (0, 1, 2), got {keep}")
    traced = ({0, 1, 2} - set(keep)).pop()
    r = rho.matrix.reshape(2, 2, 2, 2, 2, 2)
    r = np.trace(r, axis1=traced, axis2=traced + 3)
    if keep[0] > keep[1]:
        r = r.transpose(1, 0, 3, 2)
    return DensityMatrix(r.reshape(4, 4))


def partial_transpose(rho: DensityMatrix, subsystem: int) -> np.ndarray:
    """Transpose one qubit of a 4x4 or 8x8 state; result is Hermitian but
    generally not positive."""
    if rho.dim not in (4, 8):
        raise DimensionMismatch(f"partial_transpose expects a 4x4 or 8x8 state, got {rho.dim}x{rho.dim}")
    n = rho.n_qubits
    if not isinstance(subsystem, (int, np.integer)) or not 0 <= subsystem < n:
        raise BadSubsystem(f"subsystem {subsystem!r} invalid for {n} qubits")
    r = rho.matrix.reshape((2,) * (2 * n))
    r = np.swapaxes(r, subsystem, subsystem + n)
    return np.ascontiguousarray(r.reshape(rho.dim, rho.dim))


# ---------------------------------------------------------------------------
# State families

def w_state() -> DensityMatrix:
    """Projector onto (|100> + |010> + |001>)/sqrt(3)."""
    v = np.zeros(8, dtype=complex)
    v[[4, 2, 1]] = 1.0 / np.sqrt(3.0)
    return DensityMatrix.from_pure(v)


def ground_state() -> DensityMatrix:
    """Projector onto |000>."""
    v = np.zeros(8, dtype=complex)
    v[0] = 1.0
    return DensityMatrix.from_pure(v)


def ghz_class(p: float, theta: float, theta3: float) -> DensityMatrix:
    """Depolarized GHZ-class state

        rho = p |psi><psi| + (1 - p) I/8,
        |psi> = cos(theta)|000> + sin(theta)|11>(cos(theta3)|0> + sin(theta3)|1>).
    """
    if not 0.0 <= p <= 1.0:
        raise InvariantViolation(f"mixing weight p must lie in [0, 1], got {p}")
    v = np.zeros(8, dtype=complex)
    v[0] = np.cos(theta)
    v[6] = np.sin(theta) * np.cos(theta3)
    v[7] = np.sin(theta) * np.sin(theta3)
    pure = np.outer(v, v.conj())
    return DensityMatrix(p * pure + (1.0 - p) * np.eye(8) / 8.0)


def maximally_mixed(dim: int = 8) -> DensityMatrix:
    return DensityMatrix(np.eye(dim, dtype=complex) / dim)


def random_pure_state(rng: np.random.Generator, dim: int = 8) -> DensityMatrix:
    """Haar-random pure state (normalized complex Gaussian vector)."""
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return DensityMatrix.from_pure(v)


def random_density_matrix(rng: np.random.Generator, dim: int = 8, rank: int | None = None) -> DensityMatrix:
    """Random mixed state from the Ginibre ensemble, rho = GG^dag / tr."""
    rank = dim if rank is None else rank
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    m = g @ g.conj().T
    return DensityMatrix(m / m.trace())


@dataclass(frozen=True)
class StateFamilyParams:
    """CLI-facing description of a state: one of the built-in families or a
    file with an explicit matrix."""

    family: str
    p: float | None = None
    theta: float | None = None
    theta3: float | None = None
    file: str | Path | None = None

    def __post_init__(self):
        fam = self.family.lower()
        object.__setattr__(self, "family", fam)
        if fam not in ("w", "ghz", "ground", "custom"):
            raise InvariantViolation(f"unknown state family {self.family!r}")
        ghz_args = (self.p, self.theta, self.theta3)
        if fam == "ghz":
            if any(a is None for a in ghz_args):
                raise InvariantViolation("ghz family requires p, theta and theta3")
        elif any(a is not None for a in ghz_args):
            raise InvariantViolation(f"p/theta/theta3 only apply to the ghz family, not {fam!r}")
        if fam == "custom" and self.file is None:
            raise InvariantViolation("custom family requires a file path")


def make_state(params: StateFamilyParams) -> DensityMatrix:
    if params.family == "w":
        return w_state()
    if params.family == "ground":
        return ground_state()
    if params.family == "ghz":
        return ghz_class(params.p, params.theta, params.theta3)
    return load_density_matrix(params.file)


def load_density_matrix(path) -> DensityMatrix:
    """Read a state from a JSON file with fields ``dim``, ``re`` and ``im``
    (row-major dim x dim arrays).

    Small positivity defects (< 1e-7, typical of matrices transcribed from
    print) are projected onto the PSD cone with a warning; anything larger is
    an error.
    """
    path = Path(path)
    try:
        payload = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FileParse(f"cannot parse state file {path}: {exc}") from exc
    if not isinstance(payload, dict):
        raise FileParse(f"state file {path} must hold a JSON object")
    missing = {"dim", "re", "im"} - payload.keys()
    if missing:
        raise FileParse(f"state file {path} lacks fields: {sorted(missing)}")
    dim = payload["dim"]
    if not isinstance(dim, int) or dim not in (2, 4, 8):
        raise FileParse(f"dim must be 2, 4 or 8, got {dim!r}")
    try:
        re = np.asarray(payload["re"], dtype=float)
        im = np.asarray(payload["im"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise FileParse(f"re/im arrays in {path} are not numeric: {exc}") from exc
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise FileParse(
            f"re/im must be {dim}x{dim} arrays, got {re.shape} and {im.shape}"
        )
    m = re + 1j * im
    defect = np.max(np.abs(m - m.conj().T))
    if defect > HERMITICITY_TOL:
        raise InvariantViolation(f"matrix in {path} has Hermiticity defect {defect:.3e}")
    min_eig = float(np.linalg.eigvalsh(m)[0])
    if min_eig < -PSD_CLIP_LIMIT:
        raise InvariantViolation(
            f"matrix in {path} has eigenvalue {min_eig:.3e}, below the -{PSD_CLIP_LIMIT} repair limit"
        )
    if min_eig < -PSD_TOL:
        warnings.warn(
            f"projecting {path} onto the PSD cone (minimum eigenvalue {min_eig:.3e})",
            stacklevel=2,
        )
        ev, vec = np.linalg.eigh(m)
        ev = np.clip(ev, 0.0, None)
        m = (vec * ev) @ vec.conj().T
        m = m / m.trace()
    return DensityMatrix(m)
