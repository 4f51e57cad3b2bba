import numpy as np
import pytest

from helpers import bell_phi_plus, ket
from triloc import (
    DensityMatrix,
    ReservoirParams,
    ZenoSchedule,
    ghz_class,
    ground_state,
    hermitian_eigenvalues,
    negativity,
    partial_trace,
    partial_transpose,
    pi_tangle,
    random_density_matrix,
    random_pure_state,
    rho_w,
    survival_probability,
    trace_norm,
    w_state,
)
from triloc.errors import BadSubsystem, NonHermitianInput
from triloc.states import SIGMA_Z


# --- trace norm ---------------------------------------------------------------

def test_trace_norm_psd_state():
    rng = np.random.default_rng(3)
    for _ in range(20):
        assert trace_norm(random_density_matrix(rng)) == pytest.approx(1.0, abs=1e-10)


def test_trace_norm_pauli_z():
    assert trace_norm(SIGMA_Z) == pytest.approx(2.0, abs=1e-14)


def test_trace_norm_bell_partial_transpose():
    assert trace_norm(partial_transpose(bell_phi_plus(), 0)) == pytest.approx(2.0, abs=1e-12)


def test_trace_norm_lower_bound_and_validation():
    rng = np.random.default_rng(5)
    m = rng.standard_normal((4, 4))
    m = m + m.T
    assert trace_norm(m) >= abs(np.trace(m)) - 1e-12
    with pytest.raises(NonHermitianInput):
        trace_norm(np.array([[0.0, 1.0], [0.0, 0.0]]))


# --- negativity -----------------------------------------------------------------

def test_negativity_w_one_vs_two():
    # pure bipartition a|(bc): Schmidt weights 1/3 and 2/3, N = 2 s1 s2
    expected = 2 * np.sqrt(1 / 3) * np.sqrt(2 / 3)
    assert negativity(w_state(), 0) == pytest.approx(expected, abs=1e-12)
    assert expected == pytest.approx(2 * np.sqrt(2) / 3, abs=1e-15)


def test_negativity_w_pairwise():
    reduced = partial_trace(w_state(), (0, 1))
    assert negativity(reduced, 0) == pytest.approx((np.sqrt(5) - 1) / 3, abs=1e-12)


def test_negativity_separable_diagonal():
    rho = DensityMatrix(np.diag([0.25] * 4).astype(complex))
    assert negativity(rho, 0) == 0.0


def test_negativity_two_formulas_agree():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        dim = int(rng.choice([4, 8]))
        rho = random_density_matrix(rng, dim=dim)
        sub = int(rng.integers(0, rho.n_qubits))
        via_trace_norm = negativity(rho, sub)
        eigs = hermitian_eigenvalues(partial_transpose(rho, sub))
        via_negative_part = 2.0 * float(-eigs[eigs < 0].sum())
        assert via_trace_norm == pytest.approx(via_negative_part, abs=1e-10)


def test_negativity_bad_subsystem():
    with pytest.raises(BadSubsystem):
        negativity(w_state(), 5)


def test_negativity_pure_states_match_schmidt_oracle():
    rng = np.random.default_rng(11)
    for _ in range(100):
        rho = random_pure_state(rng)
        vec = rho.matrix[:, np.argmax(np.diag(rho.matrix.real))]
        vec = vec / np.linalg.norm(vec)
        s = np.linalg.svd(vec.reshape(2, 4), compute_uv=False)
        assert negativity(rho, 0) == pytest.approx(2 * s[0] * s[1], abs=1e-9)


# --- pi tangle --------------------------------------------------------------------

def test_pi_tangle_product_state():
    out = pi_tangle(ground_state())
    assert out.pi_abc == pytest.approx(0.0, abs=1e-12)
    assert all(abs(n) <= 1e-12 for n in out.n_one_vs_two + out.n_pairwise)


def test_pi_tangle_w_state():
    out = pi_tangle(w_state())
    n_one = 2 * np.sqrt(2) / 3
    n_pair = (np.sqrt(5) - 1) / 3
    expected = n_one**2 - 2 * n_pair**2
    assert out.pi_abc == pytest.approx(expected, abs=1e-12)
    assert out.pi_abc == pytest.approx(4 * (np.sqrt(5) - 1) / 9, abs=1e-9)


def test_pi_tangle_ghz():
    out = pi_tangle(ghz_class(1.0, np.pi / 4, np.pi / 2))
    assert out.pi_abc == pytest.approx(1.0, abs=1e-9)
    assert max(out.n_pairwise) <= 1e-10


def test_pi_tangle_breakdown_consistency():
    rng = np.random.default_rng(13)
    for _ in range(50):
        out = pi_tangle(random_density_matrix(rng))
        assert out.pi_abc == (out.pi_a + out.pi_b + out.pi_c) / 3
        assert all(n >= 0.0 for n in out.n_one_vs_two + out.n_pairwise)


def test_pi_tangle_symmetric_along_trajectory():
    params = ReservoirParams.from_ratio(10.0)
    for tau in (0.0, 0.05, 0.2, 0.7, 1.5):
        out = pi_tangle(rho_w(tau, params).rho)
        assert out.pi_a == pytest.approx(out.pi_b, abs=1e-10)
        assert out.pi_a == pytest.approx(out.pi_c, abs=1e-10)


def test_pi_tangle_depends_only_on_survival():
    # two different reservoir/schedule routes tuned (by bisection) to the same
    # survival produce the same tangle
    strong = ReservoirParams.from_ratio(20.0)
    weak = ReservoirParams.from_ratio(0.2)
    schedule = ZenoSchedule(interval=0.001)
    target = survival_probability(0.35, strong, schedule)

    lo, hi = 0.0, 30.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if survival_probability(mid, weak) > target:
            lo = mid
        else:
            hi = mid
    tau_weak = 0.5 * (lo + hi)
    assert survival_probability(tau_weak, weak) == pytest.approx(target, abs=1e-13)

    via_zeno = pi_tangle(rho_w(0.35, strong, schedule).rho)
    via_free = pi_tangle(rho_w(tau_weak, weak).rho)
    assert via_zeno.pi_abc == pytest.approx(via_free.pi_abc, abs=1e-12)
