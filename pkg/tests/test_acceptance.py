"""Golden acceptance suite.

One test per criterion, run in file order; each prints a single
``[PASS]/[FAIL] criterion N`` line (visible with ``pytest -s``). Criteria with
several sub-claims evaluate all of them and report every violation at once
instead of stopping at the first.

Two criteria encode external reference values that this implementation
provably cannot and should not match; their tests state the discrepancy in
their failure output rather than being weakened:

* criterion 1, rows 3-4: the reference S values (3.8610, 3.8298) lie below
  the true maxima, which coincide with the tight singular-value bound
  (4.000647, 3.968438) - confirmed here by two independent optimizers and a
  direct operator-expectation evaluation.
* criterion 8: the strict survival chain breaks at tau = T (a single
  measurement reproduces free evolution exactly) and at free-revival peaks,
  and S-domination fails at free-survival nodes because S is not monotone in
  the survival (the fully decayed product state sits at S = 4).
"""

import time

import numpy as np
import pytest

import test_dynamics
import test_entanglement
import test_nonlocality
import test_states
from triloc import (
    DensityMatrix,
    OptimizerConfig,
    ReservoirParams,
    ZenoSchedule,
    chsh_max,
    ghz_class,
    ground_state,
    partial_trace,
    pi_tangle,
    random_density_matrix,
    rho_w,
    survival_probability,
    svetlichny_max,
    upper_bound,
    w_state,
    zeno_rate,
)
from triloc.sweep import SWEEP_OPTIMIZER

REF_TABLE1_S = (4.8990, 3.9192, 3.8610, 3.8298, 5.6569, 4.5255)
REF_TABLE1_BOUND = (4.8990, 3.9192, 4.0006, 3.9684, 5.6569, 4.5255)
TABLE1_PARAMS = (
    (1.0, np.pi / 3, np.pi / 2),
    (0.8, np.pi / 3, np.pi / 2),
    (0.998, np.pi / 3, 0.6216),
    (0.99, np.pi / 3, 0.6215),
    (1.0, np.pi / 4, np.pi / 2),
    (0.8, np.pi / 4, np.pi / 2),
)


def report(num, title, failures, detail=""):
    status = "PASS" if not failures else "FAIL"
    line = f"[{status}] criterion {num}: {title}"
    if detail:
        line += f" ({detail})"
    for f in failures:
        line += f"\n         - {f}"
    print(line)
    assert not failures, line


def trajectory_state(survival: float) -> DensityMatrix:
    return DensityMatrix(survival * w_state().matrix + (1 - survival) * ground_state().matrix)


def test_c01_table1_reproduction():
    failures = []
    t0 = time.perf_counter()
    for i, ((p, th, th3), ref_s, ref_b) in enumerate(zip(TABLE1_PARAMS, REF_TABLE1_S, REF_TABLE1_BOUND), 1):
        rho = ghz_class(p, th, th3)
        s = svetlichny_max(rho).value
        b = upper_bound(rho)
        if abs(s - ref_s) > 5e-3:
            failures.append(f"row {i}: S = {s:.6f}, reference {ref_s} (diff {s - ref_s:+.4f})")
        if abs(b - ref_b) > 1e-3:
            failures.append(f"row {i}: bound = {b:.6f}, reference {ref_b}")
    elapsed = time.perf_counter() - t0
    if elapsed >= 60:
        failures.append(f"runtime {elapsed:.1f}s exceeds 60s")
    report(1, "Table-1 reproduction", failures, f"runtime {elapsed:.1f}s")


def test_c02_w_state_value():
    t0 = time.perf_counter()
    value = svetlichny_max(w_state()).value
    elapsed = time.perf_counter() - t0
    failures = []
    if abs(value - 4.35) > 0.01:
        failures.append(f"S(W) = {value:.4f}, expected 4.35 +/- 0.01")
    if elapsed >= 10:
        failures.append(f"runtime {elapsed:.1f}s exceeds 10s")
    report(2, "W-state genuine tripartite nonlocality", failures, f"S = {value:.4f} in {elapsed:.1f}s")


def test_c03_depolarization_scaling():
    failures = []
    for theta in (np.pi / 4, np.pi / 3):
        pure = svetlichny_max(ghz_class(1.0, theta, np.pi / 2)).value
        for p in (0.6, 0.8, 1.0):
            mixed = svetlichny_max(ghz_class(p, theta, np.pi / 2)).value
            if abs(mixed - p * pure) > 2e-3:
                failures.append(f"theta={theta:.3f}, p={p}: {mixed:.5f} vs p*pure {p * pure:.5f}")
    report(3, "depolarization scaling", failures)


def test_c04_bound_dominance_500_random_states():
    rng = np.random.default_rng(2024)
    failures = []
    for k in range(500):
        rho = random_density_matrix(rng)
        s = svetlichny_max(rho, SWEEP_OPTIMIZER).value
        b = upper_bound(rho)
        if s > b + 1e-6:
            failures.append(f"state {k}: S = {s:.8f} exceeds bound {b:.8f}")
    report(4, "bound dominance on 500 random states", failures)


def test_c05_pi_tangle_golden_values():
    failures = []
    w_out = pi_tangle(w_state())
    # independent derivation: Schmidt weights 1/3, 2/3 across one-vs-two and
    # the eigenvalue (1-sqrt(5))/6 of the pairwise partial transpose
    n_one = 2 * np.sqrt(2) / 3
    n_pair = (np.sqrt(5) - 1) / 3
    derived = n_one**2 - 2 * n_pair**2
    if abs(derived - 4 * (np.sqrt(5) - 1) / 9) > 1e-15:
        failures.append("internal: derivation does not simplify to 4(sqrt5-1)/9")
    if abs(w_out.pi_abc - derived) > 1e-9:
        failures.append(f"pi(W) = {w_out.pi_abc:.12f}, expected {derived:.12f}")
    ghz_out = pi_tangle(ghz_class(1.0, np.pi / 4, np.pi / 2))
    if abs(ghz_out.pi_abc - 1.0) > 1e-9:
        failures.append(f"pi(GHZ) = {ghz_out.pi_abc:.12f}, expected 1")
    report(5, "pi-tangle golden values", failures)


def test_c06_dynamics_shape_properties():
    failures = []
    for r in (0.1, 0.2):
        params = ReservoirParams.from_ratio(r)
        s = np.array([survival_probability(t, params) for t in np.linspace(0, 30, 1000)])
        if not np.all(np.diff(s) <= 1e-12):
            failures.append(f"R={r}: survival not monotone non-increasing")
    for r in (10.0, 20.0):
        params = ReservoirParams.from_ratio(r)
        s = np.array([survival_probability(t, params) for t in np.linspace(0, 2, 2000)])
        maxima = int(((s[1:-1] > s[:-2]) & (s[1:-1] > s[2:])).sum())
        if maxima < 3:
            failures.append(f"R={r}: only {maxima} local maxima")

    # S(tau) on a 2000-point grid: after the first down-crossing of 4 the
    # violation never recurs; values near the decision boundary are
    # re-verified with the full-strength optimizer profile
    params = ReservoirParams.from_ratio(20.0)
    taus = np.linspace(0, 2, 2000)
    values = np.array(
        [svetlichny_max(rho_w(t, params).rho, SWEEP_OPTIMIZER).value for t in taus]
    )
    below = np.nonzero(values < 4.0)[0]
    if below.size == 0 or values[0] <= 4.0:
        failures.append("no down-crossing of 4 found")
    else:
        first = below[0]
        for i in range(first, taus.size):
            v = values[i]
            if v > 3.9:
                v = svetlichny_max(rho_w(taus[i], params).rho).value
            if v > 4.0 + 1e-4:
                failures.append(f"tau={taus[i]:.4f}: S = {v:.6f} re-exceeds 4")
    report(6, "dynamics shape properties", failures)


def test_c07_complementarity():
    failures = []
    grids = {20.0: np.linspace(0, 2, 161), 0.1: np.linspace(0, 30, 151)}
    for r, taus in grids.items():
        params = ReservoirParams.from_ratio(r)
        worst_chsh = 0.0
        for t in taus:
            rho = rho_w(t, params).rho
            marginals = [partial_trace(rho, keep) for keep in ((0, 1), (0, 2), (1, 2))]
            for m in marginals[1:]:
                if np.max(np.abs(m.matrix - marginals[0].matrix)) > 1e-12:
                    failures.append(f"R={r}, tau={t:.3f}: marginals differ")
                    break
            worst_chsh = max(worst_chsh, max(chsh_max(m) for m in marginals))
        if worst_chsh > 2.0 + 1e-12:
            failures.append(f"R={r}: CHSH reaches {worst_chsh:.6f} > 2")
    report(7, "complementarity of tripartite nonlocality", failures)


def test_c08_zeno_protection():
    failures = []
    params = ReservoirParams.from_ratio(20.0)
    taus = np.arange(1, 101) / 100.0
    free = np.array([survival_probability(t, params) for t in taus])
    zeno = {
        T: np.array([survival_probability(t, params, ZenoSchedule(interval=T)) for t in taus])
        for T in (0.001, 0.005, 0.01)
    }

    def chain(name, hi, lo):
        bad = np.nonzero(~(hi > lo))[0]
        if bad.size:
            failures.append(
                f"survival ordering {name} fails at {bad.size}/100 grid points "
                f"(first at tau={taus[bad[0]]:.2f}: {hi[bad[0]]:.6f} vs {lo[bad[0]]:.6f})"
            )

    chain("T=0.001 > T=0.005", zeno[0.001], zeno[0.005])
    chain("T=0.005 > T=0.01", zeno[0.005], zeno[0.01])
    chain("T=0.01 > free", zeno[0.01], free)

    schedule = ZenoSchedule(interval=0.001)
    s_zeno = np.array(
        [svetlichny_max(rho_w(t, params, schedule).rho, SWEEP_OPTIMIZER).value for t in taus]
    )
    s_free = np.array(
        [svetlichny_max(rho_w(t, params).rho, SWEEP_OPTIMIZER).value for t in taus]
    )
    bad = np.nonzero(s_zeno < s_free - 1e-4)[0]
    if bad.size:
        failures.append(
            f"S domination (T=0.001 vs free) fails at {bad.size}/100 grid points "
            f"(first at tau={taus[bad[0]]:.2f}: {s_zeno[bad[0]]:.4f} vs {s_free[bad[0]]:.4f})"
        )

    pi_zeno = np.array([pi_tangle(rho_w(t, params, schedule).rho).pi_abc for t in taus])
    pi_free = np.array([pi_tangle(rho_w(t, params).rho).pi_abc for t in taus])
    bad = np.nonzero(pi_zeno < pi_free - 1e-12)[0]
    if bad.size:
        failures.append(f"pi domination fails at {bad.size}/100 grid points")

    ratio = zeno_rate(1e-4, ReservoirParams.from_ratio(1.0)) / (1.0**2 * 1e-4)
    if abs(ratio - 1.0) > 0.01:
        failures.append(f"Gamma_z/(rabi^2 T) = {ratio:.4f}, expected 1 +/- 0.01")

    report(8, "Zeno protection", failures)


INVARIANT_SUITE = (
    test_states.test_eigenvalues_sum_and_shift_properties,
    test_states.test_random_pure_states_satisfy_invariants,
    test_states.test_reconstruct_round_trip_random,
    test_states.test_partial_trace_preserves_trace_and_mixing,
    test_states.test_partial_trace_w_pair_symmetry,
    test_states.test_partial_transpose_involution_and_hermiticity,
    test_nonlocality.test_objective_matches_radical_form,
    test_nonlocality.test_objective_sign_symmetry,
    test_nonlocality.test_max_local_unitary_invariance,
    test_nonlocality.test_max_depolarization_scaling,
    test_nonlocality.test_two_independent_optimizers_agree,
    test_entanglement.test_negativity_two_formulas_agree,
    test_entanglement.test_negativity_pure_states_match_schmidt_oracle,
    test_entanglement.test_pi_tangle_symmetric_along_trajectory,
    test_entanglement.test_pi_tangle_depends_only_on_survival,
    test_dynamics.test_amplitude_branch_invariance,
    test_dynamics.test_amplitude_bounded_fuzz,
    test_dynamics.test_amplitude_continuous_at_critical_point,
    test_dynamics.test_survival_monotone_weak_coupling,
    test_dynamics.test_survival_revivals_strong_coupling,
    test_dynamics.test_rho_w_fuzz_invariants,
)


def test_c09_invariant_suite():
    failures = []
    for fn in INVARIANT_SUITE:
        try:
            fn()
        except Exception as exc:  # noqa: BLE001 - aggregate everything
            failures.append(f"{fn.__module__}.{fn.__name__}: {exc}")
    report(9, "module invariant suite", failures, f"{len(INVARIANT_SUITE)} property groups")
