"""Built-in oracle fixtures and invariant spot-checks behind `ccshare selftest`.

Each check prints one pass/fail line; the command exits 0 only if every
check passes.  These are quick smoke versions of the full test suite,
meant for verifying an installation.
"""

from __future__ import annotations

import sys

import numpy as np

from .experiments import ExperimentConfig, compute_record_stream
from .linalg import PureState, partial_trace, reduce_pair, von_neumann_entropy
from .measures import (
    Z_DIR,
    cc_one_rest_pure,
    classical_correlator,
    cqd,
    czz_one_rest,
    ggm,
    local_work,
    measured_mutual_information,
    sum_pairwise,
)
from .optimize import BlochMeasurement, bloch_projectors
from .sampling import SampleSeed, haar_random_pure
from .states import basis_product, ghz, w_state


def _random_local_unitary(rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def _apply_locals(psi: PureState, unitaries: list[np.ndarray]) -> PureState:
    tens = psi.amplitudes.reshape((2,) * psi.num_qubits)
    for q, u in enumerate(unitaries):
        tens = np.moveaxis(np.tensordot(u, tens, axes=([1], [q])), 0, q)
    amps = tens.reshape(-1)
    return PureState(psi.num_qubits, amps / np.linalg.norm(amps))


def _check_fixture_oracles() -> list[str]:
    failures = []
    for n in (3, 4):
        g = ghz(n)
        if abs(sum_pairwise(g, "czz")[0] - (n - 1)) > 1e-9:
            failures.append(f"GHZ{n} sum czz != {n - 1}")
        if abs(sum_pairwise(g, "cqd")[0] - (n - 1)) > 1e-6:
            failures.append(f"GHZ{n} sum cqd != {n - 1}")
        p = basis_product("0" * n)
        if abs(sum_pairwise(p, "clw")[0] - (n - 1)) > 1e-6:
            failures.append(f"|0>^{n} sum clw != {n - 1}")
    r00 = reduce_pair(basis_product("00"), 1, 2)
    if abs(classical_correlator(r00, Z_DIR, Z_DIR, "covariance")) > 1e-12:
        failures.append("covariance correlator of |00> != 0")
    if abs(ggm(ghz(4)) - 0.5) > 1e-9:
        failures.append("GGM(GHZ4) != 0.5")
    if abs(ggm(basis_product("0000"))) > 1e-9:
        failures.append("GGM(product) != 0")
    if abs(ggm(w_state(3)) - 1 / 3) > 1e-9:
        failures.append("GGM(W3) != 1/3")
    if abs(czz_one_rest(ghz(3)) - 1.0) > 1e-9:
        failures.append("czz one-rest of GHZ3 != 1")
    if abs(cc_one_rest_pure(ghz(3), "clw") - 2 / 3) > 1e-9:
        failures.append("clw one-rest of GHZ3 != 2/3")
    return failures


def _check_local_unitary_invariance() -> list[str]:
    rng = np.random.default_rng(11)
    failures = []
    for i in range(3):
        psi = haar_random_pure(3, SampleSeed(101, i))
        rotated = _apply_locals(psi, [_random_local_unitary(rng) for _ in range(3)])
        for name, fn in (
            ("cqd", cqd),
            ("clw", local_work),
            ("cmi", measured_mutual_information),
        ):
            a = fn(reduce_pair(psi, 1, 2))
            b = fn(reduce_pair(rotated, 1, 2))
            if abs(a - b) > 2e-4:
                failures.append(f"{name} not LU-invariant: |{a} - {b}| > 2e-4")
        if abs(ggm(psi) - ggm(rotated)) > 2e-4:
            failures.append("ggm not LU-invariant")
    return failures


def _check_pure_state_reduction() -> list[str]:
    failures = []
    for i in range(10):
        psi = haar_random_pure(2, SampleSeed(102, i))
        s1 = von_neumann_entropy(partial_trace(psi.projector(), {1}))
        if abs(cqd(reduce_pair(psi, 1, 2)) - s1) > 1e-4:
            failures.append(f"cqd != S(rho1) for pure state {i}")
    return failures


def _check_mixture_identity() -> list[str]:
    failures = []
    rng = np.random.default_rng(12)
    for i in range(5):
        psi = haar_random_pure(3, SampleSeed(103, i))
        rho = reduce_pair(psi, 1, 2)
        rho1 = partial_trace(rho, {1}).matrix
        m = BlochMeasurement(rng.uniform(0, np.pi / 2), rng.uniform(0, 2 * np.pi))
        total = np.zeros((2, 2), dtype=np.complex128)
        for p_op in bloch_projectors(m):
            big = np.kron(np.eye(2), p_op)
            branch = big @ rho.matrix @ big
            total += branch.reshape(2, 2, 2, 2).trace(axis1=1, axis2=3)
        if np.max(np.abs(total - rho1)) > 1e-10:
            failures.append(f"sum_i p_i rho_1|i != rho_1 for state {i}")
    return failures


def _check_optimizer_vs_fine_grid() -> list[str]:
    failures = []
    fine_t = np.linspace(0, np.pi / 2, 61)
    fine_p = np.linspace(0, 2 * np.pi, 120, endpoint=False)
    tt, pp = (a.ravel() for a in np.meshgrid(fine_t, fine_p, indexing="ij"))
    for i in range(5):
        psi = haar_random_pure(2, SampleSeed(104, i))
        rho = reduce_pair(psi, 1, 2)
        from .measures import _branch_terms, _cond_kernel, _proj_flat, _rho4

        kernel = _cond_kernel(_rho4(rho))
        fine_min = float(np.min(_branch_terms(_proj_flat(tt, pp), kernel)[0]))
        s1 = von_neumann_entropy(partial_trace(rho, {1}))
        value = cqd(rho)
        if value < s1 - fine_min - 1e-4:
            failures.append(f"optimizer worse than fine grid on state {i}")
    return failures


def _check_thread_determinism() -> list[str]:
    base = dict(experiment="E1", n_qubits=3, samples=200, master_seed=5, quiet=True)
    rec1 = compute_record_stream(ExperimentConfig(workers=1, **base), {"cxx", "czz"})
    rec2 = compute_record_stream(ExperimentConfig(workers=2, **base), {"cxx", "czz"})
    for a, b in zip(rec1, rec2):
        if a.cxx != b.cxx or a.czz != b.czz:
            return [f"record {a.sample_index} differs across worker counts"]
    return []


CHECKS = [
    ("fixture oracles", _check_fixture_oracles),
    ("local-unitary invariance (2e-4)", _check_local_unitary_invariance),
    ("pure-state reduction cqd = S(rho1) (1e-4)", _check_pure_state_reduction),
    ("mixture identity sum p_i rho_1|i = rho_1 (1e-10)", _check_mixture_identity),
    ("optimizer vs fine-grid oracle (1e-4)", _check_optimizer_vs_fine_grid),
    ("deterministic across thread counts", _check_thread_determinism),
]


def run_selftest() -> int:
    """Run all checks; print one line each; return a process exit code."""
    any_failed = False
    for name, check in CHECKS:
        failures = check()
        status = "PASS" if not failures else "FAIL"
        print(f"[{status}] {name}")
        for msg in failures:
            print(f"       {msg}", file=sys.stderr)
        any_failed = any_failed or bool(failures)
    return 1 if any_failed else 0
