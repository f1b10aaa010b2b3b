"""Classical-correlation measures, genuine multipartite entanglement, and
monogamy scores.

All pairwise measures act on a two-qubit density matrix with party 1 as
the unmeasured side.  The optimized measures (classical part of discord,
local work, measured mutual information) evaluate their coarse grid in a
single vectorized pass; only the Nelder-Mead polish calls the scalar
objective.
"""

from __future__ import annotations

import math

import numpy as np

from .linalg import (
    DensityMatrix,
    PureState,
    entropy_from_eigenvalues,
    partial_trace,
    reduce_pair,
    von_neumann_entropy,
)
from .optimize import (
    BlochMeasurement,
    OptimizerSettings,
    maximize_over_product_bases,
    minimize_over_qubit_basis,
)
from .states import PAULIS

CORRELATOR_VARIANTS = ("absolute", "signed", "covariance", "squared")

PAIR_MEASURES = ("cxx", "cyy", "czz", "cqd", "clw", "cmi")

_PROB_FLOOR = 1e-12


def direction(x: float, y: float, z: float) -> np.ndarray:
    """A unit 3-vector; rejects inputs off the unit sphere."""
    v = np.array([x, y, z], dtype=np.float64)
    if abs(np.linalg.norm(v) - 1.0) > 1e-12:
        raise ValueError(f"direction must be a unit vector, got norm {np.linalg.norm(v)}")
    return v


X_DIR = direction(1, 0, 0)
Y_DIR = direction(0, 1, 0)
Z_DIR = direction(0, 0, 1)


def _dot_sigma(v: np.ndarray) -> np.ndarray:
    return v[0] * PAULIS["x"] + v[1] * PAULIS["y"] + v[2] * PAULIS["z"]


def _require_two_qubit(rho: DensityMatrix):
    if rho.dims != (2, 2):
        raise ValueError(f"expected a two-qubit density matrix, got dims {rho.dims}")


def classical_correlator(
    rho: DensityMatrix, a: np.ndarray, b: np.ndarray, variant: str = "absolute"
) -> float:
    """Two-site correlator tr((a.sigma x b.sigma) rho) in the chosen variant."""
    _require_two_qubit(rho)
    if variant not in CORRELATOR_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}, expected one of {CORRELATOR_VARIANTS}")
    op = np.kron(_dot_sigma(np.asarray(a)), _dot_sigma(np.asarray(b)))
    signed = float(np.trace(rho.matrix @ op).real)
    if variant == "signed":
        return signed
    if variant == "absolute":
        return abs(signed)
    if variant == "squared":
        return signed * signed
    # covariance: subtract the product of local magnetizations
    rho1 = partial_trace(rho, {1}).matrix
    rho2 = partial_trace(rho, {2}).matrix
    m1 = float(np.trace(rho1 @ _dot_sigma(np.asarray(a))).real)
    m2 = float(np.trace(rho2 @ _dot_sigma(np.asarray(b))).real)
    return abs(signed - m1 * m2)


def _rho4(rho: DensityMatrix) -> np.ndarray:
    # Index order [a, c, b, d]: row (a, c), column (b, d); a/b on party 1.
    return rho.matrix.reshape(2, 2, 2, 2)


def _cond_kernel(rho4: np.ndarray) -> np.ndarray:
    """4x4 contraction kernel M[(a,b),(d,c)] = rho4[a,c,b,d].

    The unnormalized post-measurement state of party 1 for projector P is
    then (M @ P.ravel()) reshaped to 2x2, a single small matmul.
    """
    return np.ascontiguousarray(np.transpose(rho4, (0, 2, 3, 1)).reshape(4, 4))


def _proj_flat(thetas, phis) -> np.ndarray:
    """Flattened projector pairs for angle arrays; shape (..., 2, 4)."""
    thetas = np.asarray(thetas, dtype=np.float64)
    phis = np.asarray(phis, dtype=np.float64)
    st, nz = np.sin(thetas), np.cos(thetas)
    nx, ny = st * np.cos(phis), st * np.sin(phis)
    up = (1.0 + nz) / 2.0
    dn = (1.0 - nz) / 2.0
    off = (nx - 1j * ny) / 2.0
    plus = np.stack([up, off, off.conj(), dn], axis=-1)
    minus = np.stack([dn, -off, -off.conj(), up], axis=-1)
    return np.stack([plus, minus], axis=-2)


def _branch_terms(proj_flat: np.ndarray, kernel: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(sum_i p_i S(rho_{1|i}), H({p_i})) per projector pair in the batch."""
    cond = proj_flat @ kernel.T  # (..., 2, 4) with last axis (a, b) flat
    p = (cond[..., 0] + cond[..., 3]).real
    det = (cond[..., 0] * cond[..., 3] - cond[..., 1] * cond[..., 2]).real
    safe_p = np.where(p > _PROB_FLOOR, p, 1.0)
    disc = np.sqrt(np.clip(1.0 - 4.0 * det / safe_p**2, 0.0, None))
    lam = np.clip((1.0 + disc) / 2.0, 0.0, 1.0)
    ent = np.zeros_like(lam)
    for q in (lam, 1.0 - lam):
        mask = q > _PROB_FLOOR
        ent -= np.where(mask, q * np.log2(np.where(mask, q, 1.0)), 0.0)
    ent = np.where(p > _PROB_FLOOR, ent, 0.0)
    pc = np.clip(p, 0.0, None)
    avg_cond = np.sum(pc * ent, axis=-1)
    mask = pc > _PROB_FLOOR
    mix = -np.sum(np.where(mask, pc * np.log2(np.where(mask, pc, 1.0)), 0.0), axis=-1)
    return avg_cond, mix


def _scalar_branch_terms(kernel: tuple, theta: float, phi: float) -> tuple[float, float]:
    """Scalar twin of _branch_terms for the Nelder-Mead polish loop.

    Pure Python on an unpacked kernel; an order of magnitude faster than
    the batched path for a single angle pair.
    """
    st = math.sin(theta)
    nz = math.cos(theta)
    nx = st * math.cos(phi)
    ny = st * math.sin(phi)
    up = (1.0 + nz) / 2.0
    dn = (1.0 - nz) / 2.0
    off = complex(nx, -ny) / 2.0
    offc = off.conjugate()
    avg_cond = 0.0
    mix = 0.0
    for pf0, pf1, pf2, pf3 in ((up, off, offc, dn), (dn, -off, -offc, up)):
        c0 = kernel[0] * pf0 + kernel[1] * pf1 + kernel[2] * pf2 + kernel[3] * pf3
        c1 = kernel[4] * pf0 + kernel[5] * pf1 + kernel[6] * pf2 + kernel[7] * pf3
        c2 = kernel[8] * pf0 + kernel[9] * pf1 + kernel[10] * pf2 + kernel[11] * pf3
        c3 = kernel[12] * pf0 + kernel[13] * pf1 + kernel[14] * pf2 + kernel[15] * pf3
        p = (c0 + c3).real
        if p <= _PROB_FLOOR:
            continue
        det = (c0 * c3 - c1 * c2).real
        disc_sq = 1.0 - 4.0 * det / (p * p)
        disc = math.sqrt(disc_sq) if disc_sq > 0.0 else 0.0
        lam = (1.0 + disc) / 2.0
        ent = 0.0
        for q in (lam, 1.0 - lam):
            if q > _PROB_FLOOR:
                ent -= q * math.log2(q)
        avg_cond += p * ent
        mix -= p * math.log2(p)
    return avg_cond, mix


def _flat_kernel(kernel: np.ndarray) -> tuple:
    return tuple(complex(z) for z in kernel.ravel())


def cqd(rho: DensityMatrix, settings: OptimizerSettings = OptimizerSettings()) -> float:
    """Classical part of quantum discord with the measurement on party 2."""
    _require_two_qubit(rho)
    kernel = _cond_kernel(_rho4(rho))
    flat = _flat_kernel(kernel)
    s1 = von_neumann_entropy(partial_trace(rho, {1}))

    def grid_objective(thetas, phis):
        return _branch_terms(_proj_flat(thetas, phis), kernel)[0]

    def raw_objective(theta: float, phi: float) -> float:
        return _scalar_branch_terms(flat, theta, phi)[0]

    def objective(m: BlochMeasurement) -> float:
        return raw_objective(m.theta, m.phi)

    _, min_ent = minimize_over_qubit_basis(objective, settings, grid_objective, raw_objective)
    return float(np.clip(s1 - min_ent, 0.0, 1.0))


def local_work(rho: DensityMatrix, settings: OptimizerSettings = OptimizerSettings()) -> float:
    """Work extractable by local dephasing and one-way communication, scaled to [0, 1].

    Computes (2 - min_basis S(dephased rho)) / 2, where the dephasing acts
    on party 2.  The dephased state is block diagonal in the measurement
    basis, so its entropy splits into the average conditional entropy of
    party 1 plus the outcome-mixing entropy; no 4x4 eigensolve is needed.
    """
    _require_two_qubit(rho)
    kernel = _cond_kernel(_rho4(rho))
    flat = _flat_kernel(kernel)

    def grid_objective(thetas, phis):
        avg_cond, mix = _branch_terms(_proj_flat(thetas, phis), kernel)
        return avg_cond + mix

    def raw_objective(theta: float, phi: float) -> float:
        avg_cond, mix = _scalar_branch_terms(flat, theta, phi)
        return avg_cond + mix

    def objective(m: BlochMeasurement) -> float:
        return raw_objective(m.theta, m.phi)

    _, min_ent = minimize_over_qubit_basis(objective, settings, grid_objective, raw_objective)
    return float(np.clip((2.0 - min_ent) / 2.0, 0.0, 1.0))


def _table_kernel(rho4: np.ndarray) -> np.ndarray:
    """4x4 kernel N[(b,a),(d,c)] = rho4[a,c,b,d] for joint outcome tables."""
    return np.ascontiguousarray(np.transpose(rho4, (2, 0, 3, 1)).reshape(4, 4))


def _outcome_tables(
    kernel: np.ndarray, proj_a: np.ndarray, proj_b: np.ndarray
) -> np.ndarray:
    """Joint outcome probabilities p_ij for product measurements; (..., 2, 2)."""
    half = proj_a @ kernel  # (..., 2, 4)
    return np.matmul(half, np.swapaxes(proj_b, -1, -2)).real


def _table_mutual_information(p: np.ndarray) -> np.ndarray:
    """Mutual information in bits of batched 2x2 probability tables."""
    p = np.clip(p, 0.0, 1.0)

    def h(q: np.ndarray) -> np.ndarray:
        mask = q > _PROB_FLOOR
        return -np.sum(np.where(mask, q * np.log2(np.where(mask, q, 1.0)), 0.0), axis=-1)

    ha = h(p.sum(axis=-1))
    hb = h(p.sum(axis=-2))
    hab = h(p.reshape(p.shape[:-2] + (4,)))
    return ha + hb - hab


def _scalar_proj_flat(theta: float, phi: float):
    st = math.sin(theta)
    nz = math.cos(theta)
    nx = st * math.cos(phi)
    ny = st * math.sin(phi)
    up = (1.0 + nz) / 2.0
    dn = (1.0 - nz) / 2.0
    off = complex(nx, -ny) / 2.0
    offc = off.conjugate()
    return ((up, off, offc, dn), (dn, -off, -offc, up))


def _scalar_table_mi(kernel: tuple, t1: float, p1: float, t2: float, p2: float) -> float:
    """Scalar twin of the outcome-table mutual information for the polish loop."""
    pa = _scalar_proj_flat(t1, p1)
    pb = _scalar_proj_flat(t2, p2)
    probs = []
    for row_a in pa:
        half = [
            row_a[0] * kernel[x] + row_a[1] * kernel[4 + x] + row_a[2] * kernel[8 + x] + row_a[3] * kernel[12 + x]
            for x in range(4)
        ]
        for row_b in pb:
            p = (
                half[0] * row_b[0] + half[1] * row_b[1] + half[2] * row_b[2] + half[3] * row_b[3]
            ).real
            probs.append(min(max(p, 0.0), 1.0))
    value = 0.0
    for q in probs:
        if q > _PROB_FLOOR:
            value -= q * math.log2(q)  # -H(AB)
    value = -value
    for marg in (
        (probs[0] + probs[1], probs[2] + probs[3]),
        (probs[0] + probs[2], probs[1] + probs[3]),
    ):
        for q in marg:
            if q > _PROB_FLOOR:
                value -= q * math.log2(q)
    return value


def measured_mutual_information(
    rho: DensityMatrix, settings: OptimizerSettings = OptimizerSettings()
) -> float:
    """Maximal mutual information of local projective measurement outcomes."""
    _require_two_qubit(rho)
    kernel = _table_kernel(_rho4(rho))
    flat = _flat_kernel(kernel)

    def grid_objective(ta, pa, tb, pb):
        return _table_mutual_information(
            _outcome_tables(kernel, _proj_flat(ta, pa), _proj_flat(tb, pb))
        )

    def raw_objective(t1, p1, t2, p2) -> float:
        return _scalar_table_mi(flat, t1, p1, t2, p2)

    def objective(ma: BlochMeasurement, mb: BlochMeasurement) -> float:
        return raw_objective(ma.theta, ma.phi, mb.theta, mb.phi)

    _, _, value = maximize_over_product_bases(objective, settings, grid_objective, raw_objective)
    return float(np.clip(value, 0.0, 1.0))


def ggm(psi: PureState) -> float:
    """Genuine multipartite entanglement: 1 - max bipartition Schmidt weight.

    Enumerates every bipartition once (the last qubit is pinned to the
    second block) and takes the largest squared singular value of the
    reshaped amplitude tensor.
    """
    n = psi.num_qubits
    tens = psi.amplitudes.reshape((2,) * n)
    lam_max = 0.0
    for mask in range(1, 2 ** (n - 1)):
        block_a = [q for q in range(n - 1) if mask & (1 << q)]
        block_b = [q for q in range(n) if q not in block_a]
        mat = np.transpose(tens, block_a + block_b).reshape(2 ** len(block_a), -1)
        top = np.linalg.svd(mat, compute_uv=False)[0]
        lam_max = max(lam_max, float(top) ** 2)
    return 1.0 - lam_max


def sum_pairwise(
    psi: PureState,
    measure: str,
    settings: OptimizerSettings = OptimizerSettings(),
    variant: str = "absolute",
) -> tuple[float, list[float]]:
    """Sum of a pairwise measure over rho_{1i}, i = 2..N, plus per-pair values."""
    if measure not in PAIR_MEASURES:
        raise ValueError(f"unknown measure {measure!r}, expected one of {PAIR_MEASURES}")
    per_pair = [
        pair_measure(reduce_pair(psi, 1, i), measure, settings, variant)
        for i in range(2, psi.num_qubits + 1)
    ]
    return float(sum(per_pair)), per_pair


def pair_measure(
    rho: DensityMatrix,
    measure: str,
    settings: OptimizerSettings = OptimizerSettings(),
    variant: str = "absolute",
) -> float:
    """Dispatch a single pairwise measure on a two-qubit state."""
    if measure == "cxx":
        return classical_correlator(rho, X_DIR, X_DIR, variant)
    if measure == "cyy":
        return classical_correlator(rho, Y_DIR, Y_DIR, variant)
    if measure == "czz":
        return classical_correlator(rho, Z_DIR, Z_DIR, variant)
    if measure == "cqd":
        return cqd(rho, settings)
    if measure == "clw":
        return local_work(rho, settings)
    if measure == "cmi":
        return measured_mutual_information(rho, settings)
    raise ValueError(f"unknown measure {measure!r}")


def czz_one_rest(psi: PureState) -> float:
    """Scaled z-correlator across the 1:rest cut.

    The rest block carries the diagonal spin-s magnetization operator
    diag(2s, 2s-2, ..., -2s) with s = (2^(N-1) - 1) / 2; the absolute
    expectation is scaled by 1/(2s) into [0, 1].
    """
    n = psi.num_qubits
    rest_dim = 2 ** (n - 1)
    s = (rest_dim - 1) / 2.0
    prob = np.abs(psi.amplitudes.reshape(2, rest_dim)) ** 2
    z1 = np.array([1.0, -1.0])
    lam = 2.0 * s - 2.0 * np.arange(rest_dim)
    expect = float(z1 @ prob @ lam)
    return abs(expect) / (2.0 * s)


def cc_one_rest_pure(psi: PureState, measure: str) -> float:
    """1:rest value of the discord (``cqd``) or local-work (``clw``) measure.

    Valid for globally pure states only: discord across a pure cut reduces
    to S(rho_1), and Schmidt-basis dephasing is optimal for local work,
    giving 1 - S(rho_1)/N.
    """
    s1 = entropy_from_eigenvalues(np.linalg.eigvalsh(reduce_single(psi, 1)))
    if measure == "cqd":
        return s1
    if measure == "clw":
        return 1.0 - s1 / psi.num_qubits
    raise ValueError(f"measure must be 'cqd' or 'clw', got {measure!r}")


def reduce_single(psi: PureState, q: int) -> np.ndarray:
    """Single-qubit marginal of a pure state as a bare 2x2 array."""
    n = psi.num_qubits
    if not 1 <= q <= n:
        raise ValueError(f"qubit index must be in [1, {n}], got {q}")
    tens = np.moveaxis(psi.amplitudes.reshape((2,) * n), q - 1, 0).reshape(2, -1)
    return tens @ tens.conj().T


def monogamy_score(one_rest: float, pair_sum: float) -> float:
    """delta_C = C_{1:rest} - sum_i C_{1i}; negative values signal polygamy."""
    return one_rest - pair_sum


def incompatibility_bound(theta: float) -> float:
    """Closed-form cap on the sum of two correlators at relative angle theta."""
    if not 0 <= theta <= np.pi / 2:
        raise ValueError(f"theta must be in [0, pi/2], got {theta}")
    return float(np.sqrt(1.0 + np.sqrt(1.0 + 8.0 * np.cos(theta))))


def directional_pair_sum(psi: PureState, theta: float) -> float:
    """C_12 along (cos(theta), sin(theta), 0) x vs C_13 along x x, summed.

    Probes how operator incompatibility (theta away from the common x axis)
    limits simultaneous correlations in a three-qubit state.
    """
    if psi.num_qubits != 3:
        raise ValueError(f"expected a 3-qubit state, got {psi.num_qubits}")
    k_dir = direction(np.cos(theta), np.sin(theta), 0.0)
    c12 = classical_correlator(reduce_pair(psi, 1, 2), k_dir, X_DIR, "absolute")
    c13 = classical_correlator(reduce_pair(psi, 1, 3), X_DIR, X_DIR, "absolute")
    return c12 + c13
