"""Dense complex linear algebra for small multiqubit systems.

Everything here operates on plain numpy arrays; ``DensityMatrix`` and
``PureState`` are thin validated wrappers.  Dimensions never exceed
2^8 = 256, so dense storage and full eigensolves are the right tool.

Qubit/subsystem indices are 1-based in the public API (party 1 is the
nodal observer throughout), 0-based internally.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
EIGENVALUE_FLOOR = -1e-10
ENTROPY_CLAMP = 1e-12


class NumericalValidityError(ValueError):
    """A matrix failed a numerical sanity check (hermiticity, trace, PSD)."""


@dataclass(frozen=True)
class PureState:
    """An N-qubit pure state as a normalized complex amplitude vector."""

    num_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not 2 <= self.num_qubits <= 8:
            raise ValueError(f"num_qubits must be in [2, 8], got {self.num_qubits}")
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (2**self.num_qubits,):
            raise ValueError(
                f"expected {2**self.num_qubits} amplitudes, got {amps.shape}"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > 1e-12:
            raise NumericalValidityError(f"state norm {norm} deviates from 1")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return 2**self.num_qubits

    def projector(self) -> "DensityMatrix":
        """|psi><psi| as a DensityMatrix with per-qubit dims."""
        mat = np.outer(self.amplitudes, self.amplitudes.conj())
        return DensityMatrix((2,) * self.num_qubits, mat)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, PSD, unit-trace operator over a tensor product of subsystems."""

    dims: tuple[int, ...]
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 2 for d in dims):
            raise ValueError(f"subsystem dims must all be >= 2, got {dims}")
        mat = np.asarray(self.matrix, dtype=np.complex128)
        d = int(np.prod(dims))
        if mat.shape != (d, d):
            raise ValueError(f"matrix shape {mat.shape} does not match dims {dims}")
        if np.max(np.abs(mat - mat.conj().T)) > HERMITICITY_TOL:
            raise NumericalValidityError("matrix is not Hermitian within 1e-10")
        tr = np.trace(mat).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise NumericalValidityError(f"trace {tr} deviates from 1")
        if np.linalg.eigvalsh(mat).min() < EIGENVALUE_FLOOR:
            raise NumericalValidityError("matrix has an eigenvalue below -1e-10")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims))


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two dense complex matrices."""
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def partial_trace(rho: DensityMatrix, keep: set[int]) -> DensityMatrix:
    """Trace out every subsystem not in ``keep`` (1-based indices).

    The result preserves subsystem order and unit trace.
    """
    n = len(rho.dims)
    keep_set = {int(k) for k in keep}
    if not keep_set:
        raise ValueError("keep must be non-empty")
    if any(k < 1 or k > n for k in keep_set):
        raise ValueError(f"subsystem indices must be in [1, {n}], got {sorted(keep_set)}")
    keep0 = sorted(k - 1 for k in keep_set)
    trace0 = [i for i in range(n) if i not in keep0]

    # Tensor with row indices first, column indices second.
    tens = rho.matrix.reshape(rho.dims + rho.dims)
    for count, ax in enumerate(trace0):
        # Each contraction removes one row axis and one column axis.
        remaining = n - count
        tens = np.trace(tens, axis1=ax - count, axis2=ax - count + remaining)
    kept_dims = tuple(rho.dims[i] for i in keep0)
    d = int(np.prod(kept_dims))
    return DensityMatrix(kept_dims, tens.reshape(d, d))


def reduce_pair(psi: PureState, i: int, j: int) -> DensityMatrix:
    """Two-qubit reduction rho_{ij} of a pure state, without building |psi><psi|.

    Reshapes the amplitude vector to isolate qubits i and j and contracts
    the rest directly, so cost is O(2^N) instead of O(4^N).
    """
    n = psi.num_qubits
    if i == j:
        raise ValueError("qubit indices must differ")
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"qubit indices must be in [1, {n}], got ({i}, {j})")
    tens = psi.amplitudes.reshape((2,) * n)
    tens = np.moveaxis(tens, (i - 1, j - 1), (0, 1))
    mat = tens.reshape(4, -1)
    return DensityMatrix((2, 2), mat @ mat.conj().T)


def hermitian_eigenvalues(h: np.ndarray) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, ascending."""
    h = np.asarray(h, dtype=np.complex128)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    if np.max(np.abs(h - h.conj().T)) > 1e-8:
        raise ValueError("matrix is not Hermitian within 1e-8")
    return np.linalg.eigvalsh(h)


def entropy_from_eigenvalues(eigs: np.ndarray) -> float:
    """Shannon entropy in bits of a probability-like eigenvalue vector.

    Eigenvalues below the clamp contribute zero; small negatives from
    roundoff are clamped, genuinely negative ones are rejected.
    """
    eigs = np.asarray(eigs, dtype=np.float64)
    if eigs.min() < -1e-8:
        raise NumericalValidityError(f"eigenvalue {eigs.min()} below -1e-8")
    pos = eigs[eigs > ENTROPY_CLAMP]
    if pos.size == 0:
        return 0.0
    return float(-np.sum(pos * np.log2(pos)))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S(rho) = -tr(rho log2 rho) in bits."""
    return entropy_from_eigenvalues(np.linalg.eigvalsh(rho.matrix))
