"""Named reference states used by tests, the selftest, and the CLI."""

from __future__ import annotations

import numpy as np

from .linalg import PureState

# Pauli matrices and the 2x2 identity, indexed by axis label.
I2 = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}


def ghz(n_qubits: int) -> PureState:
    """(|0...0> + |1...1>)/sqrt(2)."""
    amps = np.zeros(2**n_qubits, dtype=np.complex128)
    amps[0] = amps[-1] = 1 / np.sqrt(2)
    return PureState(n_qubits, amps)


def w_state(n_qubits: int) -> PureState:
    """Equal superposition of all single-excitation basis states."""
    amps = np.zeros(2**n_qubits, dtype=np.complex128)
    for k in range(n_qubits):
        amps[1 << k] = 1 / np.sqrt(n_qubits)
    return PureState(n_qubits, amps)


def basis_product(bits: str) -> PureState:
    """Computational basis product state, e.g. ``basis_product("0101")``."""
    if not bits or any(b not in "01" for b in bits):
        raise ValueError(f"bits must be a nonempty string of 0/1, got {bits!r}")
    index = int(bits, 2)
    amps = np.zeros(2 ** len(bits), dtype=np.complex128)
    amps[index] = 1.0
    return PureState(len(bits), amps)


def plus_product(n_qubits: int) -> PureState:
    """|+>^{x n}: uniform positive amplitudes."""
    d = 2**n_qubits
    return PureState(n_qubits, np.full(d, 1 / np.sqrt(d), dtype=np.complex128))


def named_fixture(name: str) -> PureState:
    """Resolve CLI fixture names: ghz3..ghz6, w3, product3..product6, plus3.."""
    name = name.strip().lower()
    for prefix, factory in (
        ("ghz", ghz),
        ("product", lambda n: basis_product("0" * n)),
        ("plus", plus_product),
        ("w", w_state),
    ):
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            return factory(int(name[len(prefix):]))
    raise ValueError(f"unknown fixture {name!r}")
