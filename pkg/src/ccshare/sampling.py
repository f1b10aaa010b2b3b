"""Deterministic, parallel-friendly Haar-uniform sampling of pure states.

Each sample gets its own counter-based Philox stream keyed by
(master_seed, sample_index), so the state produced for a given index is
independent of worker count, scheduling, and draw order.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple

import numpy as np

from .linalg import PureState


class SampleSeed(NamedTuple):
    master_seed: int
    sample_index: int


def _rng_for(seed: SampleSeed) -> np.random.Generator:
    # Philox takes a 128-bit key; pack (master_seed, sample_index) into it.
    key = (int(seed.master_seed) << 64) | int(seed.sample_index)
    return np.random.Generator(np.random.Philox(key=key))


def haar_random_pure(n_qubits: int, seed: SampleSeed) -> PureState:
    """Draw one Haar-uniform N-qubit pure state.

    A complex Gaussian vector normalized to unit length is exactly Haar
    distributed on the pure-state manifold (it is one column of a
    QR-decomposed Ginibre matrix).
    """
    if not 2 <= n_qubits <= 8:
        raise ValueError(f"n_qubits must be in [2, 8], got {n_qubits}")
    rng = _rng_for(seed)
    d = 2**n_qubits
    raw = rng.standard_normal(2 * d)
    amps = raw[:d] + 1j * raw[d:]
    amps /= np.linalg.norm(amps)
    return PureState(n_qubits, amps)


def sample_stream(
    n_qubits: int, master_seed: int, start: int, count: int
) -> Iterator[PureState]:
    """Yield states for sample indices start .. start+count-1."""
    for idx in range(start, start + count):
        yield haar_random_pure(n_qubits, SampleSeed(master_seed, idx))
