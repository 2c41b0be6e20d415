"""Exact structured sampling of the two-register measurement laws.

After transforming both registers, the F-register outcome is exactly uniform:
every ``|<y2| H |f(x)>|`` (and every ``|<k_y| QFT |f(x)>|``) equals ``N**-0.5``.
Conditioning on it leaves a unit-modulus phase vector on register X whose
transform gives the conditional law of the X outcome. A draw therefore costs
one length-N transform instead of a ``2**(2n)`` state.
"""

from __future__ import annotations

from typing import Optional, Tuple

import numpy as np

from .errors import ContractViolation
from .gf2 import parity_array
from .statevec import sample_index
from .transforms import OpCounter, fwht, qft

MAX_N = 24


def _table_of(inst) -> Tuple[np.ndarray, int]:
    table = np.asarray(getattr(inst, "table", inst), dtype=np.int64)
    n = table.size.bit_length() - 1
    if table.size != 1 << n:
        raise ContractViolation("table length must be a power of two")
    if n > MAX_N:
        raise ContractViolation(f"structured sampler capped at n={MAX_N}")
    return table, n


def simon_phase_vector(table: np.ndarray, y2) -> np.ndarray:
    """``(-1)**(f(x) . y2) / sqrt(N)``; a 2-D array when ``y2`` is an array."""
    y2 = np.asarray(y2, dtype=np.int64)
    signs = 1 - 2 * parity_array(table[None, :] & y2.reshape(-1, 1))
    v = signs / np.sqrt(table.size)
    return v[0] if y2.ndim == 0 else v


def shor_phase_vector(table: np.ndarray, ky) -> np.ndarray:
    """``exp(2j*pi*f(x)*k_y/N) / sqrt(N)``; a 2-D array when ``ky`` is an array."""
    ky = np.asarray(ky, dtype=np.int64)
    size = table.size
    # reduce the phase integer mod N before the float conversion
    phase = (table[None, :] * ky.reshape(-1, 1)) % size
    v = np.exp(2j * np.pi * phase / size) / np.sqrt(size)
    return v[0] if ky.ndim == 0 else v


def sample_simon_y(inst, rng: np.random.Generator, counter: Optional[OpCounter] = None) -> int:
    """One outcome ``Y = y1 | y2 << n`` of measuring ``H^(2n)`` on the oracle state."""
    table, n = _table_of(inst)
    y2 = int(rng.integers(0, table.size))
    amp = fwht(simon_phase_vector(table, y2), counter=counter)
    y1 = sample_index(amp * amp, rng)
    return y1 | (y2 << n)


def sample_shor_pair(inst, rng: np.random.Generator,
                     counter: Optional[OpCounter] = None) -> Tuple[int, int]:
    """One outcome ``(k_x, k_y)`` of measuring both Fourier-transformed registers."""
    table, _ = _table_of(inst)
    ky = int(rng.integers(0, table.size))
    amp = qft(shor_phase_vector(table, ky), counter=counter)
    kx = sample_index(np.abs(amp) ** 2, rng)
    return kx, ky


def simon_joint_distribution(inst) -> np.ndarray:
    """Exact law implied by the two-stage sampler, indexed ``y1 + y2 * N``."""
    table, _ = _table_of(inst)
    size = table.size
    cond = fwht(simon_phase_vector(table, np.arange(size)), axis=1) ** 2
    return (cond / size).reshape(-1)


def shor_joint_distribution(inst) -> np.ndarray:
    """Exact law implied by the two-stage sampler, indexed ``k_x + k_y * N``."""
    table, _ = _table_of(inst)
    size = table.size
    cond = np.abs(qft(shor_phase_vector(table, np.arange(size)), axis=1)) ** 2
    return (cond / size).reshape(-1)
