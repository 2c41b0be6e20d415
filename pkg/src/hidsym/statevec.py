"""Dense two-register state-vector simulator.

Register X occupies qubits ``[0, n)`` and register F qubits ``[n, 2n)``, so
the basis index of ``|x>|f>`` is ``x + f * 2**n``. Internally the amplitudes
are viewed as an ``(2**n, 2**n)`` array indexed ``[f, x]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ContractViolation, ResourceError
from .transforms import OpCounter, fwht, qft

MAX_QUBITS = 26

X, F, BOTH = "X", "F", "both"
_AXIS = {X: 1, F: 0}


@dataclass(frozen=True)
class RegisterLayout:
    n: int

    @property
    def size(self) -> int:
        return 1 << self.n

    def index(self, x: int, f: int) -> int:
        return x + (f << self.n)


class StateVector:
    """Normalized complex amplitudes over the two-register basis."""

    def __init__(self, n: int, amplitudes: np.ndarray, check: bool = True):
        if 2 * n > MAX_QUBITS:
            raise ResourceError(f"dense simulation capped at {MAX_QUBITS} qubits, got {2 * n}")
        amplitudes = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        if amplitudes.size != 1 << (2 * n):
            raise ContractViolation(f"expected {1 << (2 * n)} amplitudes, got {amplitudes.size}")
        self.layout = RegisterLayout(n)
        self.amplitudes = amplitudes
        if check and abs(self.norm() - 1.0) > 1e-9:
            raise ContractViolation(f"state is not normalized (norm {self.norm():.3g})")

    @property
    def n(self) -> int:
        return self.layout.n

    def norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def grid(self) -> np.ndarray:
        """View of the amplitudes as an array indexed ``[f, x]``."""
        size = self.layout.size
        return self.amplitudes.reshape(size, size)

    @classmethod
    def basis(cls, n: int, x: int, f: int) -> "StateVector":
        if 2 * n > MAX_QUBITS:
            raise ResourceError(f"dense simulation capped at {MAX_QUBITS} qubits, got {2 * n}")
        amps = np.zeros(1 << (2 * n), dtype=np.complex128)
        amps[RegisterLayout(n).index(x, f)] = 1.0
        return cls(n, amps)

    def copy(self) -> "StateVector":
        return StateVector(self.n, self.amplitudes.copy(), check=False)


def _table(f, n: int) -> np.ndarray:
    table = np.asarray(getattr(f, "table", f), dtype=np.int64)
    if table.shape != (1 << n,):
        raise ContractViolation(f"oracle table must have length {1 << n}")
    if table.min() < 0 or table.max() >= 1 << n:
        raise ContractViolation("oracle values must lie in [0, 2**n)")
    return table


def prepare_oracle_state(f, n: Optional[int] = None) -> StateVector:
    """Uniform superposition over X entangled with ``|f(x)>`` on F."""
    if n is None:
        n = int(getattr(f, "n", None) or (len(f).bit_length() - 1))
    if 2 * n > MAX_QUBITS:
        raise ResourceError(f"dense simulation capped at {MAX_QUBITS} qubits, got {2 * n}")
    table = _table(f, n)
    size = 1 << n
    amps = np.zeros((size, size), dtype=np.complex128)
    amps[table, np.arange(size)] = 1.0 / np.sqrt(size)
    return StateVector(n, amps)


def apply_xor_oracle(s: StateVector, f) -> StateVector:
    """``|x>|y> -> |x>|y xor f(x)>`` as a basis permutation."""
    table = _table(f, s.n)
    size = s.layout.size
    grid = s.grid()
    out = np.empty_like(grid)
    ys = np.arange(size)[:, None]
    xs = np.arange(size)[None, :]
    out[ys ^ table[None, :], xs] = grid
    return StateVector(s.n, out, check=False)


def hadamard_register(s: StateVector, which: str = BOTH,
                      counter: Optional[OpCounter] = None) -> StateVector:
    grid = s.grid()
    for reg in ((X, F) if which == BOTH else (which,)):
        if reg not in _AXIS:
            raise ContractViolation(f"unknown register {reg!r}")
        grid = fwht(grid, axis=_AXIS[reg], counter=counter)
    return StateVector(s.n, grid.astype(np.complex128), check=False)


def qft_register(s: StateVector, which: str, inverse: bool = False,
                 counter: Optional[OpCounter] = None) -> StateVector:
    grid = s.grid()
    for reg in ((X, F) if which == BOTH else (which,)):
        if reg not in _AXIS:
            raise ContractViolation(f"unknown register {reg!r}")
        grid = qft(grid, axis=_AXIS[reg], inverse=inverse, counter=counter)
    return StateVector(s.n, grid, check=False)


def full_distribution(s: StateVector) -> np.ndarray:
    """Outcome probabilities per basis index ``y1 + y2 * 2**n``."""
    return np.abs(s.amplitudes) ** 2


def sample_index(probs: np.ndarray, rng: np.random.Generator) -> int:
    """Inverse-CDF draw; ties resolve to the lowest index."""
    cdf = np.cumsum(probs)
    u = rng.random() * cdf[-1]
    idx = int(np.searchsorted(cdf, u, side="right"))
    return min(idx, len(cdf) - 1)


def sample_measurement(s: StateVector, rng: np.random.Generator) -> int:
    return sample_index(full_distribution(s), rng)
