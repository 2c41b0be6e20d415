"""In-place style radix-2 butterfly transforms along one axis of an array.

Both kernels are unitary: the Walsh-Hadamard transform scales each stage by
1/sqrt(2), and the Fourier transform is the quantum convention
``|x> -> N**-0.5 * sum_k exp(+2j*pi*x*k/N) |k>`` (``inverse`` flips the sign).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

_SQRT_HALF = 1.0 / np.sqrt(2.0)


@dataclass
class OpCounter:
    """Tally of butterfly operations performed by the kernels."""

    butterflies: int = 0

    def add(self, k: int) -> None:
        self.butterflies += int(k)


def _log2_exact(size: int) -> int:
    m = size.bit_length() - 1
    if size < 1 or (1 << m) != size:
        raise ValueError(f"transform length must be a power of two, got {size}")
    return m


def fwht(a: np.ndarray, axis: int = -1, counter: Optional[OpCounter] = None) -> np.ndarray:
    """Normalized fast Walsh-Hadamard transform along ``axis`` (returns a new array)."""
    a = np.moveaxis(np.array(a, dtype=np.result_type(a, np.float64)), axis, -1)
    size = a.shape[-1]
    m = _log2_exact(size)
    lead = a.shape[:-1]
    work = np.ascontiguousarray(a).reshape(-1, size)
    batch = work.shape[0]
    half = 1
    for _ in range(m):
        blocks = work.reshape(batch, size // (2 * half), 2, half)
        u = blocks[:, :, 0, :].copy()
        v = blocks[:, :, 1, :]
        blocks[:, :, 0, :] += v
        blocks[:, :, 1, :] = u - v
        work *= _SQRT_HALF
        if counter is not None:
            counter.add(batch * size // 2)
        half *= 2
    return np.moveaxis(work.reshape(*lead, size), -1, axis)


@lru_cache(maxsize=64)
def _twiddles(size: int, sign: int) -> np.ndarray:
    return np.exp(sign * 2j * np.pi * np.arange(size // 2) / size)


@lru_cache(maxsize=64)
def _bit_reversal(size: int) -> np.ndarray:
    m = _log2_exact(size)
    idx = np.arange(size)
    rev = np.zeros(size, dtype=np.int64)
    for b in range(m):
        rev |= ((idx >> b) & 1) << (m - 1 - b)
    return rev


def qft(a: np.ndarray, axis: int = -1, inverse: bool = False,
        counter: Optional[OpCounter] = None) -> np.ndarray:
    """Unitary discrete Fourier transform along ``axis``, iterative decimation in time."""
    a = np.moveaxis(np.asarray(a, dtype=np.complex128), axis, -1)
    size = a.shape[-1]
    m = _log2_exact(size)
    lead = a.shape[:-1]
    work = a.reshape(-1, size)[:, _bit_reversal(size)]
    batch = work.shape[0]
    tw = _twiddles(size, -1 if inverse else 1)
    span = 1
    for _ in range(m):
        w = tw[:: size // (2 * span)]
        blocks = work.reshape(batch, size // (2 * span), 2, span)
        u = blocks[:, :, 0, :].copy()
        v = blocks[:, :, 1, :] * w
        blocks[:, :, 0, :] = u + v
        blocks[:, :, 1, :] = u - v
        if counter is not None:
            counter.add(batch * size // 2)
        span *= 2
    work *= 1.0 / np.sqrt(size)
    return np.moveaxis(work.reshape(*lead, size), -1, axis)
