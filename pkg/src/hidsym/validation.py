"""Input validation for function tables handed to the estimators."""

from __future__ import annotations

from typing import Tuple

import numpy as np

from .errors import ContractViolation


def check_table(X, *, bounded: bool = True) -> Tuple[np.ndarray, int]:
    """Coerce ``X`` to a 1-D int64 table of length ``2**n``; returns ``(table, n)``.

    Accepts any object exposing a ``table`` attribute, or array-likes. With
    ``bounded`` the values must lie in ``[0, 2**n)``.
    """
    arr = np.asarray(getattr(X, "table", X))
    if arr.ndim == 2 and 1 in arr.shape:
        arr = arr.reshape(-1)
    if arr.ndim != 1:
        raise ContractViolation(f"expected a 1-D function table, got shape {arr.shape}")
    if arr.size == 0 or arr.size & (arr.size - 1):
        raise ContractViolation(f"table length must be a power of two, got {arr.size}")
    if arr.dtype.kind == "f":
        if not np.all(np.isfinite(arr)) or not np.array_equal(arr, np.rint(arr)):
            raise ContractViolation("table values must be integers")
    elif arr.dtype.kind not in "iu":
        raise ContractViolation(f"unsupported table dtype {arr.dtype}")
    table = arr.astype(np.int64)
    n = table.size.bit_length() - 1
    if n < 1:
        raise ContractViolation("table needs at least two entries")
    if bounded and (table.min() < 0 or table.max() >= table.size):
        raise ContractViolation(f"table values must lie in [0, {table.size})")
    return table, n


def check_log_samples(X) -> np.ndarray:
    arr = np.asarray(getattr(X, "log_phi", X), dtype=float).reshape(-1)
    if arr.size == 0 or arr.size & (arr.size - 1):
        raise ContractViolation(f"sample count must be a power of two, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise ContractViolation("log-domain samples must be finite")
    return arr
