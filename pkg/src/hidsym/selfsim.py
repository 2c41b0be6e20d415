"""Discrete self-similarity ``phi(alpha chi) = beta phi(chi)`` as a Shor-type symmetry.

On a geometric lattice ``chi_j = chi_min * g**j`` the log-domain samples
``s_j = log_b phi(chi_j)`` turn the scaling law into ``s_{j+p} = s_j + q``
with ``alpha = g**p`` and ``beta = b**q``.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import ContractViolation, InvalidParameter, QuantizationError, RangeError
from .instances import FunctionTable
from .shor import FOUND, ShorConfig, ShorReport, detect_shor

DEFAULT_TOLERANCE = 1e-6


@dataclass(frozen=True)
class GeometricLattice:
    chi_min: float
    ratio: float
    n: int

    def __post_init__(self):
        if self.chi_min <= 0 or self.ratio <= 1:
            raise InvalidParameter("lattice needs chi_min > 0 and ratio > 1")

    @property
    def N(self) -> int:
        return 1 << self.n

    def points(self) -> np.ndarray:
        return self.chi_min * np.power(float(self.ratio), np.arange(self.N))


@dataclass(frozen=True, eq=False)
class SelfSimSignal:
    lattice: GeometricLattice
    log_phi: np.ndarray
    base: float

    def __post_init__(self):
        if self.base <= 1:
            raise InvalidParameter("value base must exceed 1")
        if self.log_phi.shape != (self.lattice.N,):
            raise ContractViolation(f"expected {self.lattice.N} samples")
        if not np.all(np.isfinite(self.log_phi)):
            raise InvalidParameter("log-domain samples must be finite")

    @classmethod
    def from_values(cls, lattice: GeometricLattice, phi, base: float) -> "SelfSimSignal":
        phi = np.asarray(phi, dtype=float)
        if np.any(phi <= 0):
            raise InvalidParameter("phi must be strictly positive to take logarithms")
        return cls(lattice, np.log(phi) / math.log(base), base)


@dataclass
class SelfSimReport:
    alpha: Optional[float]
    beta: Optional[float]
    shor: ShorReport
    quantization_residual: float

    @property
    def status(self) -> str:
        return self.shor.status

    def as_dict(self) -> dict:
        return {"status": self.status, "alpha": self.alpha, "beta": self.beta,
                "quantization_residual": self.quantization_residual,
                "shor": self.shor.as_dict()}


def synth_signal(inst, g: float = 2, b: float = 2, chi_min: float = 1.0) -> SelfSimSignal:
    lattice = GeometricLattice(chi_min, g, inst.n)
    return SelfSimSignal(lattice, inst.table.astype(float), b)


def discretize(sig: SelfSimSignal, tolerance: float = DEFAULT_TOLERANCE):
    """Round log-domain samples to integers; returns ``(table, max_residual)``."""
    if tolerance < 0:
        raise InvalidParameter("tolerance must be non-negative")
    rounded = np.rint(sig.log_phi)
    resid = np.abs(sig.log_phi - rounded)
    worst = float(resid.max())
    if worst > tolerance:
        j = int(resid.argmax())
        raise QuantizationError(f"sample {j} is {worst:.3g} from an integer (tolerance {tolerance})")
    table = rounded.astype(np.int64)
    if table.min() < 0 or table.max() >= sig.lattice.N:
        raise RangeError(f"discretized values must lie in [0, {sig.lattice.N})")
    return table, worst


def _power(base: float, e: int):
    return int(base) ** e if float(base).is_integer() else float(base) ** e


def detect_scale_invariance(sig: SelfSimSignal, cfg: Optional[ShorConfig] = None,
                            tolerance: float = DEFAULT_TOLERANCE) -> SelfSimReport:
    table, resid = discretize(sig, tolerance)
    report = detect_shor(FunctionTable(sig.lattice.n, table), cfg)
    if report.status != FOUND:
        return SelfSimReport(None, None, report, resid)
    return SelfSimReport(_power(sig.lattice.ratio, report.p), _power(sig.base, report.q),
                         report, resid)


# ----------------------------------------------------------------- file I/O

def read_signal(csv_path, sidecar_path) -> SelfSimSignal:
    """Load a signal from CSV ``(chi, phi)`` or ``(j, log_phi)`` plus a JSON sidecar.

    The sidecar holds ``{"chi_min", "ratio", "base", "n"}``.
    """
    meta = json.loads(Path(sidecar_path).read_text())
    lattice = GeometricLattice(float(meta["chi_min"]), float(meta["ratio"]), int(meta["n"]))
    base = float(meta["base"])
    with open(csv_path, newline="") as fh:
        reader = csv.DictReader(fh)
        cols = reader.fieldnames or []
        rows = list(reader)
    if len(rows) != lattice.N:
        raise ContractViolation(f"expected {lattice.N} rows, got {len(rows)}")
    if {"j", "log_phi"} <= set(cols):
        rows.sort(key=lambda r: int(r["j"]))
        if [int(r["j"]) for r in rows] != list(range(lattice.N)):
            raise ContractViolation("column j must enumerate 0..N-1")
        return SelfSimSignal(lattice, np.array([float(r["log_phi"]) for r in rows]), base)
    if {"chi", "phi"} <= set(cols):
        chi = np.array([float(r["chi"]) for r in rows])
        order = np.argsort(chi)
        if not np.allclose(chi[order], lattice.points(), rtol=1e-9, atol=0):
            raise ContractViolation("chi values are not the declared geometric lattice")
        return SelfSimSignal.from_values(lattice, np.array([float(r["phi"]) for r in rows])[order], base)
    raise ContractViolation("CSV needs columns (chi, phi) or (j, log_phi)")


def write_signal(sig: SelfSimSignal, csv_path, sidecar_path) -> None:
    """Write the log-domain form ``(j, log_phi)`` and its sidecar."""
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["j", "log_phi"])
        for j, s in enumerate(sig.log_phi):
            w.writerow([j, repr(float(s))])
    Path(sidecar_path).write_text(json.dumps(
        {"chi_min": sig.lattice.chi_min, "ratio": sig.lattice.ratio,
         "base": sig.base, "n": sig.lattice.n}, sort_keys=True))
