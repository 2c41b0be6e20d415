"""Simulation and detection of hidden two-point symmetries.

Two symmetry families are covered: ``f(x xor p) = f(x) xor q`` (Simon type,
solved by Hadamard sampling and GF(2) elimination) and
``f(x + p) = f(x) + q`` (Shor type, solved by double Fourier sampling and
continued fractions), plus discrete self-similarity as an application of the
latter, and classical baselines for comparison.
"""

__version__ = "0.1.0"

from .estimators import ScaleInvarianceDetector, ShorSymmetryDetector, SimonSymmetryDetector
from .instances import (QueryCounter, gen_linear, gen_multixor, gen_shor, gen_simon,
                        oracle_eval)
from .selfsim import detect_scale_invariance, synth_signal
from .shor import ShorConfig, detect_shor
from .simon import SimonConfig, detect_simon

__all__ = [
    "ScaleInvarianceDetector", "ShorSymmetryDetector", "SimonSymmetryDetector",
    "QueryCounter", "gen_linear", "gen_multixor", "gen_shor", "gen_simon", "oracle_eval",
    "detect_scale_invariance", "synth_signal", "ShorConfig", "detect_shor",
    "SimonConfig", "detect_simon",
]
