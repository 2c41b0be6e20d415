"""scikit-learn style wrappers around the detectors.

``fit`` takes a function table (or any object with a ``table`` attribute) and
stores the recovered symmetry in trailing-underscore attributes; ``score``
returns the fraction of arguments on which the fitted symmetry holds.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .instances import FunctionTable
from .selfsim import GeometricLattice, SelfSimSignal, detect_scale_invariance
from .shor import FOUND, ShorConfig, detect_shor
from .simon import UNIQUE, SimonConfig, detect_simon
from .validation import check_log_samples, check_table


class SimonSymmetryDetector(BaseEstimator):
    """Recover ``(p, q)`` with ``f(x xor p) = f(x) xor q`` from a function table."""

    def __init__(self, max_samples=None, verify_trials=32, engine="fast", random_state=0):
        self.max_samples = max_samples
        self.verify_trials = verify_trials
        self.engine = engine
        self.random_state = random_state

    def fit(self, X, y=None):
        table, n = check_table(X)
        cfg = SimonConfig(self.max_samples, self.verify_trials, int(self.random_state or 0),
                          self.engine)
        self.report_ = detect_simon(FunctionTable(n, table), cfg)
        self.n_bits_ = n
        self.status_ = self.report_.status
        self.p_ = self.report_.p
        self.q_ = self.report_.q
        self.candidates_ = [(c.p, c.q) for c in self.report_.verified]
        return self

    def score(self, X, y=None):
        check_is_fitted(self, "report_")
        table, _ = check_table(X)
        if self.status_ != UNIQUE:
            return 0.0
        x = np.arange(table.size)
        return float(np.mean(table[x ^ self.p_] == (table ^ self.q_)))


class ShorSymmetryDetector(BaseEstimator):
    """Recover ``(p, q)`` with ``f(x + p) = f(x) + q`` from a function table."""

    def __init__(self, max_pairs=12, M=None, p_max=None, lambda_max=16, c=4.0,
                 verify_trials=32, engine="fast", random_state=0):
        self.max_pairs = max_pairs
        self.M = M
        self.p_max = p_max
        self.lambda_max = lambda_max
        self.c = c
        self.verify_trials = verify_trials
        self.engine = engine
        self.random_state = random_state

    def _config(self) -> ShorConfig:
        return ShorConfig(self.max_pairs, self.M, self.p_max, self.lambda_max, self.c,
                          self.verify_trials, int(self.random_state or 0), self.engine)

    def fit(self, X, y=None):
        table, n = check_table(X)
        self.report_ = detect_shor(FunctionTable(n, table), self._config())
        self.n_bits_ = n
        self.status_ = self.report_.status
        self.p_ = self.report_.p
        self.q_ = self.report_.q
        self.resonant_fraction_ = self.report_.resonant_fraction
        return self

    def score(self, X, y=None):
        check_is_fitted(self, "report_")
        table, _ = check_table(X)
        if self.status_ != FOUND:
            return 0.0
        return float(np.mean(table[self.p_:] - table[:-self.p_] == self.q_))


class ScaleInvarianceDetector(ShorSymmetryDetector):
    """Detect ``phi(alpha chi) = beta phi(chi)`` from log-domain samples on a geometric lattice.

    ``X`` holds ``log_b phi(chi_j)`` for ``chi_j = chi_min * ratio**j``.
    """

    def __init__(self, ratio=2, base=2, chi_min=1.0, tolerance=1e-6, max_pairs=12, M=None,
                 p_max=None, lambda_max=16, c=4.0, verify_trials=32, engine="fast",
                 random_state=0):
        super().__init__(max_pairs, M, p_max, lambda_max, c, verify_trials, engine, random_state)
        self.ratio = ratio
        self.base = base
        self.chi_min = chi_min
        self.tolerance = tolerance

    def fit(self, X, y=None):
        if isinstance(X, SelfSimSignal):
            sig = X
        else:
            samples = check_log_samples(X)
            lattice = GeometricLattice(self.chi_min, self.ratio, samples.size.bit_length() - 1)
            sig = SelfSimSignal(lattice, samples, self.base)
        self.selfsim_report_ = detect_scale_invariance(sig, self._config(), self.tolerance)
        self.report_ = self.selfsim_report_.shor
        self.n_bits_ = sig.lattice.n
        self.status_ = self.report_.status
        self.p_ = self.report_.p
        self.q_ = self.report_.q
        self.resonant_fraction_ = self.report_.resonant_fraction
        self.alpha_ = self.selfsim_report_.alpha
        self.beta_ = self.selfsim_report_.beta
        return self

    def score(self, X, y=None):
        return super().score(np.rint(check_log_samples(X)).astype(np.int64))
