"""Shor-type symmetry detection ``f(x + p) = f(x) + q``.

Pipeline: sample ``(k_x, k_y)`` pairs, combine two pairs with small integers
that cancel their ``k_y`` (and hence ``q``), expand the combined ``k_x`` sum
as a continued fraction to propose ``p``, then read ``q`` off oracle
differences and verify.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from .contfrac import cancel_combination, cf_quotients, convergents
from .errors import InvalidParameter
from .instances import QueryCounter, oracle_eval, shor_p_limit
from .rng import make_rng
from .sampling import sample_shor_pair
from .statevec import full_distribution, prepare_oracle_state, qft_register, sample_index

FOUND, NOT_FOUND = "found", "not_found"


@dataclass(frozen=True)
class PairSample:
    k_x: int
    k_y: int


@dataclass
class ShorConfig:
    """Detector knobs; ``None`` fields resolve against ``N`` (see :meth:`resolved`)."""

    max_pairs: int = 12
    M: Optional[int] = None
    p_max: Optional[int] = None
    lambda_max: int = 16
    c: float = 4.0
    verify_trials: int = 32
    seed: int = 0
    engine: str = "fast"

    def resolved(self, n: int) -> "ShorConfig":
        N = 1 << n
        M = math.isqrt(N) if self.M is None else self.M
        p_max = shor_p_limit(n) if self.p_max is None else self.p_max
        if M < 1 or p_max < 1 or self.lambda_max < 1:
            raise InvalidParameter("M, p_max and lambda_max must be >= 1")
        if self.max_pairs < 2:
            raise InvalidParameter("max_pairs must be >= 2")
        if self.engine not in ("fast", "dense"):
            raise InvalidParameter(f"unknown engine {self.engine!r}")
        return ShorConfig(self.max_pairs, M, p_max, self.lambda_max, self.c,
                          self.verify_trials, self.seed, self.engine)


@dataclass
class ShorReport:
    status: str
    p: Optional[int]
    q: Optional[int]
    pairs_used: int
    resonant_fraction: Optional[float]
    candidate_log: List[dict] = field(default_factory=list)
    pairs: List[PairSample] = field(default_factory=list)
    counters: QueryCounter = field(default_factory=QueryCounter)

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "p": self.p,
            "q": self.q,
            "pairs_used": self.pairs_used,
            "resonant_fraction": self.resonant_fraction,
            "candidate_log": self.candidate_log,
            "pairs": [[s.k_x, s.k_y] for s in self.pairs],
        }


def make_pair_sampler(inst, rng: np.random.Generator, engine: str = "fast"):
    """Zero-argument callable returning one ``(k_x, k_y)`` outcome per call."""
    if engine == "fast":
        return lambda: sample_shor_pair(inst, rng)
    state = qft_register(prepare_oracle_state(inst.table, inst.n), "both")
    probs = full_distribution(state)
    mask = inst.N - 1

    def draw():
        idx = sample_index(probs, rng)
        return idx & mask, idx >> inst.n

    return draw


def collect_pairs(inst, count: int, rng: np.random.Generator,
                  counter: Optional[QueryCounter] = None, sampler=None) -> List[PairSample]:
    """``count`` samples with ``k_y != 0``; discarded draws still cost a run."""
    if count < 1:
        raise InvalidParameter("count must be positive")
    sampler = sampler or make_pair_sampler(inst, rng)
    out = []
    while len(out) < count:
        kx, ky = sampler()
        if counter is not None:
            counter.quantum_runs += 1
        if ky != 0:
            out.append(PairSample(kx, ky))
    return out


def combine_pair(a: PairSample, b: PairSample, M: int, N: int):
    """Eliminate ``k_y`` between two samples; returns ``(xi, combination)``."""
    comb = cancel_combination(a.k_y, b.k_y, M)
    xi = Fraction((comb.alpha1 * a.k_x + comb.alpha2 * b.k_x) % N, N)
    return xi, comb


def candidate_denominators(xi: Fraction, p_max: int) -> List[int]:
    if p_max < 1:
        raise InvalidParameter("p_max must be >= 1")
    dens = {1}
    for c in convergents(cf_quotients(xi.numerator, xi.denominator)):
        if c.k > p_max:
            break
        dens.add(c.k)
    return sorted(dens)


def candidate_periods(denominators: Sequence[int], p_max: int, lambda_max: int) -> List[int]:
    """Convergent denominators and their multiples, ascending, capped at ``p_max``.

    The trivial denominator 1 contributes only itself; scaling it would turn
    the search into a blind scan of every shift.
    """
    out = set()
    for d in denominators:
        if d == 1:
            out.add(1)
            continue
        out.update(lam * d for lam in range(1, lambda_max + 1) if lam * d <= p_max)
    return sorted(out)


def recover_q(oracle, p: int, trials: int, rng: np.random.Generator,
              counter: Optional[QueryCounter] = None) -> Optional[int]:
    """Common difference ``f(x + p) - f(x)`` over random probes, or ``None``."""
    N = oracle.N
    if not 1 <= p < N:
        raise InvalidParameter(f"shift must be in [1, N), got {p}")
    seen = set()
    for x in rng.integers(0, N - p, size=trials):
        x = int(x)
        seen.add(oracle_eval(oracle, x + p, counter) - oracle_eval(oracle, x, counter))
    if len(seen) == 1:
        (q,) = seen
        if q >= 1:
            return q
    return None


def resonance_residual(pair: PairSample, p: int, q: int, N: int) -> int:
    r = (p * pair.k_x + q * pair.k_y) % N
    return min(r, N - r)


def resonance_check(pair: PairSample, p: int, q: int, N: int, c: float) -> bool:
    """Whether ``p k_x + q k_y`` lies within ``c p`` of a multiple of ``N``."""
    return resonance_residual(pair, p, q, N) <= c * p


def _reduce_to_fundamental(inst, found, tested, log, cfg, rng, counter, n_pairs):
    """Replace a verified shift by its smallest verified proper divisor.

    Continued fractions can hand back a multiple of the period (any multiple
    ``m p`` is itself a symmetry with ``m q``); the fundamental one is wanted.
    """
    p, q = found
    for d in range(1, p):
        if p % d:
            continue
        if d not in tested:
            tested[d] = recover_q(inst, d, cfg.verify_trials, rng, counter)
            log.append({"p": d, "q": tested[d], "pairs": n_pairs, "xi": None})
        if tested[d] is not None:
            return d, tested[d]
    return p, q


def detect_shor(inst, cfg: Optional[ShorConfig] = None) -> ShorReport:
    n = inst.n
    N = 1 << n
    cfg = (cfg or ShorConfig()).resolved(n)
    counter = QueryCounter()
    sampler = make_pair_sampler(inst, make_rng(cfg.seed, 1), cfg.engine)
    probe_rng = make_rng(cfg.seed, 2)
    pairs: List[PairSample] = []
    tested = {}
    log = []
    found = None
    while len(pairs) < cfg.max_pairs and found is None:
        new = collect_pairs(inst, 1, None, counter, sampler)[0]
        for old in pairs:
            xi, _ = combine_pair(old, new, cfg.M, N)
            dens = candidate_denominators(xi, cfg.p_max)
            for cand in candidate_periods(dens, cfg.p_max, cfg.lambda_max):
                if cand in tested or cand >= N:
                    continue
                q = recover_q(inst, cand, cfg.verify_trials, probe_rng, counter)
                tested[cand] = q
                log.append({"p": cand, "q": q, "pairs": len(pairs) + 1,
                            "xi": [xi.numerator, xi.denominator]})
                if q is not None:
                    found = (cand, q)
                    break
            if found is not None:
                break
        pairs.append(new)
    if found is None:
        return ShorReport(NOT_FOUND, None, None, len(pairs), None, log, pairs, counter)
    p, q = _reduce_to_fundamental(inst, found, tested, log, cfg, probe_rng, counter, len(pairs))
    frac = sum(resonance_check(s, p, q, N, cfg.c) for s in pairs) / len(pairs)
    return ShorReport(FOUND, p, q, len(pairs), frac, log, pairs, counter)
