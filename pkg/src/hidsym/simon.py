"""Simon-type symmetry detection: sample constraints, solve over GF(2), verify."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np

from .errors import InvalidParameter
from .gf2 import Gf2Matrix, unpack_ry
from .instances import MultiXorInstance, QueryCounter, oracle_eval
from .rng import make_rng
from .sampling import sample_simon_y
from .statevec import full_distribution, hadamard_register, prepare_oracle_state, sample_index

UNIQUE, AMBIGUOUS, EXHAUSTED = "unique", "ambiguous", "exhausted"


@dataclass
class SimonConfig:
    """Detector budget. ``max_samples=None`` means ``8 n``."""

    max_samples: Optional[int] = None
    verify_trials: int = 32
    seed: int = 0
    engine: str = "fast"

    def resolved(self, n: int) -> "SimonConfig":
        max_samples = 8 * n if self.max_samples is None else self.max_samples
        if max_samples < 2 * n - 1:
            raise InvalidParameter(f"max_samples must be >= 2n-1 = {2 * n - 1}")
        if self.verify_trials < 1:
            raise InvalidParameter("verify_trials must be >= 1")
        if self.engine not in ("fast", "dense"):
            raise InvalidParameter(f"unknown engine {self.engine!r}")
        return SimonConfig(max_samples, self.verify_trials, self.seed, self.engine)


@dataclass
class SimonCandidate:
    p: int
    q: int
    verified: bool

    def as_dict(self) -> dict:
        return {"p": self.p, "q": self.q, "verified": self.verified}


@dataclass
class SimonReport:
    status: str
    candidates: List[SimonCandidate]
    samples_used: int
    rank: int
    nullspace_dim: int
    counters: QueryCounter = field(default_factory=QueryCounter)

    @property
    def verified(self) -> List[SimonCandidate]:
        return [c for c in self.candidates if c.verified]

    @property
    def p(self) -> Optional[int]:
        return self.verified[0].p if self.status == UNIQUE else None

    @property
    def q(self) -> Optional[int]:
        return self.verified[0].q if self.status == UNIQUE else None

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "p": self.p,
            "q": self.q,
            "candidates": [c.as_dict() for c in self.candidates],
            "samples_used": self.samples_used,
            "rank": self.rank,
            "nullspace_dim": self.nullspace_dim,
        }


def make_sampler(inst, rng: np.random.Generator, engine: str = "fast") -> Callable[[], int]:
    """Zero-argument callable returning one packed outcome ``Y`` per call."""
    if engine == "fast":
        return lambda: sample_simon_y(inst, rng)
    probs = full_distribution(hadamard_register(prepare_oracle_state(inst.table, inst.n)))
    return lambda: sample_index(probs, rng)


def collect_constraints(sampler: Callable[[], int], n: int, max_samples: int,
                        counter: Optional[QueryCounter] = None) -> Tuple[Gf2Matrix, int]:
    """Draw ``Y`` until the rank reaches ``2n - 1`` or the budget is spent."""
    m = Gf2Matrix(2 * n)
    used = 0
    while m.rank < 2 * n - 1 and used < max_samples:
        m.append_if_independent(sampler())
        used += 1
        if counter is not None:
            counter.quantum_runs += 1
    return m, used


def solve_candidates(m: Gf2Matrix) -> List[Tuple[int, int]]:
    """Nullspace basis vectors split into ``(p, q)`` halves."""
    n = m.ncols // 2
    return [unpack_ry(v, n) for v in m.nullspace_basis() if v != 0]


def verify_candidate(oracle, p: int, q: int, v: int, rng: np.random.Generator,
                     counter: Optional[QueryCounter] = None) -> bool:
    """Check ``f(x xor p) == f(x) xor q`` at ``v`` random points (``2 v`` queries)."""
    if p == 0:
        raise InvalidParameter("p must be nonzero")
    ok = True
    for x in rng.integers(0, oracle.N, size=v):
        x = int(x)
        if oracle_eval(oracle, x ^ p, counter) != oracle_eval(oracle, x, counter) ^ q:
            ok = False
    return ok


def detect_simon(inst, cfg: Optional[SimonConfig] = None) -> SimonReport:
    if isinstance(inst, MultiXorInstance):
        inst = inst.reduce()
    n = inst.n
    cfg = (cfg or SimonConfig()).resolved(n)
    counter = QueryCounter()
    rng = make_rng(cfg.seed)
    sampler = make_sampler(inst, make_rng(cfg.seed, 1), cfg.engine)
    m, used = collect_constraints(sampler, n, cfg.max_samples, counter)
    candidates = []
    for p, q in solve_candidates(m):
        ok = p != 0 and verify_candidate(inst, p, q, cfg.verify_trials, rng, counter)
        candidates.append(SimonCandidate(p, q, ok))
    dim = 2 * n - m.rank
    n_ok = sum(c.verified for c in candidates)
    if dim == 1 and n_ok == 1:
        status = UNIQUE
    elif dim > 1 and n_ok > 0:
        status = AMBIGUOUS
    else:
        status = EXHAUSTED
    return SimonReport(status, candidates, used, m.rank, dim, counter)
