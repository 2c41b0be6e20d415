"""Classical brute-force detectors with query accounting.

Each strategy talks to the oracle through a memoizing wrapper, so the query
count is the number of distinct arguments it had to learn. Answers are
confirmed against the full table before being returned; that audit reads the
table directly and is not charged as queries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .instances import EXHAUSTIVE_N, QueryCounter, oracle_eval
from .rng import make_rng

PROBES = 8


@dataclass
class BaselineReport:
    strategy: str
    found: bool
    p: Optional[int]
    q: Optional[int]
    classical_queries: int
    ambiguous: bool = False

    def as_dict(self) -> dict:
        return {"strategy": self.strategy, "found": self.found, "p": self.p, "q": self.q,
                "classical_queries": self.classical_queries, "ambiguous": self.ambiguous}


class _Memo:
    def __init__(self, inst, counter: QueryCounter):
        self.inst = inst
        self.counter = counter
        self.cache = {}

    def __call__(self, x: int) -> int:
        x = int(x)
        if x not in self.cache:
            self.cache[x] = oracle_eval(self.inst, x, self.counter)
        return self.cache[x]


def _xor_confirmed(inst, p: int, q: int) -> bool:
    if inst.n > EXHAUSTIVE_N:
        return True
    x = np.arange(inst.N)
    return bool(np.all(inst.table[x ^ p] == inst.table ^ q))


def _add_confirmed(inst, p: int, q: int) -> bool:
    if inst.n > EXHAUSTIVE_N:
        return True
    return bool(np.all(inst.table[p:] - inst.table[:-p] == q))


def simon_scan(inst, counter: Optional[QueryCounter] = None,
               rng=None, probes: int = PROBES) -> BaselineReport:
    """Try every shift in order; ``q'`` is forced by ``f(0) xor f(p')``."""
    counter = QueryCounter() if counter is None else counter
    rng = make_rng(0) if rng is None else make_rng(rng)
    f = _Memo(inst, counter)
    start = counter.classical_queries
    f0 = f(0)
    first = None
    for p in range(1, inst.N):
        q = f0 ^ f(p)
        if all(f(x ^ p) == f(x) ^ q for x in rng.integers(0, inst.N, size=probes)):
            if _xor_confirmed(inst, p, q):
                first = (p, q)
                break
    if first is None:
        return BaselineReport("scan", False, None, None, counter.classical_queries - start)
    ambiguous = getattr(inst, "kind", "") == "linear"
    return BaselineReport("scan", True, *first, counter.classical_queries - start, ambiguous)


def simon_birthday(inst, counter: Optional[QueryCounter] = None, rng=None,
                   probes: int = PROBES, budget: Optional[int] = None) -> BaselineReport:
    """Collision search: every pair of queried points proposes ``(x xor x', f(x) xor f(x'))``.

    A proposal seen for the second time is verified; the first that survives
    verification is returned.
    """
    counter = QueryCounter() if counter is None else counter
    rng = make_rng(0) if rng is None else make_rng(rng)
    budget = 4 * inst.N if budget is None else budget
    f = _Memo(inst, counter)
    start = counter.classical_queries
    seen_points = []
    proposals = set()
    rejected = set()
    while counter.classical_queries - start < budget:
        if len(f.cache) >= inst.N:
            break
        x = int(rng.integers(0, inst.N))
        if x in f.cache:
            continue
        fx = f(x)
        for y, fy in seen_points:
            prop = (x ^ y, fx ^ fy)
            if prop not in proposals:
                proposals.add(prop)
                continue
            if prop in rejected:
                continue
            p, q = prop
            if all(f(z ^ p) == f(z) ^ q for z in rng.integers(0, inst.N, size=probes)) \
                    and _xor_confirmed(inst, p, q):
                return BaselineReport("birthday", True, p, q, counter.classical_queries - start)
            rejected.add(prop)
        seen_points.append((x, fx))
    return BaselineReport("birthday", False, None, None, counter.classical_queries - start)


def shor_scan(inst, p_max: int, counter: Optional[QueryCounter] = None, rng=None,
              probes: int = PROBES) -> BaselineReport:
    """Test shifts ``1..p_max`` for a constant difference ``f(x + p') - f(x)``."""
    counter = QueryCounter() if counter is None else counter
    rng = make_rng(0) if rng is None else make_rng(rng)
    f = _Memo(inst, counter)
    start = counter.classical_queries
    for p in range(1, min(p_max, inst.N - 1) + 1):
        q = None
        ok = True
        for x in rng.integers(0, inst.N - p, size=probes):
            d = f(x + p) - f(x)
            if q is None:
                q = d
            elif d != q:
                ok = False
                break
        if ok and q is not None and q >= 1 and _add_confirmed(inst, p, q):
            return BaselineReport("scan", True, p, q, counter.classical_queries - start)
    return BaselineReport("scan", False, None, None, counter.classical_queries - start)
