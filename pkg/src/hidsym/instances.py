"""Planted-symmetry oracle functions, counterexamples and query counting.

Every instance is an explicit lookup table over ``[0, 2**n)`` together with the
parameters needed to regenerate it from a seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import ContractViolation, GenerationError, InvalidParameter
from .gf2 import Gf2Matrix, parity_array
from .rng import make_rng

MAX_N = 24
EXHAUSTIVE_N = 14
MAX_ATTEMPTS = 100


@dataclass
class QueryCounter:
    """Classical oracle queries and quantum circuit runs spent by an experiment."""

    classical_queries: int = 0
    quantum_runs: int = 0

    def as_dict(self) -> dict:
        return {"classical_queries": self.classical_queries, "quantum_runs": self.quantum_runs}


class TableOracle:
    """Common behaviour of table-backed oracles: ``n``, ``N`` and ``table``."""

    n: int
    table: np.ndarray

    @property
    def N(self) -> int:
        return 1 << self.n

    def __call__(self, x: int) -> int:
        return int(self.table[x])


@dataclass(frozen=True, eq=False)
class FunctionTable(TableOracle):
    """A bare function table with no planted structure attached."""

    n: int
    table: np.ndarray
    kind: str = "table"


def _check_n(n: int, limit: int = MAX_N) -> None:
    if not 1 <= n <= limit:
        raise InvalidParameter(f"n must be in [1, {limit}], got {n}")


def _check_word(name: str, v: int, n: int) -> None:
    if not 0 <= v < 1 << n:
        raise InvalidParameter(f"{name}={v} does not fit in {n} bits")


# ---------------------------------------------------------------- Simon type

@dataclass(frozen=True, eq=False)
class SimonInstance(TableOracle):
    n: int
    p: int
    q: int
    table: np.ndarray
    seed: Optional[int] = None
    kind: str = "simon"

    @property
    def R(self) -> int:
        """Packed symmetry vector ``p | q << n``."""
        return self.p | (self.q << self.n)

    def satisfies(self, p: int, q: int) -> bool:
        x = np.arange(self.N)
        return bool(np.all(self.table[x ^ p] == self.table ^ q))


def coset_representatives(n: int, p: int) -> np.ndarray:
    """The smaller member of every pair ``{x, x xor p}``."""
    x = np.arange(1 << n)
    return x[x < (x ^ p)]


def extra_simon_symmetries(table: np.ndarray, n: int, exclude: Sequence[int] = (),
                           rng: Optional[np.random.Generator] = None,
                           spot_checks: int = 1000) -> np.ndarray:
    """Shifts ``p'`` (other than 0 and ``exclude``) with an exact xor symmetry.

    Each shift is tested against the only possible partner ``q' = f(p') xor f(0)``.
    The scan is exhaustive for ``n <= 14``; above that ``spot_checks`` random
    shifts are tested.
    """
    size = 1 << n
    table = np.asarray(table, dtype=np.int64)
    if n <= EXHAUSTIVE_N:
        cands = np.arange(1, size)
    else:
        rng = make_rng(0) if rng is None else rng
        cands = np.unique(rng.integers(1, size, size=spot_checks))
    cands = cands[~np.isin(cands, np.asarray(exclude, dtype=np.int64))]
    qs = table[cands] ^ table[0]
    # cheap prefix filter, then full confirmation on the few survivors
    for x in range(1, min(size, 33)):
        keep = table[x ^ cands] == (table[x] ^ qs)
        cands, qs = cands[keep], qs[keep]
        if cands.size == 0:
            return cands
    xs = np.arange(size)
    return np.array([c for c, qq in zip(cands, qs)
                     if np.all(table[xs ^ c] == (table ^ qq))], dtype=np.int64)


def gen_simon(n: int, p: int, q: int, seed: int = 0, require_unique: bool = True) -> SimonInstance:
    """Random values on coset representatives, propagated by the xor symmetry.

    With ``require_unique`` the draw is resampled until ``p`` is the only
    nonzero shift carrying an exact symmetry (impossible for ``n <= 2``, where
    any two-coset table is affine).
    """
    _check_n(n)
    if p == 0:
        raise InvalidParameter("p must be nonzero")
    _check_word("p", p, n)
    _check_word("q", q, n)
    rng = make_rng(seed)
    size = 1 << n
    reps = coset_representatives(n, p)
    for _ in range(MAX_ATTEMPTS):
        table = np.empty(size, dtype=np.int64)
        table[reps] = rng.integers(0, size, size=reps.size)
        table[reps ^ p] = table[reps] ^ q
        if not require_unique or extra_simon_symmetries(table, n, exclude=[p], rng=rng).size == 0:
            return SimonInstance(n, p, q, table, seed)
    raise GenerationError(f"no unique-symmetry table after {MAX_ATTEMPTS} draws (n={n}, p={p})")


@dataclass(frozen=True, eq=False)
class LinearInstance(TableOracle):
    """``f(x) = A.x xor b``: every ``p`` is a symmetry with ``q = A.p``."""

    n: int
    A: Gf2Matrix
    b: int
    table: np.ndarray
    seed: Optional[int] = None
    kind: str = "linear"

    @classmethod
    def from_matrix(cls, rows: Sequence[int], b: int, n: int, seed=None) -> "LinearInstance":
        A = Gf2Matrix(n, rows)
        if len(A) != n:
            raise InvalidParameter(f"A must have {n} rows")
        _check_word("b", b, n)
        x = np.arange(1 << n)
        table = np.full(1 << n, b, dtype=np.int64)
        for i, row in enumerate(A.rows):
            table ^= parity_array(x & row) << i
        return cls(n, A, b, table, seed)

    def q_for(self, p: int) -> int:
        return self.A.matvec(p)


def gen_linear(n: int, seed: int = 0) -> LinearInstance:
    _check_n(n, 16)
    rng = make_rng(seed)
    while True:
        rows = [int(r) for r in rng.integers(0, 1 << n, size=n)]
        if Gf2Matrix(n, rows).rank == n:
            break
    b = int(rng.integers(0, 1 << n))
    return LinearInstance.from_matrix(rows, b, n, seed)


@dataclass(frozen=True, eq=False)
class MultiXorInstance:
    """``n + 1`` component tables whose xor-sum is constant on ``{x, x xor p}``."""

    n: int
    p: int
    components: Tuple[np.ndarray, ...]
    seed: Optional[int] = None
    kind: str = "multixor"

    @property
    def N(self) -> int:
        return 1 << self.n

    def combined(self) -> np.ndarray:
        return np.bitwise_xor.reduce(np.stack(self.components), axis=0)

    def reduce(self) -> SimonInstance:
        """The function ``F(x) = xor_l f_l(x)``, a Simon instance with ``q = 0``."""
        return SimonInstance(self.n, self.p, 0, self.combined(), self.seed)


def gen_multixor(n: int, p: int, seed: int = 0, require_unique: bool = True) -> MultiXorInstance:
    if p == 0:
        raise InvalidParameter("p must be nonzero")
    F = gen_simon(n, p, 0, seed, require_unique=require_unique).table
    rng = make_rng(seed, 1)
    comps = [rng.integers(0, 1 << n, size=1 << n) for _ in range(n)]
    last = F ^ np.bitwise_xor.reduce(np.stack(comps), axis=0)
    return MultiXorInstance(n, p, tuple(comps) + (last,), seed)


# ----------------------------------------------------------------- Shor type

def shor_p_limit(n: int, epsilon: float = 0.25) -> int:
    """``floor(N**epsilon)`` computed without float round-off at exact powers."""
    limit = int(math.floor((1 << n) ** epsilon + 1e-9))
    return max(limit, 1)


@dataclass(frozen=True, eq=False)
class ShorInstance(TableOracle):
    n: int
    p: int
    q: int
    base: Tuple[int, ...]
    table: np.ndarray
    seed: Optional[int] = None
    kind: str = "shor"

    @property
    def periods(self) -> int:
        """Number of complete periods ``floor(N / p)``."""
        return self.N // self.p

    @classmethod
    def from_base(cls, n: int, p: int, q: int, base: Sequence[int], seed=None) -> "ShorInstance":
        _check_n(n)
        base = tuple(int(b) for b in base)
        if len(base) != p or p < 1:
            raise InvalidParameter(f"base must have length p={p}")
        if q < 0 or min(base) < 0:
            raise InvalidParameter("base values and q must be non-negative")
        x = np.arange(1 << n)
        table = np.asarray(base, dtype=np.int64)[x % p] + (x // p) * q
        if table.max() >= 1 << n:
            raise InvalidParameter("f exceeds N - 1; the symmetry would need a modulus")
        return cls(n, p, q, base, table, seed)

    def satisfies(self, p: int, q: int) -> bool:
        return bool(np.all(self.table[p:] - self.table[:-p] == q)) if p < self.N else False


def shor_subsymmetry(table: np.ndarray, p: int) -> Optional[int]:
    """Smallest shift ``d < p`` with ``f(x + d) - f(x)`` constant, if any."""
    for d in range(1, p):
        diff = table[d:] - table[:-d]
        if np.all(diff == diff[0]):
            return d
    return None


def _has_proper_period(base: np.ndarray) -> bool:
    p = base.size
    return any(p % d == 0 and np.array_equal(base, np.roll(base, -d)) for d in range(1, p))


def gen_shor(n: int, p: int, q: int, seed: int = 0, epsilon: float = 0.25) -> ShorInstance:
    """Base values drawn uniformly from ``[0, q)``; ``f(x) = base[x % p] + (x // p) * q``.

    Constant bases, bases with a proper period, and tables carrying any exact
    additive symmetry with a shift below ``p`` are rejected and redrawn.
    """
    _check_n(n)
    if q >= p:
        raise InvalidParameter(f"q={q} must be smaller than p={p} (no modulo-N wraparound)")
    if q < 2:
        raise InvalidParameter(f"q must be at least 2, got {q}")
    limit = shor_p_limit(n, epsilon)
    if p > limit:
        raise InvalidParameter(f"p={p} exceeds floor(N**{epsilon})={limit}")
    rng = make_rng(seed)
    for _ in range(MAX_ATTEMPTS):
        base = rng.integers(0, q, size=p)
        if np.all(base == base[0]) or _has_proper_period(base):
            continue
        inst = ShorInstance.from_base(n, p, q, base, seed)
        if shor_subsymmetry(inst.table, p) is None:
            return inst
    raise GenerationError(f"no admissible base after {MAX_ATTEMPTS} draws (p={p}, q={q})")


# ------------------------------------------------------------------ queries

def oracle_eval(inst, x: int, counter: Optional[QueryCounter] = None) -> int:
    """One classical query of ``f(x)``."""
    if not 0 <= x < inst.N:
        raise ContractViolation(f"x={x} outside [0, {inst.N})")
    if counter is not None:
        counter.classical_queries += 1
    return int(inst.table[x])


def build_h(inst: SimonInstance, variant: int, x: int, y: int) -> int:
    """``h1(x, y) = f(x) xor y`` or ``h2(x, y) = f(x) xor f(y)``."""
    for v in (x, y):
        if not 0 <= v < inst.N:
            raise ContractViolation(f"argument {v} outside [0, {inst.N})")
    fx = int(inst.table[x])
    if variant == 1:
        return fx ^ y
    if variant == 2:
        return fx ^ int(inst.table[y])
    raise InvalidParameter(f"variant must be 1 or 2, got {variant}")


# ------------------------------------------------------------ serialization

def instance_to_json(inst, include_table: bool = False) -> dict:
    d = {"kind": inst.kind, "n": inst.n, "p": getattr(inst, "p", None),
         "q": getattr(inst, "q", None), "seed": inst.seed}
    if inst.kind == "multixor":
        d["q"] = 0
    if include_table:
        if inst.kind == "multixor":
            d["table"] = [c.tolist() for c in inst.components]
        else:
            d["table"] = inst.table.tolist()
    return d


def instance_from_json(d: dict):
    kind, n, p, q, seed = d["kind"], d["n"], d.get("p"), d.get("q"), d.get("seed")
    table = d.get("table")
    if table is None:
        if seed is None:
            raise InvalidParameter("either seed or table is required")
        if kind == "simon":
            return gen_simon(n, p, q, seed)
        if kind == "linear":
            return gen_linear(n, seed)
        if kind == "shor":
            return gen_shor(n, p, q, seed, epsilon=d.get("epsilon", 0.25))
        if kind == "multixor":
            return gen_multixor(n, p, seed)
        raise InvalidParameter(f"unknown instance kind {kind!r}")
    if kind == "simon":
        inst = SimonInstance(n, p, q, np.asarray(table, dtype=np.int64), seed)
        if not inst.satisfies(p, q):
            raise InvalidParameter("table does not carry the stated symmetry")
        return inst
    if kind == "linear":
        t = np.asarray(table, dtype=np.int64)
        b = int(t[0])
        # column j of A is f(e_j) xor b; rows are rebuilt bitwise
        cols = [int(t[1 << j]) ^ b for j in range(n)]
        rows = [sum(((cols[j] >> i) & 1) << j for j in range(n)) for i in range(n)]
        inst = LinearInstance.from_matrix(rows, b, n, seed)
        if not np.array_equal(inst.table, t):
            raise InvalidParameter("table is not affine over GF(2)")
        return inst
    if kind == "shor":
        inst = ShorInstance.from_base(n, p, q, table[:p], seed)
        if not np.array_equal(inst.table, np.asarray(table)):
            raise InvalidParameter("table does not match f(x) = base[x % p] + (x // p) * q")
        return inst
    if kind == "multixor":
        comps = tuple(np.asarray(c, dtype=np.int64) for c in table)
        return MultiXorInstance(n, p, comps, seed)
    raise InvalidParameter(f"unknown instance kind {kind!r}")
