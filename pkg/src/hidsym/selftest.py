"""Built-in consistency checks run by ``hidsym selftest``."""

from __future__ import annotations

from typing import List

import numpy as np

from .instances import (extra_simon_symmetries, gen_linear, gen_multixor, gen_shor, gen_simon,
                        shor_subsymmetry)
from .rng import make_rng
from .sampling import shor_joint_distribution, simon_joint_distribution
from .statevec import full_distribution, hadamard_register, prepare_oracle_state, qft_register
from .transforms import fwht, qft


def total_variation(a: np.ndarray, b: np.ndarray) -> float:
    return 0.5 * float(np.abs(np.asarray(a) - np.asarray(b)).sum())


def dense_simon_distribution(table, n: int) -> np.ndarray:
    return full_distribution(hadamard_register(prepare_oracle_state(table, n)))


def dense_shor_distribution(table, n: int) -> np.ndarray:
    return full_distribution(qft_register(prepare_oracle_state(table, n), "both"))


def _check(name: str, passed: bool, detail="") -> dict:
    return {"check": name, "passed": bool(passed), "detail": str(detail)}


def run_selftest(max_n: int = 4, seed: int = 0) -> List[dict]:
    out = []
    rng = make_rng(seed, 11)
    for n in range(1, max_n + 1):
        N = 1 << n
        p = int(rng.integers(1, N))
        q = int(rng.integers(0, N))
        simons = {"simon": gen_simon(n, p, q, seed, require_unique=n > 2).table,
                  "multixor": gen_multixor(n, p, seed, require_unique=n > 2).reduce().table,
                  "random": rng.integers(0, N, size=N)}
        if n >= 2:
            simons["linear"] = gen_linear(n, seed).table
        for kind, table in simons.items():
            tv = total_variation(simon_joint_distribution(table), dense_simon_distribution(table, n))
            out.append(_check(f"simon-sampler-exact/{kind}/n={n}", tv <= 1e-9, tv))
        shors = {"random": rng.integers(0, N, size=N)}
        if n >= 4:
            shors["shor"] = gen_shor(n, 3, 2, seed, epsilon=1.0).table
        for kind, table in shors.items():
            tv = total_variation(shor_joint_distribution(table), dense_shor_distribution(table, n))
            out.append(_check(f"shor-sampler-exact/{kind}/n={n}", tv <= 1e-9, tv))
        x = rng.normal(size=N) + 1j * rng.normal(size=N)
        out.append(_check(f"fwht-involution/N={N}",
                          np.allclose(fwht(fwht(x)), x, atol=1e-12, rtol=0)))
        out.append(_check(f"qft-inverse/N={N}",
                          np.allclose(qft(qft(x), inverse=True), x, atol=1e-12, rtol=0)))

    for n in (3, 6, 8):
        N = 1 << n
        p = int(rng.integers(1, N))
        q = int(rng.integers(0, N))
        inst = gen_simon(n, p, q, seed)
        out.append(_check(f"simon-symmetry/n={n}", inst.satisfies(p, q)))
        out.append(_check(f"simon-unique/n={n}",
                          extra_simon_symmetries(inst.table, n, exclude=[p]).size == 0))
        lin = gen_linear(n, seed)
        out.append(_check(f"linear-rank/n={n}", lin.A.rank == n))
        mx = gen_multixor(n, p, seed)
        F = mx.combined()
        out.append(_check(f"multixor-reduction/n={n}",
                          np.array_equal(F[np.arange(N) ^ p], F)))
    for n, p, q in ((8, 4, 2), (16, 13, 3)):
        inst = gen_shor(n, p, q, seed, epsilon=0.5 if n < 16 else 0.25)
        out.append(_check(f"shor-symmetry/n={n}", inst.satisfies(p, q)
                          and int(inst.table.max()) < inst.N
                          and shor_subsymmetry(inst.table, p) is None))
    return out
