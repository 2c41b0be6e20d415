import math
from fractions import Fraction

import numpy as np
import pytest

from hidsym.errors import InvalidParameter
from hidsym.instances import FunctionTable, QueryCounter, ShorInstance, gen_shor
from hidsym.rng import make_rng
from hidsym.shor import (FOUND, NOT_FOUND, PairSample, ShorConfig, candidate_denominators,
                         candidate_periods, collect_pairs, combine_pair, detect_shor, recover_q,
                         resonance_check, resonance_residual)


def test_combine_worked_example():
    xi, comb = combine_pair(PairSample(14, 4), PairSample(13, 6), 8, 64)
    assert (comb.alpha1, comb.alpha2) == (3, -2)
    assert xi == Fraction(1, 4)


def test_combine_identical_pairs():
    xi, comb = combine_pair(PairSample(9, 5), PairSample(9, 5), 8, 64)
    assert xi == 0 and (comb.alpha1, comb.alpha2) == (1, -1)


@pytest.mark.parametrize("xi, p_max, expected", [
    (Fraction(1, 4), 8, [1, 4]), (Fraction(0), 8, [1]), (Fraction(5, 16), 8, [1, 3]),
])
def test_candidate_denominators(xi, p_max, expected):
    assert candidate_denominators(xi, p_max) == expected


def test_candidate_periods():
    assert candidate_periods([1, 4], 8, 16) == [1, 4, 8]
    assert candidate_periods([1, 3], 16, 2) == [1, 3, 6]
    assert candidate_periods([1], 100, 16) == [1]


def test_recover_q():
    inst = gen_shor(12, 7, 3, seed=0)
    c = QueryCounter()
    assert recover_q(inst, 7, 16, make_rng(0), c) == 3
    assert c.classical_queries == 32
    assert recover_q(inst, 14, 16, make_rng(0)) == 6
    assert recover_q(inst, 5, 16, make_rng(0)) is None
    with pytest.raises(InvalidParameter):
        recover_q(inst, 0, 4, make_rng(0))


def test_resonance_check_examples():
    assert resonance_residual(PairSample(14, 4), 4, 2, 64) == 0
    assert resonance_check(PairSample(13, 6), 4, 2, 64, 4.0)
    assert resonance_residual(PairSample(1, 1), 4, 2, 64) == 6
    assert not resonance_check(PairSample(10, 1), 4, 2, 64, 1.0)


def test_shor_n64_exact_resonance():
    for seed in range(20):
        inst = gen_shor(6, 4, 2, seed, epsilon=0.5)
        rep = detect_shor(inst, ShorConfig(seed=seed, p_max=8))
        assert rep.status == FOUND and (rep.p, rep.q) == (4, 2)


def test_shor_n16_finds_planted():
    hits = 0
    for seed in range(20):
        inst = gen_shor(16, 13, 3, seed)
        rep = detect_shor(inst, ShorConfig(seed=seed))
        hits += rep.status == FOUND and (rep.p, rep.q) == (13, 3)
        assert rep.pairs_used <= 12
    assert hits >= 17


def test_length_one_base_gives_unit_period():
    inst = ShorInstance.from_base(8, 1, 1, [0])
    rep = detect_shor(inst, ShorConfig(seed=0))
    assert (rep.p, rep.q) == (1, 1)


def test_random_table_not_found():
    table = make_rng(2).integers(0, 1 << 10, size=1 << 10)
    rep = detect_shor(FunctionTable(10, table), ShorConfig(seed=0))
    assert rep.status == NOT_FOUND and rep.pairs_used == 12 and rep.p is None


def test_collect_pairs_discards_zero_ky():
    inst = gen_shor(6, 4, 2, 0, epsilon=0.5)
    c = QueryCounter()
    pairs = collect_pairs(inst, 50, make_rng(1), c)
    assert all(s.k_y != 0 for s in pairs)
    assert c.quantum_runs >= 50


def _xi_distance(xi, p):
    return min(abs(xi - Fraction(m, p)) for m in range(p + 1))


def _resonant_combinations(n, p, q, seeds, c=4.0):
    N = 1 << n
    M = math.isqrt(N)
    for s in seeds:
        inst = gen_shor(n, p, q, s, epsilon=0.5)
        pairs = [a for a in collect_pairs(inst, 12, make_rng(s, 9))
                 if resonance_residual(a, p, q, N) <= c * p]
        for i in range(len(pairs)):
            for j in range(i + 1, len(pairs)):
                yield combine_pair(pairs[i], pairs[j], M, N)


@pytest.mark.parametrize("n, p, q", [(16, 13, 3), (16, 11, 5), (12, 7, 3), (10, 5, 2)])
def test_xi_accuracy(n, p, q):
    # error decomposes into the resonance residuals and the uncancelled k_y remainder
    N = 1 << n
    count = 0
    for xi, comb in _resonant_combinations(n, p, q, range(20)):
        A = abs(comb.alpha1) + abs(comb.alpha2)
        assert _xi_distance(xi, p) <= Fraction(A * 4, N) + Fraction(q * comb.residual, p * N)
        count += 1
    assert count > 100


def test_xi_accuracy_coarse_bound_has_counterexamples():
    # the bound A*c*p/N ignores the q*E/(pN) term and fails on some combinations
    violations = 0
    for xi, comb in _resonant_combinations(16, 11, 5, range(30)):
        A = abs(comb.alpha1) + abs(comb.alpha2)
        violations += _xi_distance(xi, 11) > Fraction(A * 4 * 11, 1 << 16)
    assert violations > 0


def test_resonant_fraction_reported():
    res = [detect_shor(gen_shor(16, 13, 3, s), ShorConfig(seed=s)).resonant_fraction
           for s in range(20)]
    assert np.median([r for r in res if r is not None]) >= 0.4


def test_config_validation():
    with pytest.raises(InvalidParameter):
        ShorConfig(max_pairs=1).resolved(8)
    with pytest.raises(InvalidParameter):
        ShorConfig(engine="gpu").resolved(8)
