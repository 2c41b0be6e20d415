import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hidsym.contfrac import (last_convergent, best_bounded, cancel_combination, cf_quotients,
                             convergents, evaluate_quotients)
from hidsym.errors import DegeneratePairError, InvalidParameter


@pytest.mark.parametrize("a, b, expected", [(0, 1, [0]), (1, 4, [0, 4]), (31, 13, [2, 2, 1, 1, 2])])
def test_quotients(a, b, expected):
    assert cf_quotients(a, b) == expected


def test_quotients_zero_denominator():
    with pytest.raises(InvalidParameter):
        cf_quotients(1, 0)


def test_reconstruction_exhaustive():
    for b in range(1, 1 << 12, 7):
        for a in range(0, 2 * b + 1):
            qs = cf_quotients(a, b)
            assert all(x >= 1 for x in qs[1:])
            assert evaluate_quotients(qs) == Fraction(a, b)


def test_convergent_examples():
    assert [(c.h, c.k) for c in convergents([0, 4])] == [(0, 1), (1, 4)]
    assert [(c.h, c.k) for c in convergents([2, 2, 1, 1, 2])] == [(2, 1), (5, 2), (7, 3), (12, 5), (31, 13)]


@given(st.integers(0, 10_000), st.integers(1, 10_000))
def test_convergent_recurrence_invariants(a, b):
    cs = convergents(cf_quotients(a, b))
    assert cs[-1].as_fraction() == Fraction(a, b)
    for prev, cur in zip(cs, cs[1:]):
        assert cur.h * prev.k - prev.h * cur.k == (-1) ** (cur.index - 1)


def test_last_convergent_examples():
    c = last_convergent(Fraction(17, 12), 8)
    assert (c.h, c.k) == (7, 5)
    assert last_convergent(Fraction(17, 12), 12).as_fraction() == Fraction(17, 12)
    assert (last_convergent(Fraction(17, 12), 1).h, last_convergent(Fraction(17, 12), 1).k) == (1, 1)


def test_last_convergent_is_not_first_kind_optimal():
    # 10/7 is closer to 17/12 than the convergent 7/5; best_bounded finds it
    assert abs(Fraction(17, 12) - Fraction(10, 7)) < abs(Fraction(17, 12) - Fraction(7, 5))
    assert best_bounded(Fraction(17, 12), 8) == Fraction(10, 7)


def test_cancel_examples():
    c = cancel_combination(17, 12, 8)
    assert (c.alpha1, c.alpha2, c.residual) == (5, -7, 1)
    c = cancel_combination(4, 6, 8)
    assert (c.alpha1, c.alpha2, c.residual) == (3, -2, 0)
    c = cancel_combination(9, 9, 1)
    assert (c.alpha1, c.alpha2, c.residual) == (1, -1, 0)


def test_cancel_degenerate():
    with pytest.raises(DegeneratePairError):
        cancel_combination(0, 5, 4)


def test_cancel_bounds_random():
    import numpy as np
    r = np.random.default_rng(0)
    triples = np.column_stack([r.integers(1, 1 << 16, 100_000), r.integers(1, 1 << 16, 100_000),
                               r.integers(1, 1 << 9, 100_000)])
    for ky1, ky2, M in triples.tolist():
        c = cancel_combination(ky1, ky2, M)
        assert abs(c.alpha1) <= M and abs(c.alpha2) <= M
        assert c.residual <= max(ky1, ky2) / M + M
        if ky1 <= ky2:
            assert c.residual <= ky2 / M + M


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 1 << 10).flatmap(lambda b: st.tuples(st.integers(0, 3 * b), st.just(b))),
       st.integers(1, 32))
def test_best_bounded_first_kind(ab, kmax):
    x = Fraction(*ab)
    got = best_bounded(x, kmax)
    brute = min(abs(x - Fraction(math.floor(x * k + Fraction(1, 2)), k)) for k in range(1, kmax + 1))
    assert got.denominator <= kmax and abs(x - got) == brute


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 1 << 10).flatmap(lambda b: st.tuples(st.integers(0, 3 * b), st.just(b))),
       st.integers(1, 32))
def test_last_convergent_second_kind(ab, kmax):
    # no smaller denominator does better on |k x - h|
    x = Fraction(*ab)
    c = last_convergent(x, kmax)
    err = abs(c.k * x - c.h)
    for k in range(1, c.k):
        h = math.floor(k * x + Fraction(1, 2))
        assert abs(k * x - h) > err or abs(k * x - h) == err == 0
