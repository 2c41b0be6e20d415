"""Continued fractions, convergents and the two-pair elimination step.

All arithmetic is exact on Python integers; :class:`fractions.Fraction` is the
rational type.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence

from .errors import DegeneratePairError, InvalidParameter


@dataclass(frozen=True)
class Convergent:
    h: int
    k: int
    index: int

    def as_fraction(self) -> Fraction:
        return Fraction(self.h, self.k)


@dataclass(frozen=True)
class CancelCombination:
    """Integers ``(alpha1, alpha2)`` making ``alpha1*ky1 + alpha2*ky2`` small."""

    alpha1: int
    alpha2: int
    residual: int


def cf_quotients(a: int, b: int) -> List[int]:
    """Partial quotients of ``a / b`` by the Euclidean algorithm."""
    if b <= 0:
        raise InvalidParameter(f"denominator must be positive, got {b}")
    if a < 0:
        raise InvalidParameter(f"numerator must be non-negative, got {a}")
    out = []
    while True:
        quot, rem = divmod(a, b)
        out.append(quot)
        if rem == 0:
            return out
        a, b = b, rem


def convergents(quotients: Sequence[int]) -> List[Convergent]:
    h_prev, h = 1, quotients[0]
    k_prev, k = 0, 1
    out = [Convergent(h, k, 0)]
    for i, a in enumerate(quotients[1:], start=1):
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        out.append(Convergent(h, k, i))
    return out


def evaluate_quotients(quotients: Sequence[int]) -> Fraction:
    """Fold ``[a0; a1, ..., am]`` back into a rational, from the tail."""
    value = Fraction(quotients[-1])
    for a in reversed(quotients[:-1]):
        value = a + 1 / value
    return value


def last_convergent(x: Fraction, kmax: int) -> Convergent:
    """Last convergent of non-negative ``x`` whose denominator is at most ``kmax``.

    Convergents minimise ``|k x - h|`` (best approximations of the second
    kind), which is what keeps the elimination residual small.
    """
    if kmax < 1:
        raise InvalidParameter(f"kmax must be >= 1, got {kmax}")
    x = Fraction(x)
    best = None
    for c in convergents(cf_quotients(x.numerator, x.denominator)):
        if c.k > kmax:
            break
        best = c
    return best


def cancel_combination(ky1: int, ky2: int, M: int) -> CancelCombination:
    """Small ``(alpha1, alpha2)`` with ``|alpha1| , |alpha2| <= M`` cancelling ``ky``.

    The ratio is always expanded with the larger value in the denominator, so
    both coefficients stay bounded by ``M``; the residual is then at most
    ``max(ky1, ky2) / M + M``.
    """
    if ky1 <= 0 or ky2 <= 0:
        raise DegeneratePairError(f"k_y values must be positive, got ({ky1}, {ky2})")
    if M < 1:
        raise InvalidParameter(f"M must be >= 1, got {M}")
    if ky1 <= ky2:
        c = last_convergent(Fraction(ky1, ky2), M)
        a1, a2 = c.k, -c.h
    else:
        c = last_convergent(Fraction(ky2, ky1), M)
        a1, a2 = c.h, -c.k
    return CancelCombination(a1, a2, abs(a1 * ky1 + a2 * ky2))


def best_bounded(x: Fraction, kmax: int) -> Fraction:
    """Closest fraction to non-negative ``x`` with denominator at most ``kmax``.

    Unlike :func:`last_convergent` this also considers semiconvergents, so it is
    optimal for ``|x - h/k|`` rather than for ``|k x - h|``. Ties go to the
    smaller denominator.
    """
    if kmax < 1:
        raise InvalidParameter(f"kmax must be >= 1, got {kmax}")
    x = Fraction(x)
    a, b = x.numerator, x.denominator
    if a < 0:
        raise InvalidParameter(f"x must be non-negative, got {x}")
    if b <= kmax:
        return x
    # walk the convergents with integers only, stopping at the first k > kmax
    quot, rem = divmod(a, b)
    h_prev, h, k_prev, k = 1, quot, 0, 1
    num, den = b, rem
    while True:
        quot, rem = divmod(num, den)
        if quot * k + k_prev > kmax:
            break
        h_prev, h = h, quot * h + h_prev
        k_prev, k = k, quot * k + k_prev
        num, den = den, rem
    t = (kmax - k_prev) // k
    if t >= 1:
        hs, ks = t * h + h_prev, t * k + k_prev
        if abs(a * ks - hs * b) * k < abs(a * k - h * b) * ks:
            return Fraction(hs, ks)
    return Fraction(h, k)
