"""Exact rational ingredients: Bernoulli numbers, generalized binomials, E_n(0).

Rationals are plain :class:`fractions.Fraction` values (always reduced, with a
positive denominator).

Bernoulli convention: ``t / (e^t - 1) = sum B_n t^n / n!``, hence
``B_1 = -1/2``.  The "second" convention (``B_1 = +1/2``) silently breaks the
Euler-polynomial formula below and every identity built on top of it.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb, factorial

__all__ = [
    "ExactRational",
    "bernoulli",
    "binom_general",
    "euler_poly_zero",
]

ExactRational = Fraction

_lock = threading.Lock()
_bernoulli: list[Fraction] = [Fraction(1)]


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number ``B_n`` (``B_1 = -1/2``), memoized.

    Uses the defining recurrence ``sum_{j=0}^{n} C(n+1, j) B_j = 0``.
    """
    if n < 0:
        raise ValueError(f"bernoulli index must be >= 0, got {n}")
    if n < len(_bernoulli):
        return _bernoulli[n]
    with _lock:
        table = _bernoulli
        for k in range(len(table), n + 1):
            if k >= 3 and k % 2 == 1:
                table.append(Fraction(0))
                continue
            acc = sum(comb(k + 1, j) * table[j] for j in range(k))
            table.append(-acc / (k + 1))
        return table[n]


def binom_general(a: int, r: int) -> Fraction:
    """``a (a-1) ... (a-r+1) / r!`` for any integer ``a`` and ``r >= 0``.

    For ``a = -s`` this is ``(-1)^r C(s+r-1, r)``.  Negative ``r`` gives 0,
    which lets shifted-index sums run past their natural start.
    """
    if r < 0:
        return Fraction(0)
    num = 1
    for i in range(r):
        num *= a - i
    return Fraction(num, factorial(r))


def euler_poly_zero(n: int) -> Fraction:
    """Euler polynomial value ``E_n(0) = -2 (2^{n+1} - 1) B_{n+1} / (n + 1)``."""
    if n < 0:
        raise ValueError(f"euler_poly_zero index must be >= 0, got {n}")
    return -2 * (2 ** (n + 1) - 1) * bernoulli(n + 1) / (n + 1)
