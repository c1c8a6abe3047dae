"""Asymptotic expansions for tails of power sums twisted by a fourth root of unity.

Twists are encoded by their exponent ``e`` in ``omega = i^e`` (0 -> 1, 1 -> i,
2 -> -1, 3 -> -i).  The central object is

    G_e(q, x) = sum_{i >= 0} omega^i (x + i)^(-q),

whose large-``x`` expansion comes from the operator identity
``sum_i omega^i E^i = (1 - omega e^D)^(-1)``:

    G_e(q, x) ~ [x^(1-q)/(q-1) if omega == 1] + sum_j c_j (-1)^j (q)_j x^(-q-j)

with ``c_j`` the Taylor coefficients of ``1/(1 - omega e^t)`` (regular part
when ``omega == 1``).  The series is asymptotic, so callers pick ``x`` large and
stop once terms drop below the requested accuracy.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import factorial

from mpmath import mp, mpc, mpf

from .arith import bernoulli, binom_general
from .precision import PrecisionError

# Gaussian rationals as (re, im) Fraction pairs; only needed for the +-i twists.
_coeff_lock = threading.Lock()
_coeffs: dict[int, list[tuple[Fraction, Fraction]]] = {0: [], 1: [], 2: [], 3: []}

_UNIT = {0: (1, 0), 1: (0, 1), 2: (-1, 0), 3: (0, -1)}


def _gmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _ginv(a):
    d = a[0] * a[0] + a[1] * a[1]
    return (Fraction(a[0]) / d, Fraction(-a[1]) / d)


def twist_coeffs(e: int, count: int) -> list[tuple[Fraction, Fraction]]:
    """Exact Taylor coefficients ``c_0..c_{count-1}`` of ``1/(1 - i^e e^t)``.

    For ``e == 0`` the pole ``-1/t`` is dropped, leaving ``c_j = -B_{j+1}/(j+1)!``.
    """
    e %= 4
    table = _coeffs[e]
    if len(table) >= count:
        return table[:count]
    with _coeff_lock:
        if e == 0:
            for j in range(len(table), count):
                table.append((-bernoulli(j + 1) / factorial(j + 1), Fraction(0)))
        else:
            omega = _UNIT[e]
            one_minus = (1 - omega[0], -omega[1])
            scale = _gmul(omega, _ginv(one_minus))
            if not table:
                table.append(_ginv(one_minus))
            for j in range(len(table), count):
                acc = (Fraction(0), Fraction(0))
                for n in range(1, j + 1):
                    c = table[j - n]
                    acc = (acc[0] + c[0] / factorial(n), acc[1] + c[1] / factorial(n))
                table.append(_gmul(scale, acc))
        return table[:count]


def unit(e: int, complex_: bool):
    """``i^e`` as an mpmath number (``mpc`` when ``complex_``)."""
    re, im = _UNIT[e % 4]
    return mpc(re, im) if complex_ else mpf(re)


def frac_mpf(q: Fraction) -> mpf:
    return mpf(q.numerator) / q.denominator


def _num(c, complex_: bool):
    if complex_:
        return mpc(frac_mpf(c[0]), frac_mpf(c[1]))
    return frac_mpf(c[0])


def expansion_coeffs(e: int, q: int, count: int):
    """Coefficients ``g_j`` of ``x^(-q-j)`` in ``G_e(q, x)``, ``j = 0..count-1``.

    The leading ``x^(1-q)/(q-1)`` term of the ``omega == 1`` case is not included.
    """
    cplx = e % 2 == 1
    out = []
    rising = 1
    for j, c in enumerate(twist_coeffs(e, count)):
        sign = -1 if j % 2 else 1
        out.append(_num(c, cplx) * (sign * rising))
        rising *= q + j
    return out


def power_tail(e: int, q: int, x, eps: float, max_terms: int = 4000):
    """``G_e(q, x)`` by its asymptotic expansion; returns ``(value, err)``.

    ``err`` is the size of the last term used.  Raises :class:`PrecisionError`
    if the terms start growing before reaching ``eps`` (``x`` too small).
    """
    e %= 4
    if e == 0 and q < 2:
        raise ValueError("untwisted power tail needs q >= 2")
    x = mpf(x)
    cplx = e % 2 == 1
    total = x ** (1 - q) / (q - 1) if e == 0 else (mpc(0) if cplx else mpf(0))
    xinv = 1 / x
    xpow = x ** (-q)
    rising = 1
    best = None
    batch = 32
    j = 0
    while j < max_terms:
        coeffs = twist_coeffs(e, j + batch)
        for c in coeffs[j:]:
            if c[0] or c[1]:
                sign = -1 if j % 2 else 1
                term = _num(c, cplx) * (sign * rising) * xpow
                size = abs(term)
                if best is not None and size > 1000 * best:
                    raise PrecisionError(f"asymptotic tail diverged at x={mp.nstr(x, 8)}, q={q}")
                total += term
                if size < eps:
                    return total, float(size)
                best = size if best is None else min(best, size)
            rising *= q + j
            xpow *= xinv
            j += 1
    raise PrecisionError("asymptotic tail did not converge")


def shifted_laurent(n_out: int, e: int, m: int, alpha: Fraction, count: int):
    """Coefficients ``d_p`` with ``k^(-n_out) G_e(m, k + alpha) ~ sum_p d_p k^(-p)``.

    Returns ``(p0, [d_p0, d_p0+1, ...])`` with ``count`` entries.
    """
    cplx = e % 2 == 1
    zero = mpc(0) if cplx else mpf(0)
    lead = e % 4 == 0
    p0 = n_out + m - (1 if lead else 0)
    d = [zero] * count
    # (exponent, coefficient) pairs of G in powers of y = k + alpha
    parts = []
    if lead:
        parts.append((m - 1, mpf(1) / (m - 1)))
    g = expansion_coeffs(e, m, count)
    parts.extend((m + j, g[j]) for j in range(count))
    a = frac_mpf(alpha)
    for expo, coeff in parts:
        base = n_out + expo - p0
        if base >= count:
            continue
        if alpha == 0:
            d[base] += coeff
            continue
        apow = mpf(1)
        for i in range(count - base):
            d[base + i] += coeff * (frac_mpf(binom_general(-expo, i)) * apow)
            apow *= a
    return p0, d


def twisted_tail(theta_e: int, n_out: int, e: int, m: int, alpha: Fraction, start: int, eps: float):
    """``sum_{k >= start} theta^k k^(-n_out) G_e(m, k + alpha)``; returns ``(value, err, terms)``.

    ``theta = i^theta_e``.  Expands the summand in powers of ``1/k`` and sums
    each power against the twisted tail ``Phi(p) = theta^start G_theta(p, start)``.
    """
    theta_e %= 4
    cplx = theta_e % 2 == 1 or e % 2 == 1
    x = mpf(start)
    count = 16
    while True:
        p0, d = shifted_laurent(n_out, e, m, alpha, count)
        total = mpc(0) if cplx else mpf(0)
        err = 0.0
        phase = unit(theta_e * start, cplx)
        sizes = []
        for idx, dp in enumerate(d):
            p = p0 + idx
            if dp == 0:
                sizes.append(0.0)
                continue
            phi, perr = power_tail(theta_e, p, x, eps / (1000 * max(1.0, float(abs(dp)))))
            term = dp * phi * phase
            total += term
            err += float(abs(dp)) * perr
            sizes.append(float(abs(term)))
        tail_est = sum(sizes[-3:])
        if tail_est < eps / 10:
            head = [s for s in sizes[:-3] if s]
            if head and max(sizes[-3:]) > max(head[-3:]):
                raise PrecisionError("depth-2 tail expansion diverged; raise the cutoff")
            return total, err + 10 * tail_est, p0 + count
        if count >= 1024:
            raise PrecisionError("depth-2 tail expansion did not converge")
        count *= 2
