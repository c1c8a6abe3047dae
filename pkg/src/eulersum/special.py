"""Depth-1 special functions at arbitrary precision.

Every public function takes a :class:`PrecisionContext` and returns a
:class:`BigReal` whose ``err`` is a conservative estimate of truncation plus
rounding error, at most ``10^-target_digits``.  The ``_``-prefixed variants work
at the ambient mpmath precision and return ``(value, err)`` for composition.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mp, mpc, mpf

from . import _tails
from .arith import bernoulli
from .precision import BigComplex, BigReal, PrecisionContext, PrecisionError

__all__ = [
    "beta_dirichlet",
    "const_log2",
    "const_pi",
    "harmonic_shift",
    "hurwitz_zeta",
    "li_at_root",
    "zeta_int",
    "zeta_even_closed",
]


def _eps() -> float:
    return 2.0 ** -(mp.prec - 8)


def _as_mpf(x) -> mpf:
    if isinstance(x, BigReal):
        return x.value
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


def _finish(ctx: PrecisionContext, value, err: float) -> BigReal:
    err = err + ctx.ulp * max(1.0, float(abs(value)))
    if err > ctx.eps:
        raise PrecisionError(f"error estimate {err:.3g} exceeds 1e-{ctx.target_digits}")
    return BigReal(+value, err)


# -- constants ---------------------------------------------------------------

def const_pi(ctx: PrecisionContext) -> BigReal:
    with ctx.workprec():
        return _finish(ctx, +mp.pi, 0.0)


def const_log2(ctx: PrecisionContext) -> BigReal:
    with ctx.workprec():
        return _finish(ctx, +mp.ln2, 0.0)


# -- Riemann zeta ------------------------------------------------------------

def zeta_even_closed(s: int) -> mpf:
    """``zeta(2k) = (-1)^(k-1) B_2k (2 pi)^(2k) / (2 (2k)!)`` at ambient precision."""
    if s < 2 or s % 2:
        raise ValueError("closed form needs an even s >= 2")
    b = bernoulli(s)
    k = s // 2
    sign = -1 if (k - 1) % 2 else 1
    return sign * (mpf(b.numerator) / b.denominator) * (2 * mp.pi) ** s / (2 * mpmath.factorial(s))


def _zeta_cutoff(s: int, eps: float) -> int:
    # smallest N where the direct terms are already below eps, capped by the
    # point where the Euler-Maclaurin expansion comfortably converges
    direct = math.ceil(eps ** (-1.0 / s)) if s > 1 else 10**9
    digits = -math.log10(eps)
    em = max(8, int(digits / 2) + s // 4)
    return min(direct, em)


def _zeta_direct(s: int):
    """Euler-Maclaurin: ``sum_{n<N} n^-s + G(s, N)``."""
    eps = _eps()
    n_cut = _zeta_cutoff(s, eps)
    if n_cut ** (1 - s) / (s - 1) < eps:
        # large s: plain summation, tail bounded by the integral
        head = mpmath.fsum(mpf(n) ** -s for n in range(1, n_cut + 1))
        return head, float(mpf(n_cut) ** (1 - s)) / (s - 1) + n_cut * eps
    while True:
        head = mpmath.fsum(mpf(n) ** -s for n in range(1, n_cut))
        try:
            tail, err = _tails.power_tail(0, s, n_cut, eps)
        except PrecisionError:
            n_cut *= 2
            continue
        return head + tail, err + n_cut * eps


@lru_cache(maxsize=4096)
def _zeta_cached(s: int, prec: int, direct: bool):
    with mp.workprec(prec):
        if not direct and s % 2 == 0:
            return zeta_even_closed(s), _eps()
        return _zeta_direct(s)


def _zeta(s: int, direct: bool = False):
    return _zeta_cached(s, mp.prec, direct)


def zeta_int(s: int, ctx: PrecisionContext, method: str = "auto") -> BigReal:
    """Riemann zeta at an integer ``s >= 2``.

    ``method="auto"`` uses the Bernoulli closed form for even ``s``;
    ``method="direct"`` forces Euler-Maclaurin summation (the cross-check path).
    """
    if s < 2:
        raise ValueError(f"zeta_int needs s >= 2, got {s}")
    if method not in ("auto", "direct"):
        raise ValueError(f"unknown method {method!r}")
    with ctx.workprec():
        v, err = _zeta(s, direct=method == "direct")
        return _finish(ctx, v, err)


# -- Dirichlet beta ----------------------------------------------------------

_CRVZ_RATE = 3 + math.sqrt(8)


def _alternating_sum(term, n_terms: int):
    """``sum_{k>=0} (-1)^k a_k`` for a moment sequence ``a_k``.

    Chebyshev-weighted acceleration (Cohen, Rodriguez Villegas, Zagier); the
    error is at most ``2 a_0 / (3 + sqrt 8)^n``.
    """
    n = n_terms
    d = (mpf(3) + mpmath.sqrt(8)) ** n
    d = (d + 1 / d) / 2
    b = mpf(-1)
    c = -d
    s = mpf(0)
    for k in range(n):
        c = b - c
        s += c * term(k)
        b = b * (k + n) * (k - n) / ((k + mpf(1) / 2) * (k + 1))
    return s / d


def _beta(s: int):
    eps = _eps()
    n = math.ceil(math.log(4 / eps) / math.log(_CRVZ_RATE)) + 1
    v = _alternating_sum(lambda k: mpf(2 * k + 1) ** -s, n)
    return v, 2.0 / _CRVZ_RATE**n + n * eps


@lru_cache(maxsize=1024)
def _beta_cached(s: int, prec: int):
    with mp.workprec(prec):
        return _beta(s)


def _beta_val(s: int):
    return _beta_cached(s, mp.prec)


def beta_dirichlet(s: int, ctx: PrecisionContext) -> BigReal:
    """``L(chi_-4, s) = sum_{n>=0} (-1)^n / (2n+1)^s`` for integer ``s >= 1``."""
    if s < 1:
        raise ValueError(f"beta_dirichlet needs s >= 1, got {s}")
    with ctx.workprec():
        v, err = _beta_val(s)
        return _finish(ctx, v, err)


# -- Hurwitz zeta and the harmonic shift -------------------------------------

def _hurwitz(s: int, x: mpf):
    eps = _eps()
    n_cut = max(8, int(-math.log10(eps) / 2) + s // 4)
    while True:
        head = mpmath.fsum((n + x) ** -s for n in range(n_cut))
        try:
            tail, err = _tails.power_tail(0, s, n_cut + x, eps)
        except PrecisionError:
            n_cut *= 2
            continue
        return head + tail, err + n_cut * eps * float(abs(x) ** -s + 1)


def hurwitz_zeta(s: int, x, ctx: PrecisionContext) -> BigReal:
    """``zeta(s; x) = sum_{n>=0} (n + x)^-s`` for integer ``s >= 2`` and ``x > 0``.

    The ``n = 0`` term ``x^-s`` is included.
    """
    if s < 2:
        raise ValueError(f"hurwitz_zeta needs s >= 2, got {s}")
    with ctx.workprec():
        xv = _as_mpf(x)
    if xv <= 0:
        raise ValueError("hurwitz_zeta needs x > 0")
    # the x^-s head can be huge; absolute accuracy needs that many extra bits
    extra = max(0, math.ceil(s * math.log2(1 / float(xv)))) if xv < 1 else 0
    ctx = PrecisionContext(ctx.target_digits, ctx.guard_bits, ctx.working_bits + extra)
    with ctx.workprec():
        xv = _as_mpf(x)
        v, err = _hurwitz(s, xv)
        return _finish(ctx, v, err)


def _shifted_power_sum(h: int, x: mpf):
    """``sum_{n>=1} (n + x)^-h`` for ``x > -1``, via the Hurwitz sum from ``1 + x``."""
    return _hurwitz(h, 1 + x)


def _harmonic_shift(x: mpf):
    eps = _eps()
    n_cut = max(10, int(-math.log10(eps) / 2) + 4)
    while n_cut + x < 4:
        n_cut *= 2
    head = mpmath.fsum(mpf(1) / n - 1 / (n + x) for n in range(1, n_cut))
    # digamma(N + x) - digamma(N) from the asymptotic expansion of digamma
    a, b = n_cut + x, mpf(n_cut)
    tail = mpmath.log1p(x / b) - 1 / (2 * a) + 1 / (2 * b)
    j = 1
    while True:
        bj = bernoulli(2 * j)
        term = -(mpf(bj.numerator) / bj.denominator) / (2 * j) * (a ** (-2 * j) - b ** (-2 * j))
        tail += term
        if abs(term) < eps:
            return head + tail, float(abs(term)) + n_cut * eps
        j += 1
        if j > 2000:
            raise PrecisionError("harmonic shift tail did not converge")


def harmonic_shift(x, ctx: PrecisionContext) -> BigReal:
    """``sum_{n>=1} (1/n - 1/(n + x))`` for ``x > -1``, ``x != 0``.

    ``x = 0`` is rejected: the value is 0, but the identities divide by ``x``
    right after using this sum, so a zero argument means a caller bug.
    """
    with ctx.workprec():
        xv = _as_mpf(x)
        if xv <= -1:
            raise ValueError("harmonic_shift needs x > -1")
        if xv == 0:
            raise ValueError("harmonic_shift(0) is rejected; callers divide by x")
        v, err = _harmonic_shift(xv)
        return _finish(ctx, v, err)


# -- depth-1 polylogarithms at fourth roots of unity ---------------------------

def _li_root(n: int, e: int):
    """``Li_n(i^e)`` at ambient precision; returns ``(value, err)``.

    ``Li_n(1) = zeta(n)``, ``Li_n(-1) = (2^(1-n) - 1) zeta(n)`` (``-log 2`` for n=1),
    ``Li_n(+-i) = 2^-n Li_n(-1) +- i beta(n)``.
    """
    e %= 4
    if e == 0:
        if n < 2:
            raise ValueError("Li_1(1) diverges")
        return _zeta(n)
    if e == 2:
        if n == 1:
            return -mp.ln2, _eps()
        z, err = _zeta(n)
        return (mpf(2) ** (1 - n) - 1) * z, err
    re, rerr = _li_root(n, 2)
    b, berr = _beta_val(n)
    re = re / mpf(2) ** n
    return mpc(re, b if e == 1 else -b), max(rerr, berr)


def li_at_root(n: int, twist, ctx: PrecisionContext):
    """``Li_n`` at a fourth root of unity; ``BigReal`` for ``+-1``, ``BigComplex`` for ``+-i``."""
    from .eulersums import twist_exponent

    e = twist_exponent(twist)
    with ctx.workprec():
        v, err = _li_root(n, e)
        if e % 2:
            _finish(ctx, abs(v), err)
            return BigComplex.from_mpc(v, err + ctx.ulp)
        return _finish(ctx, v, err)
