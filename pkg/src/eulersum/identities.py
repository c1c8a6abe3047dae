"""Closed-form right-hand sides and two-sided checks of the Euler-sum identities.

Each ``*_check`` evaluates both sides independently and returns an
:class:`IdentityReport`.  A report passes when the two sides agree to within
``10^-(target_digits - 5)``.  The 5-digit slack absorbs truncation that builds
up across nested series.

Conversion table for the depth-1 polylogarithm constants used by
:func:`bbb_closed`::

    Li_w(1)  = zeta(w)                      (w >= 2)
    Li_w(-1) = (2^(1-w) - 1) zeta(w)        (w >= 2)
    Li_1(-1) = -log 2
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import comb

import mpmath
from mpmath import mp, mpc, mpf

from .arith import bernoulli, binom_general
from .eulersums import SumSpec, sum_colored, sum_li_pm, sum_li_quartic, sum_S, twist_exponent, twist_label
from .precision import BigComplex, BigReal, PrecisionContext, PrecisionError, format_fixed
from .special import (
    _beta_val,
    _eps,
    _finish,
    _harmonic_shift,
    _hurwitz,
    _li_root,
    _shifted_power_sum,
    _zeta,
)

SLACK = 5


class TruncationError(PrecisionError):
    """A series could not be truncated within its term budget at the requested accuracy."""


class DivergentTermError(ValueError):
    """A closed form instantiated the divergent constant ``Li_1(1)`` without cancellation."""


class ChainStep(str, Enum):
    TERM_M = "TERM_M"
    TERM_BETA = "TERM_BETA"
    TERM_LOG2 = "TERM_LOG2"
    TERM_ZETA2K = "TERM_ZETA2K"
    FINAL = "FINAL"


def _q(x: Fraction) -> mpf:
    return mpf(x.numerator) / x.denominator


def _r(x: Fraction | int) -> mpf:
    x = Fraction(x)
    return mpf(x.numerator) / x.denominator


# -- reports -----------------------------------------------------------------

@dataclass
class IdentityReport:
    identity_id: str
    parameters: dict
    lhs: object
    rhs: object
    abs_diff: object
    digits_agreed: int
    target_digits: int
    truncation: dict = field(default_factory=dict)
    passed: bool = False

    def to_record(self) -> dict:
        return {
            "identity_id": self.identity_id,
            "params": {k: _jsonable(v) for k, v in self.parameters.items()},
            "digits": self.target_digits,
            "lhs": _fmt(self.lhs, self.target_digits),
            "rhs": _fmt(self.rhs, self.target_digits),
            "abs_diff": mpmath.nstr(self.abs_diff, 3) if not isinstance(self.abs_diff, (int, Fraction)) else str(self.abs_diff),
            "digits_agreed": self.digits_agreed,
            "pass": self.passed,
            "truncation": self.truncation,
        }


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, Enum):
        return v.value
    return v


def _fmt(v, digits: int):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, BigComplex):
        v = v.value
    if isinstance(v, BigReal):
        v = v.value
    if isinstance(v, mpc):
        return {"re": format_fixed(v.real, digits), "im": format_fixed(v.imag, digits)}
    return format_fixed(v, digits)


def make_report(identity_id, params, lhs, rhs, ctx: PrecisionContext, truncation=None) -> IdentityReport:
    with ctx.workprec():
        lv = lhs.value if isinstance(lhs, (BigReal, BigComplex)) else lhs
        rv = rhs.value if isinstance(rhs, (BigReal, BigComplex)) else rhs
        diff = abs(lv - rv)
    cap = int(ctx.working_bits * math.log10(2))
    digits = cap if diff == 0 else min(cap, math.floor(-mpmath.log10(diff)))
    passed = diff <= mpf(10) ** -(ctx.target_digits - SLACK)
    return IdentityReport(identity_id, dict(params), lhs, rhs, diff, digits,
                          ctx.target_digits, truncation or {}, bool(passed))


def _complex_ok(z, ctx: PrecisionContext):
    if abs(mpc(z).imag) > ctx.eps:
        raise PrecisionError("imaginary part of a real closed form does not vanish")
    return mpc(z).real


# -- truncated power series with a majorant tail bound ------------------------

def _series(term, start: int, step: int, majorant, ratio, eps: float, max_terms: int = 20000):
    """Sum ``term(r)`` for ``r = start, start+step, ...`` until the tail is below ``eps``.

    ``majorant(r) >= |term(r)|`` and ``ratio(r)`` bounds
    ``majorant(r' + step) / majorant(r')`` for every ``r' >= r``; the tail after
    index ``r`` is bounded by ``majorant(r + step) / (1 - ratio(r + step))``.
    Returns ``(value, tail_bound, terms_used)``.
    """
    total = mpf(0)
    r = start
    for used in range(1, max_terms + 1):
        total += term(r)
        nxt = r + step
        q = ratio(nxt)
        if q < 1:
            bound = float(majorant(nxt)) / (1 - q)
            if bound < eps:
                return total, bound, used
        r = nxt
    raise TruncationError(f"series truncation failed after {max_terms} terms")


def _binom_neg_ratio(s: int, r: int, step: int) -> float:
    """Bound on ``C(s+r'+step-1, r'+step) / C(s+r'-1, r')`` for ``r' >= r`` (s >= 1)."""
    q = 1.0
    for i in range(step):
        q *= (s + r + i) / (r + i + 1)
    return q


# -- closed form of S(m) ---------------------------------------------------------

def thm1_coefficient(h: int) -> Fraction:
    """Rational part of ``(-1)^h (2^2h - 1) B_2h / (2h)!``; the full factor carries ``pi^2h``."""
    return (-1) ** h * (2 ** (2 * h) - 1) * bernoulli(2 * h) / math.factorial(2 * h)


def _thm1_rhs(m: int):
    b, err = _beta_val(m + 1)
    total = m * b
    err *= m
    for h in range(1, (m - 1) // 2 + 1):
        bh, eh = _beta_val(m - 2 * h + 1)
        c = _r(thm1_coefficient(h)) * mp.pi ** (2 * h)
        total += c * bh
        err += float(abs(c)) * eh
    return total, err


def thm1_rhs(m: int, ctx: PrecisionContext) -> BigReal:
    """``m beta(m+1) + sum_{h=1}^{(m-1)/2} (-1)^h pi^2h (2^2h - 1) B_2h / (2h)! beta(m-2h+1)``."""
    if m < 1 or m % 2 == 0:
        raise ValueError(f"thm1_rhs needs an odd m >= 1, got {m}")
    with ctx.workprec():
        v, err = _thm1_rhs(m)
        return _finish(ctx, v, err)


def thm1_check(m: int, ctx: PrecisionContext) -> IdentityReport:
    lhs, trunc = sum_S(m, ctx, with_info=True)
    return make_report("thm1", {"m": m}, lhs, thm1_rhs(m, ctx), ctx, trunc)


# -- the alternating double sums in closed form -----------------------------------

def bbb_terms(n: int, m: int, rho, sigma) -> dict:
    """Closed form for ``Li_{n,m}(rho, sigma)``, ``m + n`` odd, as an exact linear combination.

    Returns ``{monomial: coefficient}`` where a monomial is a sorted tuple of
    ``(weight, twist_exponent)`` factors standing for ``Li_weight(twist)``.
    Formal ``Li_1(1)`` factors must cancel; anything left raises
    :class:`DivergentTermError`.
    """
    if (m + n) % 2 == 0:
        raise ValueError("closed form needs m + n odd")
    rho_e, sigma_e = twist_exponent(rho), twist_exponent(sigma)
    if rho_e % 2 or sigma_e % 2:
        raise ValueError("closed form needs rho, sigma in {+1, -1}")
    if n == 1 and rho_e == 0:
        raise ValueError("Li_{1,m}(1, .) diverges")
    prod = (rho_e + sigma_e) % 4
    w = m + n
    sgn = (-1) ** n
    terms: dict = defaultdict(Fraction)

    def add(coef, *factors):
        if coef:
            terms[tuple(sorted(factors))] += Fraction(coef)

    add(Fraction(-1, 2), (w, prod))
    add(Fraction(1 + sgn, 2), (n, rho_e), (m, sigma_e))
    add(Fraction(sgn, 2) * comb(w - 1, n - 1), (w, rho_e))
    add(Fraction(sgn, 2) * comb(w - 1, m - 1), (w, sigma_e))
    for k in range(1, (w + 1) // 2):
        if 2 * k >= w:
            break
        add(-sgn * comb(w - 2 * k - 1, n - 1), (2 * k, prod), (w - 2 * k, rho_e))
        add(-sgn * comb(w - 2 * k - 1, m - 1), (2 * k, prod), (w - 2 * k, sigma_e))
    terms = {mono: c for mono, c in terms.items() if c}
    for mono in terms:
        if (1, 0) in mono:
            raise DivergentTermError(f"Li_1(1) survives in the closed form for ({n},{m},{rho},{sigma})")
    return terms


def bbb_closed(n: int, m: int, rho, sigma, ctx: PrecisionContext) -> BigReal:
    terms = bbb_terms(n, m, rho, sigma)
    with ctx.workprec():
        total = mpf(0)
        err = 0.0
        for mono, coef in sorted(terms.items()):
            val = _r(coef)
            rel = 0.0
            for weight, e in mono:
                li, li_err = _li_root(weight, e)
                val *= li
                rel += li_err
            total += val
            err += float(abs(val)) * rel * 2 + float(abs(coef)) * rel
        return _finish(ctx, total, err)


def bbb_check(n: int, m: int, rho, sigma, ctx: PrecisionContext) -> IdentityReport:
    lhs, trunc = sum_li_pm(SumSpec.of(n, m, rho, sigma), ctx, with_info=True)
    rhs = bbb_closed(n, m, rho, sigma, ctx)
    params = {"n": n, "m": m, "rho": twist_label(twist_exponent(rho)), "sigma": twist_label(twist_exponent(sigma))}
    return make_report("bbb", params, lhs, rhs, ctx, trunc)


def bbb_grid(max_weight: int = 9):
    """Every ``(n, m, rho, sigma)`` with ``m + n`` odd, ``m + n <= max_weight`` and a convergent sum."""
    out = []
    for w in range(3, max_weight + 1, 2):
        for n in range(1, w):
            m = w - n
            for rho in (1, -1):
                if n == 1 and rho == 1:
                    continue
                for sigma in (1, -1):
                    out.append((n, m, rho, sigma))
    return out


def _li1w(w: int):
    z1, e1 = _zeta(w + 1)
    z, e0 = _zeta(w)
    total = (mpf(w) / 2 - mpf(w + 1) / mpf(2) ** (w + 1)) * z1 - z * mp.ln2
    err = w * e1 + e0
    for k in range(1, (w - 2) // 2 + 1):
        za, ea = _zeta(2 * k)
        zb, eb = _zeta(w + 1 - 2 * k)
        total -= za * (1 - mpf(2) ** -(w - 2 * k)) * zb
        err += 2 * (ea + eb)
    return total, err


def li1w_closed(w: int, ctx: PrecisionContext) -> BigReal:
    """Closed form of ``Li_{1,w}(-1,-1)`` for even ``w >= 2``."""
    if w < 2 or w % 2:
        raise ValueError(f"li1w_closed needs an even w >= 2, got {w}")
    with ctx.workprec():
        return _finish(ctx, *_li1w(w))


def _odd_denom(m: int):
    total = 2 * (-1) ** (m - 1) * mp.ln2
    err = _eps()
    for j in range(m - 1):
        z, e = _zeta(m - j)
        total += 2 * (-1) ** j * (1 - mpf(2) ** -(m - j)) * z
        err += 2 * e
    return total, err


def odd_denom_sum_closed(m: int, ctx: PrecisionContext) -> BigReal:
    """``sum_{k>=1} 1/((2k-1)^m k)`` via zeta values and ``sum (2/(2k-1) - 1/k) = 2 log 2``."""
    if m < 1:
        raise ValueError(f"odd_denom_sum_closed needs m >= 1, got {m}")
    with ctx.workprec():
        return _finish(ctx, *_odd_denom(m))


# -- Hurwitz-type expansions -----------------------------------------------------------

def _check_unit_interval(x: Fraction, allow_negative: bool = False):
    lo = -1 if allow_negative else 0
    if not (lo < x < 1) or x == 0:
        raise ValueError(f"x must lie in ({lo}, 1) and be nonzero, got {x}")


def _zeta_series(s: int, shift: int, x: Fraction, eps: float):
    """``sum_r binom(-s, r) zeta(s + shift + r) x^r``."""
    xv = _q(x)
    ax = abs(float(x))

    def term(r):
        return _r(binom_general(-s, r)) * _zeta(s + shift + r)[0] * xv**r

    def majorant(r):
        return comb(s + r - 1, r) * float(_zeta(s + shift + r)[0]) * ax**r

    return _series(term, 0, 1, majorant, lambda r: ax * _binom_neg_ratio(s, r, 1), eps)


def ms_check(s: int, x, ctx: PrecisionContext) -> IdentityReport:
    """``-1/x^s + zeta(s; x) = sum_r binom(-s, r) zeta(s + r) x^r`` for ``0 < x < 1``."""
    x = Fraction(x)
    if s < 2:
        raise ValueError("ms_check needs s >= 2")
    _check_unit_interval(x)
    with ctx.workprec():
        hz, herr = _hurwitz(s, _q(x))
        lhs = _finish(ctx, hz - _q(x) ** -s, herr)
        val, bound, used = _zeta_series(s, 0, x, ctx.inner_eps)
        rhs = _finish(ctx, val, bound + used * _eps())
    return make_report("ms", {"s": s, "x": x}, lhs, rhs, ctx, {"r_terms": used, "tail_bound": bound})


def prop1_kernel(n: int, s: int, t: int, x) -> tuple[Fraction, Fraction]:
    """Both sides of the partial-fraction kernel, exactly::

        1/(n^t (n+x)^s) = sum_{h=1}^t (-1)^(t-h) C(s+t-h-1, t-h) / (n^h x^(s+t-h))
                          + (-1)^t sum_{h=1}^s C(s+t-h-1, t-1) x^(h-s-t) / (n+x)^h
    """
    x = Fraction(x)
    n = Fraction(n)
    lhs = 1 / (n**t * (n + x) ** s)
    rhs = Fraction(0)
    for h in range(1, t + 1):
        rhs += (-1) ** (t - h) * comb(s + t - h - 1, t - h) / (n**h * x ** (s + t - h))
    for h in range(1, s + 1):
        rhs += (-1) ** t * comb(s + t - h - 1, t - 1) * x ** (h - s - t) / (n + x) ** h
    return lhs, rhs


def kernel_check(n: int, s: int, t: int, x, ctx: PrecisionContext) -> IdentityReport:
    lhs, rhs = prop1_kernel(n, s, t, x)
    diff = abs(lhs - rhs)
    cap = int(ctx.working_bits * math.log10(2))
    return IdentityReport("kernel", {"n": n, "s": s, "t": t, "x": Fraction(x)}, lhs, rhs, diff,
                          cap if diff == 0 else 0, ctx.target_digits, {"exact": True}, diff == 0)


def prop1_check(s: int, t: int, x, ctx: PrecisionContext) -> IdentityReport:
    """``sum_r binom(-s,r) zeta(r+s+t) x^r`` against its finite zeta / harmonic-shift / shifted-power form."""
    x = Fraction(x)
    if s < 1 or t < 1:
        raise ValueError("prop1_check needs positive s, t")
    _check_unit_interval(x, allow_negative=True)
    with ctx.workprec():
        xv = _q(x)
        val, bound, used = _zeta_series(s, t, x, ctx.inner_eps)
        lhs = _finish(ctx, val, bound + used * _eps())
        total = mpf(0)
        err = 0.0
        for h in range(2, t + 1):
            z, e = _zeta(h)
            c = (-1) ** (t - h) * comb(s + t - h - 1, t - h) * xv ** -(s + t - h)
            total += c * z
            err += float(abs(c)) * e
        hs, e = _harmonic_shift(xv)
        c = (-1) ** (t - 1) * comb(s + t - 2, t - 1) * xv ** -(s + t - 1)
        total += c * hs
        err += float(abs(c)) * e
        for h in range(2, s + 1):
            ps, e = _shifted_power_sum(h, xv)
            c = (-1) ** t * comb(s + t - h - 1, t - 1) * xv ** -(s + t - h)
            total += c * ps
            err += float(abs(c)) * e
        rhs = _finish(ctx, total, err)
    return make_report("prop1", {"s": s, "t": t, "x": x}, lhs, rhs, ctx, {"r_terms": used, "tail_bound": bound})


def prop2_series(s: int, k: int, x: Fraction, eps: float):
    """``sum_r binom(-s, r+2k+1-s) zeta(r+2) x^r`` at ambient precision."""
    xv = _q(x)
    ax = float(x)
    off = 2 * k + 1 - s

    def term(r):
        return _r(binom_general(-s, r + off)) * _zeta(r + 2)[0] * xv**r

    def majorant(r):
        return comb(s + r + off - 1, r + off) * float(_zeta(r + 2)[0]) * ax**r

    return _series(term, 0, 1, majorant, lambda r: ax * _binom_neg_ratio(s, r + off, 1), eps)


def prop2_closed(s: int, k: int, x: Fraction):
    xv = _q(x)
    total = mpf(0)
    err = 0.0
    for h in range(0, s - 1):
        c = comb(2 * k - 1, h)
        if not c:
            continue
        hz, e = _hurwitz(s - h, xv)
        total += (-1) ** (s - h) * c * (hz * xv ** (s - h - 2) - xv**-2)
        err += c * e * float(xv ** (s - h - 2))
    c = comb(2 * k - 1, s - 1)
    if c:
        hs, e = _harmonic_shift(xv)
        total += c * hs / xv
        err += c * e / float(xv)
    return total, err


def prop2_check(s: int, k: int, x, ctx: PrecisionContext, *, as_printed: bool = False) -> IdentityReport:
    """Shifted-binomial zeta series against its Hurwitz-zeta form, for ``2k + 1 >= s``, ``0 < x < 1``.

    The series side carries the factor ``(-1)^(s-1)``; without it (``as_printed=True``)
    the relation only holds for odd ``s``.  Repeated differentiation of
    ``x^(2k-1) sum_n (1/n - 1/(n+x))`` produces that sign.
    """
    x = Fraction(x)
    if s < 1 or k < 1 or 2 * k + 1 < s:
        raise ValueError("prop2_check needs 2k + 1 >= s >= 1")
    _check_unit_interval(x)
    with ctx.workprec():
        val, bound, used = prop2_series(s, k, x, ctx.inner_eps)
        if not as_printed:
            val *= (-1) ** (s - 1)
        lhs = _finish(ctx, val, bound + used * _eps())
        rhs = _finish(ctx, *prop2_closed(s, k, x))
    params = {"s": s, "k": k, "x": x}
    if as_printed:
        params["as_printed"] = True
    return make_report("prop2", params, lhs, rhs, ctx, {"r_terms": used, "tail_bound": bound})


# -- even zeta values against Bernoulli numbers ----------------------------------------

def _lemma_closed(h: int, ctx: PrecisionContext):
    if h == 0:
        return mpf(1)
    b = bernoulli(h + 1)
    z = -(mpc(0, mp.pi) ** (h + 1)) * (2 ** (h + 1) - 1) * _r(b) / mpmath.factorial(h + 1) + (-1) ** h
    return _complex_ok(z, ctx)


def _lemma_series(h: int, eps: float):
    k0 = max(1, -(-(h + 1) // 2))

    def term(k):
        return _zeta(2 * k)[0] * comb(2 * k - 1, h) / mpf(2) ** (2 * k - 1)

    def majorant(k):
        return float(term(k))

    def ratio(k):
        return 0.25 * (2 * k + 1) * (2 * k) / ((2 * k + 1 - h) * (2 * k - h))

    return _series(term, k0, 1, majorant, ratio, eps)


def lemma_value(h: int, ctx: PrecisionContext) -> tuple[BigReal, BigReal]:
    """``sum_k zeta(2k)/2^(2k-1) C(2k-1, h)`` in closed form and as a summed series."""
    if h < 0:
        raise ValueError("lemma_value needs h >= 0")
    with ctx.workprec():
        closed = _finish(ctx, _lemma_closed(h, ctx), 0.0)
        # ratio 1/4 convergence makes truncating at working precision cheap
        val, bound, used = _lemma_series(h, _eps())
        series = _finish(ctx, val, bound + used * _eps())
    return closed, series


def lemma_check(h: int, ctx: PrecisionContext) -> IdentityReport:
    closed, series = lemma_value(h, ctx)
    return make_report("lemma", {"h": h}, series, closed, ctx)


# -- reduction of 2S and the derivation chain ------------------------------------------

def _odd_r_series(m: int, factor, majorant_factor, ratio_factor: float, eps: float, start: int = 1):
    """``sum_{r odd >= start} binom(-m, r) factor(r)`` with ``|factor(r)| <= majorant_factor(r)``.

    ``ratio_factor`` bounds ``majorant_factor(r+2) / majorant_factor(r)``.
    """
    def term(r):
        return _r(binom_general(-m, r)) * factor(r)

    def majorant(r):
        return comb(m + r - 1, r) * majorant_factor(r)

    return _series(term, start, 2, majorant, lambda r: _binom_neg_ratio(m, r, 2) * ratio_factor, eps)


def eq1_third_term(m: int, eps: float):
    """``-sum_{r odd} binom(-m, r) 2^-(r+m-1) Li_{1,r+m}(-1,-1)``, the Li value in closed form.

    ``|Li_{1,w}(-1,-1)| <= sum_j j^-w/(j+1) <= 1`` supplies the majorant.
    """
    val, bound, used = _odd_r_series(
        m,
        lambda r: _li1w(r + m)[0] / mpf(2) ** (r + m - 1),
        lambda r: 2.0 ** -(r + m - 1),
        0.25,
        eps,
    )
    return -val, bound, used


def eq1_check(m: int, ctx: PrecisionContext) -> IdentityReport:
    """``2S = sum (-1)^(k+1)/k + sum 1/((2k-1)^m k) + [difference double sum]`` with the last in reduced form."""
    if m < 1 or m % 2 == 0:
        raise ValueError(f"eq1_check needs an odd m >= 1, got {m}")
    s_val, trunc = sum_S(m, ctx, with_info=True)
    with ctx.workprec():
        lhs = BigReal(2 * s_val.value, 2 * s_val.err)
        od, od_err = _odd_denom(m)
        third, bound, used = eq1_third_term(m, ctx.inner_eps)
        rhs = _finish(ctx, mp.ln2 + od + third, od_err + bound + used * _eps())
    return make_report("eq1", {"m": m}, lhs, rhs, ctx, dict(trunc, r_terms=used, tail_bound=bound))


def _chain_sides(m: int, step: ChainStep, k: int | None, ctx: PrecisionContext):
    eps = ctx.inner_eps
    ln2 = mp.ln2
    if step is ChainStep.TERM_M:
        val, bound, used = _odd_r_series(
            m,
            lambda r: (r + m) / mpf(2) ** (r + m) * _zeta(r + m + 1)[0],
            lambda r: (r + m) / 2.0 ** (r + m) * float(_zeta(r + m + 1)[0]),
            0.25 * (m + 3) / (m + 1),
            eps,
        )
        return -val, mpf(m), bound, used
    if step is ChainStep.TERM_BETA:
        val, bound, used = _odd_r_series(
            m,
            lambda r: (r + m + 1) / mpf(2) ** (2 * r + 2 * m) * _zeta(r + m + 1)[0],
            lambda r: (r + m + 1) / 4.0 ** (r + m) * float(_zeta(r + m + 1)[0]),
            (m + 4) / (m + 2) / 16,
            eps,
        )
        closed = 2 * m * _beta_val(m + 1)[0] - 3 * ln2
        for j in range(1, (m - 1) // 2 + 1):
            closed -= 2 * (_beta_val(2 * j)[0] + (1 - mpf(2) ** -(2 * j + 1)) * _zeta(2 * j + 1)[0])
        return val, closed, bound, used
    if step is ChainStep.TERM_LOG2:
        val, bound, used = _odd_r_series(
            m,
            lambda r: _zeta(r + m)[0] / mpf(2) ** (r + m - 1),
            lambda r: float(_zeta(r + m)[0]) / 2.0 ** (r + m - 1),
            0.25,
            eps,
        )
        return ln2 * val, -ln2, bound, used
    if step is ChainStep.TERM_ZETA2K:
        z2k = _zeta(2 * k)[0]
        start = max(1, 2 * k + 2 - m)
        val, bound, used = _odd_r_series(
            m,
            lambda r: (mpf(2) ** -(r + m - 1) - mpf(2) ** -(2 * r + 2 * m - 2 * k - 1)) * _zeta(r + m + 1 - 2 * k)[0],
            lambda r: 2.0 ** -(r + m - 1) * float(_zeta(r + m + 1 - 2 * k)[0]),
            0.25,
            eps,
            start=start,
        )
        series = z2k * val
        c = z2k / mpf(2) ** (2 * k - 1)
        closed = c * comb(2 * k - 1, m - 1) * ln2
        closed -= c * sum((-1) ** j * comb(2 * k - 1, j) for j in range(m))
        for j in range((m - 3) // 2 + 1):
            closed -= 2 * c * comb(2 * k - 1, 2 * j + 1) * _beta_val(m - 2 * j - 1)[0]
        return series, closed, bound * float(z2k), used
    raise ValueError(step)


def chain_check(m: int, step, ctx: PrecisionContext, *, k: int = 1) -> IdentityReport:
    """One displayed evaluation in the reduction of ``2S``; ``k`` selects the ``zeta(2k)`` term."""
    if m < 1 or m % 2 == 0:
        raise ValueError(f"chain_check needs an odd m >= 1, got {m}")
    step = ChainStep(step)
    params = {"m": m, "step": step.value}
    if step is ChainStep.FINAL:
        s_val, trunc = sum_S(m, ctx, with_info=True)
        rhs = thm1_rhs(m, ctx)
        with ctx.workprec():
            lhs = BigReal(2 * s_val.value, 2 * s_val.err)
            rhs = BigReal(2 * rhs.value, 2 * rhs.err)
        return make_report("chain", params, lhs, rhs, ctx, trunc)
    if step is ChainStep.TERM_ZETA2K:
        if k < 1:
            raise ValueError("k must be >= 1")
        params["k"] = k
    with ctx.workprec():
        series, closed, bound, used = _chain_sides(m, step, k, ctx)
        lhs = _finish(ctx, series, bound + used * _eps())
        rhs = _finish(ctx, closed, 0.0)
    return make_report("chain", params, lhs, rhs, ctx, {"r_terms": used, "tail_bound": bound})


# -- fourth-root twist ----------------------------------------------------------------------

def twist_combination(n: int, m: int, ctx: PrecisionContext):
    """``Li(i,i) - Li(i,-i) + Li(-i,i) - Li(-i,-i)`` for weights ``(n, m)``."""
    total = mpc(0)
    err = 0.0
    trunc = {}
    for outer, inner, sign in (("i", "i", 1), ("i", "-i", -1), ("-i", "i", 1), ("-i", "-i", -1)):
        v, trunc = sum_li_quartic(SumSpec.of(n, m, outer, inner), ctx, with_info=True)
        with ctx.workprec():
            total += sign * v.value
        err += v.err
    with ctx.workprec():
        return BigComplex.from_mpc(total, err), trunc


def twist_check(n: int, m: int, ctx: PrecisionContext) -> IdentityReport:
    """Quartic combination against ``2^(2-n) i sum_{0<=j<k} (-1)^(j+k) / ((2j+1)^m k^n)``."""
    lhs, trunc = twist_combination(n, m, ctx)
    col = sum_colored(n, m, ctx)
    with ctx.workprec():
        rhs = BigComplex.from_mpc(mpc(0, 1) * mpf(2) ** (2 - n) * col.value, col.err * 2 ** max(0, 2 - n))
    return make_report("twist", {"n": n, "m": m}, lhs, rhs, ctx, trunc)
