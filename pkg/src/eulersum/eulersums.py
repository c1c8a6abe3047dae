"""Definition-level evaluation of depth-2 alternating and quartic-twisted sums.

All sums here have the shape

    sum_{k >= 1} tau^k k^(-n) A_k,   A_k = sum_{j0 <= j < k} lam * sigma^j (j + alpha)^(-m)

with ``tau, sigma`` fourth roots of unity.  None of them uses a closed form
for the depth-2 value.  The outer series is never summed naively: the inner
partial sum is split as ``A_k = A_inf - R_k``, so

    value = A_inf * Li_n(tau) - sum_k tau^k k^(-n) R_k.

``A_inf`` and ``Li_n(tau)`` are depth-1 constants.  The remainder series is
summed directly for ``k <= K`` and its tail comes from the asymptotic
expansion of ``R_k = sigma^k lam G_sigma(m, k + alpha)`` (see ``_tails``).

When ``sigma = 1`` and ``m = 1`` the inner limit does not exist (harmonic
numbers).  Then the order is swapped: ``sum_j (1/j) T_j``, where
``T_j = sum_{k > j} tau^k k^(-n)`` is the outer tail.  Both orders agree
because ``H_N * T_N -> 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpc, mpf

from . import _tails
from .precision import BigComplex, BigReal, PrecisionContext, PrecisionError
from .special import _beta_val, _eps, _li_root

__all__ = [
    "SumSpec",
    "twist_exponent",
    "sum_S",
    "sum_li_pm",
    "sum_li_quartic",
    "sum_colored",
    "depth2",
]

_TWIST_NAMES = {
    "1": 0, "+1": 0, "i": 1, "+i": 1, "-1": 2, "-i": 3,
}


def twist_exponent(twist) -> int:
    """Map a fourth root of unity to its exponent ``e`` in ``i^e``.

    Accepts ``1, -1, 1j, -1j`` and the strings ``"1", "-1", "i", "-i"``.
    """
    if isinstance(twist, str):
        try:
            return _TWIST_NAMES[twist.strip().lower()]
        except KeyError:
            raise ValueError(f"twist must be one of 1, -1, i, -i; got {twist!r}") from None
    z = complex(twist)
    for e, w in enumerate((1, 1j, -1, -1j)):
        if z == w:
            return e
    raise ValueError(f"twist must be a fourth root of unity, got {twist!r}")


def twist_label(e: int) -> str:
    return ("1", "i", "-1", "-i")[e % 4]


@dataclass(frozen=True)
class SumSpec:
    """``Li_{n,m}(outer, inner) = sum_{0<j<k} inner^j outer^k / (j^m k^n)``."""

    n: int
    m: int
    outer_twist: int = 0
    inner_twist: int = 0

    def __post_init__(self):
        object.__setattr__(self, "outer_twist", twist_exponent(_from_exp(self.outer_twist)))
        object.__setattr__(self, "inner_twist", twist_exponent(_from_exp(self.inner_twist)))
        if self.n < 1 or self.m < 1:
            raise ValueError("weights n, m must be positive")
        if self.n == 1 and self.outer_twist == 0:
            raise ValueError("Li_{1,m}(1, .) diverges: outer weight 1 needs a nontrivial outer twist")

    @classmethod
    def of(cls, n: int, m: int, outer, inner) -> "SumSpec":
        return cls(n, m, twist_exponent(outer), twist_exponent(inner))

    def label(self) -> str:
        return f"Li_{{{self.n},{self.m}}}({twist_label(self.outer_twist)},{twist_label(self.inner_twist)})"


def _from_exp(t):
    # SumSpec stores exponents; tolerate roots of unity passed directly
    if isinstance(t, int) and not isinstance(t, bool) and t in (0, 1, 2, 3):
        return (1, 1j, -1, -1j)[t]
    return t


@dataclass(frozen=True)
class Depth2Result:
    value: object
    err: float
    cutoff: int
    tail_terms: int
    swapped: bool

    def truncation(self) -> dict:
        return {"K": self.cutoff, "tail_terms": self.tail_terms, "swapped_order": self.swapped}


def default_cutoff(ctx: PrecisionContext) -> int:
    # the +-i expansions have radius pi/2: need e^(-pi K / 2) well below eps
    return 40 + 3 * ctx.target_digits


def depth2(
    n: int,
    tau_e: int,
    m: int,
    sigma_e: int,
    ctx: PrecisionContext,
    *,
    alpha: Fraction = Fraction(0),
    lam: Fraction = Fraction(1),
    j0: int = 1,
    cutoff: int | None = None,
) -> Depth2Result:
    """``sum_{k>=1} tau^k k^-n sum_{j0<=j<k} lam sigma^j (j+alpha)^-m`` at ambient precision.

    Must be called inside ``ctx.workprec()``.  ``j0`` is 1 for the ``Li``
    convention (``alpha = 0``) and 0 for the odd-denominator sums
    (``alpha = 1/2``), where ``alpha > 0`` makes ``j = 0`` well defined.
    """
    tau_e %= 4
    sigma_e %= 4
    if n == 1 and tau_e == 0:
        raise ValueError("outer series diverges")
    if j0 == 0 and alpha == 0:
        raise ValueError("j0 = 0 needs alpha > 0")
    cplx = tau_e % 2 == 1 or sigma_e % 2 == 1
    K = cutoff or default_cutoff(ctx)
    eps = ctx.inner_eps
    lam_v = _tails.frac_mpf(lam)
    units = [_tails.unit(e, cplx) for e in range(4)]
    zero = mpc(0) if cplx else mpf(0)

    if sigma_e == 0 and m == 1:
        if alpha != 0 or j0 != 1:
            raise ValueError("divergent inner series only supported in the Li convention")
        return _depth2_swapped(n, tau_e, ctx, K, lam_v, units, zero)

    # limit of the inner series
    if j0 == 1 and alpha == 0:
        a_inf, a_err = _li_root(m, sigma_e)
        a_inf = a_inf * lam_v
    else:
        a_inf, a_err = _inner_limit_general(m, sigma_e, alpha, lam, j0)
    li_out, li_err = _li_root(n, tau_e)

    # head of the remainder series, R_k = A_inf - A_k
    head = zero
    a_k = zero
    j = j0
    for k in range(1, K + 1):
        while j < k:
            a_k += units[(sigma_e * j) % 4] * lam_v * (j + _tails.frac_mpf(alpha)) ** -m
            j += 1
        head += units[(tau_e * k) % 4] * (a_inf - a_k) / mpf(k) ** n

    theta_e = (tau_e + sigma_e) % 4
    tail, tail_err, terms = _tails.twisted_tail(theta_e, n, sigma_e, m, alpha, K + 1, eps / max(1.0, float(abs(lam_v))))
    tail *= lam_v

    value = a_inf * li_out - head - tail
    err = (
        float(abs(li_out)) * a_err
        + float(abs(a_inf)) * li_err
        + a_err * (1 + math.log(K))
        + tail_err * float(abs(lam_v))
        + 4 * K * _eps() * float(abs(a_inf) + 1)
    )
    return Depth2Result(value, err, K, terms, False)


def _inner_limit_general(m: int, sigma_e: int, alpha: Fraction, lam: Fraction, j0: int):
    # only the odd-denominator shape is needed: sum_{j>=0} (-1)^j (j+1/2)^-m / 2^m = beta(m)
    if sigma_e == 2 and alpha == Fraction(1, 2) and j0 == 0 and lam == Fraction(1, 2**m):
        return _beta_val(m)
    raise ValueError("unsupported inner series shape")


def _depth2_swapped(n, tau_e, ctx, K, lam_v, units, zero):
    """``sum_{j>=1} (1/j) T_j`` with ``T_j = sum_{k>j} tau^k k^-n = Li_n(tau) - P_j``."""
    li_out, li_err = _li_root(n, tau_e)
    head = zero
    partial = zero
    for j in range(1, K + 1):
        partial += units[(tau_e * j) % 4] / mpf(j) ** n
        head += (li_out - partial) / j
    # T_j = tau^(j+1) G_tau(n, j+1), so the tail is tau * sum_{j>K} tau^j j^-1 G_tau(n, j+1)
    tail, tail_err, terms = _tails.twisted_tail(tau_e, 1, tau_e, n, Fraction(1), K + 1, ctx.inner_eps)
    tail *= units[tau_e]
    value = (head + tail) * lam_v
    err = li_err * (1 + math.log(K)) + tail_err + 4 * K * _eps()
    return Depth2Result(value, err, K, terms, True)


def _run(ctx: PrecisionContext, fn, cutoff=None):
    with ctx.workprec():
        K = cutoff
        for _ in range(4):
            try:
                return fn(K)
            except PrecisionError:
                K = 2 * (K or default_cutoff(ctx))
        raise PrecisionError("depth-2 evaluation failed to converge")


def _real(ctx: PrecisionContext, res: Depth2Result, sign: int = 1) -> BigReal:
    with ctx.workprec():
        value = sign * (res.value.real if isinstance(res.value, mpc) else res.value)
    err = res.err + ctx.ulp * max(1.0, float(abs(value)))
    if err > ctx.eps:
        raise PrecisionError(f"error estimate {err:.3g} exceeds 1e-{ctx.target_digits}")
    return BigReal(value, err)


def sum_S(m: int, ctx: PrecisionContext, *, cutoff: int | None = None, with_info: bool = False):
    """``S(m) = sum_{k>=1} sum_{j=0}^{k-1} (-1)^(j+k+1) / ((2j+1)^m k)`` for odd ``m >= 1``.

    Equivalently ``beta(m) log 2 + sum_k R_k / k`` with the positive remainders
    ``R_k = sum_{i>=0} (-1)^i / (2(k+i)+1)^m``.
    """
    if m < 1 or m % 2 == 0:
        raise ValueError(f"sum_S needs an odd m >= 1, got {m}")
    res = _run(ctx, lambda K: depth2(1, 2, m, 2, ctx, alpha=Fraction(1, 2),
                                     lam=Fraction(1, 2**m), j0=0, cutoff=K), cutoff)
    out = _real(ctx, res, sign=-1)
    return (out, res.truncation()) if with_info else out


def sum_li_pm(spec: SumSpec, ctx: PrecisionContext, *, cutoff: int | None = None, with_info: bool = False):
    """``Li_{n,m}(rho, sigma)`` for ``rho, sigma`` in ``{+1, -1}``."""
    if spec.outer_twist % 2 or spec.inner_twist % 2:
        raise ValueError("sum_li_pm needs twists in {+1, -1}")
    res = _run(ctx, lambda K: depth2(spec.n, spec.outer_twist, spec.m, spec.inner_twist, ctx, cutoff=K), cutoff)
    out = _real(ctx, res)
    return (out, res.truncation()) if with_info else out


def sum_li_quartic(spec: SumSpec, ctx: PrecisionContext, *, cutoff: int | None = None, with_info: bool = False):
    """``Li_{n,m}(zeta_1, zeta_2)`` for ``zeta_1, zeta_2`` in ``{i, -i}``; inner sum over ``j`` first."""
    if spec.outer_twist % 2 == 0 or spec.inner_twist % 2 == 0:
        raise ValueError("sum_li_quartic needs twists in {i, -i}")
    res = _run(ctx, lambda K: depth2(spec.n, spec.outer_twist, spec.m, spec.inner_twist, ctx, cutoff=K), cutoff)
    err = res.err + ctx.ulp * max(1.0, float(abs(res.value)))
    if err > ctx.eps:
        raise PrecisionError(f"error estimate {err:.3g} exceeds 1e-{ctx.target_digits}")
    with ctx.workprec():
        out = BigComplex.from_mpc(res.value, err)
    return (out, res.truncation()) if with_info else out


def sum_colored(n: int, m: int, ctx: PrecisionContext, *, cutoff: int | None = None, with_info: bool = False):
    """``sum_{0<=j<k} (-1)^(j+k) / ((2j+1)^m k^n)`` (``j`` starts at 0)."""
    if n < 1 or m < 1:
        raise ValueError("weights n, m must be positive")
    res = _run(ctx, lambda K: depth2(n, 2, m, 2, ctx, alpha=Fraction(1, 2),
                                     lam=Fraction(1, 2**m), j0=0, cutoff=K), cutoff)
    out = _real(ctx, res)
    return (out, res.truncation()) if with_info else out
