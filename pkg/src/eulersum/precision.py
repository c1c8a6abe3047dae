"""Precision policy and error-carrying high-precision values."""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal, localcontext

import mpmath
from mpmath import mp, mpf
from mpmath.libmp import mpf_neg

LOG2_10 = math.log2(10)


def _raw(x):
    return x._mpf_ if isinstance(x, mpf) else mpf(x)._mpf_


class PrecisionError(ArithmeticError):
    """Raised when a requested accuracy cannot be certified."""


@dataclass(frozen=True)
class PrecisionContext:
    """Requested decimal accuracy plus the binary working precision behind it.

    ``working_bits`` defaults to ``ceil(target_digits * log2(10)) + guard_bits``;
    an explicit value below that floor is rejected.
    """

    target_digits: int
    guard_bits: int = 48
    working_bits: int = field(default=0)

    def __post_init__(self):
        if self.target_digits < 1:
            raise ValueError("target_digits must be positive")
        if self.guard_bits < 32:
            raise ValueError("guard_bits must be >= 32")
        floor = math.ceil(self.target_digits * LOG2_10) + self.guard_bits
        if self.working_bits == 0:
            object.__setattr__(self, "working_bits", floor)
        elif self.working_bits < floor:
            raise ValueError(f"working_bits must be >= {floor}")

    @property
    def eps(self) -> float:
        """Absolute error allowed on returned values, ``10^-target_digits``."""
        return 10.0 ** -self.target_digits

    @property
    def inner_eps(self) -> float:
        """Truncation target for internal series (three digits below ``eps``)."""
        return 10.0 ** -(self.target_digits + 3)

    @property
    def ulp(self) -> float:
        return 2.0 ** -self.working_bits

    @contextmanager
    def workprec(self):
        with mp.workprec(self.working_bits):
            yield


def _to_decimal(x: mpf) -> Decimal:
    # man_exp drops the sign; read it from the raw tuple
    sign, man, exp, _ = x._mpf_
    man = -int(man) if sign else int(man)
    if exp >= 0:
        return Decimal(man << exp)
    # man / 2^-exp is exact as a decimal with -exp fractional digits
    n = man * 5 ** (-exp)
    with localcontext() as c:
        c.prec = len(str(abs(n))) + 2
        return Decimal(n).scaleb(exp)


def format_fixed(x, digits: int) -> str:
    """Decimal string of ``x`` with ``digits`` places, rounded half-even."""
    if isinstance(x, BigReal):
        x = x.value
    if not isinstance(x, mpf):
        # re-rounding an mpf outside its working precision would drop digits
        x = mpf(x)
    d = _to_decimal(x)
    with localcontext() as c:
        c.prec = max(64, d.adjusted() + digits + 10)
        q = d.quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN)
    s = format(q, "f")
    return "0" + s[2:] if s.startswith("-0") and set(s[1:]) <= {"0", "."} else s


@dataclass(frozen=True)
class BigReal:
    value: mpf
    err: float

    def __float__(self) -> float:
        return float(self.value)

    def __neg__(self) -> "BigReal":
        # exact negation, independent of the ambient precision
        return BigReal(mp.make_mpf(mpf_neg(_raw(self.value))), self.err)

    def fixed(self, digits: int) -> str:
        return format_fixed(self.value, digits)


@dataclass(frozen=True)
class BigComplex:
    re: BigReal
    im: BigReal

    @classmethod
    def from_mpc(cls, z, err: float) -> "BigComplex":
        if not isinstance(z, mpmath.mpc):
            z = mpmath.mpc(z)
        return cls(BigReal(z.real, err), BigReal(z.imag, err))

    @property
    def value(self):
        # assemble from the raw parts: mpc(re, im) would round to the ambient precision
        return mp.make_mpc((_raw(self.re.value), _raw(self.im.value)))

    @property
    def err(self) -> float:
        return max(self.re.err, self.im.err)

    def conjugate(self) -> "BigComplex":
        return BigComplex(self.re, -self.im)
