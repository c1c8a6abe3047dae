"""Logarithmic Mahler measure of ``1 + x + ((1 - x1)/(1 + x1))(1 + y) z``.

The integral over the 4-torus is estimated by (randomized) quasi-Monte Carlo in
double precision.  The exact value follows from the ``m = 3`` case of the
Euler-sum closed form; :func:`mahler_identity_check` certifies that at high
precision, independently of any sampling.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.stats import qmc

from .eulersums import sum_S
from .identities import IdentityReport, make_report
from .precision import BigReal, PrecisionContext
from .special import beta_dirichlet, const_pi

__all__ = [
    "Generator",
    "MahlerEstimate",
    "SamplerDefectError",
    "TorusSampleConfig",
    "closed_form_mean",
    "mahler_identity_check",
    "mahler_qmc",
    "mahler_restated_check",
]

MIN_SAMPLES = 10_000
MAX_REJECT_FRACTION = 1e-3
CHUNK = 1 << 16
SANITY_MODES = ("constant2", "monomial")


class Generator(str, Enum):
    PSEUDO_RANDOM = "pseudo_random"
    LOW_DISCREPANCY = "low_discrepancy"


class SamplerDefectError(RuntimeError):
    """Too many torus points had to be rejected."""


@dataclass(frozen=True)
class TorusSampleConfig:
    sample_count: int = 4_000_000
    seed: int = 0
    generator: Generator = Generator.LOW_DISCREPANCY

    def __post_init__(self):
        object.__setattr__(self, "generator", Generator(self.generator))
        if self.sample_count < MIN_SAMPLES:
            raise ValueError(f"sample_count must be >= {MIN_SAMPLES}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class MahlerEstimate:
    mean: float
    std_error: float
    samples_used: int
    rejected: int = 0


def _log_abs(u: np.ndarray, mode: str | None):
    """``log|P|`` at torus points with angles ``2 pi u``; returns ``(values, ok_mask)``."""
    if mode == "constant2":
        vals = np.full(len(u), math.log(2.0))
        return vals, np.ones(len(u), dtype=bool)
    pts = np.exp(2j * np.pi * u)
    if mode == "monomial":
        vals = np.log(np.abs(pts[:, 0]))
        return vals, np.isfinite(vals)
    x, x1, y, z = pts.T
    denom = 1 + x1
    ok = np.abs(denom) > np.finfo(float).tiny
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        vals = np.log(np.abs(1 + x + ((1 - x1) / denom) * (1 + y) * z))
    ok &= np.isfinite(vals)
    return vals, ok


def _combine(acc, n, mean, m2):
    # Chan et al. pairwise update of (count, mean, sum of squared deviations)
    na, ma, sa = acc
    if na == 0:
        return n, mean, m2
    tot = na + n
    delta = mean - ma
    return tot, ma + delta * n / tot, sa + m2 + delta * delta * na * n / tot


def mahler_qmc(config: TorusSampleConfig, *, sanity: str | None = None) -> MahlerEstimate:
    """Estimate the measure as the torus average of ``log|P|``.

    ``sanity`` swaps the polynomial for the constant 2 (``"constant2"``) or the
    monomial ``x`` (``"monomial"``).  Rejected points are replaced by further
    points of the same stream, so ``samples_used == sample_count``.
    """
    if sanity is not None and sanity not in SANITY_MODES:
        raise ValueError(f"unknown sanity mode {sanity!r}; expected one of {SANITY_MODES}")
    if config.generator is Generator.LOW_DISCREPANCY:
        engine = qmc.Sobol(d=4, scramble=True, seed=np.random.default_rng(config.seed))

        def draw(k):
            with warnings.catch_warnings():
                # partial chunks break the power-of-two balance; harmless here
                warnings.simplefilter("ignore", UserWarning)
                return engine.random(k)
    else:
        rng = np.random.default_rng(config.seed)

        def draw(k):
            return rng.random((k, 4))

    acc = (0, 0.0, 0.0)
    rejected = 0
    need = config.sample_count
    limit = math.ceil(MAX_REJECT_FRACTION * config.sample_count)
    while need > 0:
        vals, ok = _log_abs(draw(min(CHUNK, need)), sanity)
        rejected += int((~ok).sum())
        if rejected > limit:
            raise SamplerDefectError(f"{rejected} torus points rejected (limit {limit})")
        vals = vals[ok]
        if len(vals):
            mean = float(vals.mean())
            acc = _combine(acc, len(vals), mean, float(((vals - mean) ** 2).sum()))
        need -= len(vals)
    n, mean, m2 = acc
    std = math.sqrt(m2 / (n - 1))
    return MahlerEstimate(mean, std / math.sqrt(n), n, rejected)


def closed_form_mean(ctx: PrecisionContext | None = None) -> BigReal:
    """``24 beta(4) / pi^3``, the exact value of the measure."""
    ctx = ctx or PrecisionContext(30)
    b4 = beta_dirichlet(4, ctx)
    pi = const_pi(ctx)
    with ctx.workprec():
        return BigReal(24 * b4.value / pi.value**3, 24 * b4.err)


def mahler_identity_check(ctx: PrecisionContext) -> IdentityReport:
    """``2 pi^2 beta(2) + 8 S(3) = 24 beta(4)`` at ``ctx.target_digits``."""
    s3, trunc = sum_S(3, ctx, with_info=True)
    b2, b4 = beta_dirichlet(2, ctx), beta_dirichlet(4, ctx)
    pi = const_pi(ctx)
    with ctx.workprec():
        lhs = BigReal(2 * pi.value**2 * b2.value + 8 * s3.value, 20 * b2.err + 8 * s3.err)
        rhs = BigReal(24 * b4.value, 24 * b4.err)
    return make_report("mahler_identity", {}, lhs, rhs, ctx, trunc)


def mahler_restated_check(ctx: PrecisionContext) -> IdentityReport:
    """The same identity solved for the sum: ``S(3) = 3 beta(4) - (pi^2/4) beta(2)``."""
    s3, trunc = sum_S(3, ctx, with_info=True)
    b2, b4 = beta_dirichlet(2, ctx), beta_dirichlet(4, ctx)
    pi = const_pi(ctx)
    with ctx.workprec():
        rhs = BigReal(3 * b4.value - pi.value**2 / 4 * b2.value, 3 * b4.err + 3 * b2.err)
    return make_report("mahler_restated", {}, s3, rhs, ctx, trunc)
