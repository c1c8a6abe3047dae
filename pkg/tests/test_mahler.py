import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulersum import mahler
from eulersum.mahler import (
    MahlerEstimate,
    SamplerDefectError,
    TorusSampleConfig,
    _combine,
    closed_form_mean,
    mahler_identity_check,
    mahler_qmc,
    mahler_restated_check,
)
from eulersum.precision import PrecisionContext
from oracles import beta_mpmath

# double-precision round-off in the degenerate integrands
FLOOR = 1e-12


def test_config_validation():
    with pytest.raises(ValueError):
        TorusSampleConfig(9_999)
    with pytest.raises(ValueError):
        TorusSampleConfig(10_000, seed=-1)
    with pytest.raises(ValueError):
        TorusSampleConfig(10_000, seed=2**64)
    with pytest.raises(ValueError):
        TorusSampleConfig(10_000, generator="grid")
    assert TorusSampleConfig(10_000, generator="pseudo_random").generator is mahler.Generator.PSEUDO_RANDOM


def test_closed_form_mean_value():
    with mpmath.workdps(40):
        ref = 24 * beta_mpmath(4) / mpmath.pi**3
    assert abs(closed_form_mean().value - ref) < 1e-28
    assert f"{float(closed_form_mean().value):.5f}" == "0.76548"


def test_identity_check_high_precision():
    rep = mahler_identity_check(PrecisionContext(30))
    assert rep.passed and rep.digits_agreed >= 25


def test_restated_identity():
    assert mahler_restated_check(PrecisionContext(30)).passed


@pytest.mark.parametrize("generator", ["low_discrepancy", "pseudo_random"])
def test_estimate_near_closed_form(generator):
    est = mahler_qmc(TorusSampleConfig(200_000, 11, generator))
    target = float(closed_form_mean().value)
    assert est.samples_used == 200_000
    assert abs(est.mean - target) <= 4 * est.std_error
    assert est.std_error < 0.01


def test_cross_module_consistency():
    ctx = PrecisionContext(30)
    rep = mahler_identity_check(ctx)
    pi = float(mpmath.pi)
    est = mahler_qmc(TorusSampleConfig(100_000, 3))
    assert abs(est.mean - float(rep.lhs.value) / pi**3) <= 3 * est.std_error


def test_bit_reproducible():
    a = mahler_qmc(TorusSampleConfig(50_000, 5))
    b = mahler_qmc(TorusSampleConfig(50_000, 5))
    c = mahler_qmc(TorusSampleConfig(50_000, 6))
    assert a == b
    assert a != c


@pytest.mark.parametrize("mode,exact", [("constant2", math.log(2)), ("monomial", 0.0)])
def test_sanity_modes(mode, exact):
    est = mahler_qmc(TorusSampleConfig(20_000, 1), sanity=mode)
    assert abs(est.mean - exact) <= max(3 * est.std_error, FLOOR)


def test_unknown_sanity_mode():
    with pytest.raises(ValueError):
        mahler_qmc(TorusSampleConfig(10_000), sanity="quadratic")


def test_rejections_are_resampled(monkeypatch):
    real = mahler._log_abs
    calls = {"n": 0}

    def flaky(u, mode):
        vals, ok = real(u, mode)
        if calls["n"] == 0:
            ok = ok.copy()
            ok[:3] = False
        calls["n"] += 1
        return vals, ok

    monkeypatch.setattr(mahler, "_log_abs", flaky)
    est = mahler_qmc(TorusSampleConfig(10_000, 2))
    assert est.rejected == 3 and est.samples_used == 10_000


def test_too_many_rejections_signal_defect(monkeypatch):
    def broken(u, mode):
        return np.full(len(u), np.nan), np.zeros(len(u), dtype=bool)

    monkeypatch.setattr(mahler, "_log_abs", broken)
    with pytest.raises(SamplerDefectError):
        mahler_qmc(TorusSampleConfig(10_000))


def test_log_abs_matches_scalar_formula():
    u = np.array([[0.1, 0.2, 0.3, 0.4], [0.9, 0.45, 0.05, 0.7]])
    vals, ok = mahler._log_abs(u, None)
    for row, v in zip(u, vals):
        x, x1, y, z = (complex(math.cos(2 * math.pi * a), math.sin(2 * math.pi * a)) for a in row)
        assert math.isclose(v, math.log(abs(1 + x + (1 - x1) / (1 + x1) * (1 + y) * z)), rel_tol=1e-12)
    assert ok.all()


@given(st.lists(st.floats(-10, 10), min_size=4, max_size=60), st.integers(1, 10))
@settings(max_examples=100)
def test_chunked_combination_matches_numpy(data, pieces):
    arr = np.array(data)
    acc = (0, 0.0, 0.0)
    for chunk in np.array_split(arr, pieces):
        if len(chunk):
            m = float(chunk.mean())
            acc = _combine(acc, len(chunk), m, float(((chunk - m) ** 2).sum()))
    n, mean, m2 = acc
    assert n == len(arr)
    assert math.isclose(mean, float(arr.mean()), abs_tol=1e-9)
    assert math.isclose(m2, float(((arr - arr.mean()) ** 2).sum()), rel_tol=1e-9, abs_tol=1e-9)


def test_estimate_fields():
    est = mahler_qmc(TorusSampleConfig(10_000, 4))
    assert isinstance(est, MahlerEstimate) and est.std_error > 0
