"""Problem registry, validation, and the JSON problem-file loader."""

import json
import math
from fractions import Fraction

import numpy as np
import pytest

from bernstein_eom.errors import ConfigurationError
from bernstein_eom.problems import (
    CANONICAL_NAMES,
    ProblemSpec,
    f_eval,
    g_eval,
    get_problem,
    load_problem_file,
    problem_names,
    second_deriv_at_zero,
    series_moments,
)

# name -> expected default series degree, from the convergence studies the
# defaults are tuned to reproduce
DEFAULT_N = {
    "lane-emden-p1": 8,
    "lane-emden-p5": 8,
    "lane-emden-exp": 15,
    "lane-emden-sinh": 10,
    "lane-emden-sin": 12,
    "emden-fowler-two-exp": 10,
    "emden-fowler-poly": 8,
}


def test_registry_has_all_canonical_problems():
    assert set(CANONICAL_NAMES) == set(DEFAULT_N)
    for name in CANONICAL_NAMES:
        spec = get_problem(name)
        assert spec.n_series == DEFAULT_N[name]
        assert spec.m_trunc is not None and spec.m_trunc > 0


def test_registry_initial_conditions():
    for name in CANONICAL_NAMES:
        spec = get_problem(name)
        if name in ("lane-emden-exp", "emden-fowler-two-exp"):
            assert (spec.a, spec.b) == (0.0, 0.0)
        else:
            assert (spec.a, spec.b) == (1.0, 0.0)


def test_unknown_name_is_a_usage_error():
    with pytest.raises(ConfigurationError, match="unknown problem"):
        get_problem("lane-emden-p99")


def test_problem_names_covers_registry():
    names = problem_names()
    assert "lane-emden-p0" in names
    assert all(n in names for n in CANONICAL_NAMES)


def test_overrides_replace_defaults():
    spec = get_problem("lane-emden-p1", m_trunc=2.5, n_series=6)
    assert spec.m_trunc == 2.5
    assert spec.n_series == 6


def test_spec_validation():
    with pytest.raises(ConfigurationError):
        ProblemSpec(name="x", f_kind="constant_one", g_kind="power_int",
                    a=1.0, b=0.0, n_series=8)  # integer power kind needs one
    with pytest.raises(ConfigurationError):
        ProblemSpec(name="x", f_kind="constant_one", g_kind="power_frac",
                    a=1.0, b=0.0, n_series=8, power=Fraction(2))
    with pytest.raises(ConfigurationError):
        ProblemSpec(name="x", f_kind="nope", g_kind="exp", a=0.0, b=0.0, n_series=8)
    with pytest.raises(ConfigurationError):
        ProblemSpec(name="x", f_kind="constant_one", g_kind="exp",
                    a=0.0, b=0.0, n_series=1)  # N below the supported range


def test_f_and_g_evaluators():
    p5 = get_problem("lane-emden-p5")
    assert f_eval(p5, 0.7) == 1.0
    assert g_eval(p5, 2.0) == 32.0
    poly = get_problem("emden-fowler-poly")
    assert f_eval(poly, 0.5) == -2.0 * (2 * 0.25 + 3)
    two = get_problem("emden-fowler-two-exp")
    assert g_eval(two, 0.0) == pytest.approx(12.0)  # 4(2e^0 + e^0)
    sinh_p = get_problem("lane-emden-sinh")
    assert g_eval(sinh_p, 1.3) == pytest.approx(math.sinh(1.3), rel=1e-15)


def test_uses_series_flag():
    assert not get_problem("lane-emden-p1").uses_series
    assert get_problem("lane-emden-sin").uses_series
    assert get_problem("lane-emden-exp").uses_series


def test_second_deriv_at_zero():
    # y'' (0) = -f(0) g(a) / 3 from the limit of the equation at the origin
    p1 = get_problem("lane-emden-p1")
    assert second_deriv_at_zero(p1) == pytest.approx(-1.0 / 3.0)
    two = get_problem("emden-fowler-two-exp")
    assert second_deriv_at_zero(two) == pytest.approx(-4.0)  # g(0) = 12


def test_series_moments_match_quadrature():
    from scipy.integrate import quad

    spec = get_problem("lane-emden-sinh")
    m_tr = float(spec.m_trunc)
    lo, hi = -0.2, 1.1
    moments = series_moments(spec, m_tr, lo, hi, 6)
    for k in range(7):
        want, _ = quad(lambda w: math.sinh(m_tr * w) * w**k, lo, hi, epsabs=1e-14)
        assert abs(float(moments(k)) - want) < 1e-12


def _write(tmp_path, payload):
    path = tmp_path / "prob.json"
    path.write_text(json.dumps(payload))
    return str(path)


def test_load_problem_file_roundtrip(tmp_path):
    path = _write(tmp_path, dict(
        name="halfpower", f_kind="constant_one", g_kind="power_frac",
        a=1.0, b=0.0, p_num=3, p_den=2, N=8, M=3.0,
    ))
    spec = load_problem_file(path)
    assert spec.name == "halfpower"
    assert spec.power == Fraction(3, 2)
    assert spec.m_trunc == 3.0
    assert spec.n_series == 8


def test_load_problem_file_defaults_and_interval(tmp_path):
    path = _write(tmp_path, dict(
        name="e1", f_kind="constant_one", g_kind="exp", a=0.0, b=0.0,
        M=1.0, approx_interval=[-2.0, 0.5],
    ))
    spec = load_problem_file(path)
    assert spec.n_series == 10  # schema default
    assert spec.approx_interval == (-2.0, 0.5)


def test_load_problem_file_rejects_unknown_keys(tmp_path):
    path = _write(tmp_path, dict(
        name="bad", f_kind="constant_one", g_kind="exp", a=0.0, b=0.0,
        flavor="spicy",
    ))
    with pytest.raises(ConfigurationError, match="unknown problem-file keys"):
        load_problem_file(path)


def test_load_problem_file_rejects_missing_keys(tmp_path):
    path = _write(tmp_path, dict(name="bad", f_kind="constant_one"))
    with pytest.raises(ConfigurationError, match="missing keys"):
        load_problem_file(path)


def test_power_frac_extends_by_zero_below_zero():
    spec = ProblemSpec(
        name="frac", f_kind="constant_one", g_kind="power_frac",
        a=1.0, b=0.0, n_series=8, power=Fraction(3, 2), m_trunc=3.0,
    )
    assert g_eval(spec, -0.5) == 0.0
    assert g_eval(spec, 0.25) == pytest.approx(0.125)
