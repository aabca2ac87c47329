import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from oracles import X, central_difference, horner, to_sympy
from skewcurv import expr as ex
from skewcurv.errors import DomainError, ParseError

P = (0.3, -1.2, 0.7, 2.0)
seeds = st.integers(0, 2**32 - 1)


@pytest.mark.parametrize(
    "text, value",
    [
        ("1 + 2 * 3", 7.0),
        ("(1 + 2) * 3", 9.0),
        ("-x1^2", -(0.3**2)),
        ("2^-1", 0.5),
        ("2^(-2)", 0.25),
        ("x4 / x2 - 1", 2.0 / -1.2 - 1),
        ("2 + 0.1*sin(x1+x4)", 2 + 0.1 * math.sin(2.3)),
        ("exp(x3) * ln(x4) + sqrt(x4)", math.exp(0.7) * math.log(2.0) + math.sqrt(2.0)),
        ("1.5e-1 * x2", 0.15 * -1.2),
        ("cos(x1)^3", math.cos(0.3) ** 3),
    ],
)
def test_evaluation(text, value):
    assert ex.parse(text)(P) == pytest.approx(value, rel=1e-14, abs=1e-15)


@pytest.mark.parametrize(
    "text, offset",
    [
        ("1 + * 2", 4),
        ("x5", 0),
        ("sin x1", 4),
        ("(x1", 3),
        ("x1 ^ 2.5", 5),
        ("", 0),
        ("x1 x2", 3),
        ("tan(x1)", 0),
    ],
)
def test_parse_errors_report_offset(text, offset):
    with pytest.raises(ParseError) as info:
        ex.parse(text)
    assert info.value.offset == offset
    assert info.value.expected


@pytest.mark.parametrize("text", ["ln(x1 - x1)", "sqrt(-1)", "1 / (x2 - x2)", "(x1 - x1)^-1", "exp(1000)", "ln(-x4)"])
def test_domain_errors(text):
    with pytest.raises(DomainError):
        ex.parse(text)(P)


def test_derivative_axis_validation():
    with pytest.raises(ValueError):
        ex.derivative(ex.parse("x1"), 0)


def test_constant_detection():
    assert ex.parse("2 + sin(3)").is_constant
    assert ex.parse("x1").diff(1).is_constant
    assert not ex.parse("x3").is_constant


@given(st.lists(st.floats(-5, 5, allow_nan=False), min_size=1, max_size=7), st.floats(-2, 2))
def test_polynomial_matches_horner(coeffs, x):
    text = "0"
    for a in coeffs:
        text = f"({text}) * x1 + ({a!r})"
    f = ex.parse(text)
    assert f((x, 0, 0, 0)) == pytest.approx(horner(coeffs, x), rel=1e-12, abs=1e-12)


@given(seeds)
def test_round_trip_print_parse(seed):
    rng = np.random.default_rng(seed)
    f = ex.random_field(rng, depth=3)
    g = ex.parse(str(f))
    assert str(g) == str(f)
    for p in rng.uniform(-2, 2, size=(10, 4)):
        assert g(p) == f(p)


@given(seeds)
def test_derivatives_match_sympy(seed):
    rng = np.random.default_rng(seed)
    f = ex.random_field(rng, depth=3)
    sym = to_sympy(str(f))
    p = rng.uniform(-1, 1, size=4)
    subs = dict(zip(X, p))
    assert f(p) == pytest.approx(float(sym.subs(subs)), rel=1e-10, abs=1e-10)
    for axis in range(1, 5):
        expected = float(sp.diff(sym, X[axis - 1]).subs(subs))
        assert f.diff(axis)(p) == pytest.approx(expected, rel=1e-9, abs=1e-9)


@given(seeds)
def test_derivatives_match_finite_differences(seed):
    rng = np.random.default_rng(seed)
    f = ex.random_field(rng, depth=2)
    p = rng.uniform(-1, 1, size=4)
    for axis in range(4):
        fd = central_difference(f, p, axis, h=1e-3)
        assert f.diff(axis + 1)(p) == pytest.approx(fd, rel=1e-6, abs=1e-6)


@given(seeds)
def test_mixed_partials_commute(seed):
    rng = np.random.default_rng(seed)
    f = ex.random_field(rng, depth=3)
    p = rng.uniform(-1, 1, size=4)
    for i in range(1, 5):
        for j in range(i + 1, 5):
            assert abs(f.diff(i).diff(j)(p) - f.diff(j).diff(i)(p)) < 1e-9


def test_known_derivatives():
    f = ex.parse("x1^3 * sin(x2) + ln(x4) / x3")
    p = (1.5, 0.4, 2.0, 3.0)
    assert f.diff(1)(p) == pytest.approx(3 * 1.5**2 * math.sin(0.4))
    assert f.diff(2)(p) == pytest.approx(1.5**3 * math.cos(0.4))
    assert f.diff(3)(p) == pytest.approx(-math.log(3.0) / 4.0)
    assert f.diff(4)(p) == pytest.approx(1 / (3.0 * 2.0))
