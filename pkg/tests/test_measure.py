import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_function, random_weight
from weaksparse.dyadic import GridConfig, all_cubes, cube
from weaksparse.measure import (
    ExponentTuple,
    GridFunction,
    Weight,
    average,
    constant,
    dual_weight,
    indicator,
    joint_weight,
    kolmogorov_check,
    lp_norm,
    weak_norm,
    weighted_average,
    weighted_measure,
)


# --- construction -----------------------------------------------------------


def test_gridfunction_validation():
    cfg = GridConfig(1, 2)
    with pytest.raises(ValueError):
        GridFunction(cfg, [1.0, 2.0])
    with pytest.raises(ValueError):
        GridFunction(cfg, [1.0, np.inf, 0.0, 0.0])
    with pytest.raises(ValueError):
        Weight(cfg, [1.0, 0.0, 1.0, 1.0])


def test_gridfunction_values_frozen():
    f = constant(GridConfig(1, 1), 2.0)
    with pytest.raises(ValueError):
        f.values[0] = 1.0


def test_exponent_tuple_validation():
    P = ExponentTuple(2.0, 3.0)
    assert P.p == pytest.approx(1.2, abs=1e-15)
    assert P.p1_prime == pytest.approx(2.0)
    assert P.p2_prime == pytest.approx(1.5)
    assert 1 / P.p + 1 / P.p_prime == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        ExponentTuple(2.0, 2.0)  # p = 1 violates the hypothesis
    with pytest.raises(ValueError):
        ExponentTuple(1.0, 3.0)


# --- averages ---------------------------------------------------------------


def test_average_examples():
    cfg = GridConfig(1, 2)
    f = indicator(cfg, cube(1, 0))
    assert average(f, cube(0, 0)) == pytest.approx(0.5)
    assert average(constant(cfg, 3.25), cube(1, 1)) == pytest.approx(3.25)
    assert average(GridFunction(cfg, [4, 1, 1, 1]), cube(0, 0)) == pytest.approx(7 / 4)


def test_weighted_average_example():
    cfg = GridConfig(1, 1)
    f = GridFunction(cfg, [2.0, 0.0])
    w = Weight(cfg, [1.0, 3.0])
    assert weighted_average(f, w, cube(0, 0)) == pytest.approx(0.5)
    assert weighted_measure(w, cube(0, 0)) == pytest.approx(2.0)


def test_weighted_average_with_unit_weight_is_average(rng):
    for cfg in (GridConfig(1, 4), GridConfig(2, 3)):
        one = Weight(cfg, np.ones(cfg.cell_count))
        f = random_function(rng, cfg, signed=True)
        for q in all_cubes(cfg):
            assert weighted_average(f, one, q) == pytest.approx(
                average(f, q), rel=1e-12, abs=1e-13
            )


def test_weighted_average_of_constant_is_constant(rng):
    cfg = GridConfig(1, 5)
    w = random_weight(rng, cfg)
    for q in (cube(0, 0), cube(3, 5)):
        assert weighted_average(constant(cfg, 2.5), w, q) == pytest.approx(2.5)


# --- dual and joint weights -------------------------------------------------


def test_dual_weight_power_law():
    cfg = GridConfig(1, 2)
    w = constant(cfg, 3.0)
    sigma = dual_weight(Weight(cfg, w.values), 1.5)  # conjugate exponent 3
    assert np.allclose(sigma.values, 3.0**-2)


def test_dual_weight_involution(rng):
    cfg = GridConfig(1, 6)
    w = random_weight(rng, cfg)
    for pi in (1.3, 2.0, 4.7):
        back = dual_weight(dual_weight(w, pi), pi / (pi - 1.0))
        assert np.max(np.abs(back.values - w.values) / w.values) < 1e-12


def test_trivial_weights_have_trivial_duals():
    cfg = GridConfig(1, 3)
    one = Weight(cfg, np.ones(cfg.cell_count))
    P = ExponentTuple(2.0, 3.0)
    assert np.all(dual_weight(one, 2.0).values == 1.0)
    assert np.all(joint_weight(one, one, P).values == 1.0)


# --- norms ------------------------------------------------------------------


def test_lp_norm_examples():
    cfg = GridConfig(1, 2)
    one = Weight(cfg, np.ones(4))
    assert lp_norm(constant(cfg, 1.0), one, 2.0) == pytest.approx(1.0)
    f = indicator(cfg, cube(2, 0))
    assert lp_norm(f, one, 2.0) == pytest.approx(0.5)


@settings(max_examples=50, deadline=None)
@given(
    vals=st.lists(
        st.floats(-50, 50, allow_nan=False), min_size=8, max_size=8
    ),
    c=st.floats(-10, 10, allow_nan=False),
    p=st.floats(0.4, 5.0),
)
def test_norm_scaling_and_weak_domination(vals, c, p):
    cfg = GridConfig(1, 3)
    f = GridFunction(cfg, vals)
    w = Weight(cfg, np.ones(8))
    assert lp_norm(c * f, w, p) == pytest.approx(
        abs(c) * lp_norm(f, w, p), rel=1e-12, abs=1e-12
    )
    assert weak_norm(f, w, p) <= lp_norm(f, w, p) * (1 + 1e-12)


def test_weak_norm_examples(rng):
    cfg = GridConfig(1, 2)
    one = Weight(cfg, np.ones(4))
    f = GridFunction(cfg, [2.0, 1.0, 1.0, 1.0])
    assert weak_norm(f, one, 2.0) == pytest.approx(1.0)
    # indicators: weak norm equals the measure to the 1/p
    w = random_weight(rng, cfg)
    g = indicator(cfg, cube(1, 1))
    for p in (0.7, 1.0, 2.0):
        expected = weighted_measure(w, cube(1, 1)) ** (1 / p)
        assert weak_norm(g, w, p) == pytest.approx(expected, rel=1e-12)
        assert lp_norm(g, w, p) == pytest.approx(expected, rel=1e-12)
    assert weak_norm(constant(cfg, 0.0), one, 1.5) == 0.0


def test_weak_norm_brute_force(rng):
    cfg = GridConfig(1, 5)
    for _ in range(25):
        f = random_function(rng, cfg, signed=True)
        w = random_weight(rng, cfg)
        p = rng.uniform(0.5, 3.0)
        a = np.abs(f.values)
        mass = w.values * cfg.cell_volume
        brute = max(
            (t * ((mass[a >= t]).sum()) ** (1 / p) for t in np.unique(a[a > 0])),
            default=0.0,
        )
        assert weak_norm(f, w, p) == pytest.approx(brute, rel=1e-12, abs=1e-300)


def test_holder_consistency(rng):
    cfg = GridConfig(1, 6)
    for _ in range(50):
        f = random_function(rng, cfg, signed=True)
        g = random_function(rng, cfg, signed=True)
        w = random_weight(rng, cfg)
        s, t = rng.uniform(1.2, 4.0, 2)
        r = 1.0 / (1.0 / s + 1.0 / t)
        assert lp_norm(f * g, w, r) <= lp_norm(f, w, s) * lp_norm(g, w, t) * (
            1 + 1e-10
        )


# --- the low-exponent weak-L1 inequality ------------------------------------


def test_kolmogorov_constant_at_half():
    assert (1 / 0.5 + 1 / 0.5) ** (1 / 0.5) == pytest.approx(16.0)


def test_kolmogorov_indicator_example():
    cfg = GridConfig(1, 1)
    f = indicator(cfg, cube(1, 0))
    lhs, rhs, ok = kolmogorov_check(f, cube(0, 0), 0.5)
    assert lhs == pytest.approx(0.25)
    assert rhs == pytest.approx(8.0)
    assert ok


def test_kolmogorov_zero_function():
    cfg = GridConfig(1, 2)
    lhs, rhs, ok = kolmogorov_check(constant(cfg, 0.0), cube(0, 0), 0.5)
    assert lhs == rhs == 0.0 and ok


def test_kolmogorov_requires_small_p():
    cfg = GridConfig(1, 1)
    with pytest.raises(ValueError):
        kolmogorov_check(constant(cfg, 1.0), cube(0, 0), 1.5)


def test_kolmogorov_random_suite(rng):
    cfg = GridConfig(1, 6)
    for _ in range(100):
        f = random_function(rng, cfg)
        for p in (0.3, 0.5, 0.8):
            _, _, ok = kolmogorov_check(f, cube(0, 0), p)
            assert ok
