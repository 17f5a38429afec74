"""Smoke tests for the python bindings: a coarse-grid pass over the main
operations, not a re-run of the C++ suites."""

import math

import pytest

import thiele

STEP = 1.0 / 120.0


@pytest.fixture(scope="module")
def contract():
    plan = thiele.PaymentPlan.level(
        premium=7000.0, death_sum=1_000_000.0, terminal=2_000_000.0, horizon=30.0
    )
    technical = thiele.RateCurve.flat(0.05)
    mu = thiele.g82_female()
    g = thiele.surrender_value(plan, technical, mu, STEP)
    return plan, technical, mu, g


def test_mortality_and_rates():
    mu = thiele.g82_female()
    assert mu(0.0) == pytest.approx(0.0005 + 10.0 ** (-4.272 + 0.038 * 35.0))
    curve = thiele.RateCurve(breakpoints=[0.0, 20.0], rates=[0.10, 0.04])
    assert thiele.integrate_rate(curve, 15.0, 25.0) == pytest.approx(0.7)


def test_reserves_and_worst_case(contract):
    plan, technical, mu, g = contract
    market = thiele.RateCurve.flat(0.02)
    vd = thiele.reserve_no_surrender(plan, market, mu, STEP)
    assert g.values[-1] == 2_000_000.0
    assert vd.values[0] > g.values[0]  # low market rate lifts the reserve

    sol = thiele.solve_reserve_dependent(
        plan, market, mu, g, thiele.IntensityModel.exponential(0.05, 3e-06), STEP
    )
    gap = thiele.consistency_check(sol, plan, market, mu, g, STEP)
    assert gap < 1e-4 * 2_000_000.0

    worst = thiele.worst_case_reserve(plan, market, mu, g, vd, STEP)
    brute = thiele.brute_force_worst_case(plan, market, mu, g, vd, STEP)
    for w, b, v in zip(worst.worst_reserve.values, brute.worst_reserve.values, vd.values):
        assert w == pytest.approx(b, abs=1e-6)
        assert w >= v - 1e-9


def test_monte_carlo_cross_check(contract):
    plan, technical, mu, g = contract
    market = thiele.RateCurve.flat(0.12)
    vd = thiele.reserve_no_surrender(plan, market, mu, STEP)
    nu = thiele.reserve_with_intensity(plan, market, mu, g, lambda t: 0.05, STEP)
    config = thiele.SimulationConfig(paths=200_000, seed=7, time_step=1.0 / 12.0)
    intensity = thiele.solve_reserve_dependent(
        plan, market, mu, g, thiele.IntensityModel.constant(0.05), STEP
    ).realized_intensity
    result = thiele.simulate_reserve(
        plan, market, mu, g, thiele.Strategy.from_intensity(intensity), config
    )
    assert result.standard_error > 0.0
    assert abs(result.estimate - nu.values[0]) < 4.0 * result.standard_error


def test_theta_sweep(contract):
    plan, technical, mu, g = contract
    market = thiele.RateCurve(breakpoints=[0.0, 20.0], rates=[0.01, 0.065])
    rows = thiele.theta_sweep(
        plan, market, mu, g, thiele.SweepFamily.indicator(), [0.5, 1.0, 2.0, 5.0], STEP
    )
    errors = [row.sup_error for row in rows]
    assert errors == sorted(errors, reverse=True)
    assert errors[-1] < 0.01 * 2_000_000.0


def test_scenario_runner(tmp_path):
    spec = thiele.builtin_scenario("example1")
    spec.step = STEP
    files = thiele.run_scenario(spec, str(tmp_path))
    assert len(files) == 1
    lines = (tmp_path / "example1_reserves.csv").read_text().splitlines()
    assert lines[0] == "t,G,V_d,V_c,V_a_model,V_b_model,V_e_model,W,u_star"
    assert len(lines) == 3602  # header + nodes

    catalog = thiele.list_builtins()
    assert len(catalog["examples"]) == 4
    assert len(catalog["models"]) == 5

    with pytest.raises(thiele.ConfigError):
        thiele.builtin_scenario("example9")


def test_free_policy_scaling(contract):
    plan, technical, mu, g = contract
    market = thiele.RateCurve.flat(0.02)
    gf = thiele.surrender_value(plan.without_premiums(), technical, mu, STEP)
    fp = thiele.FreePolicyPlan(
        base_plan=plan,
        scaling=lambda u: 0.5 + 0.4 * u / 30.0,
        intensity_as=thiele.IntensityModel.zero(),
        intensity_af=thiele.IntensityModel.zero(),
        intensity_fs=thiele.IntensityModel.constant(0.05),
    )
    surface = thiele.free_policy_surface(fp, market, mu, gf, STEP, 60)
    reference = thiele.free_policy_reference(
        plan, market, mu, gf, lambda t: 0.05, STEP
    )
    for k, u in enumerate(surface.conversion_times):
        f = 0.5 + 0.4 * u / 30.0
        offset = k * 60
        column = surface.columns[k].values
        assert column[0] == pytest.approx(f * reference.values[offset], rel=1e-8)
        assert column[-1] == pytest.approx(f * 2_000_000.0, rel=1e-12)
