#include <cmath>

#include <doctest.h>

#include "support.hpp"
#include "thiele/behaviour.hpp"
#include "thiele/free_policy.hpp"
#include "thiele/reserves.hpp"

using namespace thiele;

namespace {

const double coarse_step = 1.0 / 120.0;

// Free-policy surrender value: technical reserve of the premium-free plan.
ReserveGrid free_surrender(const PaymentPlan& plan, double step) {
    return surrender_value(plan.without_premiums(), fixtures::technical_rate(),
                           g82_female(), step);
}

}  // namespace

TEST_CASE("zero fs-intensity reduces the reference to plain no-surrender") {
    const PaymentPlan plan = fixtures::example_plan();
    const RateCurve market = fixtures::market_rate_example2();
    const MortalityCurve mu = g82_female();
    const ReserveGrid gf = free_surrender(plan, coarse_step);
    const ReserveGrid reference = free_policy_reference(
        plan, market, mu, gf, [](double) { return 0.0; }, coarse_step);
    const ReserveGrid plain =
        reserve_no_surrender(plan.without_premiums(), market, mu, coarse_step);
    REQUIRE(reference.size() == plain.size());
    for (std::size_t i = 0; i < plain.size(); ++i) {
        CHECK(reference.values[i] == plain.values[i]);
    }
}

TEST_CASE("reference reserve self-converges under step halving") {
    const PaymentPlan plan = fixtures::example_plan();
    const RateCurve market = fixtures::market_rate_example2();
    const MortalityCurve mu = g82_female();
    const auto solve_at = [&](double step) {
        const ReserveGrid gf = free_surrender(plan, step);
        return free_policy_reference(plan, market, mu, gf,
                                     [](double) { return 0.05; }, step);
    };
    const ReserveGrid coarse = solve_at(fixtures::default_step);
    const ReserveGrid fine = solve_at(fixtures::default_step / 2.0);
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        CHECK(std::fabs(coarse.values[i] - fine.values[2 * i]) <=
              1e-7 * std::fabs(fine.values[2 * i]));
    }
}

TEST_CASE("surface columns reproduce the scaling identity") {
    const PaymentPlan plan = fixtures::example_plan();
    const RateCurve market = fixtures::market_rate_example2();
    const MortalityCurve mu = g82_female();
    const ReserveGrid gf = free_surrender(plan, coarse_step);
    const auto scaling = [](double u) { return 0.5 + 0.4 * u / 30.0; };

    FreePolicyPlan fp{plan, scaling, IntensityModel::zero(),
                      IntensityModel::zero(), IntensityModel::constant(0.05)};
    const FreePolicySurface surface =
        free_policy_surface(fp, market, mu, gf, coarse_step, 12);
    const ReserveGrid reference = free_policy_reference(
        plan, market, mu, gf, [](double) { return 0.05; }, coarse_step);

    REQUIRE(surface.columns.size() == 3600 / 12 + 1);
    for (std::size_t k = 0; k < surface.columns.size(); ++k) {
        const double u = surface.conversion_times[k];
        const double f = scaling(u);
        const ReserveGrid& column = surface.columns[k];
        const std::size_t offset = k * surface.stride;
        for (std::size_t i = 0; i < column.size(); ++i) {
            const double expected = f * reference.values[offset + i];
            CHECK(std::fabs(column.values[i] - expected) <=
                  1e-8 * std::fabs(expected));
        }
    }
}

TEST_CASE("zero fs-intensity surface is the scaled no-surrender reserve") {
    const PaymentPlan plan = fixtures::example_plan();
    const RateCurve market = fixtures::market_rate_example3();
    const MortalityCurve mu = g82_female();
    const ReserveGrid gf = free_surrender(plan, coarse_step);
    const ReserveGrid plain =
        reserve_no_surrender(plan.without_premiums(), market, mu, coarse_step);

    SUBCASE("general scaling, relative match") {
        const auto scaling = [](double u) { return 0.9 - 0.01 * u / 3.0; };
        FreePolicyPlan fp{plan, scaling, IntensityModel::zero(),
                          IntensityModel::zero(), IntensityModel::zero()};
        const FreePolicySurface surface =
            free_policy_surface(fp, market, mu, gf, coarse_step, 60);
        for (std::size_t k = 0; k < surface.columns.size(); ++k) {
            const double f = scaling(surface.conversion_times[k]);
            const std::size_t offset = k * surface.stride;
            for (std::size_t i = 0; i < surface.columns[k].size(); ++i) {
                const double expected = f * plain.values[offset + i];
                CHECK(std::fabs(surface.columns[k].values[i] - expected) <=
                      1e-8 * std::max(1.0, std::fabs(expected)));
            }
        }
    }

    SUBCASE("unit scaling, exact match against the tail of the global solve") {
        FreePolicyPlan fp{plan, [](double) { return 1.0; },
                          IntensityModel::zero(), IntensityModel::zero(),
                          IntensityModel::zero()};
        const FreePolicySurface surface =
            free_policy_surface(fp, market, mu, gf, coarse_step, 60);
        for (std::size_t k = 0; k < surface.columns.size(); ++k) {
            const std::size_t offset = k * surface.stride;
            for (std::size_t i = 0; i < surface.columns[k].size(); ++i) {
                CHECK(surface.columns[k].values[i] == plain.values[offset + i]);
            }
        }
    }
}

TEST_CASE("the conversion-at-horizon column is a single terminal node") {
    const PaymentPlan plan = fixtures::example_plan();
    const RateCurve market = fixtures::market_rate_example2();
    const ReserveGrid gf = free_surrender(plan, coarse_step);
    const auto scaling = [](double u) { return 0.5 + 0.4 * u / 30.0; };
    FreePolicyPlan fp{plan, scaling, IntensityModel::zero(),
                      IntensityModel::zero(), IntensityModel::constant(0.05)};
    const FreePolicySurface surface =
        free_policy_surface(fp, market, g82_female(), gf, coarse_step, 12);
    const ReserveGrid& last = surface.columns.back();
    CHECK(last.size() == 1);
    CHECK(surface.conversion_times.back() == doctest::Approx(30.0));
    CHECK(last.values.front() ==
          doctest::Approx(scaling(30.0) * plan.terminal_benefit).epsilon(1e-12));
}

TEST_CASE("stride must divide the grid") {
    const PaymentPlan plan = fixtures::example_plan();
    const ReserveGrid gf = free_surrender(plan, coarse_step);
    FreePolicyPlan fp{plan, [](double) { return 1.0; }, IntensityModel::zero(),
                      IntensityModel::zero(), IntensityModel::zero()};
    CHECK_THROWS_AS(free_policy_surface(fp, fixtures::market_rate_example2(),
                                        g82_female(), gf, coarse_step, 7),
                    ConfigError);
    CHECK_THROWS_AS(free_policy_surface(fp, fixtures::market_rate_example2(),
                                        g82_female(), gf, coarse_step, 0),
                    ConfigError);
}

TEST_CASE("no free-policy channel reduces the active reserve bit for bit") {
    const PaymentPlan plan = fixtures::example_plan();
    const RateCurve market = fixtures::market_rate_example2();
    const MortalityCurve mu = g82_female();
    const ReserveGrid g =
        surrender_value(plan, fixtures::technical_rate(), mu, coarse_step);
    const ReserveGrid gf = free_surrender(plan, coarse_step);
    const ReserveGrid reference = free_policy_reference(
        plan, market, mu, gf, [](double) { return 0.05; }, coarse_step);

    FreePolicyPlan fp{plan, [](double) { return 0.8; }, fixtures::model_a(),
                      IntensityModel::zero(), IntensityModel::constant(0.05)};
    const ReserveGrid va = active_reserve_with_free_policy(fp, market, mu, g,
                                                           reference, coarse_step);
    const BehaviouralSolution behavioural =
        solve_reserve_dependent(plan, market, mu, g, fixtures::model_a(),
                                coarse_step);
    REQUIRE(va.size() == behavioural.reserve.size());
    for (std::size_t i = 0; i < va.size(); ++i) {
        CHECK(va.values[i] == behavioural.reserve.values[i]);
    }
}

TEST_CASE("degenerate scaling makes conversion a no-op") {
    // No premiums, f = 1, no direct surrender: converting changes nothing,
    // so the active reserve tracks the reference.
    const PaymentPlan plan = PaymentPlan::level(0.0, 1000000.0, 2000000.0, 30.0);
    const RateCurve market = fixtures::market_rate_example2();
    const MortalityCurve mu = g82_female();
    const ReserveGrid g =
        surrender_value(plan, fixtures::technical_rate(), mu, coarse_step);
    const ReserveGrid gf = free_surrender(plan, coarse_step);
    const ReserveGrid reference = free_policy_reference(
        plan, market, mu, gf, [](double) { return 0.0; }, coarse_step);

    FreePolicyPlan fp{plan, [](double) { return 1.0; }, IntensityModel::zero(),
                      IntensityModel::exponential(0.05, 3e-06),
                      IntensityModel::zero()};
    const ReserveGrid va = active_reserve_with_free_policy(fp, market, mu, g,
                                                           reference, coarse_step);
    for (std::size_t i = 0; i < va.size(); ++i) {
        CHECK(std::fabs(va.values[i] - reference.values[i]) <=
              1e-6 * fixtures::pension_sum);
    }
}

TEST_CASE("active reserve passes the frozen-intensity fixed-point check") {
    // Both behavioural channels frozen at their realized intensities and
    // re-solved with an independent linear march must reproduce the
    // nonlinear solution.
    const PaymentPlan plan = fixtures::example_plan();
    const RateCurve market = fixtures::market_rate_example2();
    const MortalityCurve mu = g82_female();
    const double step = fixtures::default_step;
    const ReserveGrid g =
        surrender_value(plan, fixtures::technical_rate(), mu, step);
    const ReserveGrid gf = free_surrender(plan, step);
    const auto scaling = [](double u) { return 0.5 + 0.4 * u / 30.0; };
    const IntensityModel expo = IntensityModel::exponential(0.05, 3e-06);

    const ReserveGrid reference = free_policy_reference(
        plan, market, mu, gf, [](double) { return 0.05; }, step);
    FreePolicyPlan fp{plan, scaling, expo, expo, IntensityModel::constant(0.05)};
    const ReserveGrid va =
        active_reserve_with_free_policy(fp, market, mu, g, reference, step);

    const std::size_t n = va.size() - 1;
    std::vector<double> nu_as(n + 1), nu_af(n + 1), vf_tt(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = va.time(i);
        vf_tt[i] = scaling(t) * reference.values[i];
        nu_as[i] = expo(t, g.values[i] - va.values[i]);
        nu_af[i] = expo(t, vf_tt[i] - va.values[i]);
    }
    const auto interp = [&](const std::vector<double>& grid, double t) {
        const double x = std::clamp(t / step, 0.0, double(n));
        const std::size_t i = std::min(static_cast<std::size_t>(x), n - 1);
        const double w = x - double(i);
        return grid[i] + w * (grid[i + 1] - grid[i]);
    };
    std::vector<double> frozen(n + 1);
    frozen[n] = plan.terminal_benefit;
    const double h = -step;
    for (std::size_t i = n; i-- > 0;) {
        const double t1 = va.time(i + 1);
        const auto rhs = [&](double t, double v) {
            return market(t) * v + plan.premium_intensity(t) -
                   mu(t) * (plan.death_benefit(t) - v) -
                   interp(nu_as, t) * (g.value_at(t) - v) -
                   interp(nu_af, t) * (interp(vf_tt, t) - v);
        };
        const double v = frozen[i + 1];
        const double k1 = rhs(t1, v);
        const double k2 = rhs(t1 + 0.5 * h, v + 0.5 * h * k1);
        const double k3 = rhs(t1 + 0.5 * h, v + 0.5 * h * k2);
        const double k4 = rhs(t1 + h, v + h * k3);
        frozen[i] = v + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    double worst = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        worst = std::max(worst, std::fabs(frozen[i] - va.values[i]));
    }
    CHECK(worst < 1e-6 * fixtures::pension_sum);
}

TEST_CASE("scaling the payments up raises the whole surface") {
    const PaymentPlan plan = fixtures::example_plan();
    const RateCurve market = fixtures::market_rate_example4();
    const MortalityCurve mu = g82_female();
    const ReserveGrid gf = free_surrender(plan, coarse_step);
    const auto low = [](double) { return 0.6; };
    const auto high = [](double) { return 0.8; };
    for (const IntensityModel& h_fs :
         {IntensityModel::constant(0.05),
          IntensityModel::exponential(0.05, 3e-06)}) {
        FreePolicyPlan fp_low{plan, low, IntensityModel::zero(),
                              IntensityModel::zero(), h_fs};
        FreePolicyPlan fp_high{plan, high, IntensityModel::zero(),
                               IntensityModel::zero(), h_fs};
        const FreePolicySurface s_low =
            free_policy_surface(fp_low, market, mu, gf, coarse_step, 60);
        const FreePolicySurface s_high =
            free_policy_surface(fp_high, market, mu, gf, coarse_step, 60);
        for (std::size_t k = 0; k < s_low.columns.size(); ++k) {
            for (std::size_t i = 0; i < s_low.columns[k].size(); ++i) {
                CHECK(s_high.columns[k].values[i] >=
                      s_low.columns[k].values[i] - 1e-9);
            }
        }
    }
}
