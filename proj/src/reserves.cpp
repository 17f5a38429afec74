#include "thiele/reserves.hpp"

#include <cmath>

#include "thiele_kernel.hpp"

namespace thiele {

namespace {

void check_surrender_grid(const ReserveGrid& surrender_grid,
                          const PaymentPlan& plan, double step) {
    ReserveGrid probe;
    probe.t0 = 0.0;
    probe.step = step;
    probe.values.resize(grid_step_count(0.0, plan.horizon, step) + 1);
    if (!grids_aligned(surrender_grid, probe)) {
        throw ConfigError(
            "reserves: surrender grid is not aligned with the solver grid");
    }
}

ReserveGrid solve_linear(const PaymentPlan& plan, const RateCurve& rate,
                         const MortalityCurve& mortality, double step) {
    plan.validate();
    const auto coeffs =
        detail::build_coefficients(plan, rate, mortality, 0.0, plan.horizon, step);
    return detail::solve_thiele(coeffs, nullptr, plan.terminal_benefit,
                                [](std::size_t, double, double) { return 0.0; });
}

}  // namespace

ReserveGrid surrender_value(const PaymentPlan& plan,
                            const RateCurve& technical_rate,
                            const MortalityCurve& technical_mortality,
                            double step) {
    return solve_linear(plan, technical_rate, technical_mortality, step);
}

ReserveGrid reserve_no_surrender(const PaymentPlan& plan,
                                 const RateCurve& market_rate,
                                 const MortalityCurve& mortality, double step) {
    return solve_linear(plan, market_rate, mortality, step);
}

ReserveGrid reserve_with_intensity(const PaymentPlan& plan,
                                   const RateCurve& market_rate,
                                   const MortalityCurve& mortality,
                                   const ReserveGrid& surrender_grid,
                                   const TimeFunction& nu, double step) {
    plan.validate();
    check_surrender_grid(surrender_grid, plan, step);
    const auto coeffs = detail::build_coefficients(plan, market_rate, mortality,
                                                   0.0, plan.horizon, step);
    const auto nu_half = detail::half_node_values(nu, coeffs);
    for (std::size_t j = 0; j < nu_half.size(); ++j) {
        if (!(nu_half[j] >= 0.0)) {
            throw std::domain_error("reserve_with_intensity: nu(t) must be >= 0");
        }
    }
    const auto g_half = detail::half_node_values(surrender_grid);
    return detail::solve_thiele(
        coeffs, &g_half, plan.terminal_benefit,
        [&](std::size_t j, double, double) { return nu_half[j]; });
}

}  // namespace thiele
