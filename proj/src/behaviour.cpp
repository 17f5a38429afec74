#include "thiele/behaviour.hpp"

#include <algorithm>
#include <cmath>

#include "thiele_kernel.hpp"

namespace thiele {

BehaviouralSolution solve_reserve_dependent(const PaymentPlan& plan,
                                            const RateCurve& market_rate,
                                            const MortalityCurve& mortality,
                                            const ReserveGrid& surrender_grid,
                                            const IntensityModel& model,
                                            double step) {
    plan.validate();
    const auto coeffs = detail::build_coefficients(plan, market_rate, mortality,
                                                   0.0, plan.horizon, step);
    ReserveGrid probe{0.0, step, std::vector<double>(coeffs.n_steps + 1)};
    if (!grids_aligned(surrender_grid, probe)) {
        throw ConfigError(
            "solve_reserve_dependent: surrender grid is not aligned with the "
            "solver grid");
    }
    const auto g_half = detail::half_node_values(surrender_grid);

    BehaviouralSolution solution;
    solution.model = model;
    // The gain at the switching locus comes from the current stage value,
    // keeping the scheme a genuine one-step method.
    solution.reserve = detail::solve_thiele(
        coeffs, &g_half, plan.terminal_benefit,
        [&](std::size_t, double t, double gain) { return model(t, gain); });

    solution.realized_intensity.t0 = solution.reserve.t0;
    solution.realized_intensity.step = solution.reserve.step;
    solution.realized_intensity.values.resize(solution.reserve.size());
    for (std::size_t i = 0; i < solution.reserve.size(); ++i) {
        const double t = solution.reserve.time(i);
        const double gain = surrender_grid.values[i] - solution.reserve.values[i];
        solution.realized_intensity.values[i] = model(t, gain);
    }
    return solution;
}

double consistency_check(const BehaviouralSolution& solution,
                         const PaymentPlan& plan, const RateCurve& market_rate,
                         const MortalityCurve& mortality,
                         const ReserveGrid& surrender_grid, double step) {
    const ReserveGrid& nu = solution.realized_intensity;
    if (!grids_aligned(nu, surrender_grid)) {
        throw ConfigError("consistency_check: solution and surrender grids differ");
    }
    const auto coeffs = detail::build_coefficients(plan, market_rate, mortality,
                                                   0.0, plan.horizon, step);
    const auto g_half = detail::half_node_values(surrender_grid);
    const auto nu_half = detail::half_node_values(nu);
    const ReserveGrid linear = detail::solve_thiele(
        coeffs, &g_half, plan.terminal_benefit,
        [&](std::size_t j, double, double) { return nu_half[j]; });

    double worst = 0.0;
    for (std::size_t i = 0; i < linear.size(); ++i) {
        worst = std::max(worst,
                         std::fabs(linear.values[i] - solution.reserve.values[i]));
    }
    return worst;
}

}  // namespace thiele
