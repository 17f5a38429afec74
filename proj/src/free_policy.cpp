#include "thiele/free_policy.hpp"

#include <cmath>

#include "thiele_kernel.hpp"

namespace thiele {

namespace {

void check_alignment(const ReserveGrid& grid, std::size_t n_steps, double step,
                     const char* what) {
    ReserveGrid probe{0.0, step, std::vector<double>(n_steps + 1)};
    if (!grids_aligned(grid, probe)) {
        throw ConfigError(std::string("free_policy: ") + what +
                          " is not aligned with the solver grid");
    }
}

}  // namespace

ReserveGrid free_policy_reference(const PaymentPlan& plan,
                                  const RateCurve& market_rate,
                                  const MortalityCurve& mortality,
                                  const ReserveGrid& free_surrender_grid,
                                  const TimeFunction& nu_fs, double step) {
    // The free-policy state pays no premiums.
    const PaymentPlan free_plan = plan.without_premiums();
    free_plan.validate();
    const auto coeffs = detail::build_coefficients(free_plan, market_rate,
                                                   mortality, 0.0,
                                                   free_plan.horizon, step);
    check_alignment(free_surrender_grid, coeffs.n_steps, step,
                    "free surrender grid");
    const auto nu_half = detail::half_node_values(nu_fs, coeffs);
    for (double v : nu_half) {
        if (!(v >= 0.0)) {
            throw std::domain_error("free_policy_reference: nu_fs(t) must be >= 0");
        }
    }
    const auto gf_half = detail::half_node_values(free_surrender_grid);
    return detail::solve_thiele(
        coeffs, &gf_half, free_plan.terminal_benefit,
        [&](std::size_t j, double, double) { return nu_half[j]; });
}

ReserveGrid active_reserve_with_free_policy(const FreePolicyPlan& fp,
                                            const RateCurve& market_rate,
                                            const MortalityCurve& mortality,
                                            const ReserveGrid& surrender_grid,
                                            const ReserveGrid& vf_reference,
                                            double step) {
    fp.validate();
    const PaymentPlan& plan = fp.base_plan;
    const auto coeffs = detail::build_coefficients(plan, market_rate, mortality,
                                                   0.0, plan.horizon, step);
    check_alignment(surrender_grid, coeffs.n_steps, step, "surrender grid");
    check_alignment(vf_reference, coeffs.n_steps, step, "reference grid");

    const auto g_half = detail::half_node_values(surrender_grid);
    // V_f(t, t) = f(t) V_f*(t) via the scaling reduction.
    auto vf_tt_half = detail::half_node_values(vf_reference);
    for (std::size_t j = 0; j < vf_tt_half.size(); ++j) {
        vf_tt_half[j] *= fp.scaling(coeffs.time(j));
    }

    ReserveGrid grid;
    grid.t0 = 0.0;
    grid.step = step;
    grid.values = detail::rk4_backward(
        coeffs.n_steps, 0.0, step, plan.terminal_benefit,
        [&](std::size_t i, std::size_t j, double t, double v) {
            double out =
                coeffs.rate[i] * v + coeffs.pi[j] - coeffs.mu[j] * (coeffs.bad[j] - v);
            const double gain_s = g_half[j] - v;
            out -= fp.intensity_as(t, gain_s) * gain_s;
            const double gain_f = vf_tt_half[j] - v;
            out -= fp.intensity_af(t, gain_f) * gain_f;
            return out;
        });
    return grid;
}

FreePolicySurface free_policy_surface(const FreePolicyPlan& fp,
                                      const RateCurve& market_rate,
                                      const MortalityCurve& mortality,
                                      const ReserveGrid& free_surrender_grid,
                                      double step, std::size_t u_grid_stride) {
    fp.validate();
    const PaymentPlan free_plan = fp.base_plan.without_premiums();
    const auto coeffs = detail::build_coefficients(free_plan, market_rate,
                                                   mortality, 0.0,
                                                   free_plan.horizon, step);
    check_alignment(free_surrender_grid, coeffs.n_steps, step,
                    "free surrender grid");
    if (u_grid_stride == 0 || coeffs.n_steps % u_grid_stride != 0) {
        throw ConfigError("free_policy_surface: stride does not divide the grid");
    }
    const auto gf_half = detail::half_node_values(free_surrender_grid);

    FreePolicySurface surface;
    surface.t0 = 0.0;
    surface.step = step;
    surface.stride = u_grid_stride;
    const std::size_t n_columns = coeffs.n_steps / u_grid_stride + 1;
    surface.conversion_times.reserve(n_columns);
    surface.columns.reserve(n_columns);

    for (std::size_t k = 0; k < n_columns; ++k) {
        const std::size_t offset = k * u_grid_stride;  // global step index of u_k
        const double u = coeffs.time(2 * offset);
        const double f = fp.scaling(u);
        ReserveGrid column;
        column.t0 = u;
        column.step = step;
        column.values = detail::rk4_backward(
            coeffs.n_steps - offset, u, step, f * free_plan.terminal_benefit,
            [&](std::size_t i, std::size_t j, double t, double v) {
                const std::size_t gi = i + offset;
                const std::size_t gj = j + 2 * offset;
                double out = coeffs.rate[gi] * v -
                             coeffs.mu[gj] * (f * coeffs.bad[gj] - v);
                const double gain = f * gf_half[gj] - v;
                out -= fp.intensity_fs(t, gain) * gain;
                return out;
            });
        surface.conversion_times.push_back(u);
        surface.columns.push_back(std::move(column));
    }
    return surface;
}

}  // namespace thiele
