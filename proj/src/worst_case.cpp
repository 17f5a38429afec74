#include "thiele/worst_case.hpp"

#include <algorithm>
#include <cmath>

namespace thiele {

namespace {

constexpr double tie_rel_tol = 1e-12;

bool tie(double immediate, double continuation) {
    const double scale =
        std::max({std::fabs(immediate), std::fabs(continuation), 1.0});
    return std::fabs(immediate - continuation) <= tie_rel_tol * scale;
}

void check_inputs(const ReserveGrid& surrender_grid, const ReserveGrid& baseline,
                  double step) {
    if (!grids_aligned(surrender_grid, baseline)) {
        throw ConfigError(
            "worst_case: surrender grid and baseline grid are misaligned");
    }
    if (std::fabs(surrender_grid.step - step) >
            1e-9 * std::max(1.0, std::fabs(step)) &&
        surrender_grid.size() > 1) {
        throw ConfigError("worst_case: grids do not match the requested step");
    }
}

/// One-step discounts d_i = exp(-int_{t_i}^{t_{i+1}} (r + mu)). The rate
/// integral is exact; mu is smooth, so 3-point Gauss-Legendre per step
/// keeps the quadrature error far below the solver budget.
std::vector<double> step_discounts(const RateCurve& rate,
                                   const MortalityCurve& mortality,
                                   const ReserveGrid& grid) {
    const std::size_t n = grid.size() - 1;
    std::vector<double> d(n);
    const double half = 0.5 * grid.step;
    const double offset = half * std::sqrt(3.0 / 5.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = grid.time(i);
        const double b = grid.time(i + 1);
        const double mid = a + half;
        const double mu_int =
            half * ((5.0 / 9.0) * mortality(mid - offset) +
                    (8.0 / 9.0) * mortality(mid) +
                    (5.0 / 9.0) * mortality(mid + offset));
        d[i] = std::exp(-(rate.integral(a, b) + mu_int));
    }
    return d;
}

WorstCaseSolution assemble(const ReserveGrid& baseline, std::vector<double> m,
                           std::vector<double> u_star) {
    WorstCaseSolution out;
    out.gain_envelope = ReserveGrid{baseline.t0, baseline.step, std::move(m)};
    out.latest_optimal = std::move(u_star);
    out.worst_reserve = baseline;
    for (std::size_t i = 0; i < baseline.size(); ++i) {
        out.worst_reserve.values[i] =
            baseline.values[i] + out.gain_envelope.values[i];
    }
    return out;
}

}  // namespace

WorstCaseSolution worst_case_reserve(const PaymentPlan& plan,
                                     const RateCurve& market_rate,
                                     const MortalityCurve& mortality,
                                     const ReserveGrid& surrender_grid,
                                     const ReserveGrid& baseline, double step) {
    plan.validate();
    check_inputs(surrender_grid, baseline, step);
    const std::size_t last = baseline.size() - 1;
    const auto d = step_discounts(market_rate, mortality, baseline);

    std::vector<double> m(baseline.size());
    std::vector<double> u_star(baseline.size());
    m[last] = 0.0;  // the u = n candidate: G(n) treated as 0
    u_star[last] = baseline.time(last);
    for (std::size_t i = last; i-- > 0;) {
        const double immediate = surrender_grid.values[i] - baseline.values[i];
        const double continuation = d[i] * m[i + 1];
        m[i] = std::max(immediate, continuation);
        u_star[i] = (immediate > continuation && !tie(immediate, continuation))
                        ? baseline.time(i)
                        : u_star[i + 1];
    }
    return assemble(baseline, std::move(m), std::move(u_star));
}

WorstCaseSolution brute_force_worst_case(const PaymentPlan& plan,
                                         const RateCurve& market_rate,
                                         const MortalityCurve& mortality,
                                         const ReserveGrid& surrender_grid,
                                         const ReserveGrid& baseline,
                                         double step) {
    plan.validate();
    check_inputs(surrender_grid, baseline, step);
    const std::size_t last = baseline.size() - 1;
    const auto d = step_discounts(market_rate, mortality, baseline);

    // Candidate gains; the u = n entry is 0 by the G(n) = 0 convention.
    std::vector<double> gains(baseline.size());
    for (std::size_t j = 0; j < last; ++j) {
        gains[j] = surrender_grid.values[j] - baseline.values[j];
    }
    gains[last] = 0.0;

    std::vector<double> m(baseline.size());
    std::vector<double> u_star(baseline.size());
    for (std::size_t i = 0; i <= last; ++i) {
        double discount = 1.0;
        double best = gains[i];
        double tol = tie_rel_tol * std::max(std::fabs(best), 1.0);
        std::size_t arg = i;
        for (std::size_t j = i + 1; j <= last; ++j) {
            discount *= d[j - 1];
            const double value = discount * gains[j];
            if (value >= best - tol) {  // later candidate wins ties
                if (value > best) {
                    best = value;
                    tol = tie_rel_tol * std::max(std::fabs(best), 1.0);
                }
                arg = j;
            }
        }
        m[i] = best;
        u_star[i] = baseline.time(arg);
    }
    return assemble(baseline, std::move(m), std::move(u_star));
}

}  // namespace thiele
