#pragma once

// Internal machinery shared by the reserve solvers. Coefficients are
// tabulated once per (contract, basis, grid) on the half-step grid RK4
// stages actually visit; the piecewise-constant rate is stored per step
// so each step uses the one-sided value of its own segment and the
// classical order survives the rate jumps.

#include <cstddef>
#include <vector>

#include "rk4.hpp"
#include "thiele/contract.hpp"

namespace thiele::detail {

struct ThieleCoefficients {
    double t0 = 0.0;
    double step = 0.0;
    std::size_t n_steps = 0;
    std::vector<double> rate;   // per step interval, n_steps entries
    std::vector<double> mu;     // half grid, 2*n_steps + 1 entries
    std::vector<double> pi;     // half grid
    std::vector<double> bad;    // half grid

    double time(std::size_t half_index) const {
        return t0 + 0.5 * step * static_cast<double>(half_index);
    }
};

inline ThieleCoefficients build_coefficients(const PaymentPlan& plan,
                                             const RateCurve& rate,
                                             const MortalityCurve& mortality,
                                             double t0, double horizon,
                                             double step) {
    ThieleCoefficients c;
    c.t0 = t0;
    c.step = step;
    c.n_steps = grid_step_count(t0, horizon, step);
    c.rate.resize(c.n_steps);
    const std::size_t half_count = 2 * c.n_steps + 1;
    c.mu.resize(half_count);
    c.pi.resize(half_count);
    c.bad.resize(half_count);
    for (std::size_t i = 0; i < c.n_steps; ++i) {
        c.rate[i] = rate(c.time(2 * i + 1));  // step midpoint, segment interior
    }
    for (std::size_t j = 0; j < half_count; ++j) {
        const double t = c.time(j);
        c.mu[j] = mortality(t);
        c.pi[j] = plan.premium_intensity(t);
        c.bad[j] = plan.death_benefit(t);
    }
    return c;
}

/// Values of a node grid at the half nodes (linear at midpoints).
inline std::vector<double> half_node_values(const ReserveGrid& grid) {
    std::vector<double> out(2 * (grid.size() - 1) + 1);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        out[2 * i] = grid.values[i];
        out[2 * i + 1] = 0.5 * (grid.values[i] + grid.values[i + 1]);
    }
    out.back() = grid.values.back();
    return out;
}

/// Values of a time function at the half nodes.
inline std::vector<double> half_node_values(const TimeFunction& f,
                                            const ThieleCoefficients& c) {
    std::vector<double> out(2 * c.n_steps + 1);
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = f(c.time(j));
    }
    return out;
}

/// Backward solve of the Thiele equation
///   v' = r v + pi - mu (bad - v) - nu(t, g - v) (g - v)
/// with the surrender term dropped when surrender_half is null.
/// NuAt is called as nu(half_index, t, gain).
template <class NuAt>
ReserveGrid solve_thiele(const ThieleCoefficients& c,
                         const std::vector<double>* surrender_half,
                         double terminal_value, NuAt&& nu) {
    ReserveGrid grid;
    grid.t0 = c.t0;
    grid.step = c.step;
    grid.values = rk4_backward(
        c.n_steps, c.t0, c.step, terminal_value,
        [&](std::size_t i, std::size_t j, double t, double v) {
            double out = c.rate[i] * v + c.pi[j] - c.mu[j] * (c.bad[j] - v);
            if (surrender_half != nullptr) {
                const double gain = (*surrender_half)[j] - v;
                out -= nu(j, t, gain) * gain;
            }
            return out;
        });
    return grid;
}

}  // namespace thiele::detail
