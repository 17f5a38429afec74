#pragma once

// Internal fixed-step backward RK4 kernels. Every reserve solver marches
// through one of these two routines so that solves with algebraically
// identical right-hand sides produce bit-identical grids.

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "thiele/errors.hpp"

namespace thiele::detail {

// Stage times of step i (from node i+1 down to node i) sit on the
// half-grid: right node 2(i+1), midpoint 2i+1, left node 2i. StageRhs is
// called as rhs(step_index, half_index, t, v).
template <class StageRhs>
std::vector<double> rk4_backward(std::size_t n_steps, double t0, double step,
                                 double terminal_value, StageRhs&& rhs) {
    std::vector<double> values(n_steps + 1);
    values[n_steps] = terminal_value;

    const double h = -step;  // marching toward earlier times
    const double half_h = 0.5 * h;
    const double h_over_6 = h / 6.0;
    const double half_step = 0.5 * step;

    double v = terminal_value;
    for (std::size_t i = n_steps; i-- > 0;) {
        const double t_right = t0 + half_step * static_cast<double>(2 * (i + 1));
        const double t_mid = t0 + half_step * static_cast<double>(2 * i + 1);
        const double t_left = t0 + half_step * static_cast<double>(2 * i);

        const double k1 = rhs(i, 2 * (i + 1), t_right, v);
        const double k2 = rhs(i, 2 * i + 1, t_mid, v + half_h * k1);
        const double k3 = rhs(i, 2 * i + 1, t_mid, v + half_h * k2);
        const double k4 = rhs(i, 2 * i, t_left, v + h * k3);

        v = v + h_over_6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!std::isfinite(v)) {
            throw NumericalError("rk4: non-finite state while stepping", t_left);
        }
        values[i] = v;
    }
    return values;
}

using Pair = std::array<double, 2>;

template <class StageRhs>
std::array<std::vector<double>, 2> rk4_backward_pair(std::size_t n_steps,
                                                     double t0, double step,
                                                     const Pair& terminal_value,
                                                     StageRhs&& rhs) {
    std::array<std::vector<double>, 2> values{std::vector<double>(n_steps + 1),
                                              std::vector<double>(n_steps + 1)};
    values[0][n_steps] = terminal_value[0];
    values[1][n_steps] = terminal_value[1];

    const double h = -step;
    const double half_h = 0.5 * h;
    const double h_over_6 = h / 6.0;
    const double half_step = 0.5 * step;

    Pair v = terminal_value;
    for (std::size_t i = n_steps; i-- > 0;) {
        const double t_right = t0 + half_step * static_cast<double>(2 * (i + 1));
        const double t_mid = t0 + half_step * static_cast<double>(2 * i + 1);
        const double t_left = t0 + half_step * static_cast<double>(2 * i);

        const Pair k1 = rhs(i, 2 * (i + 1), t_right, v);
        const Pair s1{v[0] + half_h * k1[0], v[1] + half_h * k1[1]};
        const Pair k2 = rhs(i, 2 * i + 1, t_mid, s1);
        const Pair s2{v[0] + half_h * k2[0], v[1] + half_h * k2[1]};
        const Pair k3 = rhs(i, 2 * i + 1, t_mid, s2);
        const Pair s3{v[0] + h * k3[0], v[1] + h * k3[1]};
        const Pair k4 = rhs(i, 2 * i, t_left, s3);

        for (int c = 0; c < 2; ++c) {
            v[c] = v[c] + h_over_6 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
            if (!std::isfinite(v[c])) {
                throw NumericalError("rk4: non-finite state while stepping", t_left);
            }
            values[c][i] = v[c];
        }
    }
    return values;
}

}  // namespace thiele::detail
