#pragma once

#include <array>
#include <functional>
#include <utility>

#include "thiele/contract.hpp"

namespace thiele {

/// Scalar terminal-value problem V'(t) = rhs(t, V(t)), V(terminal_time)
/// given, integrated backward to start_time on a uniform grid.
struct BackwardProblem {
    std::function<double(double, double)> rhs;
    double terminal_time = 0.0;
    double terminal_value = 0.0;
    double start_time = 0.0;
    double step = 0.0;
};

/// Two-component terminal-value problem; used where one reserve couples
/// to another along the same time axis.
struct BackwardPairProblem {
    std::function<std::array<double, 2>(double, const std::array<double, 2>&)> rhs;
    double terminal_time = 0.0;
    std::array<double, 2> terminal_value{0.0, 0.0};
    double start_time = 0.0;
    double step = 0.0;
};

/// Classical 4-stage Runge-Kutta march from terminal_time down to
/// start_time. Global error O(step^4) where the rhs is smooth in t.
/// Throws NumericalError (with the offending time) on a non-finite state.
ReserveGrid solve_backward(const BackwardProblem& problem);

/// Componentwise RK4 on a 2-vector state; both grids share the scalar
/// kernel's arithmetic, so a decoupled pair reproduces two scalar solves
/// exactly.
std::pair<ReserveGrid, ReserveGrid> solve_backward_pair(
    const BackwardPairProblem& problem);

}  // namespace thiele
