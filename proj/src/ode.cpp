#include "thiele/ode.hpp"

#include "rk4.hpp"

namespace thiele {

namespace {

void check_problem(double start_time, double terminal_time, double step) {
    if (!(start_time < terminal_time)) {
        throw ConfigError("solve_backward: start_time must precede terminal_time");
    }
    if (!(step > 0.0)) {
        throw ConfigError("solve_backward: step must be positive");
    }
}

}  // namespace

ReserveGrid solve_backward(const BackwardProblem& problem) {
    check_problem(problem.start_time, problem.terminal_time, problem.step);
    const std::size_t n =
        grid_step_count(problem.start_time, problem.terminal_time, problem.step);

    ReserveGrid grid;
    grid.t0 = problem.start_time;
    grid.step = problem.step;
    grid.values = detail::rk4_backward(
        n, problem.start_time, problem.step, problem.terminal_value,
        [&](std::size_t, std::size_t, double t, double v) {
            return problem.rhs(t, v);
        });
    return grid;
}

std::pair<ReserveGrid, ReserveGrid> solve_backward_pair(
    const BackwardPairProblem& problem) {
    check_problem(problem.start_time, problem.terminal_time, problem.step);
    const std::size_t n =
        grid_step_count(problem.start_time, problem.terminal_time, problem.step);

    auto values = detail::rk4_backward_pair(
        n, problem.start_time, problem.step, problem.terminal_value,
        [&](std::size_t, std::size_t, double t, const detail::Pair& v) {
            return problem.rhs(t, v);
        });

    ReserveGrid first{problem.start_time, problem.step, std::move(values[0])};
    ReserveGrid second{problem.start_time, problem.step, std::move(values[1])};
    return {std::move(first), std::move(second)};
}

}  // namespace thiele
