#pragma once

#include <cstdint>
#include <vector>

#include "thiele/contract.hpp"

namespace thiele {

struct SimulationConfig {
    std::size_t paths = 100000;
    std::uint64_t seed = 0;
    double time_step = 1.0 / 12.0;  // majorant-block width for thinning
};

/// Surrender behaviour fed to the simulator: either a solved intensity
/// grid nu(t) (linearly interpolated between nodes) or a deterministic
/// stop at a fixed time. Reserve-dependent behaviour enters through the
/// solved intensity, never as an implicit rule.
class Strategy {
public:
    static Strategy from_intensity(ReserveGrid nu);
    static Strategy stop_at(double time);

    bool is_intensity() const { return is_intensity_; }
    const ReserveGrid& intensity() const { return intensity_; }
    double stop_time() const { return stop_time_; }

private:
    Strategy() = default;
    bool is_intensity_ = false;
    ReserveGrid intensity_;
    double stop_time_ = 0.0;
};

struct SimulationResult {
    double estimate = 0.0;
    double standard_error = 0.0;
};

/// Monte Carlo value of the contract under the given surrender strategy,
/// discounted to time 0 and conditional on being active at 0. Death and
/// surrender times are sampled by exponential thinning against a
/// per-block majorant of mu + nu, so event times carry no time-stepping
/// bias. Deterministic for a fixed (seed, paths, time_step).
SimulationResult simulate_reserve(const PaymentPlan& plan,
                                  const RateCurve& market_rate,
                                  const MortalityCurve& mortality,
                                  const ReserveGrid& surrender_grid,
                                  const Strategy& strategy,
                                  const SimulationConfig& config);

}  // namespace thiele
