#pragma once

#include <cstddef>
#include <vector>

#include "thiele/contract.hpp"

namespace thiele {

/// Reference free-policy reserve V_f*: the premium-free Thiele equation
/// with surrender intensity nu_fs(t) against the free-policy surrender
/// value G_f. Valid whenever nu_fs does not depend on the conversion
/// time; the conversion-time reserve is then f(u) * V_f*(t).
ReserveGrid free_policy_reference(const PaymentPlan& plan,
                                  const RateCurve& market_rate,
                                  const MortalityCurve& mortality,
                                  const ReserveGrid& free_surrender_grid,
                                  const TimeFunction& nu_fs, double step);

/// Active-state reserve V_a with both behavioural channels: surrender
/// against gain G - V_a and free-policy conversion against gain
/// f(t) V_f*(t) - V_a.
ReserveGrid active_reserve_with_free_policy(const FreePolicyPlan& fp,
                                            const RateCurve& market_rate,
                                            const MortalityCurve& mortality,
                                            const ReserveGrid& surrender_grid,
                                            const ReserveGrid& vf_reference,
                                            double step);

/// Conversion-time-dependent reserves V_f(t, u): one backward solve per
/// conversion node u (the solver grid subsampled by stride), each with
/// payments scaled by f(u). Column k covers [u_k, n]. Cost grows like
/// N^2 / stride; stride is the knob.
struct FreePolicySurface {
    double t0 = 0.0;
    double step = 0.0;
    std::size_t stride = 1;
    std::vector<double> conversion_times;  // u_k
    std::vector<ReserveGrid> columns;      // V_f(., u_k) on [u_k, n]
};

FreePolicySurface free_policy_surface(const FreePolicyPlan& fp,
                                      const RateCurve& market_rate,
                                      const MortalityCurve& mortality,
                                      const ReserveGrid& free_surrender_grid,
                                      double step,
                                      std::size_t u_grid_stride = 12);

}  // namespace thiele
