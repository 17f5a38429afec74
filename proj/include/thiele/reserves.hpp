#pragma once

#include "thiele/contract.hpp"

namespace thiele {

/// Technical reserve G, the amount paid out on surrender: Thiele's
/// equation on the technical basis, G(n-) = terminal benefit.
ReserveGrid surrender_value(const PaymentPlan& plan,
                            const RateCurve& technical_rate,
                            const MortalityCurve& technical_mortality,
                            double step);

/// Market reserve V with no surrender behaviour.
ReserveGrid reserve_no_surrender(const PaymentPlan& plan,
                                 const RateCurve& market_rate,
                                 const MortalityCurve& mortality, double step);

/// Reserve under a fixed, time-dependent surrender intensity nu(t) >= 0.
/// The surrender grid supplies G; it must align with the solver grid.
ReserveGrid reserve_with_intensity(const PaymentPlan& plan,
                                   const RateCurve& market_rate,
                                   const MortalityCurve& mortality,
                                   const ReserveGrid& surrender_grid,
                                   const TimeFunction& nu, double step);

}  // namespace thiele
