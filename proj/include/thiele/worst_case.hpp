#pragma once

#include <vector>

#include "thiele/contract.hpp"

namespace thiele {

/// Worst-case (optimal stopping) valuation: W(t) is the supremum of the
/// reserve over all admissible surrender strategies, decomposed as
/// W = V + M where M is the best discounted surrender gain still
/// reachable; u* is the latest optimal surrender time from each node.
struct WorstCaseSolution {
    ReserveGrid worst_reserve;           // W
    std::vector<double> latest_optimal;  // u*(t_i)
    ReserveGrid gain_envelope;           // M
};

/// Snell-envelope recursion over the grid:
///   M(t_n) = 0,  M(t_i) = max(G(t_i) - V(t_i), d_i M(t_{i+1})),
/// with d_i the exact survival-and-interest discount over one step.
/// The u = n candidate contributes gain 0 (never surrendering just pays
/// the contract out), and ties go to the later candidate so u* is the
/// latest optimal time.
WorstCaseSolution worst_case_reserve(const PaymentPlan& plan,
                                     const RateCurve& market_rate,
                                     const MortalityCurve& mortality,
                                     const ReserveGrid& surrender_grid,
                                     const ReserveGrid& baseline, double step);

/// Same solution by direct O(N^2) evaluation of the argmax over every
/// grid candidate u in [t, n]; the oracle the recursion is tested against.
WorstCaseSolution brute_force_worst_case(const PaymentPlan& plan,
                                         const RateCurve& market_rate,
                                         const MortalityCurve& mortality,
                                         const ReserveGrid& surrender_grid,
                                         const ReserveGrid& baseline,
                                         double step);

}  // namespace thiele
